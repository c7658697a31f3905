"""Coxeter words, dual reflection actions, finite root systems and chambers.

Words are tuples of vertex letters and denote the left-to-right product of
simple reflections, so the word (1, 2) is "s1 s2".  Functor-style operations
elsewhere consume the rightmost letter first, matching how a composite of
reflections acts on its argument.

Group-element equality uses the faithful matrix action on the quotient
lattice (the affine lattice modulo the imaginary root), which is all the
finite-chamber geometry needs; words containing the extending vertex 0 have
no chamber semantics and are rejected here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotGeneric, NotInThetaD, RangeError
from .quiver import DimensionVector, DoubleQuiver


class StabilityParameter(tuple):
    """A rational linear form on dimension vectors, one entry per vertex."""

    def __new__(cls, entries: Iterable):
        return super().__new__(cls, tuple(Fraction(x) for x in entries))

    def __call__(self, alpha: Sequence[int]) -> Fraction:
        return sum((t * a for t, a in zip(self, alpha)), Fraction(0))

    def format(self) -> str:
        return ",".join(str(x) for x in self)

    @staticmethod
    def parse(text: str) -> "StabilityParameter":
        return StabilityParameter(Fraction(part.strip()) for part in text.split(","))


def reflect_dimvec(dq: DoubleQuiver, i: int, alpha: Sequence[int]) -> DimensionVector:
    """Simple reflection on dimension vectors: x - (x, e_i) e_i."""
    alpha = DimensionVector(alpha)
    pairing = dq.bilinear(alpha, dq.unit(i))
    return alpha - pairing * dq.unit(i)


def reflect_theta(dq: DoubleQuiver, i: int, theta: StabilityParameter) -> StabilityParameter:
    """Dual simple reflection on parameters, compatible with the pairing."""
    ti = theta[i]
    return StabilityParameter(
        theta[j] - ti * dq.bilinear(dq.unit(i), dq.unit(j)) for j in range(dq.vertex_count)
    )


def apply_word_to_dimvec(dq: DoubleQuiver, word: Sequence[int], alpha: Sequence[int]) -> DimensionVector:
    """Act by the product of the word on a vector (rightmost letter first)."""
    out = DimensionVector(alpha)
    for letter in reversed(list(word)):
        out = reflect_dimvec(dq, letter, out)
    return out


def apply_word_to_theta(dq: DoubleQuiver, word: Sequence[int], theta: StabilityParameter) -> StabilityParameter:
    out = StabilityParameter(theta)
    for letter in reversed(list(word)):
        out = reflect_theta(dq, letter, out)
    return out


@dataclass(frozen=True)
class RootSystem:
    """Finite root data of the quotient lattice, in simple-root coordinates."""

    dq: DoubleQuiver
    d: DimensionVector
    rank: int
    cartan: tuple  # rank x rank Gram matrix of the simple roots
    roots: tuple  # all roots, graded-lex order
    positive: tuple  # positive roots, graded-lex order
    simple: tuple  # unit coordinate vectors

    def form(self, x: Sequence[int], y: Sequence[int]) -> int:
        return sum(
            x[i] * y[j] * self.cartan[i][j] for i in range(self.rank) for j in range(self.rank)
        )

    def reflect(self, i: int, x: Sequence[int]) -> tuple:
        # i is a 1-based vertex letter; coordinates are 0-based
        c = self.form(x, self.simple[i - 1])
        return tuple(x[k] - c * self.simple[i - 1][k] for k in range(self.rank))

    def is_positive(self, x: Sequence[int]) -> bool:
        return tuple(x) in set(self.positive)

    def project(self, alpha: Sequence[int]) -> tuple:
        """Class of an affine vector in the quotient lattice, in Delta coordinates."""
        shift = alpha[0]
        return tuple(alpha[i] - shift * self.d[i] for i in range(1, self.rank + 1))

    def theta_value(self, theta: StabilityParameter, x: Sequence[int]) -> Fraction:
        return sum((Fraction(x[i]) * theta[i + 1] for i in range(self.rank)), Fraction(0))


def finite_root_system(dq: DoubleQuiver, d: DimensionVector) -> RootSystem:
    """Reflection closure of the simple roots in the quotient lattice."""
    n = dq.vertex_count - 1
    cartan = tuple(
        tuple(dq.bilinear(dq.unit(i), dq.unit(j)) for j in range(1, n + 1))
        for i in range(1, n + 1)
    )
    simple = tuple(tuple(1 if k == i else 0 for k in range(n)) for i in range(n))
    rs = RootSystem(dq, DimensionVector(d), n, cartan, (), (), simple)
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        x = frontier.pop()
        for i in range(1, n + 1):
            y = rs.reflect(i, x)
            if y not in roots:
                roots.add(y)
                frontier.append(y)
    ordered = sorted(roots, key=lambda r: (sum(r), r))
    positive = tuple(r for r in ordered if all(c >= 0 for c in r))
    negative = tuple(tuple(-c for c in r) for r in positive)
    if set(ordered) != set(positive) | set(negative):
        raise RangeError("root closure did not split into positive and negative parts")
    return RootSystem(dq, DimensionVector(d), n, cartan, tuple(ordered), positive, simple)


class WeylGroup:
    """The finite Weyl group acting on the quotient lattice."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.rank = rs.rank
        self._identity = tuple(rs.simple)
        self._gens = {
            i: tuple(rs.reflect(i, e) for e in rs.simple) for i in range(1, self.rank + 1)
        }
        self._elements: dict[tuple, tuple] | None = None

    def _act(self, mat: tuple, x: Sequence[int]) -> tuple:
        # mat stores images of the simple roots as rows
        out = [0] * self.rank
        for i in range(self.rank):
            if x[i]:
                for k in range(self.rank):
                    out[k] += x[i] * mat[i][k]
        return tuple(out)

    def matrix_of(self, word: Sequence[int]) -> tuple:
        """Matrix of the word product (row k is the image of the k-th simple root)."""
        mat = self._identity
        for letter in reversed(tuple(word)):
            if not 1 <= letter <= self.rank:
                raise RangeError(f"letter {letter} has no finite-Weyl meaning")
            # rightmost letter acts first, each later letter post-composes
            gen = self._gens[letter]
            mat = tuple(self._act(gen, row) for row in mat)
        return mat

    def act_on_root(self, word: Sequence[int], x: Sequence[int]) -> tuple:
        return self._act(self.matrix_of(word), x)

    def length(self, word: Sequence[int]) -> int:
        """Number of positive roots sent to negative roots."""
        mat = self.matrix_of(word)
        count = 0
        for r in self.rs.positive:
            if any(c < 0 for c in self._act(mat, r)):
                count += 1
        return count

    def is_reduced(self, word: Sequence[int]) -> bool:
        return len(tuple(word)) == self.length(word)

    def equal(self, w1: Sequence[int], w2: Sequence[int]) -> bool:
        return self.matrix_of(w1) == self.matrix_of(w2)

    def multiply(self, w1: Sequence[int], w2: Sequence[int]) -> tuple:
        return tuple(w1) + tuple(w2)

    def all_elements(self) -> dict[tuple, tuple]:
        """Map from group matrices to one shortest (BFS-first) word each."""
        if self._elements is None:
            start = self.matrix_of(())
            found = {start: ()}
            queue = [start]
            while queue:
                nxt = []
                for mat in queue:
                    word = found[mat]
                    for i in range(1, self.rank + 1):
                        longer = word + (i,)
                        m2 = self.matrix_of(longer)
                        if m2 not in found:
                            found[m2] = longer
                            nxt.append(m2)
                queue = nxt
            self._elements = found
        return self._elements

    def canonical_words(self) -> list[tuple]:
        """One reduced word per element, sorted by (length, letters)."""
        return sorted(self.all_elements().values(), key=lambda w: (len(w), w))


def is_generic(rs: RootSystem, theta: StabilityParameter) -> bool:
    """Whether the parameter avoids every root hyperplane."""
    if theta(rs.d) != 0:
        raise NotInThetaD("parameter does not kill the imaginary root vector")
    return all(rs.theta_value(theta, r) != 0 for r in rs.roots)


def chamber_of(rs: RootSystem, theta: StabilityParameter) -> tuple:
    """The word w with theta positive on the w-image of the simple system.

    Descends by reflecting at any negative entry; the recorded letters, in
    the order applied, spell the chamber word as a left-to-right product.
    """
    if theta(rs.d) != 0:
        raise NotInThetaD("parameter does not kill the imaginary root vector")
    dq = rs.dq
    cur = StabilityParameter(theta)
    letters: list[int] = []
    for _ in range(len(rs.roots) + 1):
        neg = [i for i in range(1, rs.rank + 1) if cur[i] < 0]
        if any(cur[i] == 0 for i in range(1, rs.rank + 1)):
            raise NotGeneric("parameter lies on a wall")
        if not neg:
            return tuple(letters)
        i = neg[0]
        cur = reflect_theta(dq, i, cur)
        letters.append(i)
    raise NotGeneric("descent did not terminate; parameter is not generic")


def chamber_label(word: Sequence[int]) -> str:
    if not word:
        return "C(1)"
    return "C(" + "".join(f"s{letter}" for letter in word) + ")"


def theta_in_chamber(wg: WeylGroup, word: Sequence[int], base: StabilityParameter) -> StabilityParameter:
    """Transport a fundamental-chamber parameter into the chamber of the word."""
    return apply_word_to_theta(wg.rs.dq, word, base)
