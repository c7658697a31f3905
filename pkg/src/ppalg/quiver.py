"""Quivers, double quivers with the star involution, and preprojective relations.

The constructors for the standard extended Dynkin shapes fix one orientation
once and for all (the algebra does not depend on it) and record it through the
stable arrow ids in the JSON output.  All objects are immutable after
construction and freely shareable.
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ConnectivityError, LoopError, RangeError


class DimensionVector(tuple):
    """Integer vector indexed by vertices, with componentwise arithmetic."""

    def __new__(cls, entries: Iterable[int]):
        return super().__new__(cls, tuple(int(x) for x in entries))

    def __add__(self, other):
        return DimensionVector(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return DimensionVector(a - b for a, b in zip(self, other))

    def __neg__(self):
        return DimensionVector(-a for a in self)

    def __mul__(self, c):
        return DimensionVector(c * a for a in self)

    __rmul__ = __mul__

    @staticmethod
    def zero(n: int) -> "DimensionVector":
        return DimensionVector([0] * n)

    @staticmethod
    def unit(n: int, i: int) -> "DimensionVector":
        return DimensionVector(1 if j == i else 0 for j in range(n))

    def is_nonnegative(self) -> bool:
        return all(a >= 0 for a in self)

    def total(self) -> int:
        return sum(self)


@dataclass(frozen=True)
class Arrow:
    aid: str
    src: int
    dst: int


class Quiver:
    """A finite connected quiver without loops."""

    def __init__(self, vertex_count: int, arrows: Sequence[Arrow]):
        arrows = tuple(arrows)
        for a in arrows:
            if not (0 <= a.src < vertex_count and 0 <= a.dst < vertex_count):
                raise RangeError(f"arrow {a.aid} endpoint out of range")
            if a.src == a.dst:
                raise LoopError(f"arrow {a.aid} is a loop at vertex {a.src}")
        ids = [a.aid for a in arrows]
        if len(set(ids)) != len(ids):
            raise RangeError("duplicate arrow ids")
        self.vertex_count = vertex_count
        self.arrows = arrows
        self._check_connected()

    def _check_connected(self) -> None:
        if self.vertex_count <= 1:
            return
        seen = {0}
        frontier = [0]
        adj: dict[int, set[int]] = {v: set() for v in range(self.vertex_count)}
        for a in self.arrows:
            adj[a.src].add(a.dst)
            adj[a.dst].add(a.src)
        while frontier:
            v = frontier.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        if len(seen) != self.vertex_count:
            raise ConnectivityError("underlying graph is not connected")


class DoubleQuiver:
    """The double of a quiver: each arrow a gains a reverse a* with sign -1."""

    def __init__(self, base: Quiver):
        self.base = base
        self.vertex_count = base.vertex_count
        arrows = list(base.arrows)
        star: dict[str, str] = {}
        epsilon: dict[str, int] = {}
        for a in base.arrows:
            sid = a.aid + "s"
            arrows.append(Arrow(sid, a.dst, a.src))
            star[a.aid] = sid
            star[sid] = a.aid
            epsilon[a.aid] = 1
            epsilon[sid] = -1
        self.arrows = tuple(arrows)
        self.star = star
        self.epsilon = epsilon
        self._by_id = {a.aid: a for a in self.arrows}
        self._out = {v: tuple(a for a in self.arrows if a.src == v) for v in range(self.vertex_count)}
        self._in = {v: tuple(a for a in self.arrows if a.dst == v) for v in range(self.vertex_count)}
        # adjacency counts feed the symmetric bilinear form
        self._adj = [[0] * self.vertex_count for _ in range(self.vertex_count)]
        for a in self.arrows:
            self._adj[a.src][a.dst] += 1

    def arrow(self, aid: str) -> Arrow:
        return self._by_id[aid]

    def arrows_out(self, v: int) -> tuple[Arrow, ...]:
        return self._out[v]

    def arrows_in(self, v: int) -> tuple[Arrow, ...]:
        return self._in[v]

    def star_arrow(self, a: Arrow) -> Arrow:
        return self._by_id[self.star[a.aid]]

    def adjacency(self, i: int, j: int) -> int:
        """Number of arrows of the double from i to j."""
        return self._adj[i][j]

    def bilinear(self, alpha: Sequence[int], beta: Sequence[int]) -> int:
        """Symmetric form 2 sum a_i b_i - sum over double arrows a_{src} b_{dst}."""
        n = self.vertex_count
        total = 2 * sum(alpha[i] * beta[i] for i in range(n))
        for a in self.arrows:
            total -= alpha[a.src] * beta[a.dst]
        return total

    def unit(self, i: int) -> DimensionVector:
        return DimensionVector.unit(self.vertex_count, i)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        arrows = []
        for a in self.arrows:
            entry = {"id": a.aid, "src": a.src, "dst": a.dst}
            if self.epsilon[a.aid] == -1:
                entry["star_of"] = self.star[a.aid]
            arrows.append(entry)
        return {"vertices": self.vertex_count, "arrows": arrows}

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @staticmethod
    def from_json(data: dict) -> "DoubleQuiver":
        base_arrows = [
            Arrow(a["id"], a["src"], a["dst"]) for a in data["arrows"] if "star_of" not in a
        ]
        dq = build_double(Quiver(data["vertices"], base_arrows))
        declared = {(a["id"], a["src"], a["dst"]) for a in data["arrows"]}
        rebuilt = {(a.aid, a.src, a.dst) for a in dq.arrows}
        if declared != rebuilt:
            raise RangeError("arrow list is not the double of its base arrows")
        return dq

    def to_dot(self) -> str:
        lines = ["digraph quiver {"]
        for v in range(self.vertex_count):
            lines.append(f"  {v};")
        for a in self.arrows:
            sign = "+" if self.epsilon[a.aid] > 0 else "-"
            lines.append(f'  {a.src} -> {a.dst} [label="{a.aid} ({sign})"];')
        lines.append("}")
        return "\n".join(lines)


@dataclass(frozen=True)
class PreprojectiveRelation:
    """The cycle sum at one vertex: sum of epsilon(a) * (a then a*) over arrows out."""

    vertex: int
    terms: tuple[tuple[int, str, str], ...]  # (sign, first arrow id, then star id)


def build_double(q: Quiver) -> DoubleQuiver:
    """Double a loop-free connected quiver."""
    return DoubleQuiver(q)


def relations(dq: DoubleQuiver) -> list[PreprojectiveRelation]:
    """One preprojective relation per vertex, terms listed in arrow order."""
    out = []
    for v in range(dq.vertex_count):
        terms = tuple(
            (dq.epsilon[a.aid], a.aid, dq.star[a.aid]) for a in dq.arrows_out(v)
        )
        out.append(PreprojectiveRelation(v, terms))
    return out


def _cycle_quiver(n: int) -> Quiver:
    # vertices 0..n around a cycle, arrows pointing away from 0
    arrows = [Arrow(f"a{k}", k - 1, k) for k in range(1, n + 1)]
    arrows.append(Arrow(f"a{n + 1}", n, 0))
    return Quiver(n + 1, arrows)


def _star_quiver(edges: list[tuple[int, int]], n: int) -> Quiver:
    arrows = [Arrow(f"a{k + 1}", s, t) for k, (s, t) in enumerate(edges)]
    return Quiver(n + 1, arrows)


def standard_extended_dynkin(type_tag: str, n: int) -> tuple[DoubleQuiver, DimensionVector]:
    """The fixed extended Dynkin double quiver and its imaginary root vector.

    Vertex 0 is always the extending vertex.  Orientations: cycle arrows point
    away from vertex 0 (type A); arm arrows point toward the branch vertex
    (types D and E).
    """
    tag = type_tag.upper()
    if tag == "A":
        if n < 1:
            raise RangeError("type A needs n >= 1")
        q = _cycle_quiver(n)
        d = DimensionVector([1] * (n + 1))
    elif tag == "D":
        if n < 4:
            raise RangeError("type D needs n >= 4")
        # vertices: 0,1 tails at the left node 2; spine 2..n-2; tails n-1, n at n-2
        edges = [(0, 2), (1, 2)]
        edges += [(k, k + 1) for k in range(2, n - 2)]
        edges += [(n - 1, n - 2), (n, n - 2)]
        q = _star_quiver(edges, n)
        d = DimensionVector([1, 1] + [2] * (n - 3) + [1, 1])
    elif tag == "E" and n == 6:
        edges = [(0, 1), (1, 2), (4, 3), (3, 2), (6, 5), (5, 2)]
        q = _star_quiver(edges, 6)
        d = DimensionVector([1, 2, 3, 2, 1, 2, 1])
    elif tag == "E" and n == 7:
        edges = [(0, 1), (1, 2), (2, 3), (6, 5), (5, 4), (4, 3), (7, 3)]
        q = _star_quiver(edges, 7)
        d = DimensionVector([1, 2, 3, 4, 3, 2, 1, 2])
    elif tag == "E" and n == 8:
        edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (7, 6), (6, 5), (8, 5)]
        q = _star_quiver(edges, 8)
        d = DimensionVector([1, 2, 3, 4, 5, 6, 4, 2, 3])
    else:
        raise RangeError(f"unsupported extended Dynkin type {type_tag}{n}")
    return build_double(q), d


def parse_type(text: str) -> tuple[str, int]:
    """Parse a type label like 'A2', 'Ã2', 'D4' or 'E8'."""
    s = unicodedata.normalize("NFKD", text.strip())
    # drop decoration: tildes, combining marks, underscores
    s = "".join(ch for ch in s if ch.isascii() and ch.isalnum())
    if not s or s[0].upper() not in "ADE":
        raise RangeError(f"cannot parse quiver type {text!r}")
    tag = s[0].upper()
    try:
        n = int(s[1:])
    except ValueError:
        raise RangeError(f"cannot parse quiver type {text!r}") from None
    return tag, n
