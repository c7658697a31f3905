"""Exact scalar fields: arbitrary-precision rationals and small Galois fields.

Every field here is exact, there is no rounding anywhere.  Elements are plain
hashable Python values: ``Fraction`` for the rationals, ``int`` residues for
prime fields, and ``int`` codes (base-p digit vectors of polynomial
coefficients) for prime-power fields.  Field objects are immutable and safe to
share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from .errors import FieldMismatch, RangeError

MAX_PRIME = 2**31 - 1


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface of the exact scalar fields."""

    kind: str

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n: int):
        raise NotImplementedError

    def is_element(self, a) -> bool:
        raise NotImplementedError

    def elements(self) -> Iterator:
        """Iterate all elements (finite fields only)."""
        raise NotImplementedError

    def nonzero_elements(self) -> Iterator:
        for x in self.elements():
            if x != self.zero():
                yield x

    @property
    def is_finite(self) -> bool:
        raise NotImplementedError

    def format_scalar(self, a) -> str:
        raise NotImplementedError

    def parse_scalar(self, s: str):
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


class Rationals(Field):
    """The field of rationals, with always-reduced fractions."""

    kind = "rationals"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def from_int(self, n: int):
        return Fraction(n)

    def is_element(self, a) -> bool:
        return isinstance(a, Fraction)

    @property
    def is_finite(self) -> bool:
        return False

    def format_scalar(self, a) -> str:
        return str(a)

    def parse_scalar(self, s: str):
        return Fraction(s)

    def to_json(self) -> dict:
        return {"kind": "rationals"}

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("rationals")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    """Integers modulo a prime p, with inverses by Fermat's little theorem."""

    kind = "prime"

    def __init__(self, p: int):
        if not (2 <= p <= MAX_PRIME) or not _is_prime(p):
            raise RangeError(f"modulus {p} is not a prime in [2, 2^31-1]")
        self.p = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n: int):
        return n % self.p

    def is_element(self, a) -> bool:
        return isinstance(a, int) and not isinstance(a, bool) and 0 <= a < self.p

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    @property
    def is_finite(self) -> bool:
        return True

    @property
    def order(self) -> int:
        return self.p

    def format_scalar(self, a) -> str:
        return str(a)

    def parse_scalar(self, s: str):
        return int(s) % self.p

    def to_json(self) -> dict:
        return {"kind": "prime", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"GF({self.p})"


def _poly_mul_mod(a: tuple, b: tuple, modulus: tuple, p: int) -> tuple:
    # schoolbook product of coefficient tuples, reduced mod the monic modulus
    k = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            prod[i + j] = (prod[i + j] + ai * bj) % p
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c == 0:
            continue
        prod[deg] = 0
        for j in range(k + 1):
            prod[deg - k + j] = (prod[deg - k + j] - c * modulus[j]) % p
    return tuple(prod[:k])


def _find_irreducible(p: int, k: int) -> tuple:
    """Lexicographically first monic irreducible polynomial of degree k over F_p.

    Coefficient tuples are (c0, ..., c_{k-1}, 1).  Irreducibility is decided by
    trial division against every monic polynomial of degree up to k//2, which
    is plenty for the small extension degrees supported here.
    """

    def poly_divides(d: tuple, f: tuple) -> bool:
        rem = list(f)
        dd = len(d) - 1
        while len(rem) - 1 >= dd and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < dd:
                break
            lead = rem[-1]
            shift = len(rem) - 1 - dd
            for j in range(dd + 1):
                rem[shift + j] = (rem[shift + j] - lead * d[j]) % p
        return not any(rem)

    def monic_polys(deg: int):
        def rec(i: int, cur: list):
            if i == deg:
                yield tuple(cur) + (1,)
                return
            for c in range(p):
                cur.append(c)
                yield from rec(i + 1, cur)
                cur.pop()

        yield from rec(0, [])

    for f in monic_polys(k):
        # skip polynomials divisible by x
        if f[0] == 0:
            continue
        ok = True
        for deg in range(1, k // 2 + 1):
            for d in monic_polys(deg):
                if poly_divides(d, f):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return f
    raise RuntimeError("no irreducible polynomial found")  # pragma: no cover


class GaloisField(Field):
    """GF(p^k) for small prime powers, with tabled arithmetic.

    Elements are integer codes 0..p^k-1 whose base-p digits are polynomial
    coefficients modulo a fixed irreducible polynomial (the lexicographically
    first one, so the tables are reproducible).
    """

    kind = "prime-power"
    MAX_ORDER = 256

    def __init__(self, p: int, k: int):
        if not _is_prime(p):
            raise RangeError(f"characteristic {p} is not prime")
        if k < 2:
            raise RangeError("use PrimeField for k = 1")
        q = p**k
        if q > self.MAX_ORDER:
            raise RangeError(f"prime power {q} exceeds supported order {self.MAX_ORDER}")
        self.p = p
        self.k = k
        self.q = q
        self.modulus = _find_irreducible(p, k)
        polys = [self._decode(c) for c in range(q)]
        self._mul = [
            [self._encode(_poly_mul_mod(polys[a], polys[b], self.modulus, p)) for b in range(q)]
            for a in range(q)
        ]
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    inv[a] = b
                    break
        self._inv = inv

    def _decode(self, code: int) -> tuple:
        digits = []
        for _ in range(self.k):
            digits.append(code % self.p)
            code //= self.p
        return tuple(digits)

    def _encode(self, poly: tuple) -> int:
        code = 0
        for c in reversed(poly):
            code = code * self.p + c
        return code

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        pa, pb = self._decode(a), self._decode(b)
        return self._encode(tuple((x + y) % self.p for x, y in zip(pa, pb)))

    def neg(self, a):
        return self._encode(tuple((-x) % self.p for x in self._decode(a)))

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self._inv[a]

    def from_int(self, n: int):
        # embed the prime subfield
        return n % self.p

    def is_element(self, a) -> bool:
        return isinstance(a, int) and not isinstance(a, bool) and 0 <= a < self.q

    def elements(self) -> Iterator[int]:
        return iter(range(self.q))

    @property
    def is_finite(self) -> bool:
        return True

    @property
    def order(self) -> int:
        return self.q

    def format_scalar(self, a) -> str:
        return str(a)

    def parse_scalar(self, s: str):
        v = int(s)
        if not 0 <= v < self.q:
            raise ValueError(f"{v} is not an element code of GF({self.q})")
        return v

    def to_json(self) -> dict:
        return {"kind": "prime-power", "p": self.p, "k": self.k}

    def __eq__(self, other):
        return isinstance(other, GaloisField) and (other.p, other.k) == (self.p, self.k)

    def __hash__(self):
        return hash(("prime-power", self.p, self.k))

    def __repr__(self):
        return f"GF({self.q})"


QQ = Rationals()


def GF(q: int) -> Field:
    """The finite field with q elements, q a prime or a small prime power."""
    if q < 2:
        raise RangeError(f"{q} is not a prime power")
    p = None
    f = 2
    while f * f <= q:
        if q % f == 0:
            p = f
            break
        f += 1
    if p is None:
        return PrimeField(q)
    k = 0
    m = q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise RangeError(f"{q} is not a prime power")
    return PrimeField(p) if k == 1 else GaloisField(p, k)


def check_same_field(f1: Field, f2: Field) -> None:
    if f1 != f2:
        raise FieldMismatch(f"mixed fields {f1!r} and {f2!r}")


def field_from_json(data: dict) -> Field:
    kind = data.get("kind")
    if kind == "rationals":
        return QQ
    if kind == "prime":
        return PrimeField(data["p"])
    if kind == "prime-power":
        return GaloisField(data["p"], data["k"])
    raise ValueError(f"unknown field kind {kind!r}")
