"""Finite dimensional modules over a preprojective algebra as matrix data.

A representation assigns a vector space to each vertex and a matrix to each
arrow of the double quiver, subject to the preprojective relations.  The
column-vector convention is used throughout: the matrix of arrow ``a`` has
shape dims[target] x dims[source], and the path "a then b" acts as M_b . M_a.
Representations are immutable; all operations are pure.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .errors import FieldMismatch, Inconclusive, ShapeError
from .fields import Field, field_from_json
from .linalg import Matrix, hstack_all, spans_subspace, vstack_all
from .quiver import DimensionVector, DoubleQuiver

ISO_EXHAUSTIVE_DIM = 4
ISO_EXHAUSTIVE_COMBOS = 10**6
ISO_RANDOM_TRIES = 64


@dataclass(frozen=True)
class VertexSubspaces:
    """One subspace of each vertex space, stored as canonical column bases.

    Realizes a submodule when closed under every arrow map.
    """

    module: "Representation"
    spans: tuple

    def dims(self) -> DimensionVector:
        return DimensionVector(s.cols for s in self.spans)

    def is_arrow_closed(self) -> bool:
        for a in self.module.dq.arrows:
            image = self.module.mats[a.aid].mul(self.spans[a.src])
            if not spans_subspace(self.spans[a.dst], image):
                return False
        return True


@dataclass(frozen=True, eq=False)
class Representation:
    dq: DoubleQuiver
    field: Field
    dims: DimensionVector
    mats: Mapping[str, Matrix]

    def mat(self, aid: str) -> Matrix:
        return self.mats[aid]

    def is_zero_module(self) -> bool:
        return all(d == 0 for d in self.dims)

    def __eq__(self, other):
        return (
            isinstance(other, Representation)
            and self.field == other.field
            and self.dims == other.dims
            and dict(self.mats) == dict(other.mats)
        )

    def __hash__(self):
        return hash((self.field, self.dims, tuple(sorted((k, v) for k, v in self.mats.items()))))

    # -- constructors ------------------------------------------------------

    @staticmethod
    def build(
        dq: DoubleQuiver,
        field: Field,
        dims: Sequence[int],
        mats: Optional[Mapping[str, Matrix]] = None,
    ) -> "Representation":
        """Assemble a representation, filling unspecified arrows with zero maps."""
        dims = DimensionVector(dims)
        if len(dims) != dq.vertex_count:
            raise ShapeError("dimension vector length mismatch")
        if not dims.is_nonnegative():
            raise ShapeError("negative vertex dimension")
        full: dict[str, Matrix] = {}
        mats = mats or {}
        for a in dq.arrows:
            want = (dims[a.dst], dims[a.src])
            m = mats.get(a.aid)
            if m is None:
                m = Matrix.zero(field, *want)
            if m.field != field:
                raise FieldMismatch(f"arrow {a.aid} matrix over wrong field")
            if (m.rows, m.cols) != want:
                raise ShapeError(f"arrow {a.aid} expects shape {want}, got {(m.rows, m.cols)}")
            full[a.aid] = m
        return Representation(dq, field, dims, full)

    @staticmethod
    def simple(dq: DoubleQuiver, field: Field, i: int) -> "Representation":
        """The vertex simple: one dimensional at i, zero elsewhere."""
        return Representation.build(dq, field, dq.unit(i))

    @staticmethod
    def zero_module(dq: DoubleQuiver, field: Field) -> "Representation":
        return Representation.build(dq, field, DimensionVector.zero(dq.vertex_count))

    def direct_sum(self, other: "Representation") -> "Representation":
        if self.dq is not other.dq and self.dq.to_json() != other.dq.to_json():
            raise ShapeError("direct sum over different quivers")
        if self.field != other.field:
            raise FieldMismatch("direct sum over different fields")
        dims = self.dims + other.dims
        mats = {}
        for a in self.dq.arrows:
            m1, m2 = self.mats[a.aid], other.mats[a.aid]
            top = m1.hstack(Matrix.zero(self.field, m1.rows, m2.cols))
            bot = Matrix.zero(self.field, m2.rows, m1.cols).hstack(m2)
            mats[a.aid] = top.vstack(bot)
        return Representation.build(self.dq, self.field, dims, mats)

    # -- preprojective relations --------------------------------------------

    def relation_matrix(self, v: int) -> Matrix:
        """The relation sum at vertex v as a dims[v] x dims[v] matrix."""
        f = self.field
        acc = Matrix.zero(f, self.dims[v], self.dims[v])
        for a in self.dq.arrows_out(v):
            term = self.mats[self.dq.star[a.aid]].mul(self.mats[a.aid])
            if self.dq.epsilon[a.aid] < 0:
                term = term.neg()
            acc = acc.add(term)
        return acc

    def check_relations(self) -> list[int]:
        """Vertices where the preprojective relation fails (empty list = valid)."""
        return [v for v in range(self.dq.vertex_count) if not self.relation_matrix(v).is_zero()]

    # -- structure ---------------------------------------------------------

    def top_multiplicities(self) -> DimensionVector:
        """Multiplicity of each vertex simple in M / (M . arrow ideal)."""
        out = []
        for v in range(self.dq.vertex_count):
            incoming = [self.mats[a.aid] for a in self.dq.arrows_in(v)]
            stacked = hstack_all(self.field, self.dims[v], incoming)
            out.append(self.dims[v] - stacked.rank())
        return DimensionVector(out)

    def socle_multiplicities(self) -> DimensionVector:
        """Multiplicity of each vertex simple in the socle."""
        out = []
        for v in range(self.dq.vertex_count):
            outgoing = [self.mats[a.aid] for a in self.dq.arrows_out(v)]
            stacked = vstack_all(self.field, self.dims[v], outgoing)
            out.append(self.dims[v] - stacked.rank())
        return DimensionVector(out)

    def radical_chain_step(self, spans: list[Matrix]) -> list[Matrix]:
        # next power of the arrow ideal, as canonical column spans per vertex
        nxt = []
        for v in range(self.dq.vertex_count):
            images = [self.mats[a.aid].mul(spans[a.src]) for a in self.dq.arrows_in(v)]
            stacked = hstack_all(self.field, self.dims[v], images)
            nxt.append(stacked.image_basis())
        return nxt

    def is_nilpotent(self) -> bool:
        """Whether some power of the arrow ideal annihilates the module."""
        spans = [Matrix.identity(self.field, d) for d in self.dims]
        for _ in range(self.dims.total() + 1):
            if all(s.cols == 0 for s in spans):
                return True
            nxt = self.radical_chain_step(spans)
            if [m.cols for m in nxt] == [m.cols for m in spans]:
                # dimensions stabilized at a nonzero chain
                return all(s.cols == 0 for s in nxt)
            spans = nxt
        return all(s.cols == 0 for s in spans)

    def is_zero_generated(self) -> bool:
        """Generated by a one dimensional piece at the extending vertex 0."""
        if self.dims[0] != 1:
            return False
        spans = [
            Matrix.identity(self.field, self.dims[v]) if v == 0 else Matrix.zero(self.field, self.dims[v], 0)
            for v in range(self.dq.vertex_count)
        ]
        for _ in range(self.dims.total() + 1):
            grown = []
            changed = False
            for v in range(self.dq.vertex_count):
                images = [spans[v]] + [
                    self.mats[a.aid].mul(spans[a.src]) for a in self.dq.arrows_in(v)
                ]
                span = hstack_all(self.field, self.dims[v], images).image_basis()
                if span.cols != spans[v].cols:
                    changed = True
                grown.append(span)
            spans = grown
            if not changed:
                break
        return all(spans[v].cols == self.dims[v] for v in range(self.dq.vertex_count))

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "quiver": self.dq.to_json(),
            "field": self.field.to_json(),
            "dims": list(self.dims),
            "mats": {aid: m.to_json() for aid, m in sorted(self.mats.items())},
        }

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @staticmethod
    def from_json(data: dict) -> "Representation":
        dq = DoubleQuiver.from_json(data["quiver"])
        field = field_from_json(data["field"])
        dims = DimensionVector(data["dims"])
        mats = {}
        for a in dq.arrows:
            raw = data["mats"].get(a.aid)
            if raw is not None:
                mats[a.aid] = Matrix.from_json(field, raw, dims[a.dst], dims[a.src])
        return Representation.build(dq, field, dims, mats)


def _hom_system(m: "Representation", n: "Representation") -> tuple[Matrix, list[tuple[int, int, int]]]:
    """Matrix of the intertwining system for maps m -> n.

    Unknowns are the entries of one matrix per vertex (shape n.dims[v] x
    m.dims[v]) in vertex-major, row-major order; one equation block per arrow.
    """
    f = m.field
    z = f.zero()
    offsets = []
    total = 0
    for v in range(m.dq.vertex_count):
        offsets.append(total)
        total += n.dims[v] * m.dims[v]

    def var(v: int, r: int, c: int) -> int:
        return offsets[v] + r * m.dims[v] + c

    rows = []
    for a in m.dq.arrows:
        s, t = a.src, a.dst
        na, ma = n.mats[a.aid], m.mats[a.aid]
        # equation block: n_a . phi_s - phi_t . m_a = 0, entrywise
        for r in range(n.dims[t]):
            for c in range(m.dims[s]):
                row = [z] * total
                for k in range(n.dims[s]):
                    row[var(s, k, c)] = f.add(row[var(s, k, c)], na.data[r][k])
                for k in range(m.dims[t]):
                    row[var(t, r, k)] = f.sub(row[var(t, r, k)], ma.data[k][c])
                rows.append(row)
    sys = Matrix(f, len(rows), total, rows)
    shapes = [(v, n.dims[v], m.dims[v]) for v in range(m.dq.vertex_count)]
    return sys, shapes


def _unflatten_vertex_maps(field: Field, vec: tuple, shapes) -> dict[int, Matrix]:
    out = {}
    pos = 0
    for v, r, c in shapes:
        block = [[vec[pos + i * c + j] for j in range(c)] for i in range(r)]
        out[v] = Matrix(field, r, c, block)
        pos += r * c
    return out


def hom_basis(m: Representation, n: Representation) -> list[dict[int, Matrix]]:
    """Canonical basis of the space of module maps m -> n."""
    if m.field != n.field:
        raise FieldMismatch("hom over different fields")
    sys, shapes = _hom_system(m, n)
    ker = sys.kernel_basis()
    return [
        _unflatten_vertex_maps(m.field, ker.column_vector(j), shapes)
        for j in range(ker.cols)
    ]


def hom_dim(m: Representation, n: Representation) -> int:
    sys, _ = _hom_system(m, n)
    return sys.cols - sys.rank()


def morphism_is_injective(phi: dict[int, Matrix]) -> bool:
    return all(mat.rank() == mat.cols for mat in phi.values())


def morphism_is_surjective(phi: dict[int, Matrix]) -> bool:
    return all(mat.rank() == mat.rows for mat in phi.values())


def _combination(field: Field, basis: list[dict[int, Matrix]], coeffs) -> dict[int, Matrix]:
    out = {}
    for v in basis[0]:
        acc = Matrix.zero(field, basis[0][v].rows, basis[0][v].cols)
        for c, phi in zip(coeffs, basis):
            if c != field.zero():
                acc = acc.add(phi[v].scale(c))
        out[v] = acc
    return out


def _is_invertible(phi: dict[int, Matrix]) -> bool:
    return all(mat.rows == mat.cols and mat.rank() == mat.rows for mat in phi.values())


def is_isomorphic(
    m: Representation,
    n: Representation,
    seed: int = 0,
    exhaustive_dim: int = ISO_EXHAUSTIVE_DIM,
    exhaustive_budget: int = ISO_EXHAUSTIVE_COMBOS,
    random_tries: int = ISO_RANDOM_TRIES,
) -> bool:
    """Exact isomorphism test.

    Over a finite field with a small hom space the search over coefficient
    combinations is exhaustive and therefore definitive.  Otherwise a seeded
    random search runs first; a miss with matching hom dimensions raises
    Inconclusive instead of claiming a negative.
    """
    if m.field != n.field:
        raise FieldMismatch("isomorphism test over different fields")
    if m.dims != n.dims:
        return False
    if m.is_zero_module():
        return True
    basis = hom_basis(m, n)
    d = len(basis)
    if d == 0:
        return False
    f = m.field
    if f.is_finite and d <= exhaustive_dim and f.order**d <= exhaustive_budget:
        for coeffs in itertools.product(list(f.elements()), repeat=d):
            if all(c == f.zero() for c in coeffs):
                continue
            if _is_invertible(_combination(f, basis, coeffs)):
                return True
        return False
    rng = random.Random(seed)
    for _ in range(random_tries):
        if f.is_finite:
            pool = list(f.elements())
            coeffs = [pool[rng.randrange(len(pool))] for _ in range(d)]
        else:
            coeffs = [f.from_int(rng.randint(-20, 20)) for _ in range(d)]
        if any(c != f.zero() for c in coeffs) and _is_invertible(_combination(f, basis, coeffs)):
            return True
    if hom_dim(m, m) == d and hom_dim(n, n) == d:
        raise Inconclusive("random isomorphism search failed with matching hom data")
    return False


def is_indecomposable(m: Representation, budget: int = 10**5) -> bool:
    """End-ring locality by exhaustive scan over a finite field.

    Raises Inconclusive when the endomorphism space is too large to scan.
    """
    if m.is_zero_module():
        return False
    basis = hom_basis(m, m)
    d = len(basis)
    f = m.field
    if not f.is_finite or f.order**d > budget:
        raise Inconclusive("endomorphism scan out of budget")
    size = m.dims.total()
    for coeffs in itertools.product(list(f.elements()), repeat=d):
        phi = _combination(f, basis, coeffs)
        if _is_invertible(phi):
            continue
        # non-invertible endomorphisms of an indecomposable must be nilpotent
        power = phi
        for _ in range(size):
            power = {v: power[v].mul(phi[v]) for v in power}
        if any(not mat.is_zero() for mat in power.values()):
            return False
    return True


def quotient_by_map(n: Representation, phi: dict[int, Matrix]) -> Representation:
    """The quotient of n by the image of a module map phi: s -> n."""
    f = n.field
    projections = {}
    dims = []
    for v in range(n.dq.vertex_count):
        img = phi[v]
        proj = img.cokernel_projection()
        projections[v] = proj
        dims.append(proj.rows)
    mats = {}
    for a in n.dq.arrows:
        s, t = a.src, a.dst
        # induced map on quotients: Q_a . proj_s = proj_t . n_a
        w = projections[t].mul(n.mats[a.aid])
        if projections[s].rows == 0:
            mats[a.aid] = Matrix.zero(f, dims[t], 0)
        else:
            mats[a.aid] = w.mul(projections[s].right_inverse())
    return Representation.build(n.dq, f, dims, mats)
