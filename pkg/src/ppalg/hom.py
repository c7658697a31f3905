"""Hom spaces, first extension groups via an explicit four-term complex,
the symmetric bilinear form, extension realization, and torsion-class tests.

The extension group of a pair (m, n) is the middle cohomology of

    0 -> Hom(m,n) -> (+)_v Hom(m_v, n_v) --d1--> (+)_a Hom(m_sa, n_ta)
                                          --d2--> (+)_v Hom(m_v, n_v)

with d1(f) = (n_a f_sa - f_ta m_a)_a and
d2(phi) = (sum over arrows a out of v of eps(a) (n_{a*} phi_a + phi_{a*} m_a))_v.
Its dimension always satisfies the bilinear-form identity, which is asserted
at runtime.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Sequence

from .errors import CocycleError, FieldMismatch, InternalInvariantError
from .linalg import Matrix
from .quiver import DimensionVector, DoubleQuiver
from .rep import Representation, hom_basis, hom_dim


def bilinear_form(dq: DoubleQuiver, alpha: Sequence[int], beta: Sequence[int]) -> int:
    """The symmetric form on dimension vectors attached to the double quiver."""
    return dq.bilinear(alpha, beta)


@dataclass(frozen=True)
class HomSpace:
    basis: tuple
    dim: int

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "basis": [
                {str(v): mat.to_json() for v, mat in sorted(phi.items())} for phi in self.basis
            ],
        }


@dataclass(frozen=True)
class Ext1Space:
    cocycle_basis: tuple
    dim: int

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "cocycle_basis": [
                {aid: mat.to_json() for aid, mat in sorted(phi.items())} for phi in self.cocycle_basis
            ],
        }


def hom_space(m: Representation, n: Representation) -> HomSpace:
    """Canonical basis of the module maps m -> n."""
    basis = hom_basis(m, n)
    return HomSpace(basis=tuple(basis), dim=len(basis))


def _arrow_shapes(m: Representation, n: Representation):
    return [(a.aid, n.dims[a.dst], m.dims[a.src]) for a in m.dq.arrows]


def _delta1(m: Representation, n: Representation) -> Matrix:
    """Matrix of d1 from vertex maps to arrow maps (column = basis vertex map)."""
    f = m.field
    z = f.zero()
    v_off, total_v = [], 0
    for v in range(m.dq.vertex_count):
        v_off.append(total_v)
        total_v += n.dims[v] * m.dims[v]
    rows = []
    for a in m.dq.arrows:
        s, t = a.src, a.dst
        na, ma = n.mats[a.aid], m.mats[a.aid]
        for r in range(n.dims[t]):
            for c in range(m.dims[s]):
                row = [z] * total_v
                for k in range(n.dims[s]):
                    idx = v_off[s] + k * m.dims[s] + c
                    row[idx] = f.add(row[idx], na.data[r][k])
                for k in range(m.dims[t]):
                    idx = v_off[t] + r * m.dims[t] + k
                    row[idx] = f.sub(row[idx], ma.data[k][c])
                rows.append(row)
    return Matrix(f, len(rows), total_v, rows)


def _delta2(m: Representation, n: Representation) -> Matrix:
    """Matrix of d2 from arrow maps to vertex maps."""
    f = m.field
    z = f.zero()
    dq = m.dq
    a_off: Dict[str, int] = {}
    total_a = 0
    for a in dq.arrows:
        a_off[a.aid] = total_a
        total_a += n.dims[a.dst] * m.dims[a.src]
    rows = []
    for v in range(dq.vertex_count):
        for r in range(n.dims[v]):
            for c in range(m.dims[v]):
                row = [z] * total_a
                for a in dq.arrows_out(v):
                    sid = dq.star[a.aid]
                    eps = dq.epsilon[a.aid]
                    na_star = n.mats[sid]
                    ma = m.mats[a.aid]
                    # term n_{a*} . phi_a : phi_a has shape n.dims[ta] x m.dims[v]
                    for k in range(n.dims[a.dst]):
                        coeff = na_star.data[r][k]
                        if coeff == z:
                            continue
                        if eps < 0:
                            coeff = f.neg(coeff)
                        idx = a_off[a.aid] + k * m.dims[v] + c
                        row[idx] = f.add(row[idx], coeff)
                    # term phi_{a*} . m_a : phi_{a*} has shape n.dims[v] x m.dims[ta]
                    for k in range(m.dims[a.dst]):
                        coeff = ma.data[k][c]
                        if coeff == z:
                            continue
                        if eps < 0:
                            coeff = f.neg(coeff)
                        idx = a_off[sid] + r * m.dims[a.dst] + k
                        row[idx] = f.add(row[idx], coeff)
                rows.append(row)
    return Matrix(f, len(rows), total_a, rows)


def _unflatten_arrow_maps(m: Representation, n: Representation, vec: tuple) -> Dict[str, Matrix]:
    out = {}
    pos = 0
    for aid, r, c in _arrow_shapes(m, n):
        block = [[vec[pos + i * c + j] for j in range(c)] for i in range(r)]
        out[aid] = Matrix(m.field, r, c, block)
        pos += r * c
    return out


def ext1_space(m: Representation, n: Representation) -> Ext1Space:
    """First extension group computed as middle cohomology of the complex.

    Raises InternalInvariantError when the computed dimension disagrees with
    the bilinear-form identity; that always indicates an implementation bug.
    """
    if m.field != n.field:
        raise FieldMismatch("ext over different fields")
    d1 = _delta1(m, n)
    d2 = _delta2(m, n)
    ker = d2.kernel_basis()
    img = d1.image_basis()
    # pick the kernel columns that extend the image to a basis of ker d2
    chosen = []
    acc = img
    for j in range(ker.cols):
        col = Matrix.column(m.field, ker.column_vector(j))
        grown = acc.hstack(col)
        if grown.rank() > acc.rank():
            chosen.append(ker.column_vector(j))
            acc = grown
    dim = len(chosen)
    expected = hom_dim(m, n) + hom_dim(n, m) - bilinear_form(m.dq, m.dims, n.dims)
    if dim != expected:
        raise InternalInvariantError(
            f"extension dimension {dim} violates the form identity (expected {expected})"
        )
    basis = tuple(_unflatten_arrow_maps(m, n, vec) for vec in chosen)
    return Ext1Space(cocycle_basis=basis, dim=dim)


def ext_complex_maps(m: Representation, n: Representation) -> tuple[Matrix, Matrix]:
    """The two differentials of the four-term complex, as plain matrices."""
    return _delta1(m, n), _delta2(m, n)


def ext1_dim_via_complex(m: Representation, n: Representation) -> int:
    """Middle cohomology dimension computed with no appeal to the form identity."""
    d1 = _delta1(m, n)
    d2 = _delta2(m, n)
    return (d2.cols - d2.rank()) - d1.rank()


def cocycle_in_kernel(m: Representation, n: Representation, cocycle: Dict[str, Matrix]) -> bool:
    f = m.field
    flat = []
    for aid, r, c in _arrow_shapes(m, n):
        mat = cocycle.get(aid) or Matrix.zero(f, r, c)
        flat.extend(mat.data[i][j] for i in range(r) for j in range(c))
    d2 = _delta2(m, n)
    return d2.mul(Matrix.column(f, flat)).is_zero()


def extension_from_cocycle(
    m: Representation, n: Representation, cocycle: Dict[str, Matrix]
) -> Representation:
    """The extension 0 -> n -> e -> m -> 0 classified by a closing cocycle.

    Arrow matrices are the block forms [[n_a, phi_a], [0, m_a]]; the result is
    relation-checked and a failure raises CocycleError.
    """
    f = m.field
    dq = m.dq
    dims = DimensionVector(n.dims) + DimensionVector(m.dims)
    mats = {}
    for a in dq.arrows:
        phi = cocycle.get(a.aid) or Matrix.zero(f, n.dims[a.dst], m.dims[a.src])
        top = n.mats[a.aid].hstack(phi)
        bot = Matrix.zero(f, m.dims[a.dst], n.dims[a.src]).hstack(m.mats[a.aid])
        mats[a.aid] = top.vstack(bot)
    e = Representation.build(dq, f, dims, mats)
    if e.check_relations():
        raise CocycleError("cocycle does not close, extension violates the relations")
    return e


def extension_splits(m: Representation, n: Representation, e: Representation) -> bool:
    """Whether the evident surjection e -> m admits a section.

    ``e`` must be in the block form produced by extension_from_cocycle.  The
    section is found, when it exists, as a solution of the affine intertwining
    system with the projection constraint appended.
    """
    f = m.field
    dq = m.dq
    basis = hom_basis(m, e)
    if not basis:
        return all(d == 0 for d in m.dims)
    # projection constraint: bottom block of each vertex map equals identity
    cols = len(basis)
    rows = []
    rhs = []
    for v in range(dq.vertex_count):
        nv = n.dims[v]
        for r in range(m.dims[v]):
            for c in range(m.dims[v]):
                rows.append([phi[v].data[nv + r][c] for phi in basis])
                rhs.append(f.one() if r == c else f.zero())
    sys = Matrix(f, len(rows), cols, rows)
    return sys.solve(Matrix.column(f, rhs)) is not None


def retraction_exists(s: Representation, n: Representation, inj: Dict[int, Matrix]) -> bool:
    """Whether an injection s -> n admits a one-sided inverse n -> s.

    Solved as an affine system over the canonical hom basis: find a
    combination psi with psi composed with the injection equal to the
    identity of s.
    """
    f = s.field
    basis = hom_basis(n, s)
    if not basis:
        return all(d == 0 for d in s.dims)
    rows = []
    rhs = []
    for v in range(s.dq.vertex_count):
        for r in range(s.dims[v]):
            for c in range(s.dims[v]):
                rows.append([psi[v].mul(inj[v]).data[r][c] for psi in basis])
                rhs.append(f.one() if r == c else f.zero())
    sys = Matrix(f, len(rows), len(basis), rows)
    return sys.solve(Matrix.column(f, rhs)) is not None


def in_add_simple(m: Representation, i: int) -> bool:
    """Membership in add(S_i): support only at i and all maps zero."""
    for v in range(m.dq.vertex_count):
        if v != i and m.dims[v] != 0:
            return False
    return all(mat.is_zero() for mat in m.mats.values())


def torsion_membership(m: Representation, i: int) -> dict:
    """Membership flags for the four torsion classes of the vertex ideal at i.

    T holds when the simple at i does not appear in the top, Y when it does
    not appear in the socle, and F and X both mean membership in add(S_i).
    """
    top = m.top_multiplicities()
    soc = m.socle_multiplicities()
    add_si = in_add_simple(m, i)
    return {"T": top[i] == 0, "F": add_si, "X": add_si, "Y": soc[i] == 0}
