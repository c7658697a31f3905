"""Reflection functors at a vertex, word composites, and shifted simples.

The plus functor replaces the vertex space at i by the kernel of the map
bundling the star matrices of the arrows leaving i; the minus functor uses
the cokernel of the map bundling the star matrices of the arrows entering i.
Both are total linear constructions; the torsion-pair semantics (zero
defect) are enforced only by the word-application wrapper.  The tilting
ideals themselves are never materialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    DichotomyError,
    InternalInvariantError,
    NotGenericStep,
    PreconditionViolated,
    RangeError,
)
from .fields import Field
from .linalg import Matrix, hstack_all, vstack_all
from .quiver import DimensionVector
from .rep import Representation
from .weyl import StabilityParameter, WeylGroup, apply_word_to_dimvec, reflect_theta


@dataclass(frozen=True)
class ReflectResult:
    module: Representation
    defect: int


@dataclass(frozen=True)
class ShiftedModule:
    """A module together with a stalk degree in {0, 1}."""

    module: Representation
    degree: int

    def signed_dims(self) -> DimensionVector:
        sign = -1 if self.degree else 1
        return sign * self.module.dims

    def to_json(self) -> dict:
        return {"degree": self.degree, "module": self.module.to_json()}


def reflect_plus(i: int, m: Representation) -> ReflectResult:
    """Kernel-side reflection at vertex i.

    The new space at i is ker f_i where f_i sums eps(a) M_{a*} over the
    arrows a leaving i; the defect is the cokernel dimension of f_i.
    """
    dq = m.dq
    f = m.field
    out_arrows = dq.arrows_out(i)
    blocks = []
    for a in out_arrows:
        blk = m.mats[dq.star[a.aid]]
        if dq.epsilon[a.aid] < 0:
            blk = blk.neg()
        blocks.append(blk)
    f_i = hstack_all(f, m.dims[i], blocks)
    kernel = f_i.kernel_basis()
    defect = m.dims[i] - f_i.rank()
    new_dims = list(m.dims)
    new_dims[i] = kernel.cols

    # row offsets of the summands inside ker f_i's ambient space
    offsets = {}
    pos = 0
    for a in out_arrows:
        offsets[a.aid] = pos
        pos += m.dims[a.dst]

    mats = {}
    for a in dq.arrows:
        if a.src != i and a.dst != i:
            mats[a.aid] = m.mats[a.aid]
        elif a.dst == i:
            # incoming arrow b: m_b followed by every outgoing arrow, lifted to the kernel
            stacked = vstack_all(
                f, m.dims[a.src], [m.mats[c.aid].mul(m.mats[a.aid]) for c in out_arrows]
            )
            if kernel.cols == 0:
                if not stacked.is_zero():
                    raise InternalInvariantError("incoming map does not land in the kernel")
                lift = Matrix.zero(f, 0, m.dims[a.src])
            else:
                lift = kernel.solve(stacked)
                if lift is None:
                    raise InternalInvariantError("incoming map does not land in the kernel")
            mats[a.aid] = lift
        else:
            # outgoing arrow c: project the kernel to the c summand
            rows = range(offsets[a.aid], offsets[a.aid] + m.dims[a.dst])
            mats[a.aid] = kernel.submatrix(list(rows), list(range(kernel.cols)))
    result = Representation.build(dq, f, new_dims, mats)
    if result.check_relations():
        raise InternalInvariantError("plus reflection broke the preprojective relations")
    return ReflectResult(module=result, defect=defect)


def reflect_minus(i: int, m: Representation) -> ReflectResult:
    """Cokernel-side reflection at vertex i.

    The new space at i is coker g_i where g_i collects eps(a*) M_{a*} over the
    arrows a entering i; the defect is the kernel dimension of g_i.
    """
    dq = m.dq
    f = m.field
    in_arrows = dq.arrows_in(i)
    blocks = []
    for a in in_arrows:
        blk = m.mats[dq.star[a.aid]]
        if dq.epsilon[dq.star[a.aid]] < 0:
            blk = blk.neg()
        blocks.append(blk)
    g_i = vstack_all(f, m.dims[i], blocks)
    proj = g_i.cokernel_projection()
    defect = m.dims[i] - g_i.rank()
    new_dims = list(m.dims)
    new_dims[i] = proj.rows

    offsets = {}
    pos = 0
    for a in in_arrows:
        offsets[a.aid] = pos
        pos += m.dims[a.src]

    proj_rinv = proj.right_inverse() if proj.rows else None

    mats = {}
    for a in dq.arrows:
        if a.src != i and a.dst != i:
            mats[a.aid] = m.mats[a.aid]
        elif a.dst == i:
            # incoming arrow b: include into the b summand, then project to the cokernel
            cols = range(offsets[a.aid], offsets[a.aid] + m.dims[a.src])
            mats[a.aid] = proj.submatrix(list(range(proj.rows)), list(cols))
        else:
            # outgoing arrow c: sum of m_c . m_b over incoming b, factored through the cokernel
            w = hstack_all(
                f, m.dims[a.dst], [m.mats[a.aid].mul(m.mats[b.aid]) for b in in_arrows]
            )
            if proj.rows == 0:
                mats[a.aid] = Matrix.zero(f, m.dims[a.dst], 0)
            else:
                mats[a.aid] = w.mul(proj_rinv)
    result = Representation.build(dq, f, new_dims, mats)
    if result.check_relations():
        raise InternalInvariantError("minus reflection broke the preprojective relations")
    return ReflectResult(module=result, defect=defect)


def apply_word(
    word: Sequence[int],
    m: Representation,
    theta: StabilityParameter,
    check_semistable: bool = True,
) -> tuple[Representation, StabilityParameter]:
    """Apply the composite reflection functor of a word to a semistable module.

    Letters are consumed right to left.  At each letter the sign of the
    current parameter entry picks the plus or minus functor, the parameter is
    reflected, and a nonzero defect (a torsion precondition failure) aborts.
    """
    from .stability import stability_verdict  # local import to avoid a cycle

    if check_semistable:
        verdict = stability_verdict(m, theta)
        if verdict.status not in ("Stable", "StrictlySemistable"):
            raise PreconditionViolated(f"input module is not semistable: {verdict.status}")
    cur = m
    th = StabilityParameter(theta)
    for letter in reversed(tuple(word)):
        if not 0 <= letter < m.dq.vertex_count:
            raise RangeError(f"letter {letter} is not a vertex")
        sign = th[letter]
        if sign == 0:
            raise NotGenericStep(f"parameter entry at vertex {letter} is zero")
        res = reflect_plus(letter, cur) if sign > 0 else reflect_minus(letter, cur)
        if res.defect != 0:
            raise PreconditionViolated(
                f"defect {res.defect} at letter {letter}; module left the torsion class"
            )
        cur = res.module
        th = reflect_theta(m.dq, letter, th)
    return cur, th


def compute_siw(wg: WeylGroup, word: Sequence[int], i: int, field: Field) -> ShiftedModule:
    """The shifted simple obtained by deriving the simple at i across a word.

    The word must be reduced and use only finite-Weyl letters.  Each step
    either keeps degree (zero defect) or shifts once (kernel module vanished);
    any other outcome raises DichotomyError.
    """
    word = tuple(word)
    dq = wg.rs.dq
    if any(not 1 <= letter <= wg.rank for letter in word):
        raise RangeError("shifted simples need letters in the finite Weyl range")
    if not wg.is_reduced(word):
        raise RangeError(f"word {word} is not reduced")
    if not 1 <= i <= wg.rank:
        raise RangeError("simple index must be a finite-Weyl vertex")
    cur = Representation.simple(dq, field, i)
    degree = 0
    for letter in reversed(word):
        res = reflect_plus(letter, cur)
        module_zero = res.module.is_zero_module()
        if res.defect == 0 and not module_zero:
            cur = res.module
        elif module_zero and res.defect > 0:
            stack = Representation.simple(dq, field, letter)
            for _ in range(res.defect - 1):
                stack = stack.direct_sum(Representation.simple(dq, field, letter))
            cur = stack
            degree += 1
            if degree > 1:
                raise DichotomyError("stalk left the degree 0..1 range")
        else:
            raise DichotomyError(
                f"step at letter {letter} had defect {res.defect} and a "
                f"{'zero' if module_zero else 'nonzero'} kernel module"
            )
    expected = apply_word_to_dimvec(dq, word, dq.unit(i))
    sign = -1 if degree else 1
    if sign * cur.dims != expected:
        raise InternalInvariantError("shifted simple dims disagree with the word action")
    return ShiftedModule(module=cur, degree=degree)
