import itertools
import random

import pytest

from ppalg.errors import CocycleError
from ppalg.fields import GF, QQ
from ppalg.hom import (
    bilinear_form,
    cocycle_in_kernel,
    ext1_dim_via_complex,
    ext1_space,
    ext_complex_maps,
    extension_from_cocycle,
    extension_splits,
    hom_space,
    retraction_exists,
    torsion_membership,
)
from ppalg.linalg import Matrix
from ppalg.quiver import standard_extended_dynkin
from ppalg.rep import Representation, hom_basis, hom_dim
from ppalg.stability import enumerate_thin_reps
from ppalg.verify import random_nilpotent


def a2(field):
    dq, d = standard_extended_dynkin("A", 2)
    return dq, d, field


def curve_member(dq, field, d, a, b):
    mats = {
        "a1": Matrix(field, 1, 1, [[a]]),
        "a3s": Matrix(field, 1, 1, [[field.one()]]),
        "a2s": Matrix(field, 1, 1, [[b]]),
    }
    return Representation.build(dq, field, d, mats)


def test_form_values_on_units():
    dq, d, _ = a2(GF(2))
    assert bilinear_form(dq, dq.unit(1), dq.unit(1)) == 2
    assert bilinear_form(dq, dq.unit(0), dq.unit(1)) == -1
    for i in range(3):
        assert bilinear_form(dq, d, dq.unit(i)) == 0


def test_form_symmetric_and_bilinear():
    dq, _ = standard_extended_dynkin("D", 4)
    rng = random.Random(2)
    for _ in range(50):
        x = [rng.randint(-3, 3) for _ in range(5)]
        y = [rng.randint(-3, 3) for _ in range(5)]
        z = [rng.randint(-3, 3) for _ in range(5)]
        assert bilinear_form(dq, x, y) == bilinear_form(dq, y, x)
        xz = [a + b for a, b in zip(x, z)]
        assert bilinear_form(dq, xz, y) == bilinear_form(dq, x, y) + bilinear_form(dq, z, y)


def test_hom_dimensions_of_simples():
    dq, d, f = a2(GF(3))
    s0 = Representation.simple(dq, f, 0)
    s1 = Representation.simple(dq, f, 1)
    assert hom_space(s1, s1).dim == 1
    assert hom_space(s0, s1).dim == 0


def test_hom_from_vertex_simple_into_curve_members():
    dq, d, f = a2(GF(3))
    s1 = Representation.simple(dq, f, 1)
    reps = [curve_member(dq, f, d, a, f.one()) for a in f.elements()]
    reps.append(curve_member(dq, f, d, f.one(), f.zero()))
    for m in reps:
        assert hom_space(s1, m).dim == 1


def test_ext_dimensions_between_simples():
    dq, d, f = a2(GF(2))
    s1 = Representation.simple(dq, f, 1)
    s2 = Representation.simple(dq, f, 2)
    assert ext1_space(s1, s1).dim == 0
    assert ext1_space(s1, s2).dim == 1
    # independent reading straight off the complex
    assert ext1_dim_via_complex(s1, s2) == 1


def test_self_extensions_of_simples_vanish_on_star_shape():
    dq, _ = standard_extended_dynkin("D", 4)
    f = GF(2)
    for i in range(5):
        s = Representation.simple(dq, f, i)
        assert ext1_space(s, s).dim == 0


def test_hom_and_ext_spaces_serialize():
    import json

    dq, d, f = a2(GF(2))
    s1 = Representation.simple(dq, f, 1)
    s2 = Representation.simple(dq, f, 2)
    hs = hom_space(s1, s1)
    payload = json.loads(json.dumps(hs.to_json()))
    assert payload["dim"] == 1
    es = ext1_space(s1, s2)
    payload = json.loads(json.dumps(es.to_json()))
    assert payload["dim"] == 1 and len(payload["cocycle_basis"]) == 1


def test_ext_from_curve_member_to_socle_simple():
    dq, d, f = a2(GF(3))
    s1 = Representation.simple(dq, f, 1)
    m = curve_member(dq, f, d, f.one(), f.zero())
    assert ext1_space(m, s1).dim == 1


def test_complex_composes_to_zero():
    dq, d, f = a2(GF(3))
    rng = random.Random(9)
    mods = [random_nilpotent(dq, f, rng, steps=2) for _ in range(6)]
    for m, n in itertools.product(mods, mods):
        d1, d2 = ext_complex_maps(m, n)
        assert d2.mul(d1).is_zero()


@pytest.mark.parametrize("tag,n,seed", [("A", 2, 5), ("D", 4, 6)])
def test_form_identity_on_random_nilpotent_pairs(tag, n, seed):
    dq, _ = standard_extended_dynkin(tag, n)
    f = GF(3)
    rng = random.Random(seed)
    mods = [random_nilpotent(dq, f, rng, steps=rng.randrange(1, 4)) for _ in range(8)]
    for m, x in itertools.product(mods, mods):
        ext = ext1_dim_via_complex(m, x)
        assert bilinear_form(dq, m.dims, x.dims) == hom_dim(m, x) - ext + hom_dim(x, m)
        assert ext == ext1_dim_via_complex(x, m)


def test_zero_cocycle_gives_split_extension():
    dq, d, f = a2(GF(2))
    s1 = Representation.simple(dq, f, 1)
    m = curve_member(dq, f, d, f.one(), f.one())
    e = extension_from_cocycle(m, s1, {})
    assert e.dims == s1.dims + m.dims
    assert extension_splits(m, s1, e)
    from ppalg.rep import is_isomorphic

    assert is_isomorphic(e, s1.direct_sum(m))


def test_nonzero_cocycle_gives_nonsplit_extension():
    dq, d, f = a2(GF(3))
    s1 = Representation.simple(dq, f, 1)
    m = curve_member(dq, f, d, f.one(), f.zero())
    ext = ext1_space(m, s1)
    assert ext.dim == 1
    e = extension_from_cocycle(m, s1, ext.cocycle_basis[0])
    assert tuple(e.dims) == (1, 2, 1)
    assert e.check_relations() == []
    assert not extension_splits(m, s1, e)


def test_bad_cocycle_is_rejected():
    dq, d, f = a2(GF(2))
    m = curve_member(dq, f, d, f.one(), f.one())
    shapes = {a.aid: (m.dims[a.dst], m.dims[a.src]) for a in dq.arrows}
    bad = None
    for aid, (r, c) in shapes.items():
        candidate = {aid: Matrix(f, r, c, [[f.one()] * c for _ in range(r)])}
        if not cocycle_in_kernel(m, m, candidate):
            bad = candidate
            break
    assert bad is not None
    with pytest.raises(CocycleError):
        extension_from_cocycle(m, m, bad)


def test_torsion_membership_of_simples():
    dq, d, f = a2(GF(2))
    s1 = Representation.simple(dq, f, 1)
    assert torsion_membership(s1, 1) == {"T": False, "F": True, "X": True, "Y": False}
    assert torsion_membership(s1, 2) == {"T": True, "F": False, "X": False, "Y": True}


def test_zero_generated_modules_lie_in_every_nonextending_torsion_class():
    dq, d, f = a2(GF(2))
    for m in enumerate_thin_reps(dq, d, f):
        if m.is_zero_generated():
            for i in (1, 2):
                assert torsion_membership(m, i)["T"]


def test_retraction_detects_split_submodules():
    dq, d, f = a2(GF(2))
    s1 = Representation.simple(dq, f, 1)
    s2 = Representation.simple(dq, f, 2)
    both = s1.direct_sum(s2)
    inj = hom_basis(s1, both)[0]
    assert retraction_exists(s1, both, inj)
    m = curve_member(dq, f, d, f.one(), f.zero())
    embed = hom_basis(s1, m)[0]
    assert not retraction_exists(s1, m, embed)


def test_hom_and_ext_over_rationals():
    dq, d, _ = a2(QQ)
    s1 = Representation.simple(dq, QQ, 1)
    s2 = Representation.simple(dq, QQ, 2)
    assert hom_space(s1, s2).dim == 0
    assert ext1_space(s1, s2).dim == 1
