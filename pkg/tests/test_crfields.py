from fractions import Fraction as F

import pytest

from crflat import (
    GaussianRational,
    Germ,
    Series,
    TangentField,
    achievable_order,
    bracket_data,
    build_canonical_field,
    dumps_field,
    loads_field,
    obstruction,
    obstruction_series,
    verify_witness,
)
from crflat.errors import PreconditionError
from crflat.case_tables import germ_for_case

from conftest import UNIMODULAR, conj_field, lie_bracket, rand_germ

G = GaussianRational
I = G(0, 1)


def gens(trunc=9):
    return Series.generators(2, trunc)


def example31(trunc=9):
    z1, z2, zb1, zb2 = gens(trunc)
    return Germ(2, z1 * zb2 + z1 * z2 + zb1 * zb2)


def example32(trunc=9):
    z1, z2, zb1, zb2 = gens(trunc)
    half = G(F(1, 2))
    return Germ(2, z1 * zb2 + (z2 * z2 + zb2 * zb2).scale(half))


def example33(trunc=9):
    z1, z2, zb1, zb2 = gens(trunc)
    return Germ(2, z1 * zb2)


def test_canonical_field_example31():
    z1, z2, zb1, zb2 = gens()
    f = build_canonical_field(example31())
    assert f.cf_z1 == z1 + zb1
    assert f.cf_z2 == -z2
    assert f.cf_w == z1 * zb2 + zb1 * z2 + zb1 * zb2


def test_canonical_field_flat_quadric():
    from crflat import parabolic_quadric

    q = parabolic_quadric(8)
    f = build_canonical_field(q)
    sp = q.split()
    assert f.cf_w.is_zero()
    assert f.cf_z1 == sp.g.dz(2)
    assert f.cf_z2 == -sp.g.dz(1)


def test_canonical_field_case_1a_sample():
    u = UNIMODULAR[0]
    g = germ_for_case("1a", {"a": 1, "b": 1, "d": 1, "u": u}, trunc=6)
    z1, z2, zb1, zb2 = gens(5)
    f = build_canonical_field(g)
    assert f.cf_z1 == zb2.scale(u.conj()) + (z1 + z2).scale(2)
    assert f.cf_z2 == -((z1 + z2).scale(2) + zb1)


def test_witness_fixtures():
    z1, z2, zb1, zb2 = gens()
    zero = Series.zero(2, 9)

    f31 = TangentField(z1 + zb1, -z2, z1 * zb2 + zb1 * z2 + zb1 * zb2)
    chi31 = (z1 + zb1) * z2 * zb2
    w = verify_witness(example31(), f31, chi31)
    assert (w.annihilates_h, w.annihilates_h_conj, w.annihilates_chi) == (True, True, True)

    f32 = TangentField(z2 + zb1, zero, z2 * zb2 + zb1 * zb2)
    w = verify_witness(example32(), f32, z2 * zb2)
    assert (w.annihilates_h, w.annihilates_h_conj, w.annihilates_chi) == (True, True, True)

    f33 = TangentField(zb1, zero, zb1 * zb2)
    w = verify_witness(example33(), f33, z2 * zb2)
    assert (w.annihilates_h, w.annihilates_h_conj, w.annihilates_chi) == (True, True, True)


def test_witness_detects_failure():
    z1, z2, zb1, zb2 = gens()
    f_bad = TangentField(z1, -z2, Series.zero(2, 9))
    w = verify_witness(example31(), f_bad)
    assert not w.all_true()
    assert w.annihilates_chi is None


def test_canonical_field_is_always_tangent(rng):
    # L(h) and L(conj h) vanish identically for every graph germ
    for _ in range(20):
        g = rand_germ(rng, trunc=5)
        w = verify_witness(g, build_canonical_field(g))
        assert w.annihilates_h and w.annihilates_h_conj


def test_commutator_conjugation_symmetries(rng):
    for _ in range(20):
        g = rand_germ(rng, trunc=5)
        d = bracket_data(g)
        assert d.lambda1 == -(d.lambda4.conj())
        assert d.lambda2 == -(d.lambda5.conj())
        assert d.lambda3 == -(d.lambda6.conj())


def test_bracket_data_case_1a_linear_parts():
    u = UNIMODULAR[0]
    g = germ_for_case("1a", {"a": 1, "b": 1, "d": 1, "u": u}, trunc=6)
    d = bracket_data(g)
    z1, z2, zb1, zb2 = gens(4)
    assert d.lambda1 == -((z1 + z2).scale(2) + zb1).scale(u)
    assert d.lambda4 == ((zb1 + zb2).scale(2) + z1).scale(u.conj())
    assert d.lambda5 == z2.scale(u) + (zb1 + zb2).scale(2)


def test_bracket_data_against_generic_lie_bracket(rng):
    # independent oracle: generic commutators of coefficient fields
    for _ in range(12):
        g = rand_germ(rng, trunc=5, extra_terms=3)
        f = build_canonical_field(g)
        L = {"z1": f.cf_z1, "z2": f.cf_z2, "w": f.cf_w}
        T = lie_bracket(L, conj_field(L))
        LT = lie_bracket(L, T)
        d = bracket_data(g)
        zero = Series.zero(2, g.trunc)
        assert T.get("zb1", zero) == d.lambda1
        assert T.get("zb2", zero) == d.lambda2
        assert T.get("wb", zero) == d.lambda3
        assert T.get("z1", zero) == d.lambda4
        assert T.get("z2", zero) == d.lambda5
        assert T.get("w", zero) == d.lambda6
        assert LT.get("zb1", zero) == d.gamma1
        assert LT.get("zb2", zero) == d.gamma2
        assert LT.get("wb", zero) == d.gamma3
        assert LT.get("z1", zero) == d.gamma4
        assert LT.get("z2", zero) == d.gamma5
        assert LT.get("w", zero) == d.gamma6


def test_obstruction_vanishes_on_nonminimal_fixtures():
    assert obstruction(example31(), 6).residual_zero()
    assert obstruction(example32(), 6).residual_zero()
    assert obstruction(example33(), 6).residual_zero()
    from crflat import parabolic_quadric

    assert obstruction(parabolic_quadric(9), 6).residual_zero()


def test_obstruction_certificate_case_1a():
    u = UNIMODULAR[0]
    g = germ_for_case("1a", {"a": 1, "b": 1, "d": 1, "u": u}, trunc=8)
    rep = obstruction(g, 4)
    coeff = rep.residual.coeff4(0, 0, 4, 0)  # zb1^4
    assert coeff == (u - u.conj()) * -8  # -8 a conj(b) d (u - 1/u) at a=b=d=1
    assert coeff == G(0, F(-64, 5))
    assert coeff.abs2() == F(64, 5) ** 2
    assert rep.first_nonzero is not None


def test_obstruction_certificate_case_1a_b_zero():
    # with the off-diagonal entry removed, the z2^3 zb1 comparison survives:
    # residual coefficient (16 a^2 d^2 + 8 d^2)(1 - u^2) = 24 (1 - u^2)
    u = UNIMODULAR[0]
    g = germ_for_case("1a", {"a": 1, "b": 0, "d": 1, "u": u}, trunc=8)
    rep = obstruction(g, 4)
    coeff = rep.residual.coeff4(0, 3, 1, 0)  # z2^3 zb1
    expect = 24 * (1 - u * u)
    assert coeff == expect
    assert coeff


def test_obstruction_order_bookkeeping():
    g = example31(trunc=9)
    assert achievable_order(9) == 6
    with pytest.raises(PreconditionError):
        obstruction(g, 7)


def test_field_file_roundtrip():
    f = build_canonical_field(example31())
    text = dumps_field(f)
    back = loads_field(text)
    assert back.cf_z1 == f.cf_z1 and back.cf_z2 == f.cf_z2 and back.cf_w == f.cf_w
    assert dumps_field(back) == text
