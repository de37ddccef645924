import random
from fractions import Fraction as F

import pytest

from crflat import GaussianRational, Series, subst_w
from crflat.errors import ParseError, PreconditionError
from crflat.series import (
    bracket_from_exp,
    dumps_series,
    exp_from_bracket,
    loads_series,
)

from conftest import rand_gaussian, rand_series

G = GaussianRational


def gens(trunc=8):
    return Series.generators(2, trunc)


def test_bracket_exponent_mapping():
    # [t s r h] is the coefficient of z1^s z2^t zb1^h zb2^r
    assert exp_from_bracket(1, 2, 3, 4) == (2, 1, 4, 3)
    assert bracket_from_exp((2, 1, 4, 3)) == (1, 2, 3, 4)


def test_product_basics():
    z1, z2, zb1, zb2 = gens()
    assert z1 * zb1 == Series(2, 8, {(1, 0, 1, 0): 1})
    sq = (z1 + zb1) ** 2
    assert sq.coeff((2, 0, 0, 0)) == 1
    assert sq.coeff((1, 0, 1, 0)) == 2
    assert sq.coeff((0, 0, 2, 0)) == 1


def test_truncation_contract():
    z1, z2, _, _ = Series.generators(2, 2)
    assert ((z1 * z1) * z2).is_zero()  # degree 3 drops at truncation 2
    a = Series(2, 5, {(1, 0, 0, 0): 1})
    b = Series(2, 2, {(0, 1, 0, 0): 1})
    assert (a * b).trunc == 2
    assert (a + b).trunc == 2


def test_nvars_mismatch():
    a = Series.zero(2, 4)
    b = Series.zero(3, 4)
    with pytest.raises(PreconditionError):
        a * b


def test_conj():
    z1, z2, zb1, zb2 = gens()
    assert (z1.scale(G(0, 1))).conj() == zb1.scale(G(0, -1))
    assert (z1 * zb2).conj() == zb1 * z2
    rng = random.Random(7)
    for _ in range(30):
        s = rand_series(rng, 2, 6)
        assert s.conj().conj() == s


def test_conj_is_ring_automorphism():
    rng = random.Random(8)
    for _ in range(25):
        a = rand_series(rng, 2, 5, nterms=4)
        b = rand_series(rng, 2, 5, nterms=4)
        lam = rand_gaussian(rng)
        assert (a * b).conj() == a.conj() * b.conj()
        assert (a.scale(lam)).conj() == a.conj().scale(lam.conj())


def test_derivatives():
    z1, z2, zb1, zb2 = gens()
    s = z1 * z1 * zb2
    assert s.dz(1) == (z1 * zb2).scale(2)
    assert (z1 * z1).dzbar(1).is_zero()
    rng = random.Random(9)
    for _ in range(25):
        s = rand_series(rng, 2, 6)
        assert s.dz(1).dz(2) == s.dz(2).dz(1)
        assert s.dz(1).dzbar(2) == s.dzbar(2).dz(1)


def test_leibniz_rule():
    rng = random.Random(10)
    for _ in range(25):
        a = rand_series(rng, 2, 6, nterms=4)
        b = rand_series(rng, 2, 6, nterms=4)
        lhs = (a * b).dz(1)
        rhs = a.dz(1) * b + a * b.dz(1)
        assert lhs == rhs


def test_is_real():
    z1, z2, zb1, zb2 = gens()
    assert (z1 * zb1).is_real()
    assert (z1 * z1 + zb1 * zb1).is_real()
    assert not (z1 * zb2).is_real()


def test_coeff_lookup_out_of_range():
    z1, _, _, zb2 = gens()
    s = z1 * zb2
    assert s.coeff((1, 0, 0, 1)) == 1
    assert s.coeff((0, 0, 0, 0)) == 0
    assert s.coeff((5, 0, 0, 0)) == 0


def test_subst_w_simple():
    z1, z2, zb1, zb2 = gens()
    # template z1 * w at w = z1 zb1
    out = subst_w({((1, 0, 0, 0), 1): 1}, z1 * zb1)
    assert out == z1 * z1 * zb1
    assert subst_w({((0, 0, 0, 0), 1): 1}, Series.zero(2, 8)).is_zero()


def test_subst_w_square_against_direct_expansion():
    z1, z2, zb1, zb2 = gens()
    q2 = (
        z1 * zb1
        + z2 * zb2
        + (z1 * z1 + z2 * z2 + zb1 * zb1 + zb2 * zb2).scale(G(F(1, 2)))
    )
    out = subst_w({((0, 0, 0, 0), 2): 1}, q2)
    # brute-force convolution oracle, written independently of Series.__mul__
    expect = {}
    for e1, c1 in q2.terms.items():
        for e2, c2 in q2.terms.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            expect[e] = expect.get(e, G(0)) + c1 * c2
    for e, c in expect.items():
        assert out.coeff(e) == c, e
    assert out.coeff((2, 0, 2, 0)) == G(F(3, 2))  # 1 + 2*(1/2)*(1/2)
    assert len(out.terms) == len([c for c in expect.values() if c])


def test_subst_w_requires_zero_constant_term():
    with pytest.raises(PreconditionError):
        subst_w({((0, 0, 0, 0), 1): 1}, Series.const(2, 4, 1))


def test_subst_w_multiplicative():
    rng = random.Random(11)
    for _ in range(10):
        v = rand_series(rng, 2, 6, nterms=4, min_degree=1)
        t1 = ((1, 0, 0, 0), 1)
        t2 = ((0, 1, 0, 0), 2)
        prod_template = {((1, 1, 0, 0), 3): 1}
        lhs = subst_w(prod_template, v)
        rhs = subst_w({t1: 1}, v) * subst_w({t2: 1}, v)
        assert lhs == rhs


def test_homogeneous_part_and_truncate():
    z1, z2, zb1, zb2 = gens()
    s = z1 + z1 * zb1 + z1 * z1 * z2
    assert s.homogeneous_part(2) == z1 * zb1
    assert s.truncate(2) == z1 + z1 * zb1
    with pytest.raises(PreconditionError):
        s.truncate(9)


def test_file_roundtrip():
    rng = random.Random(12)
    for _ in range(10):
        s = rand_series(rng, 2, 7)
        text = dumps_series(s)
        back = loads_series(text)
        assert back == s
        assert dumps_series(back) == text  # canonical writer is stable


def test_file_rejects_duplicates_and_garbage():
    with pytest.raises(ParseError):
        loads_series("vars 2\norder 4\n1 0 0 0 1 0\n1 0 0 0 2 0\n")
    with pytest.raises(ParseError):
        loads_series("vars 2\norder 4\n1 0 0 1 0\n")
    with pytest.raises(ParseError):
        loads_series("order 4\n")
    with pytest.raises(ParseError):
        loads_series("vars 2\norder 2\n3 0 0 0 1 0\n")


def test_comments_and_order_irrelevant():
    a = loads_series("vars 2\norder 4\n# hi\n1 0 0 1 1 0\n0 1 0 0 0 1/2\n")
    b = loads_series("vars 2\norder 4\n0 1 0 0 0 1/2\n1 0 0 1 1 0 # trailing\n")
    assert a == b
