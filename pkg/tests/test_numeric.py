import random
from fractions import Fraction as F

import pytest

from crflat import GaussianRational, ParseError, sqrt_fraction, sqrt_gaussian
from crflat.numeric import I, ONE, ZERO

from conftest import rand_gaussian, rand_nonzero_gaussian

G = GaussianRational


def test_construction_normalizes():
    g = G(F(2, 4), F(-6, 4))
    assert g.re == F(1, 2) and g.im == F(-3, 2)
    assert G(3) == 3
    assert not G(0)


def test_arithmetic_basics():
    a = G(1, 2)
    b = G(F(1, 2), -1)
    assert a + b == G(F(3, 2), 1)
    assert a - b == G(F(1, 2), 3)
    assert a * b == G(F(5, 2), 0)  # (1+2i)(1/2 - i) = 1/2 - i + i + 2 = 5/2
    assert (a / b) * b == a
    assert I * I == -1
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()


def test_field_axioms_on_random_triples():
    rng = random.Random(1)
    for _ in range(200):
        a, b, c = (rand_gaussian(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
    for _ in range(100):
        a = rand_nonzero_gaussian(rng)
        assert a * a.inverse() == ONE
        assert (ONE / a) * a == ONE


def test_abs2_and_unimodular():
    u = G(F(3, 5), F(4, 5))
    assert u.abs2() == 1
    assert u.is_unimodular()
    assert not G(1, 1).is_unimodular()
    assert G(F(-2, 3)).abs2() == F(4, 9)


def test_pow():
    u = G(F(3, 5), F(4, 5))
    assert u**2 == u * u
    assert u**0 == ONE
    assert u**-1 == u.conj()  # unimodular inverse is the conjugate


@pytest.mark.parametrize(
    "text,expected",
    [
        ("3/4", G(F(3, 4))),
        ("-2", G(-2)),
        ("3/5+4/5 i", G(F(3, 5), F(4, 5))),
        ("3/5-4/5 i", G(F(3, 5), F(-4, 5))),
        ("-1/2-2/3 i", G(F(-1, 2), F(-2, 3))),
        ("i", I),
        ("-i", -I),
        ("2 i", G(0, 2)),
        ("-3/7 i", G(0, F(-3, 7))),
        ("0", ZERO),
    ],
)
def test_parse_literals(text, expected):
    assert G.parse(text) == expected


def test_parse_format_roundtrip():
    rng = random.Random(2)
    for _ in range(200):
        g = rand_gaussian(rng)
        assert G.parse(str(g)) == g


def test_parse_rejects_garbage():
    for bad in ("", "1/0", "x", "1+2", "i i", "1+", "--1"):
        with pytest.raises(ParseError):
            G.parse(bad)


def test_sqrt_fraction():
    assert sqrt_fraction(F(9, 4)) == F(3, 2)
    assert sqrt_fraction(F(0)) == 0
    assert sqrt_fraction(F(2)) is None
    assert sqrt_fraction(F(-1)) is None


def test_sqrt_gaussian():
    # (1+i)/2 squared is i/2
    assert sqrt_gaussian(G(0, F(1, 2))) == G(F(1, 2), F(1, 2))
    assert sqrt_gaussian(G(-4)) == G(0, 2)
    assert sqrt_gaussian(G(F(9, 16))) == G(F(3, 4))
    assert sqrt_gaussian(G(0, F(1, 4))) is None  # needs sqrt(1/8), irrational
    rng = random.Random(3)
    for _ in range(100):
        g = rand_gaussian(rng)
        sq = g * g
        root = sqrt_gaussian(sq)
        assert root is not None and root * root == sq
