from random import Random

import pytest

from ffsym.dirichlet import pi_q
from ffsym.gf import field_make
from ffsym.polyring import (
    NEG_INF,
    Poly,
    enumerate_monic,
    factor,
    format_poly,
    gcd,
    invmod,
    is_irreducible,
    monic_irreducibles,
    parse_poly,
    powmod,
    random_poly,
    xgcd,
)

F3 = field_make(3)
F5 = field_make(5)
F9 = field_make(3, 2)


def test_arith_examples():
    t = Poly.t(F3)
    one = Poly.one(F3)
    assert (t + one) ** 2 == parse_poly(F3, "t^2+2*t+1")
    assert (t + one) * parse_poly(F3, "t^2+2*t+1") == parse_poly(F3, "t^3+1")
    f = parse_poly(F3, "t^2+2")
    assert f + Poly.zero(F3) == f


def test_degree_sentinel():
    z = Poly.zero(F3)
    assert z.degree == NEG_INF
    assert z.degree + 5 == NEG_INF  # absorbing under degree addition
    assert Poly.one(F3).degree == 0
    t = Poly.t(F3)
    assert (t * z).degree == NEG_INF
    assert (t * t).degree == t.degree + t.degree


def test_mixed_descriptor_error():
    with pytest.raises(ValueError):
        Poly.t(F3) + Poly.t(F5)


def test_divmod_examples():
    t = Poly.t(F3)
    q, r = divmod(t ** 3, t + Poly.one(F3))
    assert q == parse_poly(F3, "t^2+2*t+1")
    assert r == Poly.constant(F3, 2)
    assert gcd(parse_poly(F5, "t^2+4"), parse_poly(F5, "t+4")) == parse_poly(F5, "t+4")
    f = parse_poly(F3, "2*t+2")
    assert gcd(f, Poly.zero(F3)) == f.monic()
    assert gcd(Poly.zero(F3), Poly.zero(F3)) == Poly.zero(F3)
    with pytest.raises(ZeroDivisionError):
        divmod(t, Poly.zero(F3))


def test_xgcd_identity():
    rng = Random(101)
    for _ in range(50):
        f = random_poly(F5, rng, 4)
        g = random_poly(F5, rng, 4)
        d, u, v = xgcd(f, g)
        assert u * f + v * g == d
        assert d == gcd(f, g)


def test_invmod():
    p = parse_poly(F3, "t^2+1")
    for tail in [(1,), (2,), (0, 1), (1, 2), (2, 2)]:
        f = Poly(F3, tail)
        inv = invmod(f, p)
        assert (f * inv) % p == Poly.one(F3)
    with pytest.raises(ZeroDivisionError):
        invmod(Poly.zero(F3), p)


def test_is_irreducible_examples():
    assert is_irreducible(parse_poly(F3, "t^2+1"))
    assert not is_irreducible(parse_poly(F5, "t^2+1"))  # roots +-2
    assert is_irreducible(Poly.t(F5))
    with pytest.raises(ValueError):
        is_irreducible(Poly.one(F3))
    with pytest.raises(ValueError):
        is_irreducible(Poly.zero(F3))


def test_factor_examples():
    fac = factor(parse_poly(F3, "t^2+2*t+1"))
    assert fac.lead_code == 1
    assert fac.factors == ((parse_poly(F3, "t+1"), 2),)
    fac = factor(parse_poly(F3, "t^3+t"))
    assert fac.factors == ((Poly.t(F3), 1), (parse_poly(F3, "t^2+1"), 1))
    fac = factor(parse_poly(F3, "2*t+2"))
    assert fac.lead_code == 2
    assert fac.factors == ((parse_poly(F3, "t+1"), 1),)
    with pytest.raises(ValueError):
        factor(Poly.zero(F3))


def test_factor_roundtrip_seeded():
    for field in (F3, F5, field_make(7), F9):
        rng = Random(f"roundtrip:{field.q}")
        for _ in range(100):
            f = random_poly(field, rng, 6, nonzero=True)
            fac = factor(f, Random(rng.getrandbits(32)))
            assert fac.product() == f
            for prime, _ in fac.factors:
                assert prime.is_monic and is_irreducible(prime)


def test_factor_seed_independent():
    f = parse_poly(F5, "t^6+t^4+2*t^2+3*t+4")
    shapes = {tuple(factor(f, Random(s)).factors) for s in range(5)}
    assert len(shapes) == 1


def test_factor_char_p_powers():
    # p-th powers exercise the derivative-zero branch
    f = parse_poly(F3, "t^3+2")  # (t + 2)^3 over F_3
    assert factor(f).factors == ((parse_poly(F3, "t+2"), 3),)
    g = parse_poly(F9, "t^6+2*t^3+1")  # ((t^3+1))^2 = ((t+1)^3)^2
    assert factor(g).factors == ((parse_poly(F9, "t+1"), 6),)


def test_irreducible_vs_factor_exhaustive():
    for field in (F3, F5):
        for deg in range(1, 5):
            for f in enumerate_monic(field, deg):
                single = factor(f).factors
                expected = len(single) == 1 and single[0][1] == 1
                assert is_irreducible(f) == expected


def test_enumerate_monic():
    assert [format_poly(f) for f in enumerate_monic(F3, 1)] == ["t", "t+1", "t+2"]
    assert len(list(enumerate_monic(F3, 2))) == 9
    assert list(enumerate_monic(F5, 0)) == [Poly.one(F5)]
    polys = list(enumerate_monic(F3, 2))
    assert len(set(polys)) == 9


def test_irreducible_counts_match_mobius():
    for field in (F3, F5):
        for k in range(1, 7):
            assert len(monic_irreducibles(field, k)) == pi_q(field.q, k)


def test_powmod_matches_naive():
    rng = Random(7)
    mod = parse_poly(F5, "t^3+t+1")
    for _ in range(20):
        f = random_poly(F5, rng, 2, nonzero=True)
        n = rng.randint(0, 50)
        assert powmod(f, n, mod) == (f ** n) % mod


def test_text_grammar_roundtrip():
    assert format_poly(parse_poly(F3, "t^3+2*t+1")) == "t^3+2*t+1"
    assert parse_poly(F3, "2+t") == parse_poly(F3, "t+2")
    assert format_poly(Poly.zero(F3)) == "0"
    assert parse_poly(F3, "0") == Poly.zero(F3)
    rng = Random(13)
    for field in (F3, F5, F9):
        for _ in range(50):
            f = random_poly(field, rng, 5)
            assert parse_poly(field, format_poly(f)) == f
    # extension-field coefficients in the modulus basis
    g = parse_poly(F9, "[1,2]*t^2+[0,1]")
    assert g.coeffs == (F9.elem([0, 1]).code, 0, F9.elem([1, 2]).code)
    with pytest.raises(ValueError):
        parse_poly(F3, "t&")
    with pytest.raises(ValueError):
        parse_poly(F3, "")
