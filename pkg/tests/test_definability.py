from random import Random

import pytest

from ffsym.definability import (
    InfSquareClass,
    gamma_check,
    inf_square_class,
    is_constant_semantic,
    member_A,
    member_A_union_Ainf_semantic,
    member_A_union_Ainf_theorem,
    phi_inf,
    sample_d_pairs,
    witness_pair,
)
from ffsym.gf import field_make, smallest_nonsquare
from ffsym.places import Place, RatFunc, parse_ratfunc, random_ratfunc
from ffsym.polyring import Poly, monic_irreducibles, parse_poly
from ffsym.symbols import local_symbol

F3 = field_make(3)
F5 = field_make(5)


def test_phi_inf_examples():
    assert phi_inf(parse_ratfunc(F3, "t^2"))
    assert not phi_inf(parse_ratfunc(F3, "2*t^2"))
    assert phi_inf(parse_ratfunc(F3, "t+1/t"))
    with pytest.raises(ValueError):
        phi_inf(RatFunc.zero(F3))


def test_phi_inf_on_squares():
    rng = Random(11)
    for field in (F3, F5):
        for _ in range(100):
            x = random_ratfunc(field, rng, 3)
            assert phi_inf(x * x)


def test_inf_square_class_examples():
    assert inf_square_class(parse_ratfunc(F3, "2/t")) is InfSquareClass.NONSQUARE_INV_T_TIMES_SQUARE
    assert inf_square_class(RatFunc.t(F3)) is InfSquareClass.INV_T_TIMES_SQUARE
    assert inf_square_class(RatFunc.constant(F3, 2)) is InfSquareClass.NONSQUARE_TIMES_SQUARE
    assert inf_square_class(parse_ratfunc(F3, "t^2+1")) is InfSquareClass.SQUARE


def test_inf_square_class_partitions():
    # exactly the SQUARE class passes phi_inf
    rng = Random(17)
    for _ in range(120):
        x = random_ratfunc(F5, rng, 3)
        assert (inf_square_class(x) is InfSquareClass.SQUARE) == phi_inf(x)


def test_gamma_examples():
    eps = F3.elem(2)
    assert gamma_check(parse_ratfunc(F3, "2*t"), parse_ratfunc(F3, "2*t^2+2"), eps)
    assert not gamma_check(RatFunc.one(F3), RatFunc.one(F3), eps)
    assert not gamma_check(parse_ratfunc(F3, "2*t"), parse_ratfunc(F3, "2*t"), eps)
    with pytest.raises(ValueError):
        gamma_check(RatFunc.zero(F3), RatFunc.one(F3), eps)
    with pytest.raises(ValueError):
        gamma_check(RatFunc.one(F3), RatFunc.one(F3), F3.one)  # epsilon must be a nonsquare


def test_witness_pair_examples():
    eps = F3.elem(2)
    wp = witness_pair(Place.finite(Poly.t(F3)), eps, Random(2))
    assert wp.a == parse_ratfunc(F3, "2*t")
    assert wp.b == parse_ratfunc(F3, "2*t^2+2")  # companion t^2 + 1
    assert {str(p) for p in wp.ramified.places} == {"t", "inf"}
    wp2 = witness_pair(Place.finite(parse_poly(F3, "t^2+1")), eps, Random(2))
    assert {str(p) for p in wp2.ramified.places} == {"t^2+1", "inf"}
    with pytest.raises(ValueError):
        witness_pair(Place.infinite(F3), eps)
    with pytest.raises(ValueError):
        witness_pair(Place.finite(Poly.t(field_make(2))), None)


def test_witness_pairs_exhaustive_small_primes():
    # for every small prime: ramified exactly at {P, inf}, pair in the family,
    # companion of opposite degree parity, symbols -1 at P and infinity
    for field, max_deg in ((F3, 4), (F5, 4)):
        eps = smallest_nonsquare(field)
        inf = Place.infinite(field)
        for deg in range(1, max_deg + 1):
            for prime in monic_irreducibles(field, deg):
                place = Place.finite(prime, trusted=True)
                wp = witness_pair(place, eps, Random(f"wp:{field.q}:{prime}"))
                assert wp.ramified.places == frozenset({place, inf})
                assert gamma_check(wp.a, wp.b, eps)
                q_deg = wp.companion.residue_degree
                assert (q_deg - deg) % 2 == 1
                assert local_symbol(wp.a, wp.b, place).sign == -1
                assert local_symbol(wp.a, wp.b, inf).sign == -1


def test_semantic_membership_examples():
    assert member_A_union_Ainf_semantic(parse_ratfunc(F3, "t^2"))
    assert member_A_union_Ainf_semantic(parse_ratfunc(F3, "1/t+1"))
    assert not member_A_union_Ainf_semantic(parse_ratfunc(F3, "t^2+1/t"))
    assert member_A_union_Ainf_semantic(RatFunc.zero(F3))


def test_is_constant_semantic():
    assert is_constant_semantic(RatFunc.constant(F3, 2))
    assert not is_constant_semantic(RatFunc.t(F3))
    assert is_constant_semantic(parse_ratfunc(F3, "2*t+2/t+1"))
    assert is_constant_semantic(RatFunc.zero(F3))


def test_sample_d_pairs_accepted_by_gamma():
    for field in (F3, F5):
        eps = smallest_nonsquare(field)
        pairs = sample_d_pairs(field, eps, 12, Random(f"dpairs:{field.q}"))
        assert len(pairs) == 12
        for a, b, source in pairs:
            assert source in ("witness", "random")
            assert gamma_check(a, b, eps)


def test_theorem_membership_examples():
    eps = F3.elem(2)
    r = member_A_union_Ainf_theorem(parse_ratfunc(F3, "t^2"), eps, 8, Random(4))
    assert r.member and r.agrees and len(r.evidence) == 8
    r = member_A_union_Ainf_theorem(parse_ratfunc(F3, "t^2/t+1"), eps, 8, Random(4))
    assert not r.member and r.agrees
    assert not r.evidence[0].accepted
    r = member_A_union_Ainf_theorem(parse_ratfunc(F3, "1/t"), eps, 8, Random(4))
    assert r.member and r.agrees


def test_theorem_agrees_with_semantic():
    for field in (F3, F5):
        eps = smallest_nonsquare(field)
        rng = Random(f"agree:{field.q}")
        members = non_members = 0
        for _ in range(400):
            x = random_ratfunc(field, rng, 4, nonzero=False)
            semantic = member_A_union_Ainf_semantic(x)
            members += semantic
            non_members += not semantic
            report = member_A_union_Ainf_theorem(x, eps, 4, rng)
            assert report.member == semantic
            assert report.agrees
        assert members and non_members  # both directions exercised


def test_member_A_examples():
    eps = F3.elem(2)
    assert member_A(parse_ratfunc(F3, "t^3+2*t"), eps, 6, Random(9)).member
    r = member_A(parse_ratfunc(F3, "1/t+1"), eps, 6, Random(9))
    assert not r.member and r.agrees  # inside A-or-Ainf but not a polynomial
    assert member_A(RatFunc.constant(F3, 2), eps, 6, Random(9)).member
    assert member_A(RatFunc.zero(F3), eps, 6, Random(9)).member


def test_member_A_matches_constant_denominator():
    for field in (F3, F5):
        eps = smallest_nonsquare(field)
        rng = Random(f"memA:{field.q}")
        for _ in range(500):
            x = random_ratfunc(field, rng, 3, nonzero=False)
            report = member_A(x, eps, 3, rng)
            assert report.agrees
            assert report.member == x.den.is_constant


def test_witness_pair_deterministic_for_seed():
    eps = F5.elem(2)
    place = Place.finite(parse_poly(F5, "t^2+2"))
    first = witness_pair(place, eps, Random("fixed"))
    second = witness_pair(place, eps, Random("fixed"))
    assert first.a == second.a and first.b == second.b
