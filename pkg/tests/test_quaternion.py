from random import Random

import pytest

from ffsym.definability import witness_pair
from ffsym.gf import field_make, smallest_nonsquare
from ffsym.places import Place, RatFunc, odd_support, parse_ratfunc, random_ratfunc, support, valuation
from ffsym.polyring import Poly, monic_irreducibles, parse_poly
from ffsym.quaternion import (
    EmptyRamificationError,
    decompose_t_element,
    delta,
    i_c_member,
    in_u_residue,
    jacobson_member,
    parity_class_member,
    r_tilde_member,
    s_global_member,
    s_local_member,
    t_member,
    t_unit_member,
    u_set,
)
from ffsym.places import is_square_local
from ffsym.symbols import hilbert_product, local_symbol

F3 = field_make(3)
F5 = field_make(5)
F7 = field_make(7)
F13 = field_make(13)

A3 = RatFunc.t(F3)
B3 = parse_ratfunc(F3, "t+1")  # delta(A3, B3) = {t+1, inf}


def test_delta_examples():
    d = delta(A3, B3)
    assert {str(p) for p in d.places} == {"t+1", "inf"}
    assert delta(RatFunc.one(F3), RatFunc.one(F3)).is_empty
    # a pair (eps P, eps Q) built to ramify exactly at P and infinity
    wp = witness_pair(Place.finite(Poly.t(F3)), F3.elem(2), Random(1))
    assert {str(p) for p in wp.ramified.places} == {"t", "inf"}
    with pytest.raises(ValueError):
        delta(RatFunc.zero(F3), B3)


def test_delta_even_and_product():
    for field in (F3, F5, F7):
        rng = Random(f"even:{field.q}")
        for _ in range(500):
            a = random_ratfunc(field, rng, 3)
            b = random_ratfunc(field, rng, 3)
            assert len(delta(a, b)) % 2 == 0
            assert hilbert_product(a, b).product == 1


def test_delta_inside_odd_support():
    for field in (F3, F5):
        rng = Random(f"inside:{field.q}")
        checked = 0
        while checked < 50:
            a = random_ratfunc(field, rng, 3)
            b = random_ratfunc(field, rng, 3)
            d = delta(a, b)
            assert d.places <= (odd_support(a) | odd_support(b))
            # symbols are 1 at joint-support places of even valuation
            even_places = [
                pl for pl in (set(support(a)) | set(support(b)))
                if valuation(a, pl) % 2 == 0 and valuation(b, pl) % 2 == 0
            ]
            for pl in even_places[:2]:
                checked += 1
                assert local_symbol(a, b, pl).sign == 1


def test_delta_square_scaling_invariance():
    for field in (F3, F5):
        rng = Random(f"scaling:{field.q}")
        for _ in range(40):
            a = random_ratfunc(field, rng, 2)
            b = random_ratfunc(field, rng, 2)
            s = random_ratfunc(field, rng, 2)
            u = random_ratfunc(field, rng, 2)
            assert delta(a * s * s, b * u * u).places == delta(a, b).places


def test_s_local_examples():
    pl = Place.finite(parse_poly(F3, "t+1"))
    assert s_local_member(RatFunc.constant(F3, 2), A3, B3, pl)
    assert s_local_member(RatFunc.zero(F3), A3, B3, pl)  # x^2 + 1 irreducible mod 3
    assert not s_local_member(parse_ratfunc(F3, "1/t+1"), A3, B3, pl)
    # away from the ramification set everything is a trace
    off = Place.finite(parse_poly(F3, "t+2"))
    assert s_local_member(parse_ratfunc(F3, "1/t+2"), A3, B3, off)


def test_s_global_examples():
    assert s_global_member(RatFunc.constant(F3, -2), A3, B3)
    assert s_global_member(RatFunc.zero(F3), A3, B3)
    assert not s_global_member(parse_ratfunc(F3, "1/t+1"), A3, B3)


def test_t_member_examples():
    assert t_member(parse_ratfunc(F3, "1/t+2"), A3, B3)
    assert not t_member(RatFunc.t(F3), A3, B3)
    assert t_member(RatFunc.constant(F3, 2), A3, B3)
    assert t_member(RatFunc.zero(F3), A3, B3)
    with pytest.raises(EmptyRamificationError):
        t_member(RatFunc.one(F3), RatFunc.one(F3), RatFunc.one(F3))


def test_t_unit_examples():
    assert t_unit_member(RatFunc.constant(F3, 2), A3, B3)
    assert t_unit_member(parse_ratfunc(F3, "t+2/t"), A3, B3)
    assert not t_unit_member(parse_ratfunc(F3, "1/t+2"), A3, B3)
    assert not t_unit_member(RatFunc.zero(F3), A3, B3)


def test_t_unit_matches_integrality_trick():
    # x is a unit of T exactly when (x^2 + 1)/x lies in T
    rng = Random(31)
    one = RatFunc.one(F3)
    for _ in range(200):
        x = random_ratfunc(F3, rng, 3)
        trick = (x * x + one) / x
        assert t_unit_member(x, A3, B3) == t_member(trick, A3, B3)


def test_parity_class_examples():
    assert parity_class_member(RatFunc.one(F3), A3, B3)
    assert parity_class_member(parse_ratfunc(F3, "t^2"), A3, B3)
    assert not parity_class_member(B3, A3, B3)
    with pytest.raises(ValueError):
        parity_class_member(RatFunc.zero(F3), A3, B3)


def test_parity_class_absorbs_squares_times_units():
    rng = Random(47)
    found = 0
    while found < 60:
        k = random_ratfunc(F3, rng, 2)
        u = random_ratfunc(F3, rng, 2)
        if not t_unit_member(u, A3, B3):
            continue
        found += 1
        assert parity_class_member(k * k * u, A3, B3)


def test_i_c_examples():
    c = B3
    assert i_c_member(parse_ratfunc(F3, "t+1/t^2"), A3, B3, c)
    assert not i_c_member(RatFunc.one(F3), A3, B3, c)
    assert not i_c_member(parse_ratfunc(F3, "t^2"), A3, B3, RatFunc.one(F3))


def test_i_c_matches_set_algebra_form():
    # I_c = c * (squares * units of T) intersect (1 - squares * units of T):
    # equivalently even-parity of x/c and of 1 - x across the ramified places
    rng = Random(83)
    one = RatFunc.one(F3)
    for _ in range(300):
        x = random_ratfunc(F3, rng, 3)
        c = random_ratfunc(F3, rng, 2)
        via_parity = (
            x != one
            and parity_class_member(x / c, A3, B3)
            and parity_class_member(one - x, A3, B3)
        )
        assert i_c_member(x, A3, B3, c) == via_parity


def test_jacobson_examples():
    assert jacobson_member(RatFunc.zero(F3), A3, B3)
    assert jacobson_member(parse_ratfunc(F3, "t+1/t^2"), A3, B3)
    assert not jacobson_member(RatFunc.one(F3), A3, B3)


def test_r_tilde_examples():
    assert r_tilde_member(RatFunc.zero(F3), A3, B3)
    assert r_tilde_member(RatFunc.t(F3), A3, B3)
    assert not r_tilde_member(parse_ratfunc(F3, "t^2/t+1"), A3, B3)


def test_r_tilde_matches_jacobson_dual():
    for field in (F3, F5, F7):
        eps = smallest_nonsquare(field)
        rng = Random(f"dual:{field.q}")
        primes = monic_irreducibles(field, 1) + monic_irreducibles(field, 2)
        pairs = [witness_pair(Place.finite(p, trusted=True), eps, rng) for p in primes[:3]]
        for _ in range(500):
            x = random_ratfunc(field, rng, 3, nonzero=False)
            for wp in pairs:
                dual = x.is_zero or not jacobson_member(x.inverse(), wp.a, wp.b)
                assert r_tilde_member(x, wp.a, wp.b) == dual


def test_s_plus_s_lands_in_t():
    rng = Random(53)
    found = 0
    while found < 50:
        s1 = random_ratfunc(F3, rng, 2, nonzero=False)
        s2 = random_ratfunc(F3, rng, 2, nonzero=False)
        if not (s_global_member(s1, A3, B3) and s_global_member(s2, A3, B3)):
            continue
        found += 1
        assert t_member(s1 + s2, A3, B3)


def test_u_set_examples():
    u3 = u_set(F3)
    assert u3.members == (0,)
    assert not u3.sumset_covers
    assert u_set(F5).members == (1, 4)
    u13 = u_set(F13)
    assert len(u13) == 6 and u13.sumset_covers
    with pytest.raises(ValueError):
        u_set(field_make(2))


def test_in_u_residue_matches_u_set():
    # at a degree-1 place the residue field is F_q itself
    prime = Poly.t(F13)
    expected = set(u_set(F13).members)
    got = {c for c in range(13) if in_u_residue(Poly.constant(F13, c), prime)}
    assert got == expected


def _decompose_pair():
    eps = smallest_nonsquare(F13)
    wp = witness_pair(Place.finite(Poly.t(F13)), eps, Random(3))
    return wp.a, wp.b


def test_decompose_trivial_cases():
    a, b = _decompose_pair()
    assert decompose_t_element(RatFunc.zero(F13), a, b) == (
        RatFunc.constant(F13, 2), RatFunc.constant(F13, -2))
    assert decompose_t_element(RatFunc.constant(F13, 4), a, b) == (
        RatFunc.constant(F13, 2), RatFunc.constant(F13, 2))


def test_decompose_generic():
    a, b = _decompose_pair()
    rng = Random(61)
    done = 0
    while done < 15:
        x = random_ratfunc(F13, rng, 2, nonzero=False)
        if not t_member(x, a, b):
            continue
        done += 1
        out = decompose_t_element(x, a, b, rng=Random(rng.getrandbits(32)))
        assert out is not None
        s1, s2 = out
        assert s1 + s2 == x
        assert s_global_member(s1, a, b) and s_global_member(s2, a, b)


def test_decompose_preconditions():
    a, b = _decompose_pair()
    with pytest.raises(ValueError):
        decompose_t_element(RatFunc.t(F13), a, b)  # not in T (pole at infinity)
    # small residue fields are rejected
    a3, b3 = A3, B3
    with pytest.raises(ValueError):
        decompose_t_element(RatFunc.zero(F3), a3, b3)


def test_decompose_extension_base_field():
    f25 = field_make(5, 2)
    eps = smallest_nonsquare(f25)
    wp = witness_pair(Place.finite(Poly.t(f25)), eps, Random(8))
    rng = Random(71)
    done = 0
    while done < 6:
        x = random_ratfunc(f25, rng, 2, nonzero=False)
        if not t_member(x, wp.a, wp.b):
            continue
        done += 1
        out = decompose_t_element(x, wp.a, wp.b, rng=Random(rng.getrandbits(32)))
        assert out is not None
        s1, s2 = out
        assert s1 + s2 == x
        assert s_global_member(s1, wp.a, wp.b) and s_global_member(s2, wp.a, wp.b)
