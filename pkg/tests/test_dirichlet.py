import itertools
from random import Random

import pytest

from ffsym.dirichlet import (
    APQuery,
    euler_phi,
    find_prime_in_ap,
    pi_ap,
    pi_q,
    uniformity_report,
    unit_residues,
)
from ffsym.gf import field_make
from ffsym.polyring import (
    Poly,
    enumerate_monic,
    factor,
    gcd,
    is_irreducible,
    monic_irreducibles,
    parse_poly,
    random_poly,
)

F3 = field_make(3)
F5 = field_make(5)
F13 = field_make(13)


def test_euler_phi_examples():
    assert euler_phi(parse_poly(F3, "t^2")) == 6
    assert euler_phi(parse_poly(F3, "t^2+1")) == 8  # prime case q^deg - 1
    assert euler_phi(parse_poly(F3, "t^2+t")) == 4
    assert euler_phi(Poly.constant(F3, 2)) == 1
    with pytest.raises(ValueError):
        euler_phi(Poly.zero(F3))


def test_euler_phi_matches_unit_enumeration():
    rng = Random(3)
    for field in (F3, F5, field_make(3, 2)):
        for _ in range(15):
            f = random_poly(field, rng, 4, nonzero=True)
            if f.is_constant or field.q ** (len(f.coeffs) - 1) > 10_000:
                continue
            direct = len(unit_residues(f))
            assert euler_phi(f) == direct


def test_pi_q_examples():
    for q in (3, 5, 7, 9, 13):
        assert pi_q(q, 1) == q
    assert pi_q(3, 2) == 3
    assert pi_q(3, 4) == 18
    with pytest.raises(ValueError):
        pi_q(3, 0)


def test_pi_q_matches_enumeration_and_tail():
    for field in (F3, F5):
        for k in range(1, 7):
            count = sum(1 for f in enumerate_monic(field, k) if is_irreducible(f))
            assert pi_q(field.q, k) == count
    for q in (3, 5, 7, 9, 13):
        for k in range(1, 7):
            assert abs(pi_q(q, k) - q ** k / k) <= 2 * q ** (k / 2) / k


def test_pi_ap_examples():
    t = Poly.t(F3)
    assert pi_ap(APQuery(t, Poly.one(F3), 2)) == 1
    assert pi_ap(APQuery(t, Poly.constant(F3, 2), 2)) == 2
    with pytest.raises(ValueError):
        APQuery(t, Poly.zero(F3), 2)


def test_ap_class_sum_identity():
    # summing over unit classes misses exactly the degree-k primes dividing f
    for field in (F3, F5):
        for f_text in ("t", "t+1", "t^2"):
            f = parse_poly(field, f_text)
            divisor_primes = {p.coeffs for p, _ in factor(f)}
            for k in range(1, 5):
                total = sum(pi_ap(APQuery(f, c, k)) for c in unit_residues(f))
                missing = sum(
                    1 for p in monic_irreducibles(field, k) if p.coeffs in divisor_primes
                )
                assert total == pi_q(field.q, k) - missing


def test_find_prime_examples():
    assert find_prime_in_ap(Poly.t(F3), Poly.one(F3), 2) == parse_poly(F3, "t^2+1")
    assert find_prime_in_ap(parse_poly(F3, "t+1"), Poly.one(F3), 1) == parse_poly(F3, "t+2")
    assert find_prime_in_ap(parse_poly(F3, "t^2"), Poly.one(F3), 1) is None
    with pytest.raises(ValueError):
        find_prime_in_ap(Poly.t(F3), Poly.zero(F3), 2)


def test_find_prime_output_contract():
    rng = Random(23)
    for field in (F3, F5):
        for _ in range(40):
            f = random_poly(field, rng, 2, nonzero=True)
            c = random_poly(field, rng, 2, nonzero=True)
            if gcd(c, f).degree != 0:
                continue
            k = rng.randint(1, 4)
            out = find_prime_in_ap(f, c, k, rng)
            if out is None:
                continue
            assert out.is_monic and len(out.coeffs) - 1 == k
            assert is_irreducible(out)
            assert ((out - c) % f).is_zero


def test_dirichlet_small_degrees_f13():
    # a prime exists in every unit class mod a linear modulus for k = 3..6
    for f in monic_irreducibles(F13, 1):
        for c_code in range(1, 13):
            for k in range(3, 7):
                out = find_prime_in_ap(f, Poly.constant(F13, c_code), k)
                assert out is not None


def test_uniformity_examples():
    rep = uniformity_report(Poly.t(F3), 2)
    counts = {str(r.residue): r.count for r in rep.rows}
    assert counts == {"1": 1, "2": 2}
    assert rep.expected == pytest.approx(1.5)
    assert rep.pi_k == pi_q(3, 2) and rep.phi_f == 2

    rep13 = uniformity_report(Poly.t(F13), 3)
    assert rep13.pi_k == 728 and rep13.phi_f == 12
    assert rep13.expected == pytest.approx(728 / 12)
    assert rep13.max_deviation <= 0.5
    assert len(rep13.rows) == 12


def test_uniformity_jobs_deterministic():
    a = uniformity_report(Poly.t(F5), 3, jobs=1)
    b = uniformity_report(Poly.t(F5), 3, jobs=3)
    assert [(str(r.residue), r.count) for r in a.rows] == [
        (str(r.residue), r.count) for r in b.rows
    ]
