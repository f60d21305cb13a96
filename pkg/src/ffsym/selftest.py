"""The acceptance suite: every exit criterion as a runnable check.

Each criterion returns a CriterionResult with a pass flag and a one-line
detail; the CLI `selftest` subcommand and the pytest acceptance module
both drive this registry.  All randomness flows from the caller's seed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from random import Random

from .definability import (
    member_A_union_Ainf_semantic,
    member_A_union_Ainf_theorem,
    witness_pair,
)
from .dirichlet import pi_q, uniformity_report
from .gf import field_make, smallest_nonsquare
from .places import Place, RatFunc, parse_ratfunc, random_ratfunc
from .polyring import Poly, enumerate_monic, is_irreducible, monic_irreducibles, parse_poly
from .quaternion import (
    decompose_t_element,
    delta,
    jacobson_member,
    r_tilde_member,
    s_global_member,
    t_member,
    u_set,
)
from .symbols import hilbert_product, local_symbol, reciprocity_sweep, residue_symbol


@dataclass(frozen=True)
class CriterionResult:
    cid: int
    name: str
    passed: bool
    detail: str
    elapsed: float

    @property
    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} criterion {self.cid:2d} [{self.name}] {self.detail} ({self.elapsed:.1f}s)"


def _rng(seed: int, cid: int, tag: str = "") -> Random:
    return Random(f"{seed}:criterion{cid}:{tag}")


def criterion_1(seed: int) -> CriterionResult:
    """Exhaustive reciprocity over every coprime ordered pair."""
    start = time.monotonic()
    configs = [(3, 1, 3), (5, 1, 3), (7, 1, 2), (3, 2, 2)]
    bad = 0
    checked = 0
    for p, e, max_deg in configs:
        result = reciprocity_sweep(field_make(p, e), max_deg)
        bad += len(result.violations)
        checked += result.pairs_coprime
    elapsed = time.monotonic() - start
    passed = bad == 0 and elapsed < 60.0
    return CriterionResult(
        1, "general reciprocity", passed,
        f"{checked} coprime ordered pairs, {bad} violations", elapsed,
    )


def criterion_2(seed: int) -> CriterionResult:
    """Product of local symbols over all places equals 1."""
    start = time.monotonic()
    bad = 0
    for q in (3, 5, 7, 13):
        field = field_make(q)
        rng = _rng(seed, 2, str(q))
        for _ in range(1000):
            alpha = random_ratfunc(field, rng, 5)
            beta = random_ratfunc(field, rng, 5)
            if hilbert_product(alpha, beta).product != 1:
                bad += 1
    elapsed = time.monotonic() - start
    passed = bad == 0 and elapsed < 60.0
    return CriterionResult(
        2, "product formula", passed, f"4000 random pairs, {bad} violations", elapsed
    )


def criterion_3(seed: int) -> CriterionResult:
    """(g, h/t) at infinity is -1 for nonsquare g, any nonzero h."""
    start = time.monotonic()
    bad = 0
    total = 0
    for q in (3, 5, 7, 11, 13):
        field = field_make(q)
        inf = Place.infinite(field)
        t = Poly.t(field)
        for g in range(1, q):
            if field.is_square_code(g):
                continue
            for h in range(1, q):
                total += 1
                sym = local_symbol(
                    RatFunc.constant(field, g),
                    RatFunc(Poly.constant(field, h), t),
                    inf,
                )
                if sym.sign != -1:
                    bad += 1
    return CriterionResult(
        3, "ramification at infinity", bad == 0,
        f"{total} (nonsquare, unit) pairs, {bad} violations", time.monotonic() - start,
    )


def criterion_4(seed: int) -> CriterionResult:
    """Witness pairs ramify exactly at {P, inf} and land in the family D."""
    start = time.monotonic()
    bad = 0
    total = 0
    for q, max_deg in ((3, 4), (5, 3)):
        field = field_make(q)
        eps = smallest_nonsquare(field)
        inf = Place.infinite(field)
        for deg in range(1, max_deg + 1):
            for prime in monic_irreducibles(field, deg):
                total += 1
                place = Place.finite(prime, trusted=True)
                try:
                    wp = witness_pair(place, eps, _rng(seed, 4, str(prime)))
                except RuntimeError:
                    bad += 1
                    continue
                if wp.ramified.places != frozenset({place, inf}):
                    bad += 1
    elapsed = time.monotonic() - start
    passed = bad == 0 and elapsed < 120.0
    return CriterionResult(
        4, "witness construction", passed, f"{total} primes, {bad} failures", elapsed
    )


def criterion_5(seed: int) -> CriterionResult:
    """Sumsets of the irreducible-trace sets cover large fields, not F_3."""
    start = time.monotonic()
    ok = True
    details = []
    for q, (p, e) in ((13, (13, 1)), (17, (17, 1)), (19, (19, 1)), (23, (23, 1)),
                      (25, (5, 2)), (27, (3, 3)), (29, (29, 1))):
        us = u_set(field_make(p, e))
        details.append(f"q={q}:{'covers' if us.sumset_covers else 'FAILS'}")
        ok = ok and us.sumset_covers
    u3 = u_set(field_make(3))
    f3 = field_make(3)
    sumset = {f3.add(x, y) for x in u3.members for y in u3.members}
    small_ok = not u3.sumset_covers and sumset == {0}
    ok = ok and small_ok
    return CriterionResult(
        5, "irreducible-trace sumsets", ok,
        "; ".join(details) + f"; q=3 sumset={sorted(sumset)}", time.monotonic() - start,
    )


def criterion_6(seed: int) -> CriterionResult:
    """Residue symbol vs brute-force square enumeration in each residue field."""
    start = time.monotonic()
    bad = 0
    total = 0
    for q in (3, 5, 7):
        field = field_make(q)
        for deg in (1, 2):
            for prime in monic_irreducibles(field, deg):
                residues = [Poly(field, tail) for tail in _tails(q, deg)]
                squares = {(r * r % prime).coeffs for r in residues}
                for r in residues:
                    total += 1
                    sym = residue_symbol(r, prime)
                    is_sq = r.coeffs in squares  # includes zero
                    if (sym.sign in (0, 1)) != is_sq:
                        bad += 1
                    if sym.is_zero != r.is_zero:
                        bad += 1
    return CriterionResult(
        6, "symbol oracle equivalence", bad == 0,
        f"{total} residues against enumeration, {bad} disagreements",
        time.monotonic() - start,
    )


def _tails(q: int, width: int):
    import itertools

    return itertools.product(range(q), repeat=width)


def criterion_7(seed: int) -> CriterionResult:
    """The ramification set always has even size."""
    start = time.monotonic()
    bad = 0
    for q in (3, 5, 7):
        field = field_make(q)
        rng = _rng(seed, 7, str(q))
        for _ in range(500):
            a = random_ratfunc(field, rng, 3)
            b = random_ratfunc(field, rng, 3)
            if len(delta(a, b)) % 2:
                bad += 1
    return CriterionResult(
        7, "even ramification", bad == 0,
        f"1500 random pairs, {bad} odd-sized sets", time.monotonic() - start,
    )


def criterion_8(seed: int) -> CriterionResult:
    """Union-of-valuation-rings membership equals the Jacobson dual form."""
    start = time.monotonic()
    bad = 0
    total = 0
    for q in (3, 5, 7):
        field = field_make(q)
        eps = smallest_nonsquare(field)
        rng = _rng(seed, 8, str(q))
        primes = []
        for deg in (1, 2, 3):
            primes.extend(monic_irreducibles(field, deg))
        pairs = [
            witness_pair(Place.finite(pr, trusted=True), eps, rng) for pr in primes[:10]
        ]
        for _ in range(500):
            x = random_ratfunc(field, rng, 3, nonzero=False)
            for wp in pairs:
                total += 1
                direct = r_tilde_member(x, wp.a, wp.b)
                dual = x.is_zero or not jacobson_member(x.inverse(), wp.a, wp.b)
                if direct != dual:
                    bad += 1
    return CriterionResult(
        8, "dual characterization", bad == 0,
        f"{total} membership checks, {bad} disagreements", time.monotonic() - start,
    )


def criterion_9(seed: int) -> CriterionResult:
    """Main membership identity, both directions, against sampled pairs."""
    start = time.monotonic()
    bad = 0
    members = 0
    non_members = 0
    for q in (3, 5):
        field = field_make(q)
        eps = smallest_nonsquare(field)
        rng = _rng(seed, 9, str(q))
        want_members, want_non = 100, 100
        while want_members or want_non:
            x = random_ratfunc(field, rng, 4, nonzero=False)
            semantic = member_A_union_Ainf_semantic(x)
            if semantic and want_members:
                want_members -= 1
                members += 1
            elif not semantic and want_non:
                want_non -= 1
                non_members += 1
            else:
                continue
            report = member_A_union_Ainf_theorem(x, eps, 20, rng)
            if not report.agrees or report.member != semantic:
                bad += 1
    elapsed = time.monotonic() - start
    passed = bad == 0 and elapsed < 120.0
    return CriterionResult(
        9, "main membership identity", passed,
        f"{members} members + {non_members} non-members, {bad} disagreements", elapsed,
    )


def criterion_10(seed: int) -> CriterionResult:
    """Prime counts: divisor-sum formula vs enumeration, plus the tail bound."""
    start = time.monotonic()
    bad = []
    for q in (3, 5):
        field = field_make(q)
        for k in range(1, 7):
            formula = pi_q(q, k)
            enumerated = sum(1 for f in enumerate_monic(field, k) if is_irreducible(f))
            if formula != enumerated:
                bad.append(f"count q={q} k={k}")
    for q in (3, 5, 7, 9, 13):
        for k in range(1, 7):
            if abs(pi_q(q, k) - q ** k / k) > 2 * q ** (k / 2) / k:
                bad.append(f"tail q={q} k={k}")
    return CriterionResult(
        10, "prime counts", not bad,
        "formula = enumeration and tail bound hold" if not bad else "; ".join(bad),
        time.monotonic() - start,
    )


def criterion_11(seed: int) -> CriterionResult:
    """Equidistribution over residue classes at q = 13, k = 3, modulus t."""
    start = time.monotonic()
    field = field_make(13)
    report = uniformity_report(parse_poly(field, "t"), 3)
    elapsed = time.monotonic() - start
    passed = report.max_deviation <= 0.5 and elapsed < 10.0
    return CriterionResult(
        11, "progression uniformity", passed,
        f"max relative deviation {report.max_deviation:.4f} (bound 0.5)", elapsed,
    )


def criterion_12(seed: int) -> CriterionResult:
    """Soundness of trace-sum decompositions; success rate is reported."""
    start = time.monotonic()
    field = field_make(13)
    eps = smallest_nonsquare(field)
    rng = _rng(seed, 12)
    wp = witness_pair(Place.finite(parse_poly(field, "t")), eps, rng)
    unsound = 0
    succeeded = 0
    sampled = 0
    while sampled < 50:
        x = random_ratfunc(field, rng, 3, nonzero=False)
        if not t_member(x, wp.a, wp.b):
            continue
        sampled += 1
        out = decompose_t_element(x, wp.a, wp.b, bound=3, rng=rng)
        if out is None:
            continue
        s1, s2 = out
        if s1 + s2 != x or not (s_global_member(s1, wp.a, wp.b) and s_global_member(s2, wp.a, wp.b)):
            unsound += 1
        else:
            succeeded += 1
    return CriterionResult(
        12, "trace-sum decomposition", unsound == 0,
        f"50 sampled elements, {succeeded} decomposed, {unsound} unsound "
        f"(success rate {succeeded / 50:.0%})",
        time.monotonic() - start,
    )


CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
    criterion_12,
]


def run_all(seed: int = 42, only: list[int] | None = None) -> list[CriterionResult]:
    wanted = set(only) if only else None
    return [
        fn(seed)
        for cid, fn in enumerate(CRITERIA, start=1)
        if wanted is None or cid in wanted
    ]
