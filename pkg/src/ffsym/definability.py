"""The formula layer: squares at infinity, the pair family D, witness
pairs ramified exactly at {P, inf}, and the membership checker for the
union of the polynomial ring with the valuation ring at infinity.

The driving identity is that polynomials-or-infinity-integral elements are
exactly the elements lying in R~(a, b) for every pair (a, b) of the
definable family D; non-members are falsified by a constructed witness
pair whose ramification set is {P, inf} for a prime P of the denominator.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from random import Random

from .dirichlet import find_prime_in_ap
from .gf import Field, FieldElem, smallest_nonsquare
from .places import Place, RatFunc, random_ratfunc, residue, valuation
from .polyring import Poly, powmod, random_irreducible
from .quaternion import RamificationSet, delta, r_tilde_member

DEFAULT_WITNESS_DEGREE_SLACK = 6


def _require_odd(field: Field) -> None:
    if field.q % 2 == 0:
        raise ValueError("quadratic definability layer requires odd q")


def _check_epsilon(field: Field, epsilon: FieldElem | None) -> FieldElem:
    if epsilon is None:
        return smallest_nonsquare(field)
    epsilon = field.elem(epsilon)
    if epsilon.code == 0 or field.is_square_code(epsilon.code):
        raise ValueError("epsilon must be a nonsquare constant")
    return epsilon


def phi_inf(c: RatFunc) -> bool:
    """True iff c is a square in the completion at infinity: the
    leading-coefficient ratio is a square and v_inf(c) is even."""
    if c.is_zero:
        raise ValueError("square class of zero is undefined")
    _require_odd(c.field)
    if valuation(c, Place.infinite(c.field)) % 2:
        return False
    return c.field.is_square_code(c.lead_ratio_code())


class InfSquareClass(enum.Enum):
    """Square classes of the completion at infinity: squares, and the three
    nontrivial classes (1/t), h, h/t for a fixed nonsquare constant h."""

    SQUARE = "sq"
    INV_T_TIMES_SQUARE = "sq/t"
    NONSQUARE_TIMES_SQUARE = "h*sq"
    NONSQUARE_INV_T_TIMES_SQUARE = "h*sq/t"


def inf_square_class(c: RatFunc) -> InfSquareClass:
    if c.is_zero:
        raise ValueError("square class of zero is undefined")
    _require_odd(c.field)
    odd_val = valuation(c, Place.infinite(c.field)) % 2 == 1
    lead_square = c.field.is_square_code(c.lead_ratio_code())
    if lead_square:
        return InfSquareClass.INV_T_TIMES_SQUARE if odd_val else InfSquareClass.SQUARE
    return (
        InfSquareClass.NONSQUARE_INV_T_TIMES_SQUARE
        if odd_val
        else InfSquareClass.NONSQUARE_TIMES_SQUARE
    )


def _deg_parity(x: RatFunc) -> int:
    # parity of -v_inf(x), the degree notion available on all of K
    return (-valuation(x, Place.infinite(x.field))) % 2


def gamma_check(a: RatFunc, b: RatFunc, epsilon: FieldElem | None = None) -> bool:
    """Decide membership of (a, b) in the pair family D.

    Branch one: a/epsilon is a square at infinity and the degree parities
    of a/epsilon and b differ; branch two swaps the roles.  The scalar
    witness in front of the second coordinate ranges over nonzero
    constants, so only the parity of that coordinate matters.
    """
    if a.is_zero or b.is_zero:
        raise ValueError("pair family membership needs nonzero coordinates")
    field = a.field
    _require_odd(field)
    epsilon = _check_epsilon(field, epsilon)
    eps_rf = RatFunc.constant(field, epsilon)

    def branch(first: RatFunc, second: RatFunc) -> bool:
        c = first / eps_rf
        return phi_inf(c) and _deg_parity(c) != _deg_parity(second)

    return branch(a, b) or branch(b, a)


@dataclass(frozen=True)
class WitnessPair:
    """A pair (epsilon*P, epsilon*Q) ramified exactly at {P, inf}, with
    deg Q of opposite parity to deg P."""

    a: RatFunc
    b: RatFunc
    place: Place
    companion: Place
    epsilon: FieldElem

    @property
    def ramified(self) -> RamificationSet:
        return delta(self.a, self.b)


def _nonsquare_residue(prime: Poly, rng: Random) -> Poly:
    field = prime.field
    d = len(prime.coeffs) - 1
    exp = (field.q ** d - 1) // 2
    neg_one = (field.neg_one_code,)
    while True:
        r = Poly(field, [rng.randrange(field.q) for _ in range(d)])
        if r.is_zero:
            continue
        if powmod(r, exp, prime).coeffs == neg_one:
            return r


def witness_pair(
    place: Place,
    epsilon: FieldElem | None = None,
    rng: Random | None = None,
    degree_cap: int | None = None,
) -> WitnessPair:
    """Construct (epsilon*P, epsilon*Q) with ramification exactly {P, inf}.

    For odd deg P the companion Q is an even-degree monic prime congruent
    to the square residue 1 mod P; for even deg P it is an odd-degree monic
    prime congruent to a sampled nonsquare residue.  The ramification set
    and the pair-family membership are verified before returning.
    """
    if place.is_infinite:
        raise ValueError("witness pairs are indexed by finite places")
    prime = place.prime
    field = prime.field
    _require_odd(field)
    epsilon = _check_epsilon(field, epsilon)
    rng = rng if rng is not None else Random(0xA11CE)
    deg_p = len(prime.coeffs) - 1
    cap = degree_cap if degree_cap is not None else deg_p + DEFAULT_WITNESS_DEGREE_SLACK

    if deg_p % 2 == 1:
        residues = [Poly.one(field)]
        start_parity = 0  # even companion degrees
    else:
        residues = [_nonsquare_residue(prime, rng) for _ in range(4)]
        start_parity = 1

    inf = Place.infinite(field)
    a = RatFunc.from_poly(prime.scale(epsilon.code))
    for target in residues:
        for k in range(1, cap + 1):
            if k % 2 != start_parity:
                continue
            q_prime = find_prime_in_ap(prime, target, k, rng)
            if q_prime is None:
                continue
            b = RatFunc.from_poly(q_prime.scale(epsilon.code))
            ram = delta(a, b)
            if ram.places == frozenset({place, inf}) and gamma_check(a, b, epsilon):
                return WitnessPair(a, b, place, Place.finite(q_prime, trusted=True), epsilon)
    raise RuntimeError(
        f"no companion prime found below degree {cap} for {place} "
        "(raise the degree cap)"
    )


# --- membership in the polynomial ring and its infinity companion ---


def member_A_union_Ainf_semantic(x: RatFunc) -> bool:
    """Direct test: x is a polynomial (constant denominator) or is
    integral at infinity; zero belongs."""
    if x.is_zero:
        return True
    if x.den.is_constant:
        return True
    return valuation(x, Place.infinite(x.field)) >= 0


def is_constant_semantic(x: RatFunc) -> bool:
    """True iff x reduces to a constant (the field is existentially
    definable in K; this is the semantic stand-in for that test)."""
    return x.num.is_constant and x.den.is_constant


@dataclass(frozen=True)
class PairEvidence:
    a: RatFunc
    b: RatFunc
    source: str  # "witness" or "random"
    accepted: bool  # r_tilde membership of the tested element


@dataclass(frozen=True)
class MembershipReport:
    member: bool        # the semantic verdict
    agrees: bool        # theorem-side evidence matches the semantic verdict
    evidence: tuple[PairEvidence, ...]

    @property
    def passed(self) -> bool:
        return self.agrees


def sample_d_pairs(
    field: Field,
    epsilon: FieldElem,
    count: int,
    rng: Random,
    max_prime_deg: int = 2,
    max_deg: int = 2,
) -> list[tuple[RatFunc, RatFunc, str]]:
    """Pairs from the family D: constructed witness pairs mixed with
    rejection-sampled random pairs accepted by the membership formula."""
    pairs: list[tuple[RatFunc, RatFunc, str]] = []
    while len(pairs) < count:
        if rng.random() < 0.5:
            prime = random_irreducible(field, rng, rng.randint(1, max_prime_deg))
            wp = witness_pair(Place.finite(prime, trusted=True), epsilon, rng)
            pairs.append((wp.a, wp.b, "witness"))
        else:
            for _ in range(200):
                a = random_ratfunc(field, rng, max_deg)
                b = random_ratfunc(field, rng, max_deg)
                if a.is_zero or b.is_zero:
                    continue
                if gamma_check(a, b, epsilon):
                    pairs.append((a, b, "random"))
                    break
    return pairs


def member_A_union_Ainf_theorem(
    x: RatFunc,
    epsilon: FieldElem | None = None,
    sample_size: int = 20,
    rng: Random | None = None,
) -> MembershipReport:
    """Check x against the intersection of R~(a, b) over sampled pairs of D.

    Members must be accepted by every sampled pair; a non-member is
    falsified by one constructed witness pair at a denominator prime.
    """
    field = x.field
    _require_odd(field)
    epsilon = _check_epsilon(field, epsilon)
    rng = rng if rng is not None else Random(0x7E03)
    semantic = member_A_union_Ainf_semantic(x)
    if semantic:
        evidence = []
        for a, b, source in sample_d_pairs(field, epsilon, sample_size, rng):
            evidence.append(PairEvidence(a, b, source, r_tilde_member(x, a, b)))
        agrees = all(ev.accepted for ev in evidence)
        return MembershipReport(True, agrees, tuple(evidence))
    # pick a denominator prime with negative valuation; one witness suffices
    from .polyring import factor

    bad_prime = None
    for prime, _ in factor(x.den):
        bad_prime = prime
        break
    wp = witness_pair(Place.finite(bad_prime, trusted=True), epsilon, rng)
    accepted = r_tilde_member(x, wp.a, wp.b)
    ev = PairEvidence(wp.a, wp.b, "witness", accepted)
    return MembershipReport(False, not accepted, (ev,))


@dataclass(frozen=True)
class PolynomialMembershipReport:
    member: bool
    agrees: bool
    union_report: MembershipReport
    degree_clause: bool

    @property
    def passed(self) -> bool:
        return self.agrees


def member_A(
    x: RatFunc,
    epsilon: FieldElem | None = None,
    sample_size: int = 20,
    rng: Random | None = None,
) -> PolynomialMembershipReport:
    """Membership of x in the polynomial ring: the union membership plus
    the clause "negative valuation at infinity, or constant"."""
    union_report = member_A_union_Ainf_theorem(x, epsilon, sample_size, rng)
    degree_clause = is_constant_semantic(x) or (
        not x.is_zero and valuation(x, Place.infinite(x.field)) < 0
    )
    member = union_report.member and degree_clause
    expected = x.is_zero or x.den.is_constant
    agrees = union_report.agrees and member == expected
    return PolynomialMembershipReport(member, agrees, union_report, degree_clause)
