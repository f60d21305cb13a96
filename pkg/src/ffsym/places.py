"""Places of K = F_q(t): valuations, residue maps, local square tests.

A place is a monic irreducible polynomial P (uniformizer P) or the
distinguished infinite place with uniformizer 1/t and valuation
v_inf = deg(den) - deg(num).  Completions are never materialized: every
local question used downstream reduces to a valuation parity plus a square
test in the residue field.
"""

from __future__ import annotations

from random import Random
from typing import Iterable, Union

from .gf import Field, FieldElem
from .polyring import Poly, factor, format_poly, gcd, invmod, is_irreducible, parse_poly, powmod, random_poly


class Place:
    """A finite place (monic irreducible P) or the infinite place."""

    __slots__ = ("field", "prime")

    def __init__(self, field: Field, prime: Poly | None):
        self.field = field
        self.prime = prime  # None encodes the infinite place

    @classmethod
    def finite(cls, prime: Poly, *, trusted: bool = False) -> "Place":
        if not trusted:
            if not prime.is_monic or prime.is_constant:
                raise ValueError("finite places are monic of positive degree")
            if not is_irreducible(prime):
                raise ValueError("finite places must be irreducible")
        return cls(prime.field, prime)

    @classmethod
    def infinite(cls, field: Field) -> "Place":
        return cls(field, None)

    @property
    def is_infinite(self) -> bool:
        return self.prime is None

    @property
    def residue_degree(self) -> int:
        """h = deg P at finite places, 1 at infinity."""
        return 1 if self.prime is None else len(self.prime.coeffs) - 1

    def sort_key(self) -> tuple:
        if self.prime is None:
            return (1, ())
        return (0, self.prime.sort_key())

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Place)
            and self.field == other.field
            and self.prime == other.prime
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.e, self.prime.coeffs if self.prime else None))

    def __repr__(self) -> str:
        return "inf" if self.prime is None else format_poly(self.prime)


def parse_place(field: Field, text: str) -> Place:
    text = text.strip()
    if text == "inf":
        return Place.infinite(field)
    return Place.finite(parse_poly(field, text))


class RatFunc:
    """Reduced fraction num/den with monic denominator; zero is 0/1."""

    __slots__ = ("field", "num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, *, trusted: bool = False):
        field = num.field
        if den is None:
            den = Poly.one(field)
        if trusted:
            self.field, self.num, self.den = field, num, den
            return
        num._check(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            self.field, self.num, self.den = field, Poly.zero(field), Poly.one(field)
            return
        g = gcd(num, den)
        if g.degree != 0:
            num, den = num // g, den // g
        if not den.is_monic:
            c = field.inv(den.lead_code)
            num, den = num.scale(c), den.scale(c)
        self.field, self.num, self.den = field, num, den

    # --- constructors ---

    @classmethod
    def zero(cls, field: Field) -> "RatFunc":
        return cls(Poly.zero(field), Poly.one(field), trusted=True)

    @classmethod
    def one(cls, field: Field) -> "RatFunc":
        return cls(Poly.one(field), Poly.one(field), trusted=True)

    @classmethod
    def constant(cls, field: Field, value: Union[int, FieldElem]) -> "RatFunc":
        return cls(Poly.constant(field, value), Poly.one(field), trusted=True)

    @classmethod
    def from_poly(cls, f: Poly) -> "RatFunc":
        return cls(f, Poly.one(f.field), trusted=True)

    @classmethod
    def t(cls, field: Field) -> "RatFunc":
        return cls(Poly.t(field), Poly.one(field), trusted=True)

    # --- queries ---

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_constant(self) -> bool:
        return self.num.is_constant and self.den.is_constant

    def lead_ratio_code(self) -> int:
        """Leading coefficient of num over leading coefficient of den."""
        if self.is_zero:
            raise ValueError("zero has no leading-coefficient ratio")
        return self.field.div(self.num.lead_code, self.den.lead_code)

    def leading_ratio(self) -> FieldElem:
        return FieldElem(self.field, self.lead_ratio_code())

    # --- arithmetic ---

    def _check(self, other: "RatFunc") -> None:
        if self.field != other.field:
            raise ValueError("mixed field descriptors")

    def __add__(self, other: "RatFunc") -> "RatFunc":
        self._check(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        self._check(other)
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, trusted=True)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        self._check(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def inverse(self) -> "RatFunc":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    def scale(self, value: Union[int, FieldElem]) -> "RatFunc":
        return RatFunc(self.num.scale(self.field.elem(value).code), self.den, trusted=True)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RatFunc)
            and self.field == other.field
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.e, self.num.coeffs, self.den.coeffs))

    def __repr__(self) -> str:
        if self.den.coeffs == (self.field.one_code,):
            return format_poly(self.num)
        return f"{format_poly(self.num)}/{format_poly(self.den)}"


def parse_ratfunc(field: Field, text: str) -> RatFunc:
    """Parse "num/den" (or "num" alone) in the polynomial grammar."""
    if "/" in text:
        num_text, den_text = text.split("/", 1)
        return RatFunc(parse_poly(field, num_text), parse_poly(field, den_text))
    return RatFunc(parse_poly(field, text))


# --- valuations and residues ---


def _prime_multiplicity(f: Poly, prime: Poly) -> int:
    count = 0
    while True:
        q, r = divmod(f, prime)
        if not r.is_zero:
            return count
        count += 1
        f = q


def valuation(x: RatFunc, place: Place) -> int:
    """v_P(x); at infinity deg(den) - deg(num).  Undefined for x = 0."""
    if x.is_zero:
        raise ValueError("valuation of zero is undefined")
    if place.is_infinite:
        return len(x.den.coeffs) - len(x.num.coeffs)
    p = place.prime
    return _prime_multiplicity(x.num, p) - _prime_multiplicity(x.den, p)


def val_at_least(x: RatFunc, place: Place, bound: int) -> bool:
    """Membership-style comparison treating 0 as having valuation +inf."""
    if x.is_zero:
        return True
    return valuation(x, place) >= bound


def residue(x: RatFunc, place: Place) -> Poly:
    """red_P(x) as a polynomial of degree < deg P; needs v_P(x) >= 0.

    The fraction is reduced, so P divides the denominator exactly when the
    valuation is negative.
    """
    if place.is_infinite:
        raise ValueError("use residue_inf at the infinite place")
    if x.is_zero:
        return Poly.zero(x.field)
    p = place.prime
    den_red = x.den % p
    if den_red.is_zero:
        raise ValueError("negative valuation: residue undefined")
    num_red = x.num % p
    if num_red.is_zero:
        return Poly.zero(x.field)
    return (num_red * invmod(den_red, p)) % p


def _strip_prime(f: Poly, prime: Poly) -> tuple[Poly, int]:
    mult = 0
    while True:
        q, r = divmod(f, prime)
        if not r.is_zero:
            return f, mult
        f = q
        mult += 1


def residue_inf(x: RatFunc) -> FieldElem:
    """red_inf: 0 when v_inf > 0, leading-coefficient ratio when v_inf = 0."""
    if x.is_zero:
        return x.field.zero
    v = valuation(x, Place.infinite(x.field))
    if v < 0:
        raise ValueError("negative valuation at infinity: residue undefined")
    if v > 0:
        return x.field.zero
    return x.leading_ratio()


def unit_residue(x: RatFunc, place: Place) -> tuple[int, Poly | int]:
    """(v, residue of the unit part x / pi^v) with pi = P or 1/t.

    The residue is a Poly mod P at finite places and a field code at
    infinity (where the unit-part residue is just the leading ratio).
    """
    if x.is_zero:
        raise ValueError("zero has no unit part")
    if place.is_infinite:
        v = len(x.den.coeffs) - len(x.num.coeffs)
        return v, x.lead_ratio_code()
    p = place.prime
    num, vn = _strip_prime(x.num, p)
    den, vd = _strip_prime(x.den, p)
    r = ((num % p) * invmod(den % p, p)) % p
    return vn - vd, r


def support(x: RatFunc, *, include_infinite: bool = True) -> frozenset[Place]:
    """All places with nonzero valuation."""
    if x.is_zero:
        raise ValueError("support of zero is undefined")
    places = set()
    for f in (x.num, x.den):
        if not f.is_constant:
            for prime, _ in factor(f):
                places.add(Place.finite(prime, trusted=True))
    if include_infinite and len(x.num.coeffs) != len(x.den.coeffs):
        places.add(Place.infinite(x.field))
    return frozenset(places)


def odd_support(x: RatFunc) -> frozenset[Place]:
    """Places where v_P(x) is odd, including infinity."""
    if x.is_zero:
        raise ValueError("odd support of zero is undefined")
    places = set()
    mults: dict[Poly, int] = {}
    for f, sign in ((x.num, 1), (x.den, -1)):
        if not f.is_constant:
            for prime, mult in factor(f):
                mults[prime] = mults.get(prime, 0) + sign * mult
    for prime, mult in mults.items():
        if mult % 2:
            places.add(Place.finite(prime, trusted=True))
    if (len(x.den.coeffs) - len(x.num.coeffs)) % 2:
        places.add(Place.infinite(x.field))
    return frozenset(places)


def sorted_places(places: Iterable[Place]) -> list[Place]:
    return sorted(places, key=Place.sort_key)


def is_square_local(x: RatFunc, place: Place) -> bool:
    """True iff x is a square in the completion at the place (odd q only):
    even valuation and the unit-part residue a square in the residue field."""
    if x.is_zero:
        raise ValueError("local square test is undefined for zero")
    field = x.field
    if field.q % 2 == 0:
        raise ValueError("local square test requires odd q")
    v, r = unit_residue(x, place)
    if v % 2:
        return False
    if place.is_infinite:
        return field.is_square_code(r)
    p = place.prime
    d = len(p.coeffs) - 1
    s = powmod(r, (field.q ** d - 1) // 2, p)
    return s.coeffs == (field.one_code,)


def random_ratfunc(
    field: Field,
    rng: Random,
    max_deg: int,
    *,
    nonzero: bool = True,
) -> RatFunc:
    num = random_poly(field, rng, max_deg, nonzero=nonzero)
    den = random_poly(field, rng, max_deg, nonzero=True)
    return RatFunc(num, den)
