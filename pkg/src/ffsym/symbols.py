"""Power residue symbols, the general reciprocity law, local symbols at
every place of F_q(t), and the product formula over all places.

The quadratic local symbol at a place v with residue degree h is

    (alpha, beta)_v = ((-1)^{v(alpha) v(beta)}
                        red_v(alpha^{v(beta)} / beta^{v(alpha)}))^{(q^h - 1)/2}

and equals -1 exactly when the quaternion algebra H_{alpha,beta} is
ramified at v.  The n-th power residue symbol (alpha/P)_n is the constant
alpha^{(q^{deg P} - 1)/n} mod P, extended multiplicatively over the monic
prime factorization of the lower argument (its leading coefficient is
ignored by definition).
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .gf import Field, FieldElem
from .places import (
    Place,
    RatFunc,
    odd_support,
    residue,
    residue_inf,
    sorted_places,
    support,
    valuation,
)
from .polyring import Poly, enumerate_monic, factor, gcd, is_irreducible, monic_irreducibles, powmod


class SymbolValue:
    """A symbol value: an n-th root of unity in F_q^x, or the zero marker.

    Code 0 is the zero marker (the lower argument shared a prime with the
    upper one); any other code is a field element with value^n = 1.
    """

    __slots__ = ("field", "code")

    def __init__(self, field: Field, code: int):
        self.field = field
        self.code = code

    @classmethod
    def zero(cls, field: Field) -> "SymbolValue":
        return cls(field, 0)

    @classmethod
    def one(cls, field: Field) -> "SymbolValue":
        return cls(field, field.one_code)

    @property
    def is_zero(self) -> bool:
        return self.code == 0

    @property
    def value(self) -> FieldElem:
        return FieldElem(self.field, self.code)

    @property
    def sign(self) -> int:
        """The symbol as an integer in {-1, 0, 1} (quadratic case)."""
        if self.code == 0:
            return 0
        if self.code == self.field.one_code:
            return 1
        if self.code == self.field.neg_one_code:
            return -1
        raise ValueError("symbol value is not quadratic")

    def __mul__(self, other: "SymbolValue") -> "SymbolValue":
        if self.code == 0 or other.code == 0:
            return SymbolValue.zero(self.field)
        return SymbolValue(self.field, self.field.mul(self.code, other.code))

    def inverse(self) -> "SymbolValue":
        if self.code == 0:
            raise ZeroDivisionError("zero symbol has no inverse")
        return SymbolValue(self.field, self.field.inv(self.code))

    def __pow__(self, n: int) -> "SymbolValue":
        if self.code == 0:
            return SymbolValue.zero(self.field) if n > 0 else SymbolValue.one(self.field)
        if n < 0:
            return SymbolValue(self.field, self.field.pow_(self.field.inv(self.code), -n))
        return SymbolValue(self.field, self.field.pow_(self.code, n))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            mapped = {0: 0, 1: self.field.one_code, -1: self.field.neg_one_code}
            return other in mapped and self.code == mapped[other]
        return (
            isinstance(other, SymbolValue)
            and self.field == other.field
            and self.code == other.code
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.e, self.code))

    def __repr__(self) -> str:
        if self.code == 0:
            return "0"
        if self.code == self.field.one_code:
            return "1"
        if self.code == self.field.neg_one_code:
            return "-1"
        return self.field.element_repr(self.code)


def _require_root_order(field: Field, n: int) -> None:
    if n < 2:
        raise ValueError("symbol order n must be >= 2")
    if (field.q - 1) % n != 0:
        raise ValueError(f"n = {n} does not divide q - 1 = {field.q - 1}")


def residue_symbol(alpha: Poly, prime: Poly, n: int = 2) -> SymbolValue:
    """The n-th power residue symbol (alpha/P)_n.

    Zero when P | alpha, else the constant alpha^{(q^{deg P}-1)/n} mod P
    interpreted as an element of F_q.
    """
    field = alpha.field
    _require_root_order(field, n)
    if not prime.is_monic or prime.is_constant or not is_irreducible(prime):
        raise ValueError("lower argument must be a monic irreducible of positive degree")
    r = alpha % prime
    if r.is_zero:
        return SymbolValue.zero(field)
    d = len(prime.coeffs) - 1
    s = powmod(r, (field.q ** d - 1) // n, prime)
    if len(s.coeffs) != 1:
        raise AssertionError("residue symbol did not land in the constants")
    return SymbolValue(field, s.coeffs[0])


def residue_symbol_general(alpha: Poly, beta: Poly, n: int = 2) -> SymbolValue:
    """(alpha/beta)_n over the monic prime factorization of beta.

    The leading coefficient of beta is ignored; constant beta gives the
    empty product 1.  The value is zero exactly when gcd(alpha, beta) has
    positive degree.
    """
    field = alpha.field
    _require_root_order(field, n)
    if beta.is_zero:
        raise ValueError("lower argument must be nonzero")
    out = SymbolValue.one(field)
    for prime, mult in factor(beta):
        out = out * residue_symbol(alpha, prime, n) ** mult
        if out.is_zero:
            return out
    return out


def sign_n(f: Poly, n: int = 2) -> FieldElem:
    """(leading coefficient of f)^{(q-1)/n}; the reciprocity correction."""
    field = f.field
    _require_root_order(field, n)
    if f.is_zero:
        raise ValueError("sign of zero is undefined")
    return FieldElem(field, field.pow_(f.lead_code, (field.q - 1) // n))


@dataclass(frozen=True)
class ReciprocityCheck:
    lhs: FieldElem
    rhs: FieldElem

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def check_general_reciprocity(alpha: Poly, beta: Poly, n: int = 2) -> ReciprocityCheck:
    """Evaluate both sides of the reciprocity identity

        (alpha/beta)(beta/alpha)^{-1}
            = (-1)^{((q-1)/n) deg(alpha) deg(beta)}
              sign_n(alpha)^{deg(beta)} sign_n(beta)^{-deg(alpha)}

    for coprime nonzero alpha, beta.
    """
    field = alpha.field
    _require_root_order(field, n)
    if alpha.is_zero or beta.is_zero:
        raise ValueError("reciprocity needs nonzero arguments")
    if gcd(alpha, beta).degree != 0:
        raise ValueError("reciprocity needs coprime arguments")
    lhs = (residue_symbol_general(alpha, beta, n)
           * residue_symbol_general(beta, alpha, n).inverse())
    da = len(alpha.coeffs) - 1
    db = len(beta.coeffs) - 1
    rhs_code = field.one_code
    if (((field.q - 1) // n) * da * db) % 2:
        rhs_code = field.neg_one_code
    rhs_code = field.mul(rhs_code, field.pow_(sign_n(alpha, n).code, db))
    rhs_code = field.mul(rhs_code, field.inv(field.pow_(sign_n(beta, n).code, da)))
    return ReciprocityCheck(lhs.value, FieldElem(field, rhs_code))


def local_symbol(alpha: RatFunc, beta: RatFunc, place: Place) -> SymbolValue:
    """The quadratic local symbol (alpha, beta)_v.

    Builds gamma = (-1)^{v(alpha)v(beta)} alpha^{v(beta)} / beta^{v(alpha)},
    which is a unit at v, reduces it to the residue field and raises the
    residue to the power (q^h - 1)/2.
    """
    field = alpha.field
    if field.q % 2 == 0:
        raise ValueError("quadratic local symbols require odd q")
    if alpha.is_zero or beta.is_zero:
        raise ValueError("local symbols need nonzero arguments")
    m = valuation(alpha, place)
    k = valuation(beta, place)
    gamma = (alpha ** k) / (beta ** m)
    if (m * k) % 2:
        gamma = gamma.scale(field.neg_one)
    if valuation(gamma, place) != 0:
        raise AssertionError("gamma is not a unit at the place")
    if place.is_infinite:
        r = residue_inf(gamma)
        code = field.pow_(r.code, (field.q - 1) // 2)
    else:
        r = residue(gamma, place)
        s = powmod(r, (field.q ** place.residue_degree - 1) // 2, place.prime)
        code = s.coeffs[0] if s.coeffs else 0
    out = SymbolValue(field, code)
    if out.sign == 0:
        raise AssertionError("local symbol of units cannot vanish")
    return out


@dataclass(frozen=True)
class HilbertResult:
    per_place: tuple[tuple[Place, int], ...]  # canonical place order, signs
    product: int

    @property
    def passed(self) -> bool:
        return self.product == 1

    def as_dict(self) -> dict:
        return {str(place): sign for place, sign in self.per_place}


def hilbert_product(alpha: RatFunc, beta: RatFunc) -> HilbertResult:
    """Local symbols over the joint support plus infinity, and their product.

    At every excluded place both valuations vanish, so gamma is a unit power
    and the symbol is 1; the finite candidate set is exhaustive.
    """
    if alpha.is_zero or beta.is_zero:
        raise ValueError("product formula needs nonzero arguments")
    places = set(support(alpha)) | set(support(beta))
    places.add(Place.infinite(alpha.field))
    rows = []
    prod = 1
    for place in sorted_places(places):
        s = local_symbol(alpha, beta, place).sign
        rows.append((place, s))
        prod *= s
    return HilbertResult(tuple(rows), prod)


# --- exhaustive reciprocity sweep --------------------------------------
#
# The sweep checks every coprime ordered pair (alpha, beta) of nonzero
# polynomials of degree <= max_deg.  It evaluates exactly the two sides of
# check_general_reciprocity, but batches the work: residue symbols of the
# monic parts are read from precomputed exponentiation tables, and the
# constant part of (a f / P) is split off via (a f)^E = a^E f^E.


@dataclass(frozen=True)
class SweepViolation:
    alpha: Poly
    beta: Poly
    lhs: FieldElem
    rhs: FieldElem


@dataclass(frozen=True)
class SweepResult:
    field_spec: str
    max_deg: int
    n: int
    pairs_total: int
    pairs_coprime: int
    violations: tuple[SweepViolation, ...]
    elapsed: float

    @property
    def passed(self) -> bool:
        return not self.violations


def _poly_index(coeffs: Sequence[int], q: int, width: int) -> int:
    idx = 0
    for i in range(width - 1, -1, -1):
        idx = idx * q + (coeffs[i] if i < len(coeffs) else 0)
    return idx


def reciprocity_sweep(field: Field, max_deg: int, n: int = 2, jobs: int = 1) -> SweepResult:
    _require_root_order(field, n)
    start = time.monotonic()
    q = field.q

    monics: list[Poly] = [Poly.one(field)]
    for k in range(1, max_deg + 1):
        monics.extend(enumerate_monic(field, k))
    primes: list[Poly] = []
    for k in range(1, max_deg + 1):
        primes.extend(monic_irreducibles(field, k))
    prime_pos = {pr.coeffs: i for i, pr in enumerate(primes)}

    # factorizations of the monic parts, as (prime position, multiplicity)
    fact: list[tuple[tuple[int, int], ...]] = []
    masks: list[int] = []
    for f in monics:
        if f.is_constant:
            fact.append(())
            masks.append(0)
            continue
        entry = tuple((prime_pos[pr.coeffs], mult) for pr, mult in factor(f))
        fact.append(entry)
        masks.append(sum(1 << pos for pos, _ in entry))

    # symbol tables: for each prime, residue-index -> residue^((q^d-1)/n)
    exps = [(q ** (len(pr.coeffs) - 1) - 1) // n for pr in primes]
    symtab: list[list[int]] = []
    res_of_monic: list[list[int]] = []
    for pos, pr in enumerate(primes):
        d = len(pr.coeffs) - 1
        table = [0] * (q ** d)
        for coeffs_tail in _all_code_tuples(q, d):
            r = Poly(field, coeffs_tail, trusted=True)
            if r.is_zero:
                continue
            s = powmod(r, exps[pos], pr)
            table[_poly_index(coeffs_tail, q, d)] = s.coeffs[0]
        symtab.append(table)
        res_of_monic.append([_poly_index((f % pr).coeffs, q, d) for f in monics])
    const_sym = [[field.pow_(a, e) for a in range(q)] for e in exps]
    sgn = [field.pow_(a, (q - 1) // n) for a in range(q)]

    degs = [len(f.coeffs) - 1 for f in monics]
    units = list(range(1, q))
    flip = ((q - 1) // n) % 2 == 1

    # constant part of (a * anything / f_m): prod over P^mult || f_m of (a/P)^mult
    const_part = []
    for entry in fact:
        row = [field.one_code] * q
        for pos, mult in entry:
            row = [field.mul(row[a], field.pow_(const_sym[pos][a], mult)) for a in range(q)]
        const_part.append(row)
    sgn_pow = [[field.pow_(sgn[a], d) for a in range(q)] for d in range(max_deg + 1)]
    inv_sgn_pow = [
        [field.one_code] + [field.inv(c) for c in row[1:]] for row in sgn_pow
    ]  # index 0 unused (units only)

    def run_shard(shard: int) -> tuple[int, int, list[tuple[int, int, int, int, int, int]]]:
        mul, inv, pow_ = field.mul, field.inv, field.pow_
        one = field.one_code
        neg_one = field.neg_one_code
        pair_block = len(units) * len(units)
        total = 0
        coprime = 0
        bad = []
        for i in range(shard, len(monics), max(jobs, 1)):
            mask_i = masks[i]
            fact_i = fact[i]
            deg_i = degs[i]
            cp_i = const_part[i]
            inv_sgn_i = inv_sgn_pow[deg_i]
            for j in range(len(monics)):
                total += pair_block
                if mask_i & masks[j]:
                    continue
                coprime += pair_block
                deg_j = degs[j]
                # monic-part symbols (f_i / g_j) and (g_j / f_i)
                s_ij = one
                for pos, mult in fact[j]:
                    s_ij = mul(s_ij, pow_(symtab[pos][res_of_monic[pos][i]], mult))
                s_ji = one
                for pos, mult in fact_i:
                    s_ji = mul(s_ji, pow_(symtab[pos][res_of_monic[pos][j]], mult))
                sign_flip = flip and (deg_i * deg_j) % 2 == 1
                cp_j = const_part[j]
                sgn_j = sgn_pow[deg_j]
                inv_parts = [inv(mul(cp_i[b], s_ji)) for b in units]
                for a in units:
                    lhs_num = mul(cp_j[a], s_ij)
                    rhs_a = mul(sgn_j[a], neg_one) if sign_flip else sgn_j[a]
                    for bi, b in enumerate(units):
                        lhs = mul(lhs_num, inv_parts[bi])
                        rhs = mul(rhs_a, inv_sgn_i[b])
                        if lhs != rhs:
                            bad.append((a, i, b, j, lhs, rhs))
        return total, coprime, bad

    shards = max(jobs, 1)
    if shards == 1:
        results = [run_shard(0)]
    else:
        with ThreadPoolExecutor(max_workers=shards) as pool:
            results = list(pool.map(run_shard, range(shards)))

    total = sum(r[0] for r in results)
    coprime = sum(r[1] for r in results)
    violations = []
    for _, _, bad in results:
        for a, i, b, j, lhs, rhs in bad:
            violations.append(
                SweepViolation(
                    monics[i].scale(a),
                    monics[j].scale(b),
                    FieldElem(field, lhs),
                    FieldElem(field, rhs),
                )
            )
    return SweepResult(
        field_spec=field.spec,
        max_deg=max_deg,
        n=n,
        pairs_total=total,
        pairs_coprime=coprime,
        violations=tuple(violations),
        elapsed=time.monotonic() - start,
    )


def _all_code_tuples(q: int, width: int):
    import itertools

    for tail in itertools.product(range(q), repeat=width):
        cs = list(tail)
        while cs and cs[-1] == 0:
            cs.pop()
        yield tuple(cs)
