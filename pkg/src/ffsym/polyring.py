"""The polynomial ring F_q[t]: arithmetic, gcd, irreducibility, factorization.

Polynomials are immutable coefficient tuples of field codes, constant term
first, with no trailing zeros; the zero polynomial is the empty tuple and
its degree is the absorbing sentinel NEG_INF (so degree bookkeeping in
valuation formulas can reject zero inputs explicitly instead of silently
producing -1).
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache
from random import Random
from typing import Iterator, Sequence, Union

from .gf import Field, FieldElem, is_prime

NEG_INF = float("-inf")

_FACTOR_SEED = 0x5EED_FACC


class Poly:
    """Univariate polynomial over a Field, canonical coefficient form."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Sequence[int] = (), *, trusted: bool = False):
        self.field = field
        if trusted:
            self.coeffs = tuple(coeffs)
            return
        if field.e == 1:
            cs = [c % field.p for c in coeffs]
        else:
            cs = list(coeffs)
            if any(not 0 <= c < field.q for c in cs):
                raise ValueError("extension-field coefficients must be element codes")
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # --- constructors ---

    @classmethod
    def zero(cls, field: Field) -> "Poly":
        return cls(field, (), trusted=True)

    @classmethod
    def one(cls, field: Field) -> "Poly":
        return cls(field, (1,), trusted=True)

    @classmethod
    def t(cls, field: Field) -> "Poly":
        return cls(field, (0, 1), trusted=True)

    @classmethod
    def constant(cls, field: Field, value: Union[int, FieldElem]) -> "Poly":
        code = field.elem(value).code
        return cls(field, (code,) if code else (), trusted=True)

    @classmethod
    def from_elems(cls, elems: Sequence[FieldElem]) -> "Poly":
        if not elems:
            raise ValueError("need at least one element to infer the field")
        field = elems[0].field
        return cls(field, [e.code for e in elems])

    # --- basic queries ---

    @property
    def degree(self):
        """Degree, or NEG_INF for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lead_code(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def leading_coefficient(self) -> FieldElem:
        return FieldElem(self.field, self.lead_code)

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one_code

    def constant_code(self) -> int:
        """Coefficient of t^0."""
        return self.coeffs[0] if self.coeffs else 0

    # --- arithmetic ---

    def _check(self, other: "Poly") -> None:
        if self.field != other.field:
            raise ValueError("mixed field descriptors")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        fa = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        if fa.is_prime_field:
            p = fa.p
            out = [(x + y) % p for x, y in zip(a, b)]
        else:
            add = fa.add
            out = [add(x, y) for x, y in zip(a, b)]
        out.extend(a[len(b):])
        while out and out[-1] == 0:
            out.pop()
        return Poly(fa, out, trusted=True)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        fa = self.field
        if fa.is_prime_field:
            p = fa.p
            return Poly(fa, [(-c) % p for c in self.coeffs], trusted=True)
        return Poly(fa, [fa.neg(c) for c in self.coeffs], trusted=True)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        fa = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(fa)
        out = [0] * (len(a) + len(b) - 1)
        if fa.is_prime_field:
            p = fa.p
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] += ai * bj
            out = [c % p for c in out]
        else:
            mul, add = fa.mul, fa.add
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] = add(out[i + j], mul(ai, bj))
        return Poly(fa, out, trusted=True)

    def scale(self, code: int) -> "Poly":
        fa = self.field
        if code == 0:
            return Poly.zero(fa)
        if fa.is_prime_field:
            p = fa.p
            return Poly(fa, [(c * code) % p for c in self.coeffs], trusted=True)
        mul = fa.mul
        return Poly(fa, [mul(c, code) for c in self.coeffs], trusted=True)

    def shift(self, k: int) -> "Poly":
        """Multiply by t^k, k >= 0."""
        if k < 0:
            raise ValueError("negative shift")
        if self.is_zero or k == 0:
            return self
        return Poly(self.field, (0,) * k + self.coeffs, trusted=True)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        fa = self.field
        a = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        if len(a) - 1 < db:
            return Poly.zero(fa), self
        binv = fa.inv(b[-1])
        quot = [0] * (len(a) - db)
        mul, sub = fa.mul, fa.sub
        while len(a) - 1 >= db and a:
            k = len(a) - 1 - db
            c = mul(a[-1], binv)
            quot[k] = c
            if c:
                for i in range(db + 1):
                    a[k + i] = sub(a[k + i], mul(c, b[i]))
            while a and a[-1] == 0:
                a.pop()
        return Poly(fa, quot, trusted=True), Poly(fa, a, trusted=True)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero or self.is_monic:
            return self
        return self.scale(self.field.inv(self.lead_code))

    def derivative(self) -> "Poly":
        fa = self.field
        out = []
        for i, c in enumerate(self.coeffs[1:], start=1):
            k = i % fa.p
            out.append(fa.mul(c, k) if k else 0)
        return Poly(fa, out)

    def evaluate(self, value: Union[int, FieldElem]) -> FieldElem:
        fa = self.field
        x = fa.elem(value).code
        acc = 0
        for c in reversed(self.coeffs):
            acc = fa.add(fa.mul(acc, x), c)
        return FieldElem(fa, acc)

    # --- identity / presentation ---

    def sort_key(self) -> tuple:
        return (len(self.coeffs), self.coeffs)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.e, self.coeffs))

    def __repr__(self) -> str:
        return format_poly(self)


# --- gcd / modular arithmetic ---


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) = 0 and gcd(f, 0) = monic(f)."""
    f._check(g)
    while not g.is_zero:
        f, g = g, f % g
    return f.monic()


def xgcd(f: Poly, g: Poly) -> tuple[Poly, Poly, Poly]:
    """(d, u, v) with u*f + v*g = d, d the monic gcd."""
    f._check(g)
    field = f.field
    r0, r1 = f, g
    s0, s1 = Poly.one(field), Poly.zero(field)
    t0, t1 = Poly.zero(field), Poly.one(field)
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        return r0, s0, t0
    c = field.inv(r0.lead_code)
    return r0.scale(c), s0.scale(c), t0.scale(c)


def invmod(f: Poly, mod: Poly) -> Poly:
    d, u, _ = xgcd(f, mod)
    if d.degree != 0:  # xgcd output is monic, so invertible means d == 1
        raise ZeroDivisionError("element not invertible modulo the given polynomial")
    return u % mod


def powmod(f: Poly, n: int, mod: Poly) -> Poly:
    if n < 0:
        return powmod(invmod(f, mod), -n, mod)
    result = Poly.one(f.field)
    base = f % mod
    while n:
        if n & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        n >>= 1
    return result


# --- irreducibility and factorization ---


def is_irreducible(f: Poly) -> bool:
    """Rabin's criterion over F_q.  Requires deg f >= 1."""
    if f.is_zero or f.is_constant:
        raise ValueError("irreducibility is defined for positive degree only")
    f = f.monic()
    m = len(f.coeffs) - 1
    if m == 1:
        return True
    q = f.field.q
    x = Poly.t(f.field)
    for ell in sorted({d for d in range(2, m + 1) if m % d == 0 and is_prime(d)}):
        if gcd(powmod(x, q ** (m // ell), f) - x, f).degree != 0:
            return False
    return (powmod(x, q ** m, f) - x).is_zero


def _pth_root(f: Poly) -> Poly:
    # f = g(t^p); recover g.  Coefficient roots are the inverse Frobenius.
    field = f.field
    p = field.p
    root_exp = p ** (field.e - 1)
    out = [field.pow_(c, root_exp) for c in f.coeffs[::p]]
    return Poly(field, out)


def _squarefree_parts(f: Poly) -> list[tuple[Poly, int]]:
    # monic f, deg >= 1 -> [(squarefree monic, multiplicity)], char-p safe
    field = f.field
    out: list[tuple[Poly, int]] = []
    e = 1
    while not f.is_constant:
        df = f.derivative()
        if df.is_zero:
            f = _pth_root(f)
            e *= field.p
            continue
        g = gcd(f, df)
        w = f // g
        i = 1
        while not w.is_constant:
            y = gcd(w, g)
            z = w // y
            if not z.is_constant:
                out.append((z, i * e))
            w = y
            g = g // y
            i += 1
        f = g
    return out


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    # squarefree monic f -> [(product of degree-d irreducibles, d)]
    q = f.field.q
    x = Poly.t(f.field)
    out = []
    h = powmod(x, q, f)
    d = 1
    while len(f.coeffs) - 1 >= 2 * d:
        g = gcd(h - x, f)
        if g.degree != 0:
            out.append((g, d))
            f = f // g
            h = h % f
        d += 1
        h = powmod(h, q, f)
    if not f.is_constant:
        out.append((f, len(f.coeffs) - 1))
    return out


def _equal_degree_split(f: Poly, d: int, rng: Random) -> list[Poly]:
    # f a product of >= 1 distinct monic irreducibles of degree d
    field = f.field
    n = len(f.coeffs) - 1
    if n == d:
        return [f]
    q = field.q
    while True:
        u = Poly(field, [rng.randrange(q) for _ in range(n)])
        if u.degree is NEG_INF or u.degree == 0:
            continue
        if q % 2 == 1:
            g = powmod(u, (q ** d - 1) // 2, f) - Poly.one(field)
        else:
            g = u
            acc = u
            for _ in range(field.e * d - 1):  # trace map for characteristic 2
                acc = (acc * acc) % f
                g = g + acc
        w = gcd(g, f)
        if 0 < len(w.coeffs) - 1 < n:
            return _equal_degree_split(w, d, rng) + _equal_degree_split(f // w, d, rng)


class Factorization:
    """Prime factorization: leading coefficient times monic prime powers."""

    __slots__ = ("field", "lead_code", "factors")

    def __init__(self, field: Field, lead_code: int, factors: Sequence[tuple[Poly, int]]):
        self.field = field
        self.lead_code = lead_code
        self.factors = tuple(sorted(factors, key=lambda fm: fm[0].sort_key()))

    @property
    def lead(self) -> FieldElem:
        return FieldElem(self.field, self.lead_code)

    def product(self) -> Poly:
        acc = Poly.constant(self.field, FieldElem(self.field, self.lead_code))
        for prime, mult in self.factors:
            acc = acc * prime ** mult
        return acc

    def __iter__(self):
        return iter(self.factors)

    def __repr__(self) -> str:
        parts = " * ".join(f"({format_poly(p)})^{m}" for p, m in self.factors)
        return f"{self.field.element_repr(self.lead_code)} * {parts or '1'}"


def factor(f: Poly, rng: Random | None = None) -> Factorization:
    """Factor f into monic irreducibles.

    Equal-degree splitting is randomized; the sorted factor multiset is
    canonical, so the output is independent of the seed.  A None rng uses a
    fixed internal seed (no global RNG state is touched).
    """
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    rng = rng if rng is not None else Random(_FACTOR_SEED)
    lead = f.lead_code
    f = f.monic()
    factors: list[tuple[Poly, int]] = []
    for squarefree, mult in _squarefree_parts(f):
        for prod, d in _distinct_degree(squarefree):
            for prime in _equal_degree_split(prod, d, rng):
                factors.append((prime, mult))
    return Factorization(f.field, lead, factors)


# --- enumeration and random sampling ---


def enumerate_monic(field: Field, k: int) -> Iterator[Poly]:
    """All q^k monic polynomials of degree k, lexicographic in
    (c0, ..., c_{k-1}) with the constant term most significant."""
    if k < 0:
        raise ValueError("degree must be >= 0")
    for tail in itertools.product(range(field.q), repeat=k):
        yield Poly(field, tail + (1,), trusted=True)


@lru_cache(maxsize=None)
def monic_irreducibles(field: Field, k: int) -> tuple[Poly, ...]:
    """All monic irreducibles of degree k, enumeration order."""
    if k < 1:
        return ()
    return tuple(f for f in enumerate_monic(field, k) if is_irreducible(f))


def random_poly(
    field: Field,
    rng: Random,
    max_deg: int,
    *,
    nonzero: bool = False,
    monic: bool = False,
    exact_deg: bool = False,
) -> Poly:
    while True:
        deg = max_deg if exact_deg else rng.randint(0, max_deg)
        codes = [rng.randrange(field.q) for _ in range(deg)]
        codes.append(field.one_code if monic else rng.randrange(1, field.q))
        f = Poly(field, codes, trusted=True)
        if not exact_deg and not monic and rng.random() < 1.0 / (max_deg + 2):
            f = Poly.zero(field)  # give the zero polynomial some mass
        if nonzero and f.is_zero:
            continue
        return f


def random_irreducible(field: Field, rng: Random, deg: int) -> Poly:
    if deg < 1:
        raise ValueError("irreducibles have positive degree")
    while True:
        f = random_poly(field, rng, deg, monic=True, exact_deg=True)
        if is_irreducible(f):
            return f


# --- text grammar ---
# terms "c", "c*t", "c*t^k", "t^k", "t" joined by "+"; coefficients in
# decimal, reduced mod p; extension-field coefficients "[c0,c1,...]".

_TERM_RE = re.compile(
    r"^(?:(?P<coef>-?\d+|\[[-\d,\s]*\])(?:\*(?P<tpart1>t(?:\^(?P<k1>\d+))?))?"
    r"|(?P<tpart2>t(?:\^(?P<k2>\d+))?))$"
)


def _parse_coef(field: Field, text: str) -> int:
    if text.startswith("["):
        inner = text[1:-1].strip()
        vec = [int(v) for v in inner.split(",")] if inner else []
        return field.elem(vec).code
    return field.elem(int(text)).code


def parse_poly(field: Field, text: str) -> Poly:
    """Parse polynomial text like "t^3+2*t+1" over the given field."""
    cleaned = text.replace(" ", "")
    if not cleaned:
        raise ValueError("empty polynomial text")
    coeffs: dict[int, int] = {}
    for term in cleaned.split("+"):
        m = _TERM_RE.match(term)
        if not m:
            raise ValueError(f"malformed polynomial term: {term!r}")
        if m.group("coef") is not None:
            code = _parse_coef(field, m.group("coef"))
            if m.group("tpart1"):
                k = int(m.group("k1") or 1)
            else:
                k = 0
        else:
            code = field.one_code
            k = int(m.group("k2") or 1)
        coeffs[k] = field.add(coeffs.get(k, 0), code)
    if not coeffs:
        return Poly.zero(field)
    out = [0] * (max(coeffs) + 1)
    for k, code in coeffs.items():
        out[k] = code
    return Poly(field, out)


def format_poly(f: Poly) -> str:
    if f.is_zero:
        return "0"
    field = f.field
    parts = []
    for k in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[k]
        if c == 0:
            continue
        if k == 0:
            parts.append(field.element_repr(c))
        elif c == field.one_code:
            parts.append("t" if k == 1 else f"t^{k}")
        else:
            parts.append(f"{field.element_repr(c)}*" + ("t" if k == 1 else f"t^{k}"))
    return "+".join(parts)
