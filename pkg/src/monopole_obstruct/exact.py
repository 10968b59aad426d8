"""Exact arithmetic kernel.

Cyclotomic numbers in Q(w_p) with the power basis 1, w, ..., w^(p-2), Laurent
polynomials in a single variable ``t`` (playing the role of xi^-1), exact
division, and the polynomiality oracle for products of linear factors
``(1 - w^j t)^e``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, NamedTuple, Union

Scalar = Union[int, Fraction]


class ModulusMismatch(ValueError):
    """Raised when combining cyclotomic values of different orders."""


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _normalize_scalar(x: Scalar) -> Scalar:
    if type(x) is int:
        return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


class Cyclotomic:
    """Element of Q(w) for w a primitive p-th root of unity, p prime.

    Stored as coefficients on 1, w, ..., w^(p-2).  Coefficients are ints in
    the common case (an element of Z[w]); Fractions appear only during
    field-level work such as division.  For p = 2 the basis is {1} and w = -1.
    """

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Iterable[Scalar]):
        if not is_prime(p):
            raise ValueError(f"cyclotomic order must be prime, got {p}")
        c = tuple(_normalize_scalar(x) for x in coeffs)
        if len(c) != p - 1:
            raise ValueError(f"expected {p - 1} coefficients for p={p}, got {len(c)}")
        self.p = p
        self.coeffs = c

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_int(cls, p: int, n: Scalar) -> Cyclotomic:
        return cls(p, (n,) + (0,) * (p - 2))

    @classmethod
    def zero(cls, p: int) -> Cyclotomic:
        return cls.from_int(p, 0)

    @classmethod
    def one(cls, p: int) -> Cyclotomic:
        return cls.from_int(p, 1)

    @classmethod
    def root_power(cls, p: int, e: int) -> Cyclotomic:
        """w^e, reduced."""
        return cls._reduce(p, {e % p: 1})

    @classmethod
    def _reduce(cls, p: int, powers: dict[int, Scalar]) -> Cyclotomic:
        # w^(p-1) = -(1 + w + ... + w^(p-2))
        v = [0] * p
        for e, c in powers.items():
            v[e % p] += c
        top = v[p - 1]
        return cls(p, [v[i] - top for i in range(p - 1)])

    # -- predicates -------------------------------------------------------

    @property
    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def rational_value(self) -> Scalar | None:
        """The value as a rational number when it lies in Q, else None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> Cyclotomic:
        if isinstance(other, Cyclotomic):
            if other.p != self.p:
                raise ModulusMismatch(f"cannot combine p={self.p} with p={other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_int(self.p, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.p, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic(self.p, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        prod: dict[int, Scalar] = {}
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    k = (i + j) % self.p
                    prod[k] = prod.get(k, 0) + a * b
        return Cyclotomic._reduce(self.p, prod)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Cyclotomic:
        if n < 0:
            return self.inverse() ** (-n)
        result = Cyclotomic.one(self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def galois(self, k: int) -> Cyclotomic:
        """Image under the automorphism w -> w^k (k prime to p)."""
        if k % self.p == 0:
            raise ValueError("k must be prime to p")
        powers: dict[int, Scalar] = {}
        for i, a in enumerate(self.coeffs):
            if a:
                e = (i * k) % self.p
                powers[e] = powers.get(e, 0) + a
        return Cyclotomic._reduce(self.p, powers)

    def norm(self) -> Scalar:
        prod = Cyclotomic.one(self.p)
        for k in range(1, self.p):
            prod = prod * self.galois(k)
        value = prod.rational_value()
        assert value is not None
        return value

    def inverse(self) -> Cyclotomic:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(w)")
        conj = Cyclotomic.one(self.p)
        for k in range(2, self.p):
            conj = conj * self.galois(k)
        n = Fraction(self.norm())
        return Cyclotomic(self.p, [Fraction(c) / n for c in conj.coeffs])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_int(self.p, other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __repr__(self) -> str:
        return f"Cyclotomic({self.p}, {list(self.coeffs)})"

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("w" if i == 1 else f"w^{i}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


CyclotomicInteger = Cyclotomic


def cyc_arith(a: Cyclotomic, b: Cyclotomic, op: str) -> Cyclotomic:
    if a.p != b.p:
        raise ModulusMismatch(f"cannot combine p={a.p} with p={b.p}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Laurent polynomials


def _ring_zero(ring) -> Scalar | Cyclotomic:
    if isinstance(ring, tuple):
        return Cyclotomic.zero(ring[1])
    return 0


def _ring_one(ring):
    if isinstance(ring, tuple):
        return Cyclotomic.one(ring[1])
    return 1


def _field_inverse(c):
    if isinstance(c, Cyclotomic):
        return c.inverse()
    return Fraction(1) / c


def _in_base_ring(c, ring) -> bool:
    if ring == "rational":
        return True
    if isinstance(c, Cyclotomic):
        return c.is_integral
    return isinstance(_normalize_scalar(c), int)


def cyclotomic_ring(p: int) -> tuple[str, int]:
    return ("cyclotomic", p)


@dataclass(frozen=True)
class LaurentPoly:
    """Finite sum of c_k t^k, k in Z, with no stored zero coefficients.

    ``ring`` is ``"integer"``, ``"rational"`` or ``("cyclotomic", p)``.
    """

    ring: object
    terms: tuple[tuple[int, object], ...]

    def __init__(self, ring, terms=None):
        if not (ring in ("integer", "rational") or (isinstance(ring, tuple) and ring[0] == "cyclotomic")):
            raise ValueError(f"unknown coefficient ring {ring!r}")
        items: dict[int, object] = {}
        if terms:
            pairs = terms.items() if isinstance(terms, dict) else terms
            for e, c in pairs:
                if isinstance(ring, tuple) and not isinstance(c, Cyclotomic):
                    c = Cyclotomic.from_int(ring[1], c)
                items[int(e)] = items.get(int(e), _ring_zero(ring)) + c
        cleaned = tuple(sorted((e, _norm_coeff(c)) for e, c in items.items() if c))
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", cleaned)

    @classmethod
    def constant(cls, ring, c) -> LaurentPoly:
        return cls(ring, {0: c})

    @classmethod
    def monomial(cls, ring, e: int, c=1) -> LaurentPoly:
        return cls(ring, {e: c})

    @classmethod
    def from_coeffs(cls, ring, coeffs, shift: int = 0) -> LaurentPoly:
        """Coefficients listed from t^shift upwards."""
        return cls(ring, {shift + i: c for i, c in enumerate(coeffs)})

    @property
    def p(self) -> int | None:
        return self.ring[1] if isinstance(self.ring, tuple) else None

    def as_dict(self) -> dict[int, object]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def min_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return self.terms[0][0]

    @property
    def max_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return self.terms[-1][0]

    def coeff(self, e: int):
        return self.as_dict().get(e, _ring_zero(self.ring))

    def _check(self, other: LaurentPoly) -> None:
        if self.ring != other.ring:
            raise ModulusMismatch(f"coefficient rings differ: {self.ring} vs {other.ring}")

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        self._check(other)
        return LaurentPoly(self.ring, list(self.terms) + list(other.terms))

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.ring, [(e, -c) for e, c in self.terms])

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            return LaurentPoly(self.ring, [(e, c * other) for e, c in self.terms])
        self._check(other)
        out: dict[int, object] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                out[e1 + e2] = out.get(e1 + e2, _ring_zero(self.ring)) + c1 * c2
        return LaurentPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        result = LaurentPoly.constant(self.ring, _ring_one(self.ring))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> LaurentPoly:
        return LaurentPoly(self.ring, [(e + k, c) for e, c in self.terms])

    def substitute_power(self, k: int) -> LaurentPoly:
        """t -> t^k."""
        return LaurentPoly(self.ring, [(e * k, c) for e, c in self.terms])

    def evaluate(self, x):
        total = _ring_zero(self.ring)
        for e, c in self.terms:
            total = total + c * (x ** e)
        return total

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*t^{e}" for e, c in self.terms) or "0"
        return f"LaurentPoly[{self.ring}]({body})"


def _norm_coeff(c):
    return _normalize_scalar(c) if isinstance(c, (int, Fraction)) else c


def _poly_divmod(num: list, den: list, ring):
    """Dense long division over the fraction field, highest degree first."""
    num = list(num)
    q = [_ring_zero(ring)] * max(len(num) - len(den) + 1, 0)
    lead_inv = _field_inverse(den[-1])
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1] * lead_inv
        if isinstance(c, (int, Fraction)):
            c = _normalize_scalar(c)
        q[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] = num[k + i] - c * d
    rem = num[: len(den) - 1]
    return q, rem


def laurent_exact_divide(f: LaurentPoly, g: LaurentPoly, *, over_field: bool = False) -> LaurentPoly | None:
    """Return q with f = q*g in the Laurent ring, or None when no such q exists.

    Division is carried out over the fraction field; unless ``over_field`` is
    set, the quotient must also have coefficients in the original ring.
    """
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if f.is_zero():
        return LaurentPoly(f.ring)
    ring = f.ring
    fmin, gmin = f.min_exp, g.min_exp
    num = [f.coeff(fmin + i) for i in range(f.max_exp - fmin + 1)]
    den = [g.coeff(gmin + i) for i in range(g.max_exp - gmin + 1)]
    # den[0] != 0, so t is prime to den and divisibility is that of polynomials
    if len(num) < len(den):
        return None
    q, rem = _poly_divmod(num, den, ring)
    if any(rem):
        return None
    if not over_field and not all(_in_base_ring(c, ring) for c in q if c):
        return None
    out_ring = ring
    return LaurentPoly(out_ring, {fmin - gmin + i: c for i, c in enumerate(q)})


# ---------------------------------------------------------------------------
# Factored rational functions and the polynomiality oracle


@dataclass(frozen=True)
class FactoredRational:
    """numerator * prod_j (1 - w^j t)^e_j over Q(w_p); e_j may be negative."""

    p: int
    numerator: LaurentPoly
    linear_factors: tuple[tuple[int, int], ...]

    def __init__(self, p: int, numerator, linear_factors: Iterable[tuple[int, int]]):
        if not isinstance(numerator, LaurentPoly):
            numerator = LaurentPoly.constant(cyclotomic_ring(p), numerator)
        if numerator.ring != cyclotomic_ring(p):
            numerator = LaurentPoly(cyclotomic_ring(p), [(e, c) for e, c in numerator.terms])
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "linear_factors", tuple((j % p, int(e)) for j, e in linear_factors))

    def net_multiplicities(self) -> dict[int, int]:
        net: dict[int, int] = {}
        for j, e in self.linear_factors:
            net[j] = net.get(j, 0) + e
        return {j: e for j, e in sorted(net.items()) if e}


def linear_factor(p: int, j: int) -> LaurentPoly:
    """1 - w^j t."""
    ring = cyclotomic_ring(p)
    return LaurentPoly(ring, {0: 1, 1: -Cyclotomic.root_power(p, j)})


class Polynomiality(NamedTuple):
    ok: bool
    witness: int | None
    deficits: dict


def vanishing_order(f: LaurentPoly, x: Cyclotomic, limit: int | None = None) -> int:
    """Order of vanishing of f at the nonzero point x, via Hasse derivatives.

    Stops at ``limit`` when given.  The zero polynomial vanishes to every
    order; ``limit`` (or a large sentinel) is returned for it.
    """
    if f.is_zero():
        return limit if limit is not None else 1 << 30
    g = f.shift(-f.min_exp)
    coeffs = g.as_dict()
    top = g.max_exp
    k = 0
    while limit is None or k < limit:
        value = Cyclotomic.zero(x.p)
        for n in range(k, top + 1):
            c = coeffs.get(n)
            if c:
                value = value + c * comb(n, k) * (x ** (n - k))
        if value:
            return k
        k += 1
    return k


def is_polynomial(r: FactoredRational) -> Polynomiality:
    """Decide whether r is a Laurent polynomial in t.

    The linear factors are pairwise coprime, so r is polynomial iff for every
    root exponent j with net multiplicity -m < 0 the numerator vanishes to
    order >= m at t = w^-j.  The witness is the smallest failing j.
    """
    deficits = {}
    witness = None
    for j, e in r.net_multiplicities().items():
        if e >= 0:
            continue
        need = -e
        root = Cyclotomic.root_power(r.p, -j)
        have = vanishing_order(r.numerator, root, limit=need)
        if have < need:
            deficits[j] = need - have
            if witness is None:
                witness = j
    return Polynomiality(witness is None, witness, deficits)


def expand_factored(r: FactoredRational) -> tuple[LaurentPoly, LaurentPoly]:
    """(numerator * positive factors, product of negative factors) expanded."""
    ring = cyclotomic_ring(r.p)
    top = r.numerator
    bottom = LaurentPoly.constant(ring, 1)
    for j, e in r.linear_factors:
        lin = linear_factor(r.p, j)
        if e > 0:
            top = top * lin ** e
        elif e < 0:
            bottom = bottom * lin ** (-e)
    return top, bottom


def binomial_mod2(n: int, k: int) -> int:
    """C(n, k) mod 2 by Lucas: odd iff the bits of k are a subset of those of n."""
    if n < 0 or k < 0:
        raise ValueError("binomial_mod2 takes nonnegative arguments")
    return int((n & k) == k)
