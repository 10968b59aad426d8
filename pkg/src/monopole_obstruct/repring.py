"""Representation rings of Z_p and Pin(2), lambda/Adams operations, characters."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import sympy
from sympy.matrices.normalforms import smith_normal_decomp

from .exact import Cyclotomic, LaurentPoly, is_prime


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class ZpVirtualRep:
    """sum_j mult[j] C_j in R[Z_p], where the generator acts on C_j by w^j."""

    p: int
    mult: tuple[int, ...]

    def __init__(self, p: int, mult: Iterable[int] | None = None):
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        m = tuple(int(x) for x in (mult if mult is not None else [0] * p))
        if len(m) != p:
            raise ValueError(f"need {p} multiplicities, got {len(m)}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "mult", m)

    @classmethod
    def character(cls, p: int, j: int, k: int = 1) -> ZpVirtualRep:
        """k copies of C_j."""
        m = [0] * p
        m[j % p] = k
        return cls(p, m)

    @classmethod
    def scalar(cls, p: int, n: int) -> ZpVirtualRep:
        return cls.character(p, 0, n)

    @property
    def rank(self) -> int:
        return sum(self.mult)

    @property
    def is_genuine(self) -> bool:
        return all(m >= 0 for m in self.mult)

    @property
    def is_self_conjugate(self) -> bool:
        return all(self.mult[j] == self.mult[-j % self.p] for j in range(self.p))

    def is_zero(self) -> bool:
        return not any(self.mult)

    def _check(self, other: ZpVirtualRep) -> None:
        if self.p != other.p:
            raise ValueError(f"representations of Z_{self.p} and Z_{other.p}")

    def __add__(self, other: ZpVirtualRep) -> ZpVirtualRep:
        self._check(other)
        return ZpVirtualRep(self.p, [a + b for a, b in zip(self.mult, other.mult)])

    def __neg__(self) -> ZpVirtualRep:
        return ZpVirtualRep(self.p, [-a for a in self.mult])

    def __sub__(self, other: ZpVirtualRep) -> ZpVirtualRep:
        return self + (-other)

    def __mul__(self, other) -> ZpVirtualRep:
        if isinstance(other, int):
            return ZpVirtualRep(self.p, [a * other for a in self.mult])
        self._check(other)
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.mult):
            if a:
                for j, b in enumerate(other.mult):
                    out[(i + j) % p] += a * b
        return ZpVirtualRep(p, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> ZpVirtualRep:
        result = ZpVirtualRep.scalar(self.p, 1)
        for _ in range(n):
            result = result * self
        return result

    def dual(self) -> ZpVirtualRep:
        return ZpVirtualRep(self.p, [self.mult[-j % self.p] for j in range(self.p)])

    def lines(self) -> list[int]:
        """Character indices of a genuine representation, with repetition."""
        self.require_genuine()
        return [j for j, m in enumerate(self.mult) for _ in range(m)]

    def require_genuine(self) -> None:
        if not self.is_genuine:
            raise DomainError(f"lambda operations need a genuine representation, got {self.mult}")

    def __str__(self) -> str:
        terms = [f"{m}C{j}" if m != 1 else f"C{j}" for j, m in enumerate(self.mult) if m]
        return " + ".join(terms) or "0"


def _product_of_lines(r: ZpVirtualRep, factor) -> ZpVirtualRep:
    out = ZpVirtualRep.scalar(r.p, 1)
    for j, m in enumerate(r.mult):
        if m:
            out = out * factor(j) ** m
    return out


def lambda_total(r: ZpVirtualRep) -> ZpVirtualRep:
    """sum_i Lambda^i r = prod over lines (1 + C_j)."""
    r.require_genuine()
    one = ZpVirtualRep.scalar(r.p, 1)
    return _product_of_lines(r, lambda j: one + ZpVirtualRep.character(r.p, j))


def k_euler(r: ZpVirtualRep) -> ZpVirtualRep:
    """Lambda_{-1}(r^*) = prod over lines (1 - C_{-j})."""
    r.require_genuine()
    one = ZpVirtualRep.scalar(r.p, 1)
    return _product_of_lines(r, lambda j: one - ZpVirtualRep.character(r.p, -j))


def psi2(r: ZpVirtualRep) -> ZpVirtualRep:
    out = [0] * r.p
    for j, m in enumerate(r.mult):
        out[(2 * j) % r.p] += m
    return ZpVirtualRep(r.p, out)


def character_at(r: ZpVirtualRep, k: int) -> Cyclotomic:
    """Trace of f^k: sum_j mult[j] w^(jk)."""
    total = Cyclotomic.zero(r.p)
    for j, m in enumerate(r.mult):
        if m:
            total = total + m * Cyclotomic.root_power(r.p, j * k)
    return total


# -- exact division in R[Z_p] = Z[t]/(t^p - 1) -------------------------------


def circulant(b: ZpVirtualRep) -> list[list[int]]:
    """Matrix of multiplication by b: column i holds b * C_i."""
    p = b.p
    return [[b.mult[(row - col) % p] for col in range(p)] for row in range(p)]


def _integer_solve(M: list[list[int]], rhs: list[int]) -> list[int] | None:
    """An integer solution of M q = rhs, or None.

    With the Smith decomposition S = U M V (U, V unimodular) the system
    becomes S y = U rhs, which is diagonal; q = V y.
    """
    S, U, V = smith_normal_decomp(sympy.Matrix(M), domain=sympy.ZZ)
    b = U * sympy.Matrix(rhs)
    y = []
    for i in range(S.cols):
        s_i = S[i, i] if i < S.rows else 0
        b_i = b[i] if i < S.rows else 0
        if s_i == 0:
            if b_i != 0:
                return None
            y.append(0)
        elif b_i % s_i:
            return None
        else:
            y.append(b_i // s_i)
    for i in range(S.cols, S.rows):
        if b[i] != 0:
            return None
    q = V * sympy.Matrix(y)
    return [int(x) for x in q]


@dataclass(frozen=True)
class DivisionResult:
    quotient: ZpVirtualRep | None
    reason: str  # "exact", "non-integral", "inconsistent"
    rational_solution: tuple | None = None


def repring_divide(a: ZpVirtualRep, b: ZpVirtualRep) -> DivisionResult:
    """Solve a = q * b in R[Z_p], reporting why no integral q exists."""
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero representation")
    M = sympy.Matrix(circulant(b))
    rhs = sympy.Matrix(list(a.mult))
    if M.det() != 0:
        sol = M.LUsolve(rhs)
        rational = tuple(Fraction(int(x.p), int(x.q)) for x in sol)
        if all(x.denominator == 1 for x in rational):
            return DivisionResult(ZpVirtualRep(a.p, [int(x) for x in rational]), "exact", rational)
        return DivisionResult(None, "non-integral", rational)
    try:
        sol, params = M.gauss_jordan_solve(rhs)
    except ValueError:
        return DivisionResult(None, "inconsistent")
    particular = sol.subs({t: 0 for t in params})
    rational = tuple(Fraction(int(x.p), int(x.q)) for x in particular)
    q = _integer_solve(circulant(b), list(a.mult))
    if q is None:
        return DivisionResult(None, "non-integral", rational)
    return DivisionResult(ZpVirtualRep(a.p, q), "exact", rational)


def repring_exact_divide(a: ZpVirtualRep, b: ZpVirtualRep) -> ZpVirtualRep | None:
    return repring_divide(a, b).quotient


def character_divisibility_failure(a: ZpVirtualRep, b: ZpVirtualRep) -> int | None:
    """Smallest k for which tr_k(a) is not a Z[w]-multiple of tr_k(b)."""
    for k in range(a.p):
        ta, tb = character_at(a, k), character_at(b, k)
        if tb.is_zero():
            if not ta.is_zero():
                return k
            continue
        if not (ta / tb).is_integral:
            return k
    return None


# -- Pin(2) ------------------------------------------------------------------


@dataclass(frozen=True)
class Pin2Element:
    """Element of R[Pin(2)] stored as (restriction to S^1, trace at j).

    1 -> (1, 1), 1_- -> (1, -1), mu_k -> (xi^k + xi^-k, 0).  The pair
    determines the element, and the ring structure is componentwise.
    """

    s1_restriction: LaurentPoly
    trace_at_j: int

    def __post_init__(self):
        r = self.s1_restriction
        if r.ring != "integer":
            raise ValueError("restriction must have integer coefficients")
        d = r.as_dict()
        if any(d.get(-e, 0) != c for e, c in d.items()):
            raise ValueError("restriction to S^1 must be symmetric under xi <-> 1/xi")
        if (d.get(0, 0) - self.trace_at_j) % 2:
            raise ValueError("constant term and trace at j must agree mod 2")

    @classmethod
    def from_coefficients(cls, n_one: int = 0, n_sign: int = 0, mus: dict[int, int] | None = None) -> Pin2Element:
        """n_one * 1 + n_sign * 1_- + sum_k mus[k] * mu_k."""
        terms = {0: n_one + n_sign}
        for k, n in (mus or {}).items():
            if k < 1:
                raise ValueError("mu_k needs k >= 1")
            terms[k] = terms.get(k, 0) + n
            terms[-k] = terms.get(-k, 0) + n
        return cls(LaurentPoly("integer", terms), n_one - n_sign)

    @classmethod
    def one(cls) -> Pin2Element:
        return cls.from_coefficients(n_one=1)

    @classmethod
    def sign(cls) -> Pin2Element:
        return cls.from_coefficients(n_sign=1)

    @classmethod
    def mu(cls, k: int) -> Pin2Element:
        """mu_k; mu_0 is taken to be 1 + 1_-."""
        if k == 0:
            return cls.from_coefficients(1, 1)
        return cls.from_coefficients(mus={k: 1})

    def coefficients(self) -> tuple[int, int, dict[int, int]]:
        d = self.s1_restriction.as_dict()
        c0 = d.get(0, 0)
        n_one = (c0 + self.trace_at_j) // 2
        mus = {k: c for k, c in d.items() if k > 0}
        return n_one, c0 - n_one, mus

    def __add__(self, other: Pin2Element) -> Pin2Element:
        return Pin2Element(self.s1_restriction + other.s1_restriction, self.trace_at_j + other.trace_at_j)

    def __neg__(self) -> Pin2Element:
        return Pin2Element(-self.s1_restriction, -self.trace_at_j)

    def __sub__(self, other: Pin2Element) -> Pin2Element:
        return self + (-other)

    def __mul__(self, other: Pin2Element) -> Pin2Element:
        return Pin2Element(self.s1_restriction * other.s1_restriction, self.trace_at_j * other.trace_at_j)


def trace_j(e: Pin2Element) -> int:
    return e.trace_at_j


def restrict_s1(e: Pin2Element) -> LaurentPoly:
    return e.s1_restriction


def psi2_pin2(e: Pin2Element) -> Pin2Element:
    """Adams psi^2: xi -> xi^2 on the restriction; the trace at j becomes the
    character at j^2 = -1, i.e. the restriction evaluated at xi = -1."""
    return Pin2Element(e.s1_restriction.substitute_power(2), int(e.s1_restriction.evaluate(-1)))


@dataclass(frozen=True)
class EquivariantIndexData:
    """Virtual dimensions d[j] of the w^j eigenspaces of the lifted action on D."""

    p: int
    d: tuple[int, ...]

    def __init__(self, p: int, d: Iterable[int]):
        dd = tuple(int(x) for x in d)
        if len(dd) != p:
            raise ValueError(f"need {p} eigenspace dimensions, got {len(dd)}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "d", dd)

    @property
    def total(self) -> int:
        return sum(self.d)

    def relabel(self, r: int) -> EquivariantIndexData:
        """Index data for the lift multiplied by w^-r: d'[i] = d[i + r]."""
        return EquivariantIndexData(self.p, [self.d[(i + r) % self.p] for i in range(self.p)])
