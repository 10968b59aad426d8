"""Truncated graded-commutative rings and characteristic-class computations.

Only explicitly presented rings are modelled: polynomial generators with an
optional nilpotency bound and an optional 2-torsion annihilator.  Integral
presentations are restricted to even-degree generators so that the ring is
honestly commutative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .exact import binomial_mod2


class PresentationMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    nilpotency: int | None = None  # g**nilpotency == 0; None for unbounded
    annihilator: int = 0  # 2 means 2*g == 0


@dataclass(frozen=True)
class RingPresentation:
    modulus: int
    generators: tuple[Generator, ...]

    def __post_init__(self):
        if self.modulus not in (0, 2):
            raise ValueError("coefficient modulus must be 0 or 2")
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        for g in self.generators:
            if g.degree < 0:
                raise ValueError("generator degrees are nonnegative")
            if g.nilpotency is not None and g.nilpotency < 1:
                raise ValueError("nilpotency exponent must be >= 1")
            if g.annihilator not in (0, 2):
                raise ValueError("annihilator must be 0 or 2")
            if self.modulus == 0 and g.degree % 2:
                raise ValueError(
                    f"integral presentation with odd-degree generator {g.name}: "
                    "graded signs are not modelled"
                )

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        for i, g in enumerate(self.generators):
            if g.name == name:
                return i
        raise KeyError(name)

    def zero(self) -> GradedClass:
        return GradedClass(self, {})

    def one(self) -> GradedClass:
        return self.scalar(1)

    def scalar(self, c: int) -> GradedClass:
        return GradedClass(self, {(0,) * self.ngens: c})

    def gen(self, name: str) -> GradedClass:
        e = [0] * self.ngens
        e[self.index(name)] = 1
        return GradedClass(self, {tuple(e): 1})

    def gens(self) -> list[GradedClass]:
        return [self.gen(g.name) for g in self.generators]

    def monomial_degree(self, exps: Sequence[int]) -> int:
        return sum(g.degree * e for g, e in zip(self.generators, exps))

    def monomials(self, degree: int) -> list[tuple[int, ...]]:
        """All surviving monomials of the given degree."""
        bounds = []
        for g in self.generators:
            if g.degree == 0:
                if g.nilpotency is None:
                    raise ValueError(f"degree-0 generator {g.name} must be nilpotent")
                bounds.append(g.nilpotency - 1)
            else:
                cap = degree // g.degree
                if g.nilpotency is not None:
                    cap = min(cap, g.nilpotency - 1)
                bounds.append(cap)
        out = []
        for exps in product(*(range(b + 1) for b in bounds)):
            if self.monomial_degree(exps) == degree and self._survives(exps):
                out.append(exps)
        return out

    def _survives(self, exps) -> bool:
        return all(g.nilpotency is None or e < g.nilpotency for g, e in zip(self.generators, exps))

    def _torsion2(self, exps) -> bool:
        return self.modulus == 2 or any(g.annihilator == 2 and e > 0 for g, e in zip(self.generators, exps))

    def adjoin(self, name: str, degree: int, nilpotency: int | None = None, annihilator: int = 0) -> RingPresentation:
        return RingPresentation(self.modulus, self.generators + (Generator(name, degree, nilpotency, annihilator),))

    def embed(self, c: GradedClass, target: RingPresentation) -> GradedClass:
        """Push a class into a presentation that extends this one by new generators."""
        if c.presentation != self or target.generators[: self.ngens] != self.generators:
            raise PresentationMismatch("target does not extend the source presentation")
        pad = (0,) * (target.ngens - self.ngens)
        return GradedClass(target, {e + pad: v for e, v in c.terms})


class GradedClass:
    """Reduced element of a presented ring: monomial exponent tuple -> coefficient."""

    __slots__ = ("presentation", "terms")

    def __init__(self, presentation: RingPresentation, terms):
        self.presentation = presentation
        acc: dict[tuple[int, ...], int] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for exps, c in items:
            exps = tuple(exps)
            if len(exps) != presentation.ngens:
                raise ValueError("exponent vector length does not match the presentation")
            if not presentation._survives(exps):
                continue
            acc[exps] = acc.get(exps, 0) + c
        cleaned = []
        for exps, c in acc.items():
            if presentation._torsion2(exps):
                c %= 2
            if c:
                cleaned.append((exps, c))
        self.terms = tuple(sorted(cleaned))

    def _check(self, other: GradedClass) -> None:
        if self.presentation != other.presentation:
            raise PresentationMismatch("classes live in different presentations")

    def _lift(self, other) -> GradedClass:
        if isinstance(other, int):
            return self.presentation.scalar(other)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._lift(other)
        return GradedClass(self.presentation, list(self.terms) + list(other.terms))

    __radd__ = __add__

    def __neg__(self) -> GradedClass:
        return GradedClass(self.presentation, [(e, -c) for e, c in self.terms])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return GradedClass(self.presentation, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> GradedClass:
        if n < 0:
            raise ValueError("negative power")
        result = self.presentation.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.presentation.scalar(other)
        if not isinstance(other, GradedClass):
            return NotImplemented
        return self.presentation == other.presentation and self.terms == other.terms

    def __hash__(self):
        return hash((self.presentation, self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degrees(self) -> set[int]:
        return {self.presentation.monomial_degree(e) for e, _ in self.terms}

    @property
    def homogeneous_degree(self) -> int | None:
        """Common degree of all monomials; None for zero or inhomogeneous classes."""
        d = self.degrees()
        return d.pop() if len(d) == 1 else None

    def part(self, degree: int) -> GradedClass:
        pres = self.presentation
        return GradedClass(pres, [(e, c) for e, c in self.terms if pres.monomial_degree(e) == degree])

    def __repr__(self) -> str:
        return f"GradedClass({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        gens = self.presentation.generators
        parts = []
        order = sorted(self.terms, key=lambda t: (self.presentation.monomial_degree(t[0]), [-e for e in t[0]]))
        for exps, c in order:
            mono = "*".join(
                g.name if e == 1 else f"{g.name}^{e}" for g, e in zip(gens, exps) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def ring_arith(a: GradedClass, b: GradedClass, op: str) -> GradedClass:
    a._check(b)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


# -- standard presentations --------------------------------------------------


def pin2_integral() -> RingPresentation:
    """Z[v, w] / <2w, w^2>, deg v = 4, deg w = 2."""
    return RingPresentation(0, (Generator("v", 4), Generator("w", 2, 2, 2)))


def pin2_mod2() -> RingPresentation:
    """Z/2[v, u] / <u^3>, deg v = 4, deg u = 1."""
    return RingPresentation(2, (Generator("v", 4), Generator("u", 1, 3)))


def polynomial_x() -> RingPresentation:
    return RingPresentation(0, (Generator("x", 2),))


def projective_mod2(n: int) -> RingPresentation:
    """H*(RP^n; Z/2) = Z/2[x] / <x^(n+1)>."""
    return RingPresentation(2, (Generator("x", 1, n + 1),))


def torus_mod2(n: int) -> RingPresentation:
    """H*(T^n; Z/2): exterior algebra on t1..tn (squares vanish)."""
    return RingPresentation(2, tuple(Generator(f"t{i}", 1, 2) for i in range(1, n + 1)))


def point_ring(modulus: int = 2) -> RingPresentation:
    return RingPresentation(modulus, ())


# -- Chern / Segre / Euler ---------------------------------------------------


def total_segre(chern: Sequence[GradedClass], length: int) -> list[GradedClass]:
    """Solve c * s = 1 degree by degree: s_k = -sum_{i=1..k} c_i s_(k-i)."""
    if not chern:
        raise ValueError("need at least c_0 = 1")
    pres = chern[0].presentation
    for c in chern:
        chern[0]._check(c)
    if chern[0] != pres.one():
        raise ValueError("c_0 must be 1")
    s = [pres.one()]
    for k in range(1, length + 1):
        acc = pres.zero()
        for i in range(1, min(k, len(chern) - 1) + 1):
            acc = acc + chern[i] * s[k - i]
        s.append(-acc)
    return s


def euler_s1_complex(chern: Sequence[GradedClass], r: int, base: RingPresentation | None = None,
                     var: str = "x") -> GradedClass:
    """x^r + x^(r-1) c_1 + ... + c_r in base[x], deg x = 2."""
    if base is None:
        if not chern:
            raise ValueError("base presentation needed when no Chern classes are given")
        base = chern[0].presentation
    ext = base.adjoin(var, 2)
    x = ext.gen(var)
    total = ext.zero()
    for i in range(r + 1):
        ci = base.one() if i == 0 else (chern[i] if i < len(chern) else base.zero())
        total = total + base.embed(ci, ext) * x ** (r - i)
    return total


def chern_of_sum(a: Sequence[GradedClass], b: Sequence[GradedClass]) -> list[GradedClass]:
    """Whitney sum: convolution of total Chern classes."""
    pres = a[0].presentation
    out = [pres.zero() for _ in range(len(a) + len(b) - 1)]
    for i, ci in enumerate(a):
        for j, cj in enumerate(b):
            out[i + j] = out[i + j] + ci * cj
    return out


# -- flat bundles and Stiefel-Whitney classes --------------------------------


@dataclass(frozen=True)
class Base:
    kind: str  # "point" | "torus" | "rp"
    dim: int = 0

    def __post_init__(self):
        if self.kind not in ("point", "torus", "rp"):
            raise ValueError(f"unknown base kind {self.kind!r}")
        if self.dim < 0 or (self.kind == "point" and self.dim != 0):
            raise ValueError(f"bad dimension {self.dim} for base {self.kind}")

    @classmethod
    def point(cls) -> Base:
        return cls("point", 0)

    @classmethod
    def torus(cls, n: int) -> Base:
        return cls("torus", n)

    @classmethod
    def rp(cls, n: int) -> Base:
        return cls("rp", n)

    def mod2_ring(self) -> RingPresentation:
        if self.kind == "torus":
            return torus_mod2(self.dim)
        if self.kind == "rp":
            return projective_mod2(self.dim)
        return point_ring(2)

    def __str__(self) -> str:
        return {"point": "Point", "torus": f"Torus({self.dim})", "rp": f"RealProjective({self.dim})"}[self.kind]


@dataclass(frozen=True)
class FlatBundleDescriptor:
    """A flat real vector bundle over an explicit base.

    Over a torus: line summands whose w_1 is the sum of the listed generators
    (1-based indices into t1..tn) plus a trivial summand.  Over RP^n: the
    bundle associated to R^u + R^v_- for the antipodal double cover.
    """

    base: Base
    line_summands: tuple[frozenset[int], ...] = ()
    trivial_rank: int = 0
    u: int = 0
    v: int = 0

    def __post_init__(self):
        lines = tuple(frozenset(s) for s in self.line_summands)
        object.__setattr__(self, "line_summands", lines)
        if min(self.trivial_rank, self.u, self.v) < 0:
            raise ValueError("ranks must be nonnegative")
        if self.base.kind == "torus":
            for s in lines:
                bad = [i for i in s if not 1 <= i <= self.base.dim]
                if bad:
                    raise ValueError(f"generator indices {bad} outside 1..{self.base.dim}")
            if self.u or self.v:
                raise ValueError("u, v only apply to real projective bases")
        elif self.base.kind == "rp":
            if lines or self.trivial_rank:
                raise ValueError("over RP^n describe the bundle by (u, v)")
        else:
            if any(lines) or self.u or self.v:
                raise ValueError("a flat bundle over a point is trivial")
            if lines:
                object.__setattr__(self, "trivial_rank", self.trivial_rank + len(lines))
                object.__setattr__(self, "line_summands", ())

    @classmethod
    def trivial(cls, base: Base, rank: int) -> FlatBundleDescriptor:
        if base.kind == "rp":
            return cls(base, u=rank)
        return cls(base, trivial_rank=rank)

    @property
    def rank(self) -> int:
        if self.base.kind == "rp":
            return self.u + self.v
        return len(self.line_summands) + self.trivial_rank

    def direct_sum(self, other: FlatBundleDescriptor) -> FlatBundleDescriptor:
        if self.base != other.base:
            raise ValueError("bundles over different bases")
        return FlatBundleDescriptor(
            self.base,
            self.line_summands + other.line_summands,
            self.trivial_rank + other.trivial_rank,
            self.u + other.u,
            self.v + other.v,
        )

    __add__ = direct_sum


def sw_total(desc: FlatBundleDescriptor) -> GradedClass:
    """Total Stiefel-Whitney class in H*(base; Z/2)."""
    ring = desc.base.mod2_ring()
    if desc.base.kind == "rp":
        return (ring.one() + ring.gen("x")) ** desc.v
    if desc.base.kind == "torus":
        total = ring.one()
        for s in desc.line_summands:
            w1 = ring.zero()
            for i in s:
                w1 = w1 + ring.gen(f"t{i}")
            total = total * (ring.one() + w1)
        return total
    return ring.one()


def sw_class(desc: FlatBundleDescriptor, i: int) -> GradedClass:
    return sw_total(desc).part(i)


def sw_rp_closed_form(n: int, v: int) -> GradedClass:
    """sum_i C(v, i) x^i mod 2 over RP^n, from binomial parities."""
    ring = projective_mod2(n)
    return GradedClass(ring, [((i,), binomial_mod2(v, i)) for i in range(min(n, v) + 1)])


def sw_top_range_nonzero(desc: FlatBundleDescriptor, b_plus: int) -> set[int]:
    """Indices i in {b+, b+-1, b+-2} (i >= 0) with w_i != 0.  w_0 = 1 always."""
    if desc.rank != b_plus:
        raise ValueError(f"bundle rank {desc.rank} differs from b+ = {b_plus}")
    w = sw_total(desc)
    return {i for i in (b_plus, b_plus - 1, b_plus - 2) if i >= 0 and w.part(i)}
