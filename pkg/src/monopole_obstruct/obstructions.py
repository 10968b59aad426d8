"""Decision procedures for smoothness obstructions.

Every checker is contrapositive: a verdict of ``obstructed`` means the input
violates a necessary condition for a smooth realisation.  ``consistent`` only
means that this particular test is silent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Sequence

from .charclasses import Base, FlatBundleDescriptor, GradedClass, sw_total, sw_top_range_nonzero
from .exact import Cyclotomic, FactoredRational, LaurentPoly, cyclotomic_ring, is_polynomial, is_prime
from .lattice import Block, IntersectionLattice, SpinCData, dirac_index
from .repring import (
    EquivariantIndexData,
    DomainError,
    ZpVirtualRep,
    character_at,
    character_divisibility_failure,
    k_euler,
    lambda_total,
    psi2,
    repring_divide,
)


class Verdict(str, Enum):
    OBSTRUCTED = "obstructed"
    CONSISTENT = "consistent"
    NOT_APPLICABLE = "not_applicable"

    def __str__(self) -> str:
        return self.value


class Theorem(str, Enum):
    DONALDSON = "donaldson"
    FAMILY_EULER = "family-euler"
    SPIN_FAMILY = "spin-family"
    FURUTA = "furuta"
    Z2_ACTION = "z2"
    EVEN_INVOLUTION = "even-involution"
    ZP_ACTION = "zp"
    ZP_SPIN = "zp-spin"
    TEN_EIGHTHS_EQUIVARIANT = "ten-eighths-equivariant"

    def __str__(self) -> str:
        return self.value


@dataclass
class ObstructionReport:
    verdict: Verdict
    theorem: Theorem
    witness: dict = field(default_factory=dict)
    inputs_echo: dict = field(default_factory=dict)

    def __post_init__(self):
        self.verdict = Verdict(self.verdict)
        self.theorem = Theorem(self.theorem)
        if self.verdict is Verdict.OBSTRUCTED and not self.witness:
            raise ValueError("an obstructed verdict needs a witness")

    @property
    def obstructed(self) -> bool:
        return self.verdict is Verdict.OBSTRUCTED

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "theorem": self.theorem.value,
            "witness": self.witness,
            "inputs_echo": self.inputs_echo,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data: dict) -> ObstructionReport:
        return cls(data["verdict"], data["theorem"], data.get("witness", {}), data.get("inputs_echo", {}))


# -- hypotheses ---------------------------------------------------------------


@dataclass(frozen=True)
class FamilyHypothesis:
    lattice: IntersectionLattice
    spinc: SpinCData
    hplus_bundle: FlatBundleDescriptor
    segre_data: tuple[GradedClass, ...] | None = None  # s_1(D), s_2(D), ... (mod 2, in the base ring)
    spin_family: bool = False

    def __post_init__(self):
        self.spinc.validate(self.lattice)
        if self.spin_family and not self.spinc.is_spin:
            raise ValueError("a spin family needs a spin characteristic (c = 0)")

    @property
    def base(self) -> Base:
        return self.hplus_bundle.base

    def check_rank(self) -> None:
        if self.hplus_bundle.rank != self.lattice.b_plus:
            raise ValueError(
                f"H+ bundle has rank {self.hplus_bundle.rank} but b+ = {self.lattice.b_plus}"
            )


@dataclass(frozen=True)
class ZpActionHypothesis:
    """A Z_p action (p prime, 2 allowed) with a lift to the spinor bundles."""

    p: int
    index: EquivariantIndexData
    inv_dim: int
    h: tuple[int, ...] | None = None
    lattice: IntersectionLattice | None = None
    spinc: SpinCData | None = None
    type_flag: str | None = None
    b_plus_given: int | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.index.p != self.p:
            raise ValueError("index data has the wrong group order")
        if self.inv_dim < 0:
            raise ValueError("invariant dimension must be nonnegative")
        if self.h is not None:
            h = tuple(self.h)
            object.__setattr__(self, "h", h)
            if len(h) != self.p or min(h) < 0:
                raise ValueError(f"h must be {self.p} nonnegative integers")
            if any(h[j] != h[-j % self.p] for j in range(self.p)):
                raise ValueError("eigenspace dimensions of a complexification satisfy h_j = h_(p-j)")
            if h[0] != self.inv_dim:
                raise ValueError("h_0 must equal the invariant dimension")
        if self.type_flag not in (None, "even", "odd"):
            raise ValueError("type must be 'even' or 'odd'")
        if self.lattice is not None and self.spinc is not None:
            d = dirac_index(self.lattice, self.spinc)
            if d != self.index.total:
                raise ValueError(f"eigenspace dimensions sum to {self.index.total}, index is {d}")
        bp = self.b_plus
        if bp is not None and self.inv_dim > bp:
            raise ValueError("invariant subspace larger than H+")
        if self.h is not None and bp is not None and sum(self.h) != bp:
            raise ValueError(f"sum of h_j is {sum(self.h)} but b+ = {bp}")

    @property
    def b_plus(self) -> int | None:
        if self.b_plus_given is not None:
            return self.b_plus_given
        if self.lattice is not None:
            return self.lattice.b_plus
        if self.h is not None:
            return sum(self.h)
        return None


# -- echo helpers (stable JSON hypothesis schema) -----------------------------


def echo_lattice(L: IntersectionLattice, s: SpinCData | None = None) -> dict:
    out = {"lattice": str(L)}
    if s is not None:
        out["c2"] = s.c_squared
        out["spin"] = s.is_spin
    return out


def echo_bundle(desc: FlatBundleDescriptor) -> dict:
    base = {"kind": desc.base.kind, "dim": desc.base.dim}
    if desc.base.kind == "rp":
        hplus = {"u": desc.u, "v": desc.v}
    else:
        hplus = {"lines": [sorted(s) for s in desc.line_summands], "trivial": desc.trivial_rank}
    return {"base": base, "hplus": hplus}


def echo_family(h: FamilyHypothesis) -> dict:
    out = echo_lattice(h.lattice, h.spinc)
    out.update(echo_bundle(h.hplus_bundle))
    if h.spin_family:
        out["spin_family"] = True
    if h.segre_data is not None:
        # mod 2 classes as lists of exponent vectors
        out["segre"] = [[list(e) for e, _ in s.terms] for s in h.segre_data]
    return out


def echo_action(hyp: ZpActionHypothesis) -> dict:
    out: dict = {}
    if hyp.lattice is not None:
        out.update(echo_lattice(hyp.lattice, hyp.spinc))
    if hyp.b_plus_given is not None:
        out["b_plus"] = hyp.b_plus_given
    action = {"p": hyp.p, "d": list(hyp.index.d), "inv_dim": hyp.inv_dim}
    if hyp.h is not None:
        action["h"] = list(hyp.h)
    if hyp.type_flag is not None:
        action["type"] = hyp.type_flag
    out["action"] = action
    return out


def _na(theorem: Theorem, reason: str, echo: dict) -> ObstructionReport:
    return ObstructionReport(Verdict.NOT_APPLICABLE, theorem, {"reason": reason}, echo)


# -- point / family checkers -------------------------------------------------


def check_point_donaldson(L: IntersectionLattice, s: SpinCData) -> ObstructionReport:
    """With b+ = 0 the index d must be <= 0."""
    echo = echo_lattice(L, s)
    d = dirac_index(L, s)
    if L.b_plus != 0:
        return _na(Theorem.DONALDSON, "b+ > 0", echo)
    witness = {"d": d, "c2": s.c_squared, "sigma": L.signature}
    if d > 0:
        witness["violated"] = f"d = {d} > 0 (c^2 = {s.c_squared} > sigma = {L.signature})"
        return ObstructionReport(Verdict.OBSTRUCTED, Theorem.DONALDSON, witness, echo)
    return ObstructionReport(Verdict.CONSISTENT, Theorem.DONALDSON, witness, echo)


def check_family_euler(h: FamilyHypothesis) -> ObstructionReport:
    """Nonzero Euler class of H+ forces d <= 0 and e(H+) s_j(D) = 0 for j > -d.

    Nonvanishing of the Euler class is certified through its mod 2 reduction,
    the top Stiefel-Whitney class.
    """
    h.check_rank()
    echo = echo_family(h)
    bp = h.lattice.b_plus
    d = dirac_index(h.lattice, h.spinc)
    top = sw_total(h.hplus_bundle).part(bp)
    witness: dict = {"d": d, "b_plus": bp, "top_sw_class": str(top), "base": str(h.base)}
    if not top:
        witness["note"] = f"w_{bp}(H+) = 0; Euler class test is silent"
        return ObstructionReport(Verdict.CONSISTENT, Theorem.FAMILY_EULER, witness, echo)
    if d > 0:
        witness["violated"] = f"w_{bp}(H+) = {top} != 0 but d = {d} > 0"
        witness["nonzero_class_degree"] = bp
        return ObstructionReport(Verdict.OBSTRUCTED, Theorem.FAMILY_EULER, witness, echo)
    if h.segre_data:
        ring = top.presentation
        for j, s in enumerate(h.segre_data, start=1):
            if j <= -d:
                continue
            if s.presentation != ring:
                raise ValueError(f"s_{j}(D) must live in the mod 2 ring of {h.base}")
            prod = top * s
            if prod:
                witness["segre_index"] = j
                witness["violated"] = f"w_{bp}(H+) * s_{j}(D) = {prod} != 0 with j = {j} > -d = {-d}"
                return ObstructionReport(Verdict.OBSTRUCTED, Theorem.FAMILY_EULER, witness, echo)
    return ObstructionReport(Verdict.CONSISTENT, Theorem.FAMILY_EULER, witness, echo)


def check_spin_family_pin(h: FamilyHypothesis) -> ObstructionReport:
    """Spin family: w_i(H+) != 0 for some i in {b+, b+-1, b+-2} forces d <= 0."""
    echo = echo_family(h)
    if not h.spin_family:
        return _na(Theorem.SPIN_FAMILY, "family is not spin", echo)
    h.check_rank()
    bp = h.lattice.b_plus
    d = dirac_index(h.lattice, h.spinc)
    nonzero = sorted(sw_top_range_nonzero(h.hplus_bundle, bp), reverse=True)
    witness = {"d": d, "b_plus": bp, "nonzero_sw_indices": nonzero, "base": str(h.base)}
    if nonzero and d > 0:
        i = nonzero[0]
        witness["violated"] = f"w_{i}(H+) != 0 with i >= b+ - 2 but d = {d} > 0"
        return ObstructionReport(Verdict.OBSTRUCTED, Theorem.SPIN_FAMILY, witness, echo)
    return ObstructionReport(Verdict.CONSISTENT, Theorem.SPIN_FAMILY, witness, echo)


def check_furuta_point(L: IntersectionLattice, b_plus_override: int | None = None) -> ObstructionReport:
    """b+ >= d + 1 for a smooth spin manifold with negative signature (b+ >= 1)."""
    echo = echo_lattice(L, SpinCData.spin() if L.is_even else None)
    if b_plus_override is not None:
        echo["b_plus"] = b_plus_override
    if not L.is_even:
        return _na(Theorem.FURUTA, "odd lattice", echo)
    sigma = L.signature
    if sigma >= 0:
        return _na(Theorem.FURUTA, "signature >= 0", echo)
    bp = L.b_plus if b_plus_override is None else b_plus_override
    if sigma % 16:
        witness = {"kind": "index-integrality", "sigma": sigma,
                   "violated": f"quaternionic index -sigma/16 = {-sigma}/16 is not an integer"}
        return ObstructionReport(Verdict.OBSTRUCTED, Theorem.FURUTA, witness, echo)
    d = -sigma // 8
    witness = {"d": d, "b_plus": bp, "sigma": sigma}
    if bp >= 1:
        witness["form"] = "refined"
        if bp < d + 1:
            witness["violated"] = f"b+ = {bp} < d + 1 = {d + 1}"
            return ObstructionReport(Verdict.OBSTRUCTED, Theorem.FURUTA, witness, echo)
    else:
        witness["form"] = "unrefined"
        if d > 0:
            witness["violated"] = f"b+ = 0 and d = {d} > 0"
            return ObstructionReport(Verdict.OBSTRUCTED, Theorem.FURUTA, witness, echo)
    return ObstructionReport(Verdict.CONSISTENT, Theorem.FURUTA, witness, echo)


# -- Z_2 actions ---------------------------------------------------------------


def z2_certificate(b_plus: int, d_plus: int, d_minus: int) -> tuple[FactoredRational, tuple]:
    """The rational function 2^b+ (1-t)^(2a'+ - 2a+) (1+t)^(2a'- - 2a-) at the
    minimal nonnegative instantiation a' = max(0, -d), a = a' + d."""
    ap_plus, ap_minus = max(0, -d_plus), max(0, -d_minus)
    a_plus, a_minus = ap_plus + d_plus, ap_minus + d_minus
    r = FactoredRational(
        2,
        2 ** b_plus,
        [(0, 2 * ap_plus), (1, 2 * ap_minus), (0, -2 * a_plus), (1, -2 * a_minus)],
    )
    return r, is_polynomial(r)


def check_z2_action(hyp: ZpActionHypothesis) -> ObstructionReport:
    """H+ with no invariant part forces d_+, d_- <= 0."""
    echo = echo_action(hyp)
    if hyp.p != 2:
        return _na(Theorem.Z2_ACTION, "p != 2", echo)
    if hyp.inv_dim != 0:
        return _na(Theorem.Z2_ACTION, "H+ has nonzero invariant part", echo)
    bp = hyp.b_plus
    if bp is None:
        raise ValueError("b+ is needed (give a lattice, h, or b_plus)")
    d_plus, d_minus = hyp.index.d
    r, cert = z2_certificate(bp, d_plus, d_minus)
    failing = [s for s, v in (("+", d_plus), ("-", d_minus)) if v > 0]
    witness = {
        "d_plus": d_plus,
        "d_minus": d_minus,
        "certificate": {
            "numerator": 2 ** bp,
            "factors": [list(f) for f in r.net_multiplicities().items()],
            "is_polynomial": cert.ok,
            "root_index": cert.witness,
        },
    }
    if failing:
        witness["sign"] = failing[0]
        witness["violated"] = f"d_{failing[0]} = {d_plus if failing[0] == '+' else d_minus} > 0"
        return ObstructionReport(Verdict.OBSTRUCTED, Theorem.Z2_ACTION, witness, echo)
    return ObstructionReport(Verdict.CONSISTENT, Theorem.Z2_ACTION, witness, echo)


def even_involution_family(sigma: int, inv_dim: int, b_plus: int) -> FamilyHypothesis:
    """The Borel family over RP^b+ with H+ = R^u + R^v_-, u = inv_dim."""
    if sigma % 8:
        raise ValueError("a spin manifold has signature divisible by 8")
    if not 0 <= inv_dim <= b_plus:
        raise ValueError("need 0 <= inv_dim <= b+")
    E8 = Block.E8_MINUS if sigma <= 0 else Block.E8_PLUS
    lattice = IntersectionLattice({Block.H: b_plus, E8: abs(sigma) // 8})
    bundle = FlatBundleDescriptor(Base.rp(b_plus), u=inv_dim, v=b_plus - inv_dim)
    return FamilyHypothesis(lattice, SpinCData.spin(), bundle, spin_family=True)


def check_even_involution(sigma: int, inv_dim: int, type_flag: str, b_plus: int | None = None) -> ObstructionReport:
    """An even-type spin involution with negative signature has dim (H+)^G >= 3."""
    if b_plus is None:
        b_plus = max(inv_dim, 3)
    echo = {"sigma": sigma, "b_plus": b_plus, "action": {"p": 2, "inv_dim": inv_dim, "type": type_flag}}
    if type_flag != "even":
        return _na(Theorem.EVEN_INVOLUTION, "odd type involution", echo)
    if sigma >= 0:
        return _na(Theorem.EVEN_INVOLUTION, "signature >= 0", echo)
    family = even_involution_family(sigma, inv_dim, b_plus)
    inner = check_spin_family_pin(family)
    v = b_plus - inv_dim
    witness = {
        "inv_dim": inv_dim,
        "bound": 3,
        "family": {"base": f"RealProjective({b_plus})", "u": inv_dim, "v": v},
        "nonzero_sw_indices": inner.witness["nonzero_sw_indices"],
        "family_verdict": inner.verdict.value,
    }
    if inv_dim <= 2:
        witness["violated"] = f"dim H+^Z2 = {inv_dim} < 3; w_{v}(H+) = x^{v} != 0 with v >= b+ - 2"
        return ObstructionReport(Verdict.OBSTRUCTED, Theorem.EVEN_INVOLUTION, witness, echo)
    return ObstructionReport(Verdict.CONSISTENT, Theorem.EVEN_INVOLUTION, witness, echo)


# -- Z_p actions ---------------------------------------------------------------


@lru_cache(maxsize=1024)
def _zp_numerator(p: int, h: tuple[int, ...]) -> LaurentPoly:
    numerator = Cyclotomic.one(p)
    for j in range(1, p):
        numerator = numerator * (1 - Cyclotomic.root_power(p, j)) ** h[j]
    return LaurentPoly.constant(cyclotomic_ring(p), numerator)


def zp_certificate(p: int, d: Sequence[int], h: Sequence[int] | None = None) -> tuple[FactoredRational, tuple]:
    """prod_{j>=1} (1 - w^j)^h_j * prod_j (1 - w^j t)^-(d_j + d_(p-j))."""
    numerator = _zp_numerator(p, tuple(h) if h is not None else (0,) * p)
    factors = [(j, -(d[j] + d[-j % p])) for j in range(p)]
    r = FactoredRational(p, numerator, factors)
    return r, is_polynomial(r)


def check_zp_action(hyp: ZpActionHypothesis) -> ObstructionReport:
    """H+ with no invariant part forces d_j <= 0 for every j (p odd)."""
    echo = echo_action(hyp)
    if hyp.p == 2:
        return _na(Theorem.ZP_ACTION, "p must be odd (use the Z_2 checker)", echo)
    if hyp.inv_dim != 0:
        return _na(Theorem.ZP_ACTION, "H+ has nonzero invariant part", echo)
    d = hyp.index.d
    _, cert = zp_certificate(hyp.p, d, hyp.h)
    witness: dict = {
        "d": list(d),
        "certificate": {"is_polynomial": cert.ok, "root_index": cert.witness},
    }
    failing = [j for j in range(hyp.p) if d[j] > 0]
    if failing:
        j = failing[0]
        # relabelling the lift moves eigenspace j to 0, where the factor has exponent -2 d_j
        relabelled = hyp.index.relabel(j)
        _, rcert = zp_certificate(hyp.p, relabelled.d, hyp.h)
        witness["j"] = j
        witness["relabelled_certificate"] = {
            "shift": j,
            "d": list(relabelled.d),
            "is_polynomial": rcert.ok,
            "root_index": rcert.witness,
        }
        witness["violated"] = f"d_{j} = {d[j]} > 0"
        return ObstructionReport(Verdict.OBSTRUCTED, Theorem.ZP_ACTION, witness, echo)
    return ObstructionReport(Verdict.CONSISTENT, Theorem.ZP_ACTION, witness, echo)


def check_zp_spin(d0: int, inv_dim: int) -> ObstructionReport:
    """Spin Z_p action with nonzero invariant H+: dim (H+)^G >= d_0 + 1."""
    echo = {"action": {"d": [d0], "inv_dim": inv_dim}}
    if inv_dim == 0:
        return _na(Theorem.ZP_SPIN, "H+ has no invariant part", echo)
    witness = {"d0": d0, "inv_dim": inv_dim}
    if inv_dim < d0 + 1:
        witness["violated"] = f"dim H+^G = {inv_dim} < d_0 + 1 = {d0 + 1}"
        return ObstructionReport(Verdict.OBSTRUCTED, Theorem.ZP_SPIN, witness, echo)
    return ObstructionReport(Verdict.CONSISTENT, Theorem.ZP_SPIN, witness, echo)


def check_10on8_equivariant(p: int, hplus_c: ZpVirtualRep, V: ZpVirtualRep, Vp: ZpVirtualRep) -> ObstructionReport:
    """Lambda(H+_C) Lambda(psi2 V') must be a multiple of Lambda(psi2 V) in R(Z_p),
    of 2 Lambda(psi2 V) when the K-theoretic Euler class of H+_C vanishes."""
    echo = {"action": {"p": p, "hplus_c": list(hplus_c.mult), "V": list(V.mult), "Vp": list(Vp.mult)}}
    for name, r in (("H+_C", hplus_c), ("V", V), ("V'", Vp)):
        if r.p != p:
            raise DomainError(f"{name} is a representation of Z_{r.p}, expected Z_{p}")
        if not r.is_genuine:
            raise DomainError(f"{name} must be a genuine representation")
        if not r.is_self_conjugate:
            raise DomainError(f"{name} must satisfy mult[j] = mult[p-j]")
    for name, r in (("V", V), ("V'", Vp)):
        if r.rank % 2:
            raise DomainError(f"{name} is quaternionic and must have even complex rank")
    A = lambda_total(hplus_c) * lambda_total(psi2(Vp))
    Bv = lambda_total(psi2(V))
    refined = k_euler(hplus_c).is_zero()
    divisor = Bv * 2 if refined else Bv
    result = repring_divide(A, divisor)
    witness: dict = {
        "form": "refined" if refined else "unrefined",
        "lhs": list(A.mult),
        "divisor": list(divisor.mult),
        "d": V.rank - Vp.rank,
    }
    if result.quotient is not None:
        witness["eta"] = list(result.quotient.mult)
        return ObstructionReport(Verdict.CONSISTENT, Theorem.TEN_EIGHTHS_EQUIVARIANT, witness, echo)
    k = character_divisibility_failure(A, divisor)
    if k is not None:
        witness["character_index"] = k
        witness["violated"] = (
            f"tr_{k}(lhs) = {_fmt(A, k)} is not a multiple of tr_{k}(divisor) = {_fmt(divisor, k)} in Z[w]"
        )
    else:
        witness["circulant"] = result.reason
        witness["violated"] = f"no integral eta: circulant system is {result.reason}"
    return ObstructionReport(Verdict.OBSTRUCTED, Theorem.TEN_EIGHTHS_EQUIVARIANT, witness, echo)


def _fmt(r: ZpVirtualRep, k: int) -> str:
    return str(character_at(r, k))
