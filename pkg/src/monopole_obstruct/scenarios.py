"""Worked constructions: branched covers with non-smoothable Z_p actions and
non-smoothable mapping-torus families, plus the reproduction catalog."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .charclasses import Base, FlatBundleDescriptor
from .exact import is_prime
from .lattice import Block, IntersectionLattice, SpinCData, parse_lattice
from .obstructions import (
    FamilyHypothesis,
    ObstructionReport,
    Verdict,
    ZpActionHypothesis,
    check_10on8_equivariant,
    check_even_involution,
    check_family_euler,
    check_furuta_point,
    check_point_donaldson,
    check_spin_family_pin,
    check_z2_action,
    check_zp_action,
    check_zp_spin,
)
from .repring import EquivariantIndexData, ZpVirtualRep


@dataclass
class Scenario:
    id: str
    description: str
    hypothesis: FamilyHypothesis | ZpActionHypothesis
    checker: Callable[..., ObstructionReport]
    expected_verdict: Verdict
    flags: dict = field(default_factory=dict)
    narrative: str = ""
    extra: dict = field(default_factory=dict)

    def run(self) -> ObstructionReport:
        return self.checker(self.hypothesis)

    def report(self) -> dict:
        """The checker report plus a ``scenario`` block with flags and notes."""
        out = self.run().to_dict()
        out["scenario"] = {
            "id": self.id,
            "description": self.description,
            "expected_verdict": self.expected_verdict.value,
            "flags": self.flags,
            "narrative": self.narrative,
            **self.extra,
        }
        return out


def scenario_branched_cover(p: int, g: int, b: int) -> Scenario:
    """#g(p-1)(S^2 x S^2) # 2bp(-E8) with the Z_p action from the p-fold cover
    of S^4 branched along a standard genus g surface."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if b < 1:
        raise ValueError("b must be at least 1")
    if g < 0:
        raise ValueError("g must be nonnegative")
    n_h, n_e8 = g * (p - 1), 2 * b * p
    lattice = IntersectionLattice({Block.H: n_h, Block.E8_MINUS: n_e8})
    d_total = 2 * b * p
    # only the total index is determined; placing it in d_0 does not change the verdict
    d = [d_total] + [0] * (p - 1)
    # H+ of the cover has no invariant part; it splits evenly over the nontrivial characters
    h = [0] + [g] * (p - 1)
    hyp = ZpActionHypothesis(p, EquivariantIndexData(p, d), 0, h, lattice, SpinCData.spin())
    flags = {
        "locally_linear_realizable": True,
        "smooth_structure_exists": n_h >= 3 * b * p,
        "wall_realizable": n_h > 3 * b * p,
        "smooth_action_obstructed": True,
    }
    narrative = (
        f"g(p-1) = {n_h}, 3bp = {3 * b * p}. "
        f"(i) the isometry is induced by a locally linear action; "
        f"(ii) {'it is induced by a diffeomorphism of #' + str(n_h - 3 * b * p) + '(S2xS2)#' + str(p * b) + 'K3' if flags['wall_realizable'] else 'realisation by a diffeomorphism is not asserted (g(p-1) <= 3bp)'}; "
        f"(iii) no smooth Z_{p} action induces it, whatever the smooth structure."
    )
    if not flags["smooth_structure_exists"]:
        narrative += " X has no smooth structure from this decomposition; clause (iii) is reported as obstructed-if-smooth."
    return Scenario(
        id=f"branched-cover(p={p},g={g},b={b})",
        description=f"Z_{p} action on #{n_h}(S2xS2)#{n_e8}(-E8)",
        hypothesis=hyp,
        checker=check_zp_action,
        expected_verdict=Verdict.OBSTRUCTED,
        flags=flags,
        narrative=narrative,
    )


def scenario_spin_family(a: int, b: int) -> Scenario:
    """Mapping torus over T^(a-2) of commuting involution-like maps on the
    S^2 x S^2 summands of #a(S^2 x S^2) # 2b(-E8)."""
    if a < 3:
        raise ValueError("a = b+ must be at least 3 (10/8 inequality)")
    if b < 1:
        raise ValueError("b must be at least 1 so that the signature is negative")
    lattice = IntersectionLattice({Block.H: a, Block.E8_MINUS: 2 * b})
    n = a - 2
    bundle = FlatBundleDescriptor(Base.torus(n), [frozenset({i}) for i in range(1, n + 1)], 2)
    hyp = FamilyHypothesis(lattice, SpinCData.spin(), bundle, spin_family=True)
    m = min(lattice.b_plus, lattice.b_minus)
    return Scenario(
        id=f"spin-family(a={a},b={b})",
        description=f"topological family over T^{n} with fibre #{a}(S2xS2)#{2 * b}(-E8)",
        hypothesis=hyp,
        checker=check_spin_family_pin,
        expected_verdict=Verdict.OBSTRUCTED,
        flags={"topological_spin_structure": True, "smoothable": False},
        narrative=(
            f"pi_j(Diff(X)) -> pi_j(Homeo(X)) is not an isomorphism for some j <= min(b+, b-) - 3 = {m - 3} "
            "(obstruction-theoretic consequence, not checked)."
        ),
        extra={"torus_dim": n, "min_b": m, "torus_dim_formula": "min(b+, b-) - 2"},
    )


def scenario_nonspin_family(a: int, b: int, trivialize: bool = False) -> Scenario:
    """#a(S^2 x S^2) # b(-CP^2) # (-E8) # (fake -CP^2) over T^a."""
    if a < 1:
        raise ValueError("a = b+ must be at least 1 (indefinite form)")
    if b < 0:
        raise ValueError("b must be nonnegative")
    lattice = IntersectionLattice({Block.H: a, Block.DIAG_MINUS: b + 1, Block.E8_MINUS: 1})
    spinc = SpinCData(-(b + 1), False)
    if trivialize:
        bundle = FlatBundleDescriptor(Base.torus(a), (), a)
    else:
        bundle = FlatBundleDescriptor(Base.torus(a), [frozenset({i}) for i in range(1, a + 1)], 0)
    hyp = FamilyHypothesis(lattice, spinc, bundle)
    m = min(lattice.b_plus, lattice.b_minus)
    return Scenario(
        id=f"nonspin-family(a={a},b={b}{',trivial' if trivialize else ''})",
        description=f"topological family over T^{a} with fibre #{a}(S2xS2)#{b}(-CP2)#(-E8)#(fake -CP2)",
        hypothesis=hyp,
        checker=check_family_euler,
        expected_verdict=Verdict.CONSISTENT if trivialize else Verdict.OBSTRUCTED,
        flags={"fake_blocks": 1, "kirby_siebenmann_nontrivial": True, "smoothable": trivialize or None},
        narrative=(
            f"pi_j(Diff(X)) -> pi_j(Homeo(X)) is not an isomorphism for some j <= min(b+, b-) - 1 = {m - 1} "
            "(obstruction-theoretic consequence, not checked)."
            if not trivialize else "H+ bundle trivialised: the Euler class test is silent."
        ),
        extra={"torus_dim": a, "min_b": m, "torus_dim_formula": "min(b+, b-)"},
    )


# -- catalog -------------------------------------------------------------------


@dataclass
class CatalogEntry:
    name: str
    expected: Verdict
    run: Callable[[], ObstructionReport]
    extra_check: Callable[[ObstructionReport], bool] | None = None


def _scenario_entry(s: Scenario, check=None) -> CatalogEntry:
    return CatalogEntry(s.id, s.expected_verdict, s.run, check)


def catalog_entries() -> list[CatalogEntry]:
    L = parse_lattice
    entries = [
        CatalogEntry("donaldson E8m spin", Verdict.OBSTRUCTED,
                     lambda: check_point_donaldson(L("E8m"), SpinCData.spin()),
                     lambda r: r.witness["d"] == 1),
        CatalogEntry("donaldson 8D1m c2=-8", Verdict.CONSISTENT,
                     lambda: check_point_donaldson(L("8D1m"), SpinCData(-8)),
                     lambda r: r.witness["d"] == 0),
        CatalogEntry("furuta b+=2 sigma=-16", Verdict.OBSTRUCTED, lambda: check_furuta_point(L("2H+2E8m"))),
        CatalogEntry("furuta b+=3 sigma=-16 (K3)", Verdict.CONSISTENT, lambda: check_furuta_point(L("3H+2E8m"))),
        CatalogEntry("furuta b+=4 sigma=-32", Verdict.OBSTRUCTED, lambda: check_furuta_point(L("4H+4E8m"))),
        CatalogEntry("furuta b+=5 sigma=-32", Verdict.CONSISTENT, lambda: check_furuta_point(L("5H+4E8m"))),
        CatalogEntry("furuta b+=6 sigma=-48", Verdict.OBSTRUCTED, lambda: check_furuta_point(L("6H+6E8m"))),
        CatalogEntry("furuta b+=7 sigma=-48", Verdict.CONSISTENT, lambda: check_furuta_point(L("7H+6E8m"))),
        CatalogEntry("even involution inv_dim=2", Verdict.OBSTRUCTED, lambda: check_even_involution(-16, 2, "even", 3)),
        CatalogEntry("even involution inv_dim=3", Verdict.CONSISTENT, lambda: check_even_involution(-16, 3, "even", 3)),
        CatalogEntry(
            "z2 action d+=1 d-=-1", Verdict.OBSTRUCTED,
            lambda: check_z2_action(ZpActionHypothesis(2, EquivariantIndexData(2, [1, -1]), 0, [0, 2])),
            lambda r: r.witness["sign"] == "+" and r.witness["certificate"]["is_polynomial"] is False,
        ),
        CatalogEntry(
            "z2 action d+=d-=0", Verdict.CONSISTENT,
            lambda: check_z2_action(ZpActionHypothesis(2, EquivariantIndexData(2, [0, 0]), 0, [0, 2])),
        ),
        CatalogEntry(
            "z5 action d=(0,0,1,-1,0)", Verdict.OBSTRUCTED,
            lambda: check_zp_action(ZpActionHypothesis(5, EquivariantIndexData(5, [0, 0, 1, -1, 0]), 0, [0, 1, 2, 2, 1])),
            lambda r: r.witness["j"] == 2 and r.witness["relabelled_certificate"]["is_polynomial"] is False,
        ),
        CatalogEntry("zp-spin d0=3 inv_dim=2", Verdict.OBSTRUCTED, lambda: check_zp_spin(3, 2)),
        CatalogEntry("zp-spin d0=0 inv_dim=1", Verdict.CONSISTENT, lambda: check_zp_spin(0, 1)),
        CatalogEntry(
            "10/8 equivariant p=3 H+=2C0 V=C1+C2", Verdict.OBSTRUCTED,
            lambda: check_10on8_equivariant(3, ZpVirtualRep(3, [2, 0, 0]), ZpVirtualRep(3, [0, 1, 1]), ZpVirtualRep(3, [0, 0, 0])),
        ),
        _scenario_entry(
            scenario_branched_cover(3, 5, 1),
            lambda r: r.inputs_echo["lattice"] == "10H+6E8m" and sum(r.witness["d"]) == 6,
        ),
        _scenario_entry(
            scenario_branched_cover(5, 12, 1),
            lambda r: r.inputs_echo["lattice"] == "48H+10E8m" and sum(r.witness["d"]) == 10,
        ),
        _scenario_entry(
            scenario_spin_family(3, 1),
            lambda r: r.witness["nonzero_sw_indices"] == [1] and r.inputs_echo["base"] == {"kind": "torus", "dim": 1},
        ),
        _scenario_entry(
            scenario_nonspin_family(1, 0),
            lambda r: r.witness["nonzero_class_degree"] == 1 and r.inputs_echo["base"] == {"kind": "torus", "dim": 1},
        ),
        _scenario_entry(scenario_nonspin_family(1, 0, trivialize=True)),
    ]
    return entries


@dataclass
class CatalogRow:
    name: str
    expected: str
    got: str
    ok: bool


def run_catalog() -> list[CatalogRow]:
    rows = []
    for e in catalog_entries():
        try:
            rep = e.run()
            ok = rep.verdict is e.expected and (e.extra_check is None or bool(e.extra_check(rep)))
            got = rep.verdict.value
        except Exception as exc:  # a crash is a mismatch, not a catalog abort
            ok, got = False, f"error: {exc}"
        rows.append(CatalogRow(e.name, e.expected.value, got, ok))
    return rows
