"""JSON hypothesis input.

Schema (all keys optional unless a checker needs them)::

    {"lattice": "10H+6E8m", "c2": 0, "spin": true,
     "base": {"kind": "point" | "torus" | "rp", "dim": 3},
     "hplus": {"lines": [[1], [2, 3]], "trivial": 1} | {"u": 2, "v": 3},
     "spin_family": true,
     "segre": [[[0, 1, 0], ...], ...],
     "sigma": -16, "b_plus": 3,
     "action": {"p": 3, "d": [6, 0, 0], "h": [0, 5, 5], "inv_dim": 0,
                "type": "even" | "odd",
                "hplus_c": [...], "V": [...], "Vp": [...]}}

A checker report may be fed back in; its ``inputs_echo`` is used.
"""

from __future__ import annotations

from .charclasses import Base, FlatBundleDescriptor, GradedClass
from .lattice import IntersectionLattice, SpinCData, parse_lattice
from .obstructions import (
    FamilyHypothesis,
    ObstructionReport,
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

CHECKERS = (
    "donaldson",
    "furuta",
    "family-euler",
    "spin-family",
    "z2",
    "even-involution",
    "zp",
    "zp-spin",
    "ten-eighths-equivariant",
)


class HypothesisError(ValueError):
    pass


def _need(data: dict, key: str, where: str = ""):
    if key not in data:
        raise HypothesisError(f"missing key {where + key!r}")
    return data[key]


def unwrap(data: dict) -> dict:
    return data["inputs_echo"] if "inputs_echo" in data else data


def lattice_from(data: dict) -> IntersectionLattice:
    return parse_lattice(str(_need(data, "lattice")))


def spinc_from(data: dict, L: IntersectionLattice) -> SpinCData:
    spin = bool(data.get("spin", False))
    if "c2" in data:
        s = SpinCData(int(data["c2"]), spin)
    elif spin:
        s = SpinCData.spin()
    else:
        raise HypothesisError("give 'c2' or 'spin': true")
    s.validate(L)
    return s


def bundle_from(data: dict) -> FlatBundleDescriptor:
    b = _need(data, "base")
    base = Base(b["kind"], int(b.get("dim", 0)))
    hp = _need(data, "hplus")
    if base.kind == "rp":
        return FlatBundleDescriptor(base, u=int(hp.get("u", 0)), v=int(hp.get("v", 0)))
    lines = [frozenset(int(i) for i in s) for s in hp.get("lines", [])]
    return FlatBundleDescriptor(base, lines, int(hp.get("trivial", 0)))


def family_from(data: dict) -> FamilyHypothesis:
    L = lattice_from(data)
    s = spinc_from(data, L)
    bundle = bundle_from(data)
    segre = None
    if "segre" in data:
        ring = bundle.base.mod2_ring()
        segre = tuple(GradedClass(ring, [(tuple(e), 1) for e in cls]) for cls in data["segre"])
    spin_family = bool(data.get("spin_family", s.is_spin))
    return FamilyHypothesis(L, s, bundle, segre, spin_family)


def action_from(data: dict) -> ZpActionHypothesis:
    act = _need(data, "action")
    p = int(_need(act, "p", "action."))
    d = [int(x) for x in _need(act, "d", "action.")]
    L = lattice_from(data) if "lattice" in data else None
    s = spinc_from(data, L) if L is not None and ("c2" in data or data.get("spin")) else None
    return ZpActionHypothesis(
        p,
        EquivariantIndexData(p, d),
        int(act.get("inv_dim", 0)),
        tuple(int(x) for x in act["h"]) if "h" in act else None,
        L,
        s,
        act.get("type"),
        int(data["b_plus"]) if "b_plus" in data else None,
    )


def run_checker(name: str, data: dict) -> ObstructionReport:
    data = unwrap(data)
    if name == "donaldson":
        L = lattice_from(data)
        return check_point_donaldson(L, spinc_from(data, L))
    if name == "furuta":
        return check_furuta_point(lattice_from(data), data.get("b_plus"))
    if name == "family-euler":
        return check_family_euler(family_from(data))
    if name == "spin-family":
        return check_spin_family_pin(family_from(data))
    if name == "z2":
        return check_z2_action(action_from(data))
    if name == "zp":
        return check_zp_action(action_from(data))
    if name == "even-involution":
        act = _need(data, "action")
        if "sigma" in data:
            sigma = int(data["sigma"])
            bp = data.get("b_plus")
        else:
            L = lattice_from(data)
            sigma, bp = L.signature, data.get("b_plus", L.b_plus)
        return check_even_involution(sigma, int(_need(act, "inv_dim", "action.")), act.get("type", "even"), bp)
    if name == "zp-spin":
        act = _need(data, "action")
        d = act.get("d", [act.get("d0")])
        if d[0] is None:
            raise HypothesisError("missing action.d")
        return check_zp_spin(int(d[0]), int(_need(act, "inv_dim", "action.")))
    if name == "ten-eighths-equivariant":
        act = _need(data, "action")
        p = int(_need(act, "p", "action."))
        reps = [ZpVirtualRep(p, _need(act, k, "action.")) for k in ("hplus_c", "V", "Vp")]
        return check_10on8_equivariant(p, *reps)
    raise HypothesisError(f"unknown checker {name!r}; choose from {', '.join(CHECKERS)}")
