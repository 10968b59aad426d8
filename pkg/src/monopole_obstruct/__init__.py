"""Smoothness obstructions for closed 4-manifolds, their families and cyclic
group actions, from monopole-map index constraints."""

from __future__ import annotations

from .exact import Cyclotomic, FactoredRational, LaurentPoly, binomial_mod2, is_polynomial, laurent_exact_divide
from .lattice import IntersectionLattice, SpinCData, dirac_index, lattice_invariants, parse_lattice
from .charclasses import Base, FlatBundleDescriptor, GradedClass, RingPresentation, sw_class, sw_total, total_segre
from .repring import Pin2Element, ZpVirtualRep, k_euler, lambda_total, psi2, repring_divide
from .obstructions import (
    FamilyHypothesis,
    ObstructionReport,
    Theorem,
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
from .scenarios import run_catalog, scenario_branched_cover, scenario_nonspin_family, scenario_spin_family
from .serialize import run_checker

__version__ = "0.1.0"
