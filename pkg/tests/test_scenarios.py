from __future__ import annotations

import subprocess
import sys
from pathlib import Path

import pytest

from monopole_obstruct.lattice import dirac_index, parse_lattice
from monopole_obstruct.obstructions import Verdict
from monopole_obstruct.scenarios import (
    catalog_entries,
    run_catalog,
    scenario_branched_cover,
    scenario_nonspin_family,
    scenario_spin_family,
)


def test_branched_cover_3_5_1():
    s = scenario_branched_cover(3, 5, 1)
    hyp = s.hypothesis
    assert hyp.lattice == parse_lattice("10H+6E8m")
    assert dirac_index(hyp.lattice, hyp.spinc) == 6 == hyp.index.total
    assert s.flags == {
        "locally_linear_realizable": True,
        "smooth_structure_exists": True,
        "wall_realizable": True,
        "smooth_action_obstructed": True,
    }
    assert s.run().verdict is Verdict.OBSTRUCTED


@pytest.mark.parametrize("p,g", [(3, 4), (5, 3)])
def test_branched_cover_below_threshold(p, g):
    s = scenario_branched_cover(p, g, 1)
    assert s.flags["smooth_structure_exists"] is False and s.flags["wall_realizable"] is False
    assert s.run().verdict is Verdict.OBSTRUCTED
    assert "obstructed-if-smooth" in s.narrative


def test_branched_cover_boundary():
    # g(p-1) = 3bp exactly: smooth structure but no Wall realisation
    s = scenario_branched_cover(3, 9, 2)
    assert s.flags["smooth_structure_exists"] and not s.flags["wall_realizable"]


@pytest.mark.parametrize("args", [(2, 5, 1), (9, 5, 1), (3, 5, 0)])
def test_branched_cover_errors(args):
    with pytest.raises(ValueError):
        scenario_branched_cover(*args)


def test_spin_family():
    s = scenario_spin_family(3, 1)
    rep = s.run()
    assert rep.verdict is Verdict.OBSTRUCTED and rep.witness["nonzero_sw_indices"] == [1]
    assert s.extra["torus_dim"] == 1 == s.extra["min_b"] - 2
    rep = scenario_spin_family(4, 1).run()
    assert rep.witness["nonzero_sw_indices"] == [2] and rep.obstructed
    with pytest.raises(ValueError):
        scenario_spin_family(3, 0)
    with pytest.raises(ValueError):
        scenario_spin_family(2, 1)


def test_nonspin_family():
    s = scenario_nonspin_family(1, 0)
    L = s.hypothesis.lattice
    assert L.signature == -9 and s.hypothesis.spinc.c_squared == -1
    rep = s.run()
    assert rep.obstructed and rep.witness["d"] == 1 and rep.witness["nonzero_class_degree"] == 1
    assert s.extra["torus_dim"] == s.extra["min_b"] == 1
    s = scenario_nonspin_family(2, 3)
    assert s.hypothesis.lattice.signature == -12 and s.hypothesis.spinc.c_squared == -4
    assert s.run().witness["d"] == 1
    assert scenario_nonspin_family(1, 0, trivialize=True).run().verdict is Verdict.CONSISTENT
    with pytest.raises(ValueError):
        scenario_nonspin_family(0, 0)


def test_report_has_scenario_block():
    out = scenario_branched_cover(3, 5, 1).report()
    assert out["verdict"] == "obstructed"
    assert out["scenario"]["flags"]["wall_realizable"] is True
    assert "pi_j" in scenario_spin_family(3, 1).report()["scenario"]["narrative"]


def test_catalog_clean():
    rows = run_catalog()
    assert len(rows) == len(catalog_entries())
    assert all(r.ok for r in rows), [r for r in rows if not r.ok]


@pytest.mark.parametrize("script", sorted((Path(__file__).parent.parent / "demos").glob("*.py")), ids=lambda p: p.name)
def test_demo_runs(script):
    proc = subprocess.run([sys.executable, str(script)], capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip()
