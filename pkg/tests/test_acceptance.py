"""Acceptance criteria, one test each.  Every test prints a single
``[PASS]``/``[FAIL]`` line with its runtime and budget."""

from __future__ import annotations

import itertools
import json
import random
import time
from contextlib import contextmanager

import pytest

from monopole_obstruct.charclasses import (
    Base,
    FlatBundleDescriptor,
    Generator,
    GradedClass,
    RingPresentation,
    sw_total,
    total_segre,
)
from monopole_obstruct.cli import main
from monopole_obstruct.exact import Cyclotomic
from monopole_obstruct.lattice import Block, IntersectionLattice
from monopole_obstruct.obstructions import (
    Verdict,
    ZpActionHypothesis,
    check_even_involution,
    check_furuta_point,
    check_spin_family_pin,
    check_z2_action,
    even_involution_family,
    zp_certificate,
)
from monopole_obstruct.repring import Pin2Element, ZpVirtualRep, character_at, lambda_total, psi2
from monopole_obstruct.repring import EquivariantIndexData
from monopole_obstruct.scenarios import scenario_branched_cover, scenario_nonspin_family, scenario_spin_family

from conftest import SEED


@pytest.fixture
def criterion(capsys):
    """Run a block under a timer; print one pass/fail line whatever happens."""

    @contextmanager
    def _run(number: int, title: str, budget: float):
        start = time.perf_counter()
        ok = False
        try:
            yield
            elapsed = time.perf_counter() - start
            ok = elapsed < budget
            assert ok, f"runtime {elapsed:.2f}s exceeds {budget}s"
        finally:
            elapsed = time.perf_counter() - start
            with capsys.disabled():
                print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({elapsed:.2f}s / {budget}s)")

    return _run


def cli_json(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_criterion_1_donaldson(criterion, capsys):
    with criterion(1, "Donaldson instances", 1.0):
        code, rep = cli_json(capsys, "check", "donaldson", "--lattice", "E8m", "--spin")
        assert code == 3 and rep["verdict"] == "obstructed" and rep["witness"]["d"] == 1
        code, rep = cli_json(capsys, "check", "donaldson", "--lattice", "8D1m", "--c2", "-8")
        assert code == 0 and rep["verdict"] == "consistent" and rep["witness"]["d"] == 0


def test_criterion_2_furuta_boundary(criterion):
    with criterion(2, "Furuta boundary, b+ <= 12, sigma in {-16,-32,-48}", 1.0):
        for sigma in (-16, -32, -48):
            obstructed = set()
            for bp in range(0, 13):
                L = IntersectionLattice({Block.H: bp, Block.E8_MINUS: -sigma // 8})
                assert L.signature == sigma and L.b_plus == bp
                if check_furuta_point(L).verdict is Verdict.OBSTRUCTED:
                    obstructed.add(bp)
            assert obstructed == set(range(0, -sigma // 8 + 1)), (sigma, obstructed)
        # the stated pairs
        assert {0, 1, 2} == {bp for bp in range(13) if check_furuta_point(IntersectionLattice({Block.H: bp, Block.E8_MINUS: 2})).obstructed}


def test_criterion_3_even_involution(criterion):
    with criterion(3, "even involution vs RP(b+) family, b+ <= 30, all splits", 5.0):
        mismatches = 0
        for sigma in (-8, -16, -32):
            for bp in range(0, 31):
                for u in range(0, bp + 1):
                    closed = check_even_involution(sigma, u, "even", bp)
                    family = check_spin_family_pin(even_involution_family(sigma, u, bp))
                    mismatches += closed.verdict is not family.verdict
                    mismatches += closed.obstructed != (u <= 2)
        assert mismatches == 0


def test_criterion_4_branched_covers(criterion):
    with criterion(4, "Z_p branched-cover scenarios", 1.0):
        s = scenario_branched_cover(3, 5, 1)
        rep = s.run()
        assert str(s.hypothesis.lattice) == "10H+6E8m"
        assert s.hypothesis.index.total == 6 and rep.verdict is Verdict.OBSTRUCTED
        assert s.flags["locally_linear_realizable"] and s.flags["wall_realizable"] and s.flags["smooth_action_obstructed"]
        s = scenario_branched_cover(5, 12, 1)
        rep = s.run()
        assert s.hypothesis.lattice.count(Block.H) == 48 and 48 >= 45
        assert s.flags["smooth_structure_exists"] and s.flags["wall_realizable"]
        assert s.hypothesis.index.total == 10 and rep.verdict is Verdict.OBSTRUCTED


def test_criterion_5_z2_oracle(criterion):
    with criterion(5, "Z_2 closed form vs Laurent certificate, d in [-6,6]^2, b+ in [0,8]", 10.0):
        agree = total = 0
        for dp, dm in itertools.product(range(-6, 7), repeat=2):
            for bp in range(0, 9):
                rep = check_z2_action(ZpActionHypothesis(2, EquivariantIndexData(2, [dp, dm]), 0, b_plus_given=bp))
                closed = dp <= 0 and dm <= 0
                total += 1
                agree += (rep.verdict is Verdict.CONSISTENT) == closed == rep.witness["certificate"]["is_polynomial"]
        assert agree == total == 13 * 13 * 9


def test_criterion_6_zp_oracle(criterion):
    with criterion(6, "Z_p cyclotomic certificate vs sign condition, p in {3,5}", 60.0):
        for p in (3, 5):
            agree = total = 0
            half = (p - 1) // 2
            for d in itertools.product(range(-3, 4), repeat=p):
                sign = all(d[j] + d[-j % p] <= 0 for j in range(p))
                for hh in itertools.product(range(0, 4), repeat=half):
                    h = (0,) + hh + hh[::-1]
                    _, cert = zp_certificate(p, d, h)
                    total += 1
                    agree += cert.ok == sign
            assert agree == total == 7**p * 4**half


def test_criterion_7_identities(criterion):
    rng = random.Random(SEED)
    with criterion(7, "algebraic identity suites", 10.0):
        # c(V) s(V) = 1 on 200 random Chern inputs
        for _ in range(200):
            gens = tuple(Generator(f"g{i}", 2 * rng.randint(1, 2), rng.choice([None, 3, 4])) for i in range(rng.randint(1, 3)))
            R = RingPresentation(0, gens)
            n = rng.randint(1, 5)
            chern = [R.one()] + [GradedClass(R, [(m, rng.randint(-3, 3)) for m in R.monomials(2 * j)]) for j in range(1, n + 1)]
            s = total_segre(chern, 6)
            for k in range(1, 7):
                assert sum((chern[i] * s[k - i] for i in range(min(k, n) + 1)), R.zero()).is_zero()
        # Whitney multiplicativity
        for _ in range(100):
            n = rng.randint(1, 4)
            base = Base.torus(n)
            mk = lambda: FlatBundleDescriptor(
                base, [rng.sample(range(1, n + 1), rng.randint(1, n)) for _ in range(rng.randint(0, 3))], rng.randint(0, 2))
            a, b = mk(), mk()
            assert sw_total(a + b) == sw_total(a) * sw_total(b)
            m = rng.randint(1, 10)
            a = FlatBundleDescriptor(Base.rp(m), u=rng.randint(0, 4), v=rng.randint(0, 8))
            b = FlatBundleDescriptor(Base.rp(m), u=rng.randint(0, 4), v=rng.randint(0, 8))
            assert sw_total(a + b) == sw_total(a) * sw_total(b)
        # tr_k psi^2 = tr_2k, lambda multiplicativity
        for _ in range(100):
            p = rng.choice([2, 3, 5, 7])
            r = ZpVirtualRep(p, [rng.randint(0, 3) for _ in range(p)])
            s2 = ZpVirtualRep(p, [rng.randint(0, 3) for _ in range(p)])
            for k in range(p):
                assert character_at(psi2(r), k) == character_at(r, 2 * k)
            assert lambda_total(r + s2) == lambda_total(r) * lambda_total(s2)
        # mu_a mu_b = mu_(a+b) + mu_|a-b|
        for a, b in itertools.product(range(0, 9), repeat=2):
            assert Pin2Element.mu(a) * Pin2Element.mu(b) == Pin2Element.mu(a + b) + Pin2Element.mu(abs(a - b))
        # prod (1 - w^j) = p
        for p in (3, 5, 7):
            prod = Cyclotomic.one(p)
            for j in range(1, p):
                prod = prod * (1 - Cyclotomic.root_power(p, j))
            assert prod == Cyclotomic.from_int(p, p)


def test_criterion_8_family_scenarios(criterion):
    with criterion(8, "mapping-torus family scenarios", 1.0):
        s = scenario_spin_family(3, 1)
        rep = s.run()
        bp = s.hypothesis.lattice.b_plus
        assert rep.verdict is Verdict.OBSTRUCTED and rep.witness["nonzero_sw_indices"] == [bp - 2]
        assert rep.inputs_echo["base"] == {"kind": "torus", "dim": 1}
        L = s.hypothesis.lattice
        assert s.extra["torus_dim"] == min(L.b_plus, L.b_minus) - 2 == 1
        s = scenario_nonspin_family(1, 0)
        rep = s.run()
        L = s.hypothesis.lattice
        assert rep.verdict is Verdict.OBSTRUCTED and rep.witness["nonzero_class_degree"] == L.b_plus
        assert rep.inputs_echo["base"] == {"kind": "torus", "dim": 1}
        assert s.extra["torus_dim"] == min(L.b_plus, L.b_minus) == 1


def test_criterion_9_catalog(criterion, capsys):
    with criterion(9, "catalog: zero mismatches, exit 0", 120.0):
        code = main(["catalog"])
        out = capsys.readouterr().out
        assert code == 0
        assert out.strip().splitlines()[-1].endswith(", 0 mismatches")
        assert "MISMATCH" not in out
