"""Topological families over tori with no smooth structure.

Commuting maps that act by -1 on different S2xS2 summands give a mapping
torus whose H+ bundle splits into distinct flat lines.  Its top Stiefel-Whitney
class is the product of the torus generators, so it never vanishes, and that
is enough to contradict positivity of the index.
"""

from __future__ import annotations

from monopole_obstruct import scenario_nonspin_family, scenario_spin_family, sw_total

for a, b in [(3, 1), (4, 1), (5, 2)]:
    s = scenario_spin_family(a, b)
    rep = s.run()
    print(f"spin    a={a} b={b}: base T^{s.extra['torus_dim']}, w = {sw_total(s.hypothesis.hplus_bundle)}")
    print(f"        nonzero in top window: {rep.witness['nonzero_sw_indices']}, d = {rep.witness['d']} -> {rep.verdict.value}")

for a, b, trivial in [(1, 0, False), (2, 3, False), (1, 0, True)]:
    s = scenario_nonspin_family(a, b, trivialize=trivial)
    rep = s.run()
    print(f"nonspin a={a} b={b}{' (trivial H+)' if trivial else ''}: w_top = {rep.witness['top_sw_class']}, "
          f"d = {rep.witness['d']} -> {rep.verdict.value}")

print()
print(scenario_spin_family(3, 1).narrative)
