"""Cyclic actions that exist topologically but not smoothly.

A p-fold cover of S^4 branched over a genus g surface carries a Z_p action
on #g(p-1)(S2xS2) # 2bp(-E8).  The index of the Dirac operator is 2bp and
H+ has no invariant part, so the Z_p theorem rules out every smooth version.
"""

from __future__ import annotations

from monopole_obstruct import scenario_branched_cover
from monopole_obstruct.obstructions import zp_certificate

for p, g, b in [(3, 5, 1), (3, 4, 1), (5, 12, 1), (5, 3, 1), (7, 10, 1)]:
    s = scenario_branched_cover(p, g, b)
    rep = s.run()
    f = s.flags
    print(f"p={p} g={g} b={b}: {s.hypothesis.lattice}")
    print(f"  smooth X: {f['smooth_structure_exists']}, Wall: {f['wall_realizable']}, verdict: {rep.verdict.value}")

# The certificate itself: the rational function in t is not a polynomial,
# and the smallest root index where it fails is reported.
s = scenario_branched_cover(3, 5, 1)
r, cert = zp_certificate(3, s.hypothesis.index.d, s.hypothesis.h)
print()
print("net factor multiplicities:", r.net_multiplicities())
print("is polynomial:", cert.ok, " failing root index:", cert.witness, " deficits:", cert.deficits)
