"""Involutions on spin 4-manifolds.

For an even-type involution the Borel construction gives a family over
RP^(b+) whose H+ bundle is R^u + R^v_-, with total Stiefel-Whitney class
(1+x)^v.  Its top classes survive exactly when u <= 2, which is why a smooth
action needs at least three invariant directions in H+.
"""

from __future__ import annotations

from monopole_obstruct import check_even_involution, check_z2_action
from monopole_obstruct.obstructions import ZpActionHypothesis
from monopole_obstruct.repring import EquivariantIndexData

bp = 6
for u in range(0, bp + 1):
    rep = check_even_involution(-16, u, "even", bp)
    print(f"b+={bp} u={u} v={bp - u}: nonzero w_i in top window {rep.witness['nonzero_sw_indices']!s:8s} -> {rep.verdict.value}")

# with no invariant H+ at all the eigenspace indices must both be <= 0
print()
for dp, dm in [(1, -1), (0, 0), (-2, 3)]:
    hyp = ZpActionHypothesis(2, EquivariantIndexData(2, [dp, dm]), 0, b_plus_given=2)
    rep = check_z2_action(hyp)
    cert = rep.witness["certificate"]
    print(f"d+={dp:2d} d-={dm:2d}: polynomial certificate {cert['is_polynomial']!s:5s} -> {rep.verdict.value}")
