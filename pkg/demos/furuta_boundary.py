"""Where does the 10/8 bound bite?

Walk b+ upward for a few negative signatures and watch the spin checker flip
from obstructed to consistent.  Then repeat the computation inside R(Z_p)
with only trivial characters and see that the equivariant divisibility test
draws the same line.
"""

from __future__ import annotations

from monopole_obstruct import check_10on8_equivariant, check_furuta_point, parse_lattice
from monopole_obstruct.repring import ZpVirtualRep

for sigma in (-16, -32, -48):
    k = -sigma // 8
    row = []
    for bp in range(0, 10):
        L = parse_lattice(f"{bp}H+{k}E8m")
        rep = check_furuta_point(L)
        row.append("x" if rep.obstructed else ".")
    print(f"sigma = {sigma:4d}  b+ = 0..9: {' '.join(row)}   (x = obstructed)")

# K3 sits exactly on the line; one fewer S2xS2 summand falls off it
for text in ("3H+2E8m", "2H+2E8m"):
    rep = check_furuta_point(parse_lattice(text))
    print(f"{text:10s} -> {rep.verdict.value:11s} {rep.witness.get('violated', '')}")

# same question as a divisibility problem: 2^(b+) = eta * 2 * 2^(2a) ?
print()
for bp in range(0, 5):
    rep = check_10on8_equivariant(3, ZpVirtualRep.scalar(3, bp), ZpVirtualRep.scalar(3, 2), ZpVirtualRep.scalar(3, 0))
    eta = rep.witness.get("eta")
    print(f"b+ = {bp}: {rep.witness['form']:9s} {rep.verdict.value:11s} eta = {eta}")
