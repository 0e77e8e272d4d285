"""Colorings of the theta-curve by the SL(2;Z_3)-family on (Z_3)^2.

Builds the family, checks its axioms, and shows where the invariant
value {{0_9}_76} comes from: 576 homomorphisms, 76 conjugacy classes of
pairs, 9 colorings over each homomorphism.

    python3 demos/theta_curve.py
"""

from collections import Counter

from qfamily.algebra import check_axioms, sl2z3_linear
from qfamily.chains import nosaka_theta
from qfamily.coloring import ColoringProblem, conj_keys
from qfamily.diagram import parse_diagram
from qfamily.invariants import phi

THETA = """
name theta
vertex u a0 b0 c0
vertex v a1 c1 b1
edge a a0 a1
edge b b0 b1
edge c c0 c1
"""

f = sl2z3_linear()
print("group order", f.group.order, "| X size", f.x_size, "| quandle size", f.q_size)
for obj in (f.group, f, f.associated):
    print(" ", check_axioms(obj))

d = parse_diagram(THETA)
pr = ColoringProblem(d, f)
homs = pr.hom_array
print("homomorphisms:", len(homs))
print("colorings over each:", Counter(pr.count_for_hom(tuple(h)) for h in homs.tolist()))
print("conjugacy classes:", len(set(conj_keys(homs, f.group))))

theta = nosaka_theta(f)
for mode in ("plain", "hom", "conj"):
    print(f"{mode:>5}:", phi(d, f, theta, mode).to_text())
