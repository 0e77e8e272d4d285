"""Cocycles of the dihedral quandle R_3 viewed as a Z_2-family.

Solves for 2-cocycles of the quandle with Z_2 action, pulls them back to
the associated quandle on R_3 x Z_2, verifies them there, and evaluates
them on the bundled handlebody-knot with region colors in R_3.

    python3 demos/dihedral_cocycles.py
"""

import os

from qfamily.algebra import dihedral_family, xset_self
from qfamily.chains import check_cocycle2, i_solve_cocycles2, pullback_cocycle
from qfamily.cli import bundled_corpus
from qfamily.diagram import load_diagram
from qfamily.invariants import phi

f = dihedral_family(3)
ys = xset_self(f)
d = load_diagram(os.path.join(bundled_corpus(), "3_1-handle.hkd"))

for p in (2, 3):
    basis = i_solve_cocycles2(f, ys, p)
    print(f"p = {p}: {len(basis)} basis cocycles")
    for i, t in enumerate(basis):
        theta = pullback_cocycle(t, p, f, ys)
        print(f"  #{i}:", check_cocycle2(theta, f, ys))
        print("     hom:", phi(d, f, theta, "hom", ys=ys).to_text())
