"""The cocycle invariant of a genus-2 handlebody-knot and of its mirror.

The bundled diagram is a trefoil plat with a rung between the middle
strands.  Its values take the nonzero residue 1, and the mirror image
takes 2 in its place.  Reversing an edge changes nothing.

    python3 demos/handle_invariant.py
"""

import os
import time

from qfamily.algebra import sl2z3_linear
from qfamily.chains import nosaka_theta
from qfamily.cli import bundled_corpus
from qfamily.diagram import load_diagram, mirror, reverse_edge
from qfamily.invariants import negate, phi

f = sl2z3_linear()
theta = nosaka_theta(f)
d = load_diagram(os.path.join(bundled_corpus(), "3_1-handle.hkd"))
print(f"{d.name}: {d.n_crossings} crossings, {d.n_vertices} vertices, {len(d.arcs)} arcs")

for mode in ("plain", "hom", "conj"):
    t = time.perf_counter()
    v = phi(d, f, theta, mode)
    print(f"{mode:>5}: {v.to_text()}  ({time.perf_counter() - t:.1f}s)")

v = phi(d, f, theta, "conj")
m = phi(mirror(d), f, theta, "conj")
print("mirror:", m.to_text())
print("mirror equals negation:", m == negate(v))

e = d.graph_edges[0]
print(f"edge {e} reversed, same value:", phi(reverse_edge(d, 0), f, theta, "conj") == v)
