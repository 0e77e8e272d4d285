"""
Enumeration of X- and X_Y-colorings of a diagram.

The associated quandle operation ``(x,g) * (y,h) = (x *^h y, h^-1 g h)``
has a G-part that ignores the X-parts, and the vertex condition splits the
same way.  The search therefore runs in two stages, each a depth-first
search with worklist propagation:

1. group labels: an assignment ``arc -> G`` satisfying the Wirtinger-type
   crossing relations and the vertex product relations (a hom label);
2. for one fixed hom label, the X-parts: ``arc -> X`` with the crossing
   relation ``x(chi2) = x(chi1) *^{g(over)} x(over)``; the vertex equalities
   are merged up front with a union-find over arcs.

Region colors (nontrivial X-sets only) are then fixed by the color of the
outer region and propagated across arcs.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from .algebra import FiniteGroup, GFamily, XSet
from .diagram import Diagram, DiagramError


@dataclass(frozen=True)
class Coloring:
    """Arc colors as associated-quandle indices and region colors as Y-indices."""

    arcs: tuple
    regions: tuple


def rho_of(c: Coloring, family: GFamily) -> tuple:
    n = family.group.order
    return tuple(q % n for q in c.arcs)


def conj_key(labels: Sequence[int], group: FiniteGroup) -> tuple:
    """Lexicographically least simultaneous conjugate of ``labels``."""
    conj = group.conj
    arr = conj[:, np.asarray(labels, dtype=np.int64)]  # [c, arc]
    if arr.shape[1] == 0:
        return ()
    best = min(map(tuple, arr.tolist()))
    return best


def conj_keys(homs: np.ndarray, group: FiniteGroup) -> list:
    """Vectorized :func:`conj_key` over the rows of ``homs``."""
    if len(homs) == 0:
        return []
    h, k = homs.shape
    if k == 0:
        return [()] * h
    allc = group.conj[:, homs]  # [c, hom, arc]
    n = group.order
    if k * np.log2(n) < 62:
        w = n ** np.arange(k - 1, -1, -1, dtype=np.int64)
        codes = (allc * w).sum(axis=2)
        best = np.argmin(codes, axis=0)
    else:
        best = [min(range(n), key=lambda c: tuple(allc[c, i])) for i in range(h)]
    return [tuple(allc[best[i], i].tolist()) for i in range(h)]


# ----------------------------------------------------------------------
# generic propagation search


def _dfs(nvars: int, dsize: int, watch: list, propagate: Callable) -> Iterator[list]:
    """Yield every total assignment accepted by ``propagate``.

    ``propagate(assign, queue)`` must extend ``assign`` (a list with ``None``
    for unassigned variables) by deduction from the variables in ``queue``
    and return False on a conflict.
    """
    assign = [None] * nvars
    # variables untouched by any constraint are free; propagate from nothing first
    if not propagate(assign, []):
        return
    yield from _branch(assign, dsize, watch, propagate)


def _branch(assign, dsize, watch, propagate):
    free = [v for v, a in enumerate(assign) if a is None]
    if not free:
        yield list(assign)
        return
    best, score = free[0], -1
    for v in free:
        s = 0
        for cvars in watch[v]:
            s += sum(1 for u in cvars if assign[u] is None)
        if s > score:
            best, score = v, s
    for val in range(dsize):
        trial = list(assign)
        trial[best] = val
        if propagate(trial, [best]):
            yield from _branch(trial, dsize, watch, propagate)


# ----------------------------------------------------------------------
# the coloring problem for one diagram and family


class ColoringProblem:
    """Precomputed constraint structure of ``Col_X(D)_Y``."""

    def __init__(self, d: Diagram, family: GFamily, ys: Optional[XSet] = None):
        self.diagram = d
        self.family = family
        self.ys = ys
        if ys is not None and not ys.trivial and not d.connected:
            raise DiagramError("region colors need a connected diagram")
        self.k = len(d.arcs)
        self.crossings = [(c.source_arc, c.target_arc, c.over_arc) for c in d.crossings]
        self.vertex_rel = [(v.arcs, v.signs) for v in d.vertices]
        # union-find of x-parts through vertices
        parent = list(range(self.k))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for arcs, _ in self.vertex_rel:
            for a in arcs[1:]:
                parent[find(a)] = find(arcs[0])
        roots = {}
        self.x_class = [roots.setdefault(find(a), len(roots)) for a in range(self.k)]
        self.n_x = len(roots)
        gw = [[] for _ in range(self.k)]
        for ci, (a1, a2, a3) in enumerate(self.crossings):
            for a in {a1, a2, a3}:
                gw[a].append((a1, a2, a3))
        for arcs, _ in self.vertex_rel:
            for a in set(arcs):
                gw[a].append(arcs)
        self._g_watch = gw
        gcon = [[] for _ in range(self.k)]
        for ci in range(len(self.crossings)):
            for a in set(self.crossings[ci]):
                gcon[a].append(("c", ci))
        for vi, (arcs, _) in enumerate(self.vertex_rel):
            for a in set(arcs):
                gcon[a].append(("v", vi))
        self._g_con = gcon
        xcon = [[] for _ in range(self.n_x)]
        xw = [[] for _ in range(self.n_x)]
        cls = self.x_class
        for ci, (a1, a2, a3) in enumerate(self.crossings):
            trip = (cls[a1], cls[a2], cls[a3])
            for v in set(trip):
                xcon[v].append(ci)
                xw[v].append(trip)
        self._x_con = xcon
        self._x_watch = xw

    # -- stage 1: hom labels ------------------------------------------

    def _g_propagate(self, g, queue):
        mul = self.family.group.mul_list
        inv = self.family.group.inv_list
        cons = self._g_con
        crossings, vrel = self.crossings, self.vertex_rel
        if not queue:
            # constraints with no variables cannot exist; nothing to do
            return True
        queue = list(queue)
        while queue:
            v = queue.pop()
            for kind, i in cons[v]:
                if kind == "c":
                    a1, a2, a3 = crossings[i]
                    g1, g2, g3 = g[a1], g[a2], g[a3]
                    if g3 is None:
                        continue
                    if g1 is not None:
                        val = mul[mul[inv[g3]][g1]][g3]
                        if g[a2] is None:
                            g[a2] = val
                            queue.append(a2)
                        elif g[a2] != val:
                            return False
                    elif g2 is not None:
                        g[a1] = mul[mul[g3][g2]][inv[g3]]
                        queue.append(a1)
                else:
                    arcs, signs = vrel[i]
                    t = [None, None, None]
                    unknown = []
                    for j in range(3):
                        x = g[arcs[j]]
                        if x is None:
                            unknown.append(j)
                        else:
                            t[j] = x if signs[j] > 0 else inv[x]
                    if not unknown:
                        if mul[mul[t[0]][t[1]]][t[2]] != 0:
                            return False
                    elif len(unknown) == 1:
                        j = unknown[0]
                        if j == 0:
                            val = inv[mul[t[1]][t[2]]]
                        elif j == 1:
                            val = mul[inv[t[0]]][inv[t[2]]]
                        else:
                            val = inv[mul[t[0]][t[1]]]
                        a = arcs[j]
                        g[a] = val if signs[j] > 0 else inv[val]
                        queue.append(a)
        return True

    def homs(self) -> Iterator[tuple]:
        """Every hom label (arc -> G assignment satisfying the G-relations)."""
        if self.k == 0:
            yield ()
            return
        for sol in _dfs(self.k, self.family.group.order, self._g_watch, self._g_propagate):
            yield tuple(sol)

    @cached_property
    def hom_array(self) -> np.ndarray:
        hs = list(self.homs())
        return np.array(hs, dtype=np.int64).reshape(len(hs), self.k)

    # -- stage 2: x-parts ---------------------------------------------

    def x_solutions(self, hom: Sequence[int]) -> list:
        """All x-class assignments compatible with the hom label ``hom``."""
        op = self.family.op_list
        inv = self.family.group.inv_list
        cls = self.x_class
        trips = [(cls[a1], cls[a2], cls[a3], hom[a3]) for a1, a2, a3 in self.crossings]
        cons = self._x_con

        def propagate(x, queue):
            queue = list(queue)
            while queue:
                v = queue.pop()
                for ci in cons[v]:
                    c1, c2, c3, g3 = trips[ci]
                    x1, x2, x3 = x[c1], x[c2], x[c3]
                    if x3 is None:
                        continue
                    if x1 is not None:
                        val = op[x1][g3][x3]
                        if x[c2] is None:
                            x[c2] = val
                            queue.append(c2)
                        elif x[c2] != val:
                            return False
                    elif x2 is not None:
                        x[c1] = op[x2][inv[g3]][x3]
                        queue.append(c1)
            return True

        return list(_dfs(self.n_x, self.family.x_size, self._x_watch, propagate))

    def arc_colors(self, hom: Sequence[int], xsol: Sequence[int]) -> tuple:
        n = self.family.group.order
        return tuple(xsol[self.x_class[a]] * n + hom[a] for a in range(self.k))

    # -- regions ------------------------------------------------------

    @cached_property
    def _region_plan(self):
        """BFS tree over regions from the outer one: (target, source, edge, forward)."""
        d = self.diagram
        nr = len(d.regions)
        adj = defaultdict(list)
        for e in range(len(d.edges)):
            L, R = d.left_region(e), d.right_region(e)
            adj[R].append((L, e, True))
            adj[L].append((R, e, False))
        start = d.outer_region
        seen = {start}
        order, checks = [], []
        queue = [start]
        while queue:
            r = queue.pop(0)
            for s, e, fwd in adj[r]:
                if s not in seen:
                    seen.add(s)
                    order.append((s, r, e, fwd))
                    queue.append(s)
                else:
                    checks.append((s, r, e, fwd))
        if len(seen) != nr:
            raise DiagramError("regions are not connected across arcs")
        return start, order, checks

    def region_colors(self, arc_colors: Sequence[int], y0: int) -> tuple:
        """Propagate region colors from the outer region colored ``y0``.

        Across a semi-arc colored ``(x, g)`` the region on its left is the
        region on its right acted on by ``(x, g)``.
        """
        d = self.diagram
        ys = self.ys
        act = ys.act_list
        inv = self.family.group.inv_list
        n = self.family.group.order
        start, order, checks = self._region_plan
        col = [None] * len(d.regions)
        col[start] = y0

        def step(src_col, e, fwd):
            x, g = divmod(arc_colors[d.edge_arc[e]], n)
            return act[src_col][g][x] if fwd else act[src_col][inv[g]][x]

        for tgt, src, e, fwd in order:
            col[tgt] = step(col[src], e, fwd)
        for tgt, src, e, fwd in checks:
            if col[tgt] != step(col[src], e, fwd):
                raise AssertionError("inconsistent region colors for a valid coloring")
        return tuple(col)

    # -- colorings ----------------------------------------------------

    def colorings_for_hom(self, hom: Sequence[int]) -> Iterator[Coloring]:
        trivial = self.ys is None or self.ys.trivial
        nr = len(self.diagram.regions)
        for xs in self.x_solutions(hom):
            arcs = self.arc_colors(hom, xs)
            if trivial:
                yield Coloring(arcs, (0,) * nr)
            else:
                for y0 in range(self.ys.y_size):
                    yield Coloring(arcs, self.region_colors(arcs, y0))

    def colorings(self) -> Iterator[Coloring]:
        for hom in self.homs():
            yield from self.colorings_for_hom(hom)

    def y_factor(self) -> int:
        return 1 if self.ys is None else self.ys.y_size

    def count_for_hom(self, hom: Sequence[int]) -> int:
        return len(self.x_solutions(hom)) * self.y_factor()

    def count(self) -> int:
        return sum(self.count_for_hom(h) for h in self.homs())


def enumerate_colorings(d: Diagram, family: GFamily, ys: Optional[XSet] = None) -> Iterator[Coloring]:
    """Stream every X_Y-coloring of ``d`` exactly once."""
    return ColoringProblem(d, family, ys).colorings()


def count_colorings(d: Diagram, family: GFamily, ys: Optional[XSet] = None) -> int:
    return ColoringProblem(d, family, ys).count()


def group_colorings(colorings, family: GFamily, mode: str = "plain") -> dict:
    """Partition colorings: one block (``plain``), by hom label or by conj key."""
    blocks = defaultdict(list)
    for c in colorings:
        if mode == "plain":
            key = ()
        elif mode == "by_hom":
            key = rho_of(c, family)
        elif mode == "by_conj":
            key = conj_key(rho_of(c, family), family.group)
        else:
            raise ValueError(f"unknown grouping mode {mode!r}")
        blocks[key].append(c)
    return dict(blocks)
