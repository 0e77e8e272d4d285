"""
Diagrams of oriented spatial trivalent graphs.

A diagram is stored as a rotation system.  Every node is a ``crossing``
(four half-edge slots) or a ``vertex`` (three slots), with slots listed
counterclockwise in the plane.  Every edge record is a semi-arc running
from its tail half-edge to its head half-edge.  A ``circle`` is a closed
semi-arc with no endpoints (a crossingless unknotted component).

Text format (``.hkd``), one directive per line, ``#`` starts a comment::

    vertex   <id> <h1> <h2> <h3>
    crossing <id> <h0> <h1> <h2> <h3> over=1,3
    edge     <id> <tail-half-edge> <head-half-edge>
    circle   <id>
    outer    <half-edge> <L|R>
    name     <text>
    expect   <mode> <value>

Orientation conventions
-----------------------
The normal of a directed strand points to its left.  At a crossing with
over-out slot ``o`` the under arc at slot ``o-1`` is the source arc
``chi1`` and the one at ``o+1`` is ``chi2``, so the coloring condition
reads ``C(chi2) = C(chi1) * C(over)``.  The crossing is positive iff the
under-out slot is ``o+1``.  The weight corner is ``(o-1, o)`` for positive
crossings and ``(o+2, o+3)`` for negative ones; corner ``i`` of a node lies
between slots ``i`` and ``i+1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Optional, Sequence


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Node:
    kind: str  # "vertex" | "crossing"
    id: str
    slots: tuple  # half-edge indices, counterclockwise
    over: int = 1  # crossings: over pair is slots (over, over + 2)

    @property
    def degree(self) -> int:
        return len(self.slots)


@dataclass(frozen=True)
class Edge:
    id: str
    tail: Optional[int]  # half-edge index; None for a circle
    head: Optional[int]

    @property
    def closed(self) -> bool:
        return self.tail is None


@dataclass(frozen=True)
class Arc:
    id: int
    semi_arcs: tuple  # edge indices in order of the arc's direction
    start: Optional[tuple]  # (node, slot) where the arc begins, None if closed
    end: Optional[tuple]

    @property
    def closed(self) -> bool:
        return self.start is None


@dataclass(frozen=True)
class Region:
    id: int
    darts: tuple  # boundary darts; dart 2e runs tail->head of edge e, 2e+1 back
    corners: tuple  # (node, corner) pairs met along the boundary
    component: int


@dataclass(frozen=True)
class CrossingData:
    node: int
    sign: int
    over_arc: int
    source_arc: int  # chi1
    target_arc: int  # chi2
    corner: int  # weight corner index at this node
    over_out: int  # slot


@dataclass(frozen=True)
class VertexData:
    node: int
    arcs: tuple  # in clockwise order around the vertex
    signs: tuple  # +1 if the incident semi-arc points into the vertex


@dataclass(frozen=True, eq=False)
class Diagram:
    nodes: tuple
    edges: tuple
    half_edges: tuple  # names
    outer: Optional[tuple] = None  # (edge index, "L" | "R")
    name: str = ""
    expect: tuple = ()  # ((mode, text), ...)

    def __post_init__(self):
        self._validate()

    # ------------------------------------------------------------------
    # structure

    @cached_property
    def he_loc(self) -> tuple:
        loc = [None] * len(self.half_edges)
        for n, node in enumerate(self.nodes):
            for s, h in enumerate(node.slots):
                loc[h] = (n, s)
        return tuple(loc)

    @cached_property
    def he_edge(self) -> tuple:
        """``(edge, is_head)`` for each half-edge."""
        out = [None] * len(self.half_edges)
        for e, edge in enumerate(self.edges):
            if edge.closed:
                continue
            out[edge.tail] = (e, False)
            out[edge.head] = (e, True)
        return tuple(out)

    def _validate(self):
        nh = len(self.half_edges)
        seen_slot = [None] * nh
        for node in self.nodes:
            if node.kind == "crossing":
                if len(node.slots) != 4 or node.over not in (0, 1):
                    raise DiagramError(f"crossing {node.id}: bad slots/over pair")
            elif node.kind == "vertex":
                if len(node.slots) != 3:
                    raise DiagramError(f"vertex {node.id}: needs three half-edges")
            else:
                raise DiagramError(f"unknown node kind {node.kind!r}")
            for h in node.slots:
                if seen_slot[h] is not None:
                    raise DiagramError(
                        f"duplicate half-edge {self.half_edges[h]!r} "
                        f"(nodes {seen_slot[h]} and {node.id})"
                    )
                seen_slot[h] = node.id
        seen_edge = [None] * nh
        for edge in self.edges:
            if edge.closed:
                if edge.head is not None:
                    raise DiagramError(f"edge {edge.id}: half-closed edge")
                continue
            if edge.tail == edge.head:
                raise DiagramError(f"edge {edge.id}: tail equals head")
            for h in (edge.tail, edge.head):
                if seen_edge[h] is not None:
                    raise DiagramError(
                        f"duplicate half-edge {self.half_edges[h]!r} "
                        f"(edges {seen_edge[h]} and {edge.id})"
                    )
                seen_edge[h] = edge.id
        for h in range(nh):
            if seen_slot[h] is None:
                raise DiagramError(f"dangling half-edge {self.half_edges[h]!r}: in no node")
            if seen_edge[h] is None:
                raise DiagramError(f"dangling half-edge {self.half_edges[h]!r}: in no edge")
        for node in self.nodes:
            if node.kind != "crossing":
                continue
            for s in (0, 1):
                heads = [self.he_edge[node.slots[s + k]][1] for k in (0, 2)]
                if heads[0] == heads[1]:
                    strand = "over" if s == node.over else "under"
                    raise DiagramError(
                        f"crossing {node.id}: {strand} strand is not continuous "
                        "(needs one incoming and one outgoing half-edge)"
                    )
        for comp, (v, e, f) in enumerate(self._euler_counts()):
            if v - e + f != 2:
                raise DiagramError(
                    f"Euler check failed on component {comp}: "
                    f"V - E + F = {v} - {e} + {f} != 2 (non-planar rotation data)"
                )

    # ------------------------------------------------------------------
    # darts and faces

    def _next_dart(self, d: int) -> tuple:
        e, back = divmod(d, 2)
        edge = self.edges[e]
        h = edge.tail if back else edge.head
        n, s = self.he_loc[h]
        node = self.nodes[n]
        s2 = (s - 1) % node.degree
        h2 = node.slots[s2]
        e2, is_head = self.he_edge[h2]
        return 2 * e2 + (1 if is_head else 0), (n, s2)

    @cached_property
    def components(self) -> tuple:
        """Component index of each edge (nodes joined by edges)."""
        parent = list(range(len(self.nodes)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for edge in self.edges:
            if not edge.closed:
                a, b = find(self.he_loc[edge.tail][0]), find(self.he_loc[edge.head][0])
                parent[a] = b
        label = {}
        comp = []
        for e, edge in enumerate(self.edges):
            key = ("c", e) if edge.closed else find(self.he_loc[edge.tail][0])
            comp.append(label.setdefault(key, len(label)))
        for n in range(len(self.nodes)):
            if find(n) not in label:  # node with no edges cannot occur
                label[find(n)] = len(label)
        return tuple(comp)

    @cached_property
    def n_components(self) -> int:
        return len(set(self.components)) if self.edges else 0

    @property
    def connected(self) -> bool:
        return self.n_components <= 1

    @cached_property
    def regions(self) -> tuple:
        """Faces of the rotation system, one list per component."""
        nd = 2 * len(self.edges)
        face_of = [-1] * nd
        regions = []
        for d0 in range(nd):
            if face_of[d0] >= 0:
                continue
            fid = len(regions)
            darts, corners = [], []
            d = d0
            while face_of[d] < 0:
                face_of[d] = fid
                darts.append(d)
                if self.edges[d // 2].closed:
                    break
                d, corner = self._next_dart(d)
                corners.append(corner)
            regions.append(Region(fid, tuple(darts), tuple(corners), self.components[d0 // 2]))
        object.__setattr__(self, "_face_of", face_of)
        return tuple(regions)

    @cached_property
    def dart_face(self) -> tuple:
        self.regions
        return tuple(self._face_of)

    def left_region(self, e: int) -> int:
        return self.dart_face[2 * e]

    def right_region(self, e: int) -> int:
        return self.dart_face[2 * e + 1]

    @cached_property
    def corner_face(self) -> dict:
        return {c: r.id for r in self.regions for c in r.corners}

    def _euler_counts(self) -> list:
        ncomp = len(set(self.components)) if self.edges else 0
        v = [0] * ncomp
        e = [0] * ncomp
        f = [0] * ncomp
        node_comp = {}
        for i, edge in enumerate(self.edges):
            c = self.components[i]
            e[c] += 1
            if edge.closed:
                v[c] += 1  # treat a circle as one degree-2 point
            else:
                node_comp[self.he_loc[edge.tail][0]] = c
                node_comp[self.he_loc[edge.head][0]] = c
        for c in node_comp.values():
            v[c] += 1
        for r in self.regions:
            f[r.component] += 1
        return list(zip(v, e, f))

    @cached_property
    def outer_region(self) -> int:
        if not self.edges:
            raise DiagramError("empty diagram has no regions")
        e, side = self.outer if self.outer is not None else (0, "L")
        return self.left_region(e) if side == "L" else self.right_region(e)

    # ------------------------------------------------------------------
    # arcs

    @cached_property
    def arcs(self) -> tuple:
        return derive_arcs(self)

    @cached_property
    def edge_arc(self) -> tuple:
        out = [None] * len(self.edges)
        for arc in self.arcs:
            for e in arc.semi_arcs:
                out[e] = arc.id
        return tuple(out)

    @cached_property
    def graph_edges(self) -> tuple:
        """Group index of each semi-arc: semi-arcs joined through crossings."""
        parent = list(range(len(self.edges)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for node in self.nodes:
            if node.kind != "crossing":
                continue
            for s in (0, 1):
                a = self.he_edge[node.slots[s]][0]
                b = self.he_edge[node.slots[s + 2]][0]
                parent[find(a)] = find(b)
        label = {}
        return tuple(label.setdefault(find(e), len(label)) for e in range(len(self.edges)))

    # ------------------------------------------------------------------
    # crossings and vertices

    def _slot_edge(self, n: int, s: int) -> tuple:
        return self.he_edge[self.nodes[n].slots[s]]

    @cached_property
    def crossings(self) -> tuple:
        out = []
        for n, node in enumerate(self.nodes):
            if node.kind != "crossing":
                continue
            a = node.over
            o = a if not self._slot_edge(n, a)[1] else a + 2  # tail => outgoing
            under_out = (o + 1) % 4 if not self._slot_edge(n, (o + 1) % 4)[1] else (o - 1) % 4
            sign = 1 if under_out == (o + 1) % 4 else -1
            arc = lambda s: self.edge_arc[self._slot_edge(n, s % 4)[0]]
            corner = (o - 1) % 4 if sign == 1 else (o + 2) % 4
            out.append(CrossingData(n, sign, arc(o), arc(o - 1), arc(o + 1), corner, o))
        return tuple(out)

    @cached_property
    def vertices(self) -> tuple:
        out = []
        for n, node in enumerate(self.nodes):
            if node.kind != "vertex":
                continue
            cw = (0, 2, 1)
            arcs, signs = [], []
            for s in cw:
                e, is_head = self._slot_edge(n, s)
                arcs.append(self.edge_arc[e])
                signs.append(1 if is_head else -1)
            out.append(VertexData(n, tuple(arcs), tuple(signs)))
        return tuple(out)

    def crossing_region(self, c: CrossingData) -> int:
        return self.corner_face[(c.node, c.corner)]

    def node_index(self, node_id: str) -> int:
        for n, node in enumerate(self.nodes):
            if node.id == node_id:
                return n
        raise DiagramError(f"unknown node {node_id!r}")

    def edge_index(self, edge_id: str) -> int:
        for e, edge in enumerate(self.edges):
            if edge.id == edge_id:
                return e
        raise DiagramError(f"unknown edge {edge_id!r}")

    @property
    def n_crossings(self) -> int:
        return sum(1 for n in self.nodes if n.kind == "crossing")

    @property
    def n_vertices(self) -> int:
        return sum(1 for n in self.nodes if n.kind == "vertex")

    def __repr__(self):
        return (
            f"Diagram({self.name!r}, crossings={self.n_crossings}, "
            f"vertices={self.n_vertices}, edges={len(self.edges)})"
        )


# ----------------------------------------------------------------------
# derived data


def derive_arcs(d: Diagram) -> tuple:
    """Join semi-arcs across over-passes; arcs end at under-crossings and vertices."""
    nxt = {}  # edge -> edge continuing it over a crossing
    for n, node in enumerate(d.nodes):
        if node.kind != "crossing":
            continue
        a = node.over
        e1, h1 = d.he_edge[node.slots[a]]
        e2, h2 = d.he_edge[node.slots[a + 2]]
        if h1 == h2:
            raise DiagramError(f"crossing {node.id}: inconsistent over-strand orientation")
        if h1:
            nxt[e1] = e2
        else:
            nxt[e2] = e1
    prv = {b: a for a, b in nxt.items()}
    arcs = []
    used = [False] * len(d.edges)
    order = [e for e in range(len(d.edges)) if e not in prv] + list(range(len(d.edges)))
    for e0 in order:
        if used[e0]:
            continue
        chain = [e0]
        used[e0] = True
        e = e0
        while e in nxt and not used[nxt[e]]:
            e = nxt[e]
            used[e] = True
            chain.append(e)
        edge0, edge1 = d.edges[chain[0]], d.edges[chain[-1]]
        if edge0.closed or (chain[-1] in nxt and nxt[chain[-1]] == chain[0]):
            start = end = None
        else:
            start, end = d.he_loc[edge0.tail], d.he_loc[edge1.head]
        arcs.append(Arc(len(arcs), tuple(chain), start, end))
    return tuple(arcs)


def trace_regions(d: Diagram) -> tuple:
    return d.regions


def crossing_sign(d: Diagram, crossing) -> int:
    if isinstance(crossing, str):
        crossing = d.node_index(crossing)
    for c in d.crossings:
        if c.node == crossing:
            return c.sign
    raise DiagramError(f"node {crossing} is not a crossing")


# ----------------------------------------------------------------------
# transformations


def mirror(d: Diagram) -> Diagram:
    """Reflect the plane: reverse every rotation, keep over/under and directions."""
    nodes = []
    for node in d.nodes:
        s = node.slots
        nodes.append(replace(node, slots=(s[0],) + tuple(reversed(s[1:]))))
    outer = None
    if d.outer is not None:
        outer = (d.outer[0], "R" if d.outer[1] == "L" else "L")
    return Diagram(tuple(nodes), d.edges, d.half_edges, outer, d.name + "*", ())


def reverse_edge(d: Diagram, edge) -> Diagram:
    """Reverse the graph edge (maximal chain through crossings) containing ``edge``."""
    e0 = d.edge_index(edge) if isinstance(edge, str) else edge
    if not 0 <= e0 < len(d.edges):
        raise DiagramError(f"unknown edge {edge!r}")
    group = d.graph_edges[e0]
    edges = tuple(
        Edge(ed.id, ed.head, ed.tail) if d.graph_edges[e] == group else ed
        for e, ed in enumerate(d.edges)
    )
    outer = None
    if d.outer is not None:
        oe, side = d.outer
        if d.graph_edges[oe] == group:
            side = "R" if side == "L" else "L"
        outer = (oe, side)
    return Diagram(d.nodes, edges, d.half_edges, outer, d.name, d.expect)


# ----------------------------------------------------------------------
# text format

_OVER = re.compile(r"over=([0-3]),([0-3])")


def parse_diagram(text: str) -> Diagram:
    he_names: list = []
    he_index: dict = {}

    def he(tok, lineno):
        if tok not in he_index:
            he_index[tok] = len(he_names)
            he_names.append(tok)
        return he_index[tok]

    nodes, edges = [], []
    outer_tok = None
    name = ""
    expect = []
    ids = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kw = tok[0]

        def fail(msg):
            raise DiagramError(f"line {lineno}: {msg}")

        if kw in ("vertex", "crossing", "edge", "circle"):
            if len(tok) < 2:
                fail(f"{kw} needs an id")
            key = ("edge" if kw in ("edge", "circle") else "node", tok[1])
            if key in ids:
                fail(f"duplicate {key[0]} id {tok[1]!r}")
            ids.add(key)
        if kw == "vertex":
            if len(tok) != 5:
                fail("vertex takes an id and three half-edges")
            nodes.append(Node("vertex", tok[1], tuple(he(t, lineno) for t in tok[2:])))
        elif kw == "crossing":
            if len(tok) != 7:
                fail("crossing takes an id, four half-edges and over=i,j")
            m = _OVER.fullmatch(tok[6])
            if m is None:
                fail(f"bad over designation {tok[6]!r}")
            a, b = sorted((int(m.group(1)), int(m.group(2))))
            if b - a != 2:
                fail("over pair not opposite")
            nodes.append(Node("crossing", tok[1], tuple(he(t, lineno) for t in tok[2:6]), a))
        elif kw == "edge":
            if len(tok) != 4:
                fail("edge takes an id, a tail and a head half-edge")
            edges.append((tok[1], he(tok[2], lineno), he(tok[3], lineno), lineno))
        elif kw == "circle":
            if len(tok) != 2:
                fail("circle takes only an id")
            edges.append((tok[1], None, None, lineno))
        elif kw == "outer":
            if len(tok) != 3 or tok[2] not in ("L", "R"):
                fail("outer takes a half-edge and L or R")
            outer_tok = (tok[1], tok[2], lineno)
        elif kw == "name":
            name = line.split(None, 1)[1] if len(tok) > 1 else ""
        elif kw == "expect":
            parts = line.split(None, 2)
            if len(parts) != 3:
                fail("expect takes a mode and a value")
            expect.append((parts[1], parts[2].replace(" ", "")))
        else:
            fail(f"unknown directive {kw!r}")
    if not edges:
        raise DiagramError("diagram has no edges")
    he_edges = {}
    for e, (eid, t, h, lineno) in enumerate(edges):
        if t is not None:
            for x in (t, h):
                if x in he_edges:
                    raise DiagramError(
                        f"line {lineno}: duplicate half-edge {he_names[x]!r}"
                    )
                he_edges[x] = e
    outer = None
    if outer_tok is not None:
        tok, side, lineno = outer_tok
        if tok in he_index and he_index[tok] in he_edges:
            outer = (he_edges[he_index[tok]], side)
        else:
            for e, (eid, *_rest) in enumerate(edges):
                if eid == tok:
                    outer = (e, side)
            if outer is None:
                raise DiagramError(f"line {lineno}: unknown half-edge {tok!r}")
    return Diagram(
        tuple(nodes),
        tuple(Edge(eid, t, h) for eid, t, h, _ in edges),
        tuple(he_names),
        outer,
        name,
        tuple(expect),
    )


def load_diagram(path) -> Diagram:
    with open(path) as fh:
        d = parse_diagram(fh.read())
    if not d.name:
        import os

        d = replace_name(d, os.path.splitext(os.path.basename(str(path)))[0])
    return d


def replace_name(d: Diagram, name: str) -> Diagram:
    return Diagram(d.nodes, d.edges, d.half_edges, d.outer, name, d.expect)


def format_diagram(d: Diagram) -> str:
    H = d.half_edges
    lines = []
    if d.name:
        lines.append(f"name {d.name}")
    for mode, value in d.expect:
        lines.append(f"expect {mode} {value}")
    for node in d.nodes:
        hs = " ".join(H[h] for h in node.slots)
        if node.kind == "vertex":
            lines.append(f"vertex {node.id} {hs}")
        else:
            lines.append(f"crossing {node.id} {hs} over={node.over},{node.over + 2}")
    for edge in d.edges:
        if edge.closed:
            lines.append(f"circle {edge.id}")
        else:
            lines.append(f"edge {edge.id} {H[edge.tail]} {H[edge.head]}")
    if d.outer is not None:
        e, side = d.outer
        edge = d.edges[e]
        lines.append(f"outer {edge.id if edge.closed else H[edge.tail]} {side}")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# planar-diagram codes


def from_pd(
    crossings: Sequence,
    vertices: Sequence = (),
    orient: Optional[dict] = None,
    name: str = "",
) -> Diagram:
    """Build a diagram from a planar-diagram code.

    ``crossings`` are ``[i, j, k, l]`` tuples of edge labels listed
    counterclockwise starting from the incoming under-strand (so the
    under-strand runs ``i -> k``).  ``vertices`` are ``[a, b, c]`` tuples,
    counterclockwise.  Every label occurs exactly twice.  Edge directions are
    propagated from the under-strands; ``orient`` maps a label to the index
    (0 or 1) of its occurrence that is the tail, for labels that cannot be
    inferred.  Occurrences are counted in the order crossings then vertices.
    """
    nodes = []
    occ: dict = {}
    for ci, c in enumerate(crossings):
        nodes.append(("crossing", f"c{ci}", list(c)))
    for vi, v in enumerate(vertices):
        nodes.append(("vertex", f"v{vi}", list(v)))
    slots = []
    for ni, (kind, nid, labels) in enumerate(nodes):
        for s, lab in enumerate(labels):
            occ.setdefault(lab, []).append((ni, s))
            slots.append((ni, s))
    for lab, o in occ.items():
        if len(o) != 2:
            raise DiagramError(f"label {lab!r} occurs {len(o)} times")
    tail_occ: dict = {}  # label -> index of the tail occurrence

    def set_dir(lab, ni, s, outgoing):
        i = occ[lab].index((ni, s))
        t = i if outgoing else 1 - i
        if tail_occ.get(lab, t) != t:
            raise DiagramError(f"inconsistent orientation for label {lab!r}")
        changed = lab not in tail_occ
        tail_occ[lab] = t
        return changed

    for lab, t in (orient or {}).items():
        tail_occ[lab] = t
    for ni, (kind, nid, labels) in enumerate(nodes):
        if kind == "crossing":
            set_dir(labels[0], ni, 0, False)
            set_dir(labels[2], ni, 2, True)
    changed = True
    while changed:
        changed = False
        for ni, (kind, nid, labels) in enumerate(nodes):
            if kind != "crossing":
                continue
            j, l = labels[1], labels[3]
            for a, sa, b, sb in ((j, 1, l, 3), (l, 3, j, 1)):
                if a in tail_occ:
                    out_a = occ[a][tail_occ[a]] == (ni, sa)
                    if occ[a][0] == occ[a][1]:
                        continue
                    changed |= set_dir(b, ni, sb, not out_a)
    missing = [lab for lab in occ if lab not in tail_occ]
    if missing:
        raise DiagramError(f"cannot infer orientation of labels {missing}")
    he_names = []
    node_slots = [[None] * len(labels) for _, _, labels in nodes]
    edges = []
    for lab, o in occ.items():
        t = tail_occ[lab]
        names = []
        for role, (ni, s) in (("t", o[t]), ("h", o[1 - t])):
            node_slots[ni][s] = len(he_names)
            names.append(len(he_names))
            he_names.append(f"{lab}{role}")
        edges.append(Edge(str(lab), names[0], names[1]))
    out_nodes = []
    for (kind, nid, labels), sl in zip(nodes, node_slots):
        out_nodes.append(Node(kind, nid, tuple(sl), 1 if kind == "crossing" else 1))
    return Diagram(tuple(out_nodes), tuple(edges), tuple(he_names), None, name)
