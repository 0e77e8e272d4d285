"""
Diagrams from strand words: plat-style layouts read bottom to top.

A word is a sequence of events applied to a row of vertical strands
(positions are 1-based, left to right):

``("cap", i)``
    a new arc enters from below as two strands at positions ``i, i+1``.
``("cup", i)``
    strands ``i`` and ``i+1`` are joined above.
``("x", i, "L")`` / ``("x", i, "R")``
    strands ``i`` and ``i+1`` cross; ``L`` means the strand coming from the
    lower left passes over.
``("merge", i)``
    strands ``i`` and ``i+1`` meet at a vertex and leave as one strand.
``("split", i)``
    strand ``i`` ends at a vertex and leaves as two strands.
``("rung", i)``
    a horizontal edge joins strands ``i`` and ``i+1`` at two vertices.

Edge directions are chosen by walking every graph edge from one end.
"""

from __future__ import annotations

from itertools import count
from typing import Sequence

from .diagram import Diagram, DiagramError, from_pd


def _orient(crossings: list, vertices: list) -> tuple:
    """Crossings as ``(ccw labels from SW, under slot)``; returns PD lists and tails."""
    nodes = [c[0] for c in crossings] + list(vertices)
    kinds = ["c"] * len(crossings) + ["v"] * len(vertices)
    occ: dict = {}
    for ni, labs in enumerate(nodes):
        for s, lab in enumerate(labs):
            occ.setdefault(lab, []).append((ni, s))
    for lab, o in occ.items():
        if len(o) != 2:
            raise DiagramError(f"label {lab} occurs {len(o)} times")
    tail: dict = {}

    def walk(lab, start):
        while lab not in tail:
            o = occ[lab]
            t = o.index(start)
            tail[lab] = t
            ni, s = o[1 - t]
            if kinds[ni] == "v":
                return
            start = (ni, (s + 2) % 4)
            lab = nodes[ni][(s + 2) % 4]

    for ni, labs in enumerate(nodes):
        if kinds[ni] == "v":
            for s, lab in enumerate(labs):
                if lab not in tail:
                    walk(lab, (ni, s))
    for lab in occ:
        if lab not in tail:
            walk(lab, occ[lab][0])
    pd, shift = [], {}
    for ni, (labs, us) in enumerate(crossings):
        s = us
        lab = labs[us]
        if occ[lab][tail[lab]] == (ni, us):  # leaves here, so the other under slot is incoming
            s = us + 2
        pd.append(labs[s:] + labs[:s])
        shift[ni] = s
    # tails as occurrence indices in the order the planar code lists them
    tails = {}
    for lab, o in occ.items():
        moved = [(ni, (s - shift.get(ni, 0)) % 4 if kinds[ni] == "c" else s) for ni, s in o]
        t = moved[tail[lab]]
        tails[lab] = sorted(moved).index(t)
    return pd, tails


def from_strands(word: Sequence[tuple], name: str = "") -> Diagram:
    lab = count(1)
    pos: list = []
    crossings, vertices = [], []
    parent: dict = {}

    def find(a):
        while a in parent:
            a = parent[a]
        return a

    for ev in word:
        kind, i = ev[0], ev[1] - 1
        if kind == "cap":
            a = next(lab)
            pos[i:i] = [a, a]
            continue
        if not 0 <= i < len(pos) - (0 if kind == "split" else 1):
            raise DiagramError(f"event {ev} outside {len(pos)} strands")
        if kind == "cup":
            a, b = find(pos[i]), find(pos[i + 1])
            if a == b:
                raise DiagramError(f"event {ev} closes a crossingless circle")
            parent[b] = a
            del pos[i:i + 2]
        elif kind == "x":
            a, b = pos[i], pos[i + 1]
            c, d = next(lab), next(lab)
            # ccw from the lower left: a (SW), b (SE), d (NE), c (NW)
            crossings.append(([a, b, d, c], 1 if ev[2] == "L" else 0))
            pos[i], pos[i + 1] = c, d
        elif kind == "merge":
            a, b, c = pos[i], pos[i + 1], next(lab)
            vertices.append([c, a, b])
            pos[i:i + 2] = [c]
        elif kind == "split":
            a, c, d = pos[i], next(lab), next(lab)
            vertices.append([d, c, a])
            pos[i:i + 1] = [c, d]
        elif kind == "rung":
            a, b = pos[i], pos[i + 1]
            c, d, r = next(lab), next(lab), next(lab)
            vertices += [[r, c, a], [d, r, b]]
            pos[i], pos[i + 1] = c, d
        else:
            raise DiagramError(f"unknown event {ev}")
    if pos:
        raise DiagramError(f"{len(pos)} strands left open")
    crossings = [([find(x) for x in c], u) for c, u in crossings]
    vertices = [[find(x) for x in v] for v in vertices]
    pd, tail = _orient(crossings, vertices)
    return from_pd(pd, vertices, orient=tail, name=name)
