"""
State-sum invariants of colored diagrams.

For a coloring ``C`` the weight of a crossing is the signed generator
``eps * (C(R), C(chi1), C(chi3))`` and the state cycle ``W(D;C)`` is their
sum.  A 2-cocycle evaluated on ``W`` gives one value per coloring; the
invariants collect these values as a multiset (``plain``), one multiset per
hom label (``hom``), or one multiset per conjugacy class of hom labels
(``conj``).
"""

from __future__ import annotations

import json
import os
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .algebra import GFamily, XSet
from .chains.cocycles import Cocycle2
from .chains.complex import Chain, QuandleComplex
from .coloring import Coloring, ColoringProblem, conj_keys
from .diagram import Diagram

MODES = ("plain", "hom", "conj")


class InvariantError(ValueError):
    pass


# ----------------------------------------------------------------------
# canonical multisets


def _inner(values) -> tuple:
    """Sorted ``(value, count)`` pairs."""
    if isinstance(values, Counter):
        c = values
    else:
        c = Counter()
        for v, k in values:
            c[v] += k
    return tuple(sorted((int(v), int(k)) for v, k in c.items() if k))


def _outer(pairs) -> tuple:
    """Sorted ``(inner, multiplicity)`` pairs.

    Inner multisets are ordered by their number of distinct values and then
    lexicographically, which puts all-zero entries first.
    """
    c = Counter()
    for inner, k in pairs:
        c[inner] += k
    return tuple(sorted(c.items(), key=lambda t: (len(t[0]), t[0])))


@dataclass(frozen=True)
class InvariantValue:
    """A multiset over ``Z_p`` (plain) or a multiset of such multisets."""

    mode: str
    p: int
    payload: tuple

    def __post_init__(self):
        if self.mode not in MODES:
            raise InvariantError(f"unknown mode {self.mode!r}")
        if self.mode == "plain":
            canon = _inner(self.payload)
        else:
            canon = _outer((_inner(i), k) for i, k in self.payload)
        object.__setattr__(self, "payload", canon)

    @classmethod
    def from_values(cls, values: Sequence[int], p: int) -> "InvariantValue":
        return cls("plain", p, tuple(Counter(int(v) % p for v in values).items()))

    @property
    def nested(self) -> bool:
        return self.mode != "plain"

    def total(self) -> int:
        """Number of colorings (plain) or of inner entries (hom, conj)."""
        if self.nested:
            return sum(k for _, k in self.payload)
        return sum(k for _, k in self.payload)

    def flatten(self) -> "InvariantValue":
        """Union of the inner multisets, each counted with its multiplicity."""
        if not self.nested:
            return self
        c = Counter()
        for inner, k in self.payload:
            for v, n in inner:
                c[v] += n * k
        return InvariantValue("plain", self.p, tuple(c.items()))

    def to_text(self) -> str:
        def inner(pairs):
            return "{" + ",".join(f"{v}_{k}" for v, k in pairs) + "}"

        if not self.nested:
            return inner(self.payload)
        return "{" + ",".join(f"{inner(i)}_{k}" for i, k in self.payload) + "}"

    def to_json(self) -> dict:
        if self.nested:
            value = [[[list(t) for t in i], k] for i, k in self.payload]
        else:
            value = [list(t) for t in self.payload]
        return {"mode": self.mode, "p": self.p, "value": value}

    def __str__(self):
        return self.to_text()


_ELEM = re.compile(r"(\d+)_(\d+)")
_GROUP = re.compile(r"\{([^{}]*)\}_(\d+)")


def _parse_inner(body: str) -> tuple:
    if not body:
        return ()
    out = []
    for part in body.split(","):
        m = _ELEM.fullmatch(part)
        if m is None:
            raise InvariantError(f"cannot parse multiset element {part!r}")
        out.append((int(m.group(1)), int(m.group(2))))
    return tuple(out)


def parse_invariant(text: str, p: int = 3, mode: Optional[str] = None) -> InvariantValue:
    """Parse the subscript notation, e.g. ``{{0_9}_83,{0_27}_22}``."""
    s = re.sub(r"\s+", "", text)
    if not (s.startswith("{") and s.endswith("}")):
        raise InvariantError(f"not a multiset: {text!r}")
    body = s[1:-1]
    if body.startswith("{"):
        pos, pairs = 0, []
        while pos < len(body):
            m = _GROUP.match(body, pos)
            if m is None:
                raise InvariantError(f"cannot parse near {body[pos:pos + 20]!r}")
            pairs.append((_parse_inner(m.group(1)), int(m.group(2))))
            pos = m.end()
            if pos < len(body):
                if body[pos] != ",":
                    raise InvariantError(f"expected ',' at {body[pos:pos + 20]!r}")
                pos += 1
        return InvariantValue(mode or "conj", p, tuple(pairs))
    return InvariantValue(mode or "plain", p, _parse_inner(body))


def from_json(obj: dict) -> InvariantValue:
    if obj["mode"] == "plain":
        payload = tuple(tuple(t) for t in obj["value"])
    else:
        payload = tuple((tuple(tuple(t) for t in i), k) for i, k in obj["value"])
    return InvariantValue(obj["mode"], obj["p"], payload)


def dumps(v: InvariantValue) -> str:
    return json.dumps(v.to_json(), separators=(",", ":"))


def negate(v: InvariantValue) -> InvariantValue:
    """Negate every value mod ``p``."""
    p = v.p
    if not v.nested:
        return InvariantValue(v.mode, p, tuple(((-a) % p, k) for a, k in v.payload))
    return InvariantValue(
        v.mode, p, tuple((tuple(((-a) % p, n) for a, n in i), k) for i, k in v.payload)
    )


# ----------------------------------------------------------------------
# weights and the state cycle


def weight(d: Diagram, crossing: int, c: Coloring) -> tuple:
    """``(sign, (y_R, C(chi1), C(chi3)))`` for the ``crossing``-th crossing."""
    x = d.crossings[crossing]
    y = c.regions[d.crossing_region(x)]
    return x.sign, (y, c.arcs[x.source_arc], c.arcs[x.over_arc])


def state_cycle(d: Diagram, c: Coloring) -> Chain:
    w = Chain(2)
    for i in range(d.n_crossings):
        s, g = weight(d, i, c)
        w.add_term(g, s)
    return w


def is_cycle_mod_d(w: Chain, family: GFamily, ys: Optional[XSet] = None, p: int = 3) -> bool:
    """``d_2 W`` lies in the span of the degree-1 degeneracies mod ``p``."""
    cx = QuandleComplex(family, ys)
    return cx.in_d_span(cx.boundary(w), p)


# ----------------------------------------------------------------------
# the invariants


class _StateSum:
    """Vectorized evaluation of ``theta(W(D;C))`` over the colorings of one hom."""

    def __init__(self, d: Diagram, family: GFamily, ys: Optional[XSet], theta: Cocycle2):
        self.problem = ColoringProblem(d, family, ys)
        self.theta = theta
        self.d = d
        xs = d.crossings
        self.sign = np.array([x.sign for x in xs], dtype=np.int64)
        self.src = np.array([x.source_arc for x in xs], dtype=np.int64)
        self.over = np.array([x.over_arc for x in xs], dtype=np.int64)
        self.corner = np.array([d.crossing_region(x) for x in xs], dtype=np.int64)
        ny = 1 if ys is None else ys.y_size
        nq = family.q_size
        if theta.table.shape != (ny, nq, nq):
            raise InvariantError(
                f"cocycle shape {theta.table.shape} does not fit (|Y|, |Q|, |Q|) = {(ny, nq, nq)}"
            )
        self.trivial = ys is None or ys.trivial

    def values(self, hom: Sequence[int]) -> Counter:
        pr = self.problem
        sols = pr.x_solutions(hom)
        if not sols:
            raise InvariantError(f"hom label {tuple(hom)} has no colorings")
        if len(self.sign) == 0:
            return Counter({0: len(sols) * pr.y_factor()})
        arcs = np.array([pr.arc_colors(hom, s) for s in sols], dtype=np.int64)
        T = self.theta.table
        if self.trivial:
            regions = np.zeros((len(sols), len(self.sign)), dtype=np.int64)
        else:
            rows, keep = [], []
            for i, a in enumerate(arcs.tolist()):
                for y0 in range(pr.ys.y_size):
                    rows.append(pr.region_colors(a, y0))
                    keep.append(i)
            arcs = arcs[keep]
            regions = np.array(rows, dtype=np.int64)[:, self.corner]
        vals = T[regions, arcs[:, self.src], arcs[:, self.over]]
        total = (vals * self.sign).sum(axis=1) % self.theta.p
        return Counter(total.tolist())


def _inner_for(args):
    ss, hom = args
    return _inner(ss.values(hom))


def _workers(workers: Optional[int]) -> int:
    if workers is None:
        workers = int(os.environ.get("QF_THREADS", "1") or 1)
    return max(1, workers)


def _map(ss: _StateSum, homs: list, workers: int) -> list:
    if workers <= 1 or len(homs) < 2:
        return [_inner(ss.values(h)) for h in homs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_inner_for, [(ss, h) for h in homs], chunksize=max(1, len(homs) // (4 * workers))))


def phi(
    d: Diagram,
    family: GFamily,
    theta: Cocycle2,
    mode: str = "conj",
    ys: Optional[XSet] = None,
    workers: Optional[int] = None,
) -> InvariantValue:
    """``Phi_theta`` of ``d`` in the given mode.

    In ``conj`` mode each class of hom labels contributes the multiset of its
    lexicographically least member; the other members give the same multiset.
    """
    if mode not in MODES:
        raise InvariantError(f"unknown mode {mode!r}")
    ss = _StateSum(d, family, ys, theta)
    homs = ss.problem.hom_array
    n = _workers(workers)
    if mode == "conj":
        reps = sorted(set(conj_keys(homs, family.group)))
        inners = _map(ss, reps, n)
        return InvariantValue("conj", theta.p, tuple((i, 1) for i in inners))
    inners = _map(ss, [tuple(h) for h in homs.tolist()], n)
    hom_value = InvariantValue("hom", theta.p, tuple((i, 1) for i in inners))
    return hom_value if mode == "hom" else hom_value.flatten()


def phi_for_hom(
    d: Diagram, family: GFamily, theta: Cocycle2, hom: Sequence[int], ys: Optional[XSet] = None
) -> InvariantValue:
    """``Phi_theta(D; rho)`` for one hom label as a plain multiset."""
    ss = _StateSum(d, family, ys, theta)
    return InvariantValue("plain", theta.p, tuple(ss.values(hom).items()))


def col_counts(d: Diagram, family: GFamily, mode: str = "plain", ys: Optional[XSet] = None):
    """Coloring counts: the total, or sorted ``(count, multiplicity)`` pairs per hom or class."""
    pr = ColoringProblem(d, family, ys)
    if mode == "plain":
        return pr.count()
    homs = pr.hom_array
    if mode == "hom":
        c = Counter(pr.count_for_hom(h) for h in homs.tolist())
    elif mode == "conj":
        keys = Counter(conj_keys(homs, family.group))
        c = Counter()
        for k in keys:
            c[pr.count_for_hom(k)] += 1
    else:
        raise InvariantError(f"unknown mode {mode!r}")
    return tuple(sorted(c.items()))
