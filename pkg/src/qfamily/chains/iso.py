"""
The X-indexed complex of a ``Z_m``-family and the chain maps
``f: C^I -> C`` and ``g: C -> C^I`` between it and the ``X x G`` complex.

Generators of ``B^I_n`` are tuples ``(y, x1, ..., xn)``; they reuse
:class:`Chain`, which only cares about tuple length.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator, Optional

import numpy as np

from ..algebra import GFamily, XSet, xset_trivial
from ..modp import RowSpace
from .cocycles import Cocycle2, CocycleError, CocycleReport, check_cocycle2
from .complex import Chain

IChain = Chain


def _cyclic_order(family: GFamily) -> int:
    m = family.group.cyclic
    if m is None:
        raise CocycleError("the X-indexed complex needs a family over a cyclic group Z_m")
    return m


class IComplex:
    """Boundary, degeneracies and chain maps for a ``Z_m``-family."""

    def __init__(self, family: GFamily, ys: Optional[XSet] = None):
        self.m = _cyclic_order(family)
        self.family = family
        self.ys = ys if ys is not None else xset_trivial(family)
        self.op = family.op.tolist()  # op[x][j][y] = x *^j y
        self.act_y = self.ys.act.tolist()  # act_y[y][j][x] = y *^j x

    @property
    def x_size(self) -> int:
        return self.family.x_size

    @property
    def y_size(self) -> int:
        return self.ys.y_size

    def act(self, prefix: tuple, j: int, x: int) -> tuple:
        """``(y, x1, ..., xi) *^j x``."""
        op = self.op
        return (self.act_y[prefix[0]][j][x],) + tuple(op[a][j][x] for a in prefix[1:])

    def boundary(self, c: Chain) -> Chain:
        if c.degree <= 0:
            return Chain(0)
        out = Chain(c.degree - 1)
        for g, k in c:
            for i in range(1, c.degree + 1):
                s = (-1) ** i * k
                out.add_term(g[:i] + g[i + 1:], s)
                out.add_term(self.act(g[:i], 1, g[i]) + g[i + 1:], -s)
        return out

    def generators(self, n: int) -> Iterator[tuple]:
        yield from product(range(self.y_size), *[range(self.x_size)] * n)

    def d_generators(self, n: int) -> Iterator[Chain]:
        Y, X = range(self.y_size), range(self.x_size)
        for i in range(1, n):
            for y, pre, x, post in product(Y, product(X, repeat=i - 1), X, product(X, repeat=n - i - 1)):
                yield Chain.gen(y, *pre, x, x, *post)
        for i in range(1, n + 1):
            for y, pre, x, post in product(Y, product(X, repeat=i - 1), X, product(X, repeat=n - i)):
                c = Chain(n)
                for j in range(self.m):
                    c.add_term(self.act((y,) + pre, j, x) + (x,) + post, 1)
                yield c

    def index(self, g: tuple) -> int:
        i = g[0]
        for x in g[1:]:
            i = i * self.x_size + x
        return i

    def dim(self, n: int) -> int:
        return self.y_size * self.x_size ** n

    def vector(self, c: Chain, p: int) -> np.ndarray:
        v = np.zeros(self.dim(c.degree), dtype=np.int64)
        for g, k in c:
            v[self.index(g)] += k
        return v % p

    # -- chain maps ----------------------------------------------------

    def f(self, c: Chain) -> Chain:
        """``(y, x1, ..., xn) -> (y, (x1,1), ..., (xn,1))``."""
        qi = self.family.q_index
        one = 1 % self.m
        out = Chain(c.degree)
        for g, k in c:
            out.add_term((g[0],) + tuple(qi(x, one) for x in g[1:]), k)
        return out

    def g(self, c: Chain) -> Chain:
        """Nested sums ``sum_{i_k < s_k}`` with exponents read in ``0..m-1``."""
        split = self.family.q_split
        out = Chain(c.degree)
        for gen, k in c:
            partial = [((gen[0],), 1)]
            for q in gen[1:]:
                x, s = split(q)
                partial = [(self.act(t, i, x) + (x,), 1) for t, _ in partial for i in range(s)]
            for t, _ in partial:
                out.add_term(t, k)
        return out


def i_boundary(c: Chain, family: GFamily, ys: Optional[XSet] = None) -> Chain:
    return IComplex(family, ys).boundary(c)


def i_d_generators(family: GFamily, ys: Optional[XSet] = None, n: int = 2) -> Iterator[Chain]:
    return IComplex(family, ys).d_generators(n)


def chain_map_f(c: Chain, family: GFamily, ys: Optional[XSet] = None) -> Chain:
    return IComplex(family, ys).f(c)


def chain_map_g(c: Chain, family: GFamily, ys: Optional[XSet] = None) -> Chain:
    return IComplex(family, ys).g(c)


# ----------------------------------------------------------------------
# cocycles of the X-indexed complex


def _i_constraints(cx: IComplex, p: int) -> Iterator[np.ndarray]:
    for g in cx.generators(3):
        yield cx.vector(cx.boundary(Chain.gen(*g)), p)
    yield from (cx.vector(c, p) for c in cx.d_generators(2))


def i_check_cocycle2(table: np.ndarray, p: int, family: GFamily, ys: Optional[XSet] = None) -> CocycleReport:
    """Exhaustive check of an I-cochain ``table[y, x1, x2]``."""
    cx = IComplex(family, ys)
    t = np.asarray(table, dtype=np.int64) % p
    if t.shape != (cx.y_size, cx.x_size, cx.x_size):
        raise CocycleError(f"I-cochain shape {t.shape} does not match {(cx.y_size, cx.x_size, cx.x_size)}")
    flat = t.ravel()
    checked = {"d3": 0, "D2": 0}
    for g in cx.generators(3):
        checked["d3"] += 1
        b = cx.boundary(Chain.gen(*g))
        v = int(cx.vector(b, p) @ flat % p)
        if v:
            return CocycleReport(checked, "thetaI(d3(c)) != 0", Chain.gen(*g), v)
    for c in cx.d_generators(2):
        checked["D2"] += 1
        v = int(cx.vector(c, p) @ flat % p)
        if v:
            return CocycleReport(checked, "thetaI nonzero on a degeneracy generator", c, v)
    return CocycleReport(checked)


def i_solve_cocycles2(family: GFamily, ys: Optional[XSet] = None, p: int = 2, bound: int = 10_000) -> list:
    """A basis of the I-cocycles ``Y x X^2 -> Z_p`` as value tables."""
    cx = IComplex(family, ys)
    n = cx.dim(2)
    if n > bound:
        raise CocycleError(f"{n} unknowns exceed the bound {bound}")
    rs = RowSpace(n, p)
    batch = []
    for v in _i_constraints(cx, p):
        batch.append(v)
        if len(batch) >= 1024:
            rs.add(np.array(batch))
            batch = []
    if batch:
        rs.add(np.array(batch))
    shape = (cx.y_size, cx.x_size, cx.x_size)
    return [v.reshape(shape) for v in rs.nullspace()]


def pullback_cocycle(table: np.ndarray, p: int, family: GFamily, ys: Optional[XSet] = None) -> Cocycle2:
    """``thetaI o g_2`` as a value table on ``Y x Q^2``."""
    report = i_check_cocycle2(table, p, family, ys)
    if not report:
        raise CocycleError(f"input is not an I-cocycle: {report}")
    cx = IComplex(family, ys)
    t = np.asarray(table, dtype=np.int64) % p
    nq = family.q_size
    out = np.zeros((cx.y_size, nq, nq), dtype=np.int64)
    for y, a, b in product(range(cx.y_size), range(nq), range(nq)):
        out[y, a, b] = sum(k * int(t[g]) for g, k in cx.g(Chain.gen(y, a, b)))
    return Cocycle2(p, out % p, "pullback")
