"""
The chain complex ``B_*(X)_Y`` and its degeneracy subcomplex ``D_*(X)_Y``.

A generator of ``B_n`` is a tuple ``(y, q1, ..., qn)`` of a Y-index and n
associated-quandle indices.  Chains are finitely supported integer
combinations of generators.  The quotient ``C_n = B_n / D_n`` is never
built; class-level statements go through cocycle evaluation or, for small
families, span membership mod p.
"""

from __future__ import annotations

from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Optional

import numpy as np

from ..algebra import GFamily, XSet, xset_trivial
from ..modp import RowSpace


class Chain:
    """A degree-n chain: a sparse map generator -> integer coefficient."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Optional[dict] = None):
        self.degree = degree
        self.terms = {}
        if terms:
            for g, c in terms.items():
                self.add_term(g, c)

    @classmethod
    def gen(cls, *g) -> "Chain":
        return cls(len(g) - 1, {tuple(g): 1})

    def add_term(self, g: tuple, c: int = 1) -> None:
        if len(g) != self.degree + 1:
            raise ValueError(f"generator {g} does not have degree {self.degree}")
        v = self.terms.get(g, 0) + c
        if v:
            self.terms[g] = v
        else:
            self.terms.pop(g, None)

    def __add__(self, other: "Chain") -> "Chain":
        if self.degree != other.degree:
            raise ValueError("degrees differ")
        out = Chain(self.degree, self.terms)
        for g, c in other.terms.items():
            out.add_term(g, c)
        return out

    def __neg__(self) -> "Chain":
        return Chain(self.degree, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __rmul__(self, k: int) -> "Chain":
        return Chain(self.degree, {g: k * c for g, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, Chain) and self.degree == other.degree and self.terms == other.terms

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def mod(self, p: int) -> "Chain":
        return Chain(self.degree, {g: c % p for g, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return f"Chain({self.degree}, 0)"
        parts = [f"{c:+d}*{g}" for g, c in sorted(self.terms.items())]
        return f"Chain({self.degree}, " + " ".join(parts) + ")"


class QuandleComplex:
    """Boundary and degeneracy machinery for a G-family and an X-set."""

    def __init__(self, family: GFamily, ys: Optional[XSet] = None):
        self.family = family
        self.ys = ys if ys is not None else xset_trivial(family)

    @cached_property
    def qop(self) -> list:
        return self.family.associated.op.tolist()

    @cached_property
    def yq(self) -> list:
        """``yq[y][q] = y * q``."""
        return self.ys.q_action(self.family).tolist()

    @property
    def q_size(self) -> int:
        return self.family.q_size

    @property
    def y_size(self) -> int:
        return self.ys.y_size

    def act(self, prefix: tuple, q: int) -> tuple:
        """``((y, q1, ..., qi) * q) = (y*q, q1*q, ..., qi*q)``."""
        qop = self.qop
        return (self.yq[prefix[0]][q],) + tuple(qop[a][q] for a in prefix[1:])

    def boundary_gen(self, g: tuple) -> Chain:
        n = len(g) - 1
        out = Chain(max(n - 1, 0))
        if n <= 0:
            return Chain(0)
        for i in range(1, n + 1):
            s = (-1) ** i
            out.add_term(g[:i] + g[i + 1:], s)
            out.add_term(self.act(g[:i], g[i]) + g[i + 1:], -s)
        return out

    def boundary(self, c: Chain) -> Chain:
        if c.degree <= 0:
            return Chain(0)
        out = Chain(c.degree - 1)
        for g, k in c:
            for h, v in self.boundary_gen(g):
                out.add_term(h, k * v)
        return out

    def generators(self, n: int) -> Iterator[tuple]:
        for t in product(range(self.y_size), *[range(self.q_size)] * n):
            yield t

    def d_generators(self, n: int) -> Iterator[Chain]:
        """Generators of ``D_n``: repeated-x pairs and group-law splittings."""
        f = self.family
        nG = f.group.order
        mul = f.group.mul_list
        Y, Q, X = range(self.y_size), range(self.q_size), range(f.x_size)
        qi = f.q_index
        for i in range(1, n):
            for y, pre, x, g, h, post in product(
                Y, product(Q, repeat=i - 1), X, range(nG), range(nG), product(Q, repeat=n - i - 1)
            ):
                yield Chain.gen(y, *pre, qi(x, g), qi(x, h), *post)
        for i in range(1, n + 1):
            for y, pre, x, g, h, post in product(
                Y, product(Q, repeat=i - 1), X, range(nG), range(nG), product(Q, repeat=n - i)
            ):
                c = Chain(n)
                head = (y,) + pre
                c.add_term(head + (qi(x, mul[g][h]),) + post, 1)
                c.add_term(head + (qi(x, g),) + post, -1)
                c.add_term(self.act(head, qi(x, g)) + (qi(x, h),) + post, -1)
                yield c

    def d2_generators(self) -> Iterator[Chain]:
        return self.d_generators(2)

    # -- dense vectors for span tests ---------------------------------

    def index(self, g: tuple) -> int:
        i = g[0]
        for q in g[1:]:
            i = i * self.q_size + q
        return i

    def dim(self, n: int) -> int:
        return self.y_size * self.q_size ** n

    def vector(self, c: Chain, p: int) -> np.ndarray:
        v = np.zeros(self.dim(c.degree), dtype=np.int64)
        for g, k in c:
            v[self.index(g)] += k
        return v % p

    def d_span(self, n: int, p: int) -> RowSpace:
        rs = RowSpace(self.dim(n), p)
        batch = []
        for c in self.d_generators(n):
            batch.append(self.vector(c, p))
            if len(batch) >= 512:
                rs.add(np.array(batch))
                batch = []
        if batch:
            rs.add(np.array(batch))
        return rs

    def in_d_span(self, c: Chain, p: int, span: Optional[RowSpace] = None) -> bool:
        span = span if span is not None else self.d_span(c.degree, p)
        return span.contains(self.vector(c, p))


def boundary(c: Chain, family: GFamily, ys: Optional[XSet] = None) -> Chain:
    return QuandleComplex(family, ys).boundary(c)


def d2_generators(family: GFamily, ys: Optional[XSet] = None) -> Iterator[Chain]:
    return QuandleComplex(family, ys).d2_generators()
