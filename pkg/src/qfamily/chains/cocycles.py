"""
2-cocycles with coefficients in ``Z_p``: verification, search, and the
SL(2;Z_3) cocycle on ``(Z_3)^2``.

A 2-cochain is a value table ``table[y, q1, q2]``.  It is a cocycle of the
quotient complex when it kills every ``d_3``-boundary and every degree-2
degeneracy generator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..algebra import GFamily, Mat2, XSet, gfamily_linear, xset_trivial
from ..modp import RowSpace
from .complex import Chain, QuandleComplex


class CocycleError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Cocycle2:
    p: int
    table: np.ndarray  # [y, q1, q2] -> Z_p
    name: str = ""

    def __post_init__(self):
        t = np.array(self.table, dtype=np.int64) % self.p
        if t.ndim != 3 or t.shape[1] != t.shape[2]:
            raise CocycleError(f"cocycle table has bad shape {t.shape}")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    def __call__(self, c: Chain) -> int:
        if c.degree != 2:
            raise CocycleError("a 2-cochain evaluates degree-2 chains")
        t = self.table
        return sum(k * int(t[g]) for g, k in c) % self.p

    def __eq__(self, other):
        return (
            isinstance(other, Cocycle2)
            and self.p == other.p
            and np.array_equal(self.table, other.table)
        )


@dataclass
class CocycleReport:
    checked: dict
    failure: Optional[str] = None
    witness: Optional[Chain] = None
    value: int = 0

    def __bool__(self):
        return self.failure is None

    def __str__(self):
        counts = ", ".join(f"{k}: {v}" for k, v in self.checked.items())
        if self:
            return f"PASS cocycle ({counts})"
        return f"FAIL cocycle: {self.failure} at {self.witness!r} (value {self.value}) ({counts})"


def zero_cocycle(family: GFamily, ys: Optional[XSet] = None, p: int = 3) -> Cocycle2:
    ny = 1 if ys is None else ys.y_size
    return Cocycle2(p, np.zeros((ny, family.q_size, family.q_size), dtype=np.int64), "zero")


def check_cocycle2(theta: Cocycle2, family: GFamily, ys: Optional[XSet] = None) -> CocycleReport:
    """Exhaustive check of ``theta o d_3 = 0`` and ``theta |_{D_2} = 0``.

    Failing generators are reported in lexicographic order: first the
    ``d_3`` condition over ``(y, q1, q2, q3)``, then the degeneracy families.
    """
    ys = ys if ys is not None else xset_trivial(family)
    T = theta.table
    p = theta.p
    nq, ny = family.q_size, ys.y_size
    if T.shape != (ny, nq, nq):
        raise CocycleError(f"table shape {T.shape} does not match (|Y|, |Q|, |Q|) = {(ny, nq, nq)}")
    Qop = family.associated.op
    YQ = ys.q_action(family)
    cx = QuandleComplex(family, ys)
    checked = {}
    q = np.arange(nq)
    Q2, Q3 = q[:, None], q[None, :]
    n_d3 = 0
    for y in range(ny):
        for q1 in range(nq):
            y1 = YQ[y, q1]
            y2 = YQ[y][:, None]  # y * q2
            y3 = YQ[y][None, :]  # y * q3
            m12 = Qop[q1][:, None]  # q1 * q2
            m13 = Qop[q1][None, :]  # q1 * q3
            val = (
                -T[y][Q2, Q3]
                + T[y1][Q2, Q3]
                + T[y][q1][Q3]
                - T[y2, m12, Q3]
                - T[y][q1][Q2]
                + T[y3, m13, Qop[Q2, Q3]]
            ) % p
            n_d3 += val.size
            if val.any():
                i, j = np.unravel_index(int(np.argmax(val != 0)), val.shape)
                checked["d3"] = n_d3
                return CocycleReport(
                    checked, "theta(d3(c)) != 0", Chain.gen(y, q1, int(i), int(j)), int(val[i, j])
                )
    checked["d3"] = n_d3
    nx, nG = family.x_size, family.group.order
    mul = family.group.mul
    x = np.arange(nx)[:, None, None]
    g = np.arange(nG)[None, :, None]
    h = np.arange(nG)[None, None, :]
    qxg, qxh, qxgh = x * nG + g, x * nG + h, x * nG + mul[g, h]
    n1 = n2 = 0
    for y in range(ny):
        val = T[y][qxg, qxh] % p
        n1 += val.size
        if val.any():
            xi, gi, hi = np.unravel_index(int(np.argmax(val != 0)), val.shape)
            checked["D2 repeated"] = n1
            gen = Chain.gen(y, family.q_index(xi, gi), family.q_index(xi, hi))
            return CocycleReport(checked, "theta nonzero on a repeated-x generator", gen, int(val[xi, gi, hi]))
    checked["D2 repeated"] = n1
    bad = None
    for y in range(ny):
        for qq in range(nq):
            # i = 1 : (y,(x,gh),q) - (y,(x,g),q) - (y*(x,g),(x,h),q)
            v1 = (T[y][qxgh, qq] - T[y][qxg, qq] - T[YQ[y][qxg], qxh, qq]) % p
            # i = 2 : (y,q,(x,gh)) - (y,q,(x,g)) - ((y,q)*(x,g),(x,h))
            v2 = (T[y][qq][qxgh] - T[y][qq][qxg] - T[YQ[y][qxg], Qop[qq][qxg], qxh]) % p
            n2 += v1.size + v2.size
            for which, v in ((1, v1), (2, v2)):
                if v.any() and bad is None:
                    xi, gi, hi = np.unravel_index(int(np.argmax(v != 0)), v.shape)
                    bad = (which, y, qq, int(xi), int(gi), int(hi), int(v[xi, gi, hi]))
            if bad is not None:
                break
        if bad is not None:
            break
    checked["D2 splitting"] = n2
    if bad is not None:
        which, y, qq, xi, gi, hi, value = bad
        qi = family.q_index
        gen = Chain(2)
        gh = int(mul[gi, hi])
        if which == 1:
            gen.add_term((y, qi(xi, gh), qq), 1)
            gen.add_term((y, qi(xi, gi), qq), -1)
            gen.add_term(cx.act((y,), qi(xi, gi)) + (qi(xi, hi), qq), -1)
        else:
            gen.add_term((y, qq, qi(xi, gh)), 1)
            gen.add_term((y, qq, qi(xi, gi)), -1)
            gen.add_term(cx.act((y, qq), qi(xi, gi)) + (qi(xi, hi),), -1)
        return CocycleReport(checked, "theta nonzero on a group-law splitting generator", gen, value)
    return CocycleReport(checked)


# ----------------------------------------------------------------------
# the SL(2;Z_3) cocycle


def lambda_ab(g: Mat2) -> int:
    """Abelianization ``SL(2;Z_3) -> Z_3``: ``(a+d)(b-c)(1-bc)``."""
    return ((g.a + g.d) * (g.b - g.c) * (1 - g.b * g.c)) % 3


def nosaka_theta(family: GFamily, ys: Optional[XSet] = None) -> Cocycle2:
    """``theta(y,(x1,g1),(x2,g2)) = lambda(g1) det(x1 - x2, x2 (e - g2^-1))``."""
    grp = family.group
    if family.modulus != 3 or grp.matrices is None or grp.order != 24 or family.x_size != 9:
        raise CocycleError("the SL(2;Z_3) cocycle needs the linear family on (Z_3)^2")
    if not np.array_equal(family.op, gfamily_linear(3, grp).op):
        raise CocycleError("the family table is not x g + y (e - g)")
    if ys is not None and not ys.trivial:
        raise CocycleError("the SL(2;Z_3) cocycle is defined for the trivial X-set")
    lam = np.array([lambda_ab(g) for g in grp.matrices])
    mats = np.array([g.as_array() for g in grp.matrices])
    e_minus_ginv = np.eye(2, dtype=np.int64)[None] - mats[grp.inv]  # [g2]
    vec = np.array([family.vector(x) for x in range(9)])  # [x]
    nq = family.q_size
    qs = np.arange(nq)
    x, g = qs // 24, qs % 24
    r1 = vec[x][:, None, :] - vec[x][None, :, :]  # [q1, q2, 2]
    r2 = np.einsum("bi,bij->bj", vec[x], e_minus_ginv[g])  # [q2, 2]
    det = r1[..., 0] * r2[None, :, 1] - r1[..., 1] * r2[None, :, 0]
    table = (lam[g][:, None] * det) % 3
    return Cocycle2(3, table[None], "nosaka-sl2z3")


# ----------------------------------------------------------------------
# solving for cocycles


def _d3_rows(cx: QuandleComplex, p: int):
    """Dense constraint rows ``theta o d_3`` in chunks, one per generator."""
    nq, ny = cx.q_size, cx.y_size
    dim2 = cx.dim(2)
    Qop = cx.family.associated.op
    YQ = cx.ys.q_action(cx.family)
    q = np.arange(nq)
    Q2, Q3 = np.meshgrid(q, q, indexing="ij")
    Q2, Q3 = Q2.ravel(), Q3.ravel()
    rows_idx = np.arange(nq * nq)

    def idx(y, a, b):
        return (y * nq + a) * nq + b

    for y in range(ny):
        for q1 in range(nq):
            m = np.zeros((nq * nq, dim2), dtype=np.int64)
            terms = (
                (-1, idx(y, Q2, Q3)),
                (1, idx(YQ[y, q1], Q2, Q3)),
                (1, idx(y, q1, Q3)),
                (-1, idx(YQ[y][Q2], Qop[q1][Q2], Q3)),
                (-1, idx(y, q1, Q2)),
                (1, idx(YQ[y][Q3], Qop[q1][Q3], Qop[Q2, Q3])),
            )
            for s, cols in terms:
                np.add.at(m, (rows_idx, cols), s)
            yield m % p


def solve_cocycles2(
    family: GFamily, ys: Optional[XSet] = None, p: int = 3, bound: int = 10_000
) -> list:
    """A basis of the 2-cocycles ``Y x Q^2 -> Z_p`` of the quotient complex."""
    cx = QuandleComplex(family, ys)
    n = cx.dim(2)
    if n > bound:
        raise CocycleError(f"{n} unknowns exceed the bound {bound}")
    rs = RowSpace(n, p)
    for chunk in _d3_rows(cx, p):
        rs.add(chunk)
    batch = []
    for c in cx.d2_generators():
        batch.append(cx.vector(c, p))
        if len(batch) >= 1024:
            rs.add(np.array(batch))
            batch = []
    if batch:
        rs.add(np.array(batch))
    shape = (cx.y_size, cx.q_size, cx.q_size)
    return [Cocycle2(p, v.reshape(shape)) for v in rs.nullspace()]


def coboundary(phi: np.ndarray, family: GFamily, ys: Optional[XSet] = None, p: int = 3) -> Cocycle2:
    """``(delta phi)(c) = phi(d_2 c)`` for a 1-cochain ``phi[y, q]``."""
    cx = QuandleComplex(family, ys)
    nq = cx.q_size
    t = np.zeros((cx.y_size, nq, nq), dtype=np.int64)
    for y, a, b in cx.generators(2):
        t[y, a, b] = sum(k * int(phi[g]) for g, k in cx.boundary_gen((y, a, b)))
    return Cocycle2(p, t % p)


# ----------------------------------------------------------------------
# text format: "(y, q1, q2) -> value"

_LINE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*->\s*(-?\d+)")


def format_cocycle(theta: Cocycle2) -> str:
    ny, nq, _ = theta.table.shape
    lines = [f"modulus {theta.p}", f"shape {ny} {nq}"]
    if theta.name:
        lines.insert(0, f"name {theta.name}")
    for y, a, b in zip(*np.nonzero(theta.table)):
        lines.append(f"({y}, {a}, {b}) -> {theta.table[y, a, b]}")
    return "\n".join(lines) + "\n"


def parse_cocycle(text: str) -> Cocycle2:
    p = shape = None
    name = ""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("modulus"):
            p = int(line.split()[1])
        elif line.startswith("shape"):
            shape = tuple(int(t) for t in line.split()[1:3])
        elif line.startswith("name"):
            name = line.split(None, 1)[1]
        else:
            m = _LINE.fullmatch(line)
            if m is None:
                raise CocycleError(f"line {lineno}: cannot parse {line!r}")
            entries.append(tuple(int(g) for g in m.groups()))
    if p is None or shape is None:
        raise CocycleError("cocycle file needs 'modulus' and 'shape' lines")
    t = np.zeros((shape[0], shape[1], shape[1]), dtype=np.int64)
    for y, a, b, v in entries:
        if y >= shape[0] or a >= shape[1] or b >= shape[1]:
            raise CocycleError(f"entry ({y}, {a}, {b}) outside shape {shape}")
        t[y, a, b] = v
    return Cocycle2(p, t, name)
