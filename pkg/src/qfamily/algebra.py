"""
Finite groups, quandles, G-families of quandles and X-sets.

Every object stores its elements as dense indices ``0..n-1`` together with
immutable numpy lookup tables, so that evaluation in the hot loops of the
coloring search is a plain table lookup.  Group identity is always index 0.

Conventions
-----------
* ``FiniteGroup.mul[a, b]`` is the product ``a b``.
* ``GFamily.op[x, g, y]`` is ``x *^g y``.
* ``XSet.act[y, g, x]`` is ``y *^g x``.
* An element ``(x, g)`` of the associated quandle ``X x G`` has index
  ``x * order + g`` (see :meth:`GFamily.q_index`).
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np


class AlgebraError(ValueError):
    pass


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


# ----------------------------------------------------------------------
# 2x2 matrices over Z_m


@dataclass(frozen=True)
class Mat2:
    a: int
    b: int
    c: int
    d: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise AlgebraError("modulus must be positive")
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % self.m)

    @classmethod
    def identity(cls, m: int) -> "Mat2":
        return cls(1, 0, 0, 1, m)

    @classmethod
    def parse(cls, text: str, m: Optional[int] = None) -> "Mat2":
        """Parse ``[[a,b],[c,d]]`` optionally followed by ``mod m``."""
        mm = re.fullmatch(
            r"\s*\[\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*,\s*\[\s*(-?\d+)\s*,"
            r"\s*(-?\d+)\s*\]\s*\]\s*(?:mod\s+(\d+))?\s*",
            text,
        )
        if mm is None:
            raise AlgebraError(f"cannot parse matrix {text!r}")
        a, b, c, d = (int(mm.group(i)) for i in range(1, 5))
        if mm.group(5) is not None:
            m = int(mm.group(5))
        if m is None:
            raise AlgebraError(f"no modulus given for matrix {text!r}")
        return cls(a, b, c, d, m)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        if self.m != other.m:
            raise AlgebraError("moduli differ")
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.m,
        )

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.m

    def key(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=np.int64)

    def __str__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


# ----------------------------------------------------------------------
# groups


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its multiplication table.

    ``matrices`` holds a :class:`Mat2` realization when the group was built
    from matrix generators; ``cyclic`` holds ``m`` for the additive group
    ``Z_m`` (element ``i`` is the residue ``i``).
    """

    mul: np.ndarray
    inv: np.ndarray
    element_names: tuple = ()
    matrices: Optional[tuple] = None
    cyclic: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "mul", _frozen(self.mul))
        object.__setattr__(self, "inv", _frozen(self.inv))

    @property
    def order(self) -> int:
        return len(self.inv)

    @property
    def id(self) -> int:
        return 0

    @cached_property
    def mul_list(self) -> list:
        return self.mul.tolist()

    @cached_property
    def inv_list(self) -> list:
        return self.inv.tolist()

    @cached_property
    def conj(self) -> np.ndarray:
        """``conj[c, g] = c^-1 g c``."""
        n = self.order
        c = np.arange(n)[:, None]
        g = np.arange(n)[None, :]
        t = self.mul[self.mul[self.inv[c], g], c]
        t.setflags(write=False)
        return t

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = int(self.inv[g]), -k
        r = 0
        for _ in range(k):
            r = int(self.mul[r, g])
        return r

    def name(self, g: int) -> str:
        if self.element_names:
            return self.element_names[g]
        return str(g)

    def centralizer_sizes(self) -> np.ndarray:
        return (self.conj == np.arange(self.order)[None, :]).sum(axis=0)


def group_from_matrix_generators(
    m: int, gens: Sequence[Mat2], bound: int = 10_000
) -> FiniteGroup:
    """Close ``gens`` under multiplication breadth-first from the identity.

    Element 0 is the identity; further elements are numbered in the order
    the breadth-first search discovers them (right multiplication by the
    generators, in the given order).
    """
    gens = [g if isinstance(g, Mat2) else Mat2.parse(g, m) for g in gens]
    for g in gens:
        if g.m != m:
            raise AlgebraError(f"generator {g} is not over Z_{m}")
        if g.det() != 1 % m:
            raise AlgebraError(f"generator {g} has det {g.det()} != 1 mod {m}")
    ident = Mat2.identity(m)
    elems = [ident]
    index = {ident.key(): 0}
    queue = deque([ident])
    while queue:
        a = queue.popleft()
        for g in gens:
            b = a @ g
            if b.key() not in index:
                if len(elems) >= bound:
                    raise AlgebraError(
                        f"closure exceeds {bound} elements; check modulus/generators"
                    )
                index[b.key()] = len(elems)
                elems.append(b)
                queue.append(b)
    n = len(elems)
    mul = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            mul[i, j] = index[(a @ b).key()]
    inv = np.argmin(mul, axis=1)  # the unique j with a*j == 0
    return FiniteGroup(
        mul, inv, tuple(str(e) for e in elems), matrices=tuple(elems)
    )


def cyclic_group(m: int) -> FiniteGroup:
    if m < 1:
        raise AlgebraError("cyclic group needs m >= 1")
    r = np.arange(m)
    mul = (r[:, None] + r[None, :]) % m
    inv = (-r) % m
    return FiniteGroup(mul, inv, tuple(str(i) for i in range(m)), cyclic=m)


def sl2z3() -> FiniteGroup:
    return group_from_matrix_generators(
        3, [Mat2(1, 1, 0, 1, 3), Mat2(1, 0, 1, 1, 3)]
    )


# ----------------------------------------------------------------------
# quandles


@dataclass(frozen=True, eq=False)
class Quandle:
    """``op[x, y] = x * y``."""

    op: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "op", _frozen(self.op))

    @property
    def size(self) -> int:
        return self.op.shape[0]

    def right_translation(self, y: int) -> np.ndarray:
        return self.op[:, y]


def dihedral_quandle(n: int) -> Quandle:
    """``R_n``: ``x * y = 2y - x mod n``."""
    r = np.arange(n)
    return Quandle((2 * r[None, :] - r[:, None]) % n)


def conjugation_quandle(group: FiniteGroup) -> Quandle:
    """``(G, *)`` with ``a * b = b^-1 a b``."""
    return Quandle(group.conj.T)


# ----------------------------------------------------------------------
# G-families and X-sets


@dataclass(frozen=True, eq=False)
class GFamily:
    """A G-family of quandles; ``op[x, g, y] = x *^g y``.

    ``modulus`` is set for the linear families on ``(Z_m)^2``, in which case
    X-element ``x`` is the row vector ``(x // m, x % m)``.
    """

    group: FiniteGroup
    op: np.ndarray
    modulus: Optional[int] = None
    name: str = ""

    def __post_init__(self):
        op = _frozen(self.op)
        if op.ndim != 3 or op.shape[1] != self.group.order or op.shape[0] != op.shape[2]:
            raise AlgebraError(f"operation table has bad shape {op.shape}")
        object.__setattr__(self, "op", op)

    @property
    def x_size(self) -> int:
        return self.op.shape[0]

    @property
    def q_size(self) -> int:
        return self.x_size * self.group.order

    def q_index(self, x: int, g: int) -> int:
        return x * self.group.order + g

    def q_split(self, q: int) -> tuple:
        return divmod(q, self.group.order)

    @cached_property
    def op_list(self) -> list:
        return self.op.tolist()

    def vector(self, x: int) -> tuple:
        m = self.modulus
        return (x // m, x % m)

    @cached_property
    def associated(self) -> Quandle:
        return associated_quandle(self)


@dataclass(frozen=True, eq=False)
class XSet:
    """``act[y, g, x] = y *^g x``."""

    act: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "act", _frozen(self.act))

    @property
    def y_size(self) -> int:
        return self.act.shape[0]

    @property
    def trivial(self) -> bool:
        return self.y_size == 1

    @cached_property
    def act_list(self) -> list:
        return self.act.tolist()

    def q_action(self, family: GFamily) -> np.ndarray:
        """``t[y, q] = y * q`` with ``q`` an associated-quandle index."""
        n = family.group.order
        q = np.arange(family.q_size)
        return self.act[:, q % n, q // n]


def xset_trivial(family: GFamily) -> XSet:
    return XSet(np.zeros((1, family.group.order, family.x_size), dtype=np.int64))


def xset_self(family: GFamily) -> XSet:
    return XSet(family.op)


def gfamily_linear(m: int, group: FiniteGroup) -> GFamily:
    """``X = (Z_m)^2`` as row vectors with ``x *^g y = x g + y (e - g)``."""
    if group.matrices is None:
        raise AlgebraError("group elements carry no matrix realization")
    if any(g.m != m for g in group.matrices):
        raise AlgebraError(f"group is not realized over Z_{m}")
    vecs = np.array([(i, j) for i in range(m) for j in range(m)], dtype=np.int64)
    mats = np.array([g.as_array() for g in group.matrices])
    eye = np.eye(2, dtype=np.int64)
    xg = np.einsum("xi,gij->xgj", vecs, mats)
    ye = np.einsum("yi,gij->gyj", vecs, eye[None] - mats)
    res = (xg[:, :, None, :] + ye[None, :, :, :]) % m
    op = res[..., 0] * m + res[..., 1]
    return GFamily(group, op, modulus=m, name=f"linear-Z{m}^2")


def sl2z3_linear() -> GFamily:
    f = gfamily_linear(3, sl2z3())
    return GFamily(f.group, f.op, modulus=3, name="sl2z3-linear")


def gfamily_from_quandle(q: Quandle, m: int) -> GFamily:
    """The ``Z_m``-family ``x *^i y = S_y^i(x)``; needs ``S_y^m = id``."""
    n = q.size
    ident = np.arange(n)
    powers = [np.tile(ident[:, None], (1, n))]
    for _ in range(1, m + 1):
        prev = powers[-1]
        powers.append(q.op[prev, ident[None, :]])
    bad = np.nonzero((powers[m] != ident[:, None]).any(axis=0))[0]
    if len(bad):
        raise AlgebraError(
            f"S_{int(bad[0])}^{m} is not the identity; period {m} does not fit"
        )
    op = np.stack(powers[:m], axis=1)  # [x, i, y]
    return GFamily(cyclic_group(m), op, name=f"quandle-Z{m}")


def dihedral_family(n: int) -> GFamily:
    f = gfamily_from_quandle(dihedral_quandle(n), 2)
    return GFamily(f.group, f.op, name=f"dihedral-{n}")


def associated_quandle(f: GFamily) -> Quandle:
    """``(x,g) * (y,h) = (x *^h y, h^-1 g h)`` on indices ``x*|G| + g``."""
    n = f.group.order
    q = np.arange(f.q_size)
    x, g = q // n, q % n
    xs = f.op[x[:, None], g[None, :], x[None, :]]
    gs = f.group.conj[g[None, :], g[:, None]]
    return Quandle(xs * n + gs)


def qfamily_product_quandle(q: Quandle, ops: np.ndarray) -> Quandle:
    """``(x,a) * (y,b) = (x *^b y, a <| b)`` on indices ``x*|Q| + a``.

    ``ops[x, a, y] = x *^a y``.  The Q-family axioms are checked first.
    """
    ops = np.asarray(ops, dtype=np.int64)
    rep = check_qfamily(q, ops)
    if not rep:
        raise AlgebraError(str(rep))
    nq = q.size
    idx = np.arange(ops.shape[0] * nq)
    x, a = idx // nq, idx % nq
    xs = ops[x[:, None], a[None, :], x[None, :]]
    qs = q.op[a[:, None], a[None, :]]
    return Quandle(xs * nq + qs)


# ----------------------------------------------------------------------
# axiom checking


@dataclass
class AxiomReport:
    """Result of an exhaustive axiom check.

    ``failure`` names the first failing axiom and ``witness`` holds the
    lexicographically first failing index tuple (in the variable order
    given by ``variables``).
    """

    kind: str
    checked: list = field(default_factory=list)
    failure: Optional[str] = None
    witness: Optional[tuple] = None
    variables: tuple = ()

    def __bool__(self):
        return self.failure is None

    def __str__(self):
        if self:
            return f"PASS {self.kind}: " + ", ".join(self.checked)
        w = ", ".join(f"{v}={i}" for v, i in zip(self.variables, self.witness))
        return f"FAIL {self.kind}: {self.failure} at ({w})"


def _first(bad: np.ndarray) -> Optional[tuple]:
    if not bad.any():
        return None
    return tuple(int(i) for i in np.unravel_index(int(np.argmax(bad)), bad.shape))


class _Checker:
    def __init__(self, kind):
        self.report = AxiomReport(kind)

    def __call__(self, name, bad, variables):
        if self.report.failure is not None:
            return
        w = _first(bad)
        if w is None:
            self.report.checked.append(name)
        else:
            self.report.failure = name
            self.report.witness = w
            self.report.variables = variables


def check_group(g: FiniteGroup) -> AxiomReport:
    chk = _Checker("group")
    mul, inv = g.mul, g.inv
    n = g.order
    r = np.arange(n)
    chk("closure", (mul < 0) | (mul >= n), ("a", "b"))
    if not chk.report:
        return chk.report
    chk("identity", (mul[0] != r) | (mul[:, 0] != r), ("g",))
    chk("inverse", (mul[r, inv] != 0) | (mul[inv, r] != 0), ("g",))
    for a in range(n):
        left = mul[mul[a][:, None], r[None, :]]  # (ab)c
        right = mul[a][mul]  # a(bc)
        w = _first(left != right)
        if w is not None:
            chk.report.failure = "associativity"
            chk.report.witness = (a,) + w
            chk.report.variables = ("a", "b", "c")
            return chk.report
    chk.report.checked.append("associativity")
    return chk.report


def check_quandle(q: Quandle, chunk: int = 16) -> AxiomReport:
    chk = _Checker("quandle")
    op = q.op
    n = q.size
    r = np.arange(n)
    chk("idempotence", op[r, r] != r, ("x",))
    # S_y bijective: column y is a permutation
    srt = np.sort(op, axis=0)
    chk("right translations bijective", (srt != r[:, None]).any(axis=0), ("y",))
    if not chk.report:
        return chk.report
    for x0 in range(0, n, chunk):
        xs = r[x0:x0 + chunk]
        lhs = op[op[xs][:, :, None], r[None, None, :]]  # (x*y)*z
        rhs = op[op[xs][:, None, :], op[None, :, :]]  # (x*z)*(y*z)
        bad = lhs != rhs
        if bad.any():
            x, y, z = _first(bad)
            chk.report.failure = "right self-distributivity"
            chk.report.witness = (int(xs[x]), y, z)
            chk.report.variables = ("x", "y", "z")
            return chk.report
    chk.report.checked.append("right self-distributivity")
    return chk.report


def check_gfamily(f: GFamily) -> AxiomReport:
    chk = _Checker("G-family")
    op, grp = f.op, f.group
    nx, ng = f.x_size, grp.order
    x = np.arange(nx)
    g = np.arange(ng)
    chk("x *^g x = x", op[x[:, None], g[None, :], x[:, None]] != x[:, None], ("x", "g"))
    chk("x *^e y = x", op[:, 0, :] != x[:, None], ("x", "y"))
    # x *^{gh} y = (x *^g y) *^h y ; index order x, y, g, h
    lhs = op[x[:, None, None, None], grp.mul[None, None, :, :], x[None, :, None, None]]
    rhs = op[
        op[x[:, None, None, None], g[None, None, :, None], x[None, :, None, None]],
        g[None, None, None, :],
        x[None, :, None, None],
    ]
    chk("x *^{gh} y = (x *^g y) *^h y", lhs != rhs, ("x", "y", "g", "h"))
    # (x *^g y) *^h z = (x *^h z) *^{h^-1 g h} (y *^h z) ; order x, y, z, g, h
    X, Y, Z = x[:, None, None, None, None], x[None, :, None, None, None], x[None, None, :, None, None]
    G, H = g[None, None, None, :, None], g[None, None, None, None, :]
    lhs = op[op[X, G, Y], H, Z]
    rhs = op[op[X, H, Z], grp.conj[H, G], op[Y, H, Z]]
    chk("twisted distributivity", lhs != rhs, ("x", "y", "z", "g", "h"))
    return chk.report


def check_xset(ys: XSet, f: GFamily) -> AxiomReport:
    chk = _Checker("X-set")
    act, op, grp = ys.act, f.op, f.group
    if act.shape[1:] != (grp.order, f.x_size):
        raise AlgebraError(f"X-set table has bad shape {act.shape}")
    y = np.arange(ys.y_size)
    x = np.arange(f.x_size)
    g = np.arange(grp.order)
    chk("y *^e x = y", act[:, 0, :] != y[:, None], ("y", "x"))
    Y, X = y[:, None, None, None], x[None, :, None, None]
    G, H = g[None, None, :, None], g[None, None, None, :]
    lhs = act[Y, grp.mul[G, H], X]
    rhs = act[act[Y, G, X], H, X]
    chk("y *^{gh} x = (y *^g x) *^h x", lhs != rhs, ("y", "x", "g", "h"))
    Y = y[:, None, None, None, None]
    X1, X2 = x[None, :, None, None, None], x[None, None, :, None, None]
    G, H = g[None, None, None, :, None], g[None, None, None, None, :]
    lhs = act[act[Y, G, X1], H, X2]
    rhs = act[act[Y, H, X2], grp.conj[H, G], op[X1, H, X2]]
    chk("twisted compatibility", lhs != rhs, ("y", "x1", "x2", "g", "h"))
    return chk.report


def check_qfamily(q: Quandle, ops: np.ndarray) -> AxiomReport:
    chk = _Checker("Q-family")
    nx, nq = ops.shape[0], q.size
    x = np.arange(nx)
    a = np.arange(nq)
    chk("x *^a x = x", ops[x[:, None], a[None, :], x[:, None]] != x[:, None], ("x", "a"))
    srt = np.sort(ops, axis=0)  # over x for fixed (a, y)
    chk("S_{y,a} bijective", (srt != x[:, None, None]).any(axis=0), ("a", "y"))
    X, Y, Z = x[:, None, None, None, None], x[None, :, None, None, None], x[None, None, :, None, None]
    A, B = a[None, None, None, :, None], a[None, None, None, None, :]
    lhs = ops[ops[X, A, Y], B, Z]
    rhs = ops[ops[X, B, Z], q.op[A, B], ops[Y, B, Z]]
    chk("twisted distributivity", lhs != rhs, ("x", "y", "z", "a", "b"))
    return chk.report


def check_axioms(obj, family: Optional[GFamily] = None) -> AxiomReport:
    """Exhaustively check the axioms of a group, quandle, G-family or X-set.

    X-sets need the family they act over.
    """
    if isinstance(obj, FiniteGroup):
        return check_group(obj)
    if isinstance(obj, Quandle):
        return check_quandle(obj)
    if isinstance(obj, GFamily):
        return check_gfamily(obj)
    if isinstance(obj, XSet):
        if family is None:
            raise AlgebraError("checking an X-set needs its G-family")
        return check_xset(obj, family)
    raise TypeError(f"cannot check axioms of {type(obj).__name__}")
