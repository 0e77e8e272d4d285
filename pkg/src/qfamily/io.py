"""
Text formats and builtin names for families, X-sets and cocycles.

Family files (``.gfam``), one directive per line, ``#`` starts a comment::

    name    <text>
    group   cyclic <m>
    group   matrices <m>
    gen     [[a,b],[c,d]]          # one line per generator
    family  linear                 # x g + y (e - g) on (Z_m)^2
    family  dihedral <n>           # S_y^i on the dihedral quandle R_n
    family  table <x_size>         # followed by op lines
    op      <x> <g> : <x*^g 0> <x*^g 1> ...

Builtin family names: ``sl2z3-linear`` and ``dihedral-<n>`` (the
``Z_2``-family of ``R_n``).  Builtin cocycles: ``nosaka-sl2z3`` and ``zero``.
"""

from __future__ import annotations

import os
import re
from typing import Optional

import numpy as np

from .algebra import (
    AlgebraError,
    GFamily,
    Mat2,
    XSet,
    cyclic_group,
    dihedral_family,
    dihedral_quandle,
    gfamily_from_quandle,
    gfamily_linear,
    group_from_matrix_generators,
    sl2z3_linear,
    xset_self,
    xset_trivial,
)
from .chains.cocycles import Cocycle2, nosaka_theta, parse_cocycle, zero_cocycle

_DIHEDRAL = re.compile(r"dihedral-(\d+)")


class FormatError(ValueError):
    pass


def parse_family(text: str) -> GFamily:
    name = ""
    group_kind = None
    m = None
    gens = []
    kind = None
    kind_arg = None
    rows = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()

        def fail(msg):
            raise FormatError(f"line {lineno}: {msg}")

        try:
            if tok[0] == "name":
                name = line.split(None, 1)[1] if len(tok) > 1 else ""
            elif tok[0] == "group":
                if len(tok) != 3 or tok[1] not in ("cyclic", "matrices"):
                    fail("group takes 'cyclic <m>' or 'matrices <m>'")
                group_kind, m = tok[1], int(tok[2])
            elif tok[0] == "gen":
                if m is None:
                    fail("gen before group")
                gens.append(Mat2.parse(line.split(None, 1)[1], m))
            elif tok[0] == "family":
                if len(tok) < 2 or tok[1] not in ("linear", "dihedral", "table"):
                    fail("family takes linear, dihedral <n> or table <x_size>")
                kind = tok[1]
                if kind in ("dihedral", "table"):
                    if len(tok) != 3:
                        fail(f"family {kind} needs a size")
                    kind_arg = int(tok[2])
            elif tok[0] == "op":
                head, _, vals = line[2:].partition(":")
                x, g = (int(t) for t in head.split())
                rows[(x, g)] = [int(t) for t in vals.split()]
            else:
                fail(f"unknown directive {tok[0]!r}")
        except (ValueError, AlgebraError) as e:
            if isinstance(e, FormatError):
                raise
            fail(str(e))
    if group_kind is None:
        raise FormatError("family file needs a group line")
    if group_kind == "cyclic":
        group = cyclic_group(m)
    else:
        if not gens:
            raise FormatError("matrix group needs gen lines")
        group = group_from_matrix_generators(m, gens)
    if kind == "linear":
        f = gfamily_linear(m, group)
    elif kind == "dihedral":
        if group.cyclic is None:
            raise FormatError("family dihedral needs a cyclic group")
        f = gfamily_from_quandle(dihedral_quandle(kind_arg), group.cyclic)
    elif kind == "table":
        n, ng = kind_arg, group.order
        op = np.full((n, ng, n), -1, dtype=np.int64)
        for (x, g), vals in rows.items():
            if not (0 <= x < n and 0 <= g < ng) or len(vals) != n:
                raise FormatError(f"op row ({x}, {g}) does not fit x_size {n} and |G| = {ng}")
            op[x, g] = vals
        if (op < 0).any() or (op >= n).any():
            raise FormatError("op table incomplete or out of range")
        modulus = m if group_kind == "matrices" and n == m * m else None
        f = GFamily(group, op, modulus=modulus)
    else:
        raise FormatError("family file needs a family line")
    return GFamily(f.group, f.op, modulus=f.modulus, name=name or f.name)


def format_family(f: GFamily) -> str:
    """Write ``f`` as an explicit table-format family file."""
    g = f.group
    lines = [f"name {f.name}"] if f.name else []
    if g.cyclic is not None:
        lines.append(f"group cyclic {g.cyclic}")
    elif g.matrices is not None:
        lines.append(f"group matrices {g.matrices[0].m}")
        # every element as a generator keeps the element numbering
        lines += [f"gen {mat}" for mat in g.matrices[1:]]
    else:
        raise FormatError("only cyclic and matrix groups can be written")
    lines.append(f"family table {f.x_size}")
    for x in range(f.x_size):
        for k in range(g.order):
            lines.append(f"op {x} {k} : " + " ".join(str(v) for v in f.op[x, k]))
    return "\n".join(lines) + "\n"


def load_family(name: str) -> GFamily:
    """A builtin name or a path to a ``.gfam`` file."""
    if name == "sl2z3-linear":
        return sl2z3_linear()
    m = _DIHEDRAL.fullmatch(name)
    if m:
        return dihedral_family(int(m.group(1)))
    if os.path.exists(name):
        with open(name) as fh:
            return parse_family(fh.read())
    raise FormatError(f"unknown family {name!r} (not a builtin and no such file)")


def load_xset(name: str, family: GFamily) -> XSet:
    if name == "trivial":
        return xset_trivial(family)
    if name == "self":
        return xset_self(family)
    raise FormatError(f"unknown X-set {name!r}; use 'trivial' or 'self'")


def load_cocycle(name: str, family: GFamily, ys: Optional[XSet] = None, p: int = 3) -> Cocycle2:
    if name == "nosaka-sl2z3":
        return nosaka_theta(family, ys)
    if name == "zero":
        return zero_cocycle(family, ys, p)
    if os.path.exists(name):
        with open(name) as fh:
            return parse_cocycle(fh.read())
    raise FormatError(f"unknown cocycle {name!r} (not a builtin and no such file)")
