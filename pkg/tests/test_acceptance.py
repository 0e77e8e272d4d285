"""The nine end-to-end acceptance criteria.

Each test records one ``criterion N: PASS|FAIL ...`` line, printed in the
"acceptance criteria" section of the pytest summary.
"""

import time
from collections import defaultdict
from itertools import product

import pytest

from conftest import ACCEPTANCE, KINK_PD, corpus_paths
from known_values import KNOWN
from oracles import brute_arc_colorings, brute_colorings, burnside_pairs
from qfamily.algebra import check_axioms, dihedral_family, xset_self, xset_trivial
from qfamily.chains import (
    Chain,
    chain_map_f,
    chain_map_g,
    check_cocycle2,
    i_solve_cocycles2,
    pullback_cocycle,
)
from qfamily.chains.iso import IComplex
from qfamily.coloring import count_colorings
from qfamily.diagram import from_pd, load_diagram, mirror, reverse_edge
from qfamily.invariants import MODES, negate, phi, parse_invariant


def record(n, ok, detail):
    ACCEPTANCE[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    assert ok, ACCEPTANCE[n]


@pytest.fixture(scope="module")
def diagrams():
    return [load_diagram(p) for p in corpus_paths()]


def test_criterion_1_axioms(sl2):
    t = time.perf_counter()
    reports = [check_axioms(sl2.group), check_axioms(sl2), check_axioms(sl2.associated)]
    secs = time.perf_counter() - t
    ok = all(reports) and secs < 120
    record(1, ok, f"group, G-family and 216-element quandle axioms in {secs:.1f}s (limit 120s)")


def test_criterion_2_cocycle(sl2, theta_c):
    t = time.perf_counter()
    rep = check_cocycle2(theta_c, sl2)
    secs = time.perf_counter() - t
    want = {"d3": 216 ** 3, "D2 repeated": 9 * 24 * 24, "D2 splitting": 2 * 216 * 9 * 24 * 24}
    ok = bool(rep) and rep.checked == want and secs < 300
    record(2, ok, f"nosaka-sl2z3 checked {rep.checked}, failures: {rep.failure}, in {secs:.1f}s (limit 300s)")


def test_criterion_3_theta_curve(theta_diagram, sl2, theta_c):
    value = phi(theta_diagram, sl2, theta_c, "conj").to_text()
    burnside = burnside_pairs(sl2.group)
    # brute force: group all assignments by hom, then hom tuples by naive orbit
    per_hom = defaultdict(int)
    n = sl2.group.order
    for arcs, _ in brute_colorings(theta_diagram, sl2):
        per_hom[tuple(q % n for q in arcs)] += 1
    conj = sl2.group.conj
    classes = {min(tuple(int(conj[c, g]) for g in h) for c in range(n)) for h in per_hom}
    ok = (value == "{{0_9}_76}" == KNOWN["0_1"] and burnside == 76 == len(classes)
          and set(per_hom.values()) == {9})
    record(3, ok, f"value {value}, Burnside {burnside}, brute-force classes {len(classes)}, "
                  f"colorings per hom {sorted(set(per_hom.values()))}")


def test_criterion_4_corpus_expectations(diagrams, sl2, theta_c):
    checked, bad = [], []
    for d in diagrams:
        expect = dict(d.expect)
        if "conj" in expect:
            got = phi(d, sl2, theta_c, "conj").to_text()
            checked.append(d.name)
            if got != expect["conj"]:
                bad.append(f"{d.name}: {got} != {expect['conj']}")
    # rows left for transcribers stay parseable and canonical
    documented = all(parse_invariant(KNOWN[k]).to_text() == KNOWN[k] for k in ("4_1", "5_2"))
    ok = "0_1" in checked and not bad and documented
    record(4, ok, f"expect headers matched for {checked}; 4_1 and 5_2 documented" + (f"; {bad}" if bad else ""))


def test_criterion_5_mirror(diagrams, sl2, theta_c):
    bad = []
    for d in diagrams:
        a = phi(mirror(d), sl2, theta_c, "conj")
        b = phi(d, sl2, theta_c, "conj")
        if a != negate(b):
            bad.append(d.name)
    record(5, not bad, f"{len(diagrams)} diagrams, mirror equals negation" + (f"; failed {bad}" if bad else ""))


def test_criterion_6_orientation(diagrams, sl2, theta_c):
    bad, runs = [], 0
    for d in diagrams:
        base = {m: phi(d, sl2, theta_c, m) for m in MODES}
        for e in sorted(set(d.graph_edges)):
            r = reverse_edge(d, d.graph_edges.index(e))
            runs += 1
            for m in MODES:
                if phi(r, sl2, theta_c, m) != base[m]:
                    bad.append((d.name, e, m))
    record(6, not bad, f"{runs} edge reversals leave modes {list(MODES)} unchanged" + (f"; failed {bad}" if bad else ""))


def test_criterion_7_moves(diagrams, sl2, theta_c):
    pairs = defaultdict(dict)
    for d in diagrams:
        if d.name[:1] == "r" and d.name[-2:] in ("_a", "_b"):
            pairs[d.name[:-2]][d.name[-1]] = d
    bad = [(move, m) for move, ab in sorted(pairs.items()) for m in MODES
           if phi(ab["a"], sl2, theta_c, m) != phi(ab["b"], sl2, theta_c, m)]
    moves = sorted(pairs)
    ok = moves == [f"r{i}" for i in range(1, 7)] and not bad
    record(7, ok, f"pairs {moves} equal in modes {list(MODES)}" + (f"; failed {bad}" if bad else ""))


def test_criterion_8_round_trip():
    f = dihedral_family(3)
    n_ident = n_cocycles = n_evals = 0
    ok = True
    for ys in (xset_trivial(f), xset_self(f)):
        ic = IComplex(f, ys)
        for deg in (1, 2, 3):
            for g in ic.generators(deg):
                c = Chain.gen(*g)
                ok &= chain_map_g(chain_map_f(c, f, ys), f, ys) == c
                n_ident += 1
        for p in (2, 3):
            for t in i_solve_cocycles2(f, ys, p):
                theta = pullback_cocycle(t, p, f, ys)
                ok &= bool(check_cocycle2(theta, f, ys))
                n_cocycles += 1
                for y, q1, q2 in product(range(ys.y_size), range(f.q_size), range(f.q_size)):
                    c = Chain.gen(y, q1, q2)
                    ok &= theta(chain_map_f(chain_map_g(c, f, ys), f, ys)) == theta(c)
                    n_evals += 1
    record(8, ok, f"g o f = id on {n_ident} generators; {n_cocycles} pullbacks pass; "
                  f"theta(f(g(c))) = theta(c) on {n_evals} evaluations")


def test_criterion_9_oracles(circle_diagram, theta_diagram, sl2):
    cases = {"circle": circle_diagram, "theta-curve": theta_diagram, "kink": from_pd(KINK_PD)}
    counts = {name: (count_colorings(d, sl2), len(brute_arc_colorings(d, sl2))) for name, d in cases.items()}
    ok = all(a == b for a, b in counts.values())
    record(9, ok, ", ".join(f"{k} {a}={b}" for k, (a, b) in counts.items()))
