from collections import Counter, defaultdict

import pytest
from hypothesis import given, strategies as st

from conftest import CIRCLE, corpus_paths
from known_values import KNOWN
from qfamily.algebra import dihedral_family, xset_self, xset_trivial
from qfamily.chains import Chain, solve_cocycles2, zero_cocycle
from qfamily.coloring import ColoringProblem, Coloring, conj_keys, enumerate_colorings
from qfamily.diagram import from_pd, load_diagram, mirror, parse_diagram, reverse_edge
from qfamily.invariants import (
    InvariantError,
    InvariantValue,
    col_counts,
    dumps,
    from_json,
    is_cycle_mod_d,
    negate,
    parse_invariant,
    phi,
    phi_for_hom,
    state_cycle,
    weight,
)
from test_diagram import TREFOIL_PD

R3 = dihedral_family(3)
HANDLE = [p for p in corpus_paths() if p.endswith("3_1-handle.hkd")][0]


def r3_cocycles(yname, p):
    ys = xset_trivial(R3) if yname == "trivial" else xset_self(R3)
    return ys, [b for b in solve_cocycles2(R3, ys, p) if b.table.any()]


def invert_labels(arcs, family):
    """The coloring of the mirror diagram matching ``arcs``: ``(x, g) -> (x, g^-1)``."""
    n = family.group.order
    return tuple((q // n) * n + int(family.group.inv[q % n]) for q in arcs)


# ----------------------------------------------------------------------
# weights and state cycles


def test_weight_trivial_y(sl2):
    d = load_diagram(HANDLE)
    c = next(iter(enumerate_colorings(d, sl2)))
    for i, x in enumerate(d.crossings):
        s, g = weight(d, i, c)
        assert s == x.sign
        assert g == (0, c.arcs[x.source_arc], c.arcs[x.over_arc])


def test_same_x_weights_vanish(sl2, theta_c):
    d = load_diagram(HANDLE)
    pr = ColoringProblem(d, sl2)
    n = sl2.group.order
    for hom in list(pr.homs())[:40]:
        for x0 in range(sl2.x_size):
            arcs = pr.arc_colors(hom, (x0,) * pr.n_x)
            assert {q // n for q in arcs} == {x0}
            c = Coloring(arcs, (0,) * len(d.regions))
            for i in range(d.n_crossings):
                s, g = weight(d, i, c)
                assert theta_c(Chain.gen(*g)) == 0


def test_theta_curve_state_cycle_is_zero(theta_diagram, sl2):
    for c in list(enumerate_colorings(theta_diagram, sl2))[:10]:
        assert not state_cycle(theta_diagram, c)


def test_constant_coloring_evaluates_to_zero(sl2, theta_c):
    d = load_diagram(HANDLE)
    k = len(d.arcs)
    for x0 in range(sl2.x_size):
        c = Coloring((sl2.q_index(x0, 0),) * k, (0,) * len(d.regions))
        assert theta_c(state_cycle(d, c)) == 0
    for yname in ("trivial", "self"):
        ys, basis = r3_cocycles(yname, 2)
        for x0 in range(3):
            c = Coloring((R3.q_index(x0, 0),) * k, (0,) * len(d.regions))
            assert all(b(state_cycle(d, c)) == 0 for b in basis)


def test_mirror_negates_each_coloring(sl2, theta_c):
    d = load_diagram(HANDLE)
    m = mirror(d)
    mirror_arcs = {c.arcs for c in enumerate_colorings(m, sl2)}
    for c in list(enumerate_colorings(d, sl2))[::7]:
        c2 = Coloring(invert_labels(c.arcs, sl2), c.regions)
        assert c2.arcs in mirror_arcs
        assert theta_c(state_cycle(m, c2)) == (-theta_c(state_cycle(d, c))) % 3


@pytest.mark.parametrize("yname", ["trivial", "self"])
@pytest.mark.parametrize("p", [2, 3])
def test_state_cycle_is_a_cycle(yname, p):
    ys = xset_trivial(R3) if yname == "trivial" else xset_self(R3)
    for d in (from_pd(TREFOIL_PD), load_diagram(HANDLE)):
        for c in list(enumerate_colorings(d, R3, ys))[::5]:
            assert is_cycle_mod_d(state_cycle(d, c), R3, ys, p)


def test_cycle_test_detects_non_cycles():
    assert not is_cycle_mod_d(Chain.gen(0, R3.q_index(0, 1), R3.q_index(1, 1)), R3, None, 2)


# ----------------------------------------------------------------------
# phi


def test_theta_curve_values(theta_diagram, sl2, theta_c):
    assert phi(theta_diagram, sl2, theta_c, "conj").to_text() == "{{0_9}_76}" == KNOWN["0_1"]
    assert phi(theta_diagram, sl2, theta_c, "hom").to_text() == "{{0_9}_576}"
    assert phi(theta_diagram, sl2, theta_c, "plain").to_text() == "{0_5184}"


def test_circle_values(sl2, theta_c):
    d = parse_diagram(CIRCLE)
    assert phi(d, sl2, theta_c, "plain").to_text() == "{0_216}"
    assert phi(d, sl2, theta_c, "conj").to_text() == "{{0_9}_7}"


def test_col_counts(theta_diagram, circle_diagram, sl2):
    assert col_counts(circle_diagram, sl2) == 216
    assert col_counts(theta_diagram, sl2) == 5184
    assert col_counts(theta_diagram, sl2, "hom") == ((9, 576),)
    assert col_counts(theta_diagram, sl2, "conj") == ((9, 76),)
    with pytest.raises(InvariantError):
        col_counts(theta_diagram, sl2, "nope")


def test_plain_is_union_of_hom(sl2, theta_c):
    d = load_diagram(HANDLE)
    hom = phi(d, sl2, theta_c, "hom")
    assert phi(d, sl2, theta_c, "plain") == hom.flatten()
    assert hom.total() == sum(1 for _ in ColoringProblem(d, sl2).homs())
    assert phi(d, sl2, theta_c, "plain").total() == col_counts(d, sl2)


def test_representatives_give_equal_multisets(sl2, theta_c):
    d = load_diagram(HANDLE)
    homs = ColoringProblem(d, sl2).hom_array
    classes = defaultdict(list)
    for key, h in zip(conj_keys(homs, sl2.group), homs.tolist()):
        classes[key].append(tuple(h))
    for key, members in classes.items():
        values = {phi_for_hom(d, sl2, theta_c, h) for h in members[:6]}
        assert values == {phi_for_hom(d, sl2, theta_c, key)}


def test_workers_do_not_change_the_value(sl2, theta_c):
    d = load_diagram(HANDLE)
    for mode in ("conj", "hom"):
        assert phi(d, sl2, theta_c, mode, workers=2) == phi(d, sl2, theta_c, mode, workers=1)


def test_phi_errors(theta_diagram, sl2, theta_c):
    with pytest.raises(InvariantError):
        phi(theta_diagram, sl2, theta_c, "nope")
    with pytest.raises(InvariantError, match="shape"):
        phi(theta_diagram, sl2, zero_cocycle(R3), "conj")


@pytest.mark.parametrize("yname,p", [("trivial", 2), ("self", 2), ("self", 3)])
def test_nontrivial_xsets_and_moves(yname, p):
    """Move pairs and edge reversals agree for the R_3 cocycles, region colors included."""
    ys, basis = r3_cocycles(yname, p)
    assert basis
    pairs = defaultdict(dict)
    for path in corpus_paths():
        d = load_diagram(path)
        if d.name.startswith("r"):
            pairs[d.name[:2]][d.name[-1]] = d
    for theta in basis:
        for move, ab in sorted(pairs.items()):
            for mode in ("conj", "hom"):
                va = phi(ab["a"], R3, theta, mode, ys=ys)
                assert va == phi(ab["b"], R3, theta, mode, ys=ys), move
        d = load_diagram(HANDLE)
        base = phi(d, R3, theta, "hom", ys=ys)
        for e in sorted(set(d.graph_edges)):
            first = d.graph_edges.index(e)
            assert phi(reverse_edge(d, first), R3, theta, "hom", ys=ys) == base


def test_nontrivial_value_is_nonconstant():
    ys, basis = r3_cocycles("self", 3)
    d = load_diagram(HANDLE)
    values = [phi(d, R3, b, "plain", ys=ys) for b in basis]
    assert any(len(v.payload) > 1 for v in values)


# ----------------------------------------------------------------------
# values, negation and serialization


def test_known_rows_round_trip():
    assert len(KNOWN) == 22
    for name, text in KNOWN.items():
        v = parse_invariant(text)
        assert v.mode == "conj" and v.to_text() == text, name
        # every inner multiset counts the colorings of one hom: a multiple of |X| = 9
        assert all(sum(k for _, k in inner) % 9 == 0 for inner, _ in v.payload)
    assert KNOWN["6_14"] != KNOWN["6_15"]


def test_negate_examples():
    v = parse_invariant("{{0_9}_76}")
    assert negate(v) == v
    n52 = negate(parse_invariant(KNOWN["5_2"])).to_text()
    assert "{0_9,2_18}_4" in n52 and "{0_9,1_18}" not in n52
    assert negate(parse_invariant("{0_3,1_2}")).to_text() == "{0_3,2_2}"


def test_parse_errors():
    for bad in ["0_9", "{{0_9}_7", "{0-9}", "{{0_9}_7;{1_2}_1}"]:
        with pytest.raises(InvariantError):
            parse_invariant(bad)
    with pytest.raises(InvariantError):
        InvariantValue("weird", 3, ())


def test_structured_format():
    v = parse_invariant("{{0_9}_141,{0_81}_7,{0_27,1_54}_24}")
    assert v.to_json() == {"mode": "conj", "p": 3, "value": [[[[0, 9]], 141], [[[0, 81]], 7], [[[0, 27], [1, 54]], 24]]}
    assert dumps(v) == '{"mode":"conj","p":3,"value":[[[[0,9]],141],[[[0,81]],7],[[[0,27],[1,54]],24]]}'


inner_sets = st.dictionaries(st.integers(0, 2), st.integers(1, 60), min_size=1, max_size=3)
values = st.one_of(
    inner_sets.map(lambda d: InvariantValue("plain", 3, tuple(d.items()))),
    st.tuples(
        st.sampled_from(["hom", "conj"]),
        st.lists(st.tuples(inner_sets, st.integers(1, 40)), min_size=1, max_size=5),
    ).map(lambda t: InvariantValue(t[0], 3, tuple((tuple(i.items()), k) for i, k in t[1]))),
)


@given(values)
def test_text_and_json_round_trip(v):
    assert parse_invariant(v.to_text(), mode=v.mode) == v
    assert from_json(v.to_json()) == v
    assert parse_invariant(v.to_text(), mode=v.mode).to_text() == v.to_text()


@given(values)
def test_negate_is_an_involution(v):
    assert negate(negate(v)) == v
    assert negate(v).total() == v.total()
    assert negate(v).flatten() == negate(v.flatten())


@given(st.lists(st.integers(-10, 10), min_size=1, max_size=30))
def test_from_values_counts(xs):
    v = InvariantValue.from_values(xs, 3)
    assert dict(v.payload) == dict(Counter(x % 3 for x in xs))
