import pytest
from hypothesis import assume, given, strategies as st

from conftest import CIRCLE, KINK_PD, THETA, corpus_paths
from qfamily.diagram import (
    DiagramError,
    crossing_sign,
    derive_arcs,
    format_diagram,
    from_pd,
    load_diagram,
    mirror,
    parse_diagram,
    reverse_edge,
    trace_regions,
)
from qfamily.strands import from_strands

TREFOIL_PD = [[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]
HOPF = [("cap", 1), ("cap", 3), ("x", 2, "L"), ("x", 2, "L"), ("cup", 3), ("cup", 1)]

# one crossing with over-out at slot 3; the under strand leaves at ``out``
KINK_TEXT = """
crossing c h0 h1 h2 h3 over=1,3
edge e1 {t1} {h1}
edge e2 h3 {h2}
"""


def kink_with_under_out(out):
    if out == 0:  # under strand 2 -> 0, loops 0 -> 1 and 3 -> 2
        return parse_diagram(KINK_TEXT.format(t1="h0", h1="h1", h2="h2"))
    # under strand 0 -> 2, loops 3 -> 0 and 2 -> 1
    text = "crossing c h0 h1 h2 h3 over=1,3\nedge e1 h3 h0\nedge e2 h2 h1\n"
    return parse_diagram(text)


def structure(d):
    """Direction-free summary: arcs as semi-arc sets and regions as dart-pair sets."""
    arcs = sorted(sorted(a.semi_arcs) for a in d.arcs)
    faces = sorted(sorted({x // 2 for x in r.darts}) for r in d.regions)
    return arcs, faces


def body(text):
    return [ln for ln in text.splitlines() if not ln.startswith(("name", "expect"))]


def check_structure(d):
    # every half-edge sits in one slot and one edge
    assert sum(n.degree for n in d.nodes) == sum(2 for e in d.edges if not e.closed)
    # every dart lies on exactly one face, and the faces satisfy Euler per component
    darts = [x for r in d.regions for x in r.darts]
    assert sorted(darts) == list(range(2 * len(d.edges)))
    # arcs partition the semi-arcs
    semis = sorted(e for a in d.arcs for e in a.semi_arcs)
    assert semis == list(range(len(d.edges)))
    for a in d.arcs:
        for end in (a.start, a.end):
            if end is not None:
                n, s = end
                node = d.nodes[n]
                assert node.kind == "vertex" or s % 2 != node.over % 2


# ----------------------------------------------------------------------
# counts


def test_theta_curve_counts(theta_diagram):
    d = theta_diagram
    assert (d.n_vertices, d.n_crossings, len(d.edges)) == (2, 0, 3)
    assert len(d.arcs) == 3 and len(trace_regions(d)) == 3
    check_structure(d)


def test_circle_counts(circle_diagram):
    d = circle_diagram
    assert len(d.arcs) == 1 and d.arcs[0].closed
    assert len(d.regions) == 2


def test_trefoil_counts():
    d = from_pd(TREFOIL_PD)
    assert len(derive_arcs(d)) == 3
    assert len(d.regions) == 5
    assert len({c.sign for c in d.crossings}) == 1
    check_structure(d)


def test_kink_counts():
    d = from_pd(KINK_PD)
    assert len(d.arcs) == 1 and len(d.regions) == 3
    assert [c.sign for c in d.crossings] == [-1]


@pytest.mark.parametrize("path", corpus_paths())
def test_corpus_counts(path):
    d = load_diagram(path)
    v, e = len(d.nodes), len(d.edges)
    assert len(d.regions) == 2 - v + e
    assert len(d.arcs) == (2 * d.n_crossings + 3 * d.n_vertices) // 2
    assert d.connected
    check_structure(d)


# ----------------------------------------------------------------------
# errors


def test_duplicate_half_edge():
    text = THETA.replace("edge c c0 c1", "edge c c0 a1")
    with pytest.raises(DiagramError, match="duplicate half-edge"):
        parse_diagram(text)


def test_dangling_half_edge():
    text = THETA.replace("edge c c0 c1\n", "")
    with pytest.raises(DiagramError, match="dangling"):
        parse_diagram(text)


def test_over_pair_not_opposite():
    with pytest.raises(DiagramError, match="line 2: over pair not opposite"):
        parse_diagram("# kink\ncrossing c h0 h1 h2 h3 over=1,2\n")


def test_syntax_errors_carry_line_numbers():
    with pytest.raises(DiagramError, match="line 3: unknown directive"):
        parse_diagram("name x\n\nbogus 1\n")
    with pytest.raises(DiagramError, match="line 1: vertex takes"):
        parse_diagram("vertex u a b\n")
    with pytest.raises(DiagramError, match="line 2: duplicate node id"):
        parse_diagram("vertex u a b c\nvertex u d e f\n")


def test_euler_failure_for_nonplanar_rotation():
    text = THETA.replace("vertex v a1 c1 b1", "vertex v a1 b1 c1")
    with pytest.raises(DiagramError, match="Euler"):
        parse_diagram(text)


def test_discontinuous_strand():
    text = "crossing c h0 h1 h2 h3 over=1,3\nedge e1 h0 h1\nedge e2 h2 h3\n"
    with pytest.raises(DiagramError, match="not continuous"):
        parse_diagram(text)


def test_pd_label_errors():
    with pytest.raises(DiagramError, match="occurs"):
        from_pd([[1, 2, 3, 1]])


# ----------------------------------------------------------------------
# signs, mirror, reversal


def test_sign_from_slot_order():
    up = kink_with_under_out(0)
    assert up.crossings[0].over_out == 3
    assert crossing_sign(up, "c") == 1
    down = kink_with_under_out(2)
    assert down.crossings[0].over_out == 3
    assert crossing_sign(down, 0) == -1


def test_weight_corner_rule():
    up, down = kink_with_under_out(0), kink_with_under_out(2)
    assert up.crossings[0].corner == 2
    assert down.crossings[0].corner == 1


def test_reversing_one_component_flips_signs():
    d = from_strands(HOPF)
    signs = [c.sign for c in d.crossings]
    e = d.crossings[0].over_arc
    r = reverse_edge(d, d.arcs[e].semi_arcs[0])
    assert [c.sign for c in r.crossings] == [-s for s in signs]


def test_mirror_of_theta_is_a_theta(theta_diagram):
    m = mirror(theta_diagram)
    assert len(m.regions) == 3 and m.name == "0_1*"


@pytest.mark.parametrize("path", corpus_paths())
def test_mirror_and_reverse_on_corpus(path):
    d = load_diagram(path)
    m = mirror(d)
    assert [c.sign for c in m.crossings] == [-c.sign for c in d.crossings]
    assert body(format_diagram(mirror(m))) == body(format_diagram(d))
    for e in range(len(d.edges)):
        r = reverse_edge(d, e)
        assert structure(r) == structure(d)
        assert format_diagram(reverse_edge(r, e)) == format_diagram(d)


def test_reverse_unknown_edge(theta_diagram):
    with pytest.raises(DiagramError):
        reverse_edge(theta_diagram, "zz")
    with pytest.raises(DiagramError):
        reverse_edge(theta_diagram, 7)


def test_round_trip_text(theta_diagram):
    for d in [theta_diagram, parse_diagram(CIRCLE), from_pd(TREFOIL_PD)] + [load_diagram(p) for p in corpus_paths()]:
        text = format_diagram(d)
        again = parse_diagram(text)
        assert format_diagram(again) == text
        assert again.expect == d.expect


def test_outer_hint(theta_diagram):
    d = parse_diagram(THETA + "outer a0 R\n")
    assert d.outer_region == d.right_region(d.edge_index("a"))
    assert theta_diagram.outer_region == theta_diagram.left_region(0)


# ----------------------------------------------------------------------
# random strand words


@st.composite
def strand_words(draw, max_events=9):
    word, n = [("cap", 1)], 2
    for _ in range(draw(st.integers(1, max_events))):
        choices = ["cap", "split"] + (["x", "x", "merge", "rung", "cup"] if n >= 2 else [])
        kind = draw(st.sampled_from(choices))
        if kind == "cap":
            word.append(("cap", draw(st.integers(1, n + 1))))
            n += 2
        elif kind == "split":
            word.append(("split", draw(st.integers(1, n))))
            n += 1
        elif kind == "x":
            word.append(("x", draw(st.integers(1, n - 1)), draw(st.sampled_from("LR"))))
        elif kind == "rung":
            word.append(("rung", draw(st.integers(1, n - 1))))
        elif kind == "merge":
            word.append(("merge", draw(st.integers(1, n - 1))))
            n -= 1
        elif n > 2:
            word.append(("cup", draw(st.integers(1, n - 1))))
            n -= 2
    if n % 2:
        word.append(("merge", 1) if n > 1 else ("split", 1))
        n += -1 if n > 1 else 1
    word += [("cup", 1)] * (n // 2)
    return word


def build(word):
    try:
        return from_strands(word)
    except DiagramError as e:
        assume("crossingless circle" not in str(e))
        raise


@given(strand_words())
def test_random_words_are_valid(word):
    d = build(word)
    check_structure(d)
    for v in d.vertices:
        assert len(set(v.signs)) in (1, 2)


@given(strand_words())
def test_random_words_mirror(word):
    d = build(word)
    m = mirror(d)
    assert [c.sign for c in m.crossings] == [-c.sign for c in d.crossings]
    assert structure(m)[0] == structure(d)[0]
    assert len(m.regions) == len(d.regions)


@given(strand_words(), st.data())
def test_random_words_reverse(word, data):
    d = build(word)
    e = data.draw(st.integers(0, len(d.edges) - 1))
    r = reverse_edge(d, e)
    assert structure(r) == structure(d)
    assert format_diagram(reverse_edge(r, e)) == format_diagram(d)
    group = d.graph_edges[e]
    for c, cr in zip(d.crossings, r.crossings):
        over = d.graph_edges[d.arcs[c.over_arc].semi_arcs[0]] == group
        under = d.graph_edges[d.arcs[c.source_arc].semi_arcs[0]] == group
        assert cr.sign == (c.sign if over == under else -c.sign)
