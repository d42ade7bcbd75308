import random

import pytest
from hypothesis import given, settings, strategies as st

from bandbrick.brauer import (
    BrauerGraph,
    BrauerVertex,
    Witness,
    bga_presentation,
    check_presentation,
    cycle_analysis,
    cycle_brick_band,
    decide_tau_finite_bg,
    find_witness,
    parse_brauer_graph,
    simple_cycles,
)
from bandbrick.corpus import random_brauer_graph
from bandbrick.errors import BadWitness, Disconnected, EdgeDegreeNotTwo, ParseError, ZeroMultiplicity
from bandbrick.linalg import build_band_module, is_brick_oracle
from bandbrick.quiver import check_admissible, is_special_biserial
from bandbrick.tau import TAU_FINITE, TAU_INFINITE, decide_tau_finite_sb
from bandbrick.words import band_endo_pairs, is_band, is_band_brick, make_band, top_socle

from conftest import load_graph

ALL_GRAPHS = ("tree", "single_edge", "triangle", "double_edge", "square",
              "two_loops", "two_loops_nested", "two_triangles")
INFINITE = {"double_edge": "even-cycle", "square": "even-cycle", "two_loops": "two-odd-cycles",
            "two_loops_nested": "two-odd-cycles", "two_triangles": "two-odd-cycles"}


def test_parse_valid_graphs():
    g = parse_brauer_graph("edges: e1\nvertex v1 cyclic=(e1)\nvertex v2 cyclic=(e1)\n")
    assert [v.multiplicity for v in g.vertices] == [1, 1]
    g = load_graph("double_edge")
    assert g.edges == ("e1", "e2") and g.cyclomatic == 1


def test_parse_round_trip():
    for name in ALL_GRAPHS:
        g = load_graph(name)
        again = parse_brauer_graph(g.to_text())
        assert again == g


def test_parse_errors():
    with pytest.raises(EdgeDegreeNotTwo):
        parse_brauer_graph("edges: e1\nvertex v1 cyclic=(e1 e1)\nvertex v2 cyclic=(e1)\n")
    with pytest.raises(Disconnected):
        parse_brauer_graph("edges: e1 e2\nvertex a cyclic=(e1)\nvertex b cyclic=(e1)\n"
                           "vertex c cyclic=(e2)\nvertex d cyclic=(e2)\n")
    with pytest.raises(ZeroMultiplicity):
        parse_brauer_graph("edges: e1\nvertex v1 mult=0 cyclic=(e1)\nvertex v2 cyclic=(e1)\n")
    with pytest.raises(ParseError) as err:
        parse_brauer_graph("edges: e1\nvertex v1 cyclic=e1\n")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        parse_brauer_graph("edges: e1\nvertex v1 colour=red cyclic=(e1 e1)\n")


def test_presentation_double_edge():
    p = bga_presentation(load_graph("double_edge"))
    assert p.quiver.vertices == ("e1", "e2")
    arrows = {a.id: (a.source, a.target) for a in p.quiver.arrows}
    assert arrows == {"v1_1": ("e1", "e2"), "v1_2": ("e2", "e1"),
                      "v2_1": ("e1", "e2"), "v2_2": ("e2", "e1")}
    rels = set(p.relations)
    # products across the two special cycles vanish
    assert {("v1_1", "v2_2"), ("v2_1", "v1_2"), ("v1_2", "v2_1"), ("v2_2", "v1_1")} <= rels
    # each special cycle at multiplicity one is the socle and vanishes
    assert {("v1_1", "v1_2"), ("v1_2", "v1_1"), ("v2_1", "v2_2"), ("v2_2", "v2_1")} <= rels


def test_presentation_single_edge_has_no_arrows():
    p = bga_presentation(load_graph("single_edge"))
    assert p.quiver.vertices == ("e1",) and p.quiver.arrows == ()


def test_presentation_single_loop():
    g = parse_brauer_graph("edges: e1\nvertex v1 cyclic=(e1 e1)\n")
    p = bga_presentation(g)
    assert p.quiver.vertices == ("e1",)
    assert [(a.source, a.target) for a in p.quiver.arrows] == [("e1", "e1"), ("e1", "e1")]


def test_presentation_multiplicity_loop():
    g = parse_brauer_graph("edges: e1\nvertex v1 mult=3 cyclic=(e1)\nvertex v2 cyclic=(e1)\n")
    p = bga_presentation(g)
    assert [a.id for a in p.quiver.arrows] == ["v1_1"]
    assert p.relations == (("v1_1", "v1_1", "v1_1"),)


def test_presentations_special_biserial_and_admissible():
    for name in ALL_GRAPHS:
        p = bga_presentation(load_graph(name))
        assert is_special_biserial(p)
        assert check_admissible(p).admissible
        check_presentation(load_graph(name), p)


def test_cycle_analysis_examples():
    rep = cycle_analysis(load_graph("tree"))
    assert rep.cyclomatic == 0 and rep.witnesses == ()
    assert len(load_graph("tree").edges) == 4
    rep = cycle_analysis(load_graph("triangle"))
    assert rep.cyclomatic == 1 and [(len(c), c.parity) for c in rep.witnesses] == [(3, "odd")]
    rep = cycle_analysis(load_graph("double_edge"))
    assert rep.cyclomatic == 1 and [(len(c), c.parity) for c in rep.witnesses] == [(2, "even")]
    rep = cycle_analysis(load_graph("two_loops"))
    assert rep.cyclomatic == 2 and [(len(c), c.parity) for c in rep.witnesses] == [(1, "odd"), (1, "odd")]


def test_simple_cycles_are_simple():
    for name in ALL_GRAPHS:
        g = load_graph(name)
        for c in simple_cycles(g):
            assert len(set(c.vertices)) == len(c.vertices)
            assert len(set(c.edges)) == len(c.edges)


def test_decisions_on_corpus():
    for name in ALL_GRAPHS:
        d = decide_tau_finite_bg(load_graph(name))
        if name in INFINITE:
            assert d.verdict == TAU_INFINITE and d.reason == INFINITE[name]
            assert d.details["construction"] == "formula"
        else:
            assert d.verdict == TAU_FINITE


def test_tree_multiplicities_do_not_matter():
    g = load_graph("tree")
    for mults in ((1, 1, 1, 1, 1), (5, 4, 3, 2, 1)):
        vs = tuple(BrauerVertex(v.id, m, v.cyclic) for v, m in zip(g.vertices, mults))
        d = decide_tau_finite_bg(BrauerGraph(g.edges, vs))
        assert d.verdict == TAU_FINITE and d.reason == "tree"
        assert d.details["multiplicities"] == {v.id: m for v, m in zip(g.vertices, mults)}


def test_constructed_bands_pass_every_check():
    for name in INFINITE:
        g = load_graph(name)
        pres = bga_presentation(g)
        cert = cycle_brick_band(g, find_witness(g))
        b = cert.band
        assert is_band(b.walk, pres)
        assert len(set(b.letters)) == len(b)
        assert is_band_brick(b)
        assert is_brick_oracle(pres, build_band_module(pres, b, 1, 1))
        assert not set(cert.top) & set(cert.socle)
        assert top_socle(b).top == cert.top


def test_double_edge_band_is_alternating():
    g = load_graph("double_edge")
    cert = cycle_brick_band(g, find_witness(g))
    assert len(cert.band) == 2
    arrows = {x.arrow[:2] for x in cert.band.letters}
    assert arrows == {"v1", "v2"}
    assert {x.direct for x in cert.band.letters} == {True, False}


def test_two_loops_band_uses_both_loops():
    g = load_graph("two_loops")
    w = find_witness(g)
    assert w.kind == "two-odd-cycles" and w.path == ()
    cert = cycle_brick_band(g, w)
    assert is_band_brick(cert.band)


def test_bad_witness():
    g = load_graph("two_loops")
    odd = find_witness(g).cycles
    with pytest.raises(BadWitness):
        cycle_brick_band(g, Witness("even-cycle", (odd[0],)))
    with pytest.raises(BadWitness):
        cycle_brick_band(g, Witness("two-odd-cycles", (odd[0],)))
    even = find_witness(load_graph("double_edge")).cycles
    with pytest.raises(BadWitness):
        cycle_brick_band(load_graph("double_edge"), Witness("two-odd-cycles", even + even))


def test_search_route_agrees():
    for name in ("double_edge", "square", "two_loops", "two_loops_nested"):
        g = load_graph(name)
        cert = cycle_brick_band(g, find_witness(g), method="search")
        assert cert.route == "search"
        assert is_band_brick(cert.band) and len(set(cert.band.letters)) == len(cert.band)


def test_constructed_bands_have_trivial_endo_words():
    for name in INFINITE:
        g = load_graph(name)
        b = cycle_brick_band(g, find_witness(g)).band
        assert all(p.quotient.length == 0 for p in band_endo_pairs(b))


def test_two_decision_paths_agree_on_corpus():
    for name in ALL_GRAPHS:
        g = load_graph(name)
        bg = decide_tau_finite_bg(g)
        sb = decide_tau_finite_sb(bga_presentation(g))
        assert (bg.verdict == TAU_INFINITE) == (sb.verdict == TAU_INFINITE)


def _transform(g: BrauerGraph, seed: int) -> BrauerGraph:
    """Rename edges and vertices, reorder vertices and rotate every cyclic order."""
    rng = random.Random(seed)
    enames = [f"f{i}" for i in range(len(g.edges))]
    rng.shuffle(enames)
    em = dict(zip(g.edges, enames))
    vs = []
    for i, v in enumerate(g.vertices):
        r = rng.randrange(len(v.cyclic))
        cyc = v.cyclic[r:] + v.cyclic[:r]
        vs.append(BrauerVertex(f"u{i}_{seed}", v.multiplicity, tuple(em[e] for e in cyc)))
    rng.shuffle(vs)
    edges = list(em.values())
    rng.shuffle(edges)
    return BrauerGraph(tuple(edges), tuple(vs))


@given(st.sampled_from(ALL_GRAPHS), st.integers(0, 10_000))
def test_decision_invariant_under_relabel_and_rotation(name, seed):
    g = load_graph(name)
    a, b = decide_tau_finite_bg(g), decide_tau_finite_bg(_transform(g, seed))
    assert (a.verdict, a.reason) == (b.verdict, b.reason)
    assert a.details["cyclomatic"] == b.details["cyclomatic"]
    if a.band is not None:
        assert len(a.band.split()) == len(b.band.split())


@given(st.integers(0, 100_000), st.integers(1, 3), st.integers(0, 2))
@settings(max_examples=25, deadline=None)
def test_random_graphs_paths_agree(seed, nv, extra):
    g = random_brauer_graph(seed, nv, max(nv - 1, 1) + extra)
    pres = check_presentation(g)
    bg = decide_tau_finite_bg(g)
    sb = decide_tau_finite_sb(pres)
    assert (bg.verdict == TAU_INFINITE) == (sb.verdict == TAU_INFINITE)
    if bg.infinite:
        b = make_band(pres, bg.band)
        assert is_band_brick(b) and len(set(b.letters)) == len(b)
    assert (bg.verdict == TAU_FINITE) == (g.cyclomatic == 0 or (
        g.cyclomatic == 1 and len(cycle_analysis(g).witnesses[0]) % 2 == 1))
