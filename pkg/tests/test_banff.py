import copy

import pytest
from hypothesis import given, settings

from helpers import quivers
from clusterlab import corpus
from clusterlab.banff import (
    AUConclusion,
    BanffStatus,
    NodeKind,
    au_report,
    banff_reduced,
    least_covering_pair,
    render_trace,
    replay_trace,
    trace_to_dot,
)
from clusterlab.quiver import (
    Quiver,
    covering_pairs,
    is_acyclic_quiver,
    is_source_freezing_quiver,
    mutate_quiver,
)
from clusterlab.semifield import GroundRing, parse_ring


@pytest.fixture(scope="module")
def cg3_trace():
    return banff_reduced(corpus.builtin("cg3_mutable"))


def test_cg3_success(cg3_trace):
    assert cg3_trace.status is BanffStatus.SUCCESS
    assert cg3_trace.root.shape() == ["A", ["A", "A"]]
    assert len(cg3_trace.leaves()) == 3
    assert all(leaf.kind is NodeKind.ACYCLIC for leaf in cg3_trace.leaves())
    assert replay_trace(cg3_trace) == []


def test_cg3_root_pair_is_covering(cg3_trace):
    root = cg3_trace.root
    assert root.pair in covering_pairs(root.witness)
    # one mutation at vertex 3 exposes the covering pair 3 -> 6
    assert root.path == (2,)
    assert tuple(root.labels[v] for v in root.pair) == ("3", "6")


def test_tampered_trace_is_rejected(cg3_trace):
    bad = copy.deepcopy(cg3_trace)
    leaf = bad.leaves()[0]
    leaf.path = leaf.path + (0,)
    assert replay_trace(bad)
    bad = copy.deepcopy(cg3_trace)
    bad.root.pair = (bad.root.pair[1], bad.root.pair[0])
    assert replay_trace(bad)


def test_acyclic_is_depth_zero_leaf():
    for name in ("a2", "a3", "fig2"):
        trace = banff_reduced(corpus.builtin(name))
        assert trace.status is BanffStatus.SUCCESS
        assert trace.root.kind is NodeKind.ACYCLIC and trace.root.path == ()
        assert trace.root.children == []


@settings(max_examples=60, deadline=None)
@given(quivers(max_n=5, max_m=1))
def test_acyclic_never_mutates(q):
    if is_acyclic_quiver(q):
        trace = banff_reduced(q, 2, 200)
        assert trace.root.kind is NodeKind.ACYCLIC and trace.root.path == ()


@settings(max_examples=40, deadline=None)
@given(quivers(max_n=5, max_m=0))
def test_every_trace_replays(q):
    trace = banff_reduced(q, 3, 300)
    assert replay_trace(trace) == []
    if trace.status is BanffStatus.SUCCESS:
        for leaf in trace.leaves():
            w = leaf.quiver
            for k in leaf.path:
                w = mutate_quiver(w, k)
            assert is_acyclic_quiver(w)


def test_markov_fails():
    trace = banff_reduced(corpus.builtin("markov"))
    assert trace.status is BanffStatus.FAIL
    assert trace.status.exit_code == 1
    assert trace.root.kind is NodeKind.FAIL


def test_inconclusive_when_limited():
    # the 3-cycle with triple arrows has an infinite mutation class, so a
    # bounded walk cannot exhaust it and must not report FAIL
    trace = banff_reduced(Quiver(3, 0, [(0, 1, 3), (1, 2, 3), (2, 0, 3)]), 1, 2)
    assert trace.status is BanffStatus.INCONCLUSIVE
    assert trace.status.exit_code == 2


def test_least_covering_pair_uses_canonical_order():
    a3 = corpus.builtin("a3")
    assert least_covering_pair(a3) in covering_pairs(a3)
    assert least_covering_pair(corpus.builtin("markov")) is None


def test_render_and_dot(cg3_trace):
    text = render_trace(cg3_trace)
    assert "SUCCESS" in text and text.count("ACYCLIC") == 3
    dot = trace_to_dot(cg3_trace)
    assert dot.startswith("digraph") and "<=>" in dot and "red" in dot
    assert dot.count("Acyclic") == 3


# -- reports -----------------------------------------------------------------


def test_report_cg3_full_laurent():
    r = au_report(corpus.builtin("cg3_mutable"), GroundRing.full())
    assert r.conclusion is AUConclusion.CONCLUDED
    assert r.banff is not None and r.banff.status is BanffStatus.SUCCESS


def test_report_cg3_polynomial_never_concluded():
    for name in ("cg3_mutable", "cg3_single", "cg3_double"):
        r = au_report(corpus.builtin(name), GroundRing.polynomial())
        assert r.conclusion is AUConclusion.INCONCLUSIVE
        assert r.conclusion.exit_code == 2


def test_report_fig2_acyclic_source_freezing():
    r = au_report(corpus.builtin("fig2"), GroundRing.polynomial())
    assert r.conclusion is AUConclusion.CONCLUDED
    assert r.acyclic and r.source_freezing


def test_report_fig1_obstruction_and_localization():
    q = corpus.as_quiver(corpus.builtin("fig1"))
    r = au_report(q, GroundRing.polynomial())
    assert r.conclusion is AUConclusion.INCONCLUSIVE
    assert "z2^-1" in r.render()
    assert r.suggested_ring() == parse_ring("zp+:z2")
    assert au_report(q, parse_ring("zp+:z2")).conclusion is AUConclusion.CONCLUDED


@settings(max_examples=40, deadline=None)
@given(quivers(max_n=4, max_m=2))
def test_polynomial_conclusion_needs_acyclic_source_freezing(q):
    r = au_report(q, GroundRing.polynomial(), 2, 200)
    if r.conclusion is AUConclusion.CONCLUDED:
        assert is_acyclic_quiver(q) and is_source_freezing_quiver(q)
