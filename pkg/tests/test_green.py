import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import quivers, random_quiver
from clusterlab import corpus
from clusterlab.green import (
    Color,
    FramedState,
    SignCoherenceError,
    color,
    colors,
    frame,
    search_mgs,
    verify_mgs,
)
from clusterlab.quiver import Quiver, is_acyclic_quiver

CG3_SEQ = [k - 1 for k in (2, 3, 4, 1, 5, 1, 2, 6, 3)]


def test_frame_examples():
    assert frame(corpus.builtin("a2")).b_hat == ((0, -1), (1, 0), (1, 0), (0, 1))
    assert frame(Quiver(1, 0)).b_hat == ((0,), (1,))
    cg3 = corpus.builtin("cg3_single")
    st_ = frame(cg3)
    assert len(st_.b_hat) == 12 and len(st_.b_hat[0]) == 6
    assert st_.exchange == frame(cg3.mutable_part()).exchange


def test_colors():
    st_ = frame(corpus.builtin("cg3_mutable"))
    assert all(c is Color.GREEN for c in colors(st_))
    after = st_.mutate(3)
    assert color(after, 3) is Color.RED


def test_mixed_sign_raises():
    bad = FramedState(((0, 1), (-1, 0), (1, 0), (-1, 1)))
    with pytest.raises(SignCoherenceError):
        color(bad, 0)


def test_cg3_sequence_single_reading():
    v = verify_mgs(corpus.builtin("cg3_mutable", "single"), CG3_SEQ)
    assert v.accepted, v.diagnostic
    assert len(v.states) == 10
    assert all(c is Color.RED for c in colors(v.final))


def test_cg3_sequence_double_reading_rejected_at_step_nine():
    v = verify_mgs(corpus.builtin("cg3_mutable", "double"), CG3_SEQ)
    assert not v.accepted
    assert v.diagnostic.startswith("step 9")


def test_verify_examples():
    assert verify_mgs(Quiver(1, 0), [0]).accepted
    for name in ("a2", "a3", "markov", "cg3_mutable"):
        assert not verify_mgs(corpus.builtin(name), []).accepted


def test_reddening_flag():
    a2 = corpus.builtin("a2")
    # 0, 1 is green; mutating 0 again at a red vertex is only allowed with the flag
    seq = [0, 0, 0, 1]
    assert not verify_mgs(a2, seq).accepted
    assert verify_mgs(a2, seq, reddening=True).accepted


@settings(max_examples=80, deadline=None)
@given(quivers(max_n=4, max_m=0), st.lists(st.integers(0, 3), min_size=1, max_size=6))
def test_red_step_is_reported_exactly(q, raw):
    seq = [k % q.n for k in raw]
    st_ = frame(q)
    for step, k in enumerate(seq, 1):
        if color(st_, k) is Color.RED:
            v = verify_mgs(q, seq)
            assert not v.accepted and v.diagnostic.startswith(f"step {step}:")
            assert f"vertex {k + 1} is red" in v.diagnostic
            return
        st_ = st_.mutate(k)


def source_order(q):
    """Mutable vertices ordered so each is a source once its predecessors are gone."""
    n = q.n
    left = set(range(n))
    order = []
    while left:
        v = min(u for u in left if all(q.adj[w][u] <= 0 for w in left))
        order.append(v)
        left.remove(v)
    return order


@settings(max_examples=100, deadline=None)
@given(quivers(max_n=6, max_m=1))
def test_source_order_is_mgs(q):
    if not is_acyclic_quiver(q):
        return
    v = verify_mgs(q, source_order(q))
    assert v.accepted, v.diagnostic


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_relabel_invariance(seed):
    rng = random.Random(seed)
    q = corpus.builtin("cg3_mutable")
    perm = list(range(6))
    rng.shuffle(perm)
    moved = q.relabel(perm)
    assert verify_mgs(moved, [perm[k] for k in CG3_SEQ]).accepted
    # and a random small quiver's found sequence transfers too
    r = random_quiver(rng, 3, 0, bound=1)
    found = search_mgs(r, 6, 5000)
    if found.found:
        p3 = list(range(3))
        rng.shuffle(p3)
        assert verify_mgs(r.relabel(p3), [p3[k] for k in found.sequence]).accepted


def test_search_a2():
    out = search_mgs(corpus.builtin("a2"), 5)
    assert out.sequence == (0, 1) and out.complete


def brute_green_sequences(q, max_len):
    """All green sequences up to ``max_len`` that end all red, no deduplication."""
    found = []

    def go(st_, seq):
        cols = colors(st_)
        if all(c is Color.RED for c in cols):
            found.append(tuple(seq))
            return
        if len(seq) == max_len:
            return
        for k, c in enumerate(cols):
            if c is Color.GREEN:
                go(st_.mutate(k), seq + [k])

    go(frame(q), [])
    return found


@pytest.mark.parametrize("name", ["a2", "a3"])
def test_search_matches_brute_force(name):
    q = corpus.builtin(name)
    every = brute_green_sequences(q, 6)
    best = min(every, key=lambda s: (len(s), s))
    assert search_mgs(q, 6).sequence == best


def test_search_markov_none():
    out = search_mgs(corpus.builtin("markov"), 10)
    assert not out.found and out.cut_by == "length"


def test_search_node_limit():
    out = search_mgs(corpus.builtin("cg3_mutable"), 9, node_limit=20)
    assert not out.found and out.cut_by == "nodes" and not out.complete


def test_search_cg3_within_nine():
    out = search_mgs(corpus.builtin("cg3_mutable"), 9)
    assert out.found and len(out.sequence) <= 9
    assert verify_mgs(corpus.builtin("cg3_mutable"), out.sequence).accepted
