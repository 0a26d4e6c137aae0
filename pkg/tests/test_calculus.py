from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mplog import calculus as C
from mplog.errors import DivergentSymbol, FrameMismatch
from mplog.exactfield import INF, ProjPoint, var
from mplog.numeval import verify_identity
from mplog.parsing import parse_symbol
from mplog.symbols import EXACT, Identity, LinComb, make_symbol


def sym(base, word, end, marker=INF):
    return make_symbol(base, list(word), end, marker)


@given(st.lists(st.integers(0, 3), max_size=4), st.lists(st.integers(4, 7), max_size=4))
def test_shuffle_word_count(u, v):
    words = C.shuffle_words(u, v)
    assert len(words) == comb(len(u) + len(v), len(u))
    assert len(set(words)) == len(words)
    for w in words:
        assert [a for a in w if a < 4] == u and [a for a in w if a >= 4] == v


def test_shuffle_requires_common_frame():
    with pytest.raises(FrameMismatch):
        C.shuffle_identity(sym("a", "b", "c"), sym("a", "b", "d"))


def test_marker_change_term_count():
    s = sym("a", ["b", "c", "d", "e"], "f", "x")
    ident = C.marker_change(s, "y")
    assert len(ident.expr) == 17  # s and the 16 expanded terms
    with pytest.raises(DivergentSymbol):
        C.marker_change(s, "a")
    assert len(C.marker_change(s, "x").expr) == 0


def test_marker_swap_shape():
    s = sym("a0", ["a1", "a2", "a3"], "e", "x")
    ident = C.marker_swap_relation(s, 2)
    assert ident.layer == EXACT and ident.derivation == ["marker-swap(i=2)"]
    assert ident.expr.coefficient(C.swap_marker(s, 2)) == 1
    assert len(C.build_B(s, 2)) == 3


@pytest.mark.parametrize("n,r", [(n, r) for n in range(1, 6) for r in range(1, 4) if r <= n])
def test_collapse_agrees_with_exact_pull(n, r):
    word = ["y"] * r + [f"b{k}" for k in range(n - r)]
    s = sym("a", word, "e")
    exact = C.pull_repeat_exact(s)
    assert exact.mod_products() == C.collapse_closed(s)
    if n == 1:
        return  # a single letter cannot be pulled out
    for _, factors in exact.singles().terms():
        assert factors[0].word[0] != ProjPoint.of(var("y"))


def test_pull_exact_identity_verifies():
    s = sym("a", ["y", "y", "b", "c"], "e")
    expr = LinComb.single(s) - C.pull_repeat_exact(s)
    assert verify_identity(Identity(expr, EXACT), trials=20).passed


def test_weight1_value_is_cross_ratio_and_multiplicative():
    s1 = sym("a", ["z"], "m", "x")
    s2 = sym("m", ["z"], "b", "x")
    s = sym("a", ["z"], "b", "x")
    assert C.weight1_value(s1) * C.weight1_value(s2) == C.weight1_value(s)
    assert C.weight1_value(sym("a", ["z"], "b")) == (var("b") - var("z")) / (var("a") - var("z"))


IDENTITIES = {
    "shuffle-1-2": lambda: C.shuffle_identity(sym("a", ["b"], "e"), sym("a", ["c", "d"], "e")),
    "shuffle-2-2": lambda: C.shuffle_identity(sym("a", ["b", "c"], "e"), sym("a", ["d", "f"], "e")),
    "marker-change-3": lambda: C.marker_change(sym("a", ["b", "c", "d"], "e", "x"), "y"),
    "marker-swap-3": lambda: C.marker_swap_relation(sym("a", ["b", "c", "d"], "e", "x"), 1),
    "reverse-3": lambda: C.reverse_path(sym("a", ["b", "c", "d"], "e")),
    "antipode-3": lambda: C.antipode_identity(sym("a", ["b", "c", "d"], "e")),
    "chen-3": lambda: C.path_split_chen(sym("a", ["b", "c", "d"], "e"), "m"),
    "chen-through-letter": lambda: C.path_split_chen(sym("a", ["b", "c"], "e"), "b"),
    "two-term-3": lambda: C.path_two_term_exact(sym("a", ["b", "c", "d"], "e"), "m"),
    "two-term-inf": lambda: C.path_two_term_exact(sym("a", ["b", "c"], "e", "x"), INF),
}


@pytest.mark.parametrize("name", sorted(IDENTITIES))
def test_exact_identities_verify(name):
    rep = verify_identity(IDENTITIES[name](), trials=20, tol=1e-6, seed=3)
    assert rep.passed, rep.max_residual


def test_corrupted_identity_fails():
    ident = C.marker_swap_relation(sym("a", ["b", "c", "d"], "e", "x"), 1)
    bad = Identity(ident.expr + LinComb.single(sym("a", ["b", "c", "d"], "e", "x")), EXACT)
    rep = verify_identity(bad, trials=5)
    assert not rep.passed and rep.max_residual > 1e-3


def test_quotient_two_term_drops_products():
    q = C.path_two_term(parse_symbol("H(a|b,c|e)"), "m")
    assert len(q.expr.products()) == 0
    assert q.expr == (LinComb.single(parse_symbol("H(a|b,c|e)")) - LinComb.single(parse_symbol("H(m|b,c|e)"))
                      + LinComb.single(parse_symbol("H(m|b,c|a)")))


def test_marker_swap_small_weights():
    s1 = sym("a0", ["a1"], "a2", "x")
    assert C.marker_swap_relation(s1, 1).expr == LinComb.single(s1) + LinComb.single(sym("a0", ["x"], "a2", "a1"))
    s2 = sym("a0", ["a1", "a2"], "a3", "x")
    expected = (LinComb.single(s2) + LinComb.single(sym("a0", ["x", "a2"], "a3", "a1"))
                - LinComb.single(sym("a0", ["a1", "a1"], "a3", "x")))
    assert C.marker_swap_relation(s2, 1).expr == expected
    assert verify_identity(C.marker_swap_relation(s1, 1), trials=20).passed
