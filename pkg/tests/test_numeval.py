import math
import random

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from mplog import calculus as C
from mplog.errors import DenominatorVanishes, DivergenceWithoutEpsilon, OutOfDomain, PathTooClose, SamplingExhausted
from mplog.exactfield import INF, Mobius, ProjPoint, var
from mplog.numeval import (EvalConfig, PathSpec, canonical_symbol, eval_lincomb, eval_symbol, fit_eps,
                           sample_config, series_dictionary, series_eval, verify_identity)
from mplog.parsing import parse_lincomb, parse_symbol
from mplog.symbols import EXACT, Identity, LinComb, Symbol, make_symbol

# Closed forms, frozen from independent sources (not from this package).
LOG_HALF = -0.6931471805599453
ZETA2 = math.pi ** 2 / 6
ZETA3 = 1.2020569031595942
ZETA4 = math.pi ** 4 / 90
LI2_HALF = math.pi ** 2 / 12 - math.log(2) ** 2 / 2      # 0.5822405264650125
LI3_HALF = 0.5372131936080402
LI4_HALF = 0.5174790616738994
LI2_THIRD = 0.36621322997706                            # Li_2(1/3)


def ev(text, **at):
    return eval_symbol(parse_symbol(text), EvalConfig(at))


@pytest.mark.parametrize("text,value", [
    ("H(0|2|1)", LOG_HALF),
    ("H(0|1,0|1/2)", -LI2_HALF),
    ("H(0|1,0,0|1/2)", -LI3_HALF),
    ("H(0|1,0,0,0|1/2)", -LI4_HALF),
    ("H(0|1,0|1/3)", -LI2_THIRD),
    ("H(0|1,0|1)", -ZETA2),
    ("H(0|1,0,0|1)", -ZETA3),
    ("H(0|1,0,0,0|1)", -ZETA4),
    ("H(0|1,1|1/2)", math.log(2) ** 2 / 2),
])
def test_closed_form_values(text, value):
    assert ev(text) == pytest.approx(value, abs=1e-10)


def test_degenerate_path_and_empty_combination():
    assert ev("H(a|b,c|a)", a=1, b=3, c=2j) == 0
    assert eval_lincomb(LinComb()) == 0


def test_product_term_is_square():
    s = parse_symbol("H(0|2|1)")
    assert eval_lincomb(LinComb.product([s, s])) == pytest.approx(LOG_HALF ** 2, abs=1e-12)


def test_weight1_marker_form_is_log_of_cross_ratio():
    vals = {"a": 1 + 1j, "b": -2, "z": 3j, "x": 0.5 - 1j}
    s = parse_symbol("H(a|z//x|b)")
    cr = C.weight1_value(s)
    from mplog.exactfield import ratfun_eval
    assert eval_symbol(s, EvalConfig(vals)) == pytest.approx(np.log(ratfun_eval(cr, vals)), abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("z", [0.5, -0.5, 0.3 + 0.3j, -0.1 - 0.45j])
def test_polylog_series_matches_quadrature(n, z):
    sym, at = canonical_symbol("Li", (n, z))
    d = series_dictionary("Li", (n, z))
    assert d["symbol_sign"] * series_eval("Li", (n, z)) == pytest.approx(eval_symbol(sym, EvalConfig(at)), abs=1e-12)


@pytest.mark.parametrize("kind", ["T31", "T22", "T13"])
@pytest.mark.parametrize("x,y", [(4 + 1j, 2 - 0.5j), (-3, 2.5j), (5, -3 + 1j)])
def test_depth2_series_matches_quadrature(kind, x, y):
    sym, at = canonical_symbol(kind, (x, y))
    assert series_eval(kind, (x, y)) == pytest.approx(eval_symbol(sym, EvalConfig(at)), abs=1e-11)


def test_t4_is_minus_li4_of_inverse():
    assert series_eval("T4", (2,)) == pytest.approx(-LI4_HALF, abs=1e-13)
    sym, at = canonical_symbol("T4", (2,))
    assert eval_symbol(sym, EvalConfig(at)) == pytest.approx(-LI4_HALF, abs=1e-12)


def test_series_domain_and_zero():
    assert series_eval("Li", (3, 0)) == 0
    with pytest.raises(OutOfDomain):
        series_eval("Li", (2, 0.99))
    with pytest.raises(OutOfDomain):
        series_eval("T31", (1, 1))


def test_divergent_symbol_needs_epsilon():
    with pytest.raises(DivergenceWithoutEpsilon):
        ev("H(0|1,0,1|1)")
    # convergent as written, divergent once a and b coincide
    for text in ("H(a|b,c|d)", "H(a|c,b|b2)", "H(a|c//b|d)"):
        with pytest.raises(DivergenceWithoutEpsilon):
            ev(text, a=1 + 1j, b=1 + 1j, b2=1 + 1j, c=3, d=-2j)


def test_path_too_close():
    s = parse_symbol("H(0|b|1)")
    with pytest.raises(PathTooClose):
        eval_symbol(s, EvalConfig({"b": 0.5 + 1e-6j}, path=PathSpec((), clearance=1e-3)))


def test_panel_doubling_is_stable():
    s = parse_symbol("H(a|b,c,d|e)")
    at = {"a": 0, "b": 0.5 + 0.7j, "c": -1 + 0.2j, "d": 2 - 1j, "e": 1.5 + 0.1j}
    v1 = eval_symbol(s, EvalConfig(at, panels=2))
    v2 = eval_symbol(s, EvalConfig(at, panels=4))
    assert abs(v1 - v2) < 1e-9


def test_sample_config_is_deterministic_and_clear():
    syms = [parse_symbol("H(a|b,c|e)"), parse_symbol("H(a|c|m)")]
    c1, c2 = sample_config(syms, seed=7), sample_config(syms, seed=7)
    assert c1.assignment == c2.assignment and c1.hub == c2.hub
    with pytest.raises(SamplingExhausted):
        sample_config([parse_symbol("H(a|b|e)")], fixed={"a": 0, "b": 0, "e": 1}, max_assignments=3)


def test_fit_eps_recovers_coefficients():
    eps = (1e-2, 1e-3, 1e-4)
    vals = [0.25 + 3 * e * math.log(e) for e in eps]
    c0, c1 = fit_eps(eps, vals)
    assert abs(c0 - 0.25) < 1e-12 and abs(c1 - 3) < 1e-9


@given(st.integers(0, 10 ** 6))
def test_path_reversal(seed):
    rng = random.Random(seed)
    at = {k: complex(rng.uniform(-3, 3), rng.uniform(-3, 3)) for k in "abcde"}
    s = parse_symbol("H(a|b,c,d|e)")
    r = parse_symbol("H(e|d,c,b|a)")
    try:
        v1 = eval_symbol(s, EvalConfig(at, path=PathSpec((), clearance=0.02)))
        v2 = eval_symbol(r, EvalConfig(at, path=PathSpec((), clearance=0.02)))
    except PathTooClose:
        assume(False)
    assert abs(v1 + v2) < 1e-6


@given(st.integers(0, 10 ** 6))
def test_chen_over_shared_waypoint(seed):
    rng = random.Random(seed)
    at = {k: complex(rng.uniform(-3, 3), rng.uniform(-3, 3)) for k in "abcdem"}
    ident = C.path_split_chen(parse_symbol("H(a|b,c,d|e)"), "m")
    cfg = EvalConfig(at, hub=at["m"])
    syms = ident.expr.symbols()
    path_ok = True
    for s in syms:
        if s.weight == 0:
            continue
        ends = [at[str(s.base.to_text())], at[str(s.end.to_text())]]
        for q in s.word:
            a = at[q.to_text()]
            for u, v in ((ends[0], at["m"]), (at["m"], ends[1])):
                if min(abs(a - u), abs(a - v), abs(a - (u + v) / 2)) < 0.1:
                    path_ok = False
    assume(path_ok)
    assert abs(eval_lincomb(ident.expr, cfg)) < 1e-6


real_mobius = st.tuples(*[st.integers(-4, 4)] * 4).filter(lambda t: t[0] * t[3] - t[1] * t[2] != 0)


@given(real_mobius, st.integers(0, 10 ** 6))
def test_moebius_invariance_along_image_path(m, seed):
    rng = random.Random(seed)
    at = {k: complex(rng.randint(-16, 16) / 4, rng.randint(-16, 16) / 4) for k in "abcdx"}
    s = parse_symbol("H(a|b,c//x|d)")
    a, b, c, d = m
    M = Mobius(a, b, c, d)
    img = Symbol(M(s.base), tuple(M(p) for p in s.word), M(s.end), M(s.marker))
    ts = np.linspace(0, 1, 129)
    seg = at["a"] + ts * (at["d"] - at["a"])
    den = c * seg + d
    assume(np.min(np.abs(den)) > 0.3)
    way = (a * seg + b) / den
    try:
        v1 = eval_symbol(s, EvalConfig(at, path=PathSpec((), clearance=0.03)))
        v2 = eval_symbol(img, EvalConfig(at, path=PathSpec(tuple(way[1:-1]), clearance=0.03)))
    except (PathTooClose, DenominatorVanishes, DivergenceWithoutEpsilon, ZeroDivisionError):
        assume(False)
    assert abs(v1 - v2) < 1e-6


def test_verify_rejects_quotient_layer():
    from mplog.errors import QuotientLayerRejected
    ident = C.shuffle_identity(parse_symbol("H(a|b|c)"), parse_symbol("H(a|d|c)")).quotient()
    with pytest.raises(QuotientLayerRejected):
        verify_identity(ident)


def test_verify_report_json():
    ident = C.shuffle_identity(parse_symbol("H(a|b|c)"), parse_symbol("H(a|d|c)"))
    rep = verify_identity(ident, trials=3)
    obj = rep.to_json_obj()
    assert obj["kind"] == "verify-report" and obj["passed"] and len(obj["trials"]) == 3
    assert "branch" in obj


def test_regularized_identity_reports_eps_fit():
    ident = C.path_split_chen(parse_symbol("H(a|b,c|e)"), "b")
    rep = verify_identity(ident, trials=4)
    assert rep.regularized and rep.passed
    assert all("c0" in t and t["shrinking"] for t in rep.trials)


def test_corrupted_regularized_identity_fails():
    ident = C.path_split_chen(parse_symbol("H(a|b,c|e)"), "b")
    for coeff, factors in ident.expr.terms():
        bumped = Identity(ident.expr + LinComb.product(list(factors), 1), EXACT)
        rep = verify_identity(bumped, trials=3)
        assert rep.regularized and not rep.passed
