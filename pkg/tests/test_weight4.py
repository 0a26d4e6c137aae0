import hashlib
import json
import re
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mplog.errors import NotDepthTwo
from mplog.exactfield import INF, Mobius, ProjPoint, const, var
from mplog.numeval import verify_identity
from mplog.parsing import parse_symbol
from mplog.symbols import EXACT, Identity, LinComb, Symbol
from mplog.weight4 import (KINDS, RELATION_TEMPLATES, CanonicalW4, ConversionSet, X, Y, classify_w4,
                           convert_to_t31, cross_ratio_words, derive_conversions, load_reference_table, orbit,
                           reference_terms, phi_emit, type_symbol, validate_template, word_value)

# sha256 of the shipped entries (sorted-key JSON) and of the raw source lines
ENTRIES_SHA = "5255029b012c8847b462014a98feeebe178a7f4720c7b38053cd0a2d0df60b51"
SOURCE_SHA = "ab7ae8073ff4eb9fe56b4a5dfbf75bccd3b12c8989d2da13e163f16b8d03156c"


def test_table_checksums():
    t = load_reference_table()
    assert hashlib.sha256(json.dumps(t["entries"], sort_keys=True).encode()).hexdigest() == ENTRIES_SHA
    assert hashlib.sha256("".join(t["source_lines"]).encode()).hexdigest() == SOURCE_SHA


def test_table_entries_match_source_lines():
    t = load_reference_table()
    parsed = []
    for m in re.finditer(r"([+-]?)(\d*)\[([a-e]+),([a-e]+)\]", "".join(t["source_lines"])):
        sign = -1 if m.group(1) == "-" else 1
        parsed.append({"coeff": sign * int(m.group(2) or 1), "args": [m.group(3), m.group(4)]})
    assert parsed == t["entries"]
    assert len(parsed) == 42
    assert {"coeff": -2, "args": ["cad", "ead"]} in parsed
    assert {"coeff": 2, "args": ["acd", "bcd"]} in parsed


def test_cross_ratio_words():
    w = cross_ratio_words()
    a, b, c, d = (var(s) for s in "abcd")
    assert w["abc"] == (a - c) / (b - c)
    assert w["abcd"] == ((a - c) * (b - d)) / ((a - d) * (b - c))
    assert word_value("abc") == w["abc"]
    with pytest.raises(ValueError):
        word_value("aab")
    assert len(reference_terms()) == 42


@pytest.mark.parametrize("kind", KINDS)
def test_type_symbol_classifies_back(kind):
    args = (X, Y)[: 1 if kind == "T4" else 2]
    cw = classify_w4(type_symbol(kind, *args))
    assert cw == CanonicalW4(kind, args)


small = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@given(st.sampled_from(KINDS), st.tuples(small, small, small, small).filter(lambda t: t[0] * t[3] != t[1] * t[2]))
def test_classify_is_stable_under_moebius(kind, m):
    s = type_symbol(kind, *(X, Y)[: 1 if kind == "T4" else 2])
    M = Mobius(*m)
    moved = Symbol(M(s.base), tuple(M(a) for a in s.word), M(s.end), M(s.marker))
    assert classify_w4(moved) == classify_w4(s)


def test_classify_rejects_bad_input():
    with pytest.raises(NotDepthTwo):
        classify_w4(parse_symbol("H(0|x,y|1)"))
    with pytest.raises(NotDepthTwo):
        classify_w4(parse_symbol("H(0|x,y,z,0|1)"))
    assert classify_w4(parse_symbol("H(0|x,y,x,0|1)")).kind == "Other"


def test_orbit_has_twelve_points():
    pts = orbit()
    assert len(pts) == 12
    assert len({(x, y) for x, y in pts}) == 12


@pytest.mark.parametrize("name", sorted(RELATION_TEMPLATES))
def test_relation_templates_validate(name):
    assert validate_template(name) < 1e-7


def test_conversions_close():
    conv = derive_conversions()
    assert isinstance(conv, ConversionSet) and conv.closed
    assert set(conv.conversions) == {"T22", "T13"}
    for c in conv.conversions.values():
        for _, (s,) in c.formula.terms():
            assert classify_w4(s).kind in ("T31", "T4")


@pytest.mark.parametrize("kind", ["T22", "T13"])
def test_conversion_lifts_verify(kind):
    lift = derive_conversions().conversions[kind].exact_lift
    rep = verify_identity(Identity(lift, EXACT), trials=10, tol=1e-5, seed=5)
    assert rep.passed, rep.max_residual


def test_convert_to_t31_leaves_only_t31_and_t4():
    L = LinComb.single(type_symbol("T22", const(3), var("u"))) + LinComb.single(type_symbol("T13", X, Y), 2)
    out, counts = convert_to_t31(L)
    assert counts["T22"] == 1 and counts["T13"] == 1
    assert {classify_w4(s).kind for s in out.symbols()} <= {"T31", "T4"}


def test_phi_report():
    rep = phi_emit()
    obj = rep.to_json_obj()
    assert obj["kind"] == "phi-report" and obj["version"] == 1
    assert rep.split_consistent and rep.closed
    assert obj["reference_term_count"] == 42 and rep.raw_counts["Other"] == 0
    statuses = {r["status"] for r in obj["comparison"]}
    assert statuses <= {"match", "coeff-mismatch", "missing-in-computed", "missing-in-reference"}
    reference_side = [r for r in obj["comparison"] if r["status"] != "missing-in-reference"]
    assert len(reference_side) == 42
    assert rep.to_json() == phi_emit().to_json()
