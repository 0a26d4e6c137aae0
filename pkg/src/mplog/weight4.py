"""Weight 4: canonical two-variable types, conversion of types (2,2) and
(1,3) into type (3,1) plus one-variable polylogarithms, and the phi report.

Canonical types (all with base 0, end 1, marker inf):

    T31(x, y) = H(0|x,0,0,y|1)     T22(x, y) = H(0|x,0,y,0|1)
    T13(x, y) = H(0|x,y,0,0|1)     T4(x)     = H(0|x,0,0,0|1)
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import permutations

from .calculus import antipode_identity, shuffle_identity
from .errors import NotDepthTwo
from .exactfield import INF, ProjPoint, RatFun, var
from .numeval import EvalConfig, eval_lincomb, series_dictionary, series_eval  # noqa: F401
from .reduction import reduce_symbol
from .symbols import (EXACT, ONE, QUOTIENT, SCHEMA_VERSION, ZERO, LinComb, Symbol, canonicalize, dumps,
                      variable_count)

KINDS = ("T31", "T22", "T13", "T4")
_PATTERNS = {(1, 0, 0, 1): "T31", (1, 0, 1, 0): "T22", (1, 1, 0, 0): "T13", (1, 0, 0, 0): "T4"}
_LAYOUT = {"T31": (0, 3), "T22": (0, 2), "T13": (0, 1), "T4": (0,)}


@dataclass(frozen=True, eq=False)
class CanonicalW4:
    kind: str
    args: tuple

    def key(self):
        return (self.kind, self.args)

    def __eq__(self, other):
        return isinstance(other, CanonicalW4) and self.kind == other.kind and self.args == other.args

    def __hash__(self):
        return hash((self.kind, self.args))

    def symbol(self) -> Symbol:
        return type_symbol(self.kind, *self.args)

    def to_text(self) -> str:
        return f"{self.kind}({', '.join(a.to_text() for a in self.args)})"


def type_symbol(kind, *args) -> Symbol:
    """The canonical symbol of the given type."""
    args = [RatFun.coerce(a) for a in args]
    word = [ZERO] * 4
    for pos, a in zip(_LAYOUT[kind], args):
        word[pos] = ProjPoint(a)
    return Symbol(ZERO, tuple(word), ONE, INF)


def classify_w4(s: Symbol) -> CanonicalW4:
    if s.weight != 4:
        raise NotDepthTwo(f"{s.to_text()} does not have weight 4")
    c = canonicalize(s)
    if variable_count(c) > 2:
        raise NotDepthTwo(f"{s.to_text()} has more than two variables")
    pattern = tuple(0 if a == ZERO else 1 for a in c.word)
    kind = _PATTERNS.get(pattern)
    if kind is None:
        return CanonicalW4("Other", tuple(a.value for a in c.word if a != ZERO))
    return CanonicalW4(kind, tuple(c.word[p].value for p in _LAYOUT[kind]))


# --------------------------------------------------------------------------
# Cross-ratio words
# --------------------------------------------------------------------------

def cross_ratio_words(points=None):
    """Every 3-letter word uvw -> (u-w)/(v-w) and 4-letter word uvwz ->
    ((u-w)(v-z))/((u-z)(v-w)) over distinct letters of ``points``."""
    if points is None:
        points = {ch: var(ch) for ch in "abcde"}
    pts = {k: RatFun.coerce(v) for k, v in points.items()}
    letters = sorted(pts)
    for p, q in permutations(letters, 2):
        if pts[p] == pts[q]:
            raise ValueError("cross-ratio words need distinct points")
    out = {}
    for u, v, w in permutations(letters, 3):
        out[u + v + w] = (pts[u] - pts[w]) / (pts[v] - pts[w])
    for u, v, w, z in permutations(letters, 4):
        out[u + v + w + z] = ((pts[u] - pts[w]) * (pts[v] - pts[z])) / ((pts[u] - pts[z]) * (pts[v] - pts[w]))
    return out


def word_value(word, points=None):
    if len(set(word)) != len(word) or len(word) not in (3, 4):
        raise ValueError(f"bad cross-ratio word {word!r}: need 3 or 4 distinct letters")
    return cross_ratio_words(points)[word]


# --------------------------------------------------------------------------
# Relations among the canonical types
# --------------------------------------------------------------------------

X, Y = var("X"), var("Y")


def _sym(*word):
    return Symbol(ZERO, tuple(ProjPoint.of(w) if not isinstance(w, ProjPoint) else w for w in word), ONE, INF)


def _stuffle(a, b):
    def build(x, y):
        ta = type_symbol({(3, 1): "T31", (2, 2): "T22", (1, 3): "T13"}[(a, b)], x, y)
        tb = type_symbol({(3, 1): "T13", (2, 2): "T22", (1, 3): "T31"}[(a, b)], x, x / y)
        p1 = _sym(x / y, *([0] * (a - 1)))
        p2 = _sym(y, *([0] * (b - 1)))
        expr = LinComb.single(ta) + LinComb.single(tb) - LinComb.single(type_symbol("T4", x)) \
            - LinComb.product([p1, p2])
        return expr
    return build


RELATION_TEMPLATES = {
    "shuffle(1,3)": lambda x, y: shuffle_identity(_sym(y), _sym(x, 0, 0)).expr,
    "shuffle(2,2)": lambda x, y: shuffle_identity(_sym(x, 0), _sym(y, 0)).expr,
    "antipode": lambda x, y: antipode_identity(type_symbol("T31", x, y)).expr,
    "stuffle(3,1)": _stuffle(3, 1),
    "stuffle(2,2)": _stuffle(2, 2),
    "stuffle(1,3)": _stuffle(1, 3),
}

# Sample points inside the domain where every nested sum in the stuffle
# relations converges (|y| > 1, |x| > |y|), so the straight path [0, 1] is
# the branch on which the series product rule holds.
_VALIDATION_POINTS = [(4 + 1j, 2 - 0.5j), (-5 + 2j, 1.5 + 1.5j), (6 - 3j, -2 + 1j)]


def validate_template(name, tol=1e-7):
    """Largest residual of a relation template over the validation points."""
    expr = RELATION_TEMPLATES[name](X, Y)
    # divergent product factors (antipode) are evaluated with the common
    # endpoint deformation, under which the relation holds for every epsilon
    eps = 1e-4 if expr.has_divergent() else None
    worst = 0.0
    for x, y in _VALIDATION_POINTS:
        worst = max(worst, abs(eval_lincomb(expr, EvalConfig({"X": x, "Y": y}, epsilon=eps))))
    return worst


def orbit(x=X, y=Y):
    """Closure of (x, y) under (x, y) -> (y, x) and (x, y) -> (x, x/y)."""
    seen = [(x, y)]
    keys = {(x, y)}
    k = 0
    while k < len(seen):
        p, q = seen[k]
        for nxt in ((q, p), (p, p / q)):
            if nxt not in keys:
                keys.add(nxt)
                seen.append(nxt)
        k += 1
    return seen


def _key(c: CanonicalW4):
    return c.key()


def _column_kind(col):
    return col[0]


@dataclass
class Conversion:
    target: CanonicalW4
    formula: LinComb            # quotient-layer combination of T31 and T4 symbols
    multipliers: dict           # relation label -> coefficient
    exact_lift: LinComb         # sum of multipliers * exact relations; singles are target - formula

    def apply(self, x, y) -> LinComb:
        return self.formula.substitute({"X": x, "Y": y})


@dataclass
class ConversionSet:
    conversions: dict                       # "T22" / "T13" -> Conversion
    relations_admitted: list
    residuals: dict
    rank: int
    columns: int
    closed: bool = True


@dataclass
class InsufficientReport:
    missing: list
    relations_admitted: list
    residuals: dict
    rank: int
    columns: int
    residual_basis: list = field(default_factory=list)
    closed: bool = False


def _rref(rows, order):
    """Reduced row echelon form over Q with provenance.

    rows: list of (dict col -> Fraction, dict label -> Fraction).
    order: column priority.  Returns list of (pivot, row, provenance).
    """
    pos = {c: k for k, c in enumerate(order)}
    work = [(dict(r), dict(p)) for r, p in rows if r]
    pivots = []
    for col in order:
        idx = next((k for k, (r, _) in enumerate(work) if r.get(col)), None)
        if idx is None:
            continue
        r, p = work.pop(idx)
        inv = 1 / r[col]
        r = {c: v * inv for c, v in r.items()}
        p = {c: v * inv for c, v in p.items()}

        def eliminate(target):
            tr, tp = target
            f = tr.get(col)
            if not f:
                return target
            nr = dict(tr)
            for c, v in r.items():
                nv = nr.get(c, 0) - f * v
                if nv:
                    nr[c] = nv
                else:
                    nr.pop(c, None)
            np_ = dict(tp)
            for c, v in p.items():
                nv = np_.get(c, 0) - f * v
                if nv:
                    np_[c] = nv
                else:
                    np_.pop(c, None)
            return nr, np_

        work = [eliminate(t) for t in work]
        work = [t for t in work if t[0]]
        pivots = [(pc, *eliminate((pr, pp))) for pc, pr, pp in pivots]
        pivots.append((col, r, p))
    pivots.sort(key=lambda t: pos[t[0]])
    return pivots


_CONVERSIONS = None


def derive_conversions(with_antipode=False):
    """Express T22(X, Y) and T13(X, Y) through T31 and T4 modulo products.

    The antipode relation is left out by default: the system closes without
    it, and its exact form has factors divergent at 0, whose regularization
    (moving the endpoint) is incompatible with the stuffle relations, which
    hold only for the endpoints 0 and 1.  Leaving it out keeps every exact
    lift convergent and numerically checkable.
    """
    global _CONVERSIONS
    if _CONVERSIONS is not None and not with_antipode:
        return _CONVERSIONS
    names = [n for n in RELATION_TEMPLATES if with_antipode or n != "antipode"]
    residuals = {n: validate_template(n) for n in names}
    admitted = [n for n in names if residuals[n] < 1e-7]
    rows = []
    exact = {}
    for x, y in orbit():
        for n in admitted:
            label = f"{n}@({x.to_text()},{y.to_text()})"
            expr = RELATION_TEMPLATES[n](x, y)
            exact[label] = expr
            row = {}
            for c, (s,) in expr.singles().terms():
                k = _key(classify_w4(s))
                row[k] = row.get(k, 0) + c
                if not row[k]:
                    del row[k]
            rows.append((row, {label: Fraction(1)}))
    cols = sorted({c for r, _ in rows for c in r}, key=lambda k: (k[0], [a.to_text() for a in k[1]]))
    targets = [("T22", (X, Y)), ("T13", (X, Y))]
    bad = [c for c in cols if c[0] in ("T22", "T13") and c not in targets] + targets
    good = [c for c in cols if c[0] in ("T31", "T4")]
    pivots = _rref(rows, bad + good)
    rank = len(pivots)
    found = {}
    missing = []
    for t in targets:
        hit = next(((r, p) for pc, r, p in pivots if pc == t), None)
        if hit is None or any(c in hit[0] and c != t for c in bad):
            missing.append(t[0])
            continue
        r, p = hit
        formula = LinComb()
        for c, v in r.items():
            if c != t:
                formula = formula + LinComb.single(type_symbol(c[0], *c[1]), -v)
        lift = LinComb()
        for label, v in sorted(p.items()):
            lift = lift + exact[label].scale(v)
        target = CanonicalW4(t[0], t[1])
        assert lift.singles() == LinComb.single(target.symbol()) - formula, "lift does not match"
        found[t[0]] = Conversion(target, formula, dict(sorted(p.items())), lift)
    if missing:
        basis = [[(str(v), c[0], [a.to_text() for a in c[1]]) for c, v in r.items()]
                 for pc, r, _ in pivots if pc in bad and any(c in r and c != pc for c in bad)]
        return InsufficientReport(missing, admitted, residuals, rank, len(cols), basis)
    out = ConversionSet(found, admitted, residuals, rank, len(cols))
    if not with_antipode:
        _CONVERSIONS = out
    return out


def convert_to_t31(L: LinComb, conversions=None):
    """Rewrite canonical weight-4 singles of L: T22 and T13 through the
    conversions, everything else kept.  Returns (LinComb, kind counts)."""
    conversions = conversions if conversions is not None else derive_conversions()
    closed = isinstance(conversions, ConversionSet)
    out = LinComb()
    counts = {k: 0 for k in (*KINDS, "Other")}
    for c, (s,) in L.singles().terms():
        cw = classify_w4(s)
        counts[cw.kind] += 1
        if closed and cw.kind in ("T22", "T13"):
            out = out + conversions.conversions[cw.kind].apply(*cw.args).scale(c).canonical()
        else:
            out = out + LinComb.single(canonicalize(s), c)
    return out, counts


def series_dictionary_w4(kind, args):
    return series_dictionary(kind, args)


# --------------------------------------------------------------------------
# phi report
# --------------------------------------------------------------------------

def load_reference_table():
    text = resources.files("mplog").joinpath("data/phi_table.json").read_text(encoding="utf-8")
    return json.loads(text)


def reference_terms(points=None):
    """List of (coefficient, u word, v word, U, V) with U, V the RatFun values."""
    words = cross_ratio_words(points)
    out = []
    for e in load_reference_table()["entries"]:
        u, v = e["args"]
        out.append((Fraction(e["coeff"]), u, v, words[u], words[v]))
    return out


@dataclass
class PhiReport:
    points: tuple
    raw_counts: dict
    split_consistent: bool
    closed: bool
    message: str
    computed_t31: list       # (coeff, X, Y)
    computed_t4: list        # (coeff, X)
    raw: list                # (coeff, CanonicalW4) before conversion
    comparison: list = field(default_factory=list)
    reference_count: int = 0

    def to_json_obj(self, compare=True):
        words = cross_ratio_words({p: var(p) for p in self.points[:5]})
        lookup = {}
        for w, val in sorted(words.items()):
            lookup.setdefault(val, w)

        def show(u):
            return {"expr": u.to_text(), "word": lookup.get(u)}

        obj = {"version": SCHEMA_VERSION, "kind": "phi-report", "points": list(self.points),
               "closed": self.closed, "message": self.message, "split_consistent": self.split_consistent,
               "raw_counts": self.raw_counts,
               "raw": [{"coeff": str(c), "type": cw.kind, "args": [show(a) for a in cw.args]} for c, cw in self.raw],
               "computed_t31": [{"coeff": str(c), "args": [show(x), show(y)]} for c, x, y in self.computed_t31],
               "gamma_candidate": [{"coeff": str(c), "arg": show(x)} for c, x in self.computed_t4],
               "reference_term_count": self.reference_count}
        if compare:
            obj["comparison"] = self.comparison
            obj["status_counts"] = {s: sum(1 for r in self.comparison if r["status"] == s)
                                    for s in ("match", "coeff-mismatch", "missing-in-computed", "missing-in-reference")}
        return obj

    def to_json(self, compare=True) -> str:
        return dumps(self.to_json_obj(compare))


def _collect(L: LinComb):
    t31, t4, other = {}, {}, {}
    for c, (s,) in L.singles().terms():
        cw = classify_w4(s)
        bucket = t31 if cw.kind == "T31" else t4 if cw.kind == "T4" else other
        key = cw.args
        bucket[key] = bucket.get(key, 0) + c
    clean = lambda d: {k: v for k, v in d.items() if v}
    return clean(t31), clean(t4), clean(other)


def _compare(computed, ref):
    """Term-by-term comparison of {(U, V): coeff} dictionaries, reading
    (V, U) as -(U, V) through the antipode relation."""
    def effective(d, u, v):
        return d.get((u, v), 0) - d.get((v, u), 0)

    rows = []
    seen = set()
    for c, uw, vw, U, V in ref:
        if (U, V) in seen or (V, U) in seen:
            rows.append({"reference": [uw, vw], "reference_coeff": str(c), "status": "duplicate-pair"})
            continue
        seen.add((U, V))
        pc = sum((cc for cc, _, _, UU, VV in ref if (UU, VV) == (U, V)), Fraction(0)) \
            - sum((cc for cc, _, _, UU, VV in ref if (UU, VV) == (V, U)), Fraction(0))
        cc = effective(computed, U, V)
        if cc == 0:
            status = "missing-in-computed"
        elif cc == pc:
            status = "match"
        else:
            status = "coeff-mismatch"
        rows.append({"reference": [uw, vw], "reference_coeff": str(pc), "computed_coeff": str(cc), "status": status})
    for (U, V), c in computed.items():
        if (U, V) in seen or (V, U) in seen:
            continue
        seen.add((U, V))
        rows.append({"computed": [U.to_text(), V.to_text()], "computed_coeff": str(effective(computed, U, V)),
                     "status": "missing-in-reference"})
    return rows


def phi_emit(points=("a", "b", "c", "d", "e", "f")) -> PhiReport:
    a, b, c, d, e, f = points
    red = reduce_symbol(a, [b, c, d, e], f, INF, QUOTIENT, canonicalize=False)
    fa, ff = ProjPoint.of(a), ProjPoint.of(f)
    a_part, f_part = LinComb(), LinComb()
    for coeff, factors in red.result.terms():
        (s,) = factors
        if s.end == fa:
            a_part = a_part + LinComb.single(s, coeff)
        elif s.end == ff:
            f_part = f_part + LinComb.single(s, coeff)
        else:
            raise ValueError(f"unexpected end point in {s.to_text()}")
    split_ok = f_part.substitute({f: var(a)}).canonical() == a_part.canonical().scale(-1)
    two_phi = a_part.canonical()
    raw = []
    for coeff, (s,) in two_phi.terms():
        raw.append((coeff, classify_w4(s)))
    conv = derive_conversions()
    converted, counts = convert_to_t31(two_phi, conv)
    t31, t4, other = _collect(converted)
    closed = isinstance(conv, ConversionSet)
    msg = "conversions closed; T22 and T13 rewritten" if closed else \
        "conversions did not close; raw decomposition only"
    ref = reference_terms({p: var(p) for p in points[:5]})
    comparison = _compare(t31, ref)
    key = lambda kv: [x.to_text() for x in kv[0]]
    return PhiReport(tuple(points), counts, split_ok, closed, msg,
                     [(v, *k) for k, v in sorted(t31.items(), key=key)],
                     [(v, *k) for k, v in sorted(t4.items(), key=key)],
                     raw, comparison, len(ref))


__all__ = ["CanonicalW4", "classify_w4", "type_symbol", "cross_ratio_words", "word_value", "derive_conversions",
           "ConversionSet", "InsufficientReport", "Conversion", "convert_to_t31", "orbit", "RELATION_TEMPLATES",
           "validate_template", "series_dictionary", "series_eval", "load_reference_table", "reference_terms", "PhiReport",
           "phi_emit", "KINDS", "EXACT"]
