"""Reduction of a weight-n symbol to symbols in at most n-2 variables.

Pipeline for one marker swap at position i (``relation_D``):

    s + swap_marker(s, i) = B(s, i)                      exact
    each term of B: pull the leading run of a_i's         exact / mod products
    each resulting single [a0|w|E], w_1 != a_i:
        [a0|w|E] = [a_i|w|E] - [a_i|w|a0] (+ products)

Three marker swaps chained give the transposition relation for positions
i < j; the transpositions combined with the (2, n-2) block shuffle isolate
floor(n/2) times the input.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .calculus import (build_B, collapse_closed, path_two_term, path_two_term_exact, pull_repeat_exact,
                       swap_marker)
from .errors import CancellationFailure, DivergentSymbol
from .exactfield import INF, ProjPoint
from .symbols import (EXACT, QUOTIENT, SCHEMA_VERSION, Identity, LinComb, Symbol, dumps, variable_count)


def _check_mode(mode):
    if mode not in (EXACT, QUOTIENT):
        raise ValueError(f"mode must be {EXACT!r} or {QUOTIENT!r}")


def d_operator(s: Symbol, i: int, mode=QUOTIENT, log=None) -> LinComb:
    """D(s, i): B(s, i) with every term rewritten on paths starting at a_i."""
    _check_mode(mode)
    y = s.word[i - 1]
    out = LinComb()
    cache = {}

    def path_step(t: Symbol) -> LinComb:
        if t not in cache:
            try:
                if mode == EXACT:
                    ident = path_two_term_exact(t, y)
                else:
                    ident = path_two_term(t, y)
            except DivergentSymbol as exc:
                if log is not None:
                    log.append(f"divergent: {t.to_text()}")
                raise exc
            cache[t] = LinComb.single(t) - ident.expr
        return cache[t]

    for coeff, (A,) in build_B(s, i).terms():
        pulled = pull_repeat_exact(A, y) if mode == EXACT else collapse_closed(A, y)
        for c, factors in pulled.terms():
            if len(factors) == 1 and factors[0].word[0] != y:
                out = out + path_step(factors[0]).scale(c * coeff)
            else:
                out = out + LinComb.product(factors, c * coeff)
    if mode == QUOTIENT:
        out = out.mod_products()
    return out


def relation_D(s: Symbol, i: int, mode=QUOTIENT) -> Identity:
    """s + swap_marker(s, i) - D(s, i) = 0."""
    log = [f"D(i={i})"]
    D = d_operator(s, i, mode, log)
    expr = LinComb.single(s) + LinComb.single(swap_marker(s, i)) - D
    return Identity(expr, mode, log + ["marker-swap", "prefix-pull", "two-term"])


def transposition_rhs(s: Symbol, i: int, j: int, mode=QUOTIENT):
    """D(s, i) - D(s', j) + D(s'', i) and the three symbols used.

    s'  = s with the marker at i and a_i as marker,
    s'' = s' with a_i at j and a_j as marker.
    """
    if not 1 <= i < j <= s.weight:
        raise ValueError("need 1 <= i < j <= n")
    s1 = swap_marker(s, i)
    s2 = swap_marker(s1, j)
    rhs = d_operator(s, i, mode) - d_operator(s1, j, mode) + d_operator(s2, i, mode)
    return rhs, (s, s1, s2)


def transpose(s: Symbol, i: int, j: int) -> Symbol:
    w = list(s.word)
    w[i - 1], w[j - 1] = w[j - 1], w[i - 1]
    return s.replace(word=tuple(w))


def transposition_relation(s: Symbol, i: int, j: int, mode=QUOTIENT) -> Identity:
    """s + (s with entries i, j exchanged) - [D(s,i) - D(s',j) + D(s'',i)] = 0."""
    _check_mode(mode)
    rhs, (_, s1, s2) = transposition_rhs(s, i, j, mode)
    expr = LinComb.single(s) + LinComb.single(transpose(s, i, j)) - rhs
    m = [p.to_text() for p in (s.marker, s1.marker, s2.marker)]
    return Identity(expr, mode, [f"transposition(i={i},j={j})", f"D(i={i},marker={m[0]})",
                                 f"D(i={j},marker={m[1]})", f"D(i={i},marker={m[2]})"])


# --------------------------------------------------------------------------
# Block shuffle and the coefficient scheme
# --------------------------------------------------------------------------

def place_pair(word, i, j):
    """The word with a_1 at position i, a_2 at j (1-based) and a_3..a_n in order."""
    n = len(word)
    rest = iter(word[2:])
    return tuple(word[0] if k == i else word[1] if k == j else next(rest) for k in range(1, n + 1))


def place_first(word, i):
    """The word with a_1 at position i and a_2..a_n in order."""
    rest = iter(word[1:])
    return tuple(word[0] if k == i else next(rest) for k in range(1, len(word) + 1))


def block_shuffle_relation(a0, word, end, marker=INF, mode=QUOTIENT) -> Identity:
    """sum over placements of (a_1, a_2) among a_3..a_n, minus the product
    [a0|a1,a2|end] * [a0|a3..an|end] in the exact layer."""
    _check_mode(mode)
    word = tuple(ProjPoint.of(a) for a in word)
    n = len(word)
    if n < 3:
        raise ValueError("need n >= 3")
    a0, end, marker = ProjPoint.of(a0), ProjPoint.of(end), ProjPoint.of(marker)
    expr = LinComb()
    for i, j in combinations(range(1, n + 1), 2):
        expr = expr + LinComb.single(Symbol(a0, place_pair(word, i, j), end, marker))
    if mode == EXACT:
        expr = expr - LinComb.product([Symbol(a0, word[:2], end, marker), Symbol(a0, word[2:], end, marker)])
    return Identity(expr, mode, ["block-shuffle(2,n-2)"])


def placement_sign(n, i, j) -> int:
    """Sign of the permutation placing 1 at i and 2 at j."""
    perm = list(place_pair(tuple(range(1, n + 1)), i, j))
    inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
    return -1 if inv % 2 else 1


def coeff_scheme(n):
    """{((i-1, j), (i, j)): c, ((1, j), (1, j+1)): c} with the pair labels as keys."""
    if n < 3:
        raise ValueError("need n >= 3")
    out = {}
    for i in range(2, n + 1):
        for j in range(i + 1, n + 1):
            out[((i - 1, j), (i, j))] = Fraction(-1 if (j - i) % 2 else 0)
    for j in range(2, n):
        out[((1, j), (1, j + 1))] = Fraction((-1) ** j * (n // 2 - j // 2))
    return out


def label_text(label):
    (a, b), (c, d) = label
    return f"R({a},{b}|{c},{d})"


def cancellation_combination(n):
    """block shuffle + sum c * (A + A') over the free module on placements."""
    total = Counter({(i, j): Fraction(1) for i, j in combinations(range(1, n + 1), 2)})
    for (left, right), c in coeff_scheme(n).items():
        if c:
            total[left] += c
            total[right] += c
    return {k: v for k, v in total.items() if v}


def cancellation_check(n) -> bool:
    return cancellation_combination(n) == {(1, 2): Fraction(n // 2)}


def odd_combination(n):
    total = Counter({i: Fraction(1) for i in range(1, n + 1)})
    for i in range(2, n, 2):
        total[i] -= 1
        total[i + 1] -= 1
    return {k: v for k, v in total.items() if v}


def odd_cancellation_check(n) -> bool:
    return n % 2 == 1 and odd_combination(n) == {1: Fraction(1)}


# --------------------------------------------------------------------------
# Driver
# --------------------------------------------------------------------------

@dataclass
class ReductionOutput:
    input: Symbol
    mode: str
    result: LinComb
    leading_coeff: Fraction
    log: list = field(default_factory=list)

    def identity(self) -> Identity:
        """leading_coeff * input - result = 0."""
        expr = LinComb.single(self.input, self.leading_coeff) - self.result
        return Identity(expr, self.mode, list(self.log))

    def divided(self) -> LinComb:
        return self.result.scale(Fraction(1) / self.leading_coeff)

    def max_variable_count(self) -> int:
        return max((variable_count(f) for f in self.result.singles().symbols()), default=0)

    def to_json_obj(self):
        obj = {"version": SCHEMA_VERSION, "kind": "reduction", "input": self.input.to_text(),
               "mode": self.mode, "layer": self.mode, "leading_coeff": str(self.leading_coeff)}
        obj.update(self.result.to_json_obj())
        obj["derivation"] = list(self.log)
        return obj

    def to_json(self) -> str:
        return dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj):
        from .parsing import parse_coeff, parse_symbol

        return cls(parse_symbol(obj["input"]), obj["mode"], LinComb.from_json_obj(obj),
                   parse_coeff(obj["leading_coeff"]), list(obj.get("derivation", [])))


def _validate(a0, word, end, marker, n_min=3):
    a0, end, marker = ProjPoint.of(a0), ProjPoint.of(end), ProjPoint.of(marker)
    word = tuple(ProjPoint.of(a) for a in word)
    if len(word) < n_min:
        raise ValueError(f"need n >= {n_min}, got {len(word)}")
    pts = [a0, *word, end, marker]
    for p, q in combinations(pts, 2):
        if p == q:
            raise ValueError(f"points must be pairwise distinct ({p.to_text()} repeats)")
    return a0, word, end, marker


def _finish(result, mode, canonical=True):
    if mode == QUOTIENT:
        result = result.mod_products()
        if canonical:
            result = result.canonical()
    return result


def reduce_symbol(a0, word, end, marker=INF, mode=QUOTIENT, canonicalize=True) -> ReductionOutput:
    """floor(n/2) [a0|a1..an//x|end] as a combination of symbols in <= n-2
    variables (plus product terms in the exact layer).

    Quotient results are stored with canonical factors unless
    ``canonicalize`` is false, in which case the literal symbols are kept."""
    _check_mode(mode)
    a0, word, end, marker = _validate(a0, word, end, marker)
    n = len(word)
    if not cancellation_check(n):
        raise CancellationFailure(f"coefficient scheme does not cancel at n={n}")
    log = ["block-shuffle(2,n-2)"]
    result = LinComb()
    if mode == EXACT:
        result = result + LinComb.product([Symbol(a0, word[:2], end, marker), Symbol(a0, word[2:], end, marker)])
    for label, c in coeff_scheme(n).items():
        if not c:
            continue
        (li, lj), (ri, rj) = label
        A = Symbol(a0, place_pair(word, li, lj), end, marker)
        if li == ri:
            p, q = lj, rj
        else:
            p, q = li, ri
        rhs, _ = transposition_rhs(A, p, q, mode)
        result = result + rhs.scale(c)
        log.append(f"{label_text(label)} c={c} transposition(i={p},j={q}) on A({li},{lj})")
    return ReductionOutput(Symbol(a0, word, end, marker), mode, _finish(result, mode, canonicalize), Fraction(n // 2), log)


def reduce_odd(a0, word, end, marker=INF, mode=QUOTIENT, canonicalize=True) -> ReductionOutput:
    """Odd n: the (1, n-1) shuffle minus the transpositions at (2,3), (4,5), ...
    leaves the input with coefficient 1."""
    _check_mode(mode)
    a0, word, end, marker = _validate(a0, word, end, marker)
    n = len(word)
    if n % 2 == 0:
        raise ValueError("the odd variant needs odd n")
    if not odd_cancellation_check(n):
        raise CancellationFailure(f"odd scheme does not cancel at n={n}")
    log = ["block-shuffle(1,n-1)"]
    result = LinComb()
    if mode == EXACT:
        result = result + LinComb.product([Symbol(a0, word[:1], end, marker), Symbol(a0, word[1:], end, marker)])
    for i in range(2, n, 2):
        A = Symbol(a0, place_first(word, i), end, marker)
        rhs, _ = transposition_rhs(A, i, i + 1, mode)
        result = result - rhs
        log.append(f"R_{i} c=-1 transposition(i={i},j={i + 1}) on A({i})")
    return ReductionOutput(Symbol(a0, word, end, marker), mode, _finish(result, mode, canonicalize), Fraction(1), log)


def default_points(n):
    """a0, a1..an, end as indeterminate names."""
    names = ["a0"] + [f"a{k}" for k in range(1, n + 1)] + ["e"]
    return names[0], names[1:-1], names[-1]


__all__ = ["d_operator", "relation_D", "transposition_relation", "transposition_rhs", "transpose",
           "block_shuffle_relation", "placement_sign", "coeff_scheme", "cancellation_check",
           "cancellation_combination", "odd_cancellation_check", "odd_combination", "ReductionOutput",
           "reduce_symbol", "reduce_odd", "place_pair", "place_first", "label_text", "default_points"]
