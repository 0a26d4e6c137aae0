"""Exact rewriting moves on symbols.

Every function returning an ``Identity`` with layer ``exact`` produces a
relation that holds between the iterated integrals themselves (products
included), evaluated along one common path.  Quotient-layer results are the
same relations with product terms discarded.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial

from .errors import DivergentSymbol, FrameMismatch
from .exactfield import RatFun, const
from .symbols import EXACT, Identity, LinComb, Symbol


def _label(p) -> str:
    return p.to_text()


def _check(s: Symbol, where: str) -> Symbol:
    if not s.is_zero and s.is_divergent:
        raise DivergentSymbol(f"{where}: generated divergent symbol {s.to_text()}", s)
    return s


# --------------------------------------------------------------------------
# Shuffles
# --------------------------------------------------------------------------

def shuffle_words(u, v):
    """All interleavings of u and v, one per choice of positions for u."""
    u, v = tuple(u), tuple(v)
    n = len(u) + len(v)
    out = []
    for pos in combinations(range(n), len(u)):
        chosen = set(pos)
        iu = iter(u)
        iv = iter(v)
        out.append(tuple(next(iu) if k in chosen else next(iv) for k in range(n)))
    return out


def shuffle_identity(s1: Symbol, s2: Symbol) -> Identity:
    if (s1.base, s1.end, s1.marker) != (s2.base, s2.end, s2.marker):
        raise FrameMismatch("shuffle needs a common base, end and marker")
    expr = LinComb.product([s1, s2])
    for w in shuffle_words(s1.word, s2.word):
        expr = expr - LinComb.single(s1.replace(word=w))
    return Identity(expr, EXACT, ["shuffle"])


# --------------------------------------------------------------------------
# Marker moves
# --------------------------------------------------------------------------

def _subsets(positions, min_size=0):
    positions = list(positions)
    for r in range(min_size, len(positions) + 1):
        yield from combinations(positions, r)


def marker_change(s: Symbol, y) -> Identity:
    """Expand w(a_i, x) = w(a_i, y) - w(x, y) multilinearly.

    Identity: s - sum_S (-1)^|S| [x at positions S // y].  Terms carrying a
    vanishing form (an entry equal to y) are left out.
    """
    from .exactfield import ProjPoint

    y = ProjPoint.of(y)
    if y == s.base or y == s.end:
        raise DivergentSymbol(f"new marker {y.to_text()} sits on an endpoint of {s.to_text()}", s)
    x = s.marker
    expr = LinComb.single(s)
    if y == x:
        expr = expr - LinComb.single(s)
        return Identity(expr, EXACT, [f"marker-change(y={_label(y)})"])
    n = s.weight
    for S in _subsets(range(n)):
        word = list(s.word)
        for k in S:
            word[k] = x
        t = Symbol(s.base, tuple(word), s.end, y)
        if t.is_zero:
            continue
        _check(t, "marker_change")
        expr = expr - LinComb.single(t, (-1) ** len(S))
    return Identity(expr, EXACT, [f"marker-change(y={_label(y)})"])


def build_A(s: Symbol, i: int, I) -> Symbol:
    """Replace the entries at the 1-based positions I by a_i."""
    I = set(I)
    if i not in I or not all(1 <= k <= s.weight for k in I):
        raise ValueError("need i in I, positions within 1..n")
    ai = s.word[i - 1]
    return s.replace(word=tuple(ai if k + 1 in I else a for k, a in enumerate(s.word)))


def build_B(s: Symbol, i: int) -> LinComb:
    others = [k for k in range(1, s.weight + 1) if k != i]
    out = LinComb()
    for T in _subsets(others, 1):
        I = (i, *T)
        out = out + LinComb.single(build_A(s, i, I), (-1) ** len(I))
    return out


def swap_marker(s: Symbol, i: int) -> Symbol:
    """s with the marker written at position i and a_i made the marker."""
    word = list(s.word)
    ai = word[i - 1]
    word[i - 1] = s.marker
    return Symbol(s.base, tuple(word), s.end, ai)


def marker_swap_relation(s: Symbol, i: int) -> Identity:
    """s + swap_marker(s, i) - B(s, i) = 0, exact."""
    s2 = _check(swap_marker(s, i), "marker_swap_relation")
    expr = LinComb.single(s) + LinComb.single(s2) - build_B(s, i)
    return Identity(expr, EXACT, [f"marker-swap(i={i})"])


# --------------------------------------------------------------------------
# Pulling a repeated leading letter
# --------------------------------------------------------------------------

def prefix_run(word, y) -> int:
    k = 0
    while k < len(word) and word[k] == y:
        k += 1
    return k


def collapse_closed(s: Symbol, y=None) -> LinComb:
    """Closed form, modulo products, for a word y^r b_{r+1} ... b_n:
    (-1)^r sum over r-subsets J of {2..n} of the word with y on J and the
    b's, in order, elsewhere."""
    if y is None:
        y = s.word[0]
    n = s.weight
    r = prefix_run(s.word, y)
    if r == 0 or n == 1:
        # a weight-1 word is its own normal form, not a product
        return LinComb.single(s)
    rest = s.word[r:]
    out = LinComb()
    for J in combinations(range(1, n), r):
        Js = set(J)
        it = iter(rest)
        word = tuple(y if k in Js else next(it) for k in range(n))
        out = out + LinComb.single(s.replace(word=word), (-1) ** r)
    return out


def pull_repeat_exact(s: Symbol, y=None) -> LinComb:
    """Exact rewrite of s as single symbols not starting with y plus
    product terms, by repeated use of the shuffle with [y]."""
    if y is None:
        y = s.word[0]

    def sym(w):
        return s.replace(word=w)

    @lru_cache(maxsize=None)
    def pull(word):
        r = prefix_run(word, y)
        if r == 0:
            return LinComb.single(sym(word))
        n = len(word)
        if r == n:
            return LinComb.product([sym((y,))] * n, Fraction(1, factorial(n)))
        rest = word[1:]
        # [y]*[rest] = r*[word] + sum of insertions past the y-block
        out = LinComb.product([sym((y,)), sym(rest)], Fraction(1, r))
        for k in range(r, n):
            ins = rest[:k] + (y,) + rest[k:]
            out = out - pull(ins).scale(Fraction(1, r))
        return out

    return pull(tuple(s.word))


# --------------------------------------------------------------------------
# Paths
# --------------------------------------------------------------------------

def path_split_chen(s: Symbol, m) -> Identity:
    """s - sum_k [a|w_1..k|m][m|w_k+1..n|b] = 0 along the path a -> m -> b.
    Divergent factors are kept; numeric evaluation regularizes them."""
    from .exactfield import ProjPoint

    m = ProjPoint.of(m)
    if m == s.base or m == s.end:
        raise ValueError("split point must differ from both endpoints")
    expr = LinComb.single(s)
    w = s.word
    for k in range(len(w) + 1):
        left = Symbol(s.base, w[:k], m, s.marker)
        right = Symbol(m, w[k:], s.end, s.marker)
        expr = expr - LinComb.product([left, right])
    return Identity(expr, EXACT, [f"chen(m={_label(m)})"])


def reverse_path(s: Symbol) -> Identity:
    rev = Symbol(s.end, tuple(reversed(s.word)), s.base, s.marker)
    expr = LinComb.single(s) - LinComb.single(rev, (-1) ** s.weight)
    return Identity(expr, EXACT, ["reverse"])


def antipode_identity(s: Symbol) -> Identity:
    """sum_k (-1)^k [a|rev(w_1..k)|b][a|w_k+1..n|b] = 0."""
    w = s.word
    expr = LinComb()
    for k in range(len(w) + 1):
        left = s.replace(word=tuple(reversed(w[:k])))
        right = s.replace(word=w[k:])
        expr = expr + LinComb.product([left, right], (-1) ** k)
    return Identity(expr, EXACT, ["antipode"])


def path_two_term_exact(s: Symbol, m) -> Identity:
    """Exact form of [a0|w|b] = [m|w|b] - [m|w|a0] + products."""
    from .exactfield import ProjPoint

    m = ProjPoint.of(m)
    if s.word and s.word[0] == m:
        raise DivergentSymbol(f"first entry equals the split point in {s.to_text()}", s)
    chen = path_split_chen(s, m)
    to_m = Symbol(s.base, s.word, m, s.marker)
    rev = reverse_path(to_m)
    anti = antipode_identity(Symbol(m, s.word, s.base, s.marker))
    out = chen + rev + anti
    out.derivation = [f"two-term(m={_label(m)})"] + chen.derivation + rev.derivation + anti.derivation
    return out


def path_two_term(s: Symbol, m) -> Identity:
    """[a0|w|b] - [m|w|b] + [m|w|a0] = 0 modulo products."""
    exact = path_two_term_exact(s, m)
    q = exact.quotient()
    return q


def weight1_value(s: Symbol) -> RatFun:
    """Multiplicative representative: [a|z//x|b] = log of the cross-ratio
    ((b - z)(a - x)) / ((a - z)(b - x))."""
    if s.weight != 1:
        raise ValueError("weight1_value needs a weight-1 symbol")
    if s.is_zero:
        return const(1)
    if s.is_divergent:
        raise DivergentSymbol(f"divergent symbol {s.to_text()}", s)
    if s.base == s.end:
        return const(1)

    def L(p, q):
        p1, p2 = p.homogeneous()
        q1, q2 = q.homogeneous()
        return p1 * q2 - q1 * p2

    a, b, z, x = s.base, s.end, s.word[0], s.marker
    return (L(b, z) * L(a, x)) / (L(a, z) * L(b, x))


__all__ = [
    "shuffle_words", "shuffle_identity", "marker_change", "build_A", "build_B", "swap_marker",
    "marker_swap_relation", "prefix_run", "collapse_closed", "pull_repeat_exact", "path_split_chen",
    "reverse_path", "antipode_identity", "path_two_term", "path_two_term_exact", "weight1_value",
]
