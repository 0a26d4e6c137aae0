"""Marker-form polylogarithm symbols and formal linear combinations of
products of them.

A symbol ``H(a0 | a1, ..., an // x | aend)`` stands for the iterated integral
from a0 to aend of the forms w(a_i, x) = dt/(t - a_i) - dt/(t - x).  With
x = inf this is the ordinary multiple polylogarithm.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateFrame, DivergentSymbol, SingularMatrix
from .exactfield import INF, Mobius, ProjPoint, const

ZERO = ProjPoint(const(0))
ONE = ProjPoint(const(1))


@dataclass(frozen=True, eq=False)
class Symbol:
    base: ProjPoint
    word: tuple
    end: ProjPoint
    marker: ProjPoint = INF

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))

    @property
    def weight(self) -> int:
        return len(self.word)

    @property
    def is_zero(self) -> bool:
        """Some form w(a_i, x) has a_i = x and vanishes identically."""
        return any(a == self.marker for a in self.word)

    @property
    def base_divergent(self) -> bool:
        if not self.word or self.is_zero:
            return False
        return self.base == self.word[0] or self.base == self.marker

    @property
    def end_divergent(self) -> bool:
        if not self.word or self.is_zero:
            return False
        return self.end == self.word[-1] or self.end == self.marker

    @property
    def is_divergent(self) -> bool:
        return self.base_divergent or self.end_divergent

    def points(self):
        return (self.base, *self.word, self.end, self.marker)

    def variables(self):
        out = set()
        for p in self.points():
            out |= p.variables()
        return out

    def replace(self, base=None, word=None, end=None, marker=None) -> "Symbol":
        return Symbol(self.base if base is None else base,
                      self.word if word is None else tuple(word),
                      self.end if end is None else end,
                      self.marker if marker is None else marker)

    def substitute(self, assignment) -> "Symbol":
        return Symbol(self.base.substitute(assignment),
                      tuple(a.substitute(assignment) for a in self.word),
                      self.end.substitute(assignment),
                      self.marker.substitute(assignment))

    def __eq__(self, other):
        if not isinstance(other, Symbol):
            return NotImplemented
        return (len(self.word) == len(other.word) and self.base == other.base
                and self.end == other.end and self.marker == other.marker
                and all(a == b for a, b in zip(self.word, other.word)))

    def __hash__(self):
        return hash((self.base, self.word, self.end, self.marker))

    def to_text(self) -> str:
        word = ", ".join(a.to_text() for a in self.word)
        marker = "" if self.marker.is_infinite else f" // {self.marker.to_text()}"
        return f"H({self.base.to_text()} | {word}{marker} | {self.end.to_text()})"

    __str__ = to_text

    def __repr__(self):
        return f"Symbol({self.to_text()!r})"


def _points(xs):
    return tuple(ProjPoint.of(x) for x in xs)


def make_symbol(base, word, end, marker=INF) -> Symbol:
    """Validated constructor.

    Symbols with an entry equal to the marker are returned (they carry the
    zero flag); any other violation of the endpoint conditions raises.
    """
    s = Symbol(ProjPoint.of(base), _points(word), ProjPoint.of(end), ProjPoint.of(marker))
    if s.is_divergent:
        raise DivergentSymbol(f"divergent symbol {s.to_text()}", s)
    return s


def canonicalize(s: Symbol) -> Symbol:
    """Representative with (marker, base, end) moved to (inf, 0, 1)."""
    if s.base == s.end:
        raise DegenerateFrame(f"base equals end in {s.to_text()}")
    if s.marker.is_infinite and s.base == ZERO and s.end == ONE:
        return s
    try:
        m = Mobius.frame(s.marker, s.base, s.end)
    except SingularMatrix as exc:
        raise DivergentSymbol(f"marker coincides with an endpoint in {s.to_text()}", s) from exc
    return Symbol(ZERO, tuple(m(a) for a in s.word), ONE, INF)


def variable_count(s: Symbol) -> int:
    c = canonicalize(s)
    return len({a for a in c.word if a != ZERO})


# --------------------------------------------------------------------------
# Linear combinations
# --------------------------------------------------------------------------

def _factor_key(factors):
    return frozenset(Counter(factors).items())


def _sort_key(factors):
    return (-sum(f.weight for f in factors), len(factors), [f.to_text() for f in factors])


class LinComb:
    """Finite Q-linear combination of products of symbols.

    Terms are stored as {multiset of factors: (factor tuple, coefficient)}.
    Weight-0 factors (empty words) are the constant 1 and are dropped.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        self._terms = terms if terms is not None else {}

    @classmethod
    def single(cls, s: Symbol, coeff=1) -> "LinComb":
        return cls.product([s], coeff)

    @classmethod
    def product(cls, factors, coeff=1) -> "LinComb":
        coeff = Fraction(coeff)
        factors = tuple(sorted((f for f in factors if f.weight > 0), key=lambda f: f.to_text()))
        if not coeff:
            return cls()
        return cls({_factor_key(factors): (factors, coeff)})

    @classmethod
    def from_terms(cls, pairs) -> "LinComb":
        out = cls()
        for coeff, factors in pairs:
            out._iadd(factors, coeff)
        return out

    def _iadd(self, factors, coeff):
        coeff = Fraction(coeff)
        if not coeff:
            return
        factors = tuple(sorted((f for f in factors if f.weight > 0), key=lambda f: f.to_text()))
        key = _factor_key(factors)
        if key in self._terms:
            old_factors, old = self._terms[key]
            new = old + coeff
            if new:
                self._terms[key] = (old_factors, new)
            else:
                del self._terms[key]
        else:
            self._terms[key] = (factors, coeff)

    def copy(self) -> "LinComb":
        return LinComb(dict(self._terms))

    def __add__(self, other: "LinComb") -> "LinComb":
        out = self.copy()
        for factors, c in other._terms.values():
            out._iadd(factors, c)
        return out

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "LinComb":
        c = Fraction(c)
        if not c:
            return LinComb()
        return LinComb({k: (f, v * c) for k, (f, v) in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, LinComb):
            out = LinComb()
            for fa, ca in self._terms.values():
                for fb, cb in other._terms.values():
                    out._iadd(fa + fb, ca * cb)
            return out
        return self.scale(other)

    __rmul__ = __mul__

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        return not (self - other)._terms

    __hash__ = None

    def terms(self):
        """(coeff, factors) pairs in a deterministic order."""
        return [(c, f) for f, c in sorted(self._terms.values(), key=lambda t: _sort_key(t[0]))]

    def coefficient(self, *factors) -> Fraction:
        hit = self._terms.get(_factor_key(tuple(f for f in factors if f.weight > 0)))
        return hit[1] if hit else Fraction(0)

    def symbols(self):
        out = set()
        for f, _ in self._terms.values():
            out.update(f)
        return out

    def singles(self) -> "LinComb":
        return LinComb({k: v for k, v in self._terms.items() if len(v[0]) == 1})

    def products(self) -> "LinComb":
        return LinComb({k: v for k, v in self._terms.items() if len(v[0]) != 1})

    def mod_products(self) -> "LinComb":
        """Quotient shadow: drop products (and constants)."""
        return self.singles()

    def drop_zero(self) -> "LinComb":
        return LinComb({k: v for k, v in self._terms.items() if not any(f.is_zero for f in v[0])})

    def map_symbols(self, fn) -> "LinComb":
        out = LinComb()
        for factors, c in self._terms.values():
            out._iadd(tuple(fn(f) for f in factors), c)
        return out

    def canonical(self) -> "LinComb":
        """Factors replaced by canonical forms; identically-zero terms removed."""
        cache = {}

        def canon(s):
            if s not in cache:
                cache[s] = canonicalize(s)
            return cache[s]

        return self.drop_zero().map_symbols(canon).drop_zero()

    def substitute(self, assignment) -> "LinComb":
        """Compose every entry with ``assignment`` and re-validate symbols that
        were convergent before."""
        def sub(s):
            t = s.substitute(assignment)
            if not s.is_divergent and not s.is_zero and t.is_divergent:
                raise DivergentSymbol(f"substitution makes {t.to_text()} divergent", t)
            return t

        return self.map_symbols(sub)

    def has_divergent(self) -> bool:
        return any(f.is_divergent for f in self.symbols())

    def max_weight(self) -> int:
        return max((sum(f.weight for f in fs) for fs, _ in self._terms.values()), default=0)

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for c, factors in self.terms():
            body = "*".join(f.to_text() for f in factors) or "1"
            mag = abs(c)
            if factors and mag == 1:
                piece = body
            else:
                ctext = str(mag.numerator) if mag.denominator == 1 else f"({mag})"
                piece = ctext if not factors else f"{ctext}*{body}"
            parts.append(("-" if c < 0 else "+", piece))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, piece in parts[1:]:
            text += f" {sign} {piece}"
        return text

    def __repr__(self):
        return f"LinComb({self.to_text()!r})"

    # -- JSON --------------------------------------------------------------
    def to_json_obj(self) -> dict:
        return {"terms": [{"coeff": str(c), "factors": [f.to_text() for f in factors]}
                          for c, factors in self.terms()]}

    @classmethod
    def from_json_obj(cls, obj) -> "LinComb":
        from .parsing import parse_coeff, parse_symbol

        out = cls()
        for t in obj["terms"]:
            out._iadd(tuple(parse_symbol(s) for s in t["factors"]), parse_coeff(t["coeff"]))
        return out


EXACT = "exact"
QUOTIENT = "quotient"


@dataclass
class Identity:
    """A linear combination asserted to vanish."""

    expr: LinComb
    layer: str = EXACT
    derivation: list = field(default_factory=list)

    def __post_init__(self):
        if self.layer not in (EXACT, QUOTIENT):
            raise ValueError(f"unknown layer {self.layer!r}")

    def quotient(self) -> "Identity":
        return Identity(self.expr.mod_products(), QUOTIENT, self.derivation + ["mod-products"])

    def needs_regularization(self) -> bool:
        return self.expr.has_divergent()

    def __add__(self, other: "Identity") -> "Identity":
        layer = EXACT if self.layer == other.layer == EXACT else QUOTIENT
        a = self.expr if layer == EXACT else self.expr.mod_products()
        b = other.expr if layer == EXACT else other.expr.mod_products()
        return Identity(a + b, layer, self.derivation + other.derivation)

    def scale(self, c) -> "Identity":
        return Identity(self.expr.scale(c), self.layer, list(self.derivation))

    def to_json_obj(self) -> dict:
        obj = self.expr.to_json_obj()
        obj["layer"] = self.layer
        obj["derivation"] = list(self.derivation)
        return obj

    @classmethod
    def from_json_obj(cls, obj) -> "Identity":
        return cls(LinComb.from_json_obj(obj), obj.get("layer", EXACT), list(obj.get("derivation", [])))


SCHEMA_VERSION = 1


def dumps(obj: dict) -> str:
    """Deterministic JSON text used for every file the package writes."""
    return json.dumps(obj, indent=1, ensure_ascii=False) + "\n"


def identity_to_json(identity: Identity) -> str:
    obj = {"version": SCHEMA_VERSION, "kind": "identity"}
    obj.update(identity.to_json_obj())
    return dumps(obj)


def lincomb_to_json(L: LinComb) -> str:
    obj = {"version": SCHEMA_VERSION, "kind": "lincomb"}
    obj.update(L.to_json_obj())
    return dumps(obj)
