"""Exact arithmetic: polynomials and rational functions over Q, Gaussian
rationals for exact evaluation, points of the projective line and the
Moebius action on them.

Rational functions are never gcd-reduced.  Equality is decided by
cross-multiplication; hashing goes through a fingerprint (evaluation modulo
a Mersenne prime at pseudo-random points derived from the variable names),
which is a ring homomorphism and therefore agrees on equal functions.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import DenominatorVanishes, SingularMatrix

_PRIME = (1 << 61) - 1
_UNSET = object()


def _var_point(name: str) -> int:
    digest = hashlib.sha256(name.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") % _PRIME


def _frac_mod(c: Fraction):
    den = c.denominator % _PRIME
    if den == 0:
        return None
    return c.numerator % _PRIME * pow(den, -1, _PRIME) % _PRIME


class GaussRat:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, v):
        if isinstance(v, GaussRat):
            return v
        if isinstance(v, (int, Fraction)):
            return cls(v, 0)
        raise TypeError(f"cannot coerce {v!r} to GaussRat")

    def __add__(self, o):
        o = GaussRat.coerce(o)
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = GaussRat.coerce(o)
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return GaussRat.coerce(o) - self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __mul__(self, o):
        o = GaussRat.coerce(o)
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = GaussRat.coerce(o)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("GaussRat division by zero")
        return GaussRat((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, o):
        return GaussRat.coerce(o) / self

    def __pow__(self, e: int):
        result = GaussRat(1)
        base = self
        if e < 0:
            base, e = GaussRat(1) / base, -e
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def __eq__(self, o):
        try:
            o = GaussRat.coerce(o)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"


# --------------------------------------------------------------------------
# Polynomials
# --------------------------------------------------------------------------

def _embed(terms, old_vars, new_vars):
    if old_vars == new_vars:
        return terms
    idx = [new_vars.index(v) for v in old_vars]
    width = len(new_vars)
    out = {}
    for exps, c in terms.items():
        e = [0] * width
        for j, k in zip(idx, exps):
            e[j] = k
        out[tuple(e)] = c
    return out


def _union(a, b):
    if a == b:
        return a
    return tuple(sorted(set(a) | set(b)))


class Poly:
    """Sparse multivariate polynomial with Fraction coefficients.

    ``terms`` maps exponent tuples (aligned with ``variables``) to nonzero
    coefficients.  Instances are treated as immutable.
    """

    __slots__ = ("variables", "terms", "_fp")

    def __init__(self, variables=(), terms=None):
        self.variables = tuple(variables)
        self.terms = terms if terms is not None else {}
        self._fp = _UNSET

    @classmethod
    def constant(cls, c) -> "Poly":
        c = Fraction(c)
        return cls((), {(): c} if c else {})

    @classmethod
    def variable(cls, name: str) -> "Poly":
        return cls((name,), {(1,): Fraction(1)})

    # -- structure -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def used_variables(self):
        used = set()
        for exps in self.terms:
            for v, e in zip(self.variables, exps):
                if e:
                    used.add(v)
        return used

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def sorted_terms(self):
        """Terms in graded lexicographic order, leading term first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def leading_coefficient(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        return max(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))[1]

    # -- arithmetic ------------------------------------------------------
    def _aligned(self, other):
        vs = _union(self.variables, other.variables)
        return vs, _embed(self.terms, self.variables, vs), _embed(other.terms, other.variables, vs)

    def __add__(self, other):
        other = _as_poly(other)
        vs, a, b = self._aligned(other)
        out = dict(a)
        for m, c in b.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(vs, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.variables, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly()
        return Poly(self.variables, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.terms or not other.terms:
            return Poly()
        vs, a, b = self._aligned(other)
        out = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly(vs, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        vs, a, b = self._aligned(other)
        return a == b

    def fingerprint(self):
        if self._fp is _UNSET:
            pts = [_var_point(v) for v in self.variables]
            total = 0
            for exps, c in self.terms.items():
                cm = _frac_mod(c)
                if cm is None:
                    total = None
                    break
                t = cm
                for p, e in zip(pts, exps):
                    if e:
                        t = t * pow(p, e, _PRIME) % _PRIME
                total = (total + t) % _PRIME
            self._fp = total
        return self._fp

    def __hash__(self):
        return hash(("poly", self.fingerprint()))

    # -- evaluation ----------------------------------------------------------
    def evaluate(self, values, zero=0):
        """Evaluate with ``values[name]`` from any ring containing Q."""
        total = zero
        for exps, c in self.terms.items():
            t = c
            for v, e in zip(self.variables, exps):
                if e:
                    t = t * values[v] ** e
            total = total + t
        return total

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exps) if e)
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{_frac_text(mag)}*{mono}"
            else:
                body = _frac_text(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def is_single_term(self) -> bool:
        return len(self.terms) == 1

    def is_atom(self) -> bool:
        """A lone variable power or a positive integer: safe right of '/'."""
        if len(self.terms) != 1:
            return False
        exps, c = next(iter(self.terms.items()))
        nvars = sum(1 for e in exps if e)
        if nvars == 0:
            return c > 0 and c.denominator == 1
        return nvars == 1 and c == 1

    def __repr__(self):
        return f"Poly({self.to_text()!r})"


def _frac_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)) or isinstance(x, _RationalABC):
        return Poly.constant(x)
    raise TypeError(f"cannot coerce {x!r} to Poly")


# --------------------------------------------------------------------------
# Rational functions
# --------------------------------------------------------------------------

class RatFun:
    """Quotient num/den of polynomials; den is not identically zero.

    Light normalization only: zero is 0/1, constant denominators are folded
    into the numerator, and otherwise the denominator is made monic in the
    graded lexicographic order.
    """

    __slots__ = ("num", "den", "_fp")

    def __init__(self, num, den=None):
        num = _as_poly(num)
        den = Poly.constant(1) if den is None else _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = Poly.constant(1)
        elif den.is_constant():
            c = den.constant_value()
            if c != 1:
                num = num.scale(1 / c)
            den = Poly.constant(1)
        else:
            lc = den.leading_coefficient()
            if lc != 1:
                num = num.scale(1 / lc)
                den = den.scale(1 / lc)
            if num == den:
                num, den = Poly.constant(1), Poly.constant(1)
        self.num = num
        self.den = den
        self._fp = _UNSET

    @classmethod
    def coerce(cls, x) -> "RatFun":
        if isinstance(x, RatFun):
            return x
        if isinstance(x, Poly):
            return cls(x)
        if isinstance(x, str):
            return var(x)
        if isinstance(x, (int, Fraction)):
            return cls(Poly.constant(x))
        raise TypeError(f"cannot coerce {x!r} to RatFun")

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = RatFun.coerce(other)
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RatFun.coerce(other))

    def __rsub__(self, other):
        return RatFun.coerce(other) - self

    def __mul__(self, other):
        other = RatFun.coerce(other)
        if self.num == other.den and not self.num.is_zero():
            return RatFun(other.num, self.den)
        if other.num == self.den and not other.num.is_zero():
            return RatFun(self.num, other.den)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFun(self.den, self.num)

    def __truediv__(self, other):
        return self * RatFun.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RatFun.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFun(self.num ** e, self.den ** e)

    # -- predicates ------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    def variables(self):
        return self.num.used_variables() | self.den.used_variables()

    def fingerprint(self):
        if self._fp is _UNSET:
            n, d = self.num.fingerprint(), self.den.fingerprint()
            if n is None or d is None or d == 0:
                self._fp = None
            else:
                self._fp = n * pow(d, -1, _PRIME) % _PRIME
        return self._fp

    def __eq__(self, other):
        if not isinstance(other, RatFun):
            try:
                other = RatFun.coerce(other)
            except TypeError:
                return NotImplemented
        fa, fb = self.fingerprint(), other.fingerprint()
        if fa is not None and fb is not None and fa != fb:
            return False
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash(("ratfun", self.fingerprint()))

    # -- evaluation ------------------------------------------------------
    def evaluate_exact(self, values):
        """Exact value for Fraction or GaussRat inputs; raises on a pole."""
        zero = GaussRat(0) if any(isinstance(v, GaussRat) for v in values.values()) else Fraction(0)
        d = self.den.evaluate(values, zero)
        if d == 0:
            raise DenominatorVanishes(f"denominator of {self.to_text()} vanishes")
        return self.num.evaluate(values, zero) / d

    def substitute(self, assignment) -> "RatFun":
        """Compose with ``assignment`` (name -> RatFun); unmapped names stay."""
        vals = {}
        for v in self.variables():
            vals[v] = RatFun.coerce(assignment[v]) if v in assignment else var(v)
        one = RatFun(1)
        zero = RatFun(0)

        def ev(p):
            total = zero
            for exps, c in p.terms.items():
                t = RatFun(Poly.constant(c))
                for name, e in zip(p.variables, exps):
                    if e:
                        t = t * vals[name] ** e
                total = total + t
            return total

        n = ev(self.num)
        d = ev(self.den) if not self.den.is_constant() else one * self.den.constant_value()
        if d.is_zero():
            raise DenominatorVanishes("substitution makes the denominator vanish")
        return n / d

    # -- text ------------------------------------------------------------
    def to_text(self) -> str:
        if self.den.is_constant():
            return self.num.to_text()
        n = self.num.to_text()
        d = self.den.to_text()
        if not self.num.is_single_term():
            n = f"({n})"
        if not self.den.is_atom():
            d = f"({d})"
        return f"{n}/{d}"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"RatFun({self.to_text()!r})"


def var(name: str) -> RatFun:
    return RatFun(Poly.variable(name))


def const(c) -> RatFun:
    return RatFun(Poly.constant(c))


def ratfun_eq(u, v) -> bool:
    return RatFun.coerce(u) == RatFun.coerce(v)


_VANISH_THRESHOLD = 1e-12


def ratfun_eval(u, assignment) -> complex:
    """Numeric value of ``u``.

    Exact inputs (int, Fraction, GaussRat) are evaluated exactly and only the
    result is converted; float/complex inputs are evaluated in floating point.
    """
    u = RatFun.coerce(u)
    exact = all(isinstance(v, (int, Fraction, GaussRat)) for v in assignment.values())
    if exact:
        vals = {k: GaussRat.coerce(v) for k, v in assignment.items()}
        return complex(GaussRat.coerce(u.evaluate_exact(vals)))
    vals = {k: complex(v) for k, v in assignment.items()}
    d = u.den.evaluate(vals, 0j)
    scale = max(1.0, sum(abs(complex(c)) for c in u.den.terms.values()))
    if abs(d) < _VANISH_THRESHOLD * scale:
        raise DenominatorVanishes(f"denominator of {u.to_text()} vanishes at {assignment}")
    return complex(u.num.evaluate(vals, 0j)) / d


# --------------------------------------------------------------------------
# Projective line and Moebius maps
# --------------------------------------------------------------------------

class ProjPoint:
    """A point of P^1 over the rational function field: finite or infinity."""

    __slots__ = ("value",)

    def __init__(self, value=None):
        self.value = None if value is None else RatFun.coerce(value)

    @classmethod
    def of(cls, x) -> "ProjPoint":
        if isinstance(x, ProjPoint):
            return x
        if x is None or (isinstance(x, str) and x == "inf"):
            return INF
        if isinstance(x, str):
            from .parsing import parse_ratfun
            return cls(parse_ratfun(x))
        return cls(RatFun.coerce(x))

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def homogeneous(self):
        if self.value is None:
            return const(1), const(0)
        return self.value, const(1)

    def is_zero(self) -> bool:
        return self.value is not None and self.value.is_zero()

    def variables(self):
        return set() if self.value is None else self.value.variables()

    def substitute(self, assignment) -> "ProjPoint":
        if self.value is None:
            return self
        return ProjPoint(self.value.substitute(assignment))

    def evaluate_exact(self, values):
        """GaussRat/Fraction value, or None for infinity."""
        if self.value is None:
            return None
        return self.value.evaluate_exact(values)

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        if self.value is None or other.value is None:
            return self.value is None and other.value is None
        return self.value == other.value

    def __hash__(self):
        return hash(("inf",)) if self.value is None else hash(self.value)

    def to_text(self) -> str:
        return "inf" if self.value is None else self.value.to_text()

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"ProjPoint({self.to_text()!r})"


INF = ProjPoint(None)


class Mobius:
    """The fractional linear map t -> (a t + b) / (c t + d)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = (RatFun.coerce(v) for v in (a, b, c, d))
        if self.det().is_zero():
            raise SingularMatrix("Moebius matrix has zero determinant")

    @classmethod
    def identity(cls) -> "Mobius":
        return cls(1, 0, 0, 1)

    def det(self) -> RatFun:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "Mobius") -> "Mobius":
        return Mobius(self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
                      self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d)

    def inverse(self) -> "Mobius":
        return Mobius(self.d, -self.b, -self.c, self.a)

    def __call__(self, p) -> ProjPoint:
        p = ProjPoint.of(p)
        if p.is_infinite:
            return INF if self.c.is_zero() else ProjPoint(self.a / self.c)
        den = self.c * p.value + self.d
        if den.is_zero():
            return INF
        return ProjPoint((self.a * p.value + self.b) / den)

    @classmethod
    def frame(cls, marker, base, end) -> "Mobius":
        """The unique map sending (marker, base, end) to (inf, 0, 1)."""
        marker, base, end = (ProjPoint.of(p) for p in (marker, base, end))
        b1, b2 = base.homogeneous()
        x1, x2 = marker.homogeneous()
        e1, e2 = end.homogeneous()
        # L_p(q) = q1*p2 - p1*q2 vanishes exactly at q = p
        lam_num = e1 * x2 - x1 * e2
        lam_den = e1 * b2 - b1 * e2
        if lam_num.is_zero() or lam_den.is_zero():
            raise SingularMatrix("frame points are not distinct")
        return cls(b2 * lam_num, -b1 * lam_num, x2 * lam_den, -x1 * lam_den)


def mobius_apply(m, p) -> ProjPoint:
    """Apply a 2x2 matrix (Mobius or nested sequence) to a projective point."""
    if not isinstance(m, Mobius):
        (a, b), (c, d) = m
        m = Mobius(a, b, c, d)
    return m(p)
