"""Numeric evaluation of symbols as iterated integrals along complex paths.

The partial integrals F_k(t) = int_{a0}^{t} w(a_k, x) F_{k-1} are carried along
a polyline discretized into Gauss-Legendre panels.  Within a panel the running
integral uses the spectral integration matrix of the nodes, so one pass per
level gives every F_k at every node; many symbols sharing a path are processed
together as one array.

Identities are verified on a star skeleton: every symbol [u|...|v] is
integrated along u -> hub -> v for a single hub per configuration.  Any two
such paths compose and reverse consistently, so Chen, reversal and antipode
relations hold on the nose, with no stray monodromy.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from numpy.polynomial import legendre

from .errors import (DenominatorVanishes, DivergenceWithoutEpsilon, OutOfDomain, PathTooClose,
                     QuotientLayerRejected, SamplingExhausted)
from .exactfield import GaussRat
from .symbols import EXACT, SCHEMA_VERSION, Identity, LinComb, Symbol

_M = 16
_NODES, _WEIGHTS = legendre.leggauss(_M)


def _integration_matrix():
    """Q with sum_l Q[j, l] p(x_l) = int_{-1}^{x_j} p for deg p < _M."""
    m = _M
    V = np.array([[legendre.legval(x, [0] * k + [1]) for k in range(m)] for x in _NODES])
    Vinv = np.diag([(2 * k + 1) / 2 for k in range(m)]) @ V.T @ np.diag(_WEIGHTS)
    A = np.empty((m, m))
    for k in range(m):
        if k == 0:
            A[:, 0] = _NODES + 1
        else:
            up = legendre.legval(_NODES, [0] * (k + 1) + [1])
            down = legendre.legval(_NODES, [0] * (k - 1) + [1])
            A[:, k] = (up - down) / (2 * k + 1)
    return A @ Vinv


_Q = _integration_matrix()


def default_panels() -> int:
    try:
        return max(1, int(os.environ.get("PLOG_PANELS", "2")))
    except ValueError:
        return 2


# --------------------------------------------------------------------------
# Configuration types
# --------------------------------------------------------------------------

@dataclass
class PathSpec:
    """Intermediate waypoints between base and end (original coordinates)."""

    waypoints: tuple = ()
    panels: int = 0
    clearance: float = 1e-9

    def __post_init__(self):
        self.waypoints = tuple(complex(w) for w in self.waypoints)
        if self.clearance <= 0:
            raise ValueError("clearance must be positive")
        for p, q in zip(self.waypoints, self.waypoints[1:]):
            if p == q:
                raise ValueError("consecutive waypoints must differ")


@dataclass
class EvalConfig:
    """Everything needed to turn symbols into numbers.

    ``hub`` switches to the star skeleton used for identities.  When some
    endpoint is infinite the computation runs in the chart t -> 1/(t - p0)
    with ``chart_pole`` = p0; forms are invariant under Moebius maps, so the
    values are unchanged.
    """

    assignment: dict = field(default_factory=dict)
    path: PathSpec = None
    epsilon: float = None
    hub: complex = None
    chart_pole: complex = None
    panels: int = None
    precision: float = 1e-10

    def with_epsilon(self, eps):
        return EvalConfig(self.assignment, self.path, eps, self.hub, self.chart_pole, self.panels, self.precision)


# --------------------------------------------------------------------------
# Quadrature core
# --------------------------------------------------------------------------

def _seg_dist(q, a, b):
    """Distance from points q (array) to the segment [a, b]."""
    d = b - a
    L2 = abs(d) ** 2
    if L2 == 0:
        return np.abs(q - a)
    s = np.clip(((q - a) * np.conj(d)).real / L2, 0.0, 1.0)
    return np.abs(q - (a + s * d))


def _mesh(path, poles, min_panels, ratio=1.0):
    """Panels (start, end) along the polyline, refined near poles.

    A panel is split while its length exceeds ``ratio`` times its distance to
    the nearest pole; poles exactly at the path start are ignored because the
    integrand is analytic there for convergent symbols.
    """
    total = sum(abs(b - a) for a, b in zip(path, path[1:]))
    floor = 1e-15 * total
    start = path[0]
    poles = np.array([p for p in poles if abs(p - start) > 1e-14 * max(1.0, total)], dtype=complex)
    out = []
    for a, b in zip(path, path[1:]):
        stack = []
        for k in range(min_panels, 0, -1):
            stack.append((a + (b - a) * (k - 1) / min_panels, a + (b - a) * k / min_panels))
        while stack:
            s, e = stack.pop()
            L = abs(e - s)
            if poles.size and L > floor:
                d = float(np.min(_seg_dist(poles, s, e)))
                if L > ratio * d:
                    mid = (s + e) / 2
                    stack.append((mid, e))
                    stack.append((s, mid))
                    continue
            out.append((s, e))
    return out


def _integrate(panels, letters, markers):
    """End values of the iterated integrals for a batch of equal-weight words.

    letters: (S, n) complex with nan for infinity; markers: (S,) likewise.
    """
    starts = np.array([p[0] for p in panels])
    ends = np.array([p[1] for p in panels])
    half = (ends - starts) / 2
    # nodes measured from the panel end, so that a pole sitting exactly at
    # the path end (an integrable log singularity) is never hit numerically
    te = half[:, None] * (_NODES[None, :] - 1)
    S, n = letters.shape

    def inv(p):
        return np.where(np.isnan(p), 0, 1 / ((ends[None, :, None] - p) + te[None]))

    with np.errstate(divide="ignore", invalid="ignore"):
        inv_x = inv(markers[:, None, None])
        F = None
        for k in range(n):
            f = inv(letters[:, k][:, None, None]) - inv_x
            g = f if F is None else f * F
            total = (g @ _WEIGHTS) * half[None, :]
            if k == n - 1:
                return total.sum(axis=1)
            offset = np.cumsum(total, axis=1) - total
            F = offset[:, :, None] + (g @ _Q.T) * half[None, :, None]
    return np.ones(S, dtype=complex)


# --------------------------------------------------------------------------
# Evaluator
# --------------------------------------------------------------------------

def _numeric(p, assignment, cache):
    if p in cache:
        return cache[p]
    if p.is_infinite:
        v = None
    else:
        exact = all(isinstance(a, (int, Fraction, GaussRat)) for a in assignment.values())
        if exact:
            vals = {k: GaussRat.coerce(a) for k, a in assignment.items()}
            v = complex(GaussRat.coerce(p.value.evaluate_exact(vals)))
        else:
            vals = {k: complex(a) for k, a in assignment.items()}
            d = p.value.den.evaluate(vals, 0j)
            if abs(d) < 1e-300:
                raise DenominatorVanishes(f"{p.to_text()} has a pole at the sample point")
            v = complex(p.value.num.evaluate(vals, 0j)) / d
    cache[p] = v
    return v


def _pick_chart_pole(values, rng=None):
    finite = [v for v in values if v is not None]
    scale = max([1.0] + [abs(v) for v in finite])
    cands = [complex(0.37, 0.61), complex(-0.53, 0.29), complex(0.71, -0.47), complex(-0.23, -0.83)]
    if rng is not None:
        cands = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(40)] + cands
    best, bestd = None, -1.0
    for c in cands:
        c = c * scale
        d = min([abs(c - v) for v in finite] or [scale])
        if d > bestd:
            best, bestd = c, d
    return best


def divergent_points(symbols):
    """Endpoints at which some symbol of the collection diverges."""
    out = set()
    for s in symbols:
        if s.is_zero:
            continue
        if s.base_divergent:
            out.add(s.base)
        if s.end_divergent:
            out.add(s.end)
    return out


class _Evaluator:
    def __init__(self, cfg: EvalConfig, symbols, deform=None):
        self.cfg = cfg
        self.cache = {}
        self.symbols = [s for s in symbols]
        pts = set()
        for s in self.symbols:
            pts.update(s.points())
        self.points = pts
        self.vals = {p: _numeric(p, cfg.assignment, self.cache) for p in pts}
        need_chart = any(s.base.is_infinite or s.end.is_infinite for s in self.symbols if not s.is_zero)
        self.p0 = None
        if need_chart:
            self.p0 = cfg.chart_pole if cfg.chart_pole is not None else _pick_chart_pole(self.vals.values())
            for p, v in self.vals.items():
                if v is not None and abs(v - self.p0) < 1e-12:
                    raise PathTooClose("chart pole coincides with a point")
        self.deform = deform
        self.min_panels = cfg.panels or (cfg.path.panels if cfg.path and cfg.path.panels else default_panels())

    def chart(self, v):
        """Numeric coordinate in the working chart; None stands for infinity."""
        if self.p0 is None:
            return v
        if v is None:
            return 0j
        return 1 / (v - self.p0)

    def coord(self, p):
        return self.chart(self.vals[p])

    @staticmethod
    def _same(a, b):
        if a is None or b is None:
            return a is None and b is None
        return abs(a - b) <= 1e-13 * max(1.0, abs(a), abs(b))

    def path_for(self, s: Symbol):
        u, v = self.coord(s.base), self.coord(s.end)
        cfg = self.cfg
        if cfg.hub is not None:
            mids = [cfg.hub]
        elif cfg.path is not None:
            mids = [self.chart(w) for w in cfg.path.waypoints]
        else:
            mids = []
        eps = cfg.epsilon
        if self.deform is None:
            dbase, dend = s.base_divergent, s.end_divergent
        else:
            dbase, dend = s.base in self.deform, s.end in self.deform
        if (dbase or dend) and s.is_divergent and not eps:
            raise DivergenceWithoutEpsilon(f"{s.to_text()} diverges; an epsilon is required")
        if s.word and not s.is_zero:
            # the assignment may make a symbolically convergent symbol divergent
            first, last, mk = self.coord(s.word[0]), self.coord(s.word[-1]), self.coord(s.marker)
            if (not (eps and dbase) and (self._same(u, first) or self._same(u, mk))) or \
                    (not (eps and dend) and (self._same(v, last) or self._same(v, mk))):
                raise DivergenceWithoutEpsilon(f"{s.to_text()} diverges at this assignment")
        if eps:
            nxt = mids[0] if mids else v
            prv = mids[-1] if mids else u
            u2 = u + eps * (nxt - u) if dbase else u
            v2 = v + eps * (prv - v) if dend else v
            u, v = u2, v2
        return [u, *mids, v]

    def _check_clearance(self, s, path):
        if self.cfg.hub is not None:
            return  # sampling guarantees clearance on the skeleton
        clearance = self.cfg.path.clearance if self.cfg.path is not None else 1e-9
        total = sum(abs(b - a) for a, b in zip(path, path[1:]))
        ends = (path[0], path[-1])
        for q in [*s.word, s.marker]:
            c = self.coord(q)
            if c is None or any(abs(c - e) <= 1e-14 * max(1.0, total) for e in ends):
                continue
            d = min(float(_seg_dist(np.array([c]), a, b)[0]) for a, b in zip(path, path[1:]))
            if d < clearance * max(1.0, total):
                raise PathTooClose(f"pole {q.to_text()} lies within {d:.3g} of the path for {s.to_text()}")

    def evaluate(self, symbols):
        """dict Symbol -> complex for the given symbols."""
        out = {}
        groups = {}
        for s in symbols:
            if s in out:
                continue
            if s.is_zero or s.weight == 0:
                out[s] = 0j if s.weight else 1 + 0j
                continue
            path = self.path_for(s)
            if abs(path[0] - path[-1]) == 0 or (s.base == s.end and (self.deform is None or
                                                                      (s.base in self.deform) == (s.end in self.deform))):
                out[s] = 0j
                continue
            self._check_clearance(s, path)
            key = (tuple(path), s.weight)
            groups.setdefault(key, []).append(s)
            out[s] = None
        for (path, n), syms in groups.items():
            poles = set()
            letters = np.empty((len(syms), n), dtype=complex)
            markers = np.empty(len(syms), dtype=complex)
            for r, s in enumerate(syms):
                for k, a in enumerate(s.word):
                    c = self.coord(a)
                    letters[r, k] = np.nan if c is None else c
                    if c is not None:
                        poles.add(c)
                c = self.coord(s.marker)
                markers[r] = np.nan if c is None else c
                if c is not None:
                    poles.add(c)
            panels = _mesh(list(path), poles, self.min_panels)
            vals = _integrate(panels, letters, markers)
            for s, v in zip(syms, vals):
                out[s] = complex(v)
        return out


def eval_symbol(s: Symbol, cfg: EvalConfig = None) -> complex:
    """Value of one symbol; the straight path (or cfg.path) joins base to end."""
    cfg = cfg or EvalConfig()
    ev = _Evaluator(cfg, [s])
    return ev.evaluate([s])[s]


def eval_lincomb(L: LinComb, cfg: EvalConfig = None, deform=None) -> complex:
    """sum of coeff * product of factor values.

    With an epsilon set, every endpoint at which some symbol of L diverges is
    moved by the same rule in all terms, which keeps exact identities exact
    for every epsilon.
    """
    return _eval_with_scale(L, cfg, deform)[0]


def _eval_with_scale(L, cfg=None, deform=None):
    """(value, sum of |term values|); the second number sets the size of
    the rounding noise in the first."""
    cfg = cfg or EvalConfig()
    syms = L.symbols()
    if cfg.epsilon and deform is None:
        deform = divergent_points(syms)
    ev = _Evaluator(cfg, syms, deform)
    vals = ev.evaluate(syms)
    total, scale = 0j, 0.0
    for c, factors in L.terms():
        prod = complex(c)
        for f in factors:
            prod *= vals[f]
        total += prod
        scale += abs(prod)
    return total, scale


# --------------------------------------------------------------------------
# Sampling
# --------------------------------------------------------------------------

def _gauss(rng, lo=-24, hi=24, den=8):
    return GaussRat(Fraction(rng.randint(lo, hi), den), Fraction(rng.randint(lo, hi), den))


def sample_config(symbols, seed=0, clearance=0.05, max_assignments=60, hubs_per_assignment=150,
                  fixed=None) -> EvalConfig:
    """Gaussian-rational assignment plus a hub whose star skeleton keeps every
    point at least ``clearance`` x path length away from every path that does
    not end at it."""
    symbols = [s for s in symbols if not s.is_zero]
    rng = random.Random(seed)
    names = sorted(set().union(*[s.variables() for s in symbols])) if symbols else []
    pts = set()
    for s in symbols:
        pts.update(s.points())
    pts = sorted(pts, key=lambda p: p.to_text())
    pairs = sorted({(s.base, s.end) for s in symbols if s.base != s.end}, key=lambda t: (t[0].to_text(), t[1].to_text()))
    ends = sorted({p for pr in pairs for p in pr}, key=lambda p: p.to_text())
    need_chart = any(p.is_infinite for p in ends)
    for _ in range(max_assignments):
        assignment = {v: _gauss(rng) for v in names}
        if fixed:
            assignment.update(fixed)
        cache = {}
        try:
            raw = {p: _numeric(p, assignment, cache) for p in pts}
        except DenominatorVanishes:
            continue
        p0 = _pick_chart_pole(raw.values(), rng) if need_chart else None

        def chart(v):
            if p0 is None:
                return v
            return 0j if v is None else 1 / (v - p0)

        coords = {p: chart(v) for p, v in raw.items()}
        if any(c is None for p, c in coords.items() if p in ends):
            continue
        fin = [c for c in coords.values() if c is not None]
        if not fin:
            continue
        arr = np.array(fin)
        diam = float(np.max(np.abs(arr[:, None] - arr[None, :]))) if len(fin) > 1 else 1.0
        diam = max(diam, 1e-6)
        if len(fin) > 1:
            dist = np.abs(arr[:, None] - arr[None, :]) + np.eye(len(fin)) * 1e9
            if float(dist.min()) < 0.02 * diam:
                continue
        center = complex(arr.mean())
        ep = [coords[p] for p in ends]
        idx = {p: k for k, p in enumerate(ends)}
        qs = np.array(fin)
        for _h in range(hubs_per_assignment):
            h = center + diam * complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8))
            if float(np.min(np.abs(qs - h))) < 0.05 * diam:
                continue
            lengths = np.array([abs(e - h) for e in ep])
            mins = np.empty(len(ep))
            for k, e in enumerate(ep):
                d = _seg_dist(qs, h, e)
                d = d[np.abs(qs - e) > 1e-12]
                mins[k] = float(d.min()) if d.size else math.inf
            ok = True
            for u, v in pairs:
                iu, iv = idx[u], idx[v]
                if min(mins[iu], mins[iv]) < clearance * (lengths[iu] + lengths[iv]):
                    ok = False
                    break
            if ok:
                return EvalConfig(assignment=assignment, hub=h, chart_pole=p0)
    raise SamplingExhausted(f"no admissible configuration after {max_assignments} assignments")


# --------------------------------------------------------------------------
# Verification
# --------------------------------------------------------------------------

DEFAULT_EPS = (1e-2, 1e-3, 1e-4)
# Residuals at successive epsilons count as shrinking when they do not grow
# by more than max(NOISE_FLOOR, RELATIVE_NOISE * sum of |term values|):
# exact identities sit at rounding noise, which grows with the log^k(eps)
# size of the individual terms.
NOISE_FLOOR = 1e-9
RELATIVE_NOISE = 1e-12


def fit_eps(eps, values):
    """Least-squares fit values ~ c1 * eps*log(eps) + c0; returns (c0, c1)."""
    A = np.array([[e * math.log(e), 1.0] for e in eps], dtype=complex)
    sol, *_ = np.linalg.lstsq(A, np.array(values, dtype=complex), rcond=None)
    return complex(sol[1]), complex(sol[0])


def _ctext(z):
    return [float(z.real), float(z.imag)]


@dataclass
class VerifyReport:
    passed: bool
    tol: float
    trials: list
    max_residual: float
    regularized: bool
    eps_sequence: tuple
    branch: str = "star skeleton: every symbol integrated along base -> hub -> end"

    def to_json_obj(self):
        return {"version": SCHEMA_VERSION, "kind": "verify-report", "passed": self.passed,
                "tol": self.tol, "max_residual": self.max_residual, "regularized": self.regularized,
                "eps_sequence": list(self.eps_sequence) if self.regularized else [],
                "branch": self.branch, "trials": self.trials}


def verify_identity(identity: Identity, trials=20, tol=1e-6, seed=0, eps_sequence=DEFAULT_EPS,
                    panels=None) -> VerifyReport:
    if identity.layer != EXACT:
        raise QuotientLayerRejected("only exact identities can be checked numerically")
    L = identity.expr
    syms = L.symbols()
    deform = divergent_points(syms)
    regularized = bool(deform)
    eps_sequence = tuple(sorted(eps_sequence, reverse=True))
    records = []
    worst = 0.0
    passed = True
    for k in range(trials):
        cfg = sample_config(syms, seed=seed * 100003 + k)
        cfg.panels = panels
        rec = {"trial": k, "assignment": {v: str(a) for v, a in sorted(cfg.assignment.items())},
               "hub": _ctext(cfg.hub)}
        if cfg.chart_pole is not None:
            rec["chart_pole"] = _ctext(cfg.chart_pole)
        if not regularized:
            r = eval_lincomb(L, cfg)
            rec["residual"] = abs(r)
            ok = abs(r) < tol
            worst = max(worst, abs(r))
        else:
            pairs = [_eval_with_scale(L, cfg.with_epsilon(e), deform) for e in eps_sequence]
            vals = [v for v, _ in pairs]
            c0, c1 = fit_eps(eps_sequence, vals)
            mags = [abs(v) for v in vals]
            noise = max(NOISE_FLOOR, RELATIVE_NOISE * max(sc for _, sc in pairs))
            shrink = all(b <= a + noise for a, b in zip(mags, mags[1:]))
            rec["eps_residuals"] = mags
            rec["noise_floor"] = noise
            rec["c0"] = abs(c0)
            rec["c1"] = abs(c1)
            rec["shrinking"] = shrink
            ok = abs(c0) < tol and shrink
            worst = max(worst, abs(c0))
        rec["pass"] = bool(ok)
        passed = passed and ok
        records.append(rec)
    return VerifyReport(passed, tol, records, worst, regularized, eps_sequence)


# --------------------------------------------------------------------------
# Series
# --------------------------------------------------------------------------

_SERIES_MAX_RADIUS = 0.95


def _polylog_series(n, z, tol):
    r = abs(z)
    if r > _SERIES_MAX_RADIUS:
        raise OutOfDomain(f"|z| = {r:.3g} outside the series domain")
    if r == 0:
        return 0j, 0
    total = 0j
    zk = 1 + 0j
    k = 0
    while True:
        k += 1
        zk *= z
        total += zk / k ** n
        if r ** (k + 1) / (1 - r) < tol:
            return total, k


def _depth2_series(a, b, u1, u2, tol):
    """sum_{0<k<N} u1^k u2^N / (k^a N^b)."""
    r = max(abs(u2), abs(u1 * u2))
    if r > _SERIES_MAX_RADIUS:
        raise OutOfDomain(f"series ratio {r:.3g} outside the domain")
    inner = 0j
    u1k = 1 + 0j
    u2N = 1 + 0j
    total = 0j
    N = 0
    while True:
        N += 1
        u2N *= u2
        total += inner * u2N / N ** b
        u1k *= u1
        inner += u1k / N ** a
        # tail over N' > N: sum N' r^N'
        tail = r ** (N + 1) * ((N + 1) - N * r) / (1 - r) ** 2 if r else 0.0
        if tail < tol:
            return total, N


SERIES_KINDS = ("Li", "T4", "T31", "T22", "T13")
_DEPTH2 = {"T31": (3, 1), "T22": (2, 2), "T13": (1, 3)}


def series_dictionary(kind, args):
    """Nested-sum description of a canonical symbol.

    Li(n, z)        : sum_k z^k / k^n, equal to -H(0|1,0,...,0|z)
    ``symbol_sign`` is the factor with value(symbol) = symbol_sign * series.
    T4(x)           : H(0|x,0,0,0|1) = -Li_4(1/x)
    T31/T22/T13(x,y): H(0|x,0^(a-1),y,0^(b-1)|1) = sum_{0<k<N} (y/x)^k (1/y)^N / (k^a N^b)
    """
    if kind == "Li":
        n, z = args
        z = complex(z)
        return {"kind": kind, "sign": 1, "depth": 1, "exponents": [int(n)], "args": [z],
                "symbol": f"H(0|1{',0' * (int(n) - 1)}|z)", "symbol_sign": -1, "radius": abs(z)}
    if kind == "T4":
        (x,) = args
        x = complex(x)
        if x == 0:
            raise OutOfDomain("T4 needs a nonzero argument")
        return {"kind": kind, "sign": -1, "depth": 1, "exponents": [4], "args": [1 / x],
                "symbol": "H(0|x,0,0,0|1)", "symbol_sign": 1, "radius": abs(1 / x)}
    if kind in _DEPTH2:
        x, y = (complex(v) for v in args)
        if x == 0 or y == 0:
            raise OutOfDomain("depth-2 series needs nonzero arguments")
        a, b = _DEPTH2[kind]
        u1, u2 = y / x, 1 / y
        return {"kind": kind, "sign": 1, "depth": 2, "exponents": [a, b], "args": [u1, u2],
                "symbol": f"H(0|x{',0' * (a - 1)},y{',0' * (b - 1)}|1)", "symbol_sign": 1,
                "radius": max(abs(u2), abs(u1 * u2))}
    raise ValueError(f"unknown series kind {kind!r}")


def series_eval(kind, args, tol=1e-13) -> complex:
    d = series_dictionary(kind, args)
    if d["radius"] > _SERIES_MAX_RADIUS:
        raise OutOfDomain(f"{kind} arguments outside the series domain (ratio {d['radius']:.3g})")
    if d["depth"] == 1:
        val, _ = _polylog_series(d["exponents"][0], d["args"][0], tol)
    else:
        a, b = d["exponents"]
        val, _ = _depth2_series(a, b, d["args"][0], d["args"][1], tol)
    return d["sign"] * val


def canonical_symbol(kind, args):
    """(symbol, assignment) for the integral that ``series_dictionary`` describes.

    The symbol is written in variables z (for Li) or x, y; ``assignment`` maps
    them to the given numeric arguments.
    """
    from .symbols import make_symbol

    if kind == "Li":
        n, z = args
        return make_symbol(0, [1] + [0] * (int(n) - 1), "z"), {"z": z}
    if kind == "T4":
        return make_symbol(0, ["x", 0, 0, 0], 1), {"x": args[0]}
    a, b = _DEPTH2[kind]
    x, y = args
    return make_symbol(0, ["x"] + [0] * (a - 1) + ["y"] + [0] * (b - 1), 1), {"x": x, "y": y}


__all__ = ["PathSpec", "EvalConfig", "eval_symbol", "eval_lincomb", "sample_config", "verify_identity",
           "VerifyReport", "series_eval", "series_dictionary", "canonical_symbol", "divergent_points",
           "fit_eps", "default_panels"]
