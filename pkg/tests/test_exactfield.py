from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from mplog.errors import DenominatorVanishes, SingularMatrix
from mplog.exactfield import INF, GaussRat, Mobius, ProjPoint, RatFun, const, mobius_apply, ratfun_eval, var

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
x, y, z = var("x"), var("y"), var("z")
ATOMS = [x, y, z, const(1), const(2), const(Fraction(-1, 3))]


@st.composite
def ratfuns(draw, depth=3):
    if depth == 0:
        return draw(st.sampled_from(ATOMS))
    a = draw(ratfuns(depth=depth - 1))
    b = draw(ratfuns(depth=depth - 1))
    op = draw(st.sampled_from(["+", "-", "*", "/"]))
    if op == "/":
        assume(not b.is_zero())
        return a / b
    return {"+": a + b, "-": a - b, "*": a * b}[op]


@given(ratfuns(), ratfuns(), ratfuns())
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == const(0)
    if not a.is_zero():
        assert a / a == const(1)
        assert (b / a) * a == b


@given(ratfuns(), ratfuns())
def test_equal_functions_hash_equal(a, b):
    u = (a + b) * (a - b)
    v = a * a - b * b
    assert u == v
    assert hash(u) == hash(v)


@given(ratfuns(), fracs, fracs, fracs)
def test_exact_evaluation_is_a_homomorphism(a, vx, vy, vz):
    vals = {"x": vx, "y": vy, "z": vz}
    b = a * a + const(3) * a
    try:
        va = a.evaluate_exact(vals)
        vb = b.evaluate_exact(vals)
    except DenominatorVanishes:
        return
    assert vb == va * va + 3 * va


def test_gaussrat_arithmetic():
    i = GaussRat(0, 1)
    assert i * i == GaussRat(-1)
    q = GaussRat(Fraction(1, 2), Fraction(-3, 4))
    assert q / q == GaussRat(1)
    assert complex(q) == 0.5 - 0.75j
    with pytest.raises(ZeroDivisionError):
        q / GaussRat(0)


def test_division_by_zero_rejected():
    with pytest.raises((DenominatorVanishes, ZeroDivisionError)):
        x / (x - x)


def test_ratfun_eval_numeric():
    u = (x + 1) / (y - 2)
    assert ratfun_eval(u, {"x": 1, "y": 4}) == pytest.approx(1.0)
    with pytest.raises(DenominatorVanishes):
        ratfun_eval(u, {"x": 1, "y": 2})


mob = st.tuples(fracs, fracs, fracs, fracs).filter(lambda t: t[0] * t[3] - t[1] * t[2] != 0)


@given(mob, mob, fracs)
def test_mobius_composition(m1, m2, t):
    A, B = Mobius(*m1), Mobius(*m2)
    for p in (ProjPoint.of(const(t)), INF, ProjPoint.of(x)):
        assert (A @ B)(p) == A(B(p))


@given(mob, fracs)
def test_mobius_inverse(m, t):
    A = Mobius(*m)
    for p in (ProjPoint.of(const(t)), INF, ProjPoint.of(y)):
        assert A.inverse()(A(p)) == p


def test_frame_sends_triple_to_standard_points():
    a, b, c = ProjPoint.of(x), ProjPoint.of(y), ProjPoint.of(z)
    F = Mobius.frame(a, b, c)
    assert F(a) == INF
    assert F(b) == ProjPoint.of(const(0))
    assert F(c) == ProjPoint.of(const(1))
    G = Mobius.frame(INF, b, c)
    assert G(INF) == INF and G(c) == ProjPoint.of(const(1))


def test_frame_rejects_coincident_points():
    with pytest.raises(SingularMatrix):
        Mobius.frame(x, x, y)


def test_singular_matrix_rejected():
    with pytest.raises(SingularMatrix):
        Mobius(1, 2, 2, 4)


def test_mobius_apply_accepts_nested_matrix():
    assert mobius_apply(((0, 1), (1, 0)), ProjPoint.of(const(0))) == INF
    assert mobius_apply(((0, 1), (1, 0)), INF) == ProjPoint.of(const(0))


def test_ratfun_canonical_text_is_stable():
    u = (x * y - y) / (x - 1)
    assert u == y
    assert RatFun.coerce(Fraction(3, 4)).to_text() == "3/4"
