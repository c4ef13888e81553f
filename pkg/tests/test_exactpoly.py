"""Exact polynomial arithmetic: frozen examples, evaluation oracles and
shift-degree properties."""

import random
from fractions import Fraction

import pytest

from hfree.exactpoly import ContextMismatch, MultiPoly, VarContext, parse_poly


def ctx(*names, **kw):
    return VarContext(tuple(names), **kw)


def rand_poly(context, rng, max_deg, max_terms=6):
    n = len(context)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exp = [0] * n
        budget = rng.randint(0, max_deg)
        for _ in range(budget):
            exp[rng.randrange(n)] += 1
        terms[tuple(exp)] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    return MultiPoly(context, terms)


def rand_point(context, rng):
    return [Fraction(rng.randint(-7, 7), rng.randint(1, 5))
            for _ in context.names]


def test_constants_and_zero():
    c = ctx("x", "y")
    assert c.zero.is_zero()
    assert c.one.constant_value() == 1
    assert (c.one - c.one).is_zero()
    assert c.const(Fraction(3, 4)).constant_value() == Fraction(3, 4)


def test_arithmetic_frozen_example():
    c = ctx("x", "y")
    x, y = c.var("x"), c.var("y")
    p = (x + y) * (x - y)
    assert p == x ** 2 - y ** 2
    q = (x + 1) ** 3
    assert q.render() == "x^3 + 3*x^2 + 3*x + 1"


def test_mul_matches_evaluation_oracle():
    rng = random.Random(7)
    c = ctx("x", "y", "z")
    for _ in range(50):
        p, q = rand_poly(c, rng, 4), rand_poly(c, rng, 4)
        pt = rand_point(c, rng)
        assert (p * q).eval(pt) == p.eval(pt) * q.eval(pt)
        assert (p + q).eval(pt) == p.eval(pt) + q.eval(pt)
        assert (p - q).eval(pt) == p.eval(pt) - q.eval(pt)


def test_pow_matches_repeated_mul():
    c = ctx("x", "y")
    p = c.var("x") + 2 * c.var("y") - 1
    assert p ** 3 == p * p * p
    assert p ** 0 == c.one


def test_shift_is_substitution():
    rng = random.Random(11)
    c = ctx("x", "y")
    for _ in range(30):
        p = rand_poly(c, rng, 5)
        k = rng.choice([-3, -2, -1, 1, 2, 3])
        pt = rand_point(c, rng)
        shifted_pt = [pt[0] - k, pt[1]]
        assert p.shift(0, k).eval(pt) == p.eval(shifted_pt)


def test_shift_degree_formulas():
    """For nonzero k the difference s^k(g) - g drops degree by exactly 1;
    iterating (s - 1) m times drops it by m, bottoming out at the zero
    polynomial (degree -1)."""
    rng = random.Random(13)
    for trial in range(200):
        nvars = rng.randint(1, 4)
        c = VarContext(tuple("H_%d" % (i + 1) for i in range(nvars)))
        g = rand_poly(c, rng, 6)
        if g.is_zero():
            continue
        i = rng.randrange(nvars)
        k = rng.choice([-3, -2, -1, 1, 2, 3])
        m = rng.randint(0, 7)
        d = g.degree_in(i)
        assert (g.shift(i, k) - g).degree_in(i) == d - 1
        step = g
        for _ in range(m):
            step = step.shift(i, 1) - step
        assert step.degree_in(i) == (d - m if m <= d else -1)


def test_unit_pair_normalization():
    c = ctx("a", "ainv", "x", unit_pairs=((0, 1),))
    a, ainv, x = c.var("a"), c.var("ainv"), c.var("x")
    assert a * ainv == c.one
    assert (a * a * ainv) == a
    assert (a * x) * ainv == x
    p = (a + x) * ainv
    assert p == ainv * x + c.one


def test_parse_render_round_trip():
    c = ctx("x", "y", "z")
    rng = random.Random(17)
    for _ in range(30):
        p = rand_poly(c, rng, 4)
        assert parse_poly(c, p.render()) == p
    assert parse_poly(c, "x^2 - 2/3*y + 1") == \
        c.var("x") ** 2 - Fraction(2, 3) * c.var("y") + 1


def test_coefficients_in():
    c = ctx("x", "y")
    x, y = c.var("x"), c.var("y")
    p = x ** 2 * y + 3 * x ** 2 + y ** 2 - 5
    coeffs = p.coefficients_in((0,))
    # keyed by the x-exponent pattern, values are polynomials in y
    got = {exp[0]: poly for exp, poly in coeffs.items()}
    assert got[2] == y + 3
    assert got[0] == y ** 2 - 5


def test_degree_queries():
    c = ctx("x", "y")
    p = c.var("x") ** 3 * c.var("y") + c.var("y") ** 2
    assert p.degree_in(0) == 3
    assert p.degree_in(1) == 2
    assert p.total_degree() == 4
    assert c.zero.degree_in(0) == -1
    assert c.zero.total_degree() == -1


def test_context_mismatch_rejected():
    c1, c2 = ctx("x"), ctx("y")
    with pytest.raises(ContextMismatch):
        c1.var("x") + c2.var("y")


def test_parse_rejects_unknown_variable():
    c = ctx("x")
    with pytest.raises(ValueError):
        parse_poly(c, "x + w")
