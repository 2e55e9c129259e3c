import cmath
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isoreduce.algebra import (
    LAMBDA,
    GaussianRational,
    Polynomial,
    RatFunc,
    arith,
    evaluate,
    normalize,
    roots,
    squarefree_decomposition,
)
from isoreduce.errors import DivisionByZeroFunction, PoleError, ZeroDenominator, ZeroPolynomial

P = Polynomial


def lam_minus(c):
    return P([-c, 1])


# -- strategies ----------------------------------------------------------------

small_q = st.fractions(min_value=-5, max_value=5, max_denominator=4)
gauss = st.builds(GaussianRational, small_q, st.sampled_from([0, 0, 0, Fraction(1), Fraction(-1, 2)]))
polys = st.lists(gauss, max_size=4).map(Polynomial)
nonzero_polys = polys.filter(lambda p: not p.is_zero())
ratfuncs = st.builds(normalize, polys, nonzero_polys)


# -- GaussianRational ----------------------------------------------------------

def test_gaussian_fields_lowest_terms():
    z = GaussianRational(Fraction(4, 6), Fraction(-3, 9))
    assert (z.re_num, z.re_den, z.im_num, z.im_den) == (2, 3, -1, 3)


def test_gaussian_demotes_to_real():
    i = GaussianRational(0, 1)
    assert i * i == -1
    assert isinstance(i * i, Fraction)
    assert (1 + i) / (1 - i) == i


# -- normalize -------------------------------------------------------------------

def test_normalize_cancels_common_factor():
    f = normalize(P([-1, 0, 1]), P([-1, 1]))
    assert f.num == P([1, 1]) and f.den == P([1])


def test_normalize_keeps_canonical():
    f = normalize(P([2]), P([0, 1]))
    assert f.num == P([2]) and f.den == P([0, 1])


def test_normalize_zero_function():
    f = normalize(P([]), P([7, 0, 0, 1]))
    assert f.num.is_zero() and f.den == P([1])


def test_normalize_monic_denominator():
    f = normalize(P([3]), P([0, 2]))
    assert f.den == P([0, 1]) and f.num == P([Fraction(3, 2)])


def test_normalize_zero_denominator():
    with pytest.raises(ZeroDenominator):
        normalize(P([1]), P([]))


@given(polys, nonzero_polys)
def test_normalize_idempotent(p, q):
    f = normalize(p, q)
    assert normalize(f.num, f.den) == f


# -- arith -------------------------------------------------------------------------

def test_add_inverse_lambda():
    inv = normalize(P([1]), P([0, 1]))
    assert arith(inv, inv, "add") == normalize(P([2]), P([0, 1]))


def test_mul_denominators():
    a = normalize(P([1]), P([0, 1]))
    b = normalize(P([1]), lam_minus(1))
    assert arith(a, b, "mul") == normalize(P([1]), P([0, -1, 1]))


def test_division_by_zero_function():
    with pytest.raises(DivisionByZeroFunction):
        arith(LAMBDA, RatFunc.constant(0), "div")


@given(ratfuncs.filter(bool))
def test_mul_inverse(f):
    assert f * (1 / f) == 1


@settings(max_examples=60, deadline=None)
@given(ratfuncs, ratfuncs, ratfuncs)
def test_field_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f * (g + h) == f * g + f * h
    assert f + (-f) == RatFunc.constant(0)
    assert f * g == g * f


# -- eval ----------------------------------------------------------------------------

def test_eval_examples():
    two_over = normalize(P([2]), P([0, 1]))
    assert evaluate(two_over, 2) == 1.0
    with pytest.raises(PoleError):
        evaluate(two_over, 0)
    assert evaluate(RatFunc(P([1, 1])), 1j) == 1 + 1j


@settings(max_examples=30, deadline=None)
@given(ratfuncs, ratfuncs)
def test_eval_homomorphism(f, g):
    rng = random.Random(0)
    for _ in range(50):
        z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        fz, gz = evaluate(f, z), evaluate(g, z)
        for got, want in ((evaluate(f + g, z), fz + gz), (evaluate(f * g, z), fz * gz),
                          (evaluate(f - g, z), fz - gz)):
            assert abs(got - want) <= 1e-10 * max(1.0, abs(want))


# -- roots -----------------------------------------------------------------------------

def _bisect(fn, lo, hi, iters=200):
    for _ in range(iters):
        mid = (lo + hi) / 2
        if (fn(lo) < 0) == (fn(mid) < 0):
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def test_roots_sqrt2_against_bisection():
    oracle = _bisect(lambda x: x * x - 2, 0.0, 2.0)
    rs = roots(P([-2, 0, 1]))
    assert [r.multiplicity for r in rs] == [1, 1]
    assert abs(rs[1].value - oracle) < 1e-12
    assert abs(rs[0].value + oracle) < 1e-12


def test_roots_triple_zero():
    rs = roots(P([0, 0, 0, 1]))
    assert len(rs) == 1 and rs[0].value == 0 and rs[0].multiplicity == 3


def test_roots_factored():
    rs = roots(lam_minus(1) * lam_minus(-1))
    assert [(r.value, r.multiplicity) for r in rs] == [(-1, 1), (1, 1)]


def test_roots_zero_polynomial():
    with pytest.raises(ZeroPolynomial):
        roots(P([]))


def test_roots_high_multiplicity_exact():
    p = lam_minus(2) ** 5 * lam_minus(-1) ** 2
    rs = roots(p)
    assert [(round(r.value.real, 9), r.multiplicity) for r in rs] == [(-1, 2), (2, 5)]


def test_squarefree_product():
    p = lam_minus(1) ** 3 * lam_minus(5) * P([1, 0, 1]) ** 2
    prod = P([1])
    for f, k in squarefree_decomposition(p):
        prod = prod * f ** k
    assert prod == p.monic()


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-2, 2)), min_size=1, max_size=6),
       st.integers(1, 3))
def test_roots_reexpand(rs, lead):
    # integer Gaussian roots, some repeated
    p = P([lead])
    for a, b in rs:
        p = p * P([-GaussianRational(a, b), 1])
    found = roots(p)
    assert sum(r.multiplicity for r in found) == p.degree
    expanded = [1 + 0j]
    for r in found:
        for _ in range(r.multiplicity):
            expanded = [0j] + expanded
            for k in range(len(expanded) - 1):
                expanded[k] -= r.value * expanded[k + 1]
    want = [complex(c) for c in p.monic().coeffs]
    assert all(abs(x - y) <= 1e-8 for x, y in zip(expanded, want))


def test_roots_complex_coefficients():
    # λ^2 + 1 over the Gaussian rationals: ±i
    rs = roots(P([1, 0, 1]))
    vals = sorted((r.value for r in rs), key=lambda z: z.imag)
    assert cmath.isclose(vals[0], -1j) and cmath.isclose(vals[1], 1j)
