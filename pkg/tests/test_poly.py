"""Polynomial ring arithmetic and finite-field factorization.

The factorizer is checked three ways: frozen examples, an internal
product-reassembly invariant, and sympy as an independent oracle for the
splitting type. Irreducibility of reported factors is re-verified by an
exhaustive divisor scan when the search space is small.
"""

import itertools
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from splitlaw import (
    IntegerPolynomial,
    Polynomial,
    PrimeFieldContext,
    UndefinedGcd,
    UnsupportedDegree,
    ZeroDivisor,
    embed_poly,
    ext_new,
    factorize,
    is_squarefree,
    poly_gcd,
    poly_xgcd,
    roots_in,
    splitting_type,
)

X = sympy.Symbol("x")


def sympy_type(coeffs, p):
    """Sorted (degree, multiplicity) pairs from sympy's factorizer."""
    f = sympy.Poly(list(reversed(coeffs)), X, modulus=p)
    return tuple(sorted((g.degree(), m) for g, m in f.factor_list()[1]))


def rand_poly(ctx, degree, rng):
    return Polynomial(ctx, [rng.randrange(ctx.order) for _ in range(degree + 1)])


# ---------------------------------------------------------------------------
# Ring structure
# ---------------------------------------------------------------------------


@given(
    p=st.sampled_from([3, 5, 7, 13, 31]),
    da=st.integers(0, 6),
    db=st.integers(0, 6),
    dc=st.integers(0, 4),
    seed=st.integers(0, 2**32),
)
@settings(max_examples=80, deadline=None)
def test_ring_axioms_and_division(p, da, db, dc, seed):
    ctx = PrimeFieldContext(p)
    rng = random.Random(seed)
    a, b, c = (rand_poly(ctx, d, rng) for d in (da, db, dc))
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Polynomial.zero(ctx)
    if not b.is_zero:
        q, r = divmod(a, b)
        assert a == q * b + r
        assert r.is_zero or r.degree < b.degree
        assert (a * b).exact_div(b) == a


def test_division_by_zero_raises():
    ctx = PrimeFieldContext(7)
    with pytest.raises(ZeroDivisor):
        divmod(Polynomial(ctx, [1, 1]), Polynomial.zero(ctx))


def test_exact_div_rejects_non_divisors():
    ctx = PrimeFieldContext(7)
    with pytest.raises(ArithmeticError):
        Polynomial(ctx, [1, 0, 1]).exact_div(Polynomial(ctx, [1, 1]))


def test_normalization_strips_leading_zeros():
    ctx = PrimeFieldContext(5)
    f = Polynomial(ctx, [1, 2, 0, 0])
    assert f.degree == 1
    assert f == Polynomial(ctx, [1, 2])
    assert Polynomial(ctx, [0, 0]).is_zero
    assert Polynomial.zero(ctx).degree == -1


@given(
    p=st.sampled_from([5, 13, 31]),
    da=st.integers(0, 6),
    db=st.integers(0, 6),
    seed=st.integers(0, 2**32),
)
@settings(max_examples=60, deadline=None)
def test_xgcd_bezout_identity(p, da, db, seed):
    ctx = PrimeFieldContext(p)
    rng = random.Random(seed)
    a, b = rand_poly(ctx, da, rng), rand_poly(ctx, db, rng)
    if a.is_zero and b.is_zero:
        return
    g, s, t = poly_xgcd(a, b)
    assert s * a + t * b == g
    assert g.is_monic
    assert divmod(a, g)[1].is_zero and divmod(b, g)[1].is_zero
    assert poly_gcd(a, b) == g


def test_gcd_of_two_zeros_is_undefined():
    ctx = PrimeFieldContext(5)
    with pytest.raises(UndefinedGcd):
        poly_gcd(Polynomial.zero(ctx), Polynomial.zero(ctx))


def test_pow_mod_agrees_with_naive_power():
    ctx = PrimeFieldContext(13)
    f = Polynomial(ctx, [2, 0, 1, 1])
    x = Polynomial.x(ctx)
    assert x.pow_mod(50, f) == divmod(x**50, f)[1]
    assert x.pow_mod(0, f) == Polynomial.one(ctx)


def test_evaluate_matches_horner_definition():
    ctx = PrimeFieldContext(31)
    f = Polynomial(ctx, [-2, 0, 0, 1])  # x^3 - 2
    assert f(ctx.element(4)) == ctx.element(0)
    assert f(ctx.element(1)) == ctx.element(30)


# ---------------------------------------------------------------------------
# Squarefreeness
# ---------------------------------------------------------------------------


def test_is_squarefree_guard_requires_small_degree():
    ctx = PrimeFieldContext(5)
    with pytest.raises(UnsupportedDegree):
        is_squarefree(Polynomial(ctx, [1, 0, 0, 0, 0, 1]))  # deg 5 = char


def test_is_squarefree_detects_repeated_factors():
    ctx = PrimeFieldContext(7)
    f = Polynomial(ctx, [-2, 0, 0, 1])
    assert is_squarefree(f)
    g = Polynomial(ctx, [1, 1]) ** 2 * Polynomial(ctx, [3, 1])
    assert not is_squarefree(g)


# ---------------------------------------------------------------------------
# Factorization
# ---------------------------------------------------------------------------


def test_cube_root_of_two_splits_mod_31():
    ctx = PrimeFieldContext(31)
    fact = factorize(Polynomial(ctx, [-2, 0, 0, 1]), seed=1)
    st_ = splitting_type(fact)
    assert st_.pairs == ((1, 1), (1, 1), (1, 1))
    assert st_.all_linear and st_.squarefree
    assert [f.coeffs for f, _ in fact.factors] == [(11, 1), (24, 1), (27, 1)]


def test_cube_root_of_two_mod_5_and_7():
    c5 = PrimeFieldContext(5)
    assert splitting_type(factorize(Polynomial(c5, [-2, 0, 0, 1]), 1)).pairs == (
        (1, 1),
        (2, 1),
    )
    c7 = PrimeFieldContext(7)
    assert splitting_type(factorize(Polynomial(c7, [-2, 0, 0, 1]), 1)).pairs == ((3, 1),)


def test_wild_repeated_factor_mod_5():
    ctx = PrimeFieldContext(5)
    fact = factorize(Polynomial(ctx, [1, 0, 0, 0, 0, 1]), seed=1)  # (x+1)^5
    assert splitting_type(fact).pairs == ((1, 5),)
    assert fact.factors[0][0].coeffs == (1, 1)


def test_unit_is_preserved():
    ctx = PrimeFieldContext(7)
    fact = factorize(Polynomial(ctx, [1, 0, 3]), seed=1)
    assert fact.unit == 3
    assert all(f.is_monic for f, _ in fact.factors)


def test_constant_polynomial_has_no_factors():
    ctx = PrimeFieldContext(7)
    fact = factorize(Polynomial(ctx, [4]), seed=1)
    assert fact.factors == ()
    assert fact.unit == 4


def _exhaustive_irreducible(f):
    """Divisor scan; only called when p^deg(f) is small."""
    ctx = f.ctx
    if f.degree <= 1:
        return True
    for d in range(1, f.degree // 2 + 1):
        for tail in itertools.product(range(ctx.order), repeat=d):
            g = Polynomial(ctx, list(tail) + [1])
            if divmod(f, g)[1].is_zero:
                return False
    return True


@given(
    p=st.sampled_from([3, 5, 7, 13]),
    deg=st.integers(1, 7),
    seed=st.integers(0, 2**32),
)
@settings(max_examples=80, deadline=None)
def test_factorize_against_sympy_and_divisor_scan(p, deg, seed):
    ctx = PrimeFieldContext(p)
    rng = random.Random(seed)
    coeffs = [rng.randrange(p) for _ in range(deg)] + [rng.randrange(1, p)]
    f = Polynomial(ctx, coeffs)
    fact = factorize(f, seed=seed)
    # reassembly is already enforced inside factorize; check the type against
    # an independent implementation
    assert splitting_type(fact).pairs == sympy_type(coeffs, p)
    for g, _ in fact.factors:
        assert g.is_monic
        if p**g.degree <= 10**5:
            assert _exhaustive_irreducible(g)


@given(
    p=st.sampled_from([5, 13, 31]),
    deg=st.sampled_from([3, 5, 7]),
    seed=st.integers(0, 2**32),
)
@settings(max_examples=40, deadline=None)
def test_odd_degree_splitting_type_sums_to_degree(p, deg, seed):
    ctx = PrimeFieldContext(p)
    rng = random.Random(seed)
    f = Polynomial(ctx, [rng.randrange(p) for _ in range(deg)] + [1])
    st_ = splitting_type(factorize(f, seed))
    assert st_.total_degree == deg
    assert st_.factor_count <= deg


def test_factorize_is_seed_deterministic():
    ctx = PrimeFieldContext(101)
    f = Polynomial(ctx, [3, 1, 4, 1, 5, 9, 2, 1])
    a = factorize(f, seed="s")
    b = factorize(f, seed="s")
    assert a.factors == b.factors
    # a different seed must reach the same canonical factor list
    c = factorize(f, seed="t")
    assert c.factors == a.factors


def test_splitting_type_str():
    ctx = PrimeFieldContext(5)
    st_ = splitting_type(factorize(Polynomial(ctx, [1, 0, 0, 0, 0, 1]), 1))
    assert str(st_) == "1^5"


# ---------------------------------------------------------------------------
# Roots and embeddings
# ---------------------------------------------------------------------------


def test_roots_of_cubic_mod_31():
    ctx = PrimeFieldContext(31)
    f = Polynomial(ctx, [-2, 0, 0, 1])
    roots = roots_in(f, ctx)
    assert [r.value for r in roots] == [4, 7, 20]
    assert all(f(r).is_zero for r in roots)


def test_roots_appear_in_the_splitting_field():
    base = PrimeFieldContext(5)
    f = Polynomial(base, [-2, 0, 0, 1])
    assert len(roots_in(f, base)) == 1
    ext = ext_new(5, 2, seed=9)
    roots = roots_in(f, ext)
    assert len(roots) == 3
    fe = embed_poly(f, ext)
    assert all(fe(r).is_zero for r in roots)
    assert roots == sorted(roots, key=lambda r: r.key())


def test_roots_in_counts_distinct_roots_once():
    ctx = PrimeFieldContext(5)
    f = Polynomial(ctx, [1, 1]) ** 3  # (x+1)^3
    roots = roots_in(f, ctx)
    assert [r.value for r in roots] == [4]


def test_embed_poly_respects_evaluation():
    base = PrimeFieldContext(7)
    ext = ext_new(7, 2, seed=1)
    f = Polynomial(base, [3, 0, 1])
    fe = embed_poly(f, ext)
    for c in range(7):
        assert fe(ext.element(c)).value == ext.embed(f(base.element(c)).value)


def test_embed_poly_rejects_mismatched_characteristic():
    f = Polynomial(PrimeFieldContext(7), [1, 1])
    with pytest.raises(ValueError):
        embed_poly(f, ext_new(5, 2, seed=1))


# ---------------------------------------------------------------------------
# Integer polynomials
# ---------------------------------------------------------------------------


def test_integer_polynomial_str_and_reduce():
    f = IntegerPolynomial([-2, 0, 0, 1])
    assert str(f) == "x^3 - 2"
    assert str(IntegerPolynomial([0, -1, 3])) == "3*x^2 - x"
    assert str(IntegerPolynomial([5])) == "5"
    assert str(IntegerPolynomial([])) == "0"
    fbar = f.reduce_mod(31)
    assert fbar.coeffs == (29, 0, 0, 1)
    assert f.reduce_mod(PrimeFieldContext(31)) == fbar


def test_integer_polynomial_calculus():
    f = IntegerPolynomial([-2, 0, 0, 1])
    assert f.degree == 3 and f.is_monic
    assert f.evaluate(3) == 25
    assert f.derivative().coeffs == (0, 0, 3)
    assert IntegerPolynomial([1, 2, 0, 0]).coeffs == (1, 2)
