"""Field arithmetic: prime fields, extension fields, Frobenius.

Fixed-value cases pin down the worked examples; hypothesis cases check the
field axioms and the Galois-theoretic facts (Frobenius is an automorphism
of order k whose fixed field is the prime field) that everything else
quietly relies on.
"""

import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from splitlaw import (
    DEFAULT_EXT_CAP,
    ExtensionTooLarge,
    ExtFieldContext,
    FieldElement,
    NonInvertible,
    PrimeFieldContext,
    ext_frobenius,
    ext_new,
    fp_inv,
    fp_pow,
    is_prime,
)

SMALL_PRIMES = [3, 5, 7, 11, 13, 31, 97, 101]


@pytest.fixture
def f31():
    return PrimeFieldContext(31)


@pytest.fixture
def f25():
    # x^2 + 2 is irreducible over F_5 (-2 = 3 is a non-residue)
    return ExtFieldContext(PrimeFieldContext(5), (2, 0, 1))


# ---------------------------------------------------------------------------
# Primality
# ---------------------------------------------------------------------------


def test_is_prime_matches_sympy_on_small_range():
    for n in range(-2, 2000):
        assert is_prime(n) == sympy.isprime(n), n


@pytest.mark.parametrize(
    "n",
    [561, 1105, 1729, 2465, 2821, 6601, 2047, 3277, 4033, 1373653, 25326001],
)
def test_is_prime_rejects_classic_pseudoprimes(n):
    assert not is_prime(n)


@pytest.mark.parametrize("n", [2147483629, 2147483647, 999999937])
def test_is_prime_large_primes(n):
    assert is_prime(n)


# ---------------------------------------------------------------------------
# Prime field basics
# ---------------------------------------------------------------------------


def test_context_rejects_non_primes_and_two():
    with pytest.raises(ValueError):
        PrimeFieldContext(1)
    with pytest.raises(ValueError):
        PrimeFieldContext(15)
    with pytest.raises(ValueError):
        PrimeFieldContext(2)
    with pytest.raises(ValueError):
        PrimeFieldContext(1 << 31)


def test_inverse_of_four_mod_31(f31):
    a = f31.element(4)
    assert fp_inv(a) == f31.element(8)
    assert (a * fp_inv(a)) == f31.element(1)


def test_two_to_the_tenth_mod_31(f31):
    assert fp_pow(f31.element(2), 10) == f31.element(1)


def test_zero_exponent_gives_one_even_at_zero(f31):
    assert fp_pow(f31.element(0), 0) == f31.element(1)
    assert fp_pow(f31.element(17), 0) == f31.element(1)


def test_zero_has_no_inverse(f31):
    with pytest.raises(NonInvertible):
        fp_inv(f31.element(0))


def test_negative_exponent_means_inverse_power(f31):
    a = f31.element(5)
    assert fp_pow(a, -3) == fp_inv(a) ** 3


def test_elements_of_different_contexts_do_not_mix(f31):
    other = PrimeFieldContext(5)
    with pytest.raises(ValueError):
        f31.element(1) + other.element(1)
    with pytest.raises(ValueError):
        fp_inv(f31.element(3), other)


def test_int_coercion_in_operators(f31):
    a = f31.element(30)
    assert a + 1 == f31.element(0)
    assert 2 * a == f31.element(29)
    assert 1 - a == f31.element(2)
    assert a == 30 and a == -1


@given(
    p=st.sampled_from(SMALL_PRIMES),
    a=st.integers(-200, 200),
    b=st.integers(-200, 200),
    c=st.integers(-200, 200),
)
def test_prime_field_axioms(p, a, b, c):
    ctx = PrimeFieldContext(p)
    x, y, z = ctx.element(a), ctx.element(b), ctx.element(c)
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + (-x) == ctx.element(0)
    if not x.is_zero:
        assert x * fp_inv(x) == ctx.element(1)
        assert x / x == ctx.element(1)


@given(p=st.sampled_from(SMALL_PRIMES), a=st.integers(1, 10**6))
def test_fermat_little_theorem(p, a):
    x = PrimeFieldContext(p).element(a)
    if not x.is_zero:
        assert fp_pow(x, p - 1) == 1


# ---------------------------------------------------------------------------
# Extension fields
# ---------------------------------------------------------------------------


def test_reducible_modulus_is_rejected():
    with pytest.raises(ValueError):
        ExtFieldContext(PrimeFieldContext(5), (-1, 0, 1))  # x^2 - 1 = (x-1)(x+1)
    with pytest.raises(ValueError):
        ExtFieldContext(PrimeFieldContext(5), (0, 0, 1))  # x^2


def test_non_monic_modulus_is_rejected():
    with pytest.raises(ValueError):
        ExtFieldContext(PrimeFieldContext(5), (1, 0, 2))


def test_f25_frobenius_of_generator(f25):
    # t^2 = -2 = 3, so t^5 = (t^2)^2 t = 9t = 4t
    t = f25.element((0, 1))
    assert ext_frobenius(t) == f25.element((0, 4))
    assert fp_pow(t, 5) == f25.element((0, 4))


def test_f25_structure(f25):
    assert f25.order == 25
    assert f25.char == 5
    assert f25.degree == 2
    assert len(list(f25.iter_raw())) == 25


def test_degree_one_extension_mirrors_base():
    ctx = ext_new(5, 1, seed=0)
    assert ctx.order == 5
    assert ctx.k == 1
    vals = {ctx.element(i).value for i in range(5)}
    assert len(vals) == 5


def test_ext_new_is_reproducible_and_irreducible():
    a = ext_new(7, 3, seed="trial")
    b = ext_new(7, 3, seed="trial")
    c = ext_new(7, 3, seed="trial-2")
    assert a.modulus == b.modulus
    assert a == b
    # a different seed may pick a different (still valid) modulus
    assert c.order == a.order == 7**3
    # independent irreducibility check on the chosen modulus
    fx = sympy.Poly(list(reversed(a.modulus)), sympy.Symbol("x"), modulus=7)
    assert all(m.degree() == fx.degree() for m, _ in fx.factor_list()[1])


def test_ext_new_enforces_cap():
    with pytest.raises(ExtensionTooLarge):
        ext_new(3, DEFAULT_EXT_CAP + 1, seed=0)
    with pytest.raises(ExtensionTooLarge):
        ext_new(3, 5, seed=0, cap=4)
    with pytest.raises(ValueError):
        ext_new(3, 0, seed=0)


@given(
    pk=st.sampled_from([(3, 2), (3, 3), (5, 2), (7, 2), (11, 2), (5, 3), (3, 4)]),
    seed=st.integers(0, 3),
    data=st.data(),
)
@settings(max_examples=60, deadline=None)
def test_extension_field_axioms(pk, seed, data):
    p, k = pk
    ctx = ext_new(p, k, seed=seed)
    rng = random.Random(data.draw(st.integers(0, 2**32)))
    x = FieldElement(ctx, ctx.rand_raw(rng))
    y = FieldElement(ctx, ctx.rand_raw(rng))
    z = FieldElement(ctx, ctx.rand_raw(rng))
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x + (-x) == ctx.element(0)
    if not x.is_zero:
        assert x * x.inverse() == ctx.element(1)
        # multiplicative group has order p^k - 1
        assert fp_pow(x, ctx.order - 1) == ctx.element(1)


def test_zero_has_no_inverse_in_extension(f25):
    with pytest.raises(NonInvertible):
        f25.element(0).inverse()


# ---------------------------------------------------------------------------
# Frobenius as a field automorphism
# ---------------------------------------------------------------------------


@given(
    pk=st.sampled_from([(3, 2), (3, 3), (5, 2), (7, 2), (5, 3)]),
    data=st.data(),
)
@settings(max_examples=60, deadline=None)
def test_frobenius_is_a_ring_homomorphism(pk, data):
    p, k = pk
    ctx = ext_new(p, k, seed=11)
    rng = random.Random(data.draw(st.integers(0, 2**32)))
    x = FieldElement(ctx, ctx.rand_raw(rng))
    y = FieldElement(ctx, ctx.rand_raw(rng))
    assert ext_frobenius(x + y) == ext_frobenius(x) + ext_frobenius(y)
    assert ext_frobenius(x * y) == ext_frobenius(x) * ext_frobenius(y)
    assert ext_frobenius(x) == fp_pow(x, p)


@pytest.mark.parametrize("p,k", [(3, 2), (3, 4), (5, 2), (7, 2), (11, 2), (5, 3), (3, 7)])
def test_frobenius_fixed_field_is_the_prime_field(p, k):
    ctx = ext_new(p, k, seed=3)
    assert ctx.order <= 5000
    embedded = {ctx.embed(c) for c in range(p)}
    fixed = {a for a in ctx.iter_raw() if ctx.frobenius(a) == a}
    assert fixed == embedded


@pytest.mark.parametrize("p,k", [(3, 2), (3, 4), (5, 2), (5, 3), (7, 2), (13, 2)])
def test_frobenius_has_order_k(p, k):
    ctx = ext_new(p, k, seed=5)
    rng = random.Random(0xF00)
    for _ in range(20):
        a = ctx.rand_raw(rng)
        b = a
        for _ in range(k):
            b = ctx.frobenius(b)
        assert b == a
    if k > 1:
        # some element must move under fewer than k applications
        moved = False
        for a in ctx.iter_raw():
            if ctx.frobenius(a) != a:
                moved = True
                break
        assert moved


def test_frobenius_on_prime_field_is_identity(f31):
    for a in range(31):
        assert f31.frobenius(a) == a


def test_element_keys_sort_canonically(f25):
    keys = sorted(f25.key(a) for a in f25.iter_raw())
    assert keys[0] == (0, 0)
    assert len(set(keys)) == 25
    assert keys == sorted(keys)
