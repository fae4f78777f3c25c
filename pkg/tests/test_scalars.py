"""Exact scalar layer: quantum numbers, canonical forms, specialization."""

import random
from fractions import Fraction

import pytest

from qschur.errors import DenominatorVanishes, ExactDivisionError
from qschur.scalars import (
    FieldContext,
    LaurentPoly,
    RatFunc,
    cyclotomic_polynomial,
    laurent_divmod,
    laurent_exact_div,
    laurent_gcd,
    quantum_binomial,
    quantum_factorial,
    quantum_integer,
    specialize,
)

L = LaurentPoly


def lp(d):
    return L(d)


# -- quantum integers --------------------------------------------------------

def test_quantum_integer_examples():
    assert quantum_integer(0, 1).is_zero()
    assert quantum_integer(3, 1) == lp({2: 1, 0: 1, -2: 1})
    assert quantum_integer(-2, 1) == lp({1: -1, -1: -1})
    assert quantum_integer(2, 1) == lp({1: 1, -1: 1})


@pytest.mark.parametrize("d", [1, 2, 3])
def test_quantum_integer_antisymmetry(d):
    for n in range(-20, 21):
        assert quantum_integer(-n, d) == -quantum_integer(n, d)


def test_quantum_integer_defining_quotient():
    # [n]*(v_d - v_d^-1) == v_d^n - v_d^-n
    for d in (1, 2, 3):
        for n in range(-8, 9):
            lhs = quantum_integer(n, d) * lp({d: 1, -d: -1})
            assert lhs == lp({d * n: 1, -d * n: -1} if n else {})


def test_quantum_factorial_examples():
    assert quantum_factorial(0, 1) == L.one()
    assert quantum_factorial(2, 1) == quantum_integer(2, 1)
    # [2]_2 * [3]_2 expanded
    assert quantum_factorial(3, 2) == lp({6: 1, 2: 2, -2: 2, -6: 1})
    with pytest.raises(ValueError):
        quantum_factorial(-1, 1)


def test_quantum_binomial_examples():
    assert quantum_binomial(7, 0, 2) == L.one()
    assert quantum_binomial(4, 2, 1) == lp({4: 1, 2: 1, 0: 2, -2: 1, -4: 1})
    assert quantum_binomial(-1, 3, 1) == lp({0: -1})
    assert quantum_binomial(2, 1, 1) == quantum_integer(2, 1)
    # t > a >= 0 vanishes
    assert quantum_binomial(2, 3, 1).is_zero()


@pytest.mark.parametrize("d", [1, 2])
def test_quantum_binomial_factorial_identity(d):
    # [a; t] = [a]! / ([t]! [a-t]!) by exact division in Z[v,v^-1]
    for a in range(0, 11):
        for t in range(0, a + 1):
            expected = laurent_exact_div(
                quantum_factorial(a, d),
                quantum_factorial(t, d) * quantum_factorial(a - t, d))
            assert quantum_binomial(a, t, d) == expected


def test_quantum_binomial_bar_symmetry():
    for a in range(0, 11):
        for t in range(0, a + 1):
            b = quantum_binomial(a, t, 1)
            assert b.bar() == b


def test_quantum_binomial_pascal():
    # [a; t] = v^{dt} [a-1; t] + v^{-d(a-t)} [a-1; t-1]
    for d in (1, 2):
        for a in range(1, 9):
            for t in range(0, a + 1):
                rhs = quantum_binomial(a - 1, t, d).shift(d * t)
                if t >= 1:
                    rhs = rhs + quantum_binomial(a - 1, t - 1, d).shift(-d * (a - t))
                assert quantum_binomial(a, t, d) == rhs


# -- Laurent / rational function canonical forms ----------------------------

def test_laurent_zero_pruning_and_equality():
    assert lp({3: 0, 1: 2}) == lp({1: 2})
    assert lp({0: Fraction(2)}) == lp({0: 2})
    assert hash(lp({0: Fraction(2)})) == hash(lp({0: 2}))
    assert not lp({})


def test_laurent_strings():
    assert str(lp({2: 1, 0: 1, -2: 1})) == "v^2 + 1 + v^-2"
    assert str(lp({1: -1, -1: -1})) == "-v - v^-1"
    assert str(lp({0: Fraction(3, 2)})) == "3/2"
    assert str(L.zero()) == "0"


def test_laurent_divmod_and_gcd():
    a = quantum_integer(2) * quantum_integer(3)
    q, r = laurent_divmod(a, quantum_integer(3))
    assert r.is_zero() and q == quantum_integer(2)
    g = laurent_gcd(lp({1: 1}), lp({2: 1}))
    assert g == L.one()  # v is a unit
    g2 = laurent_gcd(quantum_integer(2) ** 2, quantum_integer(2) * quantum_integer(3))
    # gcd = [2] up to unit normalization (lowest exp 0, top coeff 1)
    assert g2 == quantum_integer(2).unit_normalize()[0]
    with pytest.raises(ExactDivisionError):
        laurent_exact_div(quantum_integer(3), quantum_integer(2))


def test_ratfunc_canonical():
    two = quantum_integer(2)
    r = RatFunc(two * two, two)
    assert r == RatFunc.from_laurent(two)
    assert r.is_laurent() and r.to_laurent() == two
    s = RatFunc(L.one(), two)
    assert s.den.min_exp == 0 and s.den.coeffs[s.den.max_exp] == 1
    assert (s * RatFunc.from_laurent(two)) == RatFunc.one()
    assert RatFunc(L.zero(), two) == RatFunc.zero()
    with pytest.raises(ZeroDivisionError):
        RatFunc(L.one(), L.zero())


def test_ratfunc_field_ops():
    a = RatFunc(quantum_integer(3), quantum_integer(2))
    b = RatFunc(L.one(), quantum_integer(5))
    assert (a + b) - b == a
    assert (a * b) / b == a
    assert a * a.inverse() == RatFunc.one()


# -- cyclotomic polynomials --------------------------------------------------

def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == lp({1: 1, 0: -1})
    assert cyclotomic_polynomial(2) == lp({1: 1, 0: 1})
    assert cyclotomic_polynomial(3) == lp({2: 1, 1: 1, 0: 1})
    assert cyclotomic_polynomial(4) == lp({2: 1, 0: 1})
    assert cyclotomic_polynomial(6) == lp({2: 1, 1: -1, 0: 1})
    assert cyclotomic_polynomial(12) == lp({4: 1, 2: -1, 0: 1})
    # product over divisors recovers v^n - 1
    for n in (6, 12):
        prod = L.one()
        for d in range(1, n + 1):
            if n % d == 0:
                prod = prod * cyclotomic_polynomial(d)
        assert prod == lp({n: 1, 0: -1})


# -- specialization ----------------------------------------------------------

def test_specialize_examples():
    ctx1 = FieldContext.rational_point(1)
    for n in range(-6, 7):
        val = specialize(quantum_integer(n), ctx1)
        assert val.data == n  # [n] at v=1 is the ordinary integer
    ctx4 = FieldContext.cyclotomic_point(4)
    assert specialize(quantum_integer(2), ctx4).is_zero()
    assert not specialize(quantum_integer(3), ctx4).is_zero()
    gen = FieldContext.generic()
    x = RatFunc(quantum_integer(3), quantum_integer(2))
    assert specialize(x, gen).data == x  # identity embedding


def test_specialize_denominator_vanishes():
    ctx4 = FieldContext.cyclotomic_point(4)
    bad = RatFunc(L.one(), quantum_integer(2))
    with pytest.raises(DenominatorVanishes):
        specialize(bad, ctx4)
    ctx_half = FieldContext.rational_point(Fraction(1, 2))
    # [2](1/2) = 5/2 != 0, fine there
    assert specialize(bad, ctx_half).data == Fraction(2, 5)


def test_context_validation():
    with pytest.raises(ValueError):
        FieldContext.rational_point(0)
    with pytest.raises(ValueError):
        FieldContext.cyclotomic_point(1)


def _random_laurent(rng, max_terms=4, max_exp=5):
    return L({rng.randint(-max_exp, max_exp):
              Fraction(rng.randint(-9, 9), rng.randint(1, 5))
              for _ in range(rng.randint(0, max_terms))})


@pytest.mark.parametrize("ctx", [
    FieldContext.generic(),
    FieldContext.rational_point(Fraction(3, 2)),
    FieldContext.rational_point(-2),
    FieldContext.cyclotomic_point(3),
    FieldContext.cyclotomic_point(4),
    FieldContext.cyclotomic_point(12),
], ids=lambda c: c.label())
def test_specialize_is_ring_homomorphism(ctx):
    rng = random.Random(20260808)
    for _ in range(100):
        a = _random_laurent(rng)
        b = _random_laurent(rng)
        assert specialize(a + b, ctx) == specialize(a, ctx) + specialize(b, ctx)
        assert specialize(a * b, ctx) == specialize(a, ctx) * specialize(b, ctx)


@pytest.mark.parametrize("ctx", [
    FieldContext.rational_point(Fraction(-7, 3)),
    FieldContext.cyclotomic_point(5),
    FieldContext.cyclotomic_point(12),
], ids=lambda c: c.label())
def test_field_inverse_closure(ctx):
    rng = random.Random(7)
    count = 0
    while count < 40:
        x = specialize(_random_laurent(rng), ctx)
        if x.is_zero():
            continue
        count += 1
        assert x * x.inverse() == ctx.one()
