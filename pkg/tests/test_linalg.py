"""Exact linear algebra: elimination over field contexts and Laurent HNF."""

import random
from fractions import Fraction

import pytest

from qschur.errors import ExactDivisionError, NoSolutionError
from qschur.linalg import (
    FieldMatrix,
    LaurentMatrix,
    determinant,
    express_in_column_basis,
    hnf_column_basis,
    invert,
    laurent_determinant,
    nullspace,
    rank,
    solve,
)
from qschur.scalars import FieldContext, LaurentPoly, quantum_integer

GEN = FieldContext.generic()
L = LaurentPoly


def fm(ctx, rows):
    return FieldMatrix.from_rows(
        ctx, [[ctx.from_laurent(x) if isinstance(x, LaurentPoly)
               else ctx.from_fraction(x) for x in row] for row in rows])


def test_rank_examples():
    assert rank(FieldMatrix.identity(GEN, 3)) == 3
    assert rank(FieldMatrix.zero(GEN, 2, 5)) == 0
    ctx4 = FieldContext.cyclotomic_point(4)
    assert rank(fm(ctx4, [[quantum_integer(2)]])) == 0
    assert rank(fm(ctx4, [[quantum_integer(3)]])) == 1


def test_solve_examples():
    b = [GEN.from_fraction(3), GEN.from_fraction(-1)]
    assert solve(FieldMatrix.identity(GEN, 2), b) == b
    two = quantum_integer(2)
    m = fm(GEN, [[two]])
    x = solve(m, [GEN.from_laurent(two * two)])
    assert x == [GEN.from_laurent(two)]
    with pytest.raises(NoSolutionError):
        solve(fm(GEN, [[0]]), [GEN.one()])


def test_nullspace_examples():
    assert nullspace(FieldMatrix.identity(GEN, 4)) == []
    ns = nullspace(FieldMatrix.zero(GEN, 3, 3))
    assert len(ns) == 3
    for i, vec in enumerate(ns):
        assert vec[i] == GEN.one()
    ctx4 = FieldContext.cyclotomic_point(4)
    ns = nullspace(fm(ctx4, [[quantum_integer(2)]]))
    assert len(ns) == 1 and ns[0][0] == ctx4.one()


def test_rank_nullity_and_kernel_property():
    rng = random.Random(11)
    for ctx in (GEN, FieldContext.rational_point(Fraction(2, 3)),
                FieldContext.cyclotomic_point(3)):
        for _ in range(12):
            r, c = rng.randint(1, 5), rng.randint(1, 5)
            m = fm(ctx, [[rng.randint(-3, 3) for _ in range(c)] for _ in range(r)])
            ns = nullspace(m)
            assert rank(m) + len(ns) == c
            for vec in ns:
                assert all(x.is_zero() for x in m.apply(vec))


def test_determinant_and_invert():
    m = fm(GEN, [[1, 1], [0, quantum_integer(2)]])
    assert determinant(m) == GEN.from_laurent(quantum_integer(2))
    mi = invert(m)
    assert (m * mi) == FieldMatrix.identity(GEN, 2)
    assert determinant(fm(GEN, [[1, 2], [2, 4]])).is_zero()
    with pytest.raises(NoSolutionError):
        invert(fm(GEN, [[1, 2], [2, 4]]))


def test_hnf_identity():
    g = LaurentMatrix.identity(3)
    basis, transform = hnf_column_basis(g)
    assert basis == g and transform == g


def test_hnf_unit_gcd():
    # gcd(v, v^2) = v, a unit: basis is [[1]]
    g = LaurentMatrix.from_rows([[L.var(1), L.var(2)]])
    basis, transform = hnf_column_basis(g)
    assert basis == LaurentMatrix.from_rows([[L.one()]])
    assert (g * transform) == basis


def test_hnf_nonunit_gcd():
    two = quantum_integer(2)
    g = LaurentMatrix.from_rows([[two, two * two]])
    basis, transform = hnf_column_basis(g)
    # gcd is [2], not a unit; normalized to lowest exponent 0, top coeff 1
    assert basis == LaurentMatrix.from_rows([[two.unit_normalize()[0]]])
    assert (g * transform) == basis


def _random_laurent(rng):
    return L({rng.randint(-2, 2): rng.randint(-4, 4)
              for _ in range(rng.randint(0, 3))})


def test_hnf_module_equality_random():
    rng = random.Random(5)
    for _ in range(25):
        r, c = rng.randint(1, 4), rng.randint(1, 5)
        g = LaurentMatrix.from_rows(
            [[_random_laurent(rng) for _ in range(c)] for _ in range(r)])
        basis, transform = hnf_column_basis(g)
        # transform certificate: basis = g * transform exactly
        assert (g * transform) == basis
        # every input column lies in the module generated by the basis
        for j in range(c):
            coeffs = express_in_column_basis(basis, g.column(j))
            assert len(coeffs) == basis.cols
        # ranks agree over Q(v)
        assert rank(g.to_field(GEN)) == rank(basis.to_field(GEN))
        # basis columns are independent over Q(v)
        assert rank(basis.to_field(GEN)) == basis.cols


def test_express_outside_module():
    two = quantum_integer(2)
    basis = LaurentMatrix.from_rows([[two.unit_normalize()[0]]])
    with pytest.raises(ExactDivisionError):
        express_in_column_basis(basis, [L.one()])


def test_hnf_determinism():
    rng = random.Random(17)
    g = LaurentMatrix.from_rows(
        [[_random_laurent(rng) for _ in range(4)] for _ in range(3)])
    out1 = hnf_column_basis(g)
    out2 = hnf_column_basis(g)
    assert out1[0] == out2[0] and out1[1] == out2[1]


def test_laurent_determinant():
    two = quantum_integer(2)
    m = LaurentMatrix.from_rows([[two, L.one()], [L.zero(), two]])
    assert laurent_determinant(m) == two * two
