"""Specialization: radicals, decomposition matrices, Gram determinants."""

from qschur.cellmod import CellModule
from qschur.rootdata import build_flag, build_root_datum, saturate
from qschur.scalars import FieldContext, LaurentPoly, quantum_binomial
from qschur.specialize import (
    decomposition_matrix,
    gram_determinant,
    radical_is_submodule,
    semisimplicity_report,
    specialize_module,
)

A1 = build_root_datum("A1")
A2 = build_root_datum("A2")

GENERIC = FieldContext.generic()
Q1 = FieldContext.rational_point(1)
CYC3 = FieldContext.cyclotomic_point(3)
CYC4 = FieldContext.cyclotomic_point(4)


def modules_for(datum, seeds):
    pi = saturate(datum, seeds)
    flag = build_flag(pi)
    return {lam: CellModule(datum, lam) for lam in flag}, flag


def test_specialize_module_fixture():
    cm = CellModule(A1, (2,))
    spec = specialize_module(cm, CYC4)
    # [2] |-> 0 at a primitive 4th root: weight ranks (1, 0, 1)
    assert spec.weight_ranks == {(2,): 1, (0,): 0, (-2,): 1}
    assert spec.dim_simple == 2
    assert len(spec.radicals[(0,)]) == 1
    spec3 = specialize_module(cm, CYC3)
    assert spec3.weight_ranks == {(2,): 1, (0,): 1, (-2,): 1}
    assert spec3.dim_simple == 3
    gen = specialize_module(cm, GENERIC)
    assert gen.dim_simple == cm.dim


def test_char_simple_leading_coefficient():
    for ctx in (CYC3, CYC4, Q1):
        for lam in [(1,), (2,), (4,)]:
            spec = specialize_module(CellModule(A1, lam), ctx)
            assert spec.char_simple()[lam] == 1


def test_gram_determinant_records():
    cm = CellModule(A1, (4,))
    for t in range(5):
        rec = gram_determinant(cm, (4 - 2 * t,))
        expected = quantum_binomial(4, t)
        assert rec.det == expected.shift(-expected.min_exp)
    # lambda-space determinant is 1
    rec = gram_determinant(cm, (4,))
    assert rec.det == LaurentPoly.one() and rec.factors == {}
    # weight 0 of Delta(2): [2] rescales to v^2 + 1 = Phi_4
    cm2 = CellModule(A1, (2,))
    rec2 = gram_determinant(cm2, (0,))
    assert rec2.det == LaurentPoly({2: 1, 0: 1})
    assert rec2.factors == {4: 1}
    assert rec2.cofactor == LaurentPoly.one()


def test_gram_determinant_integral_matches_word_basis_in_rank1():
    # single-word weight spaces: the A-basis is the word itself
    cm = CellModule(A1, (3,))
    for mu in cm.weights:
        assert gram_determinant(cm, mu).det == gram_determinant(
            cm, mu, integral=True).det


def test_decomposition_identity_generic_and_classical():
    modules, flag = modules_for(A1, [(2,), (1,)])
    for ctx in (GENERIC, Q1, FieldContext.rational_point(2),
                FieldContext.rational_point(3)):
        dm = decomposition_matrix(modules, flag, ctx)
        assert dm.is_identity(), ctx.label()


def test_decomposition_fixture_cyclotomic4():
    modules, flag = modules_for(A1, [(2,), (1,)])
    dm = decomposition_matrix(modules, flag, CYC4)
    assert dm.entries[((2,), (2,))] == 1
    assert dm.entries[((2,), (0,))] == 1
    assert dm.entries.get(((2,), (1,)), 0) == 0
    assert dm.entries[((1,), (1,))] == 1
    assert dm.entries.get(((1,), (0,)), 0) == 0
    assert dm.entries[((0,), (0,))] == 1
    # dim L_q = (1, 2, 2) on pi = {0, 1, 2}
    dims = {lam: specialize_module(modules[lam], CYC4).dim_simple
            for lam in flag}
    assert dims == {(0,): 1, (1,): 2, (2,): 2}


def test_semisimplicity_reports():
    modules, flag = modules_for(A1, [(2,), (1,)])
    assert semisimplicity_report(modules, flag, GENERIC).semisimple
    assert semisimplicity_report(modules, flag, Q1).semisimple
    rep4 = semisimplicity_report(modules, flag, CYC4)
    assert not rep4.semisimple
    assert ((2,), (0,)) in rep4.witnesses
    assert rep4.quasihereditary_witness


def test_radical_submodule_property():
    for lam in [(2,), (3,), (4,)]:
        cm = CellModule(A1, lam)
        assert radical_is_submodule(cm, CYC4)
        assert radical_is_submodule(cm, CYC3)
    cm2 = CellModule(A2, (1, 1))
    assert radical_is_submodule(cm2, CYC3)


def test_a2_adjoint_at_third_root():
    # the adjoint cell module at ell = 3 is genuinely non-semisimple:
    # the zero-weight line through the traceless-diagonal direction dies,
    # leaving the 7-dimensional simple (the char-3 classical story)
    modules, flag = modules_for(A2, [(1, 1)])
    rep = semisimplicity_report(modules, flag, CYC3)
    assert not rep.semisimple
    spec = specialize_module(modules[(1, 1)], CYC3)
    assert spec.dim_simple == 7
    assert spec.weight_ranks[(0, 0)] == 1
    dm = decomposition_matrix(modules, flag, CYC3)
    assert dm.entries[((1, 1), (1, 1))] == 1
    assert dm.entries[((1, 1), (0, 0))] == 1
    # integral Gram determinant at weight (0,0) is Phi_3 * Phi_6
    rec = gram_determinant(modules[(1, 1)], (0, 0), integral=True)
    assert rec.det == LaurentPoly({4: 1, 2: 1, 0: 1})
    assert rec.factors == {3: 1, 6: 1}
    assert rec.cofactor == LaurentPoly.one()


def test_decomposition_rows_dominance_support():
    modules, flag = modules_for(A1, [(4,), (3,)])
    dm = decomposition_matrix(modules, flag, CYC4)
    for (lam, mu), d in dm.entries.items():
        assert d >= 0
        if d:
            assert A1.dominance_leq(mu, lam)
    for lam in flag:
        assert dm.entries[(lam, lam)] == 1
