"""Specialization at v = q in characteristic-zero fields.

The integral-basis Gram matrices specialize exactly; their ranks give the
weight multiplicities of the simple head L_q(lambda), their nullspaces the
radical.  Decomposition numbers come from the unitriangular character
solve; semisimplicity is decided by the nonvanishing of the integral Gram
determinants (the paper's f(v) certificates).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cellmod import CellModule
from .errors import InconsistentCharactersError
from .linalg import LaurentMatrix, laurent_determinant, nullspace, rank
from .rootdata import CosaturatedFlag, Weight
from .scalars import (
    FieldContext,
    LaurentPoly,
    cyclotomic_polynomial,
    laurent_divmod,
)


@dataclass
class SpecializedModule:
    """Delta_q(lambda) with its radical data at a specialization point.

    weight_ranks[mu] is the mu-multiplicity of L_q(lambda); radicals[mu]
    is a basis (integral-basis coordinates over the specialized field) of
    the radical's mu-component.  charDelta is unchanged by specialization.
    """

    lam: Weight
    ctx: FieldContext
    weight_ranks: dict
    radicals: dict
    char_delta: dict
    dim_delta: int

    @property
    def dim_simple(self) -> int:
        return sum(self.weight_ranks.values())

    def char_simple(self) -> dict:
        return {mu: r for mu, r in self.weight_ranks.items() if r}


def specialize_module(cm: CellModule, ctx: FieldContext) -> SpecializedModule:
    """Specialize the integral Gram of every weight space of Delta(lambda).

    Ranks assemble the character of L_q(lambda); this is valid because the
    contravariant form pairs only equal weights, so the radical is
    weight-graded.  Integral entries cannot hit a vanishing denominator.
    """
    cm.ensure_integral()
    weight_ranks = {}
    radicals = {}
    for mu in cm.weights:
        sp = cm.spaces[mu]
        g = sp.integral.gram.to_field(ctx)
        weight_ranks[mu] = rank(g)
        radicals[mu] = nullspace(g)
    return SpecializedModule(
        lam=cm.lam, ctx=ctx, weight_ranks=weight_ranks, radicals=radicals,
        char_delta=cm.character(), dim_delta=cm.dim)


@dataclass
class GramDeterminantRecord:
    """Unit-normalized Gram determinant with its cyclotomic factorization.

    det has lowest exponent 0 and positive leading coefficient; factors
    maps ell to the multiplicity of Phi_ell found by trial division up to
    the scan bound; cofactor is the unfactored residual.
    """

    lam: Weight
    mu: Weight
    det: LaurentPoly
    factors: dict
    cofactor: LaurentPoly


def _normalize_det(det: LaurentPoly) -> LaurentPoly:
    if det.is_zero():
        return det
    det = det.shift(-det.min_exp)
    if det.coeffs[det.max_exp] < 0:
        det = -det
    return det


def _cyclotomic_scan(det: LaurentPoly, bound: int) -> tuple:
    factors = {}
    rest = det
    for ell in range(1, bound + 1):
        phi = cyclotomic_polynomial(ell)
        while rest.span >= phi.span:
            q, r = laurent_divmod(rest, phi)
            if not r.is_zero():
                break
            factors[ell] = factors.get(ell, 0) + 1
            rest = q
    return factors, _normalize_det(rest)


def gram_determinant(cm: CellModule, mu: Weight, scan_bound: int = 50,
                     integral: bool = False) -> GramDeterminantRecord:
    """Determinant of the Gram form on one weight space.

    By default this is the word-basis Gram restricted to the generic-basis
    submatrix (the word set may be overcomplete); with integral=True it is
    the Gram in the A-basis of the lattice, the f(v) whose zeros decide
    semisimplicity of specializations.  Always nonzero over Q(v).
    """
    mu = tuple(mu)
    sp = cm.spaces[mu]
    if integral:
        cm.ensure_integral()
        g = sp.integral.gram
    else:
        g = LaurentMatrix.from_rows(
            [[sp.gram.entries[i][j] for j in sp.generic_basis]
             for i in sp.generic_basis])
    det = _normalize_det(laurent_determinant(g))
    assert not det.is_zero(), "contravariant form degenerate over Q(v)"
    factors, cofactor = _cyclotomic_scan(det, scan_bound)
    return GramDeterminantRecord(cm.lam, mu, det, factors, cofactor)


@dataclass
class DecompositionMatrix:
    """d[lam][mu] = multiplicity of L_q(mu) in Delta_q(lam), indexed in
    flag order; unitriangular with respect to dominance."""

    ctx: FieldContext
    order: tuple
    entries: dict  # (lam, mu) -> int

    def row(self, lam: Weight) -> list:
        return [self.entries.get((tuple(lam), mu), 0) for mu in self.order]

    def is_identity(self) -> bool:
        return all(self.entries.get((lam, mu), 0) == (1 if lam == mu else 0)
                   for lam in self.order for mu in self.order)


def decomposition_matrix(modules: dict, flag: CosaturatedFlag,
                         ctx: FieldContext) -> DecompositionMatrix:
    """Solve charDelta(lam) = sum_mu d[lam][mu] charL(mu), in flag order.

    The system is unitriangular because charL(mu) has leading weight mu
    with coefficient 1.  A nonzero residue, a negative entry, or a
    non-dominant leading term signals an engine bug.
    """
    datum = flag.datum
    order = tuple(flag)
    specs = {lam: specialize_module(modules[lam], ctx) for lam in order}
    char_l = {lam: specs[lam].char_simple() for lam in order}
    for lam in order:
        if char_l[lam].get(lam, 0) != 1:
            raise InconsistentCharactersError(
                "charL(%r) does not lead with multiplicity 1" % (lam,))
    entries = {}
    for lam in order:
        residual = dict(specs[lam].char_delta)
        entries[(lam, lam)] = 1
        for mu, m in char_l[lam].items():
            residual[mu] = residual.get(mu, 0) - m
        residual = {mu: m for mu, m in residual.items() if m}
        while residual:
            # any dominance-maximal weight of the residual support
            support = sorted(residual)
            nu = support[0]
            for cand in support[1:]:
                if datum.dominance_leq(nu, cand):
                    nu = cand
            d = residual[nu]
            if d < 0 or nu not in char_l or not datum.dominance_leq(nu, lam):
                raise InconsistentCharactersError(
                    "residual %r at %r in row %r" % (d, nu, lam))
            entries[(lam, nu)] = d
            for mu, m in char_l[nu].items():
                residual[mu] = residual.get(mu, 0) - d * m
            residual = {mu: m for mu, m in residual.items() if m}
    dm = DecompositionMatrix(ctx, order, entries)
    for lam in order:
        total = sum(entries.get((lam, mu), 0) * specs[mu].dim_simple
                    for mu in order)
        if total != specs[lam].dim_delta:
            raise InconsistentCharactersError(
                "dimension identity fails in row %r" % (lam,))
    return dm


@dataclass
class SemisimplicityReport:
    """Nonvanishing certificates for a specialization point.

    semisimple is true iff every integral Gram determinant f(v) is nonzero
    at the point; witnesses lists the (lam, mu) where it vanishes.  The
    quasihereditary witness phi^q(x0, x0) = 1 holds identically.
    """

    ctx: FieldContext
    semisimple: bool
    witnesses: tuple
    quasihereditary_witness: bool = True


def semisimplicity_report(modules: dict, flag: CosaturatedFlag,
                          ctx: FieldContext) -> SemisimplicityReport:
    witnesses = []
    for lam in flag:
        cm = modules[lam]
        cm.ensure_integral()
        for mu in cm.weights:
            det = laurent_determinant(cm.spaces[mu].integral.gram)
            if ctx.kind == "generic":
                vanished = det.is_zero()
            else:
                vanished = ctx.from_laurent(det).is_zero()
            if vanished:
                witnesses.append((lam, mu))
    return SemisimplicityReport(ctx, not witnesses, tuple(witnesses))


def radical_is_submodule(cm: CellModule, ctx: FieldContext,
                         depth: int = 3) -> bool:
    """Check that every specialized divided-power generator matrix maps
    rad_q into rad_q (exact membership: rad_q is the nullspace of the
    specialized integral Gram, weight by weight)."""
    spec = specialize_module(cm, ctx)
    offsets = cm.integral_offsets()
    grams = {mu: cm.spaces[mu].integral.gram.to_field(ctx)
             for mu in cm.weights}
    symbols = []
    for i in range(cm.datum.rank):
        for a in range(1, depth + 1):
            symbols.append(("E", i, a))
            symbols.append(("F", i, a))
    for sym in symbols:
        m = cm.integral_action_matrix(sym).to_field(ctx)
        for mu in cm.weights:
            for vec in spec.radicals[mu]:
                full = [ctx.zero()] * cm.dim
                off = offsets[mu]
                for k, x in enumerate(vec):
                    full[off + k] = x
                image = m.apply(full)
                # image must pair to zero against every weight block
                for nu in cm.weights:
                    noff = offsets[nu]
                    comp = [image[noff + k] for k in range(cm.spaces[nu].rank)]
                    if all(x.is_zero() for x in comp):
                        continue
                    paired = grams[nu].apply(comp)
                    if not all(x.is_zero() for x in paired):
                        return False
    return True
