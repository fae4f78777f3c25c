"""Exact dense linear algebra.

Two layers: FieldMatrix does Gaussian elimination over any FieldContext
(rank, solve, nullspace, determinant, inverse), and LaurentMatrix supports
Hermite-style column reduction over the Euclidean domain Q[v,v^-1], used to
extract bases of integral lattices.  Pivoting is always "first nonzero in
index order" -- the arithmetic is exact, so determinism beats conditioning.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ExactDivisionError, NoSolutionError
from .scalars import (
    FieldContext,
    FieldValue,
    LaurentPoly,
    laurent_divmod,
    laurent_exact_div,
)


@dataclass
class FieldMatrix:
    """A dense matrix with FieldValue entries sharing one context."""

    ctx: FieldContext
    rows: int
    cols: int
    entries: list  # list of lists of FieldValue

    @staticmethod
    def from_rows(ctx: FieldContext, rows: list) -> "FieldMatrix":
        r = len(rows)
        c = len(rows[0]) if rows else 0
        assert all(len(row) == c for row in rows)
        return FieldMatrix(ctx, r, c, [list(row) for row in rows])

    @staticmethod
    def zero(ctx: FieldContext, rows: int, cols: int) -> "FieldMatrix":
        z = ctx.zero()
        return FieldMatrix(ctx, rows, cols, [[z] * cols for _ in range(rows)])

    @staticmethod
    def identity(ctx: FieldContext, n: int) -> "FieldMatrix":
        m = FieldMatrix.zero(ctx, n, n)
        one = ctx.one()
        for i in range(n):
            m.entries[i][i] = one
        return m

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def copy(self) -> "FieldMatrix":
        return FieldMatrix(self.ctx, self.rows, self.cols,
                           [list(r) for r in self.entries])

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix(self.ctx, self.cols, self.rows,
                           [[self.entries[i][j] for i in range(self.rows)]
                            for j in range(self.cols)])

    def __add__(self, other: "FieldMatrix") -> "FieldMatrix":
        assert (self.rows, self.cols) == (other.rows, other.cols)
        return FieldMatrix(self.ctx, self.rows, self.cols,
                           [[a + b for a, b in zip(r1, r2)]
                            for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other: "FieldMatrix") -> "FieldMatrix":
        assert (self.rows, self.cols) == (other.rows, other.cols)
        return FieldMatrix(self.ctx, self.rows, self.cols,
                           [[a - b for a, b in zip(r1, r2)]
                            for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self) -> "FieldMatrix":
        return FieldMatrix(self.ctx, self.rows, self.cols,
                           [[-a for a in r] for r in self.entries])

    def __mul__(self, other: "FieldMatrix") -> "FieldMatrix":
        assert self.cols == other.rows
        z = self.ctx.zero()
        out = []
        ot = other.entries
        for i in range(self.rows):
            row = []
            srow = self.entries[i]
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = srow[k]
                    if a.is_zero():
                        continue
                    b = ot[k][j]
                    if b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return FieldMatrix(self.ctx, self.rows, other.cols, out)

    def scale(self, c: FieldValue) -> "FieldMatrix":
        return FieldMatrix(self.ctx, self.rows, self.cols,
                           [[a * c for a in r] for r in self.entries])

    def apply(self, vec: list) -> list:
        assert len(vec) == self.cols
        out = []
        z = self.ctx.zero()
        for i in range(self.rows):
            acc = z
            for k, x in enumerate(vec):
                if x.is_zero():
                    continue
                acc = acc + self.entries[i][k] * x
            out.append(acc)
        return out

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.entries for a in r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and \
            all(a == b for r1, r2 in zip(self.entries, other.entries)
                for a, b in zip(r1, r2))


def _echelonize(m: FieldMatrix) -> tuple[FieldMatrix, list]:
    """Row-reduce a copy of m; returns (rref, pivot column indices)."""
    a = m.copy()
    pivots = []
    prow = 0
    for col in range(a.cols):
        sel = None
        for i in range(prow, a.rows):
            if not a.entries[i][col].is_zero():
                sel = i
                break
        if sel is None:
            continue
        a.entries[prow], a.entries[sel] = a.entries[sel], a.entries[prow]
        inv = a.entries[prow][col].inverse()
        a.entries[prow] = [x * inv for x in a.entries[prow]]
        for i in range(a.rows):
            if i != prow and not a.entries[i][col].is_zero():
                f = a.entries[i][col]
                a.entries[i] = [x - f * y for x, y in
                                zip(a.entries[i], a.entries[prow])]
        pivots.append(col)
        prow += 1
        if prow == a.rows:
            break
    return a, pivots


def rank(m: FieldMatrix) -> int:
    """Rank over the context field, by exact Gaussian elimination."""
    return len(_echelonize(m)[1])


def solve(m: FieldMatrix, b: list) -> list:
    """Some x with m x = b (free coordinates set to zero).

    Raises NoSolutionError when b is outside the column space; the Gram
    matrices used by callers are invertible, making the solution unique
    there.
    """
    assert len(b) == m.rows
    aug = FieldMatrix(m.ctx, m.rows, m.cols + 1,
                      [list(r) + [bv] for r, bv in zip(m.entries, b)])
    red, pivots = _echelonize(aug)
    if m.cols in pivots:
        raise NoSolutionError("right-hand side outside the column space")
    x = [m.ctx.zero()] * m.cols
    for prow, col in enumerate(pivots):
        x[col] = red.entries[prow][m.cols]
    return x


def nullspace(m: FieldMatrix) -> list:
    """A deterministic basis of {x : m x = 0}.

    Reduced-echelon parametrization: one vector per free column, taken in
    index order, with a 1 in the free coordinate.
    """
    red, pivots = _echelonize(m)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    basis = []
    one = m.ctx.one()
    zero = m.ctx.zero()
    for j in free:
        vec = [zero] * m.cols
        vec[j] = one
        for prow, col in enumerate(pivots):
            vec[col] = -red.entries[prow][j]
        basis.append(vec)
    return basis


def determinant(m: FieldMatrix) -> FieldValue:
    assert m.rows == m.cols
    a = m.copy()
    det = m.ctx.one()
    sign = False
    for col in range(a.cols):
        sel = None
        for i in range(col, a.rows):
            if not a.entries[i][col].is_zero():
                sel = i
                break
        if sel is None:
            return m.ctx.zero()
        if sel != col:
            a.entries[col], a.entries[sel] = a.entries[sel], a.entries[col]
            sign = not sign
        piv = a.entries[col][col]
        det = det * piv
        inv = piv.inverse()
        for i in range(col + 1, a.rows):
            if a.entries[i][col].is_zero():
                continue
            f = a.entries[i][col] * inv
            a.entries[i] = [x - f * y for x, y in
                            zip(a.entries[i], a.entries[col])]
    return -det if sign else det


def invert(m: FieldMatrix) -> FieldMatrix:
    assert m.rows == m.cols
    n = m.rows
    aug = FieldMatrix(m.ctx, n, 2 * n,
                      [list(r) + list(e) for r, e in
                       zip(m.entries, FieldMatrix.identity(m.ctx, n).entries)])
    red, pivots = _echelonize(aug)
    if pivots[:n] != list(range(n)):
        raise NoSolutionError("matrix not invertible")
    return FieldMatrix(m.ctx, n, n, [r[n:] for r in red.entries])


# -- Laurent matrices and Hermite column reduction ---------------------------

@dataclass
class LaurentMatrix:
    """A dense matrix with LaurentPoly entries (coefficients in Q)."""

    rows: int
    cols: int
    entries: list  # list of lists of LaurentPoly

    @staticmethod
    def from_rows(rows: list) -> "LaurentMatrix":
        r = len(rows)
        c = len(rows[0]) if rows else 0
        return LaurentMatrix(r, c, [list(row) for row in rows])

    @staticmethod
    def zero(rows: int, cols: int) -> "LaurentMatrix":
        z = LaurentPoly.zero()
        return LaurentMatrix(rows, cols, [[z] * cols for _ in range(rows)])

    @staticmethod
    def identity(n: int) -> "LaurentMatrix":
        m = LaurentMatrix.zero(n, n)
        for i in range(n):
            m.entries[i][i] = LaurentPoly.one()
        return m

    def column(self, j: int) -> list:
        return [self.entries[i][j] for i in range(self.rows)]

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix(self.cols, self.rows,
                             [[self.entries[i][j] for i in range(self.rows)]
                              for j in range(self.cols)])

    def __mul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        assert self.cols == other.rows
        z = LaurentPoly.zero()
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a.is_zero():
                        continue
                    b = other.entries[k][j]
                    if b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return LaurentMatrix(self.rows, other.cols, out)

    def to_field(self, ctx: FieldContext) -> FieldMatrix:
        return FieldMatrix(ctx, self.rows, self.cols,
                           [[ctx.from_laurent(p) for p in row]
                            for row in self.entries])

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and \
            all(a == b for r1, r2 in zip(self.entries, other.entries)
                for a, b in zip(r1, r2))


def hnf_column_basis(g: LaurentMatrix) -> tuple[LaurentMatrix, LaurentMatrix]:
    """Column basis of the Q[v,v^-1]-module generated by the columns of g.

    Returns (basis, transform): the basis columns are Q[v,v^-1]-linearly
    independent, generate the same column module as g, and are in column
    echelon form with pivot rows strictly increasing; transform satisfies
    basis = g * transform exactly.  Pivot entries are unit-normalized
    (lowest exponent 0, leading coefficient 1) and entries to the left of
    each pivot are reduced modulo it, so the output is canonical.
    """
    ncols = g.cols
    work = [(g.column(j), _unit_column(ncols, j)) for j in range(ncols)]
    basis_cols: list = []
    combo_cols: list = []
    for row in range(g.rows):
        live = [wc for wc in work if not wc[0][row].is_zero()]
        if not live:
            continue
        # Euclidean elimination at this row among the live columns
        while len(live) > 1:
            live.sort(key=lambda wc: wc[0][row].span)
            piv_col, piv_combo = live[0]
            piv = piv_col[row]
            rest = []
            for col, combo in live[1:]:
                q, _ = laurent_divmod(col[row], piv)
                col = [a - q * b for a, b in zip(col, piv_col)]
                combo = [a - q * b for a, b in zip(combo, piv_combo)]
                if not col[row].is_zero():
                    rest.append((col, combo))
                else:
                    work.append((col, combo))
            live = [(piv_col, piv_combo)] + rest
        (col, combo) = live[0]
        work = [wc for wc in work if wc[0][row].is_zero()]
        # unit-normalize the pivot entry
        _, unit = col[row].unit_normalize()
        inv = LaurentPoly({-unit.min_exp:
                           1 / Fraction(unit.coeffs[unit.min_exp])})
        col = [c * inv for c in col]
        combo = [c * inv for c in combo]
        basis_cols.append((row, col))
        combo_cols.append(combo)
    # back-reduce: entries of earlier columns at later pivot rows
    for j in range(len(basis_cols)):
        for k in range(j + 1, len(basis_cols)):
            prow, pcol = basis_cols[k]
            q, _ = laurent_divmod(basis_cols[j][1][prow], pcol[prow])
            if q.is_zero():
                continue
            basis_cols[j] = (basis_cols[j][0],
                             [a - q * b for a, b in zip(basis_cols[j][1], pcol)])
            combo_cols[j] = [a - q * b for a, b in
                             zip(combo_cols[j], combo_cols[k])]
    basis = LaurentMatrix(g.rows, len(basis_cols),
                          [[basis_cols[j][1][i] for j in range(len(basis_cols))]
                           for i in range(g.rows)])
    transform = LaurentMatrix(ncols, len(combo_cols),
                              [[combo_cols[j][i] for j in range(len(combo_cols))]
                               for i in range(ncols)])
    return basis, transform


def _unit_column(n: int, j: int) -> list:
    col = [LaurentPoly.zero()] * n
    col[j] = LaurentPoly.one()
    return col


def express_in_column_basis(basis: LaurentMatrix, y: list) -> list:
    """Coefficients of column y over an echelon column basis, by successive
    Euclidean division; raises ExactDivisionError if y is outside the module.
    """
    y = list(y)
    coeffs = []
    pivot_rows = []
    for j in range(basis.cols):
        for i in range(basis.rows):
            if not basis.entries[i][j].is_zero():
                pivot_rows.append(i)
                break
        else:
            raise ValueError("zero basis column")
    for j in range(basis.cols):
        r = pivot_rows[j]
        c = laurent_exact_div(y[r], basis.entries[r][j])
        coeffs.append(c)
        if not c.is_zero():
            y = [a - c * b for a, b in zip(y, basis.column(j))]
    if any(not a.is_zero() for a in y):
        raise ExactDivisionError("column outside the generated module")
    return coeffs


def laurent_determinant(m: LaurentMatrix) -> LaurentPoly:
    """Exact determinant of a square Laurent matrix (via Q(v) elimination)."""
    ctx = FieldContext.generic()
    d = determinant(m.to_field(ctx))
    return d.data.to_laurent()
