"""Cell modules Delta(lambda): word enumeration, Gram matrices, bases,
and exact generator action matrices.

Each weight space carries the overcomplete list of alive divided words,
its Gram matrix under the contravariant form, a deterministic generic
basis (greedy word selection over Q(v)), and on demand an integral basis
of the Q[v,v^-1]-lattice extracted by Hermite column reduction of the
Gram matrix.  Vectors are re-expressed through Gram solves; the ambient
algebra is never materialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import CoordinateFailureError, RankMismatchError
from .linalg import FieldMatrix, LaurentMatrix, hnf_column_basis, invert
from .rootdata import RootDatum, Weight
from .scalars import FieldContext, LaurentPoly
from .straighten import (
    EMPTY_WORD,
    ModuleContext,
    Word,
    concat_divided_vector,
    gram_entry,
    push_E_through_vector,
)

GENERIC = FieldContext.generic()


def enumerate_words(ctx: ModuleContext) -> dict:
    """All alive divided words of Delta(lambda), grouped by weight.

    Depth-first search pruned the moment a prefix weight leaves
    W pi_lambda; each group is sorted by (length, factor sequence).
    """
    by_weight: dict = {}
    max_depth = ctx.max_depth

    def visit(word: Word, depth: int):
        by_weight.setdefault(ctx.weight_of(word), []).append(word)
        last = word[-1][0] if word else None
        for i in range(ctx.datum.rank):
            if i == last:
                continue
            for a in range(1, max_depth - depth + 1):
                w2 = word + ((i, a),)
                if ctx.weight_of(w2) in ctx.weights:
                    visit(w2, depth + a)

    visit(EMPTY_WORD, 0)
    for group in by_weight.values():
        group.sort(key=lambda w: (len(w), w))
    return by_weight


@dataclass
class IntegralData:
    """An A-basis of a weight-space lattice (A = Q[v,v^-1]).

    combos[j] expresses the j-th basis vector as a combination of words;
    hnf_basis and transform are the Hermite certificate (hnf_basis =
    gram * transform); gram is the Gram matrix in the integral basis.
    """

    combos: tuple
    hnf_basis: LaurentMatrix
    transform: LaurentMatrix
    gram: LaurentMatrix


@dataclass
class WeightSpaceData:
    """One weight space of Delta(lambda)."""

    mu: Weight
    words: tuple
    gram: LaurentMatrix
    generic_basis: tuple  # indices into words
    rank: int
    integral: Optional[IntegralData] = None


class CellModule:
    """Delta(lambda) with exact structure constants.

    The generic basis vectors are divided words; coordinates of arbitrary
    word vectors are extracted against the weight-space Gram matrices,
    which is valid because the contravariant form is nondegenerate.
    """

    def __init__(self, datum: RootDatum, lam: Weight):
        lam = tuple(lam)
        self.datum = datum
        self.lam = lam
        self.ctx = ModuleContext(datum, lam)
        char = datum.freudenthal_character(lam)
        by_weight = enumerate_words(self.ctx)
        if set(by_weight) != set(char):
            raise RankMismatchError(
                "word support does not match the character oracle at %r" % (lam,))
        # weights sorted by depth below lambda, then lexicographically,
        # so the x0 space comes first
        self.weights = tuple(sorted(
            by_weight,
            key=lambda mu: (self._height(mu), mu)))
        self.spaces: dict = {}
        for mu in self.weights:
            words = tuple(by_weight[mu])
            gram = self._build_gram(words)
            basis = self._generic_basis(gram)
            if len(basis) != char[mu]:
                raise RankMismatchError(
                    "Gram rank %d != multiplicity %d at weight %r of %r"
                    % (len(basis), char[mu], mu, lam))
            self.spaces[mu] = WeightSpaceData(mu, words, gram, basis, len(basis))
        self.dim = sum(sp.rank for sp in self.spaces.values())
        self._offsets = {}
        off = 0
        for mu in self.weights:
            self._offsets[mu] = off
            off += self.spaces[mu].rank
        self.basis_index = tuple(
            (mu, self.spaces[mu].words[k])
            for mu in self.weights for k in self.spaces[mu].generic_basis)
        self._gram_inv_cache: dict = {}
        self._action_cache: dict = {}
        self._int_gram_inv_cache: dict = {}
        self._int_action_cache: dict = {}
        self._int_offsets = None

    def _height(self, mu: Weight) -> int:
        coords = self.datum.alpha_coords(
            tuple(a - b for a, b in zip(self.lam, mu)))
        return int(sum(coords))

    def _build_gram(self, words: tuple) -> LaurentMatrix:
        n = len(words)
        entries = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                e = gram_entry(self.ctx, words[i], words[j])
                entries[i][j] = e
                entries[j][i] = e
        return LaurentMatrix(n, n, entries)

    def _generic_basis(self, gram: LaurentMatrix) -> tuple:
        """Greedy: keep a word when its Gram column grows the column rank."""
        n = gram.cols
        picked = []
        reduced = []  # list of (pivot_row, column over Q(v))
        for j in range(n):
            col = [GENERIC.from_laurent(gram.entries[i][j]) for i in range(n)]
            for prow, pcol in reduced:
                if not col[prow].is_zero():
                    f = col[prow] / pcol[prow]
                    col = [a - f * b for a, b in zip(col, pcol)]
            pivot = next((i for i in range(n) if not col[i].is_zero()), None)
            if pivot is not None:
                reduced.append((pivot, col))
                picked.append(j)
        return tuple(picked)

    # -- generic coordinates -------------------------------------------------

    def offset(self, mu: Weight) -> int:
        return self._offsets[mu]

    def _gram_sub_inverse(self, mu: Weight) -> FieldMatrix:
        cached = self._gram_inv_cache.get(mu)
        if cached is None:
            sp = self.spaces[mu]
            sub = FieldMatrix.from_rows(GENERIC, [
                [GENERIC.from_laurent(sp.gram.entries[i][j])
                 for j in sp.generic_basis] for i in sp.generic_basis])
            cached = invert(sub)
            self._gram_inv_cache[mu] = cached
        return cached

    def coordinates(self, mu: Weight, vec: dict) -> list:
        """Coordinates of a word vector of weight mu in the generic basis,
        via the Gram solve (nondegeneracy of the contravariant form)."""
        sp = self.spaces.get(mu)
        if sp is None:
            if vec:
                raise CoordinateFailureError("vector at absent weight %r" % (mu,))
            return []
        index = {w: k for k, w in enumerate(sp.words)}
        rhs = []
        for bi in sp.generic_basis:
            acc = GENERIC.zero()
            for w, coeff in vec.items():
                acc = acc + GENERIC.from_laurent(
                    sp.gram.entries[bi][index[w]] * coeff)
            rhs.append(acc)
        return self._gram_sub_inverse(mu).apply(rhs)

    # -- generator action ----------------------------------------------------

    def action_matrix(self, symbol: tuple) -> FieldMatrix:
        """Matrix of a generator over Q(v) in the generic basis.

        symbol is ("F", i, a), ("E", i, a) or ("P", mu) for the weight
        projector 1_mu.
        """
        cached = self._action_cache.get(symbol)
        if cached is not None:
            return cached
        m = FieldMatrix.zero(GENERIC, self.dim, self.dim)
        if symbol[0] == "P":
            mu = tuple(symbol[1])
            sp = self.spaces.get(mu)
            if sp is not None:
                off = self._offsets[mu]
                one = GENERIC.one()
                for k in range(sp.rank):
                    m.entries[off + k][off + k] = one
        elif symbol[2] == 0:
            m = FieldMatrix.identity(GENERIC, self.dim)  # F^{(0)} = E^{(0)} = 1
        else:
            kind, i, a = symbol
            col = 0
            for mu in self.weights:
                sp = self.spaces[mu]
                shift = tuple((1 if kind == "E" else -1) * a * x
                              for x in self.datum.alpha[i])
                target = tuple(p + s for p, s in zip(mu, shift))
                for k in sp.generic_basis:
                    word = sp.words[k]
                    if kind == "F":
                        vec = concat_divided_vector(
                            self.ctx, i, a, {word: LaurentPoly.one()})
                    else:
                        vec = push_E_through_vector(
                            self.ctx, i, a, {word: LaurentPoly.one()})
                    if vec:
                        coords = self.coordinates(target, vec)
                        toff = self._offsets[target]
                        for r, c in enumerate(coords):
                            m.entries[toff + r][col] = c
                    col += 1
        self._action_cache[symbol] = m
        return m

    def character(self) -> dict:
        return {mu: self.spaces[mu].rank for mu in self.weights}

    # -- integral lattice ----------------------------------------------------

    def ensure_integral(self) -> None:
        """Extract an A-basis of every weight-space lattice (lazy; HNF is
        the expensive step)."""
        for mu in self.weights:
            sp = self.spaces[mu]
            if sp.integral is not None:
                continue
            basis_mat, transform = hnf_column_basis(sp.gram)
            if basis_mat.cols != sp.rank:
                raise RankMismatchError(
                    "integral rank %d != generic rank %d at %r"
                    % (basis_mat.cols, sp.rank, mu))
            combos = []
            for j in range(transform.cols):
                combo = tuple(
                    (sp.words[k], transform.entries[k][j])
                    for k in range(len(sp.words))
                    if not transform.entries[k][j].is_zero())
                combos.append(combo)
            tg = transform.transpose() * sp.gram * transform
            sp.integral = IntegralData(tuple(combos), basis_mat, transform, tg)

    def integral_offsets(self) -> dict:
        if self._int_offsets is None:
            self.ensure_integral()
            off = 0
            out = {}
            for mu in self.weights:
                out[mu] = off
                off += self.spaces[mu].rank
            self._int_offsets = out
        return self._int_offsets

    def _integral_gram_inverse(self, mu: Weight) -> FieldMatrix:
        cached = self._int_gram_inv_cache.get(mu)
        if cached is None:
            sp = self.spaces[mu]
            cached = invert(sp.integral.gram.to_field(GENERIC))
            self._int_gram_inv_cache[mu] = cached
        return cached

    def integral_coordinates(self, mu: Weight, vec: dict) -> list:
        """Coordinates of a word vector in the integral basis; entries lie
        in Q[v,v^-1] whenever the vector lies in the lattice."""
        sp = self.spaces.get(mu)
        if sp is None:
            if vec:
                raise CoordinateFailureError("vector at absent weight %r" % (mu,))
            return []
        index = {w: k for k, w in enumerate(sp.words)}
        # rhs_k = phi(y_k, vec) = (T^t G imgvec)_k
        img = [LaurentPoly.zero()] * len(sp.words)
        for w, coeff in vec.items():
            img[index[w]] = coeff
        gi = []
        for r in range(len(sp.words)):
            acc = LaurentPoly.zero()
            for k, c in enumerate(img):
                if not c.is_zero():
                    acc = acc + sp.gram.entries[r][k] * c
            gi.append(acc)
        t = sp.integral.transform
        rhs = []
        for j in range(t.cols):
            acc = LaurentPoly.zero()
            for r in range(t.rows):
                if not t.entries[r][j].is_zero() and not gi[r].is_zero():
                    acc = acc + t.entries[r][j] * gi[r]
            rhs.append(GENERIC.from_laurent(acc))
        coords = self._integral_gram_inverse(mu).apply(rhs)
        out = []
        for c in coords:
            rf = c.data
            if not rf.is_laurent():
                raise CoordinateFailureError(
                    "lattice coordinate %s is not integral" % rf)
            out.append(rf.to_laurent())
        return out

    def integral_action_matrix(self, symbol: tuple) -> LaurentMatrix:
        """Matrix of a divided-power generator in the integral basis;
        entries lie in Q[v,v^-1] because generators preserve the lattice."""
        cached = self._int_action_cache.get(symbol)
        if cached is not None:
            return cached
        self.ensure_integral()
        offsets = self.integral_offsets()
        m = LaurentMatrix.zero(self.dim, self.dim)
        if symbol[0] == "P":
            mu = tuple(symbol[1])
            sp = self.spaces.get(mu)
            if sp is not None:
                off = offsets[mu]
                for k in range(sp.rank):
                    m.entries[off + k][off + k] = LaurentPoly.one()
        elif symbol[2] == 0:
            m = LaurentMatrix.identity(self.dim)
        else:
            kind, i, a = symbol
            col = 0
            for mu in self.weights:
                sp = self.spaces[mu]
                shift = tuple((1 if kind == "E" else -1) * a * x
                              for x in self.datum.alpha[i])
                target = tuple(p + s for p, s in zip(mu, shift))
                for combo in sp.integral.combos:
                    vec = {w: c for w, c in combo}
                    if kind == "F":
                        vec = concat_divided_vector(self.ctx, i, a, vec)
                    else:
                        vec = push_E_through_vector(self.ctx, i, a, vec)
                    if vec:
                        coords = self.integral_coordinates(target, vec)
                        toff = offsets[target]
                        for r, c in enumerate(coords):
                            m.entries[toff + r][col] = c
                    col += 1
        self._int_action_cache[symbol] = m
        return m


def build_cell_module(datum: RootDatum, lam: Weight) -> CellModule:
    return CellModule(datum, lam)
