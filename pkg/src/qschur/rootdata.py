"""Root data, Weyl group combinatorics, and character oracles.

Weights are plain integer tuples in the coordinate system of X.  Presets
realize the simply connected datum: X = Z^r with fundamental-weight
coordinates, so <alpha_i^vee, mu> = mu_i and alpha_j has coordinates
(a_ij)_i.  Arbitrary root data are accepted through explicit matrices.

The character side carries two independent oracles: Freudenthal's
multiplicity recursion and the Weyl dimension product formula.  Their
agreement is one of the engine's standing cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Optional

from .errors import (
    NonDominantSeedError,
    NotFiniteTypeError,
    PairingMismatchError,
)

Weight = tuple  # tuple[int, ...] in X coordinates


@dataclass(frozen=True)
class CartanDatum:
    """A finite-type Cartan datum (I, .) with I = range(r).

    dot is the symmetric matrix (i.j); d_i = (i.i)/2 is the symmetrizer,
    and a_ij = (i.j)/d_i is the Cartan matrix.
    """

    dot: tuple  # tuple of tuples of ints

    def __post_init__(self):
        r = len(self.dot)
        for i in range(r):
            if len(self.dot[i]) != r:
                raise ValueError("dot matrix not square")
            if self.dot[i][i] <= 0 or self.dot[i][i] % 2:
                raise NotFiniteTypeError("i.i must lie in {2,4,6,...}")
            for j in range(r):
                if self.dot[i][j] != self.dot[j][i]:
                    raise NotFiniteTypeError("dot matrix not symmetric")
                if i != j:
                    a = Fraction(2 * self.dot[i][j], self.dot[i][i])
                    if a > 0 or a.denominator != 1:
                        raise NotFiniteTypeError(
                            "2(i.j)/(i.i) must be a nonpositive integer")
        if not _positive_definite(self.dot):
            raise NotFiniteTypeError("symmetrized Cartan matrix not positive definite")

    @property
    def rank(self) -> int:
        return len(self.dot)

    @property
    def d(self) -> tuple:
        return tuple(self.dot[i][i] // 2 for i in range(self.rank))

    def cartan_matrix(self) -> tuple:
        d = self.d
        return tuple(tuple(self.dot[i][j] // d[i] for j in range(self.rank))
                     for i in range(self.rank))


def _positive_definite(dot) -> bool:
    """Leading principal minors of the (integer) symmetric matrix."""
    n = len(dot)
    for k in range(1, n + 1):
        m = [[Fraction(dot[i][j]) for j in range(k)] for i in range(k)]
        det = Fraction(1)
        for c in range(k):
            piv = None
            for i in range(c, k):
                if m[i][c]:
                    piv = i
                    break
            if piv is None:
                return False
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = -det
            det *= m[c][c]
            for i in range(c + 1, k):
                f = m[i][c] / m[c][c]
                if f:
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        if det <= 0:
            return False
    return True


class RootDatum:
    """A root datum (X, Pi, X^vee, Pi^vee) of finite type.

    alpha[i] and alphav[i] are the coordinate vectors of the simple roots
    and coroots; the pairing <h, mu> is the standard dot product of
    coordinate vectors.  Immutable; the orbit machinery caches eagerly at
    construction (positive roots, Weyl order), characters per weight on
    first request.
    """

    def __init__(self, cartan: CartanDatum, n: int, alpha: tuple, alphav: tuple,
                 name: str = "explicit"):
        self.cartan = cartan
        self.n = n
        self.alpha = tuple(tuple(v) for v in alpha)
        self.alphav = tuple(tuple(v) for v in alphav)
        self.name = name
        r = cartan.rank
        a = cartan.cartan_matrix()
        for i in range(r):
            for j in range(r):
                if _dot(self.alphav[i], self.alpha[j]) != a[i][j]:
                    raise PairingMismatchError(
                        "<alpha_%d^vee, alpha_%d> != a_%d%d" % (i, j, i, j))
        self.d = cartan.d
        self._char_cache: dict = {}
        self._orbit_cache: dict = {}
        self._alpha_solver = _make_alpha_solver(self.alpha, n)
        self.positive_roots = self._find_positive_roots()
        self.weyl_order = self._weyl_order()

    @property
    def rank(self) -> int:
        return self.cartan.rank

    # -- the basic action ---------------------------------------------------

    def pairing(self, i: int, mu: Weight) -> int:
        """<alpha_i^vee, mu>."""
        return _dot(self.alphav[i], mu)

    def reflect(self, i: int, mu: Weight) -> Weight:
        """s_i(mu) = mu - <alpha_i^vee, mu> alpha_i."""
        c = self.pairing(i, mu)
        if c == 0:
            return tuple(mu)
        return tuple(m - c * a for m, a in zip(mu, self.alpha[i]))

    def is_dominant(self, mu: Weight) -> bool:
        return all(self.pairing(i, mu) >= 0 for i in range(self.rank))

    def weyl_orbit(self, mu: Weight) -> frozenset:
        mu = tuple(mu)
        cached = self._orbit_cache.get(mu)
        if cached is not None:
            return cached
        seen = {mu}
        frontier = [mu]
        while frontier:
            nxt = []
            for w in frontier:
                for i in range(self.rank):
                    w2 = self.reflect(i, w)
                    if w2 not in seen:
                        seen.add(w2)
                        nxt.append(w2)
            frontier = nxt
        out = frozenset(seen)
        self._orbit_cache[mu] = out
        return out

    def dominant_representative(self, mu: Weight) -> tuple:
        """The dominant weight in W mu, and a word (j_1,...,j_k) such that
        mu = s_{j_k}(... s_{j_1}(mu+) ...), i.e. the reflections carry mu+
        to mu when applied in list order.  The word is reduced, with every
        straightening exponent positive.
        """
        nu = tuple(mu)
        word = []
        while True:
            for i in range(self.rank):
                if self.pairing(i, nu) < 0:
                    word.append(i)
                    nu = self.reflect(i, nu)
                    break
            else:
                break
        word.reverse()
        return nu, tuple(word)

    def w0(self, mu: Weight) -> Weight:
        """Image of mu under the longest Weyl element."""
        plus, _ = self.dominant_representative(tuple(-x for x in mu))
        return tuple(-x for x in plus)

    def alpha_coords(self, nu: Weight):
        """Coefficients c with nu = sum c_j alpha_j, or None if outside the
        root space; exact rationals."""
        return self._alpha_solver(nu)

    def dominance_leq(self, mu: Weight, lam: Weight) -> bool:
        """mu <= lam in dominance: lam - mu is a nonnegative integral
        combination of simple roots."""
        diff = tuple(a - b for a, b in zip(lam, mu))
        coords = self.alpha_coords(diff)
        if coords is None:
            return False
        return all(c.denominator == 1 and c >= 0 for c in coords)

    # -- eager caches -------------------------------------------------------

    def _find_positive_roots(self) -> tuple:
        roots = set()
        for i in range(self.rank):
            roots |= self.weyl_orbit(self.alpha[i])
        pos = []
        for rt in roots:
            coords = self.alpha_coords(rt)
            assert coords is not None
            if all(c >= 0 for c in coords):
                pos.append((rt, tuple(int(c) for c in coords)))
        pos.sort(key=lambda rc: (sum(rc[1]), rc[0]))
        return tuple(pos)

    def _weyl_order(self) -> int:
        # orbit of a strictly dominant weight in the root lattice is regular
        a = self.cartan.cartan_matrix()
        c = _solve_unit_columns(a)
        denom = lcm(*(x.denominator for x in c)) if c else 1
        probe = tuple(sum(int(c[j] * denom) * self.alpha[j][k]
                          for j in range(self.rank))
                      for k in range(self.n))
        return len(self.weyl_orbit(probe))

    # -- character oracles --------------------------------------------------

    def _form(self, coeffs: tuple, mu: Weight) -> int:
        """(nu, mu) where nu = sum c_j alpha_j, via (alpha_j, mu) = d_j <alpha_j^vee, mu>."""
        return sum(c * dj * self.pairing(j, mu)
                   for j, (c, dj) in enumerate(zip(coeffs, self.d)) if c)

    def freudenthal_character(self, lam: Weight) -> dict:
        """Weight multiplicities of the irreducible of highest weight lam,
        by Freudenthal's recursion.  Exact; keys are weights, values
        positive ints."""
        lam = tuple(lam)
        if not self.is_dominant(lam):
            raise NonDominantSeedError("highest weight must be dominant")
        cached = self._char_cache.get(lam)
        if cached is not None:
            return dict(cached)
        bounds = self._predecessor_box(lam)
        # enumerate the box lam - sum n_j alpha_j by increasing height
        by_height: dict = {}
        for n_vec in _box(bounds):
            h = sum(n_vec)
            mu = tuple(lam[k] - sum(n_vec[j] * self.alpha[j][k]
                                    for j in range(self.rank))
                       for k in range(self.n))
            by_height.setdefault(h, []).append(mu)
        mult: dict = {}
        for h in sorted(by_height):
            for mu in sorted(by_height[h]):
                if h == 0:
                    mult[mu] = 1
                    continue
                # c = (lam+rho, lam+rho) - (mu+rho, mu+rho) = (lam+mu+2rho, lam-mu)
                diff = tuple(a - b for a, b in zip(lam, mu))
                dcoords = tuple(int(x) for x in self.alpha_coords(diff))
                c = sum(nj * dj * (self.pairing(j, lam) + self.pairing(j, mu) + 2)
                        for j, (nj, dj) in enumerate(zip(dcoords, self.d)) if nj)
                acc = 0
                for rt, rc in self.positive_roots:
                    ht = sum(rc)
                    for k in range(1, h // ht + 1):
                        nu = tuple(m + k * r for m, r in zip(mu, rt))
                        m_nu = mult.get(nu, 0)
                        if m_nu:
                            acc += m_nu * (self._form(rc, mu) + k * self._form(rc, rt))
                if c == 0:
                    assert acc == 0, "Freudenthal inconsistency"
                    continue
                q, rem = divmod(2 * acc, c)
                assert rem == 0 and q >= 0, "Freudenthal inconsistency"
                if q:
                    mult[mu] = q
        self._char_cache[lam] = dict(mult)
        return dict(mult)

    def weyl_dimension(self, lam: Weight) -> int:
        """dim of the irreducible of highest weight lam by the Weyl product
        formula prod (lam+rho, alpha)/(rho, alpha); independent of the
        Freudenthal recursion."""
        lam = tuple(lam)
        if not self.is_dominant(lam):
            raise NonDominantSeedError("highest weight must be dominant")
        num = Fraction(1)
        for _, rc in self.positive_roots:
            top = sum(c * dj * (self.pairing(j, lam) + 1)
                      for j, (c, dj) in enumerate(zip(rc, self.d)))
            bot = sum(c * dj for j, (c, dj) in enumerate(zip(rc, self.d)))
            num *= Fraction(top, bot)
        assert num.denominator == 1
        return int(num)

    def _predecessor_box(self, lam: Weight) -> tuple:
        """Per-coordinate bounds m with lam - w0(lam) = sum m_j alpha_j;
        every dominant mu <= lam lies in the resulting box."""
        diff = tuple(a - b for a, b in zip(lam, self.w0(lam)))
        coords = self.alpha_coords(diff)
        assert coords is not None
        out = []
        for c in coords:
            assert c.denominator == 1 and c >= 0
            out.append(int(c))
        return tuple(out)

    def __repr__(self):
        return "RootDatum(%s, rank %d)" % (self.name, self.rank)


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _box(bounds) -> Iterable[tuple]:
    if not bounds:
        yield ()
        return
    for head in range(bounds[0] + 1):
        for tail in _box(bounds[1:]):
            yield (head,) + tail


def _make_alpha_solver(alpha: tuple, n: int):
    """Precompute an echelon solve for nu = sum c_j alpha_j over Q."""
    r = len(alpha)
    # columns are the alpha vectors
    rows = [[Fraction(alpha[j][k]) for j in range(r)] for k in range(n)]

    def solver(nu):
        m = [row[:] + [Fraction(v)] for row, v in zip(rows, nu)]
        piv_cols = []
        prow = 0
        for col in range(r):
            sel = None
            for i in range(prow, n):
                if m[i][col]:
                    sel = i
                    break
            if sel is None:
                continue
            m[prow], m[sel] = m[sel], m[prow]
            inv = 1 / m[prow][col]
            m[prow] = [x * inv for x in m[prow]]
            for i in range(n):
                if i != prow and m[i][col]:
                    f = m[i][col]
                    m[i] = [x - f * y for x, y in zip(m[i], m[prow])]
            piv_cols.append(col)
            prow += 1
        sol = [Fraction(0)] * r
        for p, col in enumerate(piv_cols):
            sol[col] = m[p][r]
        # consistency: rows without pivots must have zero RHS
        for i in range(prow, n):
            if m[i][r]:
                return None
        return tuple(sol)

    return solver


def _solve_unit_columns(a) -> list:
    """Solve A c = (1,...,1) over Q for a finite-type Cartan matrix A."""
    r = len(a)
    m = [[Fraction(a[i][j]) for j in range(r)] + [Fraction(1)] for i in range(r)]
    for col in range(r):
        sel = next(i for i in range(col, r) if m[i][col])
        m[col], m[sel] = m[sel], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for i in range(r):
            if i != col and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return [m[i][r] for i in range(r)]


# -- presets -----------------------------------------------------------------

def _preset_cartan(series: str, r: int) -> tuple:
    """(cartan matrix, d vector) for the standard series."""
    if r < 1:
        raise ValueError("rank must be positive")

    def chain(rnk):
        return [[2 if i == j else (-1 if abs(i - j) == 1 else 0)
                 for j in range(rnk)] for i in range(rnk)]

    if series == "A":
        return chain(r), [1] * r
    if series == "B":
        if r < 2:
            raise ValueError("B requires rank >= 2")
        a = chain(r)
        a[r - 1][r - 2] = -2  # short alpha_r; its row carries the -2
        return a, [2] * (r - 1) + [1]
    if series == "C":
        if r < 2:
            raise ValueError("C requires rank >= 2")
        a = chain(r)
        a[r - 2][r - 1] = -2
        return a, [1] * (r - 1) + [2]
    if series == "D":
        if r < 3:
            raise ValueError("D requires rank >= 3")
        a = chain(r)
        a[r - 1][r - 2] = a[r - 2][r - 1] = 0
        a[r - 1][r - 3] = a[r - 3][r - 1] = -1
        return a, [1] * r
    if series == "E":
        if r not in (6, 7, 8):
            raise ValueError("E requires rank 6, 7 or 8")
        # Bourbaki: chain 1-3-4-5-...-r with node 2 attached to node 4
        a = [[2 if i == j else 0 for j in range(r)] for i in range(r)]
        edges = [(0, 2), (1, 3)] + [(k, k + 1) for k in range(2, r - 1)]
        for i, j in edges:
            a[i][j] = a[j][i] = -1
        return a, [1] * r
    if series == "F":
        if r != 4:
            raise ValueError("F requires rank 4")
        a = chain(4)
        a[2][1] = -2  # short alpha_3 adjacent to long alpha_2
        a[1][2] = -1
        return a, [2, 2, 1, 1]
    if series == "G":
        if r != 2:
            raise ValueError("G requires rank 2")
        return [[2, -3], [-1, 2]], [1, 3]
    raise ValueError("unknown series %r" % series)


def _parse_preset(name: str) -> list:
    """Parse e.g. 'A2', 'B3', 'A1xA1' into [(series, rank), ...]."""
    parts = name.replace(" ", "").split("x")
    out = []
    for part in parts:
        if len(part) < 2 or part[0].upper() not in "ABCDEFG":
            raise ValueError("bad preset %r" % name)
        out.append((part[0].upper(), int(part[1:])))
    return out


def build_root_datum(preset: Optional[str] = None, rank: Optional[int] = None,
                     cartan=None, alpha=None, alphav=None) -> RootDatum:
    """Construct a root datum from a preset name or explicit matrices.

    Presets ("A2", "B3", ..., products like "A1xA1"; or series letter plus
    separate rank) realize the simply connected datum.  Explicit input
    takes the Cartan matrix plus alpha/alphav coordinate rows and derives
    the minimal symmetrizer; the pairing axiom is checked.
    """
    if preset is not None:
        if rank is not None and len(preset) == 1:
            preset = "%s%d" % (preset, rank)
        factors = _parse_preset(preset)
        blocks = [_preset_cartan(s, r) for s, r in factors]
        total = sum(r for _, r in factors)
        a = [[0] * total for _ in range(total)]
        d = []
        off = 0
        for (block_a, block_d), (_, r) in zip(blocks, factors):
            for i in range(r):
                for j in range(r):
                    a[off + i][off + j] = block_a[i][j]
            d.extend(block_d)
            off += r
        dot = tuple(tuple(d[i] * a[i][j] for j in range(total)) for i in range(total))
        cd = CartanDatum(dot)
        alpha_vecs = tuple(tuple(a[i][j] for i in range(total)) for j in range(total))
        alphav_vecs = tuple(tuple(1 if i == j else 0 for i in range(total))
                            for j in range(total))
        return RootDatum(cd, total, alpha_vecs, alphav_vecs, name=preset)

    if cartan is None or alpha is None or alphav is None:
        raise ValueError("need a preset or explicit cartan/alpha/alphav")
    a = [list(map(int, row)) for row in cartan]
    d = _minimal_symmetrizer(a)
    dot = tuple(tuple(d[i] * a[i][j] for j in range(len(a))) for i in range(len(a)))
    cd = CartanDatum(dot)
    n = len(alpha[0])
    return RootDatum(cd, n, tuple(map(tuple, alpha)), tuple(map(tuple, alphav)))


def _minimal_symmetrizer(a) -> list:
    """Minimal positive integers d with d_i a_ij = d_j a_ji (per component)."""
    r = len(a)
    d = [None] * r
    for start in range(r):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(r):
                if i != j and a[i][j]:
                    val = d[i] * Fraction(a[i][j], a[j][i])
                    if d[j] is None:
                        d[j] = val
                        stack.append(j)
                    elif d[j] != val:
                        raise NotFiniteTypeError("Cartan matrix is not symmetrizable")
    denom = lcm(*(x.denominator for x in d))
    ints = [int(x * denom) for x in d]
    g = reduce(gcd, ints)
    return [x // g for x in ints]


# -- saturated sets and flags ------------------------------------------------

@dataclass(frozen=True)
class SaturatedSet:
    """A finite saturated set of dominant weights, sorted lexicographically."""

    datum: RootDatum
    elements: tuple

    def __contains__(self, mu) -> bool:
        return tuple(mu) in set(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def orbit_weights(self) -> frozenset:
        """W pi: the union of the Weyl orbits of the elements."""
        out = set()
        for mu in self.elements:
            out |= self.datum.weyl_orbit(mu)
        return frozenset(out)


def saturate(datum: RootDatum, seeds) -> SaturatedSet:
    """Smallest saturated set containing the given dominant seeds."""
    found = set()
    for lam in seeds:
        lam = tuple(lam)
        if not datum.is_dominant(lam):
            raise NonDominantSeedError("seed %r is not dominant" % (lam,))
        if lam in found:
            continue
        bounds = datum._predecessor_box(lam)
        for n_vec in _box(bounds):
            mu = tuple(lam[k] - sum(n_vec[j] * datum.alpha[j][k]
                                    for j in range(datum.rank))
                       for k in range(datum.n))
            if datum.is_dominant(mu):
                found.add(mu)
    return SaturatedSet(datum, tuple(sorted(found)))


@dataclass(frozen=True)
class CosaturatedFlag:
    """A total order lam_1, ..., lam_m of a saturated set such that every
    prefix is successor-closed (lam_i > lam_j in dominance forces i < j)."""

    datum: RootDatum
    ordering: tuple

    def __iter__(self):
        return iter(self.ordering)

    def __len__(self):
        return len(self.ordering)

    def prefix(self, j: int) -> tuple:
        return self.ordering[:j]


def build_flag(pi: SaturatedSet) -> CosaturatedFlag:
    """Repeatedly remove the lexicographically least maximal element."""
    datum = pi.datum
    remaining = list(pi.elements)
    ordering = []
    while remaining:
        maximal = [mu for mu in remaining
                   if not any(nu != mu and datum.dominance_leq(mu, nu)
                              for nu in remaining)]
        pick = min(maximal)
        ordering.append(pick)
        remaining.remove(pick)
    return CosaturatedFlag(datum, tuple(ordering))
