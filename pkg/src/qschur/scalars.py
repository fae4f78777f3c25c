"""Exact scalar arithmetic.

Laurent polynomials in v with rational coefficients, rational functions
Q(v), quantum integers / factorials / binomials, and specialization of all
of these into characteristic-zero fields (Q(v) itself, Q at v = q, or the
cyclotomic field Q[v]/Phi_l(v)).  Everything is exact; there is no floating
point anywhere in this module or its consumers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Union

from .errors import DenominatorVanishes, ExactDivisionError

Rat = Union[int, Fraction]


class LaurentPoly:
    """A Laurent polynomial sum_e c_e v^e, stored as {exponent: coefficient}.

    Canonical form: no stored coefficient is zero.  Instances are treated as
    immutable; all operations return new objects.  Coefficients are ints or
    Fractions (ints are kept as ints for speed; the two compare and hash
    identically at equal values).
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Optional[dict] = None):
        d = {}
        if coeffs:
            for e, c in coeffs.items():
                if c:
                    d[e] = c
        self.coeffs = d
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return _ZERO

    @staticmethod
    def one() -> "LaurentPoly":
        return _ONE

    @staticmethod
    def const(c: Rat) -> "LaurentPoly":
        return LaurentPoly({0: c})

    @staticmethod
    def var(exp: int = 1, coeff: Rat = 1) -> "LaurentPoly":
        """c * v^exp."""
        return LaurentPoly({exp: coeff})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def min_exp(self) -> int:
        return min(self.coeffs)

    @property
    def max_exp(self) -> int:
        return max(self.coeffs)

    @property
    def span(self) -> int:
        """Euclidean norm on Q[v,v^-1]: highest minus lowest exponent."""
        return self.max_exp - self.min_exp

    def is_unit(self) -> bool:
        """Units of Q[v,v^-1] are the single terms c*v^k."""
        return len(self.coeffs) == 1

    def is_constant(self) -> bool:
        return not self.coeffs or set(self.coeffs) == {0}

    def constant_value(self) -> Rat:
        if not self.coeffs:
            return 0
        if set(self.coeffs) != {0}:
            raise ValueError("not a constant: %s" % self)
        return self.coeffs[0]

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        d = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = d.get(e, 0) + c
            if s:
                d[e] = s
            elif e in d:
                del d[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = d
        out._hash = None
        return out

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = {e: -c for e, c in self.coeffs.items()}
        out._hash = None
        return out

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.coeffs or not other.coeffs:
            return _ZERO
        d: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = d.get(e, 0) + c1 * c2
                if s:
                    d[e] = s
                elif e in d:
                    del d[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = d
        out._hash = None
        return out

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        out = _ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c: Rat) -> "LaurentPoly":
        if not c:
            return _ZERO
        return LaurentPoly({e: k * c for e, k in self.coeffs.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by v^k."""
        if k == 0:
            return self
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()})

    def stretch(self, d: int) -> "LaurentPoly":
        """Substitute v -> v^d (the paper's P |-> P_i convention)."""
        if d == 1:
            return self
        return LaurentPoly({e * d: c for e, c in self.coeffs.items()})

    def bar(self) -> "LaurentPoly":
        """The bar involution v -> v^-1."""
        return LaurentPoly({-e: c for e, c in self.coeffs.items()})

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(
                (e, Fraction(c)) for e, c in self.coeffs.items())))
        return self._hash

    # -- conversions -------------------------------------------------------

    def evaluate(self, q: Fraction) -> Fraction:
        """Exact value at v = q (q must be nonzero if negative exponents occur)."""
        total = Fraction(0)
        for e, c in self.coeffs.items():
            total += Fraction(c) * q ** e
        return total

    def to_dense(self) -> tuple[int, list]:
        """Return (min_exp, dense coefficient list from min_exp upward)."""
        if not self.coeffs:
            return (0, [])
        lo, hi = self.min_exp, self.max_exp
        dense = [0] * (hi - lo + 1)
        for e, c in self.coeffs.items():
            dense[e - lo] = c
        return (lo, dense)

    @staticmethod
    def from_dense(lo: int, dense: Iterable) -> "LaurentPoly":
        return LaurentPoly({lo + k: c for k, c in enumerate(dense)})

    def unit_normalize(self) -> tuple["LaurentPoly", "LaurentPoly"]:
        """Write self = unit * monic with monic having lowest exponent 0 and
        leading (top) coefficient 1.  Returns (monic, unit)."""
        if not self.coeffs:
            return (_ZERO, _ONE)
        lo = self.min_exp
        top = self.coeffs[self.max_exp]
        inv = Fraction(1, 1) / Fraction(top)
        monic = LaurentPoly({e - lo: c * inv for e, c in self.coeffs.items()})
        return (monic, LaurentPoly({lo: top}))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            neg = c < 0
            c = -c if neg else c
            if e == 0:
                body = _coeff_str(c)
            else:
                vpow = "v" if e == 1 else "v^%d" % e
                body = vpow if c == 1 else "%s*%s" % (_coeff_str(c), vpow)
            if not parts:
                parts.append("-" + body if neg else body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return "LaurentPoly(%s)" % self


def _coeff_str(c: Rat) -> str:
    f = Fraction(c)
    return str(f.numerator) if f.denominator == 1 else "%d/%d" % (f.numerator, f.denominator)


_ZERO = LaurentPoly()
_ONE = LaurentPoly({0: 1})


# -- Euclidean arithmetic in Q[v,v^-1] --------------------------------------
#
# The Euclidean norm of a nonzero element is its exponent span; units are the
# single terms c*v^k.  Division is ordinary polynomial division after both
# operands are shifted to have lowest exponent 0.

def laurent_divmod(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Return (q, r) with a = q*b + r and r = 0 or span(r) < span(b)."""
    if b.is_zero():
        raise ZeroDivisionError("Laurent division by zero")
    if a.is_zero():
        return (_ZERO, _ZERO)
    alo, da = a.to_dense()
    blo, db = b.to_dense()
    da = [Fraction(c) for c in da]
    db = [Fraction(c) for c in db]
    dq = [Fraction(0)] * max(len(da) - len(db) + 1, 0)
    lead = db[-1]
    for k in range(len(da) - len(db), -1, -1):
        c = da[k + len(db) - 1] / lead
        if c:
            dq[k] = c
            for j, bc in enumerate(db):
                da[k + j] -= c * bc
    q = LaurentPoly.from_dense(alo - blo, dq)
    r = LaurentPoly.from_dense(alo, da)
    return (q, r)


def laurent_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    q, r = laurent_divmod(a, b)
    if not r.is_zero():
        raise ExactDivisionError("(%s) does not divide (%s)" % (b, a))
    return q


def laurent_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Gcd in Q[v,v^-1], normalized to lowest exponent 0 and top coefficient 1."""
    while not b.is_zero():
        a, b = b, laurent_divmod(a, b)[1]
    if a.is_zero():
        return _ZERO
    return a.unit_normalize()[0]


class RatFunc:
    """An element of Q(v) in canonical form num/den.

    den is nonzero with gcd(num, den) a unit; den is normalized to lowest
    exponent 0 and leading coefficient 1, so equality is plain comparison
    of the two components.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = _ONE):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in Q(v)")
        if num.is_zero():
            self.num, self.den = _ZERO, _ONE
            return
        g = laurent_gcd(num, den)
        if not g.is_unit() or g != _ONE:
            num = laurent_exact_div(num, g)
            den = laurent_exact_div(den, g)
        monic, unit = den.unit_normalize()
        if unit != _ONE:
            inv_unit = LaurentPoly({-unit.min_exp: Fraction(1) / Fraction(unit.coeffs[unit.min_exp])})
            num = num * inv_unit
        self.num = num
        self.den = monic

    @staticmethod
    def from_laurent(p: LaurentPoly) -> "RatFunc":
        out = RatFunc.__new__(RatFunc)
        out.num, out.den = p, _ONE
        return out

    @staticmethod
    def zero() -> "RatFunc":
        return _RF_ZERO

    @staticmethod
    def one() -> "RatFunc":
        return _RF_ONE

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_laurent(self) -> bool:
        return self.den == _ONE

    def to_laurent(self) -> LaurentPoly:
        if self.den != _ONE:
            raise ExactDivisionError("not a Laurent polynomial: %s" % self)
        return self.num

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den - other.num * self.den,
                       self.den * other.den)

    def __neg__(self) -> "RatFunc":
        out = RatFunc.__new__(RatFunc)
        out.num, out.den = -self.num, self.den
        return out

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero in Q(v)")
        return RatFunc(self.num * other.den, self.den * other.num)

    def inverse(self) -> "RatFunc":
        return _RF_ONE / self

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self) -> str:
        if self.den == _ONE:
            return str(self.num)
        return "(%s)/(%s)" % (self.num, self.den)

    def __repr__(self) -> str:
        return "RatFunc(%s)" % self


_RF_ZERO = RatFunc.from_laurent(_ZERO)
_RF_ONE = RatFunc.from_laurent(_ONE)


# -- quantum numbers ---------------------------------------------------------

@lru_cache(maxsize=None)
def quantum_integer(n: int, d: int = 1) -> LaurentPoly:
    """[n]_d = (v_d^n - v_d^-n)/(v_d - v_d^-1) with v_d = v^d, expanded.

    Equals v_d^{n-1} + v_d^{n-3} + ... + v_d^{1-n} for n > 0, is 0 at n = 0,
    and satisfies [-n] = -[n].
    """
    if n == 0:
        return _ZERO
    if n < 0:
        return -quantum_integer(-n, d)
    return LaurentPoly({d * (n - 1 - 2 * k): 1 for k in range(n)})


@lru_cache(maxsize=None)
def quantum_factorial(n: int, d: int = 1) -> LaurentPoly:
    """[n]!_d = [1]_d [2]_d ... [n]_d, with [0]! = 1."""
    if n < 0:
        raise ValueError("quantum factorial of a negative integer")
    if n == 0:
        return _ONE
    return quantum_factorial(n - 1, d) * quantum_integer(n, d)


@lru_cache(maxsize=None)
def quantum_binomial(a: int, t: int, d: int = 1) -> LaurentPoly:
    """The bracket binomial [a; t]_d, an element of Z[v,v^-1].

    Defined for any integer a and t >= 0 as the product over s = 1..t of
    (v_d^{a-s+1} - v_d^{-a+s-1})/(v_d^s - v_d^{-s}); the denominator always
    clears.  Empty product (t = 0) is 1.
    """
    if t < 0:
        raise ValueError("binomial with negative t")
    if t == 0:
        return _ONE
    num = _ONE
    for s in range(1, t + 1):
        num = num * quantum_integer(a - s + 1, d)
        if num.is_zero():
            return _ZERO
    return laurent_exact_div(num, quantum_factorial(t, d))


# -- cyclotomic polynomials --------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_polynomial(ell: int) -> LaurentPoly:
    """The ell-th cyclotomic polynomial Phi_ell(v), exact over Z."""
    if ell < 1:
        raise ValueError("cyclotomic index must be >= 1")
    p = LaurentPoly({ell: 1, 0: -1})  # v^ell - 1
    for dd in range(1, ell):
        if ell % dd == 0:
            p = laurent_exact_div(p, cyclotomic_polynomial(dd))
    return p


# -- dense Q[x] helpers for the cyclotomic quotient field --------------------

def _dense_trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _dense_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _dense_trim(out)


def _dense_divmod(a: list, b: list) -> tuple[list, list]:
    a = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = Fraction(b[-1])
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        if c:
            q[k] = c
            for j, bc in enumerate(b):
                a[k + j] -= c * bc
    return (_dense_trim(q), _dense_trim(a))


def _dense_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return _dense_trim(out)


def _dense_inv_mod(a: list, mod: list) -> list:
    """Inverse of a modulo mod in Q[x] (mod irreducible), by extended Euclid."""
    r0, r1 = [Fraction(c) for c in mod], _dense_trim([Fraction(c) for c in a])
    if not r1:
        raise ZeroDivisionError("inverting zero residue")
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _dense_divmod(r0, r1)
        r0, r1, s0, s1 = r1, r, s1, _dense_sub(s0, _dense_mul(q, s1))
    # r0 = gcd, a nonzero constant since mod is irreducible and a is nonzero
    if len(r0) != 1:
        raise ZeroDivisionError("residue not invertible (modulus not irreducible?)")
    c = r0[0]
    return _dense_trim([x / c for x in s0])


# -- specialization fields ---------------------------------------------------

GENERIC = "generic"
RATIONAL = "rational"
CYCLOTOMIC = "cyclotomic"


@dataclass(frozen=True)
class FieldContext:
    """A characteristic-zero field receiving v.

    kind "generic": Q(v) itself (identity embedding).
    kind "rational": Q with v |-> q, q a nonzero rational.
    kind "cyclotomic": Q[v]/Phi_ell(v) with v |-> the residue class, ell >= 2.
    """

    kind: str
    q: Optional[Fraction] = None
    ell: Optional[int] = None

    @staticmethod
    def generic() -> "FieldContext":
        return FieldContext(GENERIC)

    @staticmethod
    def rational_point(q) -> "FieldContext":
        q = Fraction(q)
        if q == 0:
            raise ValueError("specialization parameter q must be nonzero")
        return FieldContext(RATIONAL, q=q)

    @staticmethod
    def cyclotomic_point(ell: int) -> "FieldContext":
        if ell < 2:
            raise ValueError("cyclotomic order must be >= 2")
        return FieldContext(CYCLOTOMIC, ell=ell)

    @property
    def modulus(self) -> tuple:
        """Dense coefficient tuple of Phi_ell (cyclotomic contexts only)."""
        lo, dense = cyclotomic_polynomial(self.ell).to_dense()
        assert lo == 0
        return tuple(dense)

    def label(self) -> str:
        if self.kind == GENERIC:
            return "generic"
        if self.kind == RATIONAL:
            return "q=%s" % self.q
        return "cyclotomic=%d" % self.ell

    # raw payloads: RatFunc | Fraction | tuple-of-Fractions (residue coeffs)

    def zero(self) -> "FieldValue":
        return self.from_fraction(Fraction(0))

    def one(self) -> "FieldValue":
        return self.from_fraction(Fraction(1))

    def from_fraction(self, c) -> "FieldValue":
        c = Fraction(c)
        if self.kind == GENERIC:
            return FieldValue(self, RatFunc.from_laurent(LaurentPoly.const(c)))
        if self.kind == RATIONAL:
            return FieldValue(self, c)
        return FieldValue(self, ((c,) if c else ()))

    def from_laurent(self, p: LaurentPoly) -> "FieldValue":
        if self.kind == GENERIC:
            return FieldValue(self, RatFunc.from_laurent(p))
        if self.kind == RATIONAL:
            return FieldValue(self, p.evaluate(self.q))
        ell = self.ell
        mod = list(self.modulus)
        deg = len(mod) - 1
        acc = [Fraction(0)] * deg
        for e, c in p.coeffs.items():
            k = e % ell  # v^ell = 1 in Q[v]/Phi_ell
            dense = [Fraction(0)] * k + [Fraction(c)]
            _, rem = _dense_divmod(dense, mod) if k >= deg else (None, dense)
            for j, x in enumerate(rem):
                acc[j] += x
        return FieldValue(self, tuple(_dense_trim(acc)))

    def from_ratfunc(self, r: RatFunc) -> "FieldValue":
        num = self.from_laurent(r.num)
        if r.den == _ONE:
            return num
        den = self.from_laurent(r.den)
        if den.is_zero():
            raise DenominatorVanishes(
                "denominator (%s) vanishes at %s" % (r.den, self.label()))
        return num * den.inverse()


class FieldValue:
    """A scalar in a FieldContext; all four field operations are exact."""

    __slots__ = ("ctx", "data")

    def __init__(self, ctx: FieldContext, data):
        self.ctx = ctx
        self.data = data

    def is_zero(self) -> bool:
        if self.ctx.kind == GENERIC:
            return self.data.is_zero()
        if self.ctx.kind == RATIONAL:
            return self.data == 0
        return not self.data

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: "FieldValue") -> "FieldValue":
        k = self.ctx.kind
        if k == CYCLOTOMIC:
            a, b = list(self.data), list(other.data)
            n = max(len(a), len(b))
            a += [Fraction(0)] * (n - len(a))
            b += [Fraction(0)] * (n - len(b))
            return FieldValue(self.ctx, tuple(_dense_trim([x + y for x, y in zip(a, b)])))
        return FieldValue(self.ctx, self.data + other.data)

    def __sub__(self, other: "FieldValue") -> "FieldValue":
        return self + (-other)

    def __neg__(self) -> "FieldValue":
        if self.ctx.kind == CYCLOTOMIC:
            return FieldValue(self.ctx, tuple(-x for x in self.data))
        return FieldValue(self.ctx, -self.data)

    def __mul__(self, other: "FieldValue") -> "FieldValue":
        k = self.ctx.kind
        if k == CYCLOTOMIC:
            prod = _dense_mul(list(self.data), list(other.data))
            _, rem = _dense_divmod(prod, list(self.ctx.modulus))
            return FieldValue(self.ctx, tuple(rem))
        return FieldValue(self.ctx, self.data * other.data)

    def inverse(self) -> "FieldValue":
        k = self.ctx.kind
        if self.is_zero():
            raise ZeroDivisionError("inverting zero in %s" % self.ctx.label())
        if k == GENERIC:
            return FieldValue(self.ctx, self.data.inverse())
        if k == RATIONAL:
            return FieldValue(self.ctx, Fraction(1) / self.data)
        return FieldValue(self.ctx, tuple(_dense_inv_mod(list(self.data),
                                                         list(self.ctx.modulus))))

    def __truediv__(self, other: "FieldValue") -> "FieldValue":
        return self * other.inverse()

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldValue):
            return NotImplemented
        return self.ctx == other.ctx and self.data == other.data

    def __hash__(self):
        return hash((self.ctx, self.data))

    def __str__(self) -> str:
        k = self.ctx.kind
        if k == GENERIC:
            return str(self.data)
        if k == RATIONAL:
            return _coeff_str(self.data)
        if not self.data:
            return "0"
        return str(LaurentPoly({e: c for e, c in enumerate(self.data)}))

    def __repr__(self) -> str:
        return "FieldValue(%s, %s)" % (self.ctx.label(), self)


def specialize(x, ctx: FieldContext) -> FieldValue:
    """Image of a LaurentPoly or RatFunc under v |-> the context's parameter.

    The generic context is the identity embedding.  Raises
    DenominatorVanishes when a RatFunc denominator maps to zero.
    """
    if isinstance(x, LaurentPoly):
        return ctx.from_laurent(x)
    if isinstance(x, RatFunc):
        return ctx.from_ratfunc(x)
    raise TypeError("cannot specialize %r" % (x,))
