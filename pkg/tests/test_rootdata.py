"""Root data: presets, Weyl combinatorics, saturation, character oracles."""

import pytest

from qschur.errors import (
    NonDominantSeedError,
    NotFiniteTypeError,
    PairingMismatchError,
)
from qschur.rootdata import (
    CartanDatum,
    build_flag,
    build_root_datum,
    saturate,
)

A1 = build_root_datum("A1")
A2 = build_root_datum("A2")
B2 = build_root_datum("B2")
G2 = build_root_datum("G2")


def test_preset_a1():
    assert A1.rank == 1 and A1.n == 1
    assert A1.cartan.cartan_matrix() == ((2,),)
    assert A1.alpha == ((2,),)
    assert A1.weyl_order == 2


def test_preset_a2():
    assert A2.cartan.cartan_matrix() == ((2, -1), (-1, 2))
    assert A2.alpha == ((2, -1), (-1, 2))
    assert A2.alphav == ((1, 0), (0, 1))
    assert A2.weyl_order == 6
    assert len(A2.positive_roots) == 3


def test_preset_b2_g2():
    assert B2.weyl_order == 8
    assert len(B2.positive_roots) == 4
    assert B2.d == (2, 1)
    assert G2.weyl_order == 12
    assert len(G2.positive_roots) == 6
    assert G2.d == (1, 3)


def test_preset_products_and_bigger():
    a1a1 = build_root_datum("A1xA1")
    assert a1a1.rank == 2 and a1a1.weyl_order == 4
    a3 = build_root_datum("A", rank=3)
    assert a3.weyl_order == 24
    d4 = build_root_datum("D4")
    assert d4.weyl_order == 192
    f4 = build_root_datum("F4")
    assert f4.weyl_order == 1152 and len(f4.positive_roots) == 24


def test_explicit_datum_and_pairing_mismatch():
    # GL_2-style datum: X = Z^2, alpha = (1,-1), alphav = (1,-1)
    gl2 = build_root_datum(cartan=[[2]], alpha=[[1, -1]], alphav=[[1, -1]])
    assert gl2.weyl_order == 2
    assert gl2.pairing(0, (1, 0)) == 1
    with pytest.raises(PairingMismatchError):
        # <alpha^vee, alpha> = 3 here, violating the root-datum axiom
        build_root_datum(cartan=[[2]], alpha=[[1, -1]], alphav=[[2, -1]])


def test_not_finite_type():
    with pytest.raises(NotFiniteTypeError):
        CartanDatum(((2, -2), (-2, 2)))  # affine A1~
    with pytest.raises(NotFiniteTypeError):
        CartanDatum(((2, 1), (1, 2)))  # positive off-diagonal


def test_reflect():
    assert A1.reflect(0, (4,)) == (-4,)
    assert A2.reflect(0, (1, 0)) == (-1, 1)
    assert A2.reflect(1, (1, 0)) == (1, 0)  # pairing zero: fixed


def test_weyl_orbit():
    assert A1.weyl_orbit((3,)) == frozenset({(3,), (-3,)})
    assert A2.weyl_orbit((1, 0)) == frozenset({(1, 0), (-1, 1), (0, -1)})
    assert len(A2.weyl_orbit((1, 1))) == 6  # regular orbit


def test_dominant_representative():
    for lam in [(1, 0), (1, 1), (2, 1)]:
        for mu in A2.weyl_orbit(lam):
            plus, word = A2.dominant_representative(mu)
            assert plus == lam
            cur = plus
            for i in word:
                cur = A2.reflect(i, cur)
            assert cur == mu


def test_dominance():
    assert A2.dominance_leq((0, 0), (1, 1))  # (1,1) = alpha1 + alpha2
    assert A2.dominance_leq((1, 1), (1, 1))
    assert not A1.dominance_leq((1,), (2,))  # difference odd
    assert not A2.dominance_leq((0, 0), (1, 0))  # not in the root lattice cone


def test_saturate():
    s = saturate(A1, [(4,)])
    assert s.elements == ((0,), (2,), (4,))
    s2 = saturate(A2, [(1, 1)])
    assert s2.elements == ((0, 0), (1, 1))
    assert saturate(A2, []).elements == ()
    with pytest.raises(NonDominantSeedError):
        saturate(A2, [(-1, 0)])


def test_saturate_idempotent_monotone():
    s = saturate(A2, [(2, 2)])
    again = saturate(A2, list(s.elements))
    assert again.elements == s.elements
    smaller = saturate(A2, [(1, 1)])
    assert set(smaller.elements) <= set(s.elements)


def test_flag():
    s = saturate(A1, [(4,)])
    flag = build_flag(s)
    assert flag.ordering == ((4,), (2,), (0,))
    s2 = saturate(A2, [(1, 1)])
    assert build_flag(s2).ordering == ((1, 1), (0, 0))
    s3 = saturate(A1, [(1,)])
    assert build_flag(s3).ordering == ((1,),)


def test_flag_prefixes_cosaturated():
    s = saturate(B2, [(1, 1)])
    flag = build_flag(s)
    order = flag.ordering
    for j in range(1, len(order) + 1):
        prefix = set(order[:j])
        for mu in prefix:
            for lam in s.elements:
                if B2.dominance_leq(mu, lam):
                    assert lam in prefix


def test_freudenthal_a1():
    for n in range(0, 7):
        char = A1.freudenthal_character((n,))
        assert char == {(n - 2 * t,): 1 for t in range(n + 1)}
        assert A1.weyl_dimension((n,)) == n + 1


def test_freudenthal_a2():
    adjoint = A2.freudenthal_character((1, 1))
    assert sum(adjoint.values()) == 8
    assert adjoint[(0, 0)] == 2
    assert A2.weyl_dimension((1, 1)) == 8
    fund = A2.freudenthal_character((1, 0))
    assert fund == {(1, 0): 1, (-1, 1): 1, (0, -1): 1}
    assert A2.weyl_dimension((1, 0)) == 3
    assert A2.weyl_dimension((2, 0)) == 6


def test_freudenthal_b2_g2():
    assert B2.weyl_dimension((1, 0)) == 5
    assert B2.weyl_dimension((0, 1)) == 4
    assert sum(B2.freudenthal_character((1, 0)).values()) == 5
    assert sum(B2.freudenthal_character((0, 1)).values()) == 4
    # G2 fundamental 7-dim and adjoint 14-dim
    assert G2.weyl_dimension((1, 0)) == 7
    assert sum(G2.freudenthal_character((0, 1)).values()) == 14


def test_character_invariants():
    for datum, lam in [(A2, (2, 1)), (B2, (1, 1))]:
        char = datum.freudenthal_character(lam)
        assert char[lam] == 1
        assert sum(char.values()) == datum.weyl_dimension(lam)
        # Weyl invariance on full orbits
        for mu, m in char.items():
            for w in datum.weyl_orbit(mu):
                assert char.get(w) == m


def test_orbit_size_divides_weyl_order():
    for datum in (A2, B2, G2):
        for lam in [(1, 0), (0, 1), (1, 1), (2, 0)]:
            assert datum.weyl_order % len(datum.weyl_orbit(lam)) == 0


def test_w0():
    assert A1.w0((3,)) == (-3,)
    assert A2.w0((1, 0)) == (0, -1)  # -w0 permutes the fundamentals
    assert B2.w0((1, 0)) == (-1, 0)  # w0 = -1 for B2
