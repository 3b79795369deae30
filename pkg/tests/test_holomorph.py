import pytest

from invhol.errors import NotMonoid
from invhol.holomorph import (
    HolElement,
    MonHolElement,
    enumerate_holomorph,
    hol_action,
    hol_diamond,
    hol_groupoid_compose,
    hol_identity,
    hol_inverse_arrow,
    holomorph_units,
    is_valid_hol,
    mon_diamond,
    mon_hol,
    target_premorphism,
    verify_hol_monoid,
    verify_interchange,
    verify_mon_hol,
)

import oracles

HOL_PAIRS = {"trivial": 1, "Z2": 4, "Z3": 9, "Z4": 16, "S3": 60, "chain2": 3,
             "clifford4": 12, "I2": 39}
HOL_UNITS = {"trivial": 1, "Z2": 2, "Z3": 6, "Z4": 8, "S3": 36}


def test_pair_counts(zoo):
    for name, count in HOL_PAIRS.items():
        assert len(enumerate_holomorph(zoo[name])) == count, name


def test_unit_counts_match_automorphism_oracle(zoo):
    for name, count in HOL_UNITS.items():
        S = zoo[name]
        units = holomorph_units(S)
        assert len(units) == count, name
        auts = oracles.automorphisms_by_filter(S)
        assert len(units) == len(auts) * S.size, name
        # units are exactly the pairs with a bijective first component
        assert {h.alpha for h in units} == {tuple(a) for a in auts}


def test_identity_element_is_neutral(zoo):
    for name in ["Z3", "chain2", "clifford4", "I2"]:
        S = zoo[name]
        ident = hol_identity(S)
        for h in enumerate_holomorph(S):
            assert hol_diamond(S, ident, h) == h
            assert hol_diamond(S, h, ident) == h


def test_diamond_on_z3_inversion(zoo):
    S = zoo["Z3"]
    invmap = (0, 2, 1)
    h1 = HolElement(invmap, (1,))
    h2 = HolElement(invmap, (2,))
    assert is_valid_hol(S, h1.alpha, h1.tau)
    got = hol_diamond(S, h1, h2)
    # alpha composes to the identity; 1 under the second map is 2, plus 2 is 1
    assert got == HolElement((0, 1, 2), (1,))


def test_groupoid_compose_with_pointwise_inverse(zoo):
    for name in ["Z3", "clifford4", "I2"]:
        S = zoo[name]
        for h in enumerate_holomorph(S):
            hbar = hol_inverse_arrow(S, h)
            got = hol_groupoid_compose(S, h, hbar)
            assert got is not None
            assert got == HolElement(h.alpha, tuple(h.alpha[e] for e in S.idempotents))


def test_groupoid_compose_group_case_is_conjugation(zoo):
    S = zoo["Z3"]
    hol = enumerate_holomorph(S)
    for h1 in hol:
        for h2 in hol:
            g = h1.tau[0]
            conj = tuple(
                S.mul[S.mul[S.inv[g]][h1.alpha[s]]][g] for s in range(S.size)
            )
            expected = h2.alpha == conj
            assert (hol_groupoid_compose(S, h1, h2) is not None) == expected


def test_groupoid_compose_mismatch_is_undefined(zoo):
    S = zoo["Z3"]
    ident = hol_identity(S)
    other = HolElement((0, 0, 0), (0,))
    assert is_valid_hol(S, other.alpha, other.tau)
    assert hol_groupoid_compose(S, ident, other) is None


def test_action_identity_and_group_case(zoo):
    for name in ["Z3", "I2", "clifford4"]:
        S = zoo[name]
        ident = hol_identity(S)
        for s in range(S.size):
            assert hol_action(S, s, ident) == s
    G = zoo["S3"]
    for h in enumerate_holomorph(G):
        g = h.tau[0]
        for s in range(G.size):
            assert hol_action(G, s, h) == G.mul[h.alpha[s]][g]


def test_action_spot_value_on_i2(zoo):
    S = zoo["I2"]
    h = enumerate_holomorph(S)[5]
    pos = S.idempotent_position
    for s in range(S.size):
        expected = S.mul[h.alpha[s]][h.tau[pos[S.mul[S.inv[s]][s]]]]
        assert hol_action(S, s, h) == expected


def test_monoid_laws(zoo):
    for name in ["trivial", "Z2", "Z3", "chain2", "chain3", "clifford4", "I2"]:
        rep = verify_hol_monoid(zoo[name])
        assert rep.ok, f"{name}: {rep.render()}"


def test_interchange(zoo):
    for name in ["trivial", "Z3", "chain2", "clifford4", "I2"]:
        rep = verify_interchange(zoo[name])
        assert rep.ok, f"{name}: {rep.render()}"


def test_target_premorphism_is_premorphism(zoo):
    from invhol.morphisms import is_premorphism

    S = zoo["I2"]
    for h in enumerate_holomorph(S):
        beta = target_premorphism(S, h)
        assert is_premorphism(S, S, beta)


def test_semilattice_holomorph_is_premorphism_monoid(zoo):
    # over a semilattice the transformation part repeats the premorphism
    for name in ["chain2", "chain3", "diamond"]:
        S = zoo[name]
        hol = enumerate_holomorph(S)
        from invhol.morphisms import enumerate_premorphisms

        assert len(hol) == len(enumerate_premorphisms(S))
        for h in hol:
            assert h.tau == tuple(h.alpha[e] for e in S.idempotents)


def test_mon_hol_bijection_and_laws(zoo):
    for name in ["trivial", "Z2", "Z3", "chain2", "clifford4", "I2"]:
        rep = verify_mon_hol(zoo[name])
        assert rep.ok, f"{name}: {rep.render()}"


def test_mon_hol_requires_identity():
    from invhol import core

    # a semilattice with no top: two incomparable points over a bottom
    T = core.diamond_semilattice()
    sub = [1, 2, 3]
    table = [[sub.index(T.mul[a][b]) for b in sub] for a in sub]
    no_top = core.build_from_table(["x", "y", "bot"], table)
    assert no_top.identity is None
    with pytest.raises(NotMonoid):
        mon_hol(no_top)


def test_mon_diamond_matches_group_semidirect(zoo):
    S = zoo["Z4"]
    mon = mon_hol(S)
    for a in mon:
        for b in mon:
            got = mon_diamond(S, a, b)
            alpha = tuple(b.alpha[a.alpha[x]] for x in range(S.size))
            assert got == MonHolElement(alpha, S.mul[b.alpha[a.m]][b.m])


def test_diamond_closure(zoo):
    S = zoo["clifford4"]
    hol = set(enumerate_holomorph(S))
    for h1 in hol:
        for h2 in hol:
            assert hol_diamond(S, h1, h2) in hol


def test_tau_space_cap(zoo):
    from invhol.errors import SizeCap

    with pytest.raises(SizeCap):
        enumerate_holomorph(zoo["Z3"], tau_cap=1)
