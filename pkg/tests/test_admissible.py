"""Enumeration and verification of admissible weights at fractional level."""

from fractions import Fraction

import pytest

from kacfusion import (
    LevelData,
    LevelError,
    build_root_system,
    enumerate_admissible,
    label_from_mu,
    label_is_degenerate,
    verify_admissible,
    weyl_order,
)
from kacfusion.ratlin import vec_add
from kacfusion.rootsys import affine

COUNTS = [
    ("A1", 3, 1, 2),
    ("A1", 2, 3, 3),
    ("A1", 2, 5, 5),
    ("A1", 3, 4, 8),
    ("A1", 3, 5, 10),
    ("A1", 5, 2, 8),
    ("A2", 4, 3, 27),
    ("A2", 5, 4, 96),
    ("B2", 3, 1, 1),
    ("B2", 5, 2, 4),
    ("B3", 7, 2, 8),
    ("C2", 5, 4, 16),
    ("C3", 7, 2, 4),
    ("F4", 9, 1, 1),
    ("G2", 5, 2, 8),
    ("G2", 7, 3, 3),
]


def level_data(name, p, q):
    return LevelData.from_pq(build_root_system(name), p, q)


@pytest.mark.parametrize("name,p,q,count", COUNTS)
def test_enumeration_counts(name, p, q, count):
    ld = level_data(name, p, q)
    labels = enumerate_admissible(ld)
    assert len(labels) == count
    assert len({lab.lam.finite for lab in labels}) == count


@pytest.mark.parametrize("p,q", [(2, 3), (3, 2), (4, 3), (5, 2), (5, 3), (5, 4)])
def test_a1_closed_form_count(p, q):
    # rank one: q choices of translation times p - 1 chamber weights
    ld = level_data("A1", p, q)
    assert len(enumerate_admissible(ld)) == q * (p - 1)


@pytest.mark.parametrize("name,p,q", [
    ("A1", 5, 2), ("A2", 4, 3), ("B2", 5, 2), ("G2", 7, 3), ("C3", 7, 2),
])
def test_labels_satisfy_contracts(name, p, q):
    ld = level_data(name, p, q)
    rs = ld.rs
    for lab in enumerate_admissible(ld):
        assert lab.lam.k0 == ld.k
        assert lab.nu.k0 == ld.m * (1 if ld.variant == "principal" else ld.rs.rvee) \
            or lab.nu.k0 > 0
        assert rs.in_lattice(rs.latt_Qstar, lab.beta)
        ok, hits = verify_admissible(ld, lab.lam)
        assert ok
        # nondegenerate labels have a full set of integral coroot directions
        if not label_is_degenerate(ld, lab):
            assert len(hits) >= rs.rank


@pytest.mark.parametrize("name,p,q", [("A1", 5, 2), ("A2", 4, 3), ("B2", 5, 2)])
def test_label_from_mu_roundtrip(name, p, q):
    ld = level_data(name, p, q)
    rs = ld.rs
    for lab in enumerate_admissible(ld):
        again = label_from_mu(ld, vec_add(lab.lam.finite, rs.rho))
        assert again.lam.finite == lab.lam.finite
        assert again.nu.finite == lab.nu.finite
        assert again.beta == lab.beta
        assert again.ybar.sign == lab.ybar.sign


def test_non_admissible_weight_detected():
    ld = level_data("A1", 5, 2)
    # lam + rho pairs to zero with the simple coroot
    ok, _ = verify_admissible(ld, affine((Fraction(-1),), k0=ld.k))
    assert not ok
    # pairing hits a negative integer further down the orbit
    ok, _ = verify_admissible(ld, affine((Fraction(-3),), k0=ld.k))
    assert not ok


@pytest.mark.parametrize("name,p,q,degenerate", [
    ("A1", 5, 2, 4),
    ("A1", 3, 4, 2),
    ("A1", 2, 5, 1),
    ("A2", 5, 4, 60),
])
def test_degenerate_counts(name, p, q, degenerate):
    ld = level_data(name, p, q)
    labels = enumerate_admissible(ld)
    found = sum(1 for lab in labels if label_is_degenerate(ld, lab))
    assert found == degenerate
    # nondegenerate labels come in full Weyl orbits of chamber data
    nondeg = len(labels) - found
    assert nondeg % weyl_order(ld.rs) == 0 or ld.rs.rank == 1


def test_variant_inference():
    assert level_data("A1", 5, 2).variant == "principal"
    assert level_data("B2", 5, 2).variant == "coprincipal"
    assert level_data("B2", 5, 3).variant == "principal"
    assert level_data("G2", 7, 3).variant == "coprincipal"
    assert level_data("G2", 7, 2).variant == "principal"


def test_from_level_matches_from_pq():
    rs = build_root_system("A1")
    ld = LevelData.from_level(rs, Fraction(-1, 2))
    assert (ld.p, ld.q) == (3, 2)
    assert ld.k == Fraction(-1, 2)
    assert ld.m == Fraction(3, 2)
    assert len(enumerate_admissible(ld)) == 4


def test_level_validation():
    rs = build_root_system("A1")
    with pytest.raises(LevelError):
        LevelData.from_pq(rs, 4, 2)  # not coprime
    with pytest.raises(LevelError):
        LevelData.from_pq(rs, 0, 1)
    with pytest.raises(LevelError):
        LevelData.from_pq(rs, -3, 2)
    with pytest.raises(LevelError):
        LevelData.from_level(rs, Fraction(-2))  # m = 0
    with pytest.raises(LevelError):
        LevelData.from_level(rs, Fraction(-5, 2))  # m < 0


def test_central_charge_values():
    # c = k dim / (k + hvee)
    assert level_data("A1", 5, 2).central_charge == Fraction(3, 5)
    # k = -1/2: c = 3k/(k+2) = -1
    ld = LevelData.from_level(build_root_system("A1"), Fraction(-1, 2))
    assert ld.central_charge == Fraction(-1)
    # A2 at k = -5/4: c = 8k/(k+3)
    ld = level_data("A2", 7, 4)
    assert ld.central_charge == 8 * ld.k / (ld.k + 3)


def test_integrable_level_reduces_to_dominant_weights():
    ld = level_data("A1", 6, 1)  # k = 4 integrable
    labels = enumerate_admissible(ld)
    assert [lab.lam.finite for lab in labels] == [
        (Fraction(i),) for i in range(5)
    ]
    assert all(verify_admissible(ld, lab.lam)[0] for lab in labels)
    # at q = 1 every pairing with a finite coroot is a positive integer
    assert all(label_is_degenerate(ld, lab) for lab in labels)
