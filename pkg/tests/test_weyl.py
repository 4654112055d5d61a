"""Weyl group enumeration, dominance, and extended affine symmetries."""

from fractions import Fraction

import numpy as np
import pytest

from kacfusion import (
    build_root_system,
    enumerate_weyl,
    extended_generators,
    simple_reflection,
    to_dominant,
    weyl_order,
)
from kacfusion.weyl import affine_action, ext_identity

rng = np.random.default_rng(20260814)

ORDERS = [
    ("A1", 2), ("A2", 6), ("A3", 24), ("A4", 120),
    ("B2", 8), ("B3", 48), ("C4", 384), ("D4", 192), ("D5", 1920),
    ("E6", 51840), ("F4", 1152), ("G2", 12),
]


@pytest.mark.parametrize("name,order", ORDERS)
def test_weyl_order(name, order):
    assert weyl_order(build_root_system(name)) == order


@pytest.mark.parametrize("name", ["A2", "B2", "B3", "G2", "D4"])
def test_enumeration_closure(name):
    rs = build_root_system(name)
    W = enumerate_weyl(rs)
    assert len(W) == weyl_order(rs)
    assert len({w.matrix for w in W}) == len(W)
    # sign is a homomorphism: checked on random products of reflections
    for _ in range(10):
        i, j = rng.integers(rs.rank, size=2)
        si = simple_reflection(rs, int(i) + 1)
        sj = simple_reflection(rs, int(j) + 1)
        v = tuple(Fraction(int(c)) for c in rng.integers(-3, 4, size=rs.rank))
        once = si.act(sj.act(v))
        prod = [w for w in W if w.act(v) == once]
        assert any(w.sign == si.sign * sj.sign for w in prod)
    # half the elements are even
    assert sum(1 for w in W if w.sign == 1) == len(W) // 2


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "C3"])
def test_reflections_preserve_form(name):
    rs = build_root_system(name)
    for i in range(rs.rank):
        s = simple_reflection(rs, i + 1)
        assert s.sign == -1
        for _ in range(4):
            u = tuple(Fraction(int(c)) for c in rng.integers(-4, 5, size=rs.rank))
            v = tuple(Fraction(int(c)) for c in rng.integers(-4, 5, size=rs.rank))
            assert rs.inner_finite(s.act(u), s.act(v)) == rs.inner_finite(u, v)
        # s_i fixes the wall and negates the root
        assert s.act(rs.simple_roots[i]) == tuple(-c for c in rs.simple_roots[i])


@pytest.mark.parametrize("name", ["A3", "B3", "G2"])
def test_to_dominant(name):
    rs = build_root_system(name)
    W = enumerate_weyl(rs)
    for _ in range(20):
        v = tuple(Fraction(int(c)) for c in rng.integers(-5, 6, size=rs.rank))
        w, dom = to_dominant(rs, v)
        assert rs.is_dominant(dom)
        assert w.act(v) == dom
        assert any(u.matrix == w.matrix and u.sign == w.sign for u in W)
    w, dom = to_dominant(rs, rs.zero())
    assert dom == rs.zero() and w.is_identity()


def test_to_dominant_strict_rejects_walls():
    rs = build_root_system("A2")
    from kacfusion.errors import ChamberError
    with pytest.raises(ChamberError):
        to_dominant(rs, (Fraction(1), Fraction(0)), strict=True)


@pytest.mark.parametrize("name,count", [
    ("A1", 2), ("A2", 3), ("D4", 4), ("E6", 3), ("E7", 2), ("E8", 1), ("G2", 1),
])
def test_extended_generator_count(name, count):
    rs = build_root_system(name)
    gens = extended_generators(rs, "principal")
    assert len(gens) == count
    assert gens[0].beta == rs.zero()


def test_extended_generators_permute_admissible_level():
    # each generator acts on level-k weights as weight -> wbar(weight) + k beta
    rs = build_root_system("A2")
    gens = extended_generators(rs, "principal")
    k = Fraction(2)
    from kacfusion import affine
    lam = affine((Fraction(1), Fraction(0)), k0=k)
    for g in gens[1:]:
        out = affine_action(rs, g, lam)
        assert out.k0 == k
        # the translation part is a fundamental weight of mark one
        assert g.beta in {rs.fundamental_weight(i + 1) for i in range(rs.rank)}
    assert affine_action(rs, ext_identity(rs.rank), lam).finite == lam.finite


@pytest.mark.parametrize("name", ["B2", "C3", "G2"])
def test_coprincipal_generators_exist(name):
    rs = build_root_system(name)
    gens = extended_generators(rs, "coprincipal")
    assert len(gens) == len(rs.LJ)
