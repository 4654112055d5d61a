"""Admissible weights of rational level and their chamber labels.

A level is encoded by coprime positive integers p, q with k = p/q - hvee.
Every admissible weight lambda arises as lambda + rho = t_beta ybar phi(nu)
modulo delta, where nu is a regular dominant integral weight of level p in
the denominator-1 chamber, phi rescales Lambda0 by 1/q, ybar is a finite
Weyl element and beta lies in the coweight lattice Qstar. The pair
(ybar, beta) is constrained so that the transported chamber basis consists
of positive coroots; each weight admits exactly |J| such triples, related
by the extended generators sigma_j.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Tuple

from .errors import ChamberError, LatticeError, LevelError
from .ratlin import (
    frac,
    is_integral_vec,
    lattice_contains,
    lattice_coset_reps,
    mat_scale,
    vec,
    vec_add,
    vec_scale,
    vec_sub,
)
from .rootsys import AffineWeight, FiniteRootSystem, FiniteWeight
from .weyl import (
    ExtAffineElement,
    WeylElement,
    _affine_reduce,
    _node0_data,
    affine_action,
    coroot_basis_Sq,
    extended_generators,
)

__all__ = [
    "AdmissibleLabel",
    "LevelData",
    "coroot_basis_Sq",
    "decompose_mu",
    "enumerate_admissible",
    "ga_from_beta",
    "label_from_mu",
    "label_is_degenerate",
    "phi_apply",
    "phi_inverse",
    "verify_admissible",
]


@dataclass(frozen=True)
class LevelData:
    """A rational level k = p/q - hvee together with its chamber variant."""

    rs: FiniteRootSystem
    p: int
    q: int
    variant: str

    @classmethod
    def from_pq(cls, rs: FiniteRootSystem, p: int, q: int, variant: str = None):
        if p <= 0 or q <= 0:
            raise LevelError("p and q must be positive")
        if gcd(p, q) != 1:
            raise LevelError(f"p = {p} and q = {q} are not coprime")
        inferred = (
            "coprincipal" if rs.rvee > 1 and q % rs.rvee == 0 else "principal"
        )
        if variant is None:
            variant = inferred
        elif variant not in ("principal", "coprincipal"):
            raise LevelError(f"unknown variant {variant!r}")
        elif variant != inferred:
            if variant == "coprincipal":
                raise LevelError(
                    f"coprincipal levels need rvee = {rs.rvee} > 1 dividing q = {q}"
                )
            raise LevelError(
                f"denominator {q} divisible by rvee = {rs.rvee} is coprincipal"
            )
        bound = rs.hvee if variant == "principal" else rs.h
        if p < bound:
            raise LevelError(
                f"no {variant} admissible weights for {rs.spec}: p = {p} < {bound}"
            )
        return cls(rs, p, q, variant)

    @classmethod
    def from_level(cls, rs: FiniteRootSystem, k, variant: str = None):
        m = frac(k) + rs.hvee
        if m <= 0:
            raise LevelError(f"level {k} is not above the critical level")
        return cls.from_pq(rs, m.numerator, m.denominator, variant)

    @property
    def k(self) -> Fraction:
        return Fraction(self.p, self.q) - self.rs.hvee

    @property
    def m(self) -> Fraction:
        """The shifted level k + hvee = p/q."""
        return Fraction(self.p, self.q)

    @property
    def central_charge(self) -> Fraction:
        """Virasoro central charge of the level-k vacuum module."""
        return self.k * self.rs.dim_g / self.m

    @property
    def node0_coeffs(self) -> Tuple[int, ...]:
        coeffs, _ = _node0_data(self.rs, self.variant)
        return coeffs

    @property
    def translation_lattice(self):
        """Generator matrix of the lattice L with W_(q) = W x t_{qL}."""
        return self.rs.latt_Qvee if self.variant == "principal" else self.rs.latt_Q

    def __str__(self) -> str:
        return f"LevelData({self.rs.spec}, p={self.p}, q={self.q}, {self.variant})"


@dataclass(frozen=True)
class AdmissibleLabel:
    """An admissible weight with one canonical chamber triple.

    lam + rho = t_beta ybar phi(nu) modulo delta: nu is the regular dominant
    integral weight of level p, ybar the finite Weyl part, beta the
    translation in Qstar. lam carries level k and d0 = 0.
    """

    nu: AffineWeight
    ybar: WeylElement
    beta: FiniteWeight
    lam: AffineWeight

    def __str__(self) -> str:
        lam = ",".join(str(x) for x in self.lam.finite)
        return f"AdmissibleLabel([{lam}]; level {self.lam.k0})"


def phi_apply(ld: LevelData, lam: AffineWeight) -> AffineWeight:
    """The dilation fixing the finite part, Lambda0 -> Lambda0/q, delta -> q delta."""
    return AffineWeight(lam.finite, lam.k0 / ld.q, lam.d0 * ld.q)


def phi_inverse(ld: LevelData, lam: AffineWeight) -> AffineWeight:
    return AffineWeight(lam.finite, lam.k0 * ld.q, Fraction(lam.d0, ld.q))


def _chamber_nu(ld: LevelData):
    """Regular dominant integral weights of level p in the q = 1 chamber.

    Coordinates satisfy n_i >= 1 with sum c_i n_i <= p - 1, where c are the
    node-0 pairing coefficients of the variant. Output is sorted.
    """
    rs, coeffs = ld.rs, ld.node0_coeffs
    out = []

    def rec(prefix, used):
        i = len(prefix)
        if i == rs.rank:
            out.append(AffineWeight(vec(prefix), Fraction(ld.p), Fraction(0)))
            return
        rest_min = sum(coeffs[j] for j in range(i + 1, rs.rank))
        top = (ld.p - 1 - used - rest_min) // coeffs[i]
        for n in range(1, top + 1):
            rec(prefix + [n], used + coeffs[i] * n)

    rec([], 0)
    return tuple(out)


def ga_from_beta(ld: LevelData, beta):
    """Resolve the chamber pair (ybar, gamma) attached to beta in Qstar.

    Returns the unique finite Weyl element ybar and gamma in the translation
    lattice L such that y = t_{beta + q gamma} ybar carries the level-q
    chamber coroot basis to positive coroots. Computed by transporting
    t_{-beta} Lambda0 into the chamber with an infinitesimal rho tie-break,
    which also covers non-regular positions of beta.
    """
    rs = ld.rs
    beta = vec(beta)
    if not lattice_contains(rs.latt_Qstar, beta):
        raise LatticeError("beta must lie in the coweight lattice Qstar")
    u, _, _ = _affine_reduce(
        rs, ld.q, ld.variant, Fraction(1), vec_scale(Fraction(-1), beta), rs.rho
    )
    winv = u.wbar.inverse()
    ybar = winv
    gamma = vec_scale(Fraction(-1, ld.q), winv.act(u.beta))
    if not lattice_contains(ld.translation_lattice, gamma):
        raise AssertionError("chamber resolution left the translation lattice")
    return ybar, gamma


def _triple_key(nu: AffineWeight, ybar: WeylElement, beta):
    return (nu.finite, tuple(beta), ybar.matrix)


def _label_mu(ld: LevelData, nu, ybar, beta) -> FiniteWeight:
    return vec_add(ybar.act(nu.finite), vec_scale(ld.m, beta))


def _sigma_orbit(ld: LevelData, nu: AffineWeight, ybar: WeylElement, beta):
    """All |J| chamber triples of the weight represented by (nu, ybar, beta)."""
    rs = ld.rs
    out = []
    for sig in extended_generators(rs, ld.variant):
        sbar, b = sig.wbar, sig.beta
        nu_j = AffineWeight(
            vec_add(sbar.act(nu.finite), vec_scale(Fraction(ld.p), b)),
            nu.k0,
            Fraction(0),
        )
        sinv = sbar.inverse()
        w_j = ybar.compose(sinv)
        beta_j = vec_sub(beta, vec_scale(Fraction(ld.q), w_j.act(b)))
        out.append((nu_j, w_j, vec(beta_j)))
    out.sort(key=lambda t: _triple_key(*t))
    return out


@lru_cache(maxsize=None)
def enumerate_admissible(ld: LevelData):
    """All admissible weights of the level, sorted by finite coordinates.

    Iterates beta over coset representatives of Qstar / qL and nu over the
    q = 1 chamber; each weight must be reached exactly |J| times (|LJ| for
    the coprincipal variant), once per sigma twist, and is stored with its
    lexicographically least triple.
    """
    rs = ld.rs
    qL = mat_scale(ld.q, ld.translation_lattice)
    reps = lattice_coset_reps(rs.latt_Qstar, qL)
    nodes = rs.J if ld.variant == "principal" else rs.LJ
    chamber = _chamber_nu(ld)
    found = {}
    for beta0 in reps:
        ybar, gamma = ga_from_beta(ld, beta0)
        beta = vec_add(beta0, vec_scale(Fraction(ld.q), gamma))
        y = ExtAffineElement(beta, ybar)
        for g in coroot_basis_Sq(rs, ld.q, ld.variant):
            if not rs.affine_is_positive(affine_action(rs, y, g)):
                raise AssertionError("chamber basis not carried to positive coroots")
        for nu in chamber:
            mu = _label_mu(ld, nu, ybar, beta)
            found.setdefault(mu, []).append((nu, ybar, beta))
    labels = []
    for mu in sorted(found):
        triples = found[mu]
        if len(triples) != len(nodes):
            raise AssertionError(
                f"weight reached {len(triples)} times, expected {len(nodes)}"
            )
        nu, ybar, beta = min(triples, key=lambda t: _triple_key(*t))
        lam = AffineWeight(vec_sub(mu, rs.rho), ld.k, Fraction(0))
        labels.append(AdmissibleLabel(nu, ybar, beta, lam))
    labels.sort(key=lambda lab: lab.lam.finite)
    return tuple(labels)


def decompose_mu(ld: LevelData, mu):
    """All |J| chamber triples (nu, ybar, beta) with mu = ybar(nu) + (p/q) beta.

    mu is the finite part of lambda + rho at level p/q. The splitting uses
    Bezout coefficients for (p, q), then a chamber reduction at denominator 1;
    a wall hit means mu is not regular. Validity of the result (nu integral,
    beta in Qstar) is checked by label_from_mu, not here.
    """
    rs = ld.rs
    mu = vec(mu)
    u_bez, v_bez = _bezout(ld.p, ld.q)
    w = vec_scale(Fraction(ld.q), mu)
    nu0 = vec_scale(Fraction(v_bez), w)
    beta0 = vec_scale(Fraction(u_bez), w)
    # The Bezout split leaves beta0 in the weight lattice; shift the pair by
    # (q pi, -p pi) with pi in P to move beta0 into Qstar.
    for pi in lattice_coset_reps(rs.latt_P, rs.latt_Qstar):
        cand = vec_add(beta0, vec_scale(Fraction(ld.q), pi))
        if is_integral_vec(cand) and lattice_contains(rs.latt_Qstar, cand):
            beta0 = cand
            nu0 = vec_sub(nu0, vec_scale(Fraction(ld.p), pi))
            break
    else:
        raise LatticeError("weight does not split over the coweight lattice")
    red, fin, _ = _affine_reduce(rs, 1, ld.variant, Fraction(ld.p), nu0, None)
    coeffs = ld.node0_coeffs
    node0 = ld.p - sum(coeffs[i] * fin[i] for i in range(rs.rank))
    if node0 == 0 or any(x == 0 for x in fin):
        raise ChamberError("weight is not regular at this level")
    wprime = red.wbar
    winv = wprime.inverse()
    nu = AffineWeight(vec(fin), Fraction(ld.p), Fraction(0))
    ybar = winv
    beta = vec_sub(beta0, vec_scale(Fraction(ld.q), winv.act(red.beta)))
    return tuple(_sigma_orbit(ld, nu, ybar, beta))


def _bezout(p: int, q: int):
    """(u, v) with u p + v q = 1."""
    u, v = 0, 1
    u1, v1, a, b = 1, 0, p, q
    while b:
        t = a // b
        a, b = b, a - t * b
        u1, u = u, u1 - t * u
        v1, v = v, v1 - t * v
    if a != 1:
        raise LevelError(f"p = {p} and q = {q} are not coprime")
    return u1, v1


def label_from_mu(ld: LevelData, mu) -> AdmissibleLabel:
    """The admissible label with lambda + rho having finite part mu.

    Raises LatticeError when mu does not decompose over integral nu and
    beta in Qstar, and ChamberError when mu is non-regular.
    """
    rs = ld.rs
    triples = decompose_mu(ld, mu)
    nu, ybar, beta = triples[0]
    if not is_integral_vec(nu.finite):
        raise LatticeError("chamber weight nu is not integral")
    coeffs = ld.node0_coeffs
    node0 = ld.p - sum(coeffs[i] * nu.finite[i] for i in range(rs.rank))
    if node0 < 1 or any(x < 1 for x in nu.finite):
        raise ChamberError("chamber weight nu is not regular dominant")
    if not lattice_contains(rs.latt_Qstar, beta):
        raise LatticeError("translation part beta lies outside Qstar")
    lam = AffineWeight(vec_sub(vec(mu), rs.rho), ld.k, Fraction(0))
    return AdmissibleLabel(nu, ybar, beta, lam)


def verify_admissible(ld: LevelData, lam):
    """Check the pairing condition of admissibility directly.

    lam is an AffineWeight of level k or its finite coordinates. For every
    positive real coroot gamma the value <lam + rho, gamma> must avoid the
    nonpositive integers; the scan per finite root direction is finite since
    the values grow by p/q steps. Returns (ok, integral_coroots) where the
    second entry holds one coroot per direction and residue class with an
    integral pairing (delta coefficients within the first period).
    """
    rs = ld.rs
    fin = lam.finite if isinstance(lam, AffineWeight) else vec(lam)
    if isinstance(lam, AffineWeight) and lam.k0 != ld.k:
        raise LevelError(f"weight has level {lam.k0}, expected {ld.k}")
    mu = vec_add(fin, rs.rho)
    step_level = ld.m
    ok = True
    hits = []
    for idx, alpha in enumerate(rs.positive_roots):
        av = rs.coroot_image(alpha)
        v = rs.inner_finite(mu, av)
        d_alpha = rs.norm2_finite(alpha) / 2
        s = Fraction(1) / d_alpha
        if s.denominator != 1:
            raise AssertionError("coroot delta step is not integral")
        s = int(s)
        for sign in (1, -1):
            base = v if sign == 1 else -v
            start = 0 if sign == 1 else s
            m = start
            while base + m * step_level <= 0:
                if (base + m * step_level).denominator == 1:
                    ok = False
                m += s
            for m in range(start, start + ld.q * s, s):
                val = base + m * step_level
                if val.denominator == 1:
                    coroot = AffineWeight(
                        vec_scale(Fraction(sign), av), Fraction(0), Fraction(m)
                    )
                    hits.append((idx, sign, m, coroot))
    hits.sort(key=lambda t: (t[0], -t[1], t[2]))
    return ok, tuple(h[3] for h in hits)


def label_is_degenerate(ld: LevelData, label: AdmissibleLabel) -> bool:
    """Whether some finite positive coroot pairs integrally with lam + rho."""
    rs = ld.rs
    mu = vec_add(label.lam.finite, rs.rho)
    for alpha in rs.positive_roots:
        if rs.inner_finite(mu, rs.coroot_image(alpha)).denominator == 1:
            return True
    return False
