"""Characters of admissible modules as convergent q-series.

Characters are ratios of alternating sums of lattice theta functions. All
modular weights and prefactor exponents are carried as exact rationals;
floating point enters through the lattice sums, whose truncation radius is
chosen from the requested tolerance and reported together with a tail
bound. The scalar Jacobi theta function and its modular transform serve as
the base case for verification.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

import numpy as np

from .admissible import AdmissibleLabel, LevelData
from .errors import (
    CapacityError,
    ExtrapolationError,
    InvalidTypeError,
    PolarPointError,
)
from .ratlin import lattice_coset_reps, lattice_index, mat_inv, transpose, vec
from .rootsys import FiniteRootSystem
from .weyl import enumerate_weyl

__all__ = [
    "EvalPoint",
    "SeriesEval",
    "char_at_zero",
    "char_chi",
    "char_numerator",
    "dedekind_eta",
    "dual_lattice",
    "psi_w",
    "theta_g",
    "theta_jacobi",
    "theta_jacobi_check",
    "theta_jacobi_sum",
    "theta_lattice",
    "theta_lattice_check",
]

_TWO_PI_I = 2j * math.pi


@dataclass(frozen=True)
class EvalPoint:
    """An evaluation point (tau, x, t) with tau in the upper half plane.

    x holds complex coordinates over the fundamental weights; pairings use
    the invariant form.
    """

    tau: complex
    x: Tuple[complex, ...] = ()
    t: complex = 0j

    def __post_init__(self):
        if not (self.tau.imag > 0):
            raise InvalidTypeError("tau must lie in the upper half plane")
        object.__setattr__(self, "tau", complex(self.tau))
        object.__setattr__(self, "x", tuple(complex(v) for v in self.x))
        object.__setattr__(self, "t", complex(self.t))

    def x_or_zero(self, rank: int) -> Tuple[complex, ...]:
        if len(self.x) == 0:
            return (0j,) * rank
        if len(self.x) != rank:
            raise InvalidTypeError(
                f"evaluation point has {len(self.x)} coordinates, expected {rank}"
            )
        return self.x


@dataclass(frozen=True)
class SeriesEval:
    """A truncated series value with the number of terms and a tail bound."""

    value: complex
    truncation_order: int
    tail_bound: float


def theta_jacobi(tau: complex, z: complex, tol: float = 1e-15) -> complex:
    """The odd Jacobi theta function in product form.

    Theta(tau, z) = q^{1/12} e^{-pi i z} prod_{n>=1}
    (1 - e^{2 pi i z} q^{n-1}) (1 - e^{-2 pi i z} q^n), q = e^{2 pi i tau}.
    It vanishes for z in Z + tau Z, is odd in z, and satisfies
    Theta(-1/tau, z/tau) = -i e^{pi i z^2 / tau} Theta(tau, z).
    """
    if not (complex(tau).imag > 0):
        raise InvalidTypeError("tau must lie in the upper half plane")
    q = cmath.exp(_TWO_PI_I * tau)
    w = cmath.exp(_TWO_PI_I * z)
    out = cmath.exp(_TWO_PI_I * tau / 12) * cmath.exp(-1j * math.pi * z)
    a = w  # e^{2 pi i z} q^{n-1}
    b = w ** -1 * q  # e^{-2 pi i z} q^n
    for n in range(1, 10001):
        out *= (1 - a) * (1 - b)
        a *= q
        b *= q
        if abs(a) < tol and abs(b) < tol and n > 4:
            return out
    raise CapacityError("Jacobi theta product did not converge in 10000 factors")


def theta_jacobi_sum(tau: complex, z: complex, terms: int = 64) -> complex:
    """Sum-form evaluation of theta_jacobi through the triple product.

    q^{1/12} e^{-pi i z} sum_n (-1)^n q^{n(n-1)/2} e^{2 pi i n z}
    divided by prod_{m>=1} (1 - q^m). Slower; used as a cross check.
    """
    q = cmath.exp(_TWO_PI_I * tau)
    w = cmath.exp(_TWO_PI_I * z)
    s = 0j
    for n in range(-terms, terms + 1):
        s += (-1) ** n * q ** (Fraction(n * (n - 1), 2)) * w**n
    denom = 1 + 0j
    for m in range(1, 4 * terms):
        denom *= 1 - q**m
    return cmath.exp(_TWO_PI_I * tau / 12) * cmath.exp(-1j * math.pi * z) * s / denom


def theta_jacobi_check(tau: complex, z: complex) -> dict:
    """Residual of Theta(-1/tau, z/tau) = -i e^{pi i z^2/tau} Theta(tau, z)."""
    lhs = theta_jacobi(-1 / tau, z / tau)
    rhs = -1j * cmath.exp(1j * math.pi * z * z / tau) * theta_jacobi(tau, z)
    return {"lhs": lhs, "rhs": rhs, "abs_error": abs(lhs - rhs)}


def dedekind_eta(tau: complex, tol: float = 1e-15) -> complex:
    """eta(tau) = q^{1/24} prod_{n>=1} (1 - q^n)."""
    q = cmath.exp(_TWO_PI_I * tau)
    out = cmath.exp(_TWO_PI_I * tau / 24)
    qn = q
    for n in range(1, 10001):
        out *= 1 - qn
        qn *= q
        if abs(qn) < tol and n > 4:
            return out
    raise CapacityError("eta product did not converge in 10000 factors")


def dual_lattice(rs: FiniteRootSystem, lattice) -> tuple:
    """Generator matrix of the dual lattice under the invariant form."""
    gl = tuple(
        tuple(sum(rs.gram[i][k] * lattice[k][j] for k in range(rs.rank))
              for j in range(rs.rank))
        for i in range(rs.rank)
    )
    return transpose(mat_inv(gl))


def theta_lattice(
    rs: FiniteRootSystem,
    lattice,
    mu,
    m: int,
    tau: complex,
    z=None,
    t: complex = 0j,
    tol: float = 1e-10,
    max_points: int = 2_000_000,
) -> SeriesEval:
    """Theta function of a lattice with elliptic and modular variables.

    Theta_{mu,m}(tau, z, t) = e^{2 pi i m t} sum_{gamma in lattice}
    q^{|mu + m gamma|^2 / 2m} e^{2 pi i (mu + m gamma, z)}.
    The sum is truncated to an ellipsoid chosen from tol; the returned tail
    bound is a boundary-shell estimate with a geometric decay ratio.
    """
    if not (complex(tau).imag > 0):
        raise InvalidTypeError("tau must lie in the upper half plane")
    n = rs.rank
    if z is None:
        z = (0j,) * n
    z = tuple(complex(v) for v in z)
    G = np.array([[float(x) for x in row] for row in rs.gram])
    Lf = np.array([[float(x) for x in row] for row in lattice])
    Gc = Lf.T @ G @ Lf
    mu_f = np.array([float(Fraction(x)) if not isinstance(x, complex) else x
                     for x in vec(mu)], dtype=float)
    im_tau = complex(tau).imag
    z_im = np.array([v.imag for v in z])
    zn = math.sqrt(max(z_im @ G @ z_im, 0.0))

    # Radius so that e^{-pi im_tau R^2 / m + 2 pi R zn} <= tol / 1000,
    # also past the magnitude hump and a few lattice steps wide.
    a = math.pi * im_tau / m
    b = 2 * math.pi * zn
    target = math.log(1e3 / tol)
    R = (b + math.sqrt(b * b + 4 * a * target)) / (2 * a)
    step = m * math.sqrt(max(np.diag(Gc).max(), 1e-30))
    R = max(R, 2 * m * zn / im_tau + 2 * step, 3 * step, math.sqrt(mu_f @ G @ mu_f))

    center = np.linalg.solve(m * Lf, -mu_f)
    Gc_inv = np.linalg.inv(Gc)
    half = (R / m) * np.sqrt(np.maximum(np.diag(Gc_inv), 0.0))
    los = np.ceil(center - half).astype(int)
    his = np.floor(center + half).astype(int)
    sizes = np.maximum(his - los + 1, 0)
    total = int(np.prod(sizes, dtype=np.int64)) if np.all(sizes > 0) else 0
    if total > max_points:
        raise CapacityError(
            f"lattice theta enumeration needs {total} points, above {max_points}"
        )
    if total == 0:
        return SeriesEval(0j, 0, 0.0)
    grids = np.meshgrid(*[np.arange(lo, hi + 1) for lo, hi in zip(los, his)],
                        indexing="ij")
    C = np.stack([g.ravel() for g in grids], axis=1)
    X = mu_f[None, :] + m * (C @ Lf.T)
    norms = np.einsum("ij,jk,ik->i", X, G, X)
    keep = norms <= R * R + 1e-9
    X, norms = X[keep], norms[keep]
    zc = np.array(z, dtype=complex)
    xz = X @ (G @ zc)
    expo = _TWO_PI_I * (tau * norms / (2 * m)) + _TWO_PI_I * xz
    terms = np.exp(expo)
    pref = cmath.exp(_TWO_PI_I * m * complex(t))
    value = pref * complex(terms.sum())

    mags = np.abs(terms)
    radii = np.sqrt(np.maximum(norms, 0.0))
    shell = radii >= R - step
    shell_sum = float(mags[shell].sum()) if shell.any() else float(tol)
    ratio = math.exp(-a * (2 * R * step + step * step) + b * step)
    ratio = min(ratio, 0.95)
    tail = abs(pref) * shell_sum * ratio / (1 - ratio)
    return SeriesEval(value, int(X.shape[0]), tail)


def theta_lattice_check(
    rs: FiniteRootSystem,
    lattice,
    mu,
    m: int,
    tau: complex,
    z=None,
    t: complex = 0j,
    tol: float = 1e-10,
    max_points: int = 2_000_000,
) -> dict:
    """Residual of the modular transform of a lattice theta function.

    Theta_mu(-1/tau, z/tau, t - (z,z)/2tau) = (-i tau)^{rank/2}
    |L*/mL|^{-1/2} sum_{mu' in L*/mL} e^{-2 pi i (mu, mu')/m}
    Theta_mu'(tau, z, t).
    """
    n = rs.rank
    if z is None:
        z = (0j,) * n
    z = tuple(complex(v) for v in z)
    zz = sum(z[i] * sum(float(rs.gram[i][j]) * z[j] for j in range(n))
             for i in range(n))
    tau = complex(tau)
    lhs = theta_lattice(
        rs, lattice, mu, m, -1 / tau, tuple(v / tau for v in z),
        complex(t) - zz / (2 * tau), tol=tol, max_points=max_points,
    )
    dual = dual_lattice(rs, lattice)
    mL = tuple(tuple(m * x for x in row) for row in lattice)
    reps = lattice_coset_reps(dual, mL)
    idx = lattice_index(dual, mL)
    pref = cmath.exp((n / 2) * cmath.log(-1j * tau)) / math.sqrt(idx)
    acc = 0j
    tails = lhs.tail_bound
    for rep in reps:
        phase = cmath.exp(-_TWO_PI_I * float(rs.inner_finite(vec(mu), rep)) / m)
        ev = theta_lattice(rs, lattice, rep, m, tau, z, t, tol=tol,
                           max_points=max_points)
        acc += phase * ev.value
        tails += abs(pref) * ev.tail_bound
    rhs = pref * acc
    return {
        "lhs": lhs.value,
        "rhs": rhs,
        "abs_error": abs(lhs.value - rhs),
        "tail_bound": tails,
    }


def theta_g(rs: FiniteRootSystem, tau: complex, z, tol: float = 1e-15) -> complex:
    """Product of theta_jacobi over the pairings of z with positive roots."""
    z = tuple(complex(v) for v in z)
    out = 1 + 0j
    for alpha in rs.positive_roots:
        u = 0j
        for i in range(rs.rank):
            u += float(sum(rs.gram[i][j] * alpha[j] for j in range(rs.rank))) * z[i]
        out *= theta_jacobi(tau, u, tol=tol)
    return out


def _wall_distance_proxy(rs: FiniteRootSystem, tau: complex, z) -> float:
    """Smallest |Theta(tau, (alpha, z))| / (2 pi |eta|^3) over positive roots.

    Approximates the distance of z to the nearest reflection wall in the
    elliptic variable, since Theta has simple zeros exactly on the walls.
    """
    eta3 = abs(dedekind_eta(tau)) ** 3
    z = tuple(complex(v) for v in z)
    best = math.inf
    for alpha in rs.positive_roots:
        u = 0j
        for i in range(rs.rank):
            u += float(sum(rs.gram[i][j] * alpha[j] for j in range(rs.rank))) * z[i]
        best = min(best, abs(theta_jacobi(tau, u)) / (2 * math.pi * eta3))
    return best


def char_numerator(
    ld: LevelData, label: AdmissibleLabel, point: EvalPoint, tol: float = 1e-10
) -> SeriesEval:
    """Theta combination in the numerator of the character.

    eps(ybar) sum_{w} eps(w) Theta_{q w(nu) + p beta, pq}(tau, x/q, t/q^2)
    over the translation lattice of the variant.  The sum runs over the
    integral Weyl group of lambda, which is the conjugate of W x t_{qL}
    by t_beta ybar; the conjugation is what keeps beta fixed inside the
    theta labels while w rotates only nu.
    """
    rs = ld.rs
    W = enumerate_weyl(rs)
    m = ld.p * ld.q
    x = point.x_or_zero(rs.rank)
    zq = tuple(v / ld.q for v in x)
    tq = point.t / (ld.q * ld.q)
    lattice = ld.translation_lattice
    nu = label.nu.finite
    pbeta = tuple(ld.p * b for b in label.beta)
    acc = 0j
    tails = 0.0
    pts = 0
    per_tol = tol / max(len(W), 1)
    for w in W:
        muw = tuple(ld.q * a + b for a, b in zip(w.act(nu), pbeta))
        ev = theta_lattice(rs, lattice, muw, m, point.tau, zq, tq, tol=per_tol)
        acc += w.sign * ev.value
        tails += ev.tail_bound
        pts = max(pts, ev.truncation_order)
    return SeriesEval(label.ybar.sign * acc, pts, tails)


def _char_denominator(rs: FiniteRootSystem, point: EvalPoint, tol: float) -> SeriesEval:
    W = enumerate_weyl(rs)
    x = point.x_or_zero(rs.rank)
    acc = 0j
    tails = 0.0
    pts = 0
    per_tol = tol / max(len(W), 1)
    for w in W:
        ev = theta_lattice(
            rs, rs.latt_Qvee, w.act(rs.rho), rs.hvee, point.tau, x, point.t,
            tol=per_tol,
        )
        acc += w.sign * ev.value
        tails += ev.tail_bound
        pts = max(pts, ev.truncation_order)
    return SeriesEval(acc, pts, tails)


def char_chi(
    ld: LevelData, label: AdmissibleLabel, point: EvalPoint, tol: float = 1e-10
) -> SeriesEval:
    """Normalised character at an evaluation point.

    chi = numerator / denominator.  The leading power q^{h_lambda - c/24}
    is already carried by the numerator theta labels: the exact exponent
    h_lambda - c/24 - |lambda+rho|^2 q/2p + (rho, rho)/2 hvee vanishes
    identically by the strange formula, so no external power of q is
    applied.  Points on a reflection wall raise PolarPointError.
    """
    rs = ld.rs
    x = point.x_or_zero(rs.rank)
    if _wall_distance_proxy(rs, point.tau, x) < 1e-9:
        raise PolarPointError("evaluation point lies on a reflection wall")
    num = char_numerator(ld, label, point, tol=tol)
    den = _char_denominator(rs, point, tol=tol)
    if den.value == 0:
        raise PolarPointError("character denominator vanishes at this point")
    value = num.value / den.value
    tail = abs(value) * (
        num.tail_bound / max(abs(num.value), 1e-300)
        + den.tail_bound / max(abs(den.value), 1e-300)
    )
    return SeriesEval(value, max(num.truncation_order, den.truncation_order), tail)


def _neville_even(samples) -> Tuple[complex, float]:
    """Richardson extrapolation in eps^2 from (eps, value) samples."""
    xs = [e * e for e, _ in samples]
    work = [v for _, v in samples]
    k = len(xs)
    diag = [work[0]]
    for level in range(1, k):
        nxt = []
        for i in range(k - level):
            num = xs[i] * work[i + 1] - xs[i + level] * work[i]
            nxt.append(num / (xs[i] - xs[i + level]))
        work = nxt
        diag.append(work[0])
    value = diag[-1]
    err = abs(diag[-1] - diag[-2]) if len(diag) > 1 else math.inf
    if not cmath.isfinite(value):
        raise ExtrapolationError("extrapolation produced a non-finite value")
    return value, err


def psi_w(
    ld: LevelData,
    label: AdmissibleLabel,
    tau: complex,
    eps0: float = 0.2,
    z0=None,
    depth: int = 4,
    tol: float = 1e-12,
) -> Tuple[complex, float]:
    """Limit of chi * Theta_g along a generic direction at x -> 0.

    The direction defaults to nu(rho_vee). The product is symmetrised in
    eps and extrapolated in eps^2 by a depth-point Neville scheme; returns
    (value, error_estimate). Degenerate labels give a vanishing limit.
    """
    rs = ld.rs
    if z0 is None:
        z0 = rs.rhovee
    z0 = tuple(complex(v) for v in z0)

    def sample(e: float) -> complex:
        x = tuple(e * v for v in z0)
        pt = EvalPoint(tau, x, 0j)
        chi = char_chi(ld, label, pt, tol=tol)
        return chi.value * theta_g(rs, tau, x)

    pairs = []
    for j in range(depth):
        e = eps0 / (2**j)
        pairs.append((e, (sample(e) + sample(-e)) / 2))
    return _neville_even(pairs)


def char_at_zero(
    ld: LevelData,
    label: AdmissibleLabel,
    tau: complex,
    eps0: float = 0.1,
    z0=None,
    depth: int = 2,
    tol: float = 1e-12,
) -> Tuple[complex, float]:
    """Extrapolated character value at x = 0 (finite for integrable labels)."""
    rs = ld.rs
    if z0 is None:
        z0 = rs.rhovee
    z0 = tuple(complex(v) for v in z0)

    def sample(e: float) -> complex:
        pt = EvalPoint(tau, tuple(e * v for v in z0), 0j)
        return char_chi(ld, label, pt, tol=tol).value

    pairs = []
    for j in range(depth):
        e = eps0 / (2**j)
        pairs.append((e, (sample(e) + sample(-e)) / 2))
    return _neville_even(pairs)
