"""Modular S and T matrices on admissible weights.

Entries are finite sums of roots of unity: every phase is a rational
number collected exactly modulo 1, and floating point enters only in the
final exponential. The principal and coprincipal normalisations differ
only in the index N of pq times the translation lattice inside the
weight side lattice.
"""

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from .admissible import AdmissibleLabel, LevelData, enumerate_admissible
from .ratlin import mat_scale
from .rootsys import AffineWeight
from .weyl import enumerate_weyl

__all__ = [
    "ExactPhase",
    "SMatrix",
    "build_smatrix",
    "conformal_weight",
    "norm_index",
    "smatrix_entry",
    "tmatrix",
    "tmatrix_exponents",
    "verify_sl2_relations",
]


def _mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


class ExactPhase:
    """A finite sum of coefficients times e^{2 pi i theta}, theta rational.

    Terms with equal phase modulo 1 are merged while still exact; the
    complex value is produced once at the end, with compensated summation.
    """

    __slots__ = ("terms",)

    def __init__(self):
        self.terms = {}

    def add(self, theta: Fraction, coeff=1):
        t = _mod1(theta)
        c = self.terms.get(t, 0) + coeff
        if c:
            self.terms[t] = c
        else:
            self.terms.pop(t, None)

    def __len__(self):
        return len(self.terms)

    def value(self) -> complex:
        re = math.fsum(
            float(c) * math.cos(2.0 * math.pi * float(t))
            for t, c in self.terms.items()
        )
        im = math.fsum(
            float(c) * math.sin(2.0 * math.pi * float(t))
            for t, c in self.terms.items()
        )
        return complex(re, im)


def norm_index(ld: LevelData) -> int:
    """The lattice index N normalising the S matrix.

    Principal: index of pq Qvee in the weight lattice P. Coprincipal:
    index of pq Q in the coweight lattice Qstar.
    """
    rs = ld.rs
    from .ratlin import lattice_index

    if ld.variant == "principal":
        return lattice_index(rs.latt_P, mat_scale(ld.p * ld.q, rs.latt_Qvee))
    return lattice_index(rs.latt_Qstar, mat_scale(ld.p * ld.q, rs.latt_Q))


def conformal_weight(ld: LevelData, lam) -> Fraction:
    """h = (lam, lam + 2 rho) / (2 (k + hvee)) for a level-k weight."""
    rs = ld.rs
    fin = lam.finite if isinstance(lam, AffineWeight) else tuple(lam)
    two_rho = tuple(2 * r for r in rs.rho)
    num = rs.inner_finite(fin, tuple(a + b for a, b in zip(fin, two_rho)))
    return num / (2 * ld.m)


def _entry_phase(ld: LevelData, a: AdmissibleLabel, b: AdmissibleLabel) -> ExactPhase:
    rs = ld.rs
    W = enumerate_weyl(rs)
    nu_a, nu_b = a.nu.finite, b.nu.finite
    base = -(
        rs.inner_finite(nu_a, b.beta)
        + rs.inner_finite(nu_b, a.beta)
        + ld.m * rs.inner_finite(a.beta, b.beta)
    )
    base += Fraction(rs.num_positive_roots, 4)
    eps_y = a.ybar.sign * b.ybar.sign
    ratio = Fraction(ld.q, ld.p)
    acc = ExactPhase()
    for w in W:
        theta = base - ratio * rs.inner_finite(w.act(nu_a), nu_b)
        acc.add(theta, eps_y * w.sign)
    return acc


def smatrix_entry(
    ld: LevelData, a: AdmissibleLabel, b: AdmissibleLabel, exact: bool = True
) -> complex:
    """One S-matrix entry between two admissible labels.

    With exact=True all phases are combined as rationals before the final
    exponential; exact=False accumulates floating point phases directly and
    exists for benchmarking the difference.
    """
    scale = 1.0 / math.sqrt(norm_index(ld))
    if exact:
        return scale * _entry_phase(ld, a, b).value()
    rs = ld.rs
    W = enumerate_weyl(rs)
    nu_a, nu_b = a.nu.finite, b.nu.finite
    base = -float(
        rs.inner_finite(nu_a, b.beta)
        + rs.inner_finite(nu_b, a.beta)
        + ld.m * rs.inner_finite(a.beta, b.beta)
    )
    base += rs.num_positive_roots / 4.0
    eps_y = a.ybar.sign * b.ybar.sign
    ratio = ld.q / ld.p
    total = 0.0 + 0.0j
    for w in W:
        theta = base - ratio * float(rs.inner_finite(w.act(nu_a), nu_b))
        total += eps_y * w.sign * cmath.exp(2j * math.pi * theta)
    return scale * total


@dataclass
class SMatrix:
    """S matrix over an ordered tuple of admissible labels."""

    level_data: LevelData
    labels: Tuple[AdmissibleLabel, ...]
    matrix: np.ndarray
    norm_const: int

    @property
    def kind(self) -> str:
        return self.level_data.variant

    def index_of(self, label: AdmissibleLabel) -> int:
        return self.labels.index(label)


def build_smatrix(
    ld: LevelData,
    labels: Optional[Tuple[AdmissibleLabel, ...]] = None,
    exact: bool = True,
    threads: Optional[int] = None,
) -> SMatrix:
    """S matrix over all admissible labels (or a given subset).

    The matrix is symmetric, so only the upper triangle is computed. A
    thread count above 1 distributes rows over a pool.
    """
    if labels is None:
        labels = enumerate_admissible(ld)
    n = len(labels)
    out = np.zeros((n, n), dtype=np.complex128)

    def fill_row(i: int):
        for j in range(i, n):
            out[i, j] = smatrix_entry(ld, labels[i], labels[j], exact=exact)

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(fill_row, range(n)))
    else:
        for i in range(n):
            fill_row(i)
    for i in range(n):
        for j in range(i):
            out[i, j] = out[j, i]
    return SMatrix(ld, tuple(labels), out, norm_index(ld))


def tmatrix_exponents(
    ld: LevelData, labels: Optional[Tuple[AdmissibleLabel, ...]] = None
) -> Tuple[Fraction, ...]:
    """Exact exponents h_lambda - c/24 of the diagonal T matrix."""
    if labels is None:
        labels = enumerate_admissible(ld)
    c24 = ld.central_charge / 24
    return tuple(conformal_weight(ld, lab.lam) - c24 for lab in labels)


def tmatrix(
    ld: LevelData, labels: Optional[Tuple[AdmissibleLabel, ...]] = None
) -> np.ndarray:
    exps = tmatrix_exponents(ld, labels)
    return np.diag(
        [cmath.exp(2j * math.pi * float(_mod1(e))) for e in exps]
    ).astype(np.complex128)


def verify_sl2_relations(
    ld: LevelData,
    labels: Optional[Tuple[AdmissibleLabel, ...]] = None,
    exact: bool = True,
    threads: Optional[int] = None,
) -> dict:
    """Numerical check of the modular group relations for S and T.

    Reports the deviation of S from unitarity, of S^2 from a signed
    permutation matrix (the conjugation; at fractional level the nonzero
    entries can be -1), of S^4 from the identity, and of (ST)^3 from S^2.
    Keys: unitarity_error, conjugation, conjugation_signs, is_permutation,
    s_squared_error, s_fourth_error, st_cubed_error, max_error.
    """
    sm = build_smatrix(ld, labels, exact=exact, threads=threads)
    S = sm.matrix
    T = tmatrix(ld, sm.labels)
    n = S.shape[0]
    eye = np.eye(n)
    uni = float(np.abs(S @ S.conj().T - eye).max())
    S2 = S @ S
    perm = tuple(int(np.argmax(np.abs(S2[i]))) for i in range(n))
    signs = tuple(int(round(S2[i, j].real)) for i, j in enumerate(perm))
    P = np.zeros((n, n))
    for i, (j, s) in enumerate(zip(perm, signs)):
        P[i, j] = s
    is_perm = (
        sorted(perm) == list(range(n))
        and all(perm[perm[i]] == i for i in range(n))
        and all(s in (1, -1) for s in signs)
    )
    s2_err = float(np.abs(S2 - P).max())
    s4_err = float(np.abs(S2 @ S2 - eye).max())
    ST = S @ T
    st3_err = float(np.abs(ST @ ST @ ST - S2).max())
    errs = [uni, s2_err, s4_err, st3_err]
    return {
        "unitarity_error": uni,
        "conjugation": perm,
        "conjugation_signs": signs,
        "is_permutation": bool(is_perm),
        "s_squared_error": s2_err,
        "s_fourth_error": s4_err,
        "st_cubed_error": st3_err,
        "max_error": max(errs),
    }
