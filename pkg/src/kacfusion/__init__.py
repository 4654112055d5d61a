"""Admissible weights, modular matrices and W-algebra fusion for affine root systems."""

from .admissible import (
    AdmissibleLabel,
    LevelData,
    enumerate_admissible,
    label_from_mu,
    label_is_degenerate,
    verify_admissible,
)
from .chars import (
    EvalPoint,
    SeriesEval,
    char_at_zero,
    char_chi,
    char_numerator,
    dedekind_eta,
    psi_w,
    theta_g,
    theta_jacobi,
    theta_jacobi_check,
    theta_lattice,
    theta_lattice_check,
)
from .errors import (
    CapacityError,
    ChamberError,
    ExtrapolationError,
    FusionError,
    InvalidTypeError,
    KacfusionError,
    LatticeError,
    LevelError,
    PolarPointError,
)
from .rootsys import (
    AffineWeight,
    FiniteRootSystem,
    RootSystemSpec,
    TwistedAffineDatum,
    affine,
    all_specs,
    build_root_system,
    dual_root_system,
    langlands_dual_datum,
    parse_spec,
)
from .smatrix import (
    SMatrix,
    build_smatrix,
    conformal_weight,
    smatrix_entry,
    tmatrix,
    tmatrix_exponents,
    verify_sl2_relations,
)
from .walg import (
    FusionTensor,
    WLabel,
    central_charge_w,
    check_fkw_factorization,
    enumerate_wlabels,
    vacuum_index,
    verlinde,
    w_smatrix,
)
from .weyl import (
    ExtAffineElement,
    WeylElement,
    affine_to_dominant,
    coroot_basis_Sq,
    enumerate_weyl,
    extended_generators,
    simple_reflection,
    to_dominant,
    weyl_order,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibleLabel",
    "AffineWeight",
    "CapacityError",
    "ChamberError",
    "EvalPoint",
    "ExtAffineElement",
    "ExtrapolationError",
    "FiniteRootSystem",
    "FusionError",
    "FusionTensor",
    "InvalidTypeError",
    "KacfusionError",
    "LatticeError",
    "LevelData",
    "LevelError",
    "PolarPointError",
    "RootSystemSpec",
    "SMatrix",
    "SeriesEval",
    "TwistedAffineDatum",
    "WLabel",
    "WeylElement",
    "affine",
    "affine_to_dominant",
    "all_specs",
    "build_root_system",
    "build_smatrix",
    "central_charge_w",
    "char_at_zero",
    "char_chi",
    "char_numerator",
    "check_fkw_factorization",
    "conformal_weight",
    "coroot_basis_Sq",
    "dedekind_eta",
    "dual_root_system",
    "enumerate_admissible",
    "enumerate_weyl",
    "enumerate_wlabels",
    "extended_generators",
    "label_from_mu",
    "label_is_degenerate",
    "langlands_dual_datum",
    "parse_spec",
    "psi_w",
    "simple_reflection",
    "smatrix_entry",
    "theta_g",
    "theta_jacobi",
    "theta_jacobi_check",
    "theta_lattice",
    "theta_lattice_check",
    "tmatrix",
    "tmatrix_exponents",
    "to_dominant",
    "vacuum_index",
    "verify_admissible",
    "verify_sl2_relations",
    "verlinde",
    "w_smatrix",
    "weyl_order",
]
