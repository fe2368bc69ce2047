"""Weyl m-functions of half-line Schrodinger operators, their realization
as impedance functions of dissipative boundary systems, and classification
of the resulting operators and function classes."""

from .classify import (
    AngleSet,
    ClassVerdict,
    class_angles,
    classify_lsystem_alpha,
    classify_star_extension,
    classify_Th,
    krein_vonneumann_h,
)
from .funclass import (
    MeasureTable,
    SampledFunction,
    class_limits,
    class_s01r_check,
    extract_measure,
    herglotz_check,
    integral_dG_over_t,
    inverse_stieltjes_check,
    sectorial_kernel_psd,
    stieltjes_check,
)
from .lsystem import (
    LSystemParams,
    QuasiKernelBC,
    RealizationTarget,
    impedance,
    quasi_kernel_xi,
    realize,
    transfer,
    vw_consistency,
)
from .malpha import AlphaParam, m_alpha, neg_m_alpha
from .numerics import (
    DEFAULT_TOL,
    ToleranceConfig,
    extrapolate_limit,
    integrate_complex_ode,
    principal_sqrt_upper,
)
from .potentials import Potential, bessel_potential, free_potential, table_potential
from .verification import CheckResult, run_acceptance
from .weyl import MFunction, MValue, eval_m_infinity, m_minus_zero, mfunction

__version__ = "0.1.0"
