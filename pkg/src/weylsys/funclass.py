"""Numerical certification of function classes on the upper half plane:
Herglotz positivity, Stieltjes / inverse Stieltjes conditions, sectorial
kernel positivity, boundary limits along the negative axis, and extraction
of the integral-representation data (gamma, G) of an inverse Stieltjes
function

    V(z) = gamma + int_0^inf (1/(t-z) - 1/t) dG(t),   gamma <= 0.

Conjugate-point values are obtained by reflection, V(conj z) = conj V(z),
which all functions built from a real potential satisfy.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DegeneratePoints, Divergent, NotInverseStieltjes
from .malpha import AlphaParam, neg_m_alpha
from .numerics import DEFAULT_TOL, ToleranceConfig, extrapolate_limit
from .weyl import MFunction

__all__ = [
    "SampledFunction",
    "MeasureTable",
    "neg_m_infinity_function",
    "recip_m_infinity_function",
    "neg_m_alpha_function",
    "default_upper_grid",
    "herglotz_check",
    "stieltjes_check",
    "inverse_stieltjes_check",
    "sectorial_kernel_psd",
    "sectorial_kernel_trials",
    "sample_upper_points",
    "extract_measure",
    "integral_dG_over_t",
    "class_s01r_check",
    "class_limits",
]

DOMAIN_EXT_AXIS = "ext_nonneg_axis"
DOMAIN_UPPER = "upper_half_plane"


@dataclass(frozen=True)
class SampledFunction:
    """A scalar analytic function given by an evaluator, tagged with the
    domain it is trusted on."""

    eval: Callable[[complex], complex]
    domain_tag: str = DOMAIN_EXT_AXIS
    label: str = ""


def neg_m_infinity_function(mf: MFunction) -> SampledFunction:
    return SampledFunction(
        eval=lambda z: -mf.value(z), label=f"-m[{mf.potential.label}]"
    )


def recip_m_infinity_function(mf: MFunction) -> SampledFunction:
    return SampledFunction(
        eval=lambda z: 1.0 / mf.value(z), label=f"1/m[{mf.potential.label}]"
    )


def neg_m_alpha_function(mf: MFunction, a: AlphaParam) -> SampledFunction:
    return SampledFunction(
        eval=lambda z: neg_m_alpha(mf.value(z), a, mf.tol),
        label=f"-m_alpha[{mf.potential.label}, tan={a.tan_alpha:g}]",
    )


def default_upper_grid(n_re: int = 10, n_im: int = 10) -> list[complex]:
    """Deterministic upper-half-plane grid biased toward the sensitive
    region near the origin on the negative-real side."""
    res = [-5.0, -2.0, -1.0, -0.5, -0.2, -0.05, 0.5, 1.0, 2.0, 5.0]
    if n_re != 10:
        res = list(np.linspace(-5.0, 5.0, n_re))
    ims = list(np.geomspace(1e-2, 10.0, n_im))
    return [complex(a, b) for a in res for b in ims]


def herglotz_check(
    f: SampledFunction,
    grid: Sequence[complex],
    psd_slack: float = DEFAULT_TOL.psd_slack,
) -> tuple[bool, float]:
    """Pass iff Im f(z) >= -psd_slack across the grid (grid in C+)."""
    min_im = min(f.eval(z).imag for z in grid)
    return min_im >= -psd_slack, min_im


def stieltjes_check(
    f: SampledFunction,
    grid: Sequence[complex],
    psd_slack: float = DEFAULT_TOL.psd_slack,
) -> tuple[bool, float]:
    """Pass iff Im[z f(z)]/Im z >= -psd_slack across the grid."""
    min_val = min((z * f.eval(z)).imag / z.imag for z in grid)
    return min_val >= -psd_slack, min_val


def inverse_stieltjes_check(
    f: SampledFunction,
    grid: Sequence[complex],
    psd_slack: float = DEFAULT_TOL.psd_slack,
) -> tuple[bool, float]:
    """Pass iff Im[f(z)/z]/Im z >= -psd_slack across the grid."""
    min_val = min((f.eval(z) / z).imag / z.imag for z in grid)
    return min_val >= -psd_slack, min_val


def _cot(beta: float) -> float:
    if beta == math.pi / 2:
        return 0.0
    return math.cos(beta) / math.sin(beta)


def sectorial_kernel_psd(
    f: SampledFunction,
    beta: float,
    z_points: Sequence[complex],
    psd_slack: float = DEFAULT_TOL.psd_slack,
) -> tuple[bool, float]:
    """Positivity of the sectorial-class kernel at the given points:

        K[k,l] = (a_k - conj(a_l))/(z_k - conj(z_l)) - cot(beta) conj(a_l) a_k

    with a_k = f(z_k)/z_k.  Positive semidefiniteness of this matrix over
    every finite point set is the membership condition for the sectorial
    class with half-angle beta; beta = pi/2 reduces to the inverse
    Stieltjes condition.  Returns (pass, min eigenvalue).
    """
    zs = [complex(z) for z in z_points]
    n = len(zs)
    if n == 0 or n > 16:
        raise ValueError("need 1..16 points")
    for i in range(n):
        if zs[i].imag <= 0:
            raise ValueError(f"point {zs[i]!r} not in the open upper half plane")
        for j in range(i + 1, n):
            if abs(zs[i] - zs[j]) < 1e-12:
                raise DegeneratePoints(f"points {i} and {j} coincide")
    cot = _cot(beta)
    a = np.array([f.eval(z) / z for z in zs], dtype=complex)
    z = np.array(zs)
    K = (a[:, None] - np.conj(a)[None, :]) / (z[:, None] - np.conj(z)[None, :])
    K -= cot * np.conj(a)[None, :] * a[:, None]
    K = 0.5 * (K + K.conj().T)
    min_eig = float(np.linalg.eigvalsh(K)[0])
    return min_eig >= -psd_slack, min_eig


def sample_upper_points(
    rng: random.Random,
    n: int,
    radius_range: tuple[float, float] = (0.05, 20.0),
    angle_range: tuple[float, float] = (0.02, 3.0),
) -> list[complex]:
    """Draw n distinct points in C+, log-uniform in radius and in the polar
    angle (biased toward the positive real axis, where the kernel
    positivity is tightest)."""
    pts: list[complex] = []
    lo_r, hi_r = math.log(radius_range[0]), math.log(radius_range[1])
    lo_a, hi_a = math.log(angle_range[0]), math.log(angle_range[1])
    while len(pts) < n:
        r = math.exp(rng.uniform(lo_r, hi_r))
        theta = math.exp(rng.uniform(lo_a, hi_a))
        zc = r * complex(math.cos(theta), math.sin(theta))
        if all(abs(zc - p) > 1e-9 for p in pts):
            pts.append(zc)
    return pts


def sectorial_kernel_trials(
    f: SampledFunction,
    beta: float,
    n_points: int = 8,
    trials: int = 100,
    seed: int = 0,
    psd_slack: float = DEFAULT_TOL.psd_slack,
    radius_range: tuple[float, float] = (0.05, 20.0),
    angle_range: tuple[float, float] = (0.02, 3.0),
) -> tuple[bool, float]:
    """Randomized protocol for 'arbitrary point sequences': run the kernel
    test over seeded random point sets.  Returns (all trials pass, worst
    minimum eigenvalue seen)."""
    rng = random.Random(seed)
    worst = math.inf
    ok = True
    for _ in range(trials):
        pts = sample_upper_points(rng, n_points, radius_range, angle_range)
        passed, min_eig = sectorial_kernel_psd(f, beta, pts, psd_slack)
        worst = min(worst, min_eig)
        ok = ok and passed
    return ok, worst


@dataclass(eq=False)
class MeasureTable:
    """Sampled density dG/dt, cumulative mass, and the constant gamma of
    the integral representation."""

    t_grid: np.ndarray
    density: np.ndarray
    gamma: float
    cumulative: np.ndarray

    def __post_init__(self) -> None:
        self.t_grid = np.asarray(self.t_grid, dtype=float)
        self.density = np.asarray(self.density, dtype=float)
        self.cumulative = np.asarray(self.cumulative, dtype=float)
        if self.t_grid.ndim != 1 or np.any(self.t_grid <= 0):
            raise ValueError("t_grid must be 1-d and positive")
        if np.any(np.diff(self.t_grid) <= 0):
            raise ValueError("t_grid must be strictly increasing")
        if np.any(np.diff(self.cumulative) < 0):
            raise ValueError("cumulative mass must be non-decreasing")


def extract_measure(
    f: SampledFunction,
    t_grid: Sequence[float],
    eps_schedule: Optional[Sequence[float]] = None,
    tol: ToleranceConfig = DEFAULT_TOL,
    check_grid: Optional[Sequence[complex]] = None,
) -> MeasureTable:
    """Recover (gamma, G) of an inverse Stieltjes function by boundary
    inversion: density(t) = (1/pi) lim Im f(t + i eps), gamma = f(-0).

    The function is first screened with the inverse Stieltjes sampling
    test; the density limit is extrapolated over the eps schedule, the
    gamma limit in sqrt(eps) (the natural variable at 0).  Cumulative mass
    is the trapezoid integral of the density with G(t_grid[0]) = 0.
    """
    grid = list(check_grid) if check_grid is not None else default_upper_grid()
    passed, min_val = inverse_stieltjes_check(f, grid, tol.psd_slack)
    if not passed:
        raise NotInverseStieltjes(
            f"{f.label or 'function'}: Im[f(z)/z]/Im z reaches {min_val:.3e}"
        )
    eps = tuple(eps_schedule) if eps_schedule is not None else tol.limit_eps_schedule

    ts = np.asarray(sorted(float(t) for t in t_grid), dtype=float)
    if ts.size == 0 or ts[0] <= 0:
        raise ValueError("t_grid must be positive")
    density = np.empty_like(ts)
    for i, t in enumerate(ts):
        samples = [(e, f.eval(complex(t, e)).imag / math.pi) for e in eps]
        val, _ = extrapolate_limit(samples)
        density[i] = val.real

    if np.any(density < -tol.psd_slack):
        raise NotInverseStieltjes("negative boundary density")
    density = np.maximum(density, 0.0)

    gamma_samples = [(math.sqrt(e), f.eval(complex(-e, 0.0))) for e in eps]
    gamma_val, _ = extrapolate_limit(gamma_samples)
    gamma = float(gamma_val.real)
    if gamma > tol.psd_slack:
        raise NotInverseStieltjes(f"gamma = {gamma:.3e} > 0")

    increments = 0.5 * (density[1:] + density[:-1]) * np.diff(ts)
    cumulative = np.concatenate(([0.0], np.cumsum(increments)))
    return MeasureTable(t_grid=ts, density=density, gamma=gamma, cumulative=cumulative)


def integral_dG_over_t(mt: MeasureTable, t_min: float, t_max: float) -> float:
    """Trapezoid estimate of int density(t)/t dt over [t_min, t_max]
    (restricted to grid points inside the window)."""
    if not (0 < t_min < t_max):
        raise ValueError("need 0 < t_min < t_max")
    mask = (mt.t_grid >= t_min) & (mt.t_grid <= t_max)
    ts = mt.t_grid[mask]
    if ts.size < 2:
        return 0.0
    return float(np.trapezoid(mt.density[mask] / ts, ts))


def class_s01r_check(mt: MeasureTable, growth_threshold: float = 0.5) -> bool:
    """True iff the cumulative mass fails to plateau over the last decade
    of the grid — the unbounded-measure signature."""
    t_max = float(mt.t_grid[-1])
    c_hi = float(mt.cumulative[-1])
    c_mid = float(np.interp(t_max / 10.0, mt.t_grid, mt.cumulative))
    return c_hi - c_mid > growth_threshold * c_mid


def class_limits(
    f: SampledFunction,
    eps_schedule: Optional[Sequence[float]] = None,
    r_schedule: Sequence[float] = (1e2, 1e3, 1e4, 1e5),
    tol: ToleranceConfig = DEFAULT_TOL,
) -> tuple[float, float]:
    """Boundary limits of f along the negative real axis: at 0 from the
    left (extrapolated in sqrt(eps)) and at -inf (extrapolated in
    1/sqrt(R), matching the sqrt growth of m-functions).  A divergent
    extrapolation maps to a signed infinity."""
    eps = tuple(eps_schedule) if eps_schedule is not None else tol.limit_eps_schedule

    zero_samples = [(math.sqrt(e), f.eval(complex(-e, 0.0))) for e in eps]
    try:
        v0, _ = extrapolate_limit(zero_samples)
        lim_zero = float(v0.real)
    except Divergent:
        lim_zero = math.copysign(math.inf, zero_samples[-1][1].real)

    rs = sorted(float(r) for r in r_schedule)
    inf_samples = [(1.0 / math.sqrt(r), f.eval(complex(-r, 0.0))) for r in rs]
    try:
        vi, _ = extrapolate_limit(inf_samples)
        lim_inf = float(vi.real)
    except Divergent:
        lim_inf = math.copysign(math.inf, inf_samples[-1][1].real)

    return lim_zero, lim_inf
