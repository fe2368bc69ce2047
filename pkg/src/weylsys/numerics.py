"""Branch-consistent complex elementary functions, adaptive complex ODE
integration, and limit extrapolation.

Everything here is a pure function of its inputs; results are deterministic
for fixed arguments.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import Divergent, NonFinite, StepUnderflow

__all__ = [
    "ToleranceConfig",
    "DEFAULT_TOL",
    "principal_sqrt_upper",
    "integrate_complex_ode",
    "extrapolate_limit",
]


@dataclass(frozen=True)
class ToleranceConfig:
    """Shared tolerance knobs.

    ``abs_tol``/``rel_tol`` drive the adaptive integrator (error per unit
    step, so the end-to-end error is of the same order) and double as the
    threshold for pole detection in linear-fractional transforms.
    ``psd_slack`` is the round-off allowance for positivity tests.
    ``limit_eps_schedule`` is the default offset schedule for boundary
    limits; it must decrease strictly to 0.
    """

    abs_tol: float = 1e-9
    rel_tol: float = 1e-9
    psd_slack: float = 1e-8
    limit_eps_schedule: tuple[float, ...] = (1e-2, 1e-3, 1e-4, 1e-5)

    def __post_init__(self) -> None:
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("abs_tol and rel_tol must be strictly positive")
        if self.psd_slack < 0:
            raise ValueError("psd_slack must be >= 0")
        sched = tuple(float(e) for e in self.limit_eps_schedule)
        if len(sched) < 3:
            raise ValueError("eps schedule needs at least 3 entries")
        if any(e <= 0 for e in sched) or any(
            nxt >= prev for prev, nxt in zip(sched, sched[1:])
        ):
            raise ValueError("eps schedule must be strictly decreasing and positive")
        object.__setattr__(self, "limit_eps_schedule", sched)


DEFAULT_TOL = ToleranceConfig()


def principal_sqrt_upper(z: complex) -> complex:
    """Square root with branch cut on [0, +inf) approached from above.

    Returns w with w**2 == z and Im w >= 0; on the positive real axis the
    non-negative real root.  With this branch z -> i*sqrt(z) maps the upper
    half plane into itself.
    """
    z = complex(z)
    if z == 0:
        return 0j
    w = cmath.sqrt(z)
    if w.imag < 0.0:
        return -w
    return w


# Dormand-Prince 5(4) pair, 7 stages, FSAL.
_DP_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
# 5th-order weights equal the last A row; E = b5 - b4 gives the error estimate.
_DP_E = (
    71 / 57600,
    0.0,
    -71 / 16695,
    71 / 1920,
    -17253 / 339200,
    22 / 525,
    -1 / 40,
)

_MAX_STEPS = 10_000_000


def integrate_complex_ode(
    f: Callable[[float, Sequence[complex]], Sequence[complex]],
    x_from: float,
    x_to: float,
    state0: Sequence[complex],
    tol: ToleranceConfig = DEFAULT_TOL,
) -> list[complex]:
    """Integrate y' = f(x, y) for complex-vector y from x_from to x_to.

    Embedded Dormand-Prince 5(4) pair with PI step-size control; the local
    error budget is scaled per unit step, so the accumulated error at x_to
    is of order abs_tol + rel_tol*|y|.  Backward integration (x_to < x_from)
    is supported.

    Raises StepUnderflow when the required step falls below the machine
    threshold and NonFinite when the state leaves the finite range.
    """
    if x_from == x_to:
        raise ValueError("x_from and x_to must differ")
    y = [complex(v) for v in state0]
    n = len(y)
    if n == 0:
        raise ValueError("empty state")
    length = abs(x_to - x_from)
    direction = 1.0 if x_to > x_from else -1.0

    x = float(x_from)
    h = direction * min(length, max(1e-6, length / 100.0))
    k1 = list(f(x, y))
    err_prev = 1.0
    stages: list[list[complex]] = [k1] + [[0j] * n for _ in range(6)]

    for _ in range(_MAX_STEPS):
        h_min = 1e-13 * max(1.0, abs(x))
        if abs(h) < h_min:
            raise StepUnderflow(f"step {abs(h):.3e} below threshold at x={x:.6g}")
        last = direction * (x + h - x_to) >= 0.0
        h_eff = (x_to - x) if last else h

        failed = False
        for s in range(1, 7):
            ys = list(y)
            a_row = _DP_A[s]
            for j, a in enumerate(a_row):
                if a != 0.0:
                    kj = stages[j]
                    for i in range(n):
                        ys[i] += h_eff * a * kj[i]
            stages[s] = list(f(x + _DP_C[s] * h_eff, ys))
        y_new = ys  # FSAL: stage 7 is evaluated at the 5th-order solution

        err = 0.0
        budget_scale = abs(h_eff) / length
        for i in range(n):
            e = 0j
            for s in range(7):
                w = _DP_E[s]
                if w != 0.0:
                    e += w * stages[s][i]
            e *= h_eff
            yi = max(abs(y[i]), abs(y_new[i]))
            sc = (tol.abs_tol + tol.rel_tol * yi) * budget_scale
            r = abs(e) / sc
            if r != r:  # NaN
                failed = True
                break
            err = max(err, r)

        finite = not failed and all(
            math.isfinite(v.real) and math.isfinite(v.imag) for v in y_new
        )
        if not finite:
            if abs(h) <= 2.0 * h_min:
                raise NonFinite(f"state left finite range near x={x:.6g}")
            h *= 0.25
            err_prev = 1.0
            continue

        if err <= 1.0:
            if last:
                return y_new
            x += h_eff
            y = y_new
            stages[0] = stages[6]  # FSAL reuse
            e_clip = max(err, 1e-10)
            factor = 0.9 * e_clip ** -0.14 * err_prev ** 0.08
            err_prev = e_clip
            h *= min(5.0, max(0.2, factor))
        else:
            h *= min(0.9, max(0.2, 0.9 * err ** -0.2))

    raise NonFinite("step budget exhausted without reaching x_to")


def _neville_at_zero(xs: Sequence[float], vs: Sequence[complex]) -> list[complex]:
    """Diagonal of the Neville tableau for polynomial extrapolation to 0.

    Entry k is the value at 0 of the polynomial through the first k+1 samples.
    """
    n = len(xs)
    p = list(vs)
    diag = [p[0]]
    for m in range(1, n):
        for i in range(n - m):
            p[i] = (xs[i + m] * p[i] - xs[i] * p[i + 1]) / (xs[i + m] - xs[i])
        diag.append(p[0])
    return diag


def extrapolate_limit(
    samples: Sequence[tuple[float, complex]],
    divergence_bound: float = 1e8,
    growth_factor: float = 10.0,
) -> tuple[complex, float]:
    """Richardson-style extrapolation of v(eps) to eps -> 0.

    ``samples`` are (eps, value) pairs at strictly decreasing eps > 0.
    Polynomial (Neville) extrapolation in eps: exact for polynomials of
    degree < len(samples).  Returns (limit, err_estimate) where the error
    estimate is the gap between the two highest-order extrapolants.

    Raises Divergent when the successive extrapolants grow monotonically
    (total growth beyond ``growth_factor``) or exceed ``divergence_bound``,
    the signature of a genuinely infinite limit.
    """
    if len(samples) < 3:
        raise ValueError("need at least 3 samples")
    xs = [float(e) for e, _ in samples]
    vs = [complex(v) for _, v in samples]
    if any(e <= 0 for e in xs) or any(nxt >= prev for prev, nxt in zip(xs, xs[1:])):
        raise ValueError("eps values must be strictly decreasing and positive")

    diag = _neville_at_zero(xs, vs)
    mags = [abs(d) for d in diag]
    if any(m > divergence_bound or not math.isfinite(m) for m in mags):
        raise Divergent(f"extrapolant magnitude exceeds {divergence_bound:g}")
    monotone = all(b > a for a, b in zip(mags, mags[1:]))
    if monotone and mags[0] > 0 and mags[-1] / mags[0] > growth_factor:
        raise Divergent("extrapolants grow monotonically; limit diverges")

    return diag[-1], abs(diag[-1] - diag[-2])
