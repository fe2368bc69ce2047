"""The family m_alpha(z) obtained from m(z) by a linear-fractional
transform, and its Herglotz companion -m_alpha(z).

    m_alpha = (sin(a) + m cos(a)) / (cos(a) - m sin(a))

The angle enters only through tan(a), so parameters are reduced modulo pi;
a = pi/2 (infinite tangent) is a first-class case.  The special values
tan(a) in {0, +-inf} are short-circuited so the identity and reciprocal
cases are exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PoleHit
from .numerics import DEFAULT_TOL, ToleranceConfig

__all__ = ["AlphaParam", "m_alpha", "neg_m_alpha"]

_HALF_PI = math.pi / 2.0


def _reduce_mod_pi(a: float) -> float:
    """Map an angle into (-pi/2, pi/2] modulo pi."""
    r = math.fmod(a, math.pi)
    if r > _HALF_PI:
        r -= math.pi
    elif r <= -_HALF_PI:
        r += math.pi
    return r


@dataclass(frozen=True)
class AlphaParam:
    """Boundary-condition angle with an extended-real tangent.

    ``alpha`` is stored reduced to (-pi/2, pi]; ``tan_alpha`` may be
    math.inf (alpha = pi/2).
    """

    alpha: float
    tan_alpha: float

    @classmethod
    def from_alpha(cls, alpha: float) -> "AlphaParam":
        stored = alpha if -_HALF_PI < alpha <= math.pi else _reduce_mod_pi(alpha)
        r = _reduce_mod_pi(stored)
        tan = math.inf if r == _HALF_PI else math.tan(r)
        return cls(alpha=stored, tan_alpha=tan)

    @classmethod
    def from_tan(cls, tan_alpha: float) -> "AlphaParam":
        if math.isinf(tan_alpha):
            return cls(alpha=_HALF_PI, tan_alpha=math.inf)
        return cls(alpha=math.atan(tan_alpha), tan_alpha=float(tan_alpha))

    @property
    def is_vertical(self) -> bool:
        return math.isinf(self.tan_alpha)


def m_alpha(
    m_inf_value: complex, a: AlphaParam, tol: ToleranceConfig = DEFAULT_TOL
) -> complex:
    """Transform one value of m into the corresponding value of m_alpha.

    Raises PoleHit when the evaluation point sits on a pole of m_alpha
    (an eigenvalue of the underlying self-adjoint boundary condition).
    """
    m = complex(m_inf_value)
    t = a.tan_alpha
    if t == 0.0:
        return m
    if math.isinf(t):
        if abs(m) < tol.abs_tol:
            raise PoleHit("m_alpha pole: m = 0 at alpha = pi/2")
        return -1.0 / m
    if abs(t) <= 1.0:
        den = 1.0 - m * t
        if abs(den) < tol.abs_tol:
            raise PoleHit(f"m_alpha pole: m = cot(alpha) at tan(alpha)={t:g}")
        return (t + m) / den
    ct = 1.0 / t
    den = ct - m
    if abs(den) < tol.abs_tol:
        raise PoleHit(f"m_alpha pole: m = cot(alpha) at tan(alpha)={t:g}")
    return (1.0 + m * ct) / den


def neg_m_alpha(
    m_inf_value: complex, a: AlphaParam, tol: ToleranceConfig = DEFAULT_TOL
) -> complex:
    """The Herglotz companion -m_alpha, computed in the numerically
    symmetric form (tan + m)/(tan*m - 1), or its cotangent rewrite when
    |tan| > 1.  Identically equal to -m_alpha(...)."""
    m = complex(m_inf_value)
    t = a.tan_alpha
    if t == 0.0:
        return -m
    if math.isinf(t):
        if abs(m) < tol.abs_tol:
            raise PoleHit("m_alpha pole: m = 0 at alpha = pi/2")
        return 1.0 / m
    if abs(t) <= 1.0:
        den = t * m - 1.0
        if abs(den) < tol.abs_tol:
            raise PoleHit(f"m_alpha pole: m = cot(alpha) at tan(alpha)={t:g}")
        return (t + m) / den
    ct = 1.0 / t
    den = m - ct
    if abs(den) < tol.abs_tol:
        raise PoleHit(f"m_alpha pole: m = cot(alpha) at tan(alpha)={t:g}")
    return (1.0 + m * ct) / den
