"""Parameter-level representation of the dissipative boundary-value systems
Theta_{mu,h} attached to a half-line Schrodinger operator, and their
transfer / impedance functions.

A system is fully determined by the pair (mu, h) with mu in R union {inf}
and Im h > 0, together with the underlying Weyl coefficient m(z); every
observable scalar factors through

    W(z) = (mu - h)/(mu - conj(h)) * (m(z) + conj(h))/(m(z) + h)
    V(z) = ((m(z) + mu) Im h) / ((mu - Re h) m(z) + mu Re h - |h|^2)

with the mu = inf limits W = (m + conj(h))/(m + h), V = Im h/(m + Re h).
The operator-theoretic ingredients behind (mu, h) are never materialized.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PoleHit
from .malpha import AlphaParam, neg_m_alpha
from .weyl import MFunction, eval_m_infinity

__all__ = [
    "LSystemParams",
    "QuasiKernelBC",
    "RealizationTarget",
    "impedance",
    "transfer",
    "vw_consistency",
    "quasi_kernel_xi",
    "realize",
]


@dataclass(frozen=True)
class LSystemParams:
    """The pair (mu, h) plus the underlying m-function; mu may be math.inf."""

    mu: float
    h: complex
    mf: MFunction

    def __post_init__(self) -> None:
        if not (self.h.imag > 0):
            raise ValueError("h must have Im h > 0")
        if math.isnan(self.mu):
            raise ValueError("mu must be a real number or inf")


@dataclass(frozen=True)
class QuasiKernelBC:
    """Self-adjoint boundary condition y'(ell) = xi * y(ell) carried by the
    real part of the state-space operator; xi = inf encodes Dirichlet."""

    xi: float


class RealizationTarget:
    NEG_M_INFINITY = "neg_m_infinity"
    RECIP_M_INFINITY = "recip_m_infinity"
    NEG_M_ALPHA = "neg_m_alpha"


def _impedance_from_m(m: complex, mu: float, h: complex, abs_tol: float) -> complex:
    if math.isinf(mu):
        den = m + h.real
        if abs(den) < abs_tol:
            raise PoleHit("impedance pole: m = -Re h at mu = inf")
        return h.imag / den
    den = (mu - h.real) * m + mu * h.real - abs(h) ** 2
    if abs(den) < abs_tol:
        raise PoleHit(f"impedance pole at mu={mu:g}, h={h!r}")
    return (m + mu) * h.imag / den


def impedance(sys: LSystemParams, z: complex) -> complex:
    """V(z), the impedance of Theta_{mu,h} at z."""
    m = eval_m_infinity(sys.mf, z).value
    return _impedance_from_m(m, sys.mu, sys.h, sys.mf.tol.abs_tol)


def _transfer_from_m(m: complex, mu: float, h: complex, abs_tol: float) -> complex:
    den = m + h
    if abs(den) < abs_tol:
        raise PoleHit("transfer pole: m = -h")
    ratio = (m + h.conjugate()) / den
    if math.isinf(mu):
        return ratio
    return (mu - h) / (mu - h.conjugate()) * ratio


def transfer(sys: LSystemParams, z: complex) -> complex:
    """W(z), the transfer function of Theta_{mu,h} at z."""
    m = eval_m_infinity(sys.mf, z).value
    return _transfer_from_m(m, sys.mu, sys.h, sys.mf.tol.abs_tol)


def vw_consistency(sys: LSystemParams, z: complex) -> float:
    """Residual of the Cayley relations between V and W at z:

        |V - i(W+1)^{-1}(W-1)| + |W - (1+iV)^{-1}(1-iV)|

    Zero in exact arithmetic.
    """
    m = eval_m_infinity(sys.mf, z).value
    abs_tol = sys.mf.tol.abs_tol
    v = _impedance_from_m(m, sys.mu, sys.h, abs_tol)
    w = _transfer_from_m(m, sys.mu, sys.h, abs_tol)
    r1 = abs(v - 1j * (w - 1.0) / (w + 1.0))
    r2 = abs(w - (1.0 - 1j * v) / (1.0 + 1j * v))
    return r1 + r2


def quasi_kernel_xi(sys: LSystemParams) -> QuasiKernelBC:
    """Boundary parameter xi = (mu Re h - |h|^2)/(mu - Re h) of the
    quasi-kernel; inf (Dirichlet) when mu = Re h, Re h when mu = inf."""
    if math.isinf(sys.mu):
        return QuasiKernelBC(xi=sys.h.real)
    den = sys.mu - sys.h.real
    if den == 0.0:
        return QuasiKernelBC(xi=math.inf)
    return QuasiKernelBC(xi=(sys.mu * sys.h.real - abs(sys.h) ** 2) / den)


def realize(target: str, mf: MFunction, alpha: AlphaParam | None = None) -> LSystemParams:
    """The unique system Theta_{mu,h} whose impedance equals the target
    function built from m(z):

      - neg_m_infinity   -> (mu, h) = (0, i)
      - recip_m_infinity -> (mu, h) = (inf, i)
      - neg_m_alpha      -> (mu, h) = (tan(alpha), i)
    """
    if target == RealizationTarget.NEG_M_INFINITY:
        return LSystemParams(mu=0.0, h=1j, mf=mf)
    if target == RealizationTarget.RECIP_M_INFINITY:
        return LSystemParams(mu=math.inf, h=1j, mf=mf)
    if target == RealizationTarget.NEG_M_ALPHA:
        if alpha is None:
            raise ValueError("neg_m_alpha target needs an AlphaParam")
        return LSystemParams(mu=alpha.tan_alpha, h=1j, mf=mf)
    raise ValueError(f"unknown realization target {target!r}")
