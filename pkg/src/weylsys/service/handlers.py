"""Pipeline functions: one per endpoint, request model in, response model
out.  The HTTP layer and the CLI are both thin clients of these."""
from __future__ import annotations

import dataclasses
import math
from typing import Optional

import numpy as np

from ..classify import classify_full_alpha, classify_full_mu_h
from ..funclass import extract_measure, neg_m_alpha_function
from ..lsystem import RealizationTarget, realize
from ..malpha import AlphaParam, m_alpha, neg_m_alpha
from ..numerics import DEFAULT_TOL, ToleranceConfig
from ..potentials import Potential, bessel_potential, free_potential, load_table_csv
from ..verification import run_acceptance
from ..weyl import MFunction, eval_m_infinity, m_minus_zero, mfunction
from . import schemas as S


class SpecError(ValueError):
    """Malformed user-facing specification (usage-level error)."""


def resolve_potential(spec: str) -> Potential:
    kind, _, arg = spec.partition(":")
    kind = kind.strip().lower()
    try:
        if kind == "bessel":
            return bessel_potential(float(arg) if arg else 1.5)
        if kind == "free":
            return free_potential(float(arg) if arg else 0.0)
        if kind == "table":
            if not arg:
                raise SpecError("table potential needs a path: table:PATH")
            return load_table_csv(arg)
    except SpecError:
        raise
    except (ValueError, OSError) as exc:
        raise SpecError(f"bad potential spec {spec!r}: {exc}") from exc
    raise SpecError(f"unknown potential spec {spec!r} (use bessel:NU, free:ELL, table:PATH)")


def build_tolerance(overrides: Optional[S.ToleranceOverrides]) -> ToleranceConfig:
    if overrides is None:
        return DEFAULT_TOL
    base = DEFAULT_TOL
    return ToleranceConfig(
        abs_tol=overrides.abs_tol or base.abs_tol,
        rel_tol=overrides.rel_tol or base.rel_tol,
        psd_slack=base.psd_slack if overrides.psd_slack is None else overrides.psd_slack,
        limit_eps_schedule=tuple(overrides.eps_schedule or base.limit_eps_schedule),
    )


def build_mfunction(opts: S.PotentialOptions) -> MFunction:
    p = resolve_potential(opts.potential)
    mode = None if opts.mode == "auto" else opts.mode
    return mfunction(
        p, mode, x_max=opts.x_max or 0.0, tol=build_tolerance(opts.tol)
    )


def _alpha_param(spec: S.AlphaSpec) -> AlphaParam:
    if spec.tan_alpha is not None:
        return AlphaParam.from_tan(spec.tan_alpha)
    return AlphaParam.from_alpha(spec.alpha)


def _m0_of(mf: MFunction) -> float:
    return m_minus_zero(mf)


def handle_eval_m(req: S.EvalMRequest) -> S.EvalMResponse:
    mf = build_mfunction(req)
    rows = []
    for zc in req.z:
        mv = eval_m_infinity(mf, zc.to_complex())
        rows.append(
            S.EvalMRow(
                z=zc,
                m=S.ComplexNumber.from_complex(mv.value),
                err_estimate=mv.err_estimate,
            )
        )
    return S.EvalMResponse(potential=mf.potential.label, mode=mf.mode, rows=rows)


def handle_eval_malpha(req: S.EvalMAlphaRequest) -> S.EvalMAlphaResponse:
    mf = build_mfunction(req)
    a = _alpha_param(req.angle)
    fn = neg_m_alpha if req.negate else m_alpha
    rows = []
    for zc in req.z:
        m = eval_m_infinity(mf, zc.to_complex()).value
        rows.append(
            S.EvalMAlphaRow(
                z=zc, value=S.ComplexNumber.from_complex(fn(m, a, mf.tol))
            )
        )
    return S.EvalMAlphaResponse(
        potential=mf.potential.label,
        alpha=a.alpha,
        tan_alpha=a.tan_alpha,
        negate=req.negate,
        rows=rows,
    )


_TARGETS = {
    "neg-m-infinity": RealizationTarget.NEG_M_INFINITY,
    "recip-m-infinity": RealizationTarget.RECIP_M_INFINITY,
    "neg-m-alpha": RealizationTarget.NEG_M_ALPHA,
}


def handle_realize(req: S.RealizeRequest) -> S.RealizeResponse:
    # The realization parameters depend only on the target, so no
    # m-function evaluation is needed here; any potential would do.
    mf = mfunction(bessel_potential(1.5), "closed_form")
    a = _alpha_param(req.angle) if req.angle is not None else None
    sys = realize(_TARGETS[req.target], mf, a)
    return S.RealizeResponse(
        target=req.target, mu=sys.mu, h=S.ComplexNumber.from_complex(sys.h)
    )


def _angles_model(angles) -> S.AngleSetModel:
    return S.AngleSetModel(
        beta1=angles.beta1,
        beta2=angles.beta2,
        tan_beta1=angles.tan_beta1,
        tan_beta2=angles.tan_beta2,
        beta_class=angles.beta_class,
        tan_beta_class=angles.tan_beta_class,
        beta_universal=angles.beta_universal,
        tan_beta_universal=angles.tan_beta_universal,
        t_exact_angle=angles.t_exact_angle,
    )


def _operator_model(verdict) -> S.OperatorVerdictModel:
    return S.OperatorVerdictModel(
        accretive=bool(verdict.operator_accretive),
        sectorial=bool(verdict.operator_sectorial),
        extremal=bool(verdict.operator_extremal),
        exact_angle=verdict.operator_exact_angle,
        exact_angle_tan=verdict.operator_exact_angle_tan,
    )


def handle_classify(req: S.ClassifyRequest) -> S.ClassifyResponse:
    mf = build_mfunction(req)
    m0 = _m0_of(mf)
    if req.angle is not None:
        a = _alpha_param(req.angle)
        verdict, angles, notes = classify_full_alpha(a, m0)
        return S.ClassifyResponse(
            potential=mf.potential.label,
            m_minus_zero=m0,
            alpha=a.alpha,
            tan_alpha=a.tan_alpha,
            operator=_operator_model(verdict),
            star_ext_class=verdict.star_ext_class,
            lsystem_class=verdict.lsystem_class,
            angles=_angles_model(angles) if angles is not None else None,
            notes=notes,
        )
    verdict, notes = classify_full_mu_h(req.mu, req.h.to_complex(), m0)
    return S.ClassifyResponse(
        potential=mf.potential.label,
        m_minus_zero=m0,
        mu=req.mu,
        h=req.h,
        operator=_operator_model(verdict),
        star_ext_class=verdict.star_ext_class,
        lsystem_class=verdict.lsystem_class,
        angles=None,
        notes=notes,
    )


def region_scan_alphas(count: int, m0: float) -> list[AlphaParam]:
    """Deterministic alpha grid that pins the exact class boundaries
    (tan = -m0, 0, 1/m0 when finite, and the vertical angle)."""
    specials = [0.0, math.inf]
    if math.isfinite(m0) and m0 > 0:
        specials += [-m0, 1.0 / m0]
    specials = sorted(set(specials), key=lambda t: math.atan(t) if math.isfinite(t) else math.pi / 2)
    if count <= len(specials):
        return [AlphaParam.from_tan(t) for t in specials][:count]
    n_fill = count - len(specials)
    fill = np.linspace(-math.pi / 2, math.pi / 2, n_fill + 2)[1:-1]
    params = [AlphaParam.from_alpha(float(x)) for x in fill]
    params += [AlphaParam.from_tan(t) for t in specials]
    params.sort(key=lambda p: p.alpha)
    return params


def handle_region_scan(req: S.RegionScanRequest) -> S.RegionScanResponse:
    mf = build_mfunction(req)
    m0 = _m0_of(mf)
    rows = []
    for a in region_scan_alphas(req.alpha_count, m0):
        verdict, angles, _ = classify_full_alpha(a, m0)
        rows.append(
            S.RegionScanRow(
                alpha=a.alpha,
                tan_alpha=a.tan_alpha,
                lsystem_class=verdict.lsystem_class,
                beta1=angles.beta1 if angles else None,
                beta2=angles.beta2 if angles else None,
                beta_class=angles.beta_class if angles else None,
                beta_universal=angles.beta_universal if angles else None,
            )
        )
    return S.RegionScanResponse(
        potential=mf.potential.label, m_minus_zero=m0, rows=rows
    )


def handle_measure(req: S.MeasureRequest) -> S.MeasureResponse:
    mf = build_mfunction(req)
    a = _alpha_param(req.angle) if req.angle is not None else AlphaParam.from_tan(0.0)
    f = neg_m_alpha_function(mf, a)
    t_grid = np.geomspace(req.t_min, req.t_max, req.t_points)
    mt = extract_measure(f, t_grid, tol=mf.tol)
    rows = [
        S.MeasureRow(t=float(t), density=float(d), cumulative=float(c))
        for t, d, c in zip(mt.t_grid, mt.density, mt.cumulative)
    ]
    return S.MeasureResponse(
        potential=mf.potential.label,
        tan_alpha=a.tan_alpha,
        gamma=mt.gamma,
        rows=rows,
    )


def handle_verify(req: S.VerifyRequest) -> S.VerifyResponse:
    resolve_potential(req.potential)  # usage validation; the suite is fixed
    tol = build_tolerance(req.tol)
    results = run_acceptance(tol=tol, x_max=req.x_max, seed=req.seed)
    checks = [S.CheckModel(**dataclasses.asdict(r)) for r in results]
    return S.VerifyResponse(passed=all(c.passed for c in checks), checks=checks)
