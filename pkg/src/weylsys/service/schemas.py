"""Request/response models for the service and the CLI.

Complex numbers travel as {"re": a, "im": b}; extended reals as numbers
with the infinities spelled "inf"/"-inf" (JSON has no Infinity literal).
"""
from __future__ import annotations

import math
from typing import Annotated, Literal, Optional, Union

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    PlainSerializer,
    model_validator,
)


def _parse_extended(v):
    if isinstance(v, str):
        s = v.strip().lower()
        if s in ("inf", "+inf", "infinity"):
            return math.inf
        if s in ("-inf", "-infinity"):
            return -math.inf
        return float(v)
    return v


def _serialize_extended(v: float) -> Union[float, str]:
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


ExtendedReal = Annotated[
    float,
    BeforeValidator(_parse_extended),
    PlainSerializer(_serialize_extended, return_type=Union[float, str], when_used="json"),
]


class ComplexNumber(BaseModel):
    model_config = ConfigDict(extra="forbid")

    re: float
    im: float = 0.0

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexNumber":
        return cls(re=z.real, im=z.imag)

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


class ToleranceOverrides(BaseModel):
    model_config = ConfigDict(extra="forbid")

    abs_tol: Optional[float] = Field(default=None, gt=0)
    rel_tol: Optional[float] = Field(default=None, gt=0)
    psd_slack: Optional[float] = Field(default=None, ge=0)
    eps_schedule: Optional[list[float]] = None


class PotentialOptions(BaseModel):
    """Options shared by every pipeline that evaluates an m-function."""

    model_config = ConfigDict(extra="forbid")

    potential: str = "bessel:1.5"
    mode: Literal["auto", "closed_form", "riccati_engine"] = "auto"
    x_max: Optional[float] = Field(default=None, gt=0)
    tol: Optional[ToleranceOverrides] = None


class EvalMRequest(PotentialOptions):
    z: list[ComplexNumber] = Field(min_length=1)


class EvalMRow(BaseModel):
    z: ComplexNumber
    m: ComplexNumber
    err_estimate: float


class EvalMResponse(BaseModel):
    potential: str
    mode: str
    rows: list[EvalMRow]


class AlphaSpec(BaseModel):
    """Angle given either in radians or by its (extended-real) tangent."""

    model_config = ConfigDict(extra="forbid")

    alpha: Optional[float] = None
    tan_alpha: Optional[ExtendedReal] = None

    @model_validator(mode="after")
    def _exactly_one(self):
        if (self.alpha is None) == (self.tan_alpha is None):
            raise ValueError("give exactly one of alpha or tan_alpha")
        return self


class EvalMAlphaRequest(PotentialOptions):
    angle: AlphaSpec
    z: list[ComplexNumber] = Field(min_length=1)
    negate: bool = True  # -m_alpha (the Herglotz companion) by default


class EvalMAlphaRow(BaseModel):
    z: ComplexNumber
    value: ComplexNumber


class EvalMAlphaResponse(BaseModel):
    potential: str
    alpha: float
    tan_alpha: ExtendedReal
    negate: bool
    rows: list[EvalMAlphaRow]


RealizeTargetName = Literal["neg-m-infinity", "recip-m-infinity", "neg-m-alpha"]


class RealizeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    target: RealizeTargetName
    angle: Optional[AlphaSpec] = None

    @model_validator(mode="after")
    def _angle_needed(self):
        if self.target == "neg-m-alpha" and self.angle is None:
            raise ValueError("neg-m-alpha target needs an angle")
        return self


class RealizeResponse(BaseModel):
    target: RealizeTargetName
    mu: ExtendedReal
    h: ComplexNumber


class OperatorVerdictModel(BaseModel):
    accretive: bool
    sectorial: bool
    extremal: bool
    exact_angle: Optional[float] = None
    exact_angle_tan: Optional[ExtendedReal] = None


class AngleSetModel(BaseModel):
    beta1: float
    beta2: float
    tan_beta1: float
    tan_beta2: ExtendedReal
    beta_class: Optional[float] = None
    tan_beta_class: Optional[float] = None
    beta_universal: Optional[float] = None
    tan_beta_universal: Optional[float] = None
    t_exact_angle: float


class ClassifyRequest(PotentialOptions):
    angle: Optional[AlphaSpec] = None
    mu: Optional[ExtendedReal] = None
    h: Optional[ComplexNumber] = None

    @model_validator(mode="after")
    def _angle_or_pair(self):
        by_angle = self.angle is not None
        by_pair = self.mu is not None or self.h is not None
        if by_angle == by_pair:
            raise ValueError("give either an angle or the pair (mu, h)")
        if by_pair and (self.mu is None or self.h is None):
            raise ValueError("mu and h must be given together")
        return self


class ClassifyResponse(BaseModel):
    potential: str
    m_minus_zero: ExtendedReal
    alpha: Optional[float] = None
    tan_alpha: Optional[ExtendedReal] = None
    mu: Optional[ExtendedReal] = None
    h: Optional[ComplexNumber] = None
    operator: OperatorVerdictModel
    star_ext_class: Optional[str] = None
    lsystem_class: Optional[str] = None
    angles: Optional[AngleSetModel] = None
    notes: list[str] = []


class RegionScanRequest(PotentialOptions):
    alpha_count: int = Field(default=64, ge=0, le=100_000)


class RegionScanRow(BaseModel):
    alpha: float
    tan_alpha: ExtendedReal
    lsystem_class: str
    beta1: Optional[float] = None
    beta2: Optional[float] = None
    beta_class: Optional[float] = None
    beta_universal: Optional[float] = None


class RegionScanResponse(BaseModel):
    potential: str
    m_minus_zero: ExtendedReal
    rows: list[RegionScanRow]


class MeasureRequest(PotentialOptions):
    angle: Optional[AlphaSpec] = None  # default: tan_alpha = 0, i.e. -m itself
    t_min: float = Field(default=0.1, gt=0)
    t_max: float = 10.0
    t_points: int = Field(default=40, ge=2)

    @model_validator(mode="after")
    def _range_ok(self):
        if not (self.t_max > self.t_min):
            raise ValueError("need t_max > t_min")
        return self


class MeasureRow(BaseModel):
    t: float
    density: float
    cumulative: float


class MeasureResponse(BaseModel):
    potential: str
    tan_alpha: ExtendedReal
    gamma: float
    rows: list[MeasureRow]


class VerifyRequest(PotentialOptions):
    seed: int = 0


class CheckModel(BaseModel):
    check_id: str
    name: str
    passed: bool
    detail: str
    note: str = ""


class VerifyResponse(BaseModel):
    passed: bool
    checks: list[CheckModel]


class ErrorBody(BaseModel):
    error: str
    message: str
