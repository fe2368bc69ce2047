"""Accretivity / accumulativity / sectoriality criteria and angle formulas,
keyed by the boundary parameters (mu, h) or the angle alpha together with
the scalar boundary value m0 = m(-0).

All formulas are tangent identities; angles are kept as tangents internally
and converted to radians only for presentation, avoiding wraparound near
pi/2.  m0 = math.inf is accepted as the sentinel for a divergent boundary
value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

from .errors import InvalidBase, OutOfRange
from .malpha import AlphaParam

__all__ = [
    "ClassVerdict",
    "AngleSet",
    "classify_Th",
    "classify_star_extension",
    "classify_lsystem_alpha",
    "class_angles",
    "krein_vonneumann_h",
    "classify_full_alpha",
    "classify_full_mu_h",
]

STAR_ACCRETIVE = "accretive"
STAR_ACCUMULATIVE = "accumulative"
STAR_EXTREMAL_BOUNDARY = "extremal_accretive_boundary"
STAR_NEITHER = "neither"

LSYS_ACCRETIVE = "accretive"
LSYS_ACCUMULATIVE = "accumulative"
LSYS_ACCUMULATIVE_SECTORIAL = "accumulative_sectorial"
LSYS_ACCUMULATIVE_EXTREMAL = "accumulative_extremal"
LSYS_NEITHER = "neither"

ACCUMULATIVE_TAGS = frozenset(
    {LSYS_ACCUMULATIVE, LSYS_ACCUMULATIVE_SECTORIAL, LSYS_ACCUMULATIVE_EXTREMAL}
)


@dataclass(frozen=True)
class ClassVerdict:
    """Partial classification result; None marks facets not evaluated.

    The exact-angle tangent is authoritative; the radians field is its
    arctangent.
    """

    operator_accretive: Optional[bool] = None
    operator_sectorial: Optional[bool] = None
    operator_extremal: Optional[bool] = None
    operator_exact_angle: Optional[float] = None  # radians
    operator_exact_angle_tan: Optional[float] = None
    star_ext_class: Optional[str] = None
    lsystem_class: Optional[str] = None

    @property
    def lsystem_accumulative(self) -> Optional[bool]:
        if self.lsystem_class is None:
            return None
        return self.lsystem_class in ACCUMULATIVE_TAGS


@dataclass(frozen=True)
class AngleSet:
    """Sectoriality angles of the operators attached to Theta_{tan a, i}.

    Tangents are authoritative; ``tan_beta2`` may be math.inf (beta2 =
    pi/2), in which case ``tan_beta_class`` is absent.  ``beta_class`` and
    ``beta_universal`` come from two different published bounds that do not
    agree on interior points; both are reported, neither is preferred.
    """

    tan_beta1: float
    tan_beta2: float
    tan_beta_class: Optional[float] = None
    tan_beta_universal: Optional[float] = None

    def __post_init__(self) -> None:
        if self.tan_beta1 < 0:
            raise ValueError("tan_beta1 must be >= 0")
        if not (self.tan_beta2 > 0):
            raise ValueError("tan_beta2 must be > 0")
        if math.isinf(self.tan_beta2) and self.tan_beta_class is not None:
            raise ValueError("beta_class undefined when beta2 = pi/2")

    @property
    def beta1(self) -> float:
        return math.atan(self.tan_beta1)

    @property
    def beta2(self) -> float:
        return math.pi / 2 if math.isinf(self.tan_beta2) else math.atan(self.tan_beta2)

    @property
    def beta_class(self) -> Optional[float]:
        if self.tan_beta_class is None:
            return None
        return math.atan(self.tan_beta_class)

    @property
    def beta_universal(self) -> Optional[float]:
        if self.tan_beta_universal is None:
            return None
        return math.atan(self.tan_beta_universal)

    @property
    def t_exact_angle(self) -> float:
        """Exact sectoriality angle beta2 - beta1 of the main operator."""
        return self.beta2 - self.beta1


def classify_Th(h: complex, m0: float) -> ClassVerdict:
    """Classify the dissipative boundary operator with parameter h against
    the boundary value m0 (math.inf allowed):

      accretive      iff Re h >= -m0
      sectorial      iff Re h > -m0 and Im h != 0,
                     with exact angle tan(beta) = Im h / (Re h + m0)
      extremal       iff Re h = -m0 and Im h != 0
    """
    h = complex(h)
    if h.imag < 0:
        raise ValueError("classification assumes Im h >= 0")
    if math.isinf(m0):
        return ClassVerdict(
            operator_accretive=True,
            operator_sectorial=h.imag != 0.0,
            operator_extremal=False,
            operator_exact_angle=0.0 if h.imag != 0.0 else None,
            operator_exact_angle_tan=0.0 if h.imag != 0.0 else None,
        )
    accretive = h.real >= -m0
    sectorial = h.imag != 0.0 and h.real > -m0
    extremal = h.imag != 0.0 and h.real == -m0
    angle = tan_angle = None
    if sectorial:
        tan_angle = h.imag / (h.real + m0)
        angle = math.atan(tan_angle)
    return ClassVerdict(
        operator_accretive=accretive,
        operator_sectorial=sectorial,
        operator_extremal=extremal,
        operator_exact_angle=angle,
        operator_exact_angle_tan=tan_angle,
    )


def classify_star_extension(mu: float, h: complex, m0: float) -> ClassVerdict:
    """Classify the state-space extension with parameters (mu, h) over an
    accretive base operator:

      accretive      iff mu >= (Im h)^2/(m0 + Re h) + Re h
                     (boundary equality marks the extremal extension)
      accumulative   iff -m0 <= mu <= Re h
    """
    h = complex(h)
    base = classify_Th(h, m0)
    if not base.operator_accretive:
        raise InvalidBase(
            f"base operator with h={h!r} is not accretive for m0={m0:g}"
        )
    gap = m0 + h.real  # >= 0 by accretivity
    if gap == 0.0:
        bound = math.inf if h.imag != 0.0 else h.real
    else:
        bound = h.imag * h.imag / gap + h.real
    if mu >= bound:
        tag = STAR_EXTREMAL_BOUNDARY if mu == bound else STAR_ACCRETIVE
    elif -m0 <= mu <= h.real:
        tag = STAR_ACCUMULATIVE
    else:
        tag = STAR_NEITHER
    return replace(base, star_ext_class=tag)


def classify_lsystem_alpha(a: AlphaParam, m0: float) -> ClassVerdict:
    """Classify the system Theta_{tan a, i} realizing -m_alpha, for a
    non-negative underlying operator (m0 >= 0 required):

      accretive               iff tan(a) >= 1/m0   (1/0 = +inf)
      accumulative sectorial  iff -m0 <= tan(a) < 0
      accumulative extremal   iff tan(a) = 0
    """
    if not (m0 >= 0):
        raise OutOfRange(f"m0 must be >= 0, got {m0:g}")
    t = a.tan_alpha
    accr_threshold = math.inf if m0 == 0.0 else 1.0 / m0
    if t == 0.0:
        tag = LSYS_ACCUMULATIVE_EXTREMAL
    elif t >= accr_threshold:
        tag = LSYS_ACCRETIVE
    elif -m0 <= t < 0.0:
        tag = LSYS_ACCUMULATIVE_SECTORIAL
    else:
        tag = LSYS_NEITHER
    return ClassVerdict(lsystem_class=tag)


def class_angles(a: AlphaParam, m0: float) -> AngleSet:
    """Sectoriality angles for the accumulative-sectorial range
    -m0 <= tan(a) < 0:

      tan(beta1) = (tan a + m0) / (1 - tan(a) m0)
      tan(beta2) = -cot(a)
      tan(beta_class) = tan(beta2) + 2 sqrt(tan(beta1)(tan(beta2)-tan(beta1)))
      tan(beta_universal) = tan(beta1) + 2 sqrt(tan(beta1) tan(beta2))

    The main operator's exact sectoriality angle is beta2 - beta1.
    """
    if not (m0 > 0) or math.isinf(m0):
        raise OutOfRange(f"angle formulas need finite m0 > 0, got {m0:g}")
    t = a.tan_alpha
    if not (-m0 <= t < 0.0):
        raise OutOfRange(
            f"tan(alpha)={t:g} outside the accumulative-sectorial range [-{m0:g}, 0)"
        )
    tb1 = (t + m0) / (1.0 - t * m0)
    tb2 = -1.0 / t
    tb_class = tb2 + 2.0 * math.sqrt(max(0.0, tb1 * (tb2 - tb1)))
    tb_universal = tb1 + 2.0 * math.sqrt(tb1 * tb2)
    return AngleSet(
        tan_beta1=tb1,
        tan_beta2=tb2,
        tan_beta_class=tb_class,
        tan_beta_universal=tb_universal,
    )


def krein_vonneumann_h(m0: float) -> float:
    """The real boundary value h = -m0 whose self-adjoint operator is the
    soft (Krein-von Neumann) extension."""
    if math.isinf(m0):
        raise ValueError("requires finite m0")
    return -m0


def classify_full_alpha(
    a: AlphaParam, m0: float
) -> tuple[ClassVerdict, Optional[AngleSet], list[str]]:
    """Merge all alpha-keyed facets: main operator T_i, state-space
    extension with mu = tan(a), system class, and angle set when the
    sectorial formulas apply."""
    notes: list[str] = []
    verdict = classify_Th(1j, m0)
    try:
        verdict = classify_star_extension(a.tan_alpha, 1j, m0)
    except InvalidBase:
        notes.append("state-space classification skipped: T_i not accretive")
    lsys = classify_lsystem_alpha(a, m0)
    verdict = replace(verdict, lsystem_class=lsys.lsystem_class)
    angles: Optional[AngleSet] = None
    try:
        angles = class_angles(a, m0)
    except OutOfRange:
        if lsys.lsystem_class == LSYS_ACCUMULATIVE_EXTREMAL:
            notes.append(
                "extremal case tan(alpha) = 0: beta2 = pi/2, no finite class angle"
            )
    return verdict, angles, notes


def classify_full_mu_h(
    mu: float, h: complex, m0: float
) -> tuple[ClassVerdict, list[str]]:
    """Classification keyed by explicit (mu, h).  The system-level class
    coincides with the state-space extension's class."""
    notes: list[str] = []
    verdict = classify_Th(h, m0)
    if verdict.operator_accretive:
        verdict = classify_star_extension(mu, h, m0)
        star = verdict.star_ext_class
        if star == STAR_ACCRETIVE or star == STAR_EXTREMAL_BOUNDARY:
            verdict = replace(verdict, lsystem_class=LSYS_ACCRETIVE)
        elif star == STAR_ACCUMULATIVE:
            verdict = replace(verdict, lsystem_class=LSYS_ACCUMULATIVE)
        else:
            verdict = replace(verdict, lsystem_class=LSYS_NEITHER)
    else:
        notes.append("state-space classification skipped: T_h not accretive")
    return verdict, notes
