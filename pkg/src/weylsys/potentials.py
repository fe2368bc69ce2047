"""Catalog of half-line Schrodinger potentials q(x) on [ell, +inf).

Closed-form Weyl coefficients are attached where known so that the
integration engine can be cross-checked against them.  Limit-point
behavior at +inf (deficiency indices (1,1)) is assumed throughout, not
verified; users supplying exotic table potentials are on their own there.
"""
from __future__ import annotations

import csv
from bisect import bisect_right
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Sequence

from .errors import EmptyTable, UnsortedTable
from .numerics import principal_sqrt_upper

__all__ = [
    "Potential",
    "bessel_potential",
    "free_potential",
    "table_potential",
    "load_table_csv",
]


@dataclass(frozen=True)
class Potential:
    """A coefficient q(x) with left endpoint ell >= 0.

    ``closed_form_m`` maps z in C \\ [0, inf) to the Weyl coefficient under
    the normalization m = -psi'(ell)/psi(ell) of the decaying solution;
    ``closed_form_m_minus_zero`` is its boundary value at 0 from the left
    (math.inf allowed).  Both are optional.
    """

    ell: float
    q: Callable[[float], float]
    label: str
    closed_form_m: Optional[Callable[[complex], complex]] = None
    closed_form_m_minus_zero: Optional[float] = None

    def __post_init__(self) -> None:
        if self.ell < 0:
            raise ValueError("left endpoint must be >= 0")


def bessel_potential(nu: float) -> Potential:
    """Centrifugal-type potential q(x) = (nu^2 - 1/4)/x^2 on [1, inf).

    For nu = 3/2 the Weyl coefficient is known in closed form,
    m(z) = 1 - i z/(sqrt(z) + i), with m(-0) = 1.
    """
    if nu <= 0:
        raise ValueError("nu must be > 0")
    c = nu * nu - 0.25

    def q(x: float) -> float:
        return c / (x * x)

    closed_m = None
    m0 = None
    if abs(nu - 1.5) < 1e-12:

        def closed_m(z: complex) -> complex:
            return 1.0 - 1j * z / (principal_sqrt_upper(z) + 1j)

        m0 = 1.0
    return Potential(
        ell=1.0,
        q=q,
        label=f"bessel:{nu:g}",
        closed_form_m=closed_m,
        closed_form_m_minus_zero=m0,
    )


def free_potential(ell: float = 0.0) -> Potential:
    """The reference case q = 0 on [ell, inf).

    For ell = 0 the closed form m(z) = -i sqrt(z) (upper branch) is
    attached, with m(-0) = 0.
    """
    if ell < 0:
        raise ValueError("ell must be >= 0")

    def q(x: float) -> float:
        return 0.0

    closed_m = None
    m0 = None
    if ell == 0.0:

        def closed_m(z: complex) -> complex:
            return -1j * principal_sqrt_upper(z)

        m0 = 0.0
    return Potential(
        ell=float(ell),
        q=q,
        label=f"free:{ell:g}",
        closed_form_m=closed_m,
        closed_form_m_minus_zero=m0,
    )


def table_potential(ell: float, samples: Sequence[tuple[float, float]]) -> Potential:
    """Tabulated potential: linear interpolation between samples, constant
    extension beyond the sampled range (keeps the integration tail seed
    w = i*sqrt(z - q(x_max)) meaningful).
    """
    pts = [(float(x), float(v)) for x, v in samples]
    if not pts:
        raise EmptyTable("table potential needs at least one sample")
    xs = [x for x, _ in pts]
    if any(nxt <= prev for prev, nxt in zip(xs, xs[1:])):
        raise UnsortedTable("sample x values must be strictly increasing")
    vs = [v for _, v in pts]

    def q(x: float) -> float:
        if x <= xs[0]:
            return vs[0]
        if x >= xs[-1]:
            return vs[-1]
        j = bisect_right(xs, x)
        x0, x1 = xs[j - 1], xs[j]
        w = (x - x0) / (x1 - x0)
        return vs[j - 1] * (1.0 - w) + vs[j] * w

    return Potential(ell=float(ell), q=q, label=f"table[{len(pts)}]")


def load_table_csv(path: str | Path, ell: Optional[float] = None) -> Potential:
    """Read a table potential from CSV with header ``x,q`` and strictly
    increasing x.  The left endpoint defaults to the first sampled x.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise EmptyTable(f"{path}: empty file")
        if [h.strip().lower() for h in header[:2]] != ["x", "q"]:
            raise UnsortedTable(f"{path}: expected header 'x,q'")
        samples = []
        for row in reader:
            if not row or not row[0].strip():
                continue
            samples.append((float(row[0]), float(row[1])))
    if not samples:
        raise EmptyTable(f"{path}: no samples")
    if ell is None:
        ell = samples[0][0]
    return table_potential(ell, samples)
