"""
Second and third Hankel determinants, directly from coefficients and in
the reduced Grunsky forms that hold when a_2 = 0 or a_3 = 0.

The reduced functions accept anything exposing ``omega(p, q)``: a
:class:`~grunskylab.grunsky.GrunskyMatrix` or a search
:class:`~grunskylab.search.FeasiblePoint`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Protocol

from .errors import PreconditionError
from .grunsky import CoefficientVector, grunsky_matrix_of

SIDE_CONDITION_TOL = 1e-10

ReductionTag = Literal["none", "a2_zero", "a3_zero"]


class HasOmega(Protocol):
    def omega(self, p: int, q: int) -> complex: ...


def hankel2(f: CoefficientVector) -> complex:
    """H_2(2) = a_2 a_4 - a_3^2."""
    f.require(4)
    return f[2] * f[4] - f[3] ** 2


def hankel3(f: CoefficientVector) -> complex:
    """H_3(1) = a_3(a_2 a_4 - a_3^2) - a_4(a_4 - a_2 a_3) + a_5(a_3 - a_2^2)."""
    f.require(5)
    a2, a3, a4, a5 = f[2], f[3], f[4], f[5]
    return a3 * (a2 * a4 - a3**2) - a4 * (a4 - a2 * a3) + a5 * (a3 - a2**2)


def _require_a2_zero(w: HasOmega) -> None:
    if abs(w.omega(1, 1)) > SIDE_CONDITION_TOL:
        raise PreconditionError(f"a_2 = 0 reduction needs w11 = 0, got {w.omega(1, 1)!r}")


def _require_a3_zero(w: HasOmega) -> None:
    w11, w13 = w.omega(1, 1), w.omega(1, 3)
    defect = abs(w13 + 1.5 * w11**2)
    if defect > SIDE_CONDITION_TOL:
        raise PreconditionError(f"a_3 = 0 reduction needs w13 = -3/2 w11^2 (defect {defect:.3e})")


def hankel3_reduced_a2zero(w: HasOmega) -> complex:
    """2 w13^3 + 4 w13 w35 - 4 w33^2, valid when w11 = 0."""
    _require_a2_zero(w)
    w13, w33, w35 = w.omega(1, 3), w.omega(3, 3), w.omega(3, 5)
    return 2 * w13**3 + 4 * w13 * w35 - 4 * w33**2


def a2zero_e1(w: HasOmega) -> complex:
    """w13 w35 - w15^2; with w11 = 0 the reduced H_3(1) is 2 w13^3 + 4 times this."""
    _require_a2_zero(w)
    return w.omega(1, 3) * w.omega(3, 5) - w.omega(1, 5) ** 2


def hankel2_reduced_a3zero(w: HasOmega) -> complex:
    """4 w11 w33 - (52/3) w11^4, valid when w13 = -3/2 w11^2."""
    _require_a3_zero(w)
    w11, w33 = w.omega(1, 1), w.omega(3, 3)
    return 4 * w11 * w33 - (52 / 3) * w11**4


def hankel3_reduced_a3zero(w: HasOmega) -> complex:
    """-12 w11^2 (w11 w15 + 2/3 w35) - 4 w15^2 - 30 w11^6, valid when a_3 = 0."""
    _require_a3_zero(w)
    w11, w15, w35 = w.omega(1, 1), w.omega(1, 5), w.omega(3, 5)
    return -12 * w11**2 * (w11 * w15 + (2 / 3) * w35) - 4 * w15**2 - 30 * w11**6


def a3zero_addends(w: HasOmega) -> tuple[float, float]:
    """(D1, D2) with |H_3(1)| <= D1 + D2 when a_3 = 0."""
    _require_a3_zero(w)
    w11, w15, w35 = w.omega(1, 1), w.omega(1, 5), w.omega(3, 5)
    d1 = 12 * abs(w11) ** 2 * abs(w11 * w15 + (2 / 3) * w35)
    d2 = 4 * abs(w15) ** 2 + 30 * abs(w11) ** 6
    return d1, d2


@dataclass(frozen=True)
class HankelReport:
    h22: complex
    h31: complex
    reduced_h31: complex | None = None
    reduction_tag: ReductionTag = "none"

    def consistent(self, tol: float = 1e-10) -> bool:
        return self.reduced_h31 is None or abs(self.h31 - self.reduced_h31) <= tol


def hankel_report(f: CoefficientVector) -> HankelReport:
    """Both determinants, plus the reduced H_3(1) when a_2 or a_3 vanishes."""
    h22, h31 = hankel2(f), hankel3(f)
    if abs(f[2]) <= SIDE_CONDITION_TOL:
        w = grunsky_matrix_of(f.truncate(5))
        return HankelReport(h22, h31, hankel3_reduced_a2zero(w), "a2_zero")
    if abs(f[3]) <= SIDE_CONDITION_TOL:
        w = grunsky_matrix_of(f.truncate(5))
        return HankelReport(h22, h31, hankel3_reduced_a3zero(w), "a3_zero")
    return HankelReport(h22, h31)
