"""Log-determinant of the Friederichs Laplacian on isosceles triangle
envelopes, as a function of the angle parameter beta in (-1, -1/2) and the
surface area.

The apex/base angles of the underlying triangle are pi*(-2*beta-1) and
pi*(beta+1); beta = -2/3 is the equilateral case.  The module assembles the
closed-form expression for log det (elementary terms, a uniformization
scaling factor, and two Barnes double zeta derivatives), its first and second
beta-derivatives in analytic form, the small-angle truncated expansions near
both endpoints, an elementary convexity lower bound, and grid scans used for
extremum verification and figure data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Tuple

import numpy as np
from scipy import special as _sp

from . import barnes
from .specfun import CONSTANTS, DEFAULT_QUAD, DomainError, QuadratureSpec

__all__ = [
    "AngleParam",
    "DetResult",
    "EnvelopeGeometry",
    "ScanRow",
    "ScanTable",
    "scaling_factor",
    "log_scaling_factor",
    "log_det_unit",
    "log_det_area",
    "zeta0",
    "d_zeta0",
    "d2_zeta0",
    "asymptotic_neg1",
    "asymptotic_neghalf",
    "d_log_det",
    "d2_log_det",
    "convexity_lower_bound",
    "critical_area",
    "geometry",
    "scan",
    "refine_minimum",
    "BETA_CRITICAL",
]

_GAMMA = CONSTANTS.euler_gamma
_LOG_A = CONSTANTS.log_glaisher
_ZP1 = CONSTANTS.zeta_prime_neg1
_LOG_PI = CONSTANTS.log_pi
_LOG2 = math.log(2.0)
_ZETA2 = math.pi**2 / 6.0
_ZETA3 = 1.2020569031595942854
_EDGE = 1e-6

BETA_CRITICAL = -2.0 / 3.0


def _validate_beta_array(b: np.ndarray) -> None:
    if not (np.all(b > -1.0) and np.all(b < -0.5)):
        raise DomainError("beta must lie in the open interval (-1, -1/2)")
    # Every term of the determinant formula is singular at the endpoints;
    # the asymptotic expansions cover the excluded slivers.
    if np.any(b + 1.0 < _EDGE) or np.any(np.abs(2.0 * b + 1.0) < _EDGE):
        raise DomainError(
            f"beta within {_EDGE:g} of an endpoint; use the asymptotic expansions there"
        )


@dataclass(frozen=True)
class AngleParam:
    """Validated angle parameter with its two derived Barnes arguments

    a1 = beta + 1 (base-angle fraction) and a2 = -2*beta - 1 (apex fraction).
    ``exact`` optionally carries beta as an exact rational, which unlocks the
    closed-form Barnes route.
    """

    beta: float
    exact: Optional[Fraction] = None
    a1: float = field(init=False)
    a2: float = field(init=False)

    def __post_init__(self) -> None:
        _validate_beta_array(np.asarray(self.beta, dtype=float))
        object.__setattr__(self, "a1", self.beta + 1.0)
        object.__setattr__(self, "a2", -2.0 * self.beta - 1.0)
        if self.exact is not None:
            ex = Fraction(self.exact)
            if float(ex) != self.beta:
                raise DomainError("exact fraction does not match beta")
            object.__setattr__(self, "exact", ex)

    @classmethod
    def from_fraction(cls, beta: Fraction) -> "AngleParam":
        beta = Fraction(beta)
        return cls(beta=float(beta), exact=beta)


@dataclass(frozen=True)
class DetResult:
    """log det at a given area with its additive breakdown."""

    log_det: float
    elementary_part: float
    barnes_part: float
    area_term: float
    area: float


@dataclass(frozen=True)
class EnvelopeGeometry:
    """Side length and angles (radians) of the glued triangle."""

    side_ab: float
    angle_a: float
    angle_b: float
    angle_c: float
    area: float


class ScanRow(NamedTuple):
    beta: float
    log_det: float
    d1: float
    d2: float
    asymptotic_neg1: float
    asymptotic_neghalf: float


@dataclass(frozen=True)
class ScanTable:
    """Grid of per-beta quantities at fixed area, sorted by beta.

    All columns refer to the fixed-area function beta -> log det: ``d1`` and
    ``d2`` are its beta-derivatives and the asymptotic columns carry the
    endpoint truncations shifted by the same area term as ``log_det``.
    """

    rows: Tuple[ScanRow, ...]
    area: float
    grid_spec: Tuple[float, float, int]


# --------------------------------------------------------------------------
# elementary building blocks (array-aware; scalars pass through as 0-d)
# --------------------------------------------------------------------------


def _log_c(b):
    a1 = b + 1.0
    a2 = -2.0 * b - 1.0
    return (
        _LOG2
        - _sp.gammaln(a2 / 2.0)
        - _sp.gammaln(a1)
        + 0.5 * (_LOG_PI - np.log(np.sin(np.pi * a2)))
    )


def _d_log_c(b):
    a1 = b + 1.0
    a2 = -2.0 * b - 1.0
    s = np.sin(np.pi * a2)
    return _sp.psi(a2 / 2.0) - _sp.psi(a1) + np.pi * np.cos(np.pi * a2) / s


def _d2_log_c(b):
    a1 = b + 1.0
    a2 = -2.0 * b - 1.0
    s = np.sin(np.pi * a2)
    return -_sp.polygamma(1, a2 / 2.0) - _sp.polygamma(1, a1) + 2.0 * np.pi**2 / s**2


def _elementary(b):
    a1 = b + 1.0
    a2 = -2.0 * b - 1.0
    x2 = 2.0 * b + 1.0
    g = (2.0 * b + 4.0 / a1 - 1.0 / x2) / 6.0
    h = (2.0 / a1 - 1.0 / x2 - 1.0) / 6.0
    return (
        g * _LOG2
        - h * _log_c(b)
        - np.log(a1)
        - 0.5 * np.log(a2)
        - 2.5 * _LOG2
        - _LOG_PI
    )


def _d_elementary(b):
    a1 = b + 1.0
    a2 = -2.0 * b - 1.0
    x2 = 2.0 * b + 1.0
    gp = (2.0 - 4.0 / a1**2 + 2.0 / x2**2) / 6.0
    h = (2.0 / a1 - 1.0 / x2 - 1.0) / 6.0
    hp = (-2.0 / a1**2 + 2.0 / x2**2) / 6.0
    return gp * _LOG2 - hp * _log_c(b) - h * _d_log_c(b) - 1.0 / a1 + 1.0 / a2


def _d2_elementary(b):
    a1 = b + 1.0
    a2 = -2.0 * b - 1.0
    x2 = 2.0 * b + 1.0
    gpp = (8.0 / a1**3 - 8.0 / x2**3) / 6.0
    h = (2.0 / a1 - 1.0 / x2 - 1.0) / 6.0
    hp = (-2.0 / a1**2 + 2.0 / x2**2) / 6.0
    hpp = (4.0 / a1**3 - 8.0 / x2**3) / 6.0
    return (
        gpp * _LOG2
        - hpp * _log_c(b)
        - 2.0 * hp * _d_log_c(b)
        - h * _d2_log_c(b)
        + 1.0 / a1**2
        + 2.0 / a2**2
    )


def _barnes_pair(a1, a2, quad: QuadratureSpec):
    """Integral-route zeta_B'(0; ., 1, 1) at a1 and a2 in one quadrature."""
    a1 = np.atleast_1d(np.asarray(a1, dtype=float))
    a2 = np.atleast_1d(np.asarray(a2, dtype=float))
    vals, _ = barnes.zeta_b_prime0_values(np.concatenate([a1, a2]), quad)
    return vals[: a1.size], vals[a1.size :]


# --------------------------------------------------------------------------
# public operations
# --------------------------------------------------------------------------


def log_scaling_factor(p: AngleParam) -> float:
    """log of the area-normalizing conformal factor."""
    return float(_log_c(p.beta))


def scaling_factor(p: AngleParam) -> float:
    """Conformal factor 2/(Gamma(a2/2) Gamma(a1)) * sqrt(pi / sin(pi a2)) > 0.

    Evaluated in log form, so the value degrades gracefully to 0+ near the
    endpoints instead of overflowing intermediates.
    """
    return math.exp(log_scaling_factor(p))


def zeta0(p: AngleParam) -> float:
    """Spectral zeta value at 0: -13/12 + 1/(6(beta+1)) - 1/(12(2 beta+1))."""
    return -13.0 / 12.0 + 1.0 / (6.0 * p.a1) - 1.0 / (12.0 * (2.0 * p.beta + 1.0))


def d_zeta0(p: AngleParam) -> float:
    x2 = 2.0 * p.beta + 1.0
    return -1.0 / (6.0 * p.a1**2) + 1.0 / (6.0 * x2**2)


def d2_zeta0(p: AngleParam) -> float:
    x2 = 2.0 * p.beta + 1.0
    return 1.0 / (3.0 * p.a1**3) - 2.0 / (3.0 * x2**3)


def log_det_unit(
    p: AngleParam,
    route: str = "integral",
    series_terms: int = 4,
    quad: QuadratureSpec = DEFAULT_QUAD,
) -> DetResult:
    """log det at unit area, with the Barnes terms evaluated by ``route``.

    ``route='rational'`` requires ``p`` built via :meth:`AngleParam.from_fraction`
    and gives the exact closed-form evaluation; ``'series'`` uses the
    certified truncation of order ``series_terms``.
    """
    elementary = float(_elementary(p.beta))
    if route == "integral":
        z1, z2 = _barnes_pair(p.a1, p.a2, quad)
        zb1, zb2 = float(z1[0]), float(z2[0])
    elif route == "series":
        zb1 = barnes.zeta_b_prime0_series(p.a1, series_terms).value
        zb2 = barnes.zeta_b_prime0_series(p.a2, series_terms).value
    elif route == "rational":
        if p.exact is None:
            raise DomainError("route='rational' needs AngleParam.from_fraction")
        zb1 = barnes.zeta_b_prime0_rational(p.exact + 1).value
        zb2 = barnes.zeta_b_prime0_rational(-2 * p.exact - 1).value
    else:
        raise DomainError(f"unknown route {route!r}")
    barnes_part = -4.0 * zb1 - 2.0 * zb2 + 2.0 * _ZP1
    return DetResult(
        log_det=elementary + barnes_part,
        elementary_part=elementary,
        barnes_part=barnes_part,
        area_term=0.0,
        area=1.0,
    )


def log_det_area(
    p: AngleParam,
    area: float,
    route: str = "integral",
    series_terms: int = 4,
    quad: QuadratureSpec = DEFAULT_QUAD,
) -> DetResult:
    """log det at the given area: the unit-area value minus zeta0 * log(area)."""
    if not area > 0.0:
        raise DomainError(f"area must be positive, got {area!r}")
    base = log_det_unit(p, route=route, series_terms=series_terms, quad=quad)
    area_term = -zeta0(p) * math.log(area)
    return DetResult(
        log_det=base.log_det + area_term,
        elementary_part=base.elementary_part,
        barnes_part=base.barnes_part,
        area_term=area_term,
        area=area,
    )


def asymptotic_neg1(p: AngleParam) -> float:
    """Truncated expansion of the unit-area log det near beta = -1."""
    a1 = p.a1
    return (
        -math.log(a1) / (6.0 * a1)
        + (math.log(8.0 * math.pi) / 6.0 - 4.0 * _LOG_A) / a1
        - math.log(a1)
        - _LOG2
    )


def asymptotic_neghalf(p: AngleParam) -> float:
    """Truncated expansion of the unit-area log det near beta = -1/2."""
    x2 = 2.0 * p.beta + 1.0
    a2 = p.a2
    return (
        math.log(a2) / (12.0 * x2)
        - (_LOG2 / 6.0 + _LOG_PI / 12.0 - 2.0 * _LOG_A) / x2
        - 0.75 * math.log(a2)
        - 0.5 * _LOG2
        - 0.25 * _LOG_PI
    )


def d_log_det(p: AngleParam, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Analytic d/dbeta of the unit-area log det."""
    a = np.concatenate([np.atleast_1d(p.a1), np.atleast_1d(p.a2)])
    dz = barnes.d_zeta_b_prime0(a, quad)
    return float(_d_elementary(p.beta) - 4.0 * dz[0] + 4.0 * dz[1])


def d2_log_det(p: AngleParam, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Analytic d^2/dbeta^2 of the unit-area log det."""
    a = np.concatenate([np.atleast_1d(p.a1), np.atleast_1d(p.a2)])
    d2z = barnes.d2_zeta_b_prime0(a, quad)
    return float(_d2_elementary(p.beta) - 4.0 * d2z[0] - 8.0 * d2z[1])


def _convexity_lower_bound(b):
    a1 = b + 1.0
    a2 = -2.0 * b - 1.0
    x2 = 2.0 * b + 1.0
    half = x2 / 2.0  # beta + 1/2

    P = (2.0 / a1 - 1.0 / x2 - 1.0) / 12.0
    Pp = (-2.0 / a1**2 + 2.0 / x2**2) / 12.0
    Ppp = (4.0 / a1**3 - 8.0 / x2**3) / 12.0

    series_q = 2.0 * (
        _ZETA2 / 2.0 * (a1**2 + half**2) + _ZETA3 / 3.0 * (-(a1**3) + half**3)
    )
    Q = (
        np.log(np.sin(np.pi * a2))
        - _LOG_PI
        - 2.0 * np.log(a1)
        - 2.0 * np.log(a2)
        - _GAMMA
        + series_q
    )
    s = np.sin(np.pi * a2)
    Qp = (
        -2.0 * np.pi * np.cos(np.pi * a2) / s
        - 2.0 / a1
        - 4.0 / x2
        + 2.0 * (_ZETA2 * (a1 + half) + _ZETA3 * (-(a1**2) + half**2))
    )
    Qpp = (
        -4.0 * np.pi**2 / s**2
        + 2.0 / a1**2
        + 8.0 / x2**2
        + 4.0 * _ZETA2
        - 2.0 * _ZETA3
    )
    Rpp = (8.0 / a1**3 - 8.0 / x2**3) * _LOG2 / 6.0 + 1.0 / a1**2 + 2.0 / x2**2
    Gpp = Ppp * Q + 2.0 * Pp * Qp + P * Qpp + Rpp
    return Gpp - 0.2 - _LOG_A * (8.0 / a1**3 - 2.0 / half**3)


def convexity_lower_bound(p: AngleParam) -> float:
    """Elementary strictly positive lower bound for d2_log_det.

    Second derivative of the explicit scaling-factor/log bracket (with its
    zeta-series truncated at the cubic term) minus 1/5 minus the singular
    Barnes leading terms; everything is in closed form.
    """
    return float(_convexity_lower_bound(p.beta))


def critical_area(quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Area above which the equilateral point flips from the absolute minimum
    to a local maximum: exp(d2_log_det(-2/3) / 27)."""
    return math.exp(d2_log_det(AngleParam(BETA_CRITICAL), quad) / 27.0)


def geometry(p: AngleParam, area: float = 1.0) -> EnvelopeGeometry:
    """Side length |AB| = |BC| and the three angles at the given area."""
    if not area > 0.0:
        raise DomainError(f"area must be positive, got {area!r}")
    side = math.sqrt(area / math.sin(math.pi * p.a2))
    return EnvelopeGeometry(
        side_ab=side,
        angle_a=math.pi * p.a1,
        angle_b=math.pi * p.a2,
        angle_c=math.pi * p.a1,
        area=area,
    )


# --------------------------------------------------------------------------
# grid scans
# --------------------------------------------------------------------------


def _columns(b: np.ndarray, area: float, quad: QuadratureSpec):
    a1 = b + 1.0
    a2 = -2.0 * b - 1.0
    x2 = 2.0 * b + 1.0
    log_area = math.log(area)
    z0 = -13.0 / 12.0 + 1.0 / (6.0 * a1) - 1.0 / (12.0 * x2)
    dz0 = -1.0 / (6.0 * a1**2) + 1.0 / (6.0 * x2**2)
    d2z0 = 1.0 / (3.0 * a1**3) - 2.0 / (3.0 * x2**3)
    area_term = -z0 * log_area

    cat = np.concatenate([a1, a2])
    zb, _ = barnes.zeta_b_prime0_values(cat, quad)
    dzb = barnes.d_zeta_b_prime0(cat, quad)
    d2zb = barnes.d2_zeta_b_prime0(cat, quad)
    n = b.size
    log_det = _elementary(b) - 4.0 * zb[:n] - 2.0 * zb[n:] + 2.0 * _ZP1 + area_term
    d1 = _d_elementary(b) - 4.0 * dzb[:n] + 4.0 * dzb[n:] - dz0 * log_area
    d2 = _d2_elementary(b) - 4.0 * d2zb[:n] - 8.0 * d2zb[n:] - d2z0 * log_area

    as1 = (
        -np.log(a1) / (6.0 * a1)
        + (math.log(8.0 * math.pi) / 6.0 - 4.0 * _LOG_A) / a1
        - np.log(a1)
        - _LOG2
        + area_term
    )
    as2 = (
        np.log(a2) / (12.0 * x2)
        - (_LOG2 / 6.0 + _LOG_PI / 12.0 - 2.0 * _LOG_A) / x2
        - 0.75 * np.log(a2)
        - 0.5 * _LOG2
        - 0.25 * _LOG_PI
        + area_term
    )
    return log_det, d1, d2, as1, as2


def _exact_betas(beta_min: float, beta_max: float, max_denominator: int):
    found = []
    for den in range(2, max_denominator + 1):
        for num in range(den // 2 + 1, den):
            frac = Fraction(-num, den)
            if frac.denominator != den:
                continue  # not in lowest terms with this denominator
            if Fraction(-1) < frac < Fraction(-1, 2) and beta_min <= float(frac) <= beta_max:
                found.append(frac)
    return sorted(set(found))


def scan(
    beta_min: float,
    beta_max: float,
    count: int,
    area: float = 1.0,
    quad: QuadratureSpec = DEFAULT_QUAD,
    include_exact_points: bool = False,
    max_denominator: int = 12,
) -> ScanTable:
    """Uniform beta grid with per-point log det, derivatives and asymptotics.

    With ``include_exact_points`` the grid is augmented by every reduced
    rational beta with denominator <= ``max_denominator`` inside the range,
    whose log det is computed through the exact closed-form Barnes route.
    """
    if int(count) != count or count < 2:
        raise DomainError(f"count must be an integer >= 2, got {count!r}")
    if not (beta_min < beta_max):
        raise DomainError("need beta_min < beta_max")
    if not area > 0.0:
        raise DomainError(f"area must be positive, got {area!r}")
    _validate_beta_array(np.asarray([beta_min, beta_max]))

    b = np.linspace(beta_min, beta_max, int(count))
    cols = _columns(b, area, quad)
    rows = [ScanRow(*vals) for vals in zip(b.tolist(), *(c.tolist() for c in cols))]

    if include_exact_points:
        extra_fracs = _exact_betas(beta_min, beta_max, max_denominator)
        if extra_fracs:
            eb = np.asarray([float(f) for f in extra_fracs])
            ecols = _columns(eb, area, quad)
            extra = []
            for i, frac in enumerate(extra_fracs):
                det = log_det_area(AngleParam.from_fraction(frac), area, route="rational")
                extra.append(
                    ScanRow(
                        beta=float(frac),
                        log_det=det.log_det,
                        d1=float(ecols[1][i]),
                        d2=float(ecols[2][i]),
                        asymptotic_neg1=float(ecols[3][i]),
                        asymptotic_neghalf=float(ecols[4][i]),
                    )
                )
            merged = {row.beta: row for row in rows}
            merged.update({row.beta: row for row in extra})  # exact wins ties
            rows = [merged[k] for k in sorted(merged)]

    return ScanTable(rows=tuple(rows), area=area, grid_spec=(beta_min, beta_max, int(count)))


def refine_minimum(
    beta_min: float = -0.95,
    beta_max: float = -0.55,
    area: float = 1.0,
    tol: float = 1e-6,
    quad: QuadratureSpec = DEFAULT_QUAD,
) -> float:
    """Locate the minimizer of beta -> log det at fixed area by repeated
    grid refinement, to within ``tol``."""
    lo, hi = float(beta_min), float(beta_max)
    count = 65
    while hi - lo > tol:
        b = np.linspace(lo, hi, count)
        log_det = _columns(b, area, quad)[0]
        i = int(np.argmin(log_det))
        lo = b[max(i - 1, 0)]
        hi = b[min(i + 1, count - 1)]
    return 0.5 * (lo + hi)
