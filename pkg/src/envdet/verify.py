"""Self-verification suite: every headline claim of the extremal analysis as
an executable check with a pinned tolerance.

Used both by the ``verify`` CLI subcommand and by the acceptance test module;
checks are grouped into nine numbered criteria, each with a wall-clock
budget.  The ``fast`` suite skips only the dense convexity grid (criterion 5).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Tuple

import numpy as np

from . import barnes, envelope
from .specfun import DEFAULT_QUAD, QuadratureSpec

__all__ = ["CheckResult", "run_criterion", "run_suite", "CRITERIA"]

# Closed-form special values, frozen from a 40-digit evaluation of
# (2/3)log pi + (1/3)log(2/3) - 2 log Gamma(2/3)  and its -3/4, -5/6 analogues.
CLOSED_FORM_M23 = 0.0216976709018315181
CLOSED_FORM_M34 = 0.0829015200310546721
CLOSED_FORM_M56 = 0.3286679922892368324

# Four-decimal reference values quoted for the three special envelopes.
REFERENCE_M23 = 0.0217
REFERENCE_M34 = 0.0829
REFERENCE_M56 = 0.3287
REFERENCE_D2 = 17.614
REFERENCE_CRITICAL_AREA = 1.92


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    tolerance: float


def _criterion_1(quad: QuadratureSpec) -> List[CheckResult]:
    p = envelope.AngleParam(envelope.BETA_CRITICAL)
    value = envelope.log_det_area(p, 1.0, quad=quad).log_det
    gap = abs(value - CLOSED_FORM_M23)
    return [
        CheckResult("critical_value", abs(value - CLOSED_FORM_M23) <= 1e-4, value, 1e-4),
        CheckResult("critical_value_route_gap", gap <= 1e-9, gap, 1e-9),
    ]


def _criterion_2(quad: QuadratureSpec) -> List[CheckResult]:
    out = []
    cases = [
        (Fraction(-3, 4), CLOSED_FORM_M34, REFERENCE_M34, "special_value_m34"),
        (Fraction(-5, 6), CLOSED_FORM_M56, REFERENCE_M56, "special_value_m56"),
    ]
    for frac, closed, reference, name in cases:
        p = envelope.AngleParam.from_fraction(frac)
        rational = envelope.log_det_area(p, 1.0, route="rational").log_det
        integral = envelope.log_det_area(p, 1.0, route="integral", quad=quad).log_det
        gap = abs(rational - integral)
        out.append(CheckResult(name, abs(rational - reference) <= 1e-4, rational, 1e-4))
        out.append(CheckResult(f"{name}_route_gap", gap <= 1e-9, gap, 1e-9))
        # the exact route must also sit on the frozen closed form
        out.append(
            CheckResult(
                f"{name}_closed_form",
                abs(rational - closed) <= 1e-12,
                abs(rational - closed),
                1e-12,
            )
        )
    return out


def _criterion_3(quad: QuadratureSpec) -> List[CheckResult]:
    p = envelope.AngleParam(envelope.BETA_CRITICAL)
    d1 = abs(envelope.d_log_det(p, quad))
    a = 1.0 / 3.0
    combo = abs(
        2.0 * barnes.d_zeta_b_prime0(a, quad) - 2.0 * barnes.d_zeta_b_prime0(1.0 - 2.0 * a, quad)
    )
    return [
        CheckResult("criticality_d1", d1 <= 1e-9, d1, 1e-9),
        CheckResult("lemma_a1_3", combo <= 1e-9, combo, 1e-9),
    ]


def _criterion_4(quad: QuadratureSpec) -> List[CheckResult]:
    d2 = envelope.d2_log_det(envelope.AngleParam(envelope.BETA_CRITICAL), quad)
    s_star = envelope.critical_area(quad)
    return [
        CheckResult("second_derivative", abs(d2 - REFERENCE_D2) <= 5e-3, d2, 5e-3),
        CheckResult(
            "critical_area", abs(s_star - REFERENCE_CRITICAL_AREA) <= 1e-2, s_star, 1e-2
        ),
    ]


def _criterion_5(quad: QuadratureSpec) -> List[CheckResult]:
    b = np.linspace(-0.999, -0.501, 10_000)
    bound = envelope._convexity_lower_bound(b)
    cat = np.concatenate([b + 1.0, -2.0 * b - 1.0])
    d2zb = barnes.d2_zeta_b_prime0(cat, quad)
    n = b.size
    d2 = envelope._d2_elementary(b) - 4.0 * d2zb[:n] - 8.0 * d2zb[n:]
    min_bound = float(np.min(bound))
    min_gap = float(np.min(d2 - bound))
    return [
        CheckResult("convexity_bound_positive", min_bound > 0.0, min_bound, 0.0),
        CheckResult("convexity_gap_positive", min_gap > 0.0, min_gap, 0.0),
    ]


def _reduced_fractions(max_q: int):
    for q in range(2, max_q + 1):
        for p in range(1, q):
            if math.gcd(p, q) == 1:
                yield p, q


def _criterion_6(quad: QuadratureSpec) -> List[CheckResult]:
    worst = 0.0
    for p, q in _reduced_fractions(12):
        integral = barnes.zeta_b_prime0(p / q, quad).value
        rational = barnes.zeta_b_prime0_rational(Fraction(p, q)).value
        worst = max(worst, abs(integral - rational))

    grid = np.linspace(0.005, 1.0, 200)
    integral_vals, _ = barnes.zeta_b_prime0_values(grid, quad)
    excess = -math.inf
    eps = np.finfo(float).eps
    for n in (2, 3, 4, 5):
        for a, target in zip(grid, integral_vals):
            approx = barnes.zeta_b_prime0_series(float(a), n)
            # the truncation certificate is exact-arithmetic; comparing two
            # double-precision evaluations needs a few ulps of headroom
            fp_slack = 8.0 * eps * (1.0 + abs(target))
            excess = max(excess, abs(approx.value - target) - approx.error_bound - fp_slack)
    return [
        CheckResult("barnes_route_agreement", worst <= 1e-10, worst, 1e-10),
        CheckResult("series_certificate", excess <= 0.0, excess, 0.0),
    ]


def _residual_spread(side: str, quad: QuadratureSpec) -> float:
    distances = (1e-2, 1e-3, 1e-4)
    ratios = []
    for d in distances:
        if side == "neg1":
            p = envelope.AngleParam(-1.0 + d)
            resid = envelope.log_det_unit(p, quad=quad).log_det - envelope.asymptotic_neg1(p)
        else:
            p = envelope.AngleParam(-0.5 - d / 2.0)
            resid = envelope.log_det_unit(p, quad=quad).log_det - envelope.asymptotic_neghalf(p)
        ratios.append(abs(resid) / d)
    return max(ratios) / min(ratios)


def _criterion_7(quad: QuadratureSpec) -> List[CheckResult]:
    spread1 = _residual_spread("neg1", quad)
    spread2 = _residual_spread("neghalf", quad)
    return [
        CheckResult("asymptotics_neg1_order", spread1 <= 3.0, spread1, 3.0),
        CheckResult("asymptotics_neghalf_order", spread2 <= 3.0, spread2, 3.0),
    ]


def _criterion_8(quad: QuadratureSpec) -> List[CheckResult]:
    failures = 0
    for p in range(1, 31):
        for q in range(1, 31):
            if math.gcd(p, q) != 1:
                continue
            lhs = barnes.dedekind_sum(q, p) + barnes.dedekind_sum(p, q)
            rhs = (
                Fraction(-1, 4)
                + (Fraction(p, q) + Fraction(q, p) + Fraction(1, p * q)) / 12
            )
            if lhs != rhs:
                failures += 1
    return [CheckResult("dedekind_reciprocity", failures == 0, float(failures), 0.0)]


def _criterion_9(quad: QuadratureSpec) -> List[CheckResult]:
    t1 = envelope.scan(-0.95, -0.55, 101, 1.0, quad=quad)
    t3 = envelope.scan(-0.95, -0.55, 101, 3.0, quad=quad)
    b = np.asarray([r.beta for r in t1.rows])
    ld1 = np.asarray([r.log_det for r in t1.rows])
    ld3 = np.asarray([r.log_det for r in t3.rows])
    i_star = int(np.argmin(np.abs(b - envelope.BETA_CRITICAL)))

    min_offset = float(abs(int(np.argmin(ld1)) - i_star))
    local_max_margin = float(
        min(ld3[i_star] - ld3[i_star - 1], ld3[i_star] - ld3[i_star + 1])
    )
    z0 = np.asarray([envelope.zeta0(envelope.AngleParam(float(x))) for x in b])
    rescale_err = float(np.max(np.abs((ld3 - ld1) + z0 * math.log(3.0))))
    return [
        CheckResult("scan_minimum_unit_area", min_offset == 0.0, min_offset, 0.0),
        CheckResult("scan_local_max_area3", local_max_margin > 0.0, local_max_margin, 0.0),
        CheckResult("rescaling_rowwise", rescale_err <= 1e-12, rescale_err, 1e-12),
    ]


# criterion number -> (check runner, wall-clock budget in seconds)
CRITERIA: dict[int, Tuple[Callable[[QuadratureSpec], List[CheckResult]], float]] = {
    1: (_criterion_1, 0.1),
    2: (_criterion_2, 0.5),
    3: (_criterion_3, 1.0),
    4: (_criterion_4, 1.0),
    5: (_criterion_5, 120.0),
    6: (_criterion_6, 30.0),
    7: (_criterion_7, 10.0),
    8: (_criterion_8, 1.0),
    9: (_criterion_9, 30.0),
}


def run_criterion(
    number: int, quad: QuadratureSpec = DEFAULT_QUAD
) -> Tuple[List[CheckResult], float]:
    """Run one numbered criterion; returns its checks and the elapsed time."""
    runner, _budget = CRITERIA[number]
    start = time.perf_counter()
    checks = runner(quad)
    return checks, time.perf_counter() - start


def run_suite(suite: str = "fast", quad: QuadratureSpec = DEFAULT_QUAD) -> List[CheckResult]:
    """Run the verification suite; ``fast`` skips the dense convexity grid."""
    if suite not in ("fast", "full"):
        raise ValueError(f"suite must be 'fast' or 'full', got {suite!r}")
    results: List[CheckResult] = []
    for number, (_runner, budget) in CRITERIA.items():
        if suite == "fast" and number == 5:
            continue
        checks, elapsed = run_criterion(number, quad)
        results.extend(checks)
        results.append(
            CheckResult(f"criterion_{number}_runtime", elapsed < budget, elapsed, budget)
        )
    return results
