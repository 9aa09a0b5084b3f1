"""Per-letter weighted rate objective and its curvature analysis.

The weighted objective that traces the triple-region boundary splits into a
mean-output entropy term plus a per-letter part

    F(q, gamma) = h2((1+f0)/2) + lam h2((1+f1)/2) - (1+lam+mu) h2((1+f2)/2)

with radicals f0, f1, f2 built from the input, output and environment
states of the letter.  This module provides F, its closed-form first
gamma-derivative and second q-derivative, the critical weight values at
which those change sign, and a randomized check that two-letter mixtures
never beat the best single letter at the mixed excitation probability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, SingularPointError
from .regions import LagrangeWeights, golden_section_maximize
from .specfun import binary_entropy

LN2 = math.log(2.0)

# Radicals closer than this to 0 or 1 put the closed-form derivatives on a
# 1/f or 1/(1-f^2) pole; such points are rejected by the critical-value
# formulas and skipped by the finite-difference comparisons.
RADICAL_GUARD = 1e-9


@dataclass(frozen=True)
class ObjectivePoint:
    """A letter (q, gamma) together with the weights and transmissivity.

    gamma is stored as a real magnitude: the objective depends on the
    coherence only through |gamma|.
    """

    q: float
    gamma: float
    weights: LagrangeWeights
    eta: float

    def __post_init__(self):
        if not 0.0 <= self.q <= 1.0:
            raise DomainError(f"q must lie in [0, 1], got {self.q!r}")
        bound = math.sqrt(max(self.q - self.q * self.q, 0.0))
        if not 0.0 <= self.gamma <= bound + 1e-12:
            raise DomainError(f"gamma must lie in [0, sqrt(q - q^2)], got {self.gamma!r}")
        if not 0.0 <= self.eta <= 1.0:
            raise DomainError(f"eta must lie in [0, 1], got {self.eta!r}")


def radicals(pt: ObjectivePoint) -> tuple[float, float, float]:
    """(f0, f1, f2): input, output and environment eigenvalue radicals."""
    q, gam, eta = pt.q, pt.gamma, pt.eta
    f0 = math.sqrt((1.0 - 2.0 * q) ** 2 + 4.0 * gam * gam)
    f1 = math.sqrt((1.0 - 2.0 * eta * q) ** 2 + 4.0 * eta * gam * gam)
    f2 = math.sqrt((1.0 - 2.0 * (1.0 - eta) * q) ** 2 + 4.0 * (1.0 - eta) * gam * gam)
    return f0, f1, f2


def letter_objective(pt: ObjectivePoint) -> float:
    """The per-letter weighted objective F(q, gamma)."""
    f0, f1, f2 = radicals(pt)
    lam, mu = pt.weights.lam, pt.weights.mu
    return (
        binary_entropy((1.0 + min(f0, 1.0)) / 2.0)
        + lam * binary_entropy((1.0 + min(f1, 1.0)) / 2.0)
        - (1.0 + lam + mu) * binary_entropy((1.0 + min(f2, 1.0)) / 2.0)
    )


def _log_ratio(f: float) -> float:
    return math.log((1.0 + f) / (1.0 - f))


def gamma_slope(pt: ObjectivePoint) -> float:
    """Closed-form dF/dgamma.

    Each radical contributes (2 z gamma / f) ln((1+f)/(1-f)) with its weight;
    valid away from f = 0 and f = 1 poles.
    """
    f0, f1, f2 = radicals(pt)
    _require_interior(f0, f1, f2)
    lam, mu = pt.weights.lam, pt.weights.mu
    eta = pt.eta
    gam = pt.gamma
    return (
        (1.0 + mu + lam) * (2.0 * (1.0 - eta) * gam / f2) * _log_ratio(f2)
        - lam * (2.0 * eta * gam / f1) * _log_ratio(f1)
        - (2.0 * gam / f0) * _log_ratio(f0)
    ) / LN2


def q_curvature(pt: ObjectivePoint) -> float:
    """Closed-form d^2F/dq^2, valid away from radical poles."""
    f0, f1, f2 = radicals(pt)
    _require_interior(f0, f1, f2)
    lam, mu = pt.weights.lam, pt.weights.mu
    eta = pt.eta
    q, gam = pt.q, pt.gamma

    def bracket(f, z, center):
        return (2.0 * z * gam * gam / f) * _log_ratio(f) + center**2 / (1.0 - f * f)

    return (
        -4.0 / f0**2 * bracket(f0, 1.0, 1.0 - 2.0 * q)
        - 4.0 * lam * eta**2 / f1**2 * bracket(f1, eta, 1.0 - 2.0 * eta * q)
        + 4.0 * (1.0 + mu + lam) * (1.0 - eta) ** 2 / f2**2
        * bracket(f2, 1.0 - eta, 1.0 - 2.0 * (1.0 - eta) * q)
    ) / LN2


def _require_interior(*fs: float):
    for f in fs:
        if f < RADICAL_GUARD or f > 1.0 - RADICAL_GUARD:
            raise SingularPointError(f"radical {f!r} too close to 0 or 1 for the closed form")


def critical_mu_slope(pt: ObjectivePoint) -> float:
    """Weight mu at which dF/dgamma changes sign at this point (negative
    below, positive above).  Requires gamma > 0 and interior radicals."""
    if pt.gamma <= 0.0:
        raise SingularPointError("critical value undefined at gamma = 0")
    f0, f1, f2 = radicals(pt)
    _require_interior(f0, f1, f2)
    lam = pt.weights.lam
    eta = pt.eta
    denom = (1.0 - eta) / f2 * _log_ratio(f2)
    return -(1.0 + lam) + (
        lam * eta / f1 * _log_ratio(f1) + 1.0 / f0 * _log_ratio(f0)
    ) / denom


def critical_mu_curvature(pt: ObjectivePoint) -> float:
    """Weight mu at which d^2F/dq^2 changes sign at this point (concave
    below, convex above).  Requires gamma > 0 and interior radicals."""
    if pt.gamma <= 0.0:
        raise SingularPointError("critical value undefined at gamma = 0")
    f0, f1, f2 = radicals(pt)
    _require_interior(f0, f1, f2)
    lam = pt.weights.lam
    eta = pt.eta
    gam2 = pt.gamma * pt.gamma
    denom = (1.0 - eta) / f2 * _log_ratio(f2) + (
        f2 * f2 - 4.0 * (1.0 - eta) * gam2
    ) / (2.0 * gam2 * (1.0 - f2 * f2))
    bracket = (
        lam * eta**3 / f1**3 * _log_ratio(f1)
        + 1.0 / f0**3 * _log_ratio(f0)
        + lam * eta**2 / (2.0 * gam2 * f1 * f1) * (f1 * f1 - 4.0 * eta * gam2) / (1.0 - f1 * f1)
        + 1.0 / (2.0 * gam2 * f0 * f0) * (f0 * f0 - 4.0 * gam2) / (1.0 - f0 * f0)
    )
    return -(1.0 + lam) + (f2 * f2 / (1.0 - eta) ** 2) / denom * bracket


def convex_worst_case_bound(eta: float, mu: float, q: float) -> float:
    """q * mu * h2(1 - (1-eta) q): the worst-case slack of the convex-regime
    mixture inequality; non-negative on the whole domain."""
    return q * mu * binary_entropy(1.0 - (1.0 - eta) * q)


# ---------------------------------------------------------------------------
# randomized two-letter reduction check


@dataclass
class ReductionReport:
    """Outcome of a randomized two-letter vs single-letter domination check.

    ``violations`` lists trials whose mixture beat every admissible single
    letter at the mixed excitation probability (a logic error if nonempty);
    ``endpoint_misses`` counts trials where only the coherence endpoint
    selected by the critical-weight rule failed while an interior coherence
    dominated, which happens when the objective is not monotone in gamma.
    """

    eta: float
    weights: LagrangeWeights
    trials: int
    seed: int
    tolerance: float
    violations: list[dict] = field(default_factory=list)
    endpoint_misses: int = 0
    max_excess: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations


def _best_single_letter(qbar: float, gmax: float, lam: float, mu: float, eta: float) -> float:
    w = LagrangeWeights(lam=lam, mu=mu)
    grid = np.linspace(0.0, 1.0, 257)
    vals = [letter_objective(ObjectivePoint(qbar, x * gmax, w, eta)) for x in grid]
    i = int(np.argmax(vals))
    lo = grid[max(i - 1, 0)] * gmax
    hi = grid[min(i + 1, len(grid) - 1)] * gmax
    _, best = golden_section_maximize(
        lambda g: letter_objective(ObjectivePoint(qbar, g, w, eta)),
        lo,
        hi,
        tol=1e-12,
        newton_steps=0,
    )
    return max(best, float(vals[i]))


def reduction_check(
    eta: float,
    weights: LagrangeWeights,
    trials: int,
    rng_seed: int,
    tol: float = 1e-9,
) -> ReductionReport:
    """Randomized check that mixing two letters never beats the best single
    letter at the mixed excitation probability.

    Per trial the two letters are drawn uniformly over valid states.  The
    single-letter coherence is first chosen by the critical-weight rule
    (zero below the slope-critical mu, maximal above); when that endpoint
    fails, the coherence is optimized over its full range before the trial
    is declared a violation.
    """
    if eta < 0.5:
        raise DomainError("reduction check applies to eta >= 0.5")
    rng = np.random.default_rng(rng_seed)
    report = ReductionReport(
        eta=eta, weights=weights, trials=trials, seed=rng_seed, tolerance=tol
    )
    lam, mu = weights.lam, weights.mu
    for trial in range(trials):
        p0 = float(rng.uniform())
        q0, q1 = (float(v) for v in rng.uniform(size=2))
        g0 = float(rng.uniform()) * math.sqrt(max(q0 - q0 * q0, 0.0))
        g1 = float(rng.uniform()) * math.sqrt(max(q1 - q1 * q1, 0.0))
        lhs = p0 * letter_objective(ObjectivePoint(q0, g0, weights, eta)) + (
            1.0 - p0
        ) * letter_objective(ObjectivePoint(q1, g1, weights, eta))
        qbar = p0 * q0 + (1.0 - p0) * q1
        gmax = math.sqrt(max(qbar - qbar * qbar, 0.0))
        gamma_rule = 0.0
        if gmax > 1e-9:
            try:
                rule_mu = critical_mu_slope(
                    ObjectivePoint(qbar, 0.5 * gmax, weights, eta)
                )
                gamma_rule = 0.0 if mu <= rule_mu else gmax
            except SingularPointError:
                gamma_rule = 0.0
        rhs = letter_objective(ObjectivePoint(qbar, gamma_rule, weights, eta))
        if lhs - rhs <= tol:
            continue
        best = _best_single_letter(qbar, gmax, lam, mu, eta)
        if lhs - best <= tol:
            report.endpoint_misses += 1
            continue
        report.violations.append(
            {
                "trial": trial,
                "p0": p0,
                "q0": q0,
                "q1": q1,
                "gamma0": g0,
                "gamma1": g1,
                "excess": lhs - best,
            }
        )
        report.max_excess = max(report.max_excess, lhs - best)
    return report
