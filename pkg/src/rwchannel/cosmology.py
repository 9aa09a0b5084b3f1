"""Transmissivity of field modes in a smoothly expanding 1+1 universe.

The conformal scale factor a(tau) = 1 + epsilon*(1 + tanh(rho*tau))
interpolates between flat in/out regions with a(-inf) = 1 and
a(+inf) = 1 + 2*epsilon.  Mode mixing between the asymptotic particle
decompositions acts on each momentum k as an amplitude damping channel;
this module maps (epsilon, rho, mass, k) to its transmissivity eta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConsistencyError, DomainError, EvaluationError
from .specfun import log_abs_gamma_ratio_sq

# Below this multiple of the field mass the closed-form evaluation is
# replaced by its analytic k -> 0 limit, eta = 1.
SMALL_K_FACTOR = 1e-6

# eta beyond [0, 1] by more than this is treated as a bug, not drift.
ETA_DRIFT_TOL = 1e-6


@dataclass(frozen=True)
class CosmologyParams:
    """Expansion model: total volume (epsilon), rapidity (rho), field mass."""

    epsilon: float
    rho: float
    mass: float

    def __post_init__(self):
        for name in ("epsilon", "rho", "mass"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
        # epsilon = 0 (static universe) is admitted as the no-noise limit.
        if self.epsilon < 0.0:
            raise DomainError(f"epsilon must be >= 0, got {self.epsilon!r}")
        if self.rho <= 0.0 or self.mass <= 0.0:
            raise DomainError("rho and mass must be strictly positive")


@dataclass(frozen=True)
class ModeEnergies:
    """Asymptotic masses and energies of a momentum-k mode."""

    k: float
    m_in: float
    m_out: float
    e_in: float
    e_out: float
    e_plus: float
    e_minus: float

    def __post_init__(self):
        if not (self.e_out >= self.e_in >= self.m_in > 0.0):
            raise DomainError(f"energies out of order: {self!r}")


@dataclass(frozen=True)
class Transmissivity:
    """Damping parameter eta plus the created-particle density n = 2(1-eta)."""

    eta: float
    particle_density: float

    def __post_init__(self):
        if not 0.0 <= self.eta <= 1.0:
            raise DomainError(f"eta must lie in [0, 1], got {self.eta!r}")
        if abs(self.particle_density - 2.0 * (1.0 - self.eta)) > 1e-12:
            raise DomainError("particle_density must equal 2 (1 - eta)")


@dataclass(frozen=True)
class BogoliubovPair:
    """Ladder-operator mixing parameters: |alpha|^2 = cos^2 r.

    The phase theta never affects eta; it is carried for completeness of the
    two-mode squeezing unitary that generates the mixing.
    """

    alpha_sq: float
    r: float
    theta: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.alpha_sq <= 1.0 or self.r < 0.0:
            raise DomainError(f"need alpha_sq in [0, 1] and r >= 0, got {self!r}")
        if abs(self.alpha_sq - math.cos(self.r) ** 2) > 1e-12:
            raise DomainError("alpha_sq and r disagree: alpha_sq must equal cos(r)^2")


def mode_energies(params: CosmologyParams, k: float) -> ModeEnergies:
    """Asymptotic in/out masses and energies for momentum k >= 0."""
    if k < 0.0 or not math.isfinite(k):
        raise DomainError(f"momentum must be finite and >= 0, got {k!r}")
    m_in = params.mass
    m_out = params.mass * (1.0 + 2.0 * params.epsilon)
    e_in = math.hypot(k, m_in)
    e_out = math.hypot(k, m_out)
    return ModeEnergies(
        k=k,
        m_in=m_in,
        m_out=m_out,
        e_in=e_in,
        e_out=e_out,
        e_plus=0.5 * (e_out + e_in),
        e_minus=0.5 * (e_out - e_in),
    )


def _log_gamma_factor(params: CosmologyParams, en: ModeEnergies) -> float:
    rho = params.rho
    me = params.mass * params.epsilon
    num = (
        complex(1.0, -en.e_in / rho),
        complex(0.0, -en.e_out / rho),
    )
    den = (
        complex(1.0, -(en.e_plus + me) / rho),
        complex(0.0, -(en.e_plus - me) / rho),
    )
    return log_abs_gamma_ratio_sq(num, den)


def transmissivity_gamma_factor(params: CosmologyParams, k: float) -> float:
    """Squared magnitude of the Gamma-function ratio entering eta.

    This is the in/out mode-function mixing coefficient whose modulus
    squared, times the kinematic prefactor, gives the transmissivity.
    Requires k > 0; the k -> 0 limit is handled by ``transmissivity``.
    """
    if k <= 0.0:
        raise DomainError("gamma factor needs k > 0; use transmissivity for the k -> 0 limit")
    en = mode_energies(params, k)
    return math.exp(_log_gamma_factor(params, en))


def transmissivity(params: CosmologyParams, k: float) -> Transmissivity:
    """Amplitude-damping transmissivity of the momentum-k mode.

    eta = [E_out (E_in - M_in)] / [E_in (E_out - M_out)] times the squared
    Gamma-ratio coefficient.  The prefactor is evaluated through the
    cancellation-free identity E - M = k^2 / (E + M), and the whole product
    in log space so small-rho parameters cannot overflow.  For
    k < 1e-6 * mass the analytic limit eta = 1 is returned directly.
    """
    en = mode_energies(params, k)
    if params.epsilon == 0.0 or k < SMALL_K_FACTOR * params.mass:
        return Transmissivity(eta=1.0, particle_density=0.0)
    # E_out (E_in - M_in) / (E_in (E_out - M_out)) with k^2 cancelled:
    log_pref = (
        math.log(en.e_out)
        + math.log(en.e_out + en.m_out)
        - math.log(en.e_in)
        - math.log(en.e_in + en.m_in)
    )
    log_eta = log_pref + _log_gamma_factor(params, en)
    if not math.isfinite(log_eta):
        raise EvaluationError(f"non-finite transmissivity intermediate at k={k!r}")
    eta = math.exp(log_eta)
    if eta > 1.0 + ETA_DRIFT_TOL:
        raise ConsistencyError(f"eta={eta!r} exceeds 1 beyond drift tolerance at k={k!r}")
    eta = min(eta, 1.0)
    return Transmissivity(eta=eta, particle_density=2.0 * (1.0 - eta))


def bogoliubov_pair(trans: Transmissivity, theta: float = 0.0) -> BogoliubovPair:
    """Mixing-angle form of a transmissivity: |alpha|^2 = eta = cos^2 r."""
    r = math.acos(math.sqrt(min(max(trans.eta, 0.0), 1.0)))
    return BogoliubovPair(alpha_sq=trans.eta, r=r, theta=theta)


def k_grid(k_min: float, k_max: float, steps: int, grid: str = "log") -> list[float]:
    """Sample grid in momentum, logarithmic by default."""
    if steps < 2:
        raise DomainError(f"steps must be >= 2, got {steps}")
    if not 0.0 <= k_min < k_max:
        raise DomainError(f"need 0 <= k_min < k_max, got {k_min!r}, {k_max!r}")
    if grid == "log":
        if k_min <= 0.0:
            raise DomainError("log grid needs k_min > 0; use grid='linear'")
        lo, hi = math.log(k_min), math.log(k_max)
        return [math.exp(lo + (hi - lo) * i / (steps - 1)) for i in range(steps)]
    if grid == "linear":
        return [k_min + (k_max - k_min) * i / (steps - 1) for i in range(steps)]
    raise DomainError(f"unknown grid type {grid!r}")


def eta_sweep(
    params: CosmologyParams,
    k_min: float,
    k_max: float,
    steps: int,
    grid: str = "log",
) -> list[tuple[float, Transmissivity]]:
    """Transmissivity sampled over a momentum grid, ordered by k."""
    return [(k, transmissivity(params, k)) for k in k_grid(k_min, k_max, steps, grid)]
