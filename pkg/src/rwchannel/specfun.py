"""Special functions and entropy primitives shared by all other modules.

Everything here is a pure function of its arguments.  The entropy helpers
accept scalars or numpy arrays elementwise; the complex log-Gamma routine is
scalar.  Inputs within ``CLAMP_TOL`` of a domain boundary are clamped onto it
rather than rejected, because several downstream radicands sit exactly on the
boundary in exact arithmetic.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import ConsistencyError, DomainError, PoleError

CLAMP_TOL = 1e-12

# Stirling series coefficients B_{2n} / (2n (2n-1)), n = 1..8.  Eight terms
# give ~1e-15 absolute error for |z| >= 10 with |arg z| <= pi/2.
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)

_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)


def _clamp_unit(x, name: str):
    """Clamp x onto [0, 1], rejecting excursions beyond CLAMP_TOL."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < -CLAMP_TOL) or np.any(arr > 1.0 + CLAMP_TOL):
        raise DomainError(f"{name} must lie in [0, 1], got {x!r}")
    return np.clip(arr, 0.0, 1.0)


def binary_entropy(y):
    """Binary Shannon entropy -y*log2(y) - (1-y)*log2(1-y).

    Accepts a scalar or array in [0, 1] (up to a 1e-12 clamp); the endpoints
    return exactly 0.
    """
    arr = _clamp_unit(y, "binary_entropy argument")
    out = np.zeros_like(arr)
    interior = (arr > 0.0) & (arr < 1.0)
    yi = arr[interior]
    out[interior] = -yi * np.log2(yi) - (1.0 - yi) * np.log2(1.0 - yi)
    if np.isscalar(y) or np.ndim(y) == 0:
        return float(out)
    return out


def damped_entropy(q, z, nu):
    """Entropy of a (q, nu)-parameterized qubit after damping z.

    For the state with excited population q and coherence nu*sqrt(q(1-q)),
    sent through an amplitude damping channel of transmissivity z, the output
    eigenvalues are (1 +- sqrt(r))/2 with radicand

        r = (1 - 2 z q)^2 + 4 z nu^2 q (1 - q),

    so this returns binary_entropy((1 + sqrt(r))/2).  The radicand equals 1
    in exact arithmetic at several parameter corners; drift up to 1e-9 above
    1 is clamped, anything larger signals a bug.
    """
    q = _clamp_unit(q, "damped_entropy q")
    z = _clamp_unit(z, "damped_entropy z")
    nu = _clamp_unit(nu, "damped_entropy nu")
    rad = (1.0 - 2.0 * z * q) ** 2 + 4.0 * z * nu**2 * q * (1.0 - q)
    if np.any(rad > 1.0 + 1e-9) or np.any(rad < 0.0):
        raise ConsistencyError(f"radicand escaped [0, 1]: max {np.max(rad)!r}")
    rad = np.clip(rad, 0.0, 1.0)
    return binary_entropy((1.0 + np.sqrt(rad)) / 2.0)


def log_gamma_complex(z: complex) -> complex:
    """Principal-branch log of the Euler Gamma function for complex z.

    Uses the ascending recurrence to push the argument away from the poles
    and the real axis, then an eight-term Stirling series.  Relative accuracy
    is ~1e-13 or better for |Im z| up to 1e4.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {z!r}")
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise PoleError(f"log Gamma pole at {z!r}")
    shift = 0.0 + 0.0j
    # Recurrence until Stirling is safe: nonnegative real part and |z| >= 10
    # in a sector where the series converges at full precision.
    while z.real < 0.0 or (z.real < 10.0 and abs(z.imag) < 10.0):
        shift += cmath.log(z)
        z += 1.0
    inv_z2 = 1.0 / (z * z)
    series = 0.0 + 0.0j
    for coeff in reversed(_STIRLING):
        series = series * inv_z2 + coeff
    series /= z
    return (z - 0.5) * cmath.log(z) - z + _HALF_LOG_TWO_PI + series - shift


def log_abs_gamma_ratio_sq(numerators, denominators) -> float:
    """log of |prod Gamma(numerators) / prod Gamma(denominators)|^2.

    Log-space accumulation: the individual |Gamma| factors appearing in the
    transmissivity formula under/overflow long before their ratio does.
    """
    total = 0.0
    for z in numerators:
        total += log_gamma_complex(z).real
    for z in denominators:
        total -= log_gamma_complex(z).real
    return 2.0 * total


def abs_gamma_ratio_sq(numerators, denominators) -> float:
    """|prod Gamma(numerators) / prod Gamma(denominators)|^2."""
    return math.exp(log_abs_gamma_ratio_sq(numerators, denominators))
