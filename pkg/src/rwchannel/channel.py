"""Qubit amplitude damping channel: Kraus action, complementary channel and
explicit classical-quantum states for the brute-force entropic oracle.

Basis convention: matrix index 0 is the particle state |1> and index 1 the
vacuum |0>, so a qubit density operator reads

    [[1 - q,   gamma ],
     [gamma*,  q     ]]

with q the vacuum population <0|rho|0>.  This is the ordering in which the
Kraus operators below take their standard form; keeping it fixed everywhere
prevents silent q <-> 1-q swaps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, StateConstructionError
from .specfun import binary_entropy

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10
COHERENCE_SLACK = 1e-12


@dataclass(frozen=True)
class QubitState:
    """(q, gamma) parameterization of a qubit density operator."""

    q: float
    gamma: complex = 0.0

    def __post_init__(self):
        if not 0.0 <= self.q <= 1.0:
            raise DomainError(f"population q must lie in [0, 1], got {self.q!r}")
        bound = math.sqrt(max(self.q - self.q * self.q, 0.0))
        if abs(self.gamma) > bound + COHERENCE_SLACK:
            raise StateConstructionError(
                f"coherence |{self.gamma!r}| exceeds sqrt(q - q^2) = {bound!r}"
            )

    def matrix(self) -> np.ndarray:
        """2x2 density matrix in the (|1>, |0>) basis."""
        g = complex(self.gamma)
        return np.array([[1.0 - self.q, g], [g.conjugate(), self.q]], dtype=complex)


@dataclass(frozen=True)
class ADChannel:
    """Amplitude damping channel with transmissivity eta in [0, 1]."""

    eta: float

    def __post_init__(self):
        if not 0.0 <= self.eta <= 1.0:
            raise DomainError(f"eta must lie in [0, 1], got {self.eta!r}")

    def kraus(self) -> tuple[np.ndarray, np.ndarray]:
        """Kraus pair (|1><1| + sqrt(eta)|0><0|, sqrt(1-eta)|1><0|)."""
        k0 = np.diag([1.0, math.sqrt(self.eta)]).astype(complex)
        k1 = np.zeros((2, 2), dtype=complex)
        k1[0, 1] = math.sqrt(1.0 - self.eta)
        return k0, k1


def apply_channel(ch: ADChannel, s: QubitState) -> QubitState:
    """Channel output: q -> eta*q, gamma -> sqrt(eta)*gamma."""
    return QubitState(q=ch.eta * s.q, gamma=math.sqrt(ch.eta) * complex(s.gamma))


def apply_complementary(ch: ADChannel, s: QubitState) -> QubitState:
    """Environment output: q -> (1-eta)*q, gamma -> sqrt(1-eta)*gamma."""
    return QubitState(q=(1.0 - ch.eta) * s.q, gamma=math.sqrt(1.0 - ch.eta) * complex(s.gamma))


def state_entropy(s: QubitState) -> float:
    """von Neumann entropy h2((1 + sqrt((1-2q)^2 + 4|gamma|^2)) / 2)."""
    rad = (1.0 - 2.0 * s.q) ** 2 + 4.0 * abs(s.gamma) ** 2
    rad = min(rad, 1.0)
    return binary_entropy((1.0 + math.sqrt(rad)) / 2.0)


@dataclass(frozen=True)
class DensityMatrix:
    """Density operator on a tensor product of labeled factors.

    Carrying the factor labels and dimensions in the type keeps partial
    traces honest about axis ordering.
    """

    labels: tuple[str, ...]
    dims: tuple[int, ...]
    matrix: np.ndarray

    @property
    def dimension(self) -> int:
        return int(np.prod(self.dims))

    def validate(self, eigenvalue_floor: float = EIGENVALUE_FLOOR) -> "DensityMatrix":
        m = self.matrix
        if m.shape != (self.dimension, self.dimension):
            raise StateConstructionError(
                f"matrix shape {m.shape} does not match factor dims {self.dims}"
            )
        if np.max(np.abs(m - m.conj().T)) > HERMITICITY_TOL:
            raise StateConstructionError("matrix is not Hermitian to 1e-12")
        if abs(np.trace(m).real - 1.0) > TRACE_TOL or abs(np.trace(m).imag) > TRACE_TOL:
            raise StateConstructionError("trace differs from 1 beyond 1e-12")
        if np.min(np.linalg.eigvalsh(m)) < eigenvalue_floor:
            raise StateConstructionError("negative eigenvalue beyond -1e-10")
        return self

    def marginal(self, keep: str | tuple[str, ...]) -> "DensityMatrix":
        """Partial trace onto the factors named in ``keep`` (order preserved
        as in this state, independent of the order given)."""
        if isinstance(keep, str):
            keep = (keep,)
        unknown = set(keep) - set(self.labels)
        if unknown:
            raise DomainError(f"unknown factor labels {sorted(unknown)}")
        keep_idx = [i for i, lab in enumerate(self.labels) if lab in keep]
        n = len(self.dims)
        tensor = self.matrix.reshape(self.dims + self.dims)
        # Trace out factors not kept, highest axis first so indices stay valid.
        for i in sorted(set(range(n)) - set(keep_idx), reverse=True):
            tensor = np.trace(tensor, axis1=i, axis2=i + tensor.ndim // 2)
        kept_dims = tuple(self.dims[i] for i in keep_idx)
        d = int(np.prod(kept_dims)) if kept_dims else 1
        return DensityMatrix(
            labels=tuple(self.labels[i] for i in keep_idx),
            dims=kept_dims,
            matrix=tensor.reshape(d, d),
        )


def _purification(state: QubitState) -> np.ndarray:
    """Square-root purification |phi> on A (x) A' with the A' marginal equal
    to the state's matrix; returned as a 2x2 coefficient array C[a, a']."""
    rho = state.matrix()
    evals, evecs = np.linalg.eigh(rho)
    evals = np.clip(evals, 0.0, None)
    sqrt_rho = (evecs * np.sqrt(evals)) @ evecs.conj().T
    return sqrt_rho.T


def build_cq_state(
    ch: ADChannel,
    ensemble: list[tuple[float, QubitState]],
    include_environment: bool = False,
) -> DensityMatrix:
    """Classical-quantum state sum_x p_x |x><x| (x) (id (x) N)(|phi_x><phi_x|).

    Each input is purified on A (x) A' and A' is pushed through the isometric
    extension of the channel; the environment factor E is kept when
    ``include_environment`` is set and traced out otherwise.  Factor labels
    are ("X", "A", "B") or ("X", "A", "B", "E").
    """
    if not ensemble:
        raise DomainError("ensemble must contain at least one state")
    probs = [p for p, _ in ensemble]
    if any(p < -1e-15 for p in probs) or abs(sum(probs) - 1.0) > 1e-12:
        raise DomainError(f"probabilities must be >= 0 and sum to 1, got {probs!r}")
    nx = len(ensemble)
    k0, k1 = ch.kraus()
    dims = (nx, 2, 2, 2)
    out = np.zeros((nx * 8, nx * 8), dtype=complex)
    out = out.reshape(dims + dims)
    for x, (p, state) in enumerate(ensemble):
        coeff = _purification(state)
        # |Phi_x> on A (x) B (x) E: psi[a, b, e] = sum_a' K_e[b, a'] C[a, a']
        psi = np.stack([coeff @ k0.T, coeff @ k1.T], axis=-1)
        block = p * np.einsum("abe,cdf->abecdf", psi, psi.conj())
        out[x, :, :, :, x, :, :, :] = block
    full = DensityMatrix(labels=("X", "A", "B", "E"), dims=dims,
                         matrix=out.reshape(nx * 8, nx * 8))
    if include_environment:
        return full.validate()
    return full.marginal(("X", "A", "B")).validate()
