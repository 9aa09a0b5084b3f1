"""Brute-force entropic quantities from explicit density matrices.

Ground truth for every closed form in the package: entropies come from
Hermitian eigendecompositions of labeled marginals, never from the
analytic expressions they are meant to check.
"""

from __future__ import annotations

import numpy as np

from .channel import DensityMatrix
from .errors import StateConstructionError

EIGENVALUE_FLOOR = -1e-10


def entropy(state: DensityMatrix | np.ndarray) -> float:
    """von Neumann entropy in bits, -sum(lambda log2 lambda), 0 log 0 := 0."""
    m = state.matrix if isinstance(state, DensityMatrix) else np.asarray(state)
    evals = np.linalg.eigvalsh(m)
    if np.min(evals) < EIGENVALUE_FLOOR:
        raise StateConstructionError(f"marginal has eigenvalue {np.min(evals)!r} < -1e-10")
    evals = np.clip(evals, 0.0, None)
    positive = evals[evals > 0.0]
    return float(-np.sum(positive * np.log2(positive)))


def mutual_information_ax_b(state: DensityMatrix) -> float:
    """I(AX;B) = H(AX) + H(B) - H(ABX)."""
    return (
        entropy(state.marginal(("A", "X")))
        + entropy(state.marginal("B"))
        - entropy(state.marginal(("A", "B", "X")))
    )


def coherent_information_a_bx(state: DensityMatrix) -> float:
    """I(A>BX) = H(BX) - H(ABX)."""
    return (
        entropy(state.marginal(("B", "X")))
        - entropy(state.marginal(("A", "B", "X")))
    )


def holevo_information_x_b(state: DensityMatrix) -> float:
    """I(X;B) = H(X) + H(B) - H(BX)."""
    return (
        entropy(state.marginal("X"))
        + entropy(state.marginal("B"))
        - entropy(state.marginal(("B", "X")))
    )


def conditional_entropy(state: DensityMatrix, target: str) -> float:
    """H(target|X) = H(target, X) - H(X) for a classical label factor X."""
    return entropy(state.marginal((target, "X"))) - entropy(state.marginal("X"))
