"""Achievable rate regions for the amplitude damping channel.

Computes the classical/quantum trade-off region, its entanglement-extended
triple-region corners, scalar capacities and the time-sharing baseline.
Boundaries are extracted by a primal (p, nu) grid sweep plus Pareto filter,
which is robust to the non-concavity of the dual objective; the weighted
dual objective is kept for validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import QubitState
from .errors import DomainError
from .specfun import binary_entropy, damped_entropy

PARETO_RESOLUTION = 1e-9


@dataclass(frozen=True)
class EnsembleSymmetric:
    """Two equiprobable letters with opposite coherence sign.

    Both letters share the excitation probability p; nu in [0, 1] scales the
    coherence between the quantum-capacity ensemble (nu=0) and the
    product-state classical-capacity ensemble (nu=1).
    """

    p: float
    nu: float

    def __post_init__(self):
        if not (0.0 <= self.p <= 1.0 and 0.0 <= self.nu <= 1.0):
            raise DomainError(f"p and nu must lie in [0, 1], got {self!r}")


@dataclass(frozen=True)
class EnsembleTwoLetter:
    """General two-letter ensemble (p0, q_x, nu_x); p1 = 1 - p0."""

    p0: float
    q0: float
    q1: float
    nu0: float
    nu1: float

    def __post_init__(self):
        for name in ("p0", "q0", "q1", "nu0", "nu1"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise DomainError(f"{name} must lie in [0, 1], got {v!r}")

    @property
    def mean_q(self) -> float:
        return self.p0 * self.q0 + (1.0 - self.p0) * self.q1


@dataclass(frozen=True)
class LagrangeWeights:
    """Non-negative weights (lam, mu) of the weighted rate objective."""

    lam: float
    mu: float

    def __post_init__(self):
        if self.lam < 0.0 or self.mu < 0.0:
            raise DomainError(f"weights must be >= 0, got {self!r}")


@dataclass(frozen=True)
class RatePointCQ:
    C: float
    Q: float


@dataclass(frozen=True)
class RatePointCQE:
    C: float
    Q: float
    E: float


@dataclass
class RegionBoundary:
    """Boundary points with their generating (p, nu) parameters."""

    points: list
    params: list[tuple[float, float]]
    eta: float
    grid: dict = field(default_factory=dict)


def ensemble_states(e: EnsembleSymmetric | EnsembleTwoLetter) -> list[tuple[float, QubitState]]:
    """Explicit (probability, state) pairs, with each letter split into its
    +gamma / -gamma pair so the averaged channel output is diagonal."""
    if isinstance(e, EnsembleSymmetric):
        letters = [(1.0, e.p, e.nu)]
    else:
        letters = [(e.p0, e.q0, e.nu0), (1.0 - e.p0, e.q1, e.nu1)]
    out = []
    for weight, q, nu in letters:
        gamma = nu * math.sqrt(max(q - q * q, 0.0))
        out.append((0.5 * weight, QubitState(q=q, gamma=gamma)))
        out.append((0.5 * weight, QubitState(q=q, gamma=-gamma)))
    return out


# ---------------------------------------------------------------------------
# polyhedra


def cq_polyhedron(eta: float, e: EnsembleSymmetric) -> tuple[float, float]:
    """(Q_max, CQ_sum_max) bounds of the symmetric-ensemble polyhedron.

    Valid for eta >= 1/2 only; below that the symmetric reduction does not
    apply and the general two-letter form must be used.
    """
    if eta < 0.5:
        raise DomainError("symmetric polyhedron requires eta >= 0.5; use the general form")
    g_env = damped_entropy(e.p, 1.0 - eta, e.nu)
    q_max = max(damped_entropy(e.p, eta, e.nu) - g_env, 0.0)
    cq_sum_max = binary_entropy(eta * e.p) - g_env
    return q_max, cq_sum_max


def cq_polyhedron_general(eta: float, e: EnsembleTwoLetter) -> tuple[float, float]:
    """(Q_max, CQ_sum_max) for a general two-letter ensemble, any eta."""
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"eta must lie in [0, 1], got {eta!r}")
    px = (e.p0, 1.0 - e.p0)
    qx = (e.q0, e.q1)
    nux = (e.nu0, e.nu1)
    q_max = 0.0
    env_sum = 0.0
    for w, q, nu in zip(px, qx, nux):
        g_env = damped_entropy(q, 1.0 - eta, nu)
        q_max += w * (damped_entropy(q, eta, nu) - g_env)
        env_sum += w * g_env
    return max(q_max, 0.0), binary_entropy(eta * e.mean_q) - env_sum


def cqe_polyhedron(eta: float, e: EnsembleSymmetric) -> tuple[float, float, float]:
    """(C+2Q, Q+E, C+Q+E) bounds of the triple-region polyhedron."""
    if eta < 0.5:
        raise DomainError("symmetric polyhedron requires eta >= 0.5; use the general form")
    g_env = damped_entropy(e.p, 1.0 - eta, e.nu)
    h_out = binary_entropy(eta * e.p)
    c2q = h_out + damped_entropy(e.p, 1.0, e.nu) - g_env
    qe = damped_entropy(e.p, eta, e.nu) - g_env
    cqe_sum = h_out - g_env
    return c2q, qe, cqe_sum


# ---------------------------------------------------------------------------
# grid sweeps and Pareto extraction


def _bounds_grid(eta: float, grid_p: int, grid_nu: int):
    p = np.linspace(0.0, 1.0, grid_p)
    nu = np.linspace(0.0, 1.0, grid_nu)
    P, V = np.meshgrid(p, nu, indexing="ij")
    g_env = damped_entropy(P, 1.0 - eta, V)
    q_max = np.maximum(damped_entropy(P, eta, V) - g_env, 0.0)
    cq_sum = binary_entropy(eta * P) - g_env
    return P.ravel(), V.ravel(), q_max.ravel(), cq_sum.ravel()


def _pareto_cq(C: np.ndarray, Q: np.ndarray, P: np.ndarray, V: np.ndarray):
    """Upper-right Pareto set, returned with C strictly increasing."""
    order = np.lexsort((-Q, -C))
    keep = []
    best_q = -np.inf
    for i in order:
        if Q[i] > best_q + PARETO_RESOLUTION:
            keep.append(i)
            best_q = Q[i]
    keep.reverse()
    # collapse near-duplicate C values (keep the higher-Q entry)
    dedup = []
    for i in keep:
        if dedup and abs(C[i] - C[dedup[-1]]) < PARETO_RESOLUTION:
            continue
        dedup.append(i)
    return [(float(C[i]), float(Q[i]), float(P[i]), float(V[i])) for i in dedup]


def cq_boundary(eta: float, grid_p: int = 513, grid_nu: int = 513) -> RegionBoundary:
    """Pareto frontier of (C, Q) corner points over a (p, nu) grid.

    Each polyhedron contributes its corner (CQ_sum - Q_max, Q_max) and its
    C-axis point (CQ_sum, 0); the union's upper envelope is returned sorted
    by C with duplicates collapsed at 1e-9 resolution.
    """
    if not 0.5 <= eta <= 1.0:
        raise DomainError("cq_boundary requires eta in [0.5, 1]; use cq_boundary_general")
    if grid_p < 2 or grid_nu < 2:
        raise DomainError("grids must have at least 2 points")
    P, V, q_max, cq_sum = _bounds_grid(eta, grid_p, grid_nu)
    # Augment the grid with the scalar-capacity argmax parameters so the two
    # axis intercepts are exact rather than grid-resolution limited.
    _, p_q = quantum_capacity(eta)
    _, p_c = classical_capacity_product(eta)
    for p_extra, v_extra in ((p_q, 0.0), (p_c, 1.0)):
        g_env = damped_entropy(p_extra, 1.0 - eta, v_extra)
        P = np.append(P, p_extra)
        V = np.append(V, v_extra)
        q_max = np.append(q_max, max(damped_entropy(p_extra, eta, v_extra) - g_env, 0.0))
        cq_sum = np.append(cq_sum, binary_entropy(eta * p_extra) - g_env)
    C = np.concatenate([cq_sum - q_max, cq_sum])
    Q = np.concatenate([q_max, np.zeros_like(q_max)])
    P2 = np.concatenate([P, P])
    V2 = np.concatenate([V, V])
    ok = C >= 0.0
    rows = _pareto_cq(C[ok], Q[ok], P2[ok], V2[ok])
    return RegionBoundary(
        points=[RatePointCQ(c, q) for c, q, _, _ in rows],
        params=[(p, v) for _, _, p, v in rows],
        eta=eta,
        grid={"mode": "cq", "grid_p": grid_p, "grid_nu": grid_nu},
    )


def cq_boundary_general(eta: float, grid: int = 17) -> RegionBoundary:
    """General two-letter ensemble sweep for any eta; quantum corners floored
    at 0.  Coarser than the symmetric sweep: the ensemble space is
    five-dimensional."""
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"eta must lie in [0, 1], got {eta!r}")
    if grid < 2:
        raise DomainError("grid must have at least 2 points")
    s = np.linspace(0.0, 1.0, grid)
    P0, Q0, Q1, N0, N1 = np.meshgrid(s, s, s, s, s, indexing="ij")
    p1 = 1.0 - P0
    g_env0 = damped_entropy(Q0, 1.0 - eta, N0)
    g_env1 = damped_entropy(Q1, 1.0 - eta, N1)
    env = P0 * g_env0 + p1 * g_env1
    q_max = P0 * (damped_entropy(Q0, eta, N0) - g_env0) + p1 * (
        damped_entropy(Q1, eta, N1) - g_env1
    )
    q_max = np.maximum(q_max, 0.0)
    pbar = P0 * Q0 + p1 * Q1
    cq_sum = binary_entropy(eta * pbar) - env
    C = np.concatenate([(cq_sum - q_max).ravel(), cq_sum.ravel()])
    Q = np.concatenate([q_max.ravel(), np.zeros(q_max.size)])
    # record the induced mean excitation as the generating parameter
    PB = np.concatenate([pbar.ravel(), pbar.ravel()])
    NB = np.concatenate([N0.ravel(), N0.ravel()])
    ok = C >= 0.0
    rows = _pareto_cq(C[ok], Q[ok], PB[ok], NB[ok])
    return RegionBoundary(
        points=[RatePointCQ(c, q) for c, q, _, _ in rows],
        params=[(p, v) for _, _, p, v in rows],
        eta=eta,
        grid={"mode": "cq-general", "grid": grid},
    )


def cqe_corner_sweep(eta: float, grid_p: int = 129, grid_nu: int = 129) -> RegionBoundary:
    """Corner points (C, Q, E) of the triple-region polyhedra over a grid.

    Per (p, nu) three corners are emitted: the entanglement-consuming
    classical corner (b1, 0, b3-b1), the unassisted corner (b3, 0, 0) and
    the triple vertex where all three bounds bind.  E < 0 means consumption.
    """
    if not 0.5 <= eta <= 1.0:
        raise DomainError("cqe sweep requires eta in [0.5, 1]")
    if grid_p < 2 or grid_nu < 2:
        raise DomainError("grids must have at least 2 points")
    p = np.linspace(0.0, 1.0, grid_p)
    nu = np.linspace(0.0, 1.0, grid_nu)
    P, V = np.meshgrid(p, nu, indexing="ij")
    g_env = damped_entropy(P, 1.0 - eta, V)
    h_out = binary_entropy(eta * P)
    b1 = (h_out + damped_entropy(P, 1.0, V) - g_env).ravel()
    b2 = np.maximum((damped_entropy(P, eta, V) - g_env).ravel(), 0.0)
    b3 = (h_out - g_env).ravel()
    Pf, Vf = P.ravel(), V.ravel()
    qv = np.maximum(0.5 * (b1 + b2 - b3), 0.0)
    corners = [
        (b1, np.zeros_like(b1), b3 - b1),
        (b3, np.zeros_like(b1), np.zeros_like(b1)),
        (b1 - 2.0 * qv, qv, b2 - qv),
    ]
    pts, pars = [], []
    seen = set()
    for C, Q, E in corners:
        ok = C >= 0.0
        for c, q, en, pp, vv in zip(C[ok], Q[ok], E[ok], Pf[ok], Vf[ok]):
            key = (round(c / PARETO_RESOLUTION), round(q / PARETO_RESOLUTION),
                   round(en / PARETO_RESOLUTION))
            if key in seen:
                continue
            seen.add(key)
            pts.append(RatePointCQE(float(c), float(q), float(en)))
            pars.append((float(pp), float(vv)))
    order = sorted(range(len(pts)), key=lambda i: (pts[i].C, pts[i].Q, pts[i].E))
    return RegionBoundary(
        points=[pts[i] for i in order],
        params=[pars[i] for i in order],
        eta=eta,
        grid={"mode": "cqe", "grid_p": grid_p, "grid_nu": grid_nu},
    )


# ---------------------------------------------------------------------------
# scalar capacities

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_maximize(
    f,
    lo: float = 0.0,
    hi: float = 1.0,
    tol: float = 1e-10,
    newton_steps: int = 3,
    fd_step: float = 1e-6,
) -> tuple[float, float]:
    """Golden-section search followed by a few Newton polish steps on a
    centered finite-difference derivative.  Returns (argmax, max)."""
    a, b = float(lo), float(hi)
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd_ = f(c), f(d)
    while b - a > tol:
        if fc >= fd_:
            b, d, fd_ = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd_
            d = a + _INV_PHI * (b - a)
            fd_ = f(d)
    x = 0.5 * (a + b)
    for _ in range(newton_steps):
        h = fd_step
        if x - h < lo or x + h > hi:
            break
        f0, fp, fm = f(x), f(x + h), f(x - h)
        d1 = (fp - fm) / (2.0 * h)
        d2 = (fp - 2.0 * f0 + fm) / (h * h)
        if not (math.isfinite(d1) and math.isfinite(d2)) or d2 >= 0.0:
            break
        step = -d1 / d2
        # Function values are flat to machine precision near the maximum, so
        # trust small derivative-based steps instead of comparing values.
        if abs(step) > 1e-3:
            break
        x = min(max(x + step, lo), hi)
    return x, f(x)


def quantum_capacity(eta: float) -> tuple[float, float]:
    """(Q, argmax_p) of the single-letter coherent information; 0 below
    eta = 1/2 where the channel has no quantum capacity."""
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"eta must lie in [0, 1], got {eta!r}")
    if eta <= 0.5:
        return 0.0, 0.0
    f = lambda p: binary_entropy(eta * p) - binary_entropy((1.0 - eta) * p)
    p_star, val = golden_section_maximize(f)
    return max(val, 0.0), p_star


def classical_capacity_product(eta: float) -> tuple[float, float]:
    """(C, argmax_p) of the product-state classical capacity objective."""
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"eta must lie in [0, 1], got {eta!r}")
    f = lambda p: binary_entropy(eta * p) - damped_entropy(p, 1.0 - eta, 1.0)
    p_star, val = golden_section_maximize(f)
    return max(val, 0.0), p_star


def time_sharing_baseline(eta: float, samples: int) -> list[RatePointCQ]:
    """Chord between (0, Q_cap) and (C_prod, 0), sampled uniformly."""
    if not 0.5 < eta <= 1.0:
        raise DomainError(f"time sharing needs eta in (0.5, 1], got {eta!r}")
    if samples < 2:
        raise DomainError("samples must be >= 2")
    q_cap, _ = quantum_capacity(eta)
    c_prod, _ = classical_capacity_product(eta)
    out = []
    for i in range(samples):
        t = i / (samples - 1)
        out.append(RatePointCQ(C=t * c_prod, Q=(1.0 - t) * q_cap))
    return out


def dynamic_capacity_formula(eta: float, weights: LagrangeWeights, e: EnsembleTwoLetter) -> float:
    """Weighted rate objective (1+mu) H(B) + H(A|X) + lam H(B|X)
    - (1+mu+lam) H(E|X), evaluated through the closed-form conditional
    entropies of the two-letter ensemble."""
    lam, mu = weights.lam, weights.mu
    total = (1.0 + mu) * binary_entropy(eta * e.mean_q)
    for w, q, nu in ((e.p0, e.q0, e.nu0), (1.0 - e.p0, e.q1, e.nu1)):
        total += w * (
            damped_entropy(q, 1.0, nu)
            + lam * damped_entropy(q, eta, nu)
            - (1.0 + mu + lam) * damped_entropy(q, 1.0 - eta, nu)
        )
    return total


# ---------------------------------------------------------------------------
# refined envelopes (used by the compare command and the validation suites)


def _envelope_max(bounds_fn, queries, coarse: int = 257, starts: int = 6):
    """Maximize min(F1 - a, F2 - b) over (p, nu) in [0,1]^2 for each query
    (a, b), where bounds_fn(P, V) -> (F1, F2) is vectorized.

    The min of two smooth sheets has a kinked ridge, so a single local
    refinement can converge into the wrong basin; each query is refined from
    the best few well-separated coarse cells plus the previous query's
    optimizer (queries are typically a continuous sweep).  Deterministic.
    Returns (values, argmax) arrays.
    """
    s = np.linspace(0.0, 1.0, coarse)
    Pc, Vc = np.meshgrid(s, s, indexing="ij")
    F1c, F2c = bounds_fn(Pc, Vc)
    F1c, F2c = F1c.ravel(), F2c.ravel()
    Pf, Vf = Pc.ravel(), Vc.ravel()
    cell = 1.0 / (coarse - 1)

    def refine(p0, v0, a, b):
        best, bp, bv = -np.inf, p0, v0
        w = 2.0 * cell
        for _ in range(8):
            p = np.linspace(max(0.0, bp - w), min(1.0, bp + w), 17)
            v = np.linspace(max(0.0, bv - w), min(1.0, bv + w), 17)
            P, V = np.meshgrid(p, v, indexing="ij")
            f1, f2 = bounds_fn(P, V)
            vals = np.minimum(f1 - a, f2 - b)
            i = int(np.argmax(vals))
            if float(vals.ravel()[i]) > best:
                best = float(vals.ravel()[i])
                bp, bv = float(P.ravel()[i]), float(V.ravel()[i])
            w /= 4.0
        return best, bp, bv

    values = []
    argmax = []
    prev = None
    for a, b in queries:
        coarse_vals = np.minimum(F1c - a, F2c - b)
        k = min(starts * 4, coarse_vals.size)
        top = np.argpartition(coarse_vals, -k)[-k:]
        top = top[np.argsort(coarse_vals[top])[::-1]]
        seeds = []
        for i in top:
            p0, v0 = float(Pf[i]), float(Vf[i])
            if any(abs(p0 - sp) < 3 * cell and abs(v0 - sv) < 3 * cell for sp, sv in seeds):
                continue
            seeds.append((p0, v0))
            if len(seeds) >= starts:
                break
        if prev is not None:
            seeds.append(prev)
        best = (-np.inf, 0.0, 0.0)
        for p0, v0 in seeds:
            cand = refine(p0, v0, a, b)
            if cand[0] > best[0]:
                best = cand
        values.append(best[0])
        argmax.append((best[1], best[2]))
        prev = (best[1], best[2])
    return np.asarray(values), argmax


def _cq_bounds_fn(eta: float):
    def bounds(P, V):
        g_env = damped_entropy(P, 1.0 - eta, V)
        q_max = np.maximum(damped_entropy(P, eta, V) - g_env, 0.0)
        cq_sum = binary_entropy(eta * P) - g_env
        return q_max, cq_sum

    return bounds


def rate_envelope(eta: float, c_values, coarse: int = 257) -> np.ndarray:
    """Q_env(C) = max over (p, nu) of min(Q_max, CQ_sum - C), floored at 0."""
    if not 0.5 <= eta <= 1.0:
        raise DomainError("rate_envelope requires eta in [0.5, 1]")
    c_values = np.asarray(c_values, dtype=float)
    vals, _ = _envelope_max(
        _cq_bounds_fn(eta), [(0.0, c) for c in c_values], coarse=coarse
    )
    return np.maximum(vals, 0.0)


def entanglement_envelope(eta: float, e_values, coarse: int = 257) -> np.ndarray:
    """C_env(E) at Q = 0: max over (p, nu) of min(b1, b3 - E) for E <= 0."""
    if not 0.5 <= eta <= 1.0:
        raise DomainError("entanglement_envelope requires eta in [0.5, 1]")

    def bounds(P, V):
        g_env = damped_entropy(P, 1.0 - eta, V)
        h_out = binary_entropy(eta * P)
        return h_out + damped_entropy(P, 1.0, V) - g_env, h_out - g_env

    e_values = np.asarray(e_values, dtype=float)
    vals, _ = _envelope_max(bounds, [(0.0, ev) for ev in e_values], coarse=coarse)
    return np.maximum(vals, 0.0)


def ea_classical_anchor(eta: float) -> tuple[float, float, float]:
    """(C, E, argmax_p) of the maximal-C triple-region corner at Q = 0.

    Numerically the maximum sits on the nu = 0 line, where the corner reads
    (h2(eta p) + h2(p) - h2((1-eta) p), -h2(p)); a 1-D polish over p is
    enough after confirming the nu direction does not improve it.
    """
    f = lambda p: (
        binary_entropy(eta * p) + binary_entropy(p) - binary_entropy((1.0 - eta) * p)
    )
    p_star, c_star = golden_section_maximize(f)
    return c_star, -binary_entropy(p_star), p_star


def corner_domination_margin(
    eta: float,
    e: EnsembleTwoLetter,
    nu_steps: int = 4097,
    fallback_below: float = -1e-7,
) -> float:
    """How deep the two-letter corner sits inside the symmetric-ensemble
    region (negative = sticks out).

    Fast path searches the coherence knob at the ensemble's mean excitation;
    a positive grid margin there already witnesses domination.  The few
    corners that need a different excitation fall back to a refined
    two-dimensional search.
    """
    q_corner, s_corner = cq_polyhedron_general(eta, e)
    pbar = e.mean_q
    nu = np.linspace(0.0, 1.0, nu_steps)
    pcol = np.full_like(nu, pbar)
    g_env = damped_entropy(pcol, 1.0 - eta, nu)
    qm = np.maximum(damped_entropy(pcol, eta, nu) - g_env, 0.0)
    sm = binary_entropy(eta * pcol) - g_env
    best = float(np.max(np.minimum(qm - q_corner, sm - s_corner)))
    if best >= fallback_below:
        return best
    vals, _ = _envelope_max(
        _cq_bounds_fn(eta), [(q_corner, s_corner)], coarse=257, starts=4
    )
    return max(best, float(vals[0]))
