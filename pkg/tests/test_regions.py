import numpy as np
import pytest

from rwchannel.channel import ADChannel, build_cq_state
from rwchannel.errors import DomainError
from rwchannel.oracle import (
    coherent_information_a_bx,
    holevo_information_x_b,
    mutual_information_ax_b,
)
from rwchannel.regions import (
    EnsembleSymmetric,
    EnsembleTwoLetter,
    LagrangeWeights,
    classical_capacity_product,
    corner_domination_margin,
    cq_boundary,
    cq_boundary_general,
    cq_polyhedron,
    cq_polyhedron_general,
    cqe_corner_sweep,
    cqe_polyhedron,
    dynamic_capacity_formula,
    ea_classical_anchor,
    ensemble_states,
    entanglement_envelope,
    golden_section_maximize,
    quantum_capacity,
    rate_envelope,
    time_sharing_baseline,
)
from rwchannel.specfun import binary_entropy, damped_entropy

# frozen from a 1e6-point dense-grid scan with parabolic refinement
Q_CAP_075 = 0.4150374992788439
Q_CAP_075_ARGMAX = 0.4444444444
C_PROD_075 = 0.6836656303048905
C_PROD_075_ARGMAX = 0.4254967142
EA_ANCHOR_C_075 = 1.4121901764709759
EA_ANCHOR_E_075 = -0.999095746747021

Q_SUM_GOLDEN = 0.41086955972536856  # h2(0.375) - h2(0.125), direct arithmetic


def random_two_letter(rng) -> EnsembleTwoLetter:
    p0, q0, q1, nu0, nu1 = (float(v) for v in rng.uniform(size=5))
    return EnsembleTwoLetter(p0=p0, q0=q0, q1=q1, nu0=nu0, nu1=nu1)


def test_cq_polyhedron_noiseless():
    q_max, cq_sum = cq_polyhedron(1.0, EnsembleSymmetric(p=0.5, nu=0.0))
    assert q_max == pytest.approx(1.0, abs=1e-12)
    assert cq_sum == pytest.approx(1.0, abs=1e-12)


def test_cq_polyhedron_golden():
    q_max, _ = cq_polyhedron(0.75, EnsembleSymmetric(p=0.5, nu=0.0))
    assert q_max == pytest.approx(Q_SUM_GOLDEN, abs=1e-14)


def test_cq_polyhedron_vanishes_at_half():
    rng = np.random.default_rng(1)
    for _ in range(100):
        p, nu = (float(v) for v in rng.uniform(size=2))
        q_max, _ = cq_polyhedron(0.5, EnsembleSymmetric(p=p, nu=nu))
        assert q_max == 0.0


def test_cq_polyhedron_rejects_low_eta():
    with pytest.raises(DomainError):
        cq_polyhedron(0.4, EnsembleSymmetric(p=0.5, nu=0.5))
    with pytest.raises(DomainError):
        cqe_polyhedron(0.4, EnsembleSymmetric(p=0.5, nu=0.5))


def test_general_polyhedron_reduces_to_symmetric():
    rng = np.random.default_rng(2)
    for _ in range(100):
        p, nu = (float(v) for v in rng.uniform(size=2))
        eta = float(rng.uniform(0.5, 1.0))
        sym = cq_polyhedron(eta, EnsembleSymmetric(p=p, nu=nu))
        gen = cq_polyhedron_general(
            eta, EnsembleTwoLetter(p0=0.5, q0=p, q1=p, nu0=nu, nu1=nu)
        )
        assert gen[0] == pytest.approx(sym[0], abs=1e-12)
        assert gen[1] == pytest.approx(sym[1], abs=1e-12)


def test_general_polyhedron_single_letter():
    e = EnsembleTwoLetter(p0=1.0, q0=0.3, q1=0.9, nu0=0.2, nu1=0.7)
    got = cq_polyhedron_general(0.8, e)
    want = cq_polyhedron(0.8, EnsembleSymmetric(p=0.3, nu=0.2))
    assert got[0] == pytest.approx(want[0], abs=1e-12)
    assert got[1] == pytest.approx(want[1], abs=1e-12)


def test_cqe_polyhedron_noiseless():
    c2q, qe, cqe_sum = cqe_polyhedron(1.0, EnsembleSymmetric(p=0.5, nu=0.0))
    assert c2q == pytest.approx(2.0, abs=1e-12)
    assert qe == pytest.approx(1.0, abs=1e-12)
    assert cqe_sum == pytest.approx(1.0, abs=1e-12)


def test_cqe_zero_e_slice_is_cq_region():
    # with E = 0 the triple bounds must reproduce the two-rate bounds:
    # the (Q+E) bound equals Q_max, the (C+Q+E) bound equals CQ_sum, and the
    # (C+2Q) bound is implied by the other two
    rng = np.random.default_rng(3)
    for _ in range(200):
        p, nu = (float(v) for v in rng.uniform(size=2))
        eta = float(rng.uniform(0.5, 1.0))
        e = EnsembleSymmetric(p=p, nu=nu)
        q_max, cq_sum = cq_polyhedron(eta, e)
        c2q, qe, cqe_sum = cqe_polyhedron(eta, e)
        assert max(qe, 0.0) == pytest.approx(q_max, abs=1e-12)
        assert cqe_sum == pytest.approx(cq_sum, abs=1e-12)
        assert c2q >= qe + cqe_sum - 1e-12


def test_cqe_classical_corner_matches_product_capacity():
    c_prod, p_star = classical_capacity_product(0.75)
    _, _, cqe_sum = cqe_polyhedron(0.75, EnsembleSymmetric(p=p_star, nu=1.0))
    assert cqe_sum == pytest.approx(c_prod, abs=1e-12)


def test_cqe_polyhedron_oracle_cross_check():
    # the three bounds are the mutual information, the coherent information
    # and their Holevo-augmented sum of the explicit classical-quantum state
    e = EnsembleSymmetric(p=0.5, nu=1.0)
    c2q, qe, cqe_sum = cqe_polyhedron(0.75, e)
    state = build_cq_state(
        ADChannel(eta=0.75), ensemble_states(e), include_environment=True
    )
    assert c2q == pytest.approx(mutual_information_ax_b(state), abs=1e-9)
    assert qe == pytest.approx(coherent_information_a_bx(state), abs=1e-9)
    assert cqe_sum == pytest.approx(
        holevo_information_x_b(state) + coherent_information_a_bx(state), abs=1e-9
    )


def test_boundary_noiseless_is_simplex_line():
    b = cq_boundary(1.0, grid_p=129, grid_nu=129)
    assert b.points[0].C == pytest.approx(0.0, abs=1e-12)
    assert b.points[0].Q == pytest.approx(1.0, abs=1e-12)
    assert b.points[-1].C == pytest.approx(1.0, abs=1e-12)
    assert b.points[-1].Q == pytest.approx(0.0, abs=1e-12)
    for pt in b.points:
        assert pt.C + pt.Q == pytest.approx(1.0, abs=1e-9)


def test_boundary_pareto_sorted_and_self_consistent():
    b = cq_boundary(0.75, grid_p=65, grid_nu=65)
    cs = [pt.C for pt in b.points]
    qs = [pt.Q for pt in b.points]
    assert all(c2 > c1 for c1, c2 in zip(cs, cs[1:]))
    assert all(q2 <= q1 + 1e-12 for q1, q2 in zip(qs, qs[1:]))
    # every point satisfies its own generating polyhedron with corner equality
    for pt, (p, nu) in zip(b.points, b.params):
        q_max, cq_sum = cq_polyhedron(0.75, EnsembleSymmetric(p=p, nu=nu))
        assert pt.Q <= q_max + 1e-10
        assert pt.C + pt.Q <= cq_sum + 1e-10
        assert pt.Q == pytest.approx(q_max, abs=1e-10) or pt.Q == 0.0
        assert pt.C + pt.Q == pytest.approx(cq_sum, abs=1e-10)


def test_boundary_axis_intercepts_match_capacities():
    b = cq_boundary(0.75, grid_p=129, grid_nu=129)
    assert b.points[0].C == 0.0
    assert b.points[0].Q == pytest.approx(quantum_capacity(0.75)[0], abs=1e-10)
    assert b.points[-1].Q == 0.0
    assert b.points[-1].C == pytest.approx(classical_capacity_product(0.75)[0], abs=1e-10)


def test_boundary_degenerates_at_half():
    b = cq_boundary(0.5, grid_p=65, grid_nu=65)
    assert all(pt.Q == 0.0 for pt in b.points)
    assert max(pt.C for pt in b.points) == pytest.approx(
        classical_capacity_product(0.5)[0], abs=1e-10
    )


def test_boundary_monotone_in_eta():
    c_grid = np.linspace(0.0, 0.5, 21)
    env_low = rate_envelope(0.6, c_grid)
    env_high = rate_envelope(0.9, c_grid)
    assert np.all(env_high >= env_low - 1e-9)


def test_general_boundary_low_eta_floors_quantum_rate():
    b = cq_boundary_general(0.4, grid=9)
    assert all(pt.Q == 0.0 for pt in b.points)


def test_quantum_capacity_endpoints():
    q, p = quantum_capacity(1.0)
    assert q == pytest.approx(1.0, abs=1e-10)
    assert p == pytest.approx(0.5, abs=1e-8)
    assert quantum_capacity(0.5)[0] == 0.0
    assert quantum_capacity(0.3)[0] == 0.0


def test_quantum_capacity_golden():
    q, p = quantum_capacity(0.75)
    assert q == pytest.approx(Q_CAP_075, abs=1e-8)
    assert p == pytest.approx(Q_CAP_075_ARGMAX, abs=1e-6)


def test_classical_capacity_endpoints():
    c, p = classical_capacity_product(1.0)
    assert c == pytest.approx(1.0, abs=1e-10)
    assert p == pytest.approx(0.5, abs=1e-8)
    assert classical_capacity_product(0.0)[0] == 0.0


def test_classical_capacity_golden():
    c, p = classical_capacity_product(0.75)
    assert c == pytest.approx(C_PROD_075, abs=1e-8)
    assert p == pytest.approx(C_PROD_075_ARGMAX, abs=1e-6)


def test_golden_section_argmax_scale_invariant():
    f = lambda x: binary_entropy(0.75 * x) - binary_entropy(0.25 * x)
    x1, _ = golden_section_maximize(f)
    x2, _ = golden_section_maximize(lambda x: 2.0 * f(x))
    assert x1 == pytest.approx(x2, abs=1e-9)


def test_time_sharing_endpoints_and_midpoint():
    pts = time_sharing_baseline(0.75, 3)
    q_cap, _ = quantum_capacity(0.75)
    c_prod, _ = classical_capacity_product(0.75)
    assert pts[0].C == 0.0 and pts[0].Q == pytest.approx(q_cap, abs=1e-12)
    assert pts[-1].Q == 0.0 and pts[-1].C == pytest.approx(c_prod, abs=1e-12)
    mid = pts[1]
    env = rate_envelope(0.75, [mid.C])[0]
    assert env > mid.Q + 1e-3  # strictly above the chord in the interior
    with pytest.raises(DomainError):
        time_sharing_baseline(0.5, 5)


def test_dynamic_capacity_formula_noiseless_reduction():
    # lam = mu = 0 at eta = 1 reduces to H(B) + H(A|X) with no environment term
    e = EnsembleTwoLetter(p0=0.5, q0=0.3, q1=0.3, nu0=0.6, nu1=0.6)
    got = dynamic_capacity_formula(1.0, LagrangeWeights(0.0, 0.0), e)
    want = binary_entropy(0.3) + damped_entropy(0.3, 1.0, 0.6)
    assert got == pytest.approx(want, abs=1e-12)


def test_dynamic_capacity_formula_oracle_identity():
    rng = np.random.default_rng(5)
    for _ in range(20):
        e = random_two_letter(rng)
        eta = float(rng.uniform(0.5, 1.0))
        lam, mu = (float(v) for v in rng.uniform(0.0, 3.0, size=2))
        state = build_cq_state(
            ADChannel(eta=eta), ensemble_states(e), include_environment=True
        )
        want = (
            mutual_information_ax_b(state)
            + lam * coherent_information_a_bx(state)
            + mu * (holevo_information_x_b(state) + coherent_information_a_bx(state))
        )
        got = dynamic_capacity_formula(eta, LagrangeWeights(lam, mu), e)
        assert got == pytest.approx(want, abs=1e-9)


def test_dynamic_capacity_argmax_nu_shrinks_with_lambda():
    # as the quantum weight grows the best symmetric ensemble approaches the
    # diagonal (nu = 0) form
    eta = 0.75
    P, V = np.meshgrid(np.linspace(0.01, 0.99, 99), np.linspace(0.0, 1.0, 201), indexing="ij")
    best_nu = []
    for lam in (1.0, 10.0, 100.0):
        vals = (
            binary_entropy(eta * P)
            + damped_entropy(P, 1.0, V)
            + lam * damped_entropy(P, eta, V)
            - (1.0 + lam) * damped_entropy(P, 1.0 - eta, V)
        )
        i = np.unravel_index(np.argmax(vals), vals.shape)
        # spot-check the vectorized objective against the scalar formula
        e = EnsembleTwoLetter(p0=0.5, q0=P[i], q1=P[i], nu0=V[i], nu1=V[i])
        assert dynamic_capacity_formula(eta, LagrangeWeights(lam, 0.0), e) == pytest.approx(
            float(vals[i]), abs=1e-12
        )
        best_nu.append(float(V[i]))
    assert best_nu[0] >= best_nu[1] >= best_nu[2]
    assert best_nu[2] <= 0.05


def test_two_letter_corners_inside_symmetric_envelope():
    rng = np.random.default_rng(7)
    for eta in (0.6, 0.75, 0.9):
        for _ in range(200):
            margin = corner_domination_margin(eta, random_two_letter(rng))
            assert margin >= -1e-6


def test_ea_anchor_golden():
    c, e, _ = ea_classical_anchor(0.75)
    assert c == pytest.approx(EA_ANCHOR_C_075, abs=1e-8)
    assert e == pytest.approx(EA_ANCHOR_E_075, abs=1e-7)


def test_entanglement_envelope_endpoints():
    c_prod, _ = classical_capacity_product(0.75)
    c_ea, e_ea, _ = ea_classical_anchor(0.75)
    env = entanglement_envelope(0.75, [e_ea, 0.0])
    assert env[0] == pytest.approx(c_ea, abs=1e-7)
    assert env[1] == pytest.approx(c_prod, abs=1e-9)


def test_cqe_sweep_points_satisfy_their_polyhedra():
    sweep = cqe_corner_sweep(0.75, grid_p=33, grid_nu=33)
    for pt, (p, nu) in zip(sweep.points[:500], sweep.params[:500]):
        c2q, qe, cqe_sum = cqe_polyhedron(0.75, EnsembleSymmetric(p=p, nu=nu))
        assert pt.C + 2.0 * pt.Q <= c2q + 1e-9
        assert pt.Q + pt.E <= qe + 1e-9
        assert pt.C + pt.Q + pt.E <= cqe_sum + 1e-9
