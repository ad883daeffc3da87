import math

import numpy as np
import pytest

import oracles as orc
from krylovflow import (
    AlgebraSpec,
    Deformation,
    DomainError,
    Family,
    InvalidParameter,
    SpectralMeasure,
    alternating_couplings,
    deform,
    evolve,
    evolve_grid,
    exact_coefficients,
    exact_complexity,
    flow,
    spread_complexity,
    stieltjes_lanczos,
    two_level_exact,
)

# modest parameter scales keep the finite-difference truncation error of the
# flow-equation residual check well below the 1e-9 target
FAMILY_SPECS = [
    AlgebraSpec(Family.SU2, gamma0=0.5, theta0=1.1, delta=0.3, d=16),
    AlgebraSpec(Family.HEISENBERG_WEYL, gamma0=0.4, alpha0=0.5, delta=-0.2, cutoff=64),
    AlgebraSpec(Family.SL2R_STABLE, gamma0=0.3, theta0=0.6, h=0.7, delta=0.1, cutoff=64),
    AlgebraSpec(Family.SL2R_UNSTABLE, gamma0=0.3, theta0=0.5, h=1.2, cutoff=64),
    AlgebraSpec(Family.SL2R_MARGINAL, gamma0=0.4, h=0.9, cutoff=64),
    AlgebraSpec(Family.ALTERNATING, alpha0=0.6, gamma0=0.35, cutoff=64),
    AlgebraSpec(Family.ALTERNATING_MARGINAL, alpha0=0.55, cutoff=64),
]

FIRST_FLOW = {Family.SU2, Family.HEISENBERG_WEYL, Family.SL2R_STABLE,
              Family.SL2R_UNSTABLE, Family.SL2R_MARGINAL}


def tau_at(spec, s):
    if spec.family in FIRST_FLOW:
        return Deformation(s, 0.0)
    return Deformation(0.0, s)


def test_coefficients_satisfy_flow_equations():
    h = 1e-5
    for spec in FAMILY_SPECS:
        for s in (0.0, 0.3, 0.7):
            plus = exact_coefficients(spec, tau_at(spec, s + h))
            minus = exact_coefficients(spec, tau_at(spec, s - h))
            da = (plus.a - minus.a) / (2 * h)
            db = (plus.b - minus.b) / (2 * h)
            here = exact_coefficients(spec, tau_at(spec, s))
            da1, db1, da2, db2 = orc.toda_rhs_loops(here.a, here.b)
            ref_a, ref_b = (da1, db1) if spec.family in FIRST_FLOW else (da2, db2)
            if spec.family is Family.SU2:
                sl_a, sl_b = slice(None), slice(None)
            else:
                # a truncated infinite chain misses the boundary coupling, so
                # the last rows of the equations do not apply
                sl_a, sl_b = slice(0, -1), slice(0, -1)
            assert np.max(np.abs(da[sl_a] - ref_a[sl_a])) <= 1e-9, spec.family
            assert np.max(np.abs(db[sl_b] - ref_b[sl_b])) <= 1e-9, spec.family


def test_flow_from_initial_coefficients_tracks_closed_form():
    for spec, s_max in [
        (AlgebraSpec(Family.SU2, gamma0=0.7, theta0=1.1, delta=0.3, d=16), 0.8),
        (AlgebraSpec(Family.HEISENBERG_WEYL, gamma0=0.6, alpha0=0.8, cutoff=96), 0.5),
        (AlgebraSpec(Family.SL2R_STABLE, gamma0=0.6, theta0=0.9, h=0.8, cutoff=96), 0.5),
        (AlgebraSpec(Family.ALTERNATING, alpha0=0.8, gamma0=0.5, cutoff=96), 0.5),
    ]:
        t0 = exact_coefficients(spec, tau_at(spec, 0.0))
        waypoints = [tau_at(spec, s) for s in np.linspace(0.0, s_max, 5)]
        res = flow(t0, waypoints, rtol=1e-11, atol=1e-13)
        assert res.success
        keep = spec.chain_length() if spec.family is Family.SU2 else spec.chain_length() // 2
        for tau, t_num in res.trajectory:
            t_ref = exact_coefficients(spec, tau)
            assert np.max(np.abs(t_num.a[:keep] - t_ref.a[:keep])) <= 1e-7
            assert np.max(np.abs(t_num.b[:keep - 1] - t_ref.b[:keep - 1])) <= 1e-7


def test_initial_coefficients_match_ansatz():
    spec = AlgebraSpec(Family.SU2, gamma0=0.8, theta0=0.9, delta=0.2, d=10)
    t0 = exact_coefficients(spec, Deformation(0.0, 0.0))
    n = np.arange(10)
    np.testing.assert_allclose(
        t0.a, 2 * 0.8 * math.cos(0.9) * (n - 4.5) + 0.2, atol=1e-14)
    nb = np.arange(1, 10)
    np.testing.assert_allclose(
        t0.b, 0.8 * math.sin(0.9) * np.sqrt(nb * (10 - nb)), rtol=1e-14)

    spec = AlgebraSpec(Family.HEISENBERG_WEYL, gamma0=0.7, alpha0=0.9, delta=0.1, cutoff=64)
    t0 = exact_coefficients(spec, Deformation(0.0, 0.0))
    np.testing.assert_allclose(t0.a, 2 * 0.7 * np.arange(64) + 0.1, atol=1e-14)
    np.testing.assert_allclose(t0.b, 0.9 * np.sqrt(np.arange(1, 64)), rtol=1e-14)

    spec = AlgebraSpec(Family.SL2R_STABLE, gamma0=0.6, theta0=0.8, h=0.9, cutoff=64)
    t0 = exact_coefficients(spec, Deformation(0.0, 0.0))
    nb = np.arange(1, 64)
    np.testing.assert_allclose(
        t0.a, 2 * 0.6 * math.cosh(0.8) * (np.arange(64) + 0.9), atol=1e-13)
    np.testing.assert_allclose(
        t0.b, 0.6 * math.sinh(0.8) * np.sqrt(nb * (nb + 0.8)), rtol=1e-14)


def test_su2_diagonalizes_at_large_parameter():
    spec = AlgebraSpec(Family.SU2, gamma0=1.0, theta0=2.0, delta=-0.4, d=12)
    t_inf = exact_coefficients(spec, Deformation(30.0, 0.0))
    n = np.arange(12)
    np.testing.assert_allclose(t_inf.a, 2.0 * (n - 5.5) - 0.4, atol=1e-10)
    assert np.max(t_inf.b) <= 1e-10


def test_heisenberg_weyl_displayed_solution():
    g0, a0, d0 = 0.7, 1.1, 0.4
    spec = AlgebraSpec(Family.HEISENBERG_WEYL, gamma0=g0, alpha0=a0, delta=d0, cutoff=64)
    for s in (0.0, 0.5, 2.0):
        t_op = exact_coefficients(spec, Deformation(s, 0.0))
        alpha = a0 * math.exp(-g0 * s)
        delta = d0 - (a0**2 / (2 * g0)) * (1 - math.exp(-2 * g0 * s))
        assert t_op.b[0] == pytest.approx(alpha, rel=1e-14)
        assert t_op.a[0] == pytest.approx(delta, rel=1e-12)


def test_su2_conserved_combination():
    spec = AlgebraSpec(Family.SU2, gamma0=0.9, theta0=1.3, d=20)
    vals = []
    for s in np.linspace(0.0, 2.0, 9):
        t_op = exact_coefficients(spec, Deformation(s, 0.0))
        alpha = t_op.b[0] / math.sqrt(19)
        gamma = (t_op.a[1] - t_op.a[0]) / 2
        vals.append(alpha**2 + gamma**2)
    assert np.ptp(vals) <= 1e-10


def test_sl2r_conserved_combination():
    spec = AlgebraSpec(Family.SL2R_STABLE, gamma0=0.8, theta0=1.0, h=0.6, cutoff=64)
    vals = []
    for s in np.linspace(0.0, 2.0, 9):
        t_op = exact_coefficients(spec, Deformation(s, 0.0))
        alpha = t_op.b[0] / math.sqrt(2 * 0.6)
        gamma = (t_op.a[1] - t_op.a[0]) / 2
        vals.append(alpha**2 - gamma**2)
    assert np.ptp(vals) <= 1e-10


def test_alternating_conserves_coupling_difference():
    a0, g0 = 0.9, 0.5
    ref = a0**2 - g0**2
    for tau2 in np.linspace(0.0, 3.0, 7):
        a2, g2 = alternating_couplings(a0, g0, tau2)
        assert a2 - g2 == pytest.approx(ref, abs=1e-10)
    # opposite ordering flows toward the other branch but keeps the invariant
    for tau2 in np.linspace(0.0, 3.0, 7):
        a2, g2 = alternating_couplings(g0, a0, tau2)
        assert a2 - g2 == pytest.approx(-ref, abs=1e-10)


def test_marginal_complexity_formula():
    spec = AlgebraSpec(Family.SL2R_MARGINAL, gamma0=1.4, h=0.8, cutoff=64)
    for s in (0.0, 1.0, 5.0):
        for t in (0.0, 0.7, 3.0):
            ref = 2 * 0.8 * (1.4 * t / (2 + 1.4 * s)) ** 2
            assert exact_complexity(spec, Deformation(s, 0.0), t) == pytest.approx(ref, abs=1e-14)


def test_alternating_marginal_complexity_formula():
    spec = AlgebraSpec(Family.ALTERNATING_MARGINAL, alpha0=0.9, cutoff=64)
    for s in (0.0, 0.8, 4.0):
        for t in (0.0, 1.3):
            ref = 0.9**2 * t**2 / (1 + 2 * 0.9**2 * s)
            assert exact_complexity(spec, Deformation(0.0, s), t) == pytest.approx(ref, abs=1e-13)


def test_unstable_complexity_nonmonotonic():
    spec = AlgebraSpec(Family.SL2R_UNSTABLE, gamma0=1.0, theta0=0.5, h=1.0, cutoff=64)
    lo, hi = spec.validity_window()
    taus = np.linspace(0.0, hi - 0.05, 40)
    k = np.array([exact_complexity(spec, Deformation(s, 0.0), 1.0) for s in taus])
    dk = np.diff(k)
    assert dk[0] < 0  # shrinking first
    assert dk[-1] > 0  # then growing again
    i_min = np.argmin(k)
    assert 0 < i_min < len(k) - 1


def test_numeric_complexity_matches_closed_form():
    # one spot check per family with a closed form; the time sweep lives in
    # the acceptance suite
    cases = [
        AlgebraSpec(Family.SU2, gamma0=1.0, theta0=1.2, d=32),
        AlgebraSpec(Family.HEISENBERG_WEYL, gamma0=1.0, alpha0=1.0, cutoff=256),
        AlgebraSpec(Family.SL2R_STABLE, gamma0=1.0, theta0=0.8, h=0.75, cutoff=256),
        AlgebraSpec(Family.SL2R_MARGINAL, gamma0=1.0, h=0.6, cutoff=256),
        AlgebraSpec(Family.ALTERNATING_MARGINAL, alpha0=0.8, cutoff=256),
    ]
    for spec in cases:
        tau = tau_at(spec, 0.4)
        t_op = exact_coefficients(spec, tau)
        for t in (0.9, 3.7):
            k_num = spread_complexity(evolve(t_op, t))
            assert k_num == pytest.approx(exact_complexity(spec, tau, t), abs=1e-7)


def test_truncation_leakage_is_negligible():
    spec = AlgebraSpec(Family.HEISENBERG_WEYL, gamma0=1.0, alpha0=1.0, cutoff=256)
    t_op = exact_coefficients(spec, Deformation(0.0, 0.0))
    grid = evolve_grid(t_op, np.linspace(0.0, 10.0, 41))
    tail = np.abs(grid[:, 256 - 8:])
    assert tail.max() < 1e-12


def test_domain_errors_past_validity():
    unstable = AlgebraSpec(Family.SL2R_UNSTABLE, gamma0=1.0, theta0=0.5, h=1.0, cutoff=64)
    pole = unstable.tau1_pole()
    assert pole == pytest.approx((math.pi / 2 + math.atan(math.sinh(0.5))), rel=1e-14)
    with pytest.raises(DomainError):
        exact_coefficients(unstable, Deformation(pole + 0.01, 0.0))
    marginal = AlgebraSpec(Family.SL2R_MARGINAL, gamma0=1.0, h=1.0, cutoff=64)
    with pytest.raises(DomainError):
        exact_coefficients(marginal, Deformation(-2.0, 0.0))
    stable = AlgebraSpec(Family.SL2R_STABLE, gamma0=1.0, theta0=0.7, h=1.0, cutoff=64)
    lo, _ = stable.validity_window()
    with pytest.raises(DomainError):
        exact_coefficients(stable, Deformation(lo - 0.01, 0.0))
    alt = AlgebraSpec(Family.ALTERNATING_MARGINAL, alpha0=1.0, cutoff=64)
    with pytest.raises(DomainError):
        exact_coefficients(alt, Deformation(0.0, -0.5))
    with pytest.raises(DomainError):
        alternating_couplings(1.0, 1.0, -0.5)


def test_wrong_flow_component_rejected():
    su2 = AlgebraSpec(Family.SU2, gamma0=1.0, theta0=1.0, d=8)
    with pytest.raises(DomainError):
        exact_coefficients(su2, Deformation(0.1, 0.1))
    alt = AlgebraSpec(Family.ALTERNATING, alpha0=0.8, gamma0=0.5, cutoff=64)
    with pytest.raises(DomainError):
        exact_coefficients(alt, Deformation(0.1, 0.0))


def test_alternating_has_no_closed_form_complexity():
    alt = AlgebraSpec(Family.ALTERNATING, alpha0=0.8, gamma0=0.5, cutoff=64)
    with pytest.raises(DomainError):
        exact_complexity(alt, Deformation(0.0, 0.2), 1.0)


def test_spec_validation():
    with pytest.raises(InvalidParameter):
        AlgebraSpec(Family.SU2, gamma0=1.0, theta0=1.0, d=1)
    with pytest.raises(InvalidParameter):
        AlgebraSpec(Family.SU2, gamma0=1.0, theta0=4.0, d=8)
    with pytest.raises(InvalidParameter):
        AlgebraSpec(Family.SL2R_STABLE, gamma0=1.0, theta0=0.5, h=-1.0, cutoff=64)
    with pytest.raises(InvalidParameter):
        AlgebraSpec(Family.HEISENBERG_WEYL, gamma0=1.0, alpha0=1.0, cutoff=32)
    with pytest.raises(InvalidParameter):
        AlgebraSpec(Family.ALTERNATING, alpha0=1.0, gamma0=1.0, cutoff=64)


def test_two_level_equal_weights():
    ts = np.linspace(0.0, 6.0, 13)
    out = two_level_exact(-0.5, 0.5, Deformation(0.0, 0.0), ts)
    np.testing.assert_allclose(out.K, np.sin(0.5 * ts) ** 2, atol=1e-15)
    assert out.Kbar == pytest.approx(0.5, abs=1e-15)
    assert out.b1 == pytest.approx(0.5, abs=1e-15)
    assert out.a0 == pytest.approx(0.0, abs=1e-15)


def test_two_level_time_average_formula():
    for e0, e1, tau in [(-0.3, 0.9, Deformation(0.7, 0.0)),
                        (0.1, 1.4, Deformation(0.2, 0.3)),
                        (-1.0, 1.0, Deformation(0.0, 0.8))]:
        df = (tau.tau1 * e1 + tau.tau2 * e1**2) - (tau.tau1 * e0 + tau.tau2 * e0**2)
        ref = 2 * math.exp(-df) / (1 + math.exp(-df)) ** 2
        out = two_level_exact(e0, e1, tau, 0.0)
        assert out.Kbar == pytest.approx(ref, rel=1e-13)
        assert out.K == pytest.approx(0.0, abs=1e-15)


def test_two_level_matches_numeric_pipeline():
    e0, e1 = -0.4, 1.1
    m = SpectralMeasure.from_points([e0, e1], [np.log(0.5)] * 2)
    for tau in (Deformation(0.0, 0.0), Deformation(1.3, 0.0), Deformation(0.4, -0.2)):
        t_op = stieltjes_lanczos(deform(m, tau))
        ref = two_level_exact(e0, e1, tau, 0.0)
        assert t_op.a[0] == pytest.approx(ref.a0, abs=1e-13)
        assert t_op.a[1] == pytest.approx(ref.a1, abs=1e-13)
        assert t_op.b[0] == pytest.approx(ref.b1, abs=1e-13)
        for t in (0.6, 2.3):
            k_num = spread_complexity(evolve(t_op, t))
            k_ref = float(two_level_exact(e0, e1, tau, t).K)
            assert k_num == pytest.approx(k_ref, abs=1e-12)
