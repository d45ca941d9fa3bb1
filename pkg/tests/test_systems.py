import numpy as np
import pytest
import scipy.linalg

from rdmd import (ContaminationPlan, DivergenceError, DomainError, MalformedInputError,
                  OutlierWindow, SpikeModel, TimeSeries, contaminate, make_system, simulate)
from rdmd.systems import SYSTEMS, LinearSystem, window_mask


def test_linear_matches_expm():
    sys_ = make_system("linear2x2")
    s = simulate(sys_, dt=0.01, steps=300)
    E = scipy.linalg.expm(3.0 * sys_.matrix()) @ sys_.default_x0()
    np.testing.assert_allclose(s.states[:, -1], E, atol=1e-9)


def test_rk4_fourth_order():
    sys_ = make_system("oscillator")
    x0 = np.array([1.0, 0.5])
    exact = scipy.linalg.expm(2.0 * sys_.matrix()) @ x0
    errs = [np.linalg.norm(simulate(sys_, x0, 2.0 / n, n).states[:, -1] - exact)
            for n in (20, 40, 80)]
    for coarse, fine in zip(errs, errs[1:]):
        assert 14 < coarse / fine < 18


def test_ring_structure():
    ring = make_system("ring", s=6, d=0.05)
    assert ring.dim == 12
    L = 2 * np.eye(6) - np.roll(np.eye(6), 1, 1) - np.roll(np.eye(6), -1, 1)
    lam = np.linalg.eigvals(ring.matrix())
    np.testing.assert_allclose(lam.real, 0, atol=1e-10)
    expected = np.sqrt(np.linalg.eigvalsh(L) + 0.05)
    np.testing.assert_allclose(np.sort(lam.imag[lam.imag > 0]), np.sort(expected), atol=1e-10)
    assert ring.labels()[0] == "theta1" and ring.labels()[6] == "omega1"


def test_ring_velocity_damping_is_stable():
    lam = np.linalg.eigvals(make_system("ring", s=6, velocity_damping=True).matrix())
    assert np.all(lam.real <= 1e-12)


def test_ring_too_small():
    with pytest.raises(DomainError):
        make_system("ring", s=2)


def test_slow_manifold_invariant():
    sm = make_system("slow-manifold", mu=-0.05, lam=-1.0)
    c = sm.lam / (sm.lam - 2 * sm.mu)
    s = simulate(sm, [1.0, c], 0.01, 400)
    x1, x2 = s.states
    np.testing.assert_allclose(x2, c * x1 ** 2, atol=1e-10)
    np.testing.assert_allclose(x1, np.exp(sm.mu * s.times), atol=1e-10)


@pytest.mark.xfail(strict=True, reason="the invariant manifold is x2 = c x1^2 with c = 1/0.9, "
                                       "so x2 - x1^2 tends to 0.111 x1^2 (0.041 at t = 10)")
def test_slow_manifold_reaches_parabola():
    s = simulate(make_system("slow-manifold", mu=-0.05, lam=-1.0), [1.0, 2.0], 0.01, 1000)
    x1, x2 = s.states[:, -1]
    assert abs(x2 - x1 ** 2) <= 1e-3


@pytest.mark.parametrize("name", sorted(SYSTEMS))
def test_single_step_gives_two_samples(name):
    assert simulate(make_system(name), dt=0.01, steps=1).n_samples == 2


def test_vanderpol_limit_cycle():
    s = simulate(make_system("vanderpol"), dt=0.01, steps=4000)
    assert np.max(np.abs(s.states[0, -1000:])) == pytest.approx(2.0, abs=0.05)


def test_vanderpol_literal_has_no_restoring_term():
    vdp = make_system("vanderpol", literal=True)
    np.testing.assert_allclose(vdp.rhs(np.array([1.5, 0.0])), [0.0, 0.0])


def test_random_linear_margin():
    sys_ = make_system("random-linear", m=12, seed=3, margin=0.5)
    assert np.max(np.linalg.eigvals(sys_.matrix()).real) == pytest.approx(-0.5, abs=1e-10)
    again = make_system("random-linear", m=12, seed=3)
    np.testing.assert_array_equal(sys_.matrix(), again.matrix())
    assert not np.array_equal(sys_.matrix(), make_system("random-linear", m=12, seed=4).matrix())


def test_generalized_slow_manifold():
    g = make_system("generalized-slow-manifold", m=10, seed=1)
    assert np.all((g.mu <= -0.05) & (g.mu >= -0.5))
    s = simulate(g, dt=0.01, steps=100)
    np.testing.assert_allclose(s.states[:5, -1], g.default_x0()[:5] * np.exp(g.mu), rtol=1e-8)
    np.testing.assert_array_equal(g.mu, make_system("generalized-slow-manifold", m=10, seed=1).mu)
    x0 = make_system("generalized-slow-manifold", m=10, active=2).default_x0()
    np.testing.assert_allclose(x0, [0.5, 0.5] + [0.0] * 8)


@pytest.mark.parametrize("m", [1, 7])
def test_generalized_slow_manifold_odd(m):
    with pytest.raises(DomainError):
        make_system("generalized-slow-manifold", m=m)


def test_make_system_errors():
    with pytest.raises(DomainError, match="unknown system"):
        make_system("lorenz")
    with pytest.raises(DomainError):
        make_system("linear2x2", mu=1.0)
    with pytest.raises(DomainError):
        make_system("ring", sides=3)


@pytest.mark.parametrize("name", sorted(SYSTEMS))
def test_every_system_simulates(name):
    sys_ = make_system(name)
    s = simulate(sys_, dt=0.01, steps=5)
    assert s.states.shape == (sys_.dim, 6)
    assert len(s.labels) == sys_.dim


def test_simulate_errors():
    sys_ = make_system("linear2x2")
    with pytest.raises(DomainError):
        simulate(sys_, dt=0.0)
    with pytest.raises(DomainError):
        simulate(sys_, steps=0)
    with pytest.raises(MalformedInputError):
        simulate(sys_, x0=[1.0, 2.0, 3.0])
    with pytest.raises(MalformedInputError):
        LinearSystem(np.ones((2, 3)))


def test_divergence_reports_step():
    with pytest.raises(DivergenceError) as info:
        simulate(LinearSystem(np.array([[1e3]]), "blowup"), [1.0], dt=1.0, steps=500)
    assert info.value.step is not None and info.value.step < 500

# ---------------------------------------------------------- contamination


@pytest.fixture
def flat():
    return TimeSeries(np.zeros((2, 301)), 0.01)


def test_window_adds_to_inclusive_range(flat):
    out = contaminate(flat, ContaminationPlan(windows=[(1.0, 1.05, 0.3)]))
    hit = np.nonzero(out.states[0])[0]
    np.testing.assert_array_equal(hit, np.arange(100, 106))
    np.testing.assert_allclose(out.states[:, hit], 0.3)
    np.testing.assert_array_equal(window_mask(flat, 1.0, 1.05).nonzero()[0], hit)


def test_window_validation(flat):
    with pytest.raises(DomainError):
        contaminate(flat, ContaminationPlan(windows=[(2.0, 1.0, 0.3)]))
    with pytest.raises(DomainError):
        contaminate(flat, ContaminationPlan(windows=[(2.5, 3.5, 0.3)]))


@pytest.mark.parametrize("kw", [{"noise_kind": "pink", "noise_param": 1.0},
                                {"noise_kind": "laplace"}, {"gaussian_sigma": -1.0},
                                {"spike": SpikeModel(p=1.5)}])
def test_plan_validation(kw):
    with pytest.raises(DomainError):
        ContaminationPlan(**kw)


def test_plan_normalises_windows():
    plan = ContaminationPlan(windows=[(1, 2, 0.5)])
    assert plan.windows == (OutlierWindow(1, 2, 0.5),)
    assert plan.to_dict()["windows"] == [[1, 2, 0.5]]


def test_contamination_is_deterministic(flat):
    plan = ContaminationPlan(gaussian_sigma=0.1, noise_kind="cauchy", noise_param=2.0,
                             spike=SpikeModel(1.0, 0.05, 1e-4), seed=9)
    a, b = contaminate(flat, plan), contaminate(flat, plan)
    np.testing.assert_array_equal(a.states, b.states)
    c = contaminate(flat, ContaminationPlan(gaussian_sigma=0.1, seed=10))
    assert not np.array_equal(a.states, c.states)
    assert np.all(flat.states == 0)


def test_spike_count(flat):
    out = contaminate(flat, ContaminationPlan(spike=SpikeModel(1.0, 0.05, 0.0), seed=1))
    n = np.count_nonzero(out.states)
    # 602 entries at rate 0.05: mean 30.1, sd 5.3
    assert 10 <= n <= 50


def test_identity_plan_is_exact(flat):
    x = flat.states + np.random.default_rng(0).standard_normal(flat.states.shape)
    ts = TimeSeries(x, flat.dt)
    np.testing.assert_array_equal(contaminate(ts, ContaminationPlan(seed=3)).states, x)


def test_spike_count_over_seeds():
    base = TimeSeries(np.zeros((2, 201)), 0.01)
    counts = [np.count_nonzero(contaminate(base, ContaminationPlan(
        spike=SpikeModel(1.0, 0.05, 0.0), seed=seed)).states) for seed in range(100)]
    assert 8 <= min(counts) and max(counts) <= 36


@pytest.mark.parametrize("kind, param, check", [
    ("gaussian", 0.04, lambda x: np.var(x) == pytest.approx(0.04, rel=0.05)),
    ("laplace", 0.01, lambda x: np.var(x) == pytest.approx(0.01, rel=0.05)),
    ("cauchy", 2.0, lambda x: np.percentile(x, 75) == pytest.approx(2.0, rel=0.08)),
    ("student_t", 5.0, lambda x: np.var(x) == pytest.approx(5 / 3, rel=0.15)),
])
def test_noise_distributions(kind, param, check):
    base = TimeSeries(np.zeros((4, 5000)), 0.01)
    out = contaminate(base, ContaminationPlan(noise_kind=kind, noise_param=param, seed=2))
    assert check(out.states.ravel())
