import numpy as np
import pytest
import scipy.linalg

from rdmd import (DomainError, MalformedInputError, exact_dmd, reconstruct, spectrum,
                  standard_dmd, to_continuous)
from rdmd.estimators import OperatorEstimate
from rdmd.modal import mode_amplitudes


def test_to_continuous_inverts_expm():
    theta = np.array([[-1.0, -3.0], [1.0, 1.0]])
    lam = np.linalg.eigvals(scipy.linalg.expm(0.01 * theta))
    np.testing.assert_allclose(np.sort_complex(to_continuous(lam, 0.01)),
                               np.sort_complex(np.linalg.eigvals(theta)), atol=1e-10)


def test_to_continuous_zero_and_negative():
    out = to_continuous([0.0, -1.0], 0.5)
    assert np.isneginf(out[0].real)
    assert out[1] == pytest.approx(complex(0.0, 2 * np.pi))


def test_spectrum_order_and_ties():
    A = np.diag([0.5, -0.9, 0.2])
    A[1:, 1:] = [[0.0, -0.9], [0.9, 0.0]]
    s = spectrum(OperatorEstimate("dmd", A), 1.0)
    np.testing.assert_allclose(s.eig_discrete, [0.9j, -0.9j, 0.5], atol=1e-15)
    for k in range(3):
        np.testing.assert_allclose(A @ s.modes[:, k], s.eig_discrete[k] * s.modes[:, k],
                                   atol=1e-12)


def test_spectrum_accepts_raw_matrix():
    s = spectrum(np.diag([2.0, 1.0]), 1.0)
    np.testing.assert_allclose(s.eig_continuous, np.log([2.0, 1.0]))


def test_spectrum_lifts_reduced_modes(linear_pair):
    est = standard_dmd(linear_pair, 2)
    s = spectrum(est, linear_pair.dt)
    Af = est.A_full
    for k in range(2):
        np.testing.assert_allclose(Af @ s.modes[:, k], s.eig_discrete[k] * s.modes[:, k],
                                   atol=1e-10)


@pytest.mark.parametrize("dt", [0.0, -1.0])
def test_spectrum_bad_dt(dt):
    with pytest.raises(DomainError):
        spectrum(np.eye(2), dt)


def test_spectrum_non_finite():
    with pytest.raises(DomainError):
        spectrum(np.array([[np.nan]]), 1.0)


def test_spectrum_to_dict_zero_eigenvalue():
    d = spectrum(np.diag([1.0, 0.0]), 1.0).to_dict()
    assert d["continuous"][1] is None
    assert d["discrete"][1] == {"re": 0.0, "im": 0.0}


def test_mode_amplitudes_rebuild_x0(linear_pair):
    s = spectrum(exact_dmd(linear_pair), linear_pair.dt)
    x0 = np.array([0.3, -1.2])
    np.testing.assert_allclose((s.modes @ mode_amplitudes(s, x0)).real, x0, atol=1e-12)


def test_free_run_on_clean_data(linear_clean, linear_pair):
    est = exact_dmd(linear_pair)
    r = reconstruct(est, linear_clean.states[:, 0], 500, truth=linear_clean)
    assert r.trajectory.shape == (2, 501)
    assert r.final_error < 1e-8
    assert np.all(np.diff(r.cumulative_error) >= 0)


def test_free_run_matches_matrix_power():
    A = np.array([[0.9, 0.1], [-0.2, 0.95]])
    r = reconstruct(OperatorEstimate("dmd", A), [1.0, 2.0], 7)
    np.testing.assert_allclose(r.trajectory[:, 7], np.linalg.matrix_power(A, 7) @ [1.0, 2.0])
    assert r.cumulative_error is None and np.isnan(r.final_error)


def test_one_step_uses_truth():
    A = np.array([[0.5, 0.0], [0.0, 2.0]])
    X = np.arange(10.0).reshape(2, 5)
    r = reconstruct(OperatorEstimate("dmd", A), X[:, 0], 4, mode="one_step", truth=X)
    np.testing.assert_allclose(r.trajectory[:, 1:], A @ X[:, :4])


def test_reduced_one_step_and_free_run_agree_for_one_step(linear_clean, linear_pair):
    est = standard_dmd(linear_pair, 2)
    x = linear_clean.states
    a = reconstruct(est, x[:, 0], 1, truth=linear_clean)
    b = reconstruct(est, x[:, 0], 1, mode="one_step", truth=linear_clean)
    np.testing.assert_allclose(a.trajectory, b.trajectory, atol=1e-14)


def test_to_timeseries(linear_pair):
    r = reconstruct(exact_dmd(linear_pair), [1.0, 0.0], 3)
    ts = r.to_timeseries(0.1, labels=["a", "b"])
    assert ts.n_samples == 4 and ts.labels == ("a", "b")


@pytest.mark.parametrize("kwargs, err", [
    ({"steps": 0}, DomainError),
    ({"mode": "teacher"}, DomainError),
    ({"mode": "one_step"}, DomainError),
    ({"x0": [1.0, 0.0, 0.0]}, MalformedInputError),
    ({"truth": np.ones((2, 3))}, DomainError),
    ({"truth": np.ones((3, 20))}, DomainError),
])
def test_reconstruct_errors(kwargs, err):
    args = {"x0": [1.0, 0.0], "steps": 5}
    args.update(kwargs)
    with pytest.raises(err):
        reconstruct(OperatorEstimate("dmd", np.eye(2)), **args)
