"""Data-driven compression: fit, spectrum recovery, prediction."""

import numpy as np
import pytest

from hardyliou import (
    IllConditionedError,
    InsufficientDataError,
    LowConfidenceWarning,
    TaylorPolynomial,
    Trajectory,
    integrate_ode,
    monomial,
    norm,
)
from hardyliou import dmd


def _affine_batch(n_radii=4, n_angles=5, dt=1e-3):
    f = TaylorPolynomial([0.1, 0.9])
    radii = np.linspace(0.075, 0.3, n_radii)
    out = []
    for r in radii:
        for k in range(n_angles):
            z0 = r * np.exp(2j * np.pi * k / n_angles)
            out.append(integrate_ode(f, z0, 1.0, dt))
    return out


@pytest.fixture(scope="module")
def affine_model():
    return dmd.fit(_affine_batch(dt=5e-3), order=48)


# ---------------------------------------------------------------------------
# fitting
# ---------------------------------------------------------------------------


def test_fit_requires_data():
    with pytest.raises(InsufficientDataError):
        dmd.fit([])
    with pytest.raises(TypeError):
        dmd.fit([np.zeros(4)])


def test_fit_single_trajectory_runs():
    traj = integrate_ode(monomial(1), 0.2, 1.0, 1e-2)
    model = dmd.fit([traj], order=24)
    assert model.n_trajectories == 1
    assert model.eigenvalues.shape == (1,)


def test_fit_eigenvalues_sorted(affine_model):
    keys = [(v.real, v.imag) for v in affine_model.eigenvalues]
    assert keys == sorted(keys)


def test_fit_modes_unit_normalized(affine_model):
    for mode, residual in zip(
        affine_model.modes, affine_model.mode_residuals
    ):
        # zero modes can stay unnormalized; all others have unit data norm
        if norm(mode) > 1e-12:
            assert norm(mode) == pytest.approx(1.0, abs=1e-10)
        assert residual >= 0.0


def test_fit_recovers_affine_spectrum(affine_model):
    ranked = np.argsort(affine_model.mode_residuals)
    leading = affine_model.eigenvalues[ranked[:3]]
    targets = np.array([0.0, 0.9, 1.8])
    for t in targets:
        assert np.min(np.abs(leading - t)) < 1e-2


def test_fit_gram_matches_basis(affine_model):
    S = affine_model.basis
    assert np.allclose(affine_model.gram, S.conj().T @ S)


def test_fit_ridge_zero_raises_for_degenerate_data():
    f = TaylorPolynomial([0.1, 0.9])
    near1 = integrate_ode(f, 0.2, 1.0, 1e-2)
    near2 = integrate_ode(f, 0.2 + 1e-9, 1.0, 1e-2)
    with pytest.raises(IllConditionedError):
        dmd.fit([near1, near2], order=24, ridge=0.0)


def test_fit_explicit_ridge_respected():
    traj = integrate_ode(monomial(1), 0.2, 1.0, 1e-2)
    model = dmd.fit([traj], order=16, ridge=1e-6)
    assert model.regularization == 1e-6


def test_fit_records_digests(affine_model):
    assert len(affine_model.trajectory_digests) == 20
    assert all(len(d) == 64 for d in affine_model.trajectory_digests)


# ---------------------------------------------------------------------------
# prediction
# ---------------------------------------------------------------------------


def test_predict_at_zero_is_subspace_reconstruction(affine_model):
    # at t=0 the forecast must equal the ridge-regularized projection of the
    # identity observable evaluated at z0, computed here independently
    model = affine_model
    z0 = 0.3
    S = model.basis
    n = model.order + 1
    powers = z0 ** np.arange(n)
    e1 = np.zeros(n, dtype=complex)
    e1[1] = 1.0
    G = S.conj().T @ S + model.regularization * np.eye(S.shape[1])
    oracle = powers @ (S @ np.linalg.solve(G, S.conj().T @ e1))
    got = dmd.predict(model, z0, 0.0)
    assert got == pytest.approx(complex(oracle), abs=1e-12)


def test_predict_tracks_affine_flow(affine_model):
    z0 = 0.3
    for t in np.arange(0.0, 1.01, 0.1):
        truth = (z0 + 1.0 / 9.0) * np.exp(0.9 * t) - 1.0 / 9.0
        got = dmd.predict(affine_model, z0, float(t))
        assert abs(got - truth) < 1e-3


def test_predict_warns_on_thin_data():
    traj = integrate_ode(monomial(1), 0.2, 1.0, 1e-2)
    model = dmd.fit([traj], order=24)
    assert model.identity_residual > 1e-2
    with pytest.warns(LowConfidenceWarning):
        dmd.predict(model, 0.2, 0.5)


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------


def test_model_json_deterministic(affine_model):
    a = affine_model.to_json()
    b = affine_model.to_json()
    assert a == b
    assert a.endswith("\n")
    import json

    payload = json.loads(a)
    assert payload["schema"] == 1
    assert payload["n_trajectories"] == 20
    assert len(payload["eigenvalues"]) == 20
    assert len(payload["trajectory_digests"]) == 20


# ---------------------------------------------------------------------------
# rank deficiency and convergence
# ---------------------------------------------------------------------------


def test_duplicated_trajectory_fit_is_stable():
    # exact duplicate makes the Gram singular; the ridge must absorb it
    # without disturbing the resolved part of the spectrum
    batch = _affine_batch(dt=5e-3)
    clean = dmd.fit(batch, order=48, ridge=1e-8)
    doubled = dmd.fit(batch + [batch[0]], order=48, ridge=1e-8)
    assert doubled.n_trajectories == len(batch) + 1

    gram = doubled.gram
    assert np.max(np.abs(gram - gram.conj().T)) == 0.0
    assert np.min(np.linalg.eigvalsh(gram)) > -1e-10

    resolved = np.argsort(clean.mode_residuals)[:2]
    for lam in np.array(clean.eigenvalues)[resolved]:
        nearest = min(abs(lam - mu) for mu in doubled.eigenvalues)
        assert nearest < 1e-6

    before = dmd.predict(clean, 0.25, 1.0)
    after = dmd.predict(doubled, 0.25, 1.0)
    assert abs(before - after) < 1e-3


def test_spectrum_sharpens_with_more_trajectories():
    targets = np.array([0.0, 0.9, 1.8])
    errs = []
    for n_radii in (1, 2, 4):
        model = dmd.fit(_affine_batch(n_radii=n_radii, dt=5e-3), order=48)
        ranked = np.argsort(model.mode_residuals)[:3]
        leading = np.array(model.eigenvalues)[ranked]
        errs.append(
            max(min(abs(lam - t) for lam in leading) for t in targets)
        )
    assert errs[0] < 1e-2
    assert all(a > b for a, b in zip(errs, errs[1:]))
    assert errs[-1] < 1e-6
