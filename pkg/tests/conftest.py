import numpy as np
import pytest

from rindlercv.phase_space import SympTransform, symplectic_form, two_mode_squeezer


@pytest.fixture
def rng():
    return np.random.default_rng(20251209)


def single_mode_rotation(theta: float, mode: int, n_modes: int) -> SympTransform:
    out = np.eye(2 * n_modes)
    c, s = np.cos(theta), np.sin(theta)
    out[2 * mode:2 * mode + 2, 2 * mode:2 * mode + 2] = [[c, s], [-s, c]]
    return SympTransform(out)


def single_mode_squeeze(z: float, mode: int, n_modes: int) -> SympTransform:
    out = np.eye(2 * n_modes)
    out[2 * mode, 2 * mode] = np.exp(z)
    out[2 * mode + 1, 2 * mode + 1] = np.exp(-z)
    return SympTransform(out)


def random_symplectic(n_modes: int, rng: np.random.Generator, max_r: float = 3.0) -> SympTransform:
    """Random symplectic built from squeezers and rotations, total squeezing <= max_r."""
    mat = np.eye(2 * n_modes)
    budget = max_r
    for _ in range(rng.integers(2, 6)):
        kind = rng.integers(3)
        if kind == 0 and n_modes >= 2:
            i, j = rng.choice(n_modes, size=2, replace=False)
            r = rng.uniform(-budget, budget) / 2
            budget -= abs(r)
            step = two_mode_squeezer(r, int(i), int(j), n_modes)
        elif kind == 1:
            z = rng.uniform(-budget, budget) / 2
            budget -= abs(z)
            step = single_mode_squeeze(z, int(rng.integers(n_modes)), n_modes)
        else:
            step = single_mode_rotation(rng.uniform(0, 2 * np.pi), int(rng.integers(n_modes)), n_modes)
        mat = step.mat @ mat
    return SympTransform(mat)


def random_physical_cm(n_modes: int, rng: np.random.Generator):
    """Random bona fide covariance matrix S (diag nu) S^T with nu >= 1."""
    nus = rng.uniform(1.0, 3.0, size=n_modes)
    diag = np.diag(np.repeat(nus, 2))
    S = random_symplectic(n_modes, rng, max_r=1.5)
    return S.mat @ diag @ S.mat.T


def assert_symplectic(mat: np.ndarray, atol: float = 1e-10):
    n = mat.shape[0] // 2
    omega = symplectic_form(n)
    np.testing.assert_allclose(mat.T @ omega @ mat, omega, atol=atol)
