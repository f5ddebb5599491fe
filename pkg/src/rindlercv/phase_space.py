"""Dense phase-space linear algebra for zero-mean Gaussian states.

Conventions used throughout the package:

* quadrature ordering ``(x_1, p_1, x_2, p_2, ...)``,
* commutation relations ``[X_i, X_j] = 2i Omega_ij``, so the vacuum
  covariance matrix is the identity and physical states satisfy
  ``sigma + i Omega >= 0`` (all symplectic eigenvalues >= 1),
* everything dimensionless, no hbar anywhere.

All containers are immutable and every operation is a pure function, so the
module is safe to use from any number of threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

SYMMETRY_ATOL = 1e-12
SYMPLECTIC_ATOL = 1e-10
PAIRING_RTOL = 1e-8
BONA_FIDE_TOL = 1e-9
PURITY_TOL = 1e-6

ModeIndexSet = tuple[int, ...]


def symplectic_form(n_modes: int) -> np.ndarray:
    """Return the 2N x 2N symplectic form, a direct sum of [[0,1],[-1,0]] blocks."""
    if n_modes < 1:
        raise ValueError("n_modes must be >= 1")
    omega = np.zeros((2 * n_modes, 2 * n_modes))
    for k in range(n_modes):
        omega[2 * k, 2 * k + 1] = 1.0
        omega[2 * k + 1, 2 * k] = -1.0
    return omega


def check_mode_set(modes: Iterable[int], n_modes: int) -> ModeIndexSet:
    """Validate a set of mode indices: nonempty, distinct, inside [0, n_modes)."""
    out = tuple(int(m) for m in modes)
    if not out:
        raise ValueError("mode index set must be nonempty")
    if len(set(out)) != len(out):
        raise ValueError(f"mode indices must be distinct, got {out}")
    if any(m < 0 or m >= n_modes for m in out):
        raise ValueError(f"mode indices {out} out of range for {n_modes} modes")
    return tuple(sorted(out))


def _quad_indices(modes: Sequence[int]) -> np.ndarray:
    """Row/column indices of the quadratures belonging to the given modes."""
    return np.array([q for m in modes for q in (2 * m, 2 * m + 1)])


@dataclass(frozen=True)
class CovMatrix:
    """Covariance matrix of an N-mode zero-mean Gaussian state.

    The constructor enforces shape and symmetry (entries are symmetrized when
    the asymmetry is below ``SYMMETRY_ATOL`` and rejected otherwise).  It does
    *not* enforce the uncertainty relation: the same container also carries
    partially transposed matrices, whose symplectic spectrum may legitimately
    dip below one.  Use :func:`is_bona_fide` for the physicality check.
    """

    mat: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.mat, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"covariance matrix must be square, got shape {arr.shape}")
        if arr.shape[0] == 0 or arr.shape[0] % 2:
            raise ValueError(f"covariance matrix must be 2Nx2N with N >= 1, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("covariance matrix entries must be finite")
        asym = np.max(np.abs(arr - arr.T))
        if asym > SYMMETRY_ATOL * max(1.0, np.max(np.abs(arr))):
            raise ValueError(f"covariance matrix not symmetric (asymmetry {asym:.3e})")
        arr = 0.5 * (arr + arr.T)
        arr.setflags(write=False)
        object.__setattr__(self, "mat", arr)

    @property
    def n_modes(self) -> int:
        return self.mat.shape[0] // 2

    def block(self, i: int, j: int) -> np.ndarray:
        """The 2x2 block coupling quadratures of mode i with those of mode j."""
        return self.mat[2 * i:2 * i + 2, 2 * j:2 * j + 2]


@dataclass(frozen=True)
class SympTransform:
    """A real symplectic matrix, i.e. the phase-space image of a Gaussian unitary."""

    mat: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.mat, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] % 2 or arr.shape[0] == 0:
            raise ValueError(f"symplectic matrix must be 2Nx2N, got shape {arr.shape}")
        omega = symplectic_form(arr.shape[0] // 2)
        defect = np.max(np.abs(arr.T @ omega @ arr - omega))
        if defect > SYMPLECTIC_ATOL * max(1.0, np.max(np.abs(arr)) ** 2):
            raise ValueError(f"matrix does not preserve the symplectic form (defect {defect:.3e})")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "mat", arr)

    @property
    def n_modes(self) -> int:
        return self.mat.shape[0] // 2


MatrixLike = Union[CovMatrix, np.ndarray]


def _as_cov(sigma: MatrixLike) -> CovMatrix:
    return sigma if isinstance(sigma, CovMatrix) else CovMatrix(np.asarray(sigma, dtype=float))


def vacuum_cm(n_modes: int) -> CovMatrix:
    """Covariance matrix of the N-mode vacuum: the 2N x 2N identity."""
    if n_modes < 1:
        raise ValueError("n_modes must be >= 1")
    return CovMatrix(np.eye(2 * n_modes))


def two_mode_squeezer(r: float, i: int, j: int, n_modes: int) -> SympTransform:
    """Symplectic matrix of the two-mode squeezer with parameter r on modes (i, j).

    On the (i, j) subspace the transform is
    ``[[cosh r, 0, sinh r, 0], [0, cosh r, 0, -sinh r],
    [sinh r, 0, cosh r, 0], [0, -sinh r, 0, cosh r]]``
    and the identity everywhere else.
    """
    if i == j:
        raise ValueError("two-mode squeezer needs two distinct modes")
    check_mode_set((i, j), n_modes)
    c, s = np.cosh(r), np.sinh(r)
    out = np.eye(2 * n_modes)
    xi, pi, xj, pj = 2 * i, 2 * i + 1, 2 * j, 2 * j + 1
    out[xi, xi] = out[pi, pi] = out[xj, xj] = out[pj, pj] = c
    out[xi, xj] = out[xj, xi] = s
    out[pi, pj] = out[pj, pi] = -s
    return SympTransform(out)


def apply_congruence(S: SympTransform, sigma: MatrixLike) -> CovMatrix:
    """Act with a symplectic transform on a state by congruence: sigma -> S sigma S^T."""
    cov = _as_cov(sigma)
    if S.n_modes != cov.n_modes:
        raise ValueError(f"dimension mismatch: transform has {S.n_modes} modes, state has {cov.n_modes}")
    return CovMatrix(S.mat @ cov.mat @ S.mat.T)


def reduce(sigma: MatrixLike, keep: Iterable[int]) -> CovMatrix:
    """Reduced state of the kept modes (partial trace over the others)."""
    cov = _as_cov(sigma)
    modes = check_mode_set(keep, cov.n_modes)
    idx = _quad_indices(modes)
    return CovMatrix(cov.mat[np.ix_(idx, idx)])


def partial_transpose(sigma: MatrixLike, transposed: Iterable[int]) -> CovMatrix:
    """Partial transposition: momentum reversal (p -> -p) on the chosen modes."""
    cov = _as_cov(sigma)
    modes = check_mode_set(transposed, cov.n_modes)
    if len(modes) >= cov.n_modes:
        raise ValueError("cannot transpose every mode; pick a proper subset")
    flip = np.ones(2 * cov.n_modes)
    for m in modes:
        flip[2 * m + 1] = -1.0
    return CovMatrix(flip[:, None] * cov.mat * flip[None, :])


def symplectic_eigenvalues(sigma: MatrixLike) -> np.ndarray:
    """Symplectic spectrum of a symmetric matrix, ascending.

    The eigenvalues of ``Omega sigma`` come in pairs ``+/- i eta``; the
    moduli are sorted, grouped in consecutive pairs and each pair is
    required to agree to ``PAIRING_RTOL``.  For positive definite input
    (every covariance matrix and every partial transpose of one) the moduli
    are the singular values of the exactly antisymmetric ``L^T Omega L``
    with ``sigma = L L^T`` the Cholesky factor, since
    ``eig(Omega L L^T) = eig(L^T Omega L)``; this keeps absolute errors
    near machine precision even for strongly squeezed states.  Indefinite
    symmetric input falls back to a general complex eigensolver on
    ``Omega sigma``.  This numeric path is the oracle all closed-form
    spectra in the package are tested against.
    """
    cov = _as_cov(sigma)
    n = cov.n_modes
    omega = symplectic_form(n)
    try:
        chol = np.linalg.cholesky(cov.mat)
    except np.linalg.LinAlgError:
        mags = np.sort(np.abs(np.linalg.eigvals(omega @ cov.mat)))
    else:
        skew = chol.T @ omega @ chol
        skew = 0.5 * (skew - skew.T)
        mags = np.sort(np.linalg.svd(skew, compute_uv=False))
    scale = max(1.0, mags[-1])
    etas = np.empty(n)
    for k in range(n):
        lo, hi = mags[2 * k], mags[2 * k + 1]
        if hi - lo > PAIRING_RTOL * max(scale, hi):
            raise ValueError(f"could not pair symplectic eigenvalues: {lo!r} vs {hi!r}")
        etas[k] = 0.5 * (lo + hi)
    return etas


def is_bona_fide(sigma: MatrixLike, tol: float = BONA_FIDE_TOL) -> bool:
    """Whether sigma satisfies the uncertainty relation (min symplectic eigenvalue >= 1 - tol)."""
    return bool(symplectic_eigenvalues(sigma).min() >= 1.0 - tol)


def is_pure(sigma: MatrixLike, tol: float = PURITY_TOL) -> bool:
    """Whether sigma describes a pure state (every symplectic eigenvalue == 1 within tol)."""
    etas = symplectic_eigenvalues(sigma)
    return bool(np.max(np.abs(etas - 1.0)) <= tol)
