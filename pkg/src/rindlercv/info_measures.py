"""Scalar information quantities on covariance matrices.

Entanglement is quantified by the contangle ``tau = g[m^2]`` with
``g[x] = arcsinh^2 sqrt(x - 1)``; total correlations by the mutual
information built from the entropy kernel ``f``.  All entropic quantities
use the natural logarithm (this convention is pinned by the acceptance
suite: the classical-correlation deficit between one and two accelerated
observers saturates at exactly 1 only in base e).

Mixed-state contangles are evaluated only for the two families that occur
in this package, for which closed forms exist:

* states saturating the uncertainty relation (minimum symplectic
  eigenvalue 1; Gaussian maximally entangled mixed states at fixed
  marginals, "GMEMMS"), where ``m = (a + b) / (2 + |a - b|)`` in terms of
  the marginal determinant roots ``a, b``;
* nonsymmetric thermal squeezed states, recovered by inverting the
  covariance invariants to the three squeezing parameters that generate
  the family and evaluating the closed form there.

The general Gaussian convex roof is intentionally not implemented.

Note that the contangle and the logarithmic negativity can order
nonsymmetric mixed two-mode states differently; the two are complementary
quantifiers here, not interchangeable ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from .phase_space import (
    BONA_FIDE_TOL,
    CovMatrix,
    MatrixLike,
    PURITY_TOL,
    _as_cov,
    check_mode_set,
    is_pure,
    partial_transpose,
    reduce,
    symplectic_eigenvalues,
)

M_CLAMP_TOL = 1e-9
GMEMMS_SPECTRUM_TOL = 1e-6
FAMILY_RTOL = 1e-6


class InconsistencyError(ValueError):
    """A closed form and a covariance-matrix route disagree beyond tolerance.

    Raised e.g. when an m-parameter lands below 1 - 1e-9, which signals an
    upstream inconsistency rather than a merely separable state.
    """


def contangle_from_m(m: float) -> float:
    """Contangle g[m^2] = arcsinh^2 sqrt(m^2 - 1) of a state with parameter m.

    Values in [1 - 1e-9, 1) are clamped to 1 (separable); smaller values raise
    :class:`InconsistencyError`.
    """
    if m < 1.0 - M_CLAMP_TOL:
        raise InconsistencyError(f"m-parameter {m!r} below the separability floor")
    if m <= 1.0:
        return 0.0
    return math.asinh(math.sqrt((m - 1.0) * (m + 1.0))) ** 2


def entropy_term_f(x: float) -> float:
    """Entropy kernel f(x) = (x+1)/2 ln((x+1)/2) - (x-1)/2 ln((x-1)/2).

    Evaluated in the cancellation-free form
    ``ln((x+1)/2) + (x-1)/2 * log1p(2/(x-1))`` so that differences of large
    arguments (squeezing ~ 20 and beyond) stay accurate.
    """
    if x < 1.0 - M_CLAMP_TOL:
        raise ValueError(f"entropy kernel needs x >= 1, got {x!r}")
    if x <= 1.0:
        return 0.0
    return math.log(0.5 * (x + 1.0)) + 0.5 * (x - 1.0) * math.log1p(2.0 / (x - 1.0))


def von_neumann_entropy(sigma: MatrixLike) -> float:
    """Von Neumann entropy of a Gaussian state: sum of f over the symplectic spectrum."""
    return float(sum(entropy_term_f(eta) for eta in _clamped_spectrum(sigma)))


def _clamped_spectrum(sigma: MatrixLike) -> np.ndarray:
    # eigenvalues near 1 are resolved only to ~eps * |sigma|, so the
    # physicality gate scales with the largest eigenvalue
    etas = symplectic_eigenvalues(sigma)
    slack = max(100 * BONA_FIDE_TOL, 32 * np.finfo(float).eps * etas.max())
    if etas.min() < 1.0 - slack:
        raise ValueError(f"state is not physical (min symplectic eigenvalue {etas.min()!r})")
    return np.maximum(etas, 1.0)


def mutual_information(sigma: MatrixLike, split: Iterable[int]) -> float:
    """Mutual information of a two-mode Gaussian state across the given split.

    ``I = f(sqrt det sigma_A) + f(sqrt det sigma_B) - f(eta-) - f(eta+)``
    with eta the symplectic eigenvalues of the global two-mode state.
    """
    cov = _as_cov(sigma)
    if cov.n_modes != 2:
        raise ValueError(f"mutual information implemented for two-mode states, got {cov.n_modes} modes")
    modes = check_mode_set(split, 2)
    if len(modes) != 1:
        raise ValueError("split must select exactly one of the two modes")
    a = math.sqrt(np.linalg.det(cov.block(0, 0)))
    b = math.sqrt(np.linalg.det(cov.block(1, 1)))
    total = sum(entropy_term_f(eta) for eta in _clamped_spectrum(cov))
    return entropy_term_f(a) + entropy_term_f(b) - total


def _check_one_vs_rest(cov: CovMatrix, transposed: Iterable[int]) -> tuple[int, ...]:
    modes = check_mode_set(transposed, cov.n_modes)
    if len(modes) >= cov.n_modes:
        raise ValueError("cannot transpose every mode; pick a proper subset")
    if len(modes) != 1 and len(modes) != cov.n_modes - 1:
        raise ValueError("PPT-based measures need a 1 x (N-1) bipartition")
    return modes


def ppt_separable(sigma: MatrixLike, transposed: Iterable[int], tol: float = BONA_FIDE_TOL) -> bool:
    """PPT test for a 1 x (N-1) bipartition: separable iff the partial transpose stays physical."""
    cov = _as_cov(sigma)
    modes = _check_one_vs_rest(cov, transposed)
    etas = symplectic_eigenvalues(partial_transpose(cov, modes))
    return bool(etas.min() >= 1.0 - tol)


def log_negativity(sigma: MatrixLike, transposed: Iterable[int]) -> float:
    """Logarithmic negativity across a 1 x (N-1) bipartition.

    Sum of -ln eta over the partially transposed symplectic eigenvalues
    below one; zero exactly when :func:`ppt_separable` holds.
    """
    cov = _as_cov(sigma)
    modes = _check_one_vs_rest(cov, transposed)
    etas = symplectic_eigenvalues(partial_transpose(cov, modes))
    return float(sum(-math.log(eta) for eta in etas if eta < 1.0))


def entropy_of_entanglement(s: float) -> float:
    """Entropy of entanglement f(cosh 2s) of a pure two-mode squeezed state."""
    if s < 0:
        raise ValueError("squeezing must be nonnegative")
    return entropy_term_f(math.cosh(2.0 * s))


def check_monogamy(tau_one_vs_rest: float, taus_pairwise: Iterable[float]) -> float:
    """Residual of the monogamy inequality: one-vs-rest tau minus the pairwise sum.

    A nonnegative residual (within numerical tolerance) certifies that the
    probe mode's entanglement with the rest bounds the total pairwise
    entanglement it shares with the individual modes.
    """
    pairwise = list(taus_pairwise)
    if tau_one_vs_rest < -1e-12 or any(t < -1e-12 for t in pairwise):
        raise ValueError("contangles must be nonnegative")
    return float(tau_one_vs_rest - sum(pairwise))


Source = Literal["closed_form", "numeric_cm"]


@dataclass(frozen=True)
class MeasureReport:
    """One bipartition's entanglement summary: m-parameter, contangle, provenance."""

    m: float
    contangle: float
    separable: bool
    source: Source

    @classmethod
    def from_m(cls, m: float, source: Source) -> "MeasureReport":
        tau = contangle_from_m(m)
        return cls(m=max(m, 1.0), contangle=tau, separable=(tau == 0.0), source=source)


# ---------------------------------------------------------------------------
# Closed-form contangle parameters from two-mode covariance matrices.
# ---------------------------------------------------------------------------

def _marginals(cov: CovMatrix) -> tuple[float, float, float]:
    """(sqrt det sigma_1, sqrt det sigma_2, det eps) of a two-mode state."""
    a = math.sqrt(np.linalg.det(cov.block(0, 0)))
    b = math.sqrt(np.linalg.det(cov.block(1, 1)))
    det_eps = float(np.linalg.det(cov.block(0, 1)))
    return a, b, det_eps


def pure_m(sigma: MatrixLike) -> float:
    """m-parameter of a pure two-mode state: sqrt det of either single-mode reduction."""
    cov = _as_cov(sigma)
    if cov.n_modes != 2:
        raise ValueError("pure_m needs a two-mode state")
    if not is_pure(cov):
        raise ValueError("state is not pure; use the mixed-state evaluators")
    a, b, _ = _marginals(cov)
    return 0.5 * (a + b)


def gmemms_m(sigma: MatrixLike, tol: float = GMEMMS_SPECTRUM_TOL) -> float:
    """m-parameter of a maximally entangled mixed state at fixed marginals.

    Valid for two-mode states that saturate the uncertainty relation
    (minimum symplectic eigenvalue 1), e.g. every two-mode reduction of a
    pure three-mode state.  For them m depends on the marginals alone:
    ``m = (a + b) / (2 + |a - b|)``.
    """
    cov = _as_cov(sigma)
    if cov.n_modes != 2:
        raise ValueError("gmemms_m needs a two-mode state")
    eta_min = symplectic_eigenvalues(cov).min()
    if abs(eta_min - 1.0) > tol:
        raise ValueError(f"state does not saturate the uncertainty relation (eta_min = {eta_min!r})")
    if ppt_separable(cov, (0,)):
        return 1.0
    a, b, _ = _marginals(cov)
    return (a + b) / (2.0 + abs(a - b))


def squeezed_thermal_m(sigma: MatrixLike) -> float:
    """m-parameter of a (generally nonsymmetric) two-mode thermal squeezed state.

    The covariance invariants (a, b, c) with diagonal blocks a*I, b*I and
    off-diagonal c*Z are inverted to the unique squeezing parameters
    (s, l, n) that generate the state as a two-mode squeezed pair with both
    modes further squeezed against ancillas, and the family's closed form is
    evaluated there.  Near the uncertainty-saturation boundary this inversion
    has a square-root sensitivity; use :func:`gmemms_m` for such states.
    """
    cov = _as_cov(sigma)
    if cov.n_modes != 2:
        raise ValueError("squeezed_thermal_m needs a two-mode state")
    if ppt_separable(cov, (0,)):
        return 1.0
    a, b, det_eps = _marginals(cov)
    if det_eps > 0:
        raise ValueError("entangled two-mode states need det eps < 0")
    c_sq = -det_eps
    det_sigma = float(np.linalg.det(cov.mat))
    if abs(det_sigma - (a * b - c_sq) ** 2) > FAMILY_RTOL * max(1.0, det_sigma):
        raise ValueError("state is not of thermal squeezed form (c+ != -c-)")
    prod = (a + 1.0) * (b + 1.0)
    u = (prod + c_sq) / (prod - c_sq)
    p = (a - u) / (u + 1.0)
    q = (b - u) / (u + 1.0)
    if min(p, q) < -FAMILY_RTOL:
        raise ValueError("invariants fall outside the thermal squeezed family")
    s = 0.5 * math.acosh(max(u, 1.0))
    l = math.asinh(math.sqrt(max(p, 0.0)))
    n = math.asinh(math.sqrt(max(q, 0.0)))
    return _thermal_family_m(s, l, n)


def _thermal_family_m(s: float, l: float, n: float) -> float:
    """Closed-form m of the thermal squeezed family in its generating parameters."""
    if math.tanh(s) <= math.sinh(l) * math.sinh(n):
        return 1.0
    num = (2.0 * math.cosh(2 * l) * math.cosh(2 * n) * math.cosh(s) ** 2
           + 3.0 * math.cosh(2 * s) - 4.0 * math.sinh(l) * math.sinh(n) * math.sinh(2 * s) - 1.0)
    den = 2.0 * ((math.cosh(2 * l) + math.cosh(2 * n)) * math.cosh(s) ** 2
                 - 2.0 * math.sinh(s) ** 2 + 2.0 * math.sinh(l) * math.sinh(n) * math.sinh(2 * s))
    return max(num / den, 1.0)


def two_mode_m(sigma: MatrixLike) -> float:
    """m-parameter of any two-mode state in the families handled by this package.

    Dispatches on the symplectic spectrum: pure states use the marginal
    determinant, uncertainty-saturating states the GMEMMS form, everything
    else the thermal squeezed inversion.
    """
    cov = _as_cov(sigma)
    if cov.n_modes != 2:
        raise ValueError("two_mode_m needs a two-mode state")
    etas = symplectic_eigenvalues(cov)
    if np.max(np.abs(etas - 1.0)) <= PURITY_TOL:
        return pure_m(cov)
    if abs(etas.min() - 1.0) <= GMEMMS_SPECTRUM_TOL:
        return gmemms_m(cov)
    return squeezed_thermal_m(cov)


def contangle_from_cm(sigma: MatrixLike) -> MeasureReport:
    """Contangle of a two-mode state evaluated from its covariance matrix."""
    return MeasureReport.from_m(two_mode_m(sigma), source="numeric_cm")


def reduced_contangle(sigma: MatrixLike, pair: Iterable[int]) -> MeasureReport:
    """Contangle of the reduced two-mode state on the given pair of modes."""
    cov = _as_cov(sigma)
    modes = check_mode_set(pair, cov.n_modes)
    if len(modes) != 2:
        raise ValueError("pair must contain exactly two modes")
    return contangle_from_cm(reduce(cov, modes))
