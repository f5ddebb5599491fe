"""Closed-form correlation analysis of the accelerated-observer scenarios.

Everything here is an explicit function of the squeezing parameters: the
inertial entanglement s, the single observer's acceleration parameter r,
and the two observers' acceleration parameters l, n (a when equal).  The
covariance-matrix route of :mod:`rindlercv.rindler_frames` plus
:mod:`rindlercv.info_measures` recomputes each quantity independently;
the test suite holds the two routes together.

Diverging quantities (the maximal surviving contangle at zero acceleration,
the effective single-observer acceleration past the entanglement-death
threshold) return ``math.inf`` rather than any sentinel value.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from typing import Optional

from .info_measures import InconsistencyError, MeasureReport, contangle_from_m, entropy_term_f
from .phase_space import CovMatrix, apply_congruence, two_mode_squeezer, vacuum_cm

logger = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-9
_MIN_SLACK = 1e-12
# branch boundaries are decided on the analytic condition; an m landing
# within this window of 1 is the separable value up to roundoff
SEPARABLE_CLAMP = 1e-9


def _require_nonnegative(**params: float) -> None:
    for name, value in params.items():
        if value < 0:
            raise ValueError(f"{name} must be nonnegative, got {value!r}")


def _clamp_separable(m: float) -> float:
    return 1.0 if m <= 1.0 + SEPARABLE_CLAMP else m


# ---------------------------------------------------------------------------
# One accelerated observer (Alice inertial, Rob accelerated).
# ---------------------------------------------------------------------------

def m_alice_rob(s: float, r: float) -> float:
    """m between Alice and Rob: [2 sinh^2 r + (cosh 2r + 3) cosh 2s] / [2 cosh 2s sinh^2 r + cosh 2r + 3]."""
    _require_nonnegative(s=s, r=r)
    shr2 = math.sinh(r) ** 2
    ch2r, ch2s = math.cosh(2 * r), math.cosh(2 * s)
    return (2.0 * shr2 + (ch2r + 3.0) * ch2s) / (2.0 * ch2s * shr2 + ch2r + 3.0)


def contangle_ar(s: float, r: float) -> MeasureReport:
    """Contangle between Alice and the accelerated Rob (closed form)."""
    return MeasureReport.from_m(m_alice_rob(s, r), source="closed_form")


def contangle_r_rbar(r: float) -> MeasureReport:
    """Contangle between the two Rindler wedges: m = cosh 2r, independent of s."""
    _require_nonnegative(r=r)
    return MeasureReport.from_m(math.cosh(2 * r), source="closed_form")


def tau_max_ar(r: float) -> float:
    """Largest Alice-Rob contangle any inertial entanglement can leave at acceleration r.

    arcsinh^2[2 cosh r / sinh^2 r]; diverges (returns inf) at r = 0.
    """
    _require_nonnegative(r=r)
    if r == 0:
        return math.inf
    return math.asinh(2.0 * math.cosh(r) / math.sinh(r) ** 2) ** 2


def r_star(s: float) -> float:
    """Acceleration below which anti-Rob, not Alice, holds the smallest one-vs-rest m.

    arccosh sqrt(tanh^2 s + 1), evaluated as arcsinh(tanh s).
    """
    _require_nonnegative(s=s)
    return math.asinh(math.tanh(s))


def one_vs_rest_m_single(s: float, r: float) -> tuple[float, float, float]:
    """Closed-form one-vs-rest m for probes (Alice, Rob, anti-Rob)."""
    _require_nonnegative(s=s, r=r)
    ch2s, chr2, shr2 = math.cosh(2 * s), math.cosh(r) ** 2, math.sinh(r) ** 2
    return ch2s, ch2s * chr2 + shr2, chr2 + ch2s * shr2


def residual_tripartite(s: float, r: float) -> float:
    """Genuine tripartite contangle shared by Alice, Rob and anti-Rob.

    The minimizing probe switches at r*: below it the residual is
    g[m_{anti-Rob}^2] - 4r^2, above it 4s^2 - g[m_{Alice-Rob}^2].  The branch
    is chosen on the analytic condition sinh r < tanh s, not on the computed
    m values, to avoid chatter at the threshold.
    """
    _require_nonnegative(s=s, r=r)
    if math.sinh(r) < math.tanh(s):
        m_rbar = one_vs_rest_m_single(s, r)[2]
        return contangle_from_m(m_rbar) - 4.0 * r * r
    return 4.0 * s * s - contangle_from_m(m_alice_rob(s, r))


def mutual_info_ar(s: float, r: float) -> float:
    """Mutual information between Alice and Rob: f(a) + f(b) - f(c) on the marginal roots."""
    m_a, m_r, m_rbar = one_vs_rest_m_single(s, r)
    return entropy_term_f(m_a) + entropy_term_f(m_r) - entropy_term_f(m_rbar)


# ---------------------------------------------------------------------------
# Two accelerated observers (Leo and Nadia).
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairwiseDoubleM:
    """The six pairwise m-parameters of the four-mode scenario."""

    m_l_nbar: float
    m_n_lbar: float
    m_lbar_nbar: float
    m_l_lbar: float
    m_n_nbar: float
    m_l_n: float


def m_leo_nadia(s: float, l: float, n: float) -> float:
    """m between Leo and Nadia; exactly 1 once tanh s <= sinh l sinh n."""
    _require_nonnegative(s=s, l=l, n=n)
    if math.tanh(s) <= math.sinh(l) * math.sinh(n):
        return 1.0
    chs2 = math.cosh(s) ** 2
    num = (2.0 * math.cosh(2 * l) * math.cosh(2 * n) * chs2 + 3.0 * math.cosh(2 * s)
           - 4.0 * math.sinh(l) * math.sinh(n) * math.sinh(2 * s) - 1.0)
    den = 2.0 * ((math.cosh(2 * l) + math.cosh(2 * n)) * chs2 - 2.0 * math.sinh(s) ** 2
                 + 2.0 * math.sinh(l) * math.sinh(n) * math.sinh(2 * s))
    return _clamp_separable(num / den)


def pairwise_m_double(s: float, l: float, n: float) -> PairwiseDoubleM:
    """All pairwise m values: three crossed pairs are always separable (m = 1),
    each observer with its own wedge partner has m = cosh 2x, and Leo-Nadia
    follows the piecewise closed form."""
    _require_nonnegative(s=s, l=l, n=n)
    return PairwiseDoubleM(
        m_l_nbar=1.0, m_n_lbar=1.0, m_lbar_nbar=1.0,
        m_l_lbar=math.cosh(2 * l), m_n_nbar=math.cosh(2 * n),
        m_l_n=m_leo_nadia(s, l, n))


def one_vs_rest_m_double(s: float, l: float, n: float) -> tuple[float, float, float, float]:
    """Closed-form one-vs-rest m for probes (anti-Leo, Leo, Nadia, anti-Nadia)."""
    _require_nonnegative(s=s, l=l, n=n)
    ch2s = math.cosh(2 * s)
    return (math.cosh(l) ** 2 + ch2s * math.sinh(l) ** 2,
            math.sinh(l) ** 2 + ch2s * math.cosh(l) ** 2,
            math.sinh(n) ** 2 + ch2s * math.cosh(n) ** 2,
            math.cosh(n) ** 2 + ch2s * math.sinh(n) ** 2)


def r_effective(s: float, l: float, n: float) -> float:
    """Single-observer acceleration reproducing the Leo-Nadia entanglement loss.

    arccosh[cosh l cosh n sinh s / (sinh s - cosh s sinh l sinh n)] when the
    entanglement survives, inf past the death threshold.  Undefined at s = 0.
    """
    if s <= 0:
        raise ValueError("r_effective needs s > 0 (any acceleration matches at s = 0)")
    _require_nonnegative(l=l, n=n)
    den = math.sinh(s) - math.cosh(s) * math.sinh(l) * math.sinh(n)
    if den <= 0:  # tanh s <= sinh l sinh n
        return math.inf
    return math.acosh(max(math.cosh(l) * math.cosh(n) * math.sinh(s) / den, 1.0))


def frequency_separability(freq_1: float, freq_2: float, acceleration: float) -> bool:
    """Whether equally accelerated observers see the two modes separable at infinite s.

    The closed-form condition e^{2 pi f1/accel} + e^{2 pi f2/accel}
    >= e^{2 pi (f1+f2)/accel} is evaluated in the overflow-free form
    e^{-2 pi f1/accel} + e^{-2 pi f2/accel} >= 1.
    """
    if freq_1 <= 0 or freq_2 <= 0 or acceleration <= 0:
        raise ValueError("frequencies and acceleration must be positive")
    w = 2.0 * math.pi / acceleration
    return math.exp(-w * freq_1) + math.exp(-w * freq_2) >= 1.0


def m_ln_infinite_squeezing(l: float, n: float) -> float:
    """Leo-Nadia m in the infinitely entangled inertial limit.

    Exactly 1 once sinh l sinh n >= 1 (the death condition survives the
    limit); otherwise
    [cosh 2l cosh 2n - 4 sinh l sinh n + 3] / (2 [sinh l + sinh n]^2),
    which meets 1 on the boundary.
    """
    _require_nonnegative(l=l, n=n)
    if l == 0 and n == 0:
        raise ValueError("both accelerations zero: the ideal EPR limit diverges")
    if math.sinh(l) * math.sinh(n) >= 1.0:
        return 1.0
    num = math.cosh(2 * l) * math.cosh(2 * n) - 4.0 * math.sinh(l) * math.sinh(n) + 3.0
    den = 2.0 * (math.sinh(l) + math.sinh(n)) ** 2
    return _clamp_separable(num / den)


def a_star(s: float) -> float:
    """Acceleration parameter killing the Leo-Nadia entanglement: arcsinh sqrt(tanh s)."""
    _require_nonnegative(s=s)
    return math.asinh(math.sqrt(math.tanh(s)))


def m_ln_equal_accel(s: float, a: float) -> float:
    """Leo-Nadia m at equal accelerations; exactly 1 for a >= a*(s).

    The branch is decided on the analytic condition sinh^2 a >= tanh s.
    """
    _require_nonnegative(s=s, a=a)
    if math.sinh(a) ** 2 >= math.tanh(s):
        return 1.0
    num = (2.0 * math.cosh(2 * a) ** 2 * math.cosh(s) ** 2 + 3.0 * math.cosh(2 * s)
           - 4.0 * math.sinh(a) ** 2 * math.sinh(2 * s) - 1.0)
    den = 4.0 * (math.cosh(a) ** 2 + math.exp(2 * s) * math.sinh(a) ** 2)
    return _clamp_separable(num / den)


def residual_multipartite(s: float, a: float) -> float:
    """Residual contangle of the four-mode state not stored in pairwise form.

    For the minimizing probe (an anti-observer):
    arcsinh^2 sqrt([cosh^2 a + cosh 2s sinh^2 a]^2 - 1) - 4a^2.  The
    competing probe-Leo candidate is evaluated as well; the anti-observer
    one is expected minimal, and a violation is logged and honored.
    """
    _require_nonnegative(s=s, a=a)
    m_lbar, m_l, _, _ = one_vs_rest_m_double(s, a, a)
    probe_lbar = contangle_from_m(m_lbar) - 4.0 * a * a
    probe_l = (contangle_from_m(m_l) - 4.0 * a * a
               - contangle_from_m(m_ln_equal_accel(s, a)))
    if probe_l < probe_lbar - _MIN_SLACK:
        logger.warning("probe Leo beat probe anti-Leo at s=%r a=%r (%r < %r); returning the true minimum",
                       s, a, probe_l, probe_lbar)
        return probe_l
    return probe_lbar


def _bound_ansatz_k(s: float, a: float) -> float:
    x = (math.tanh(s) / math.cosh(a)) ** 2
    return (1.0 + x) / (1.0 - x)


def tripartite_bound_ansatz_cm(s: float, a: float) -> CovMatrix:
    """Pure three-mode state majorized by the anti-Leo/Leo/Nadia reduction.

    Built by squeezing Leo against Nadia with the matching parameter
    t = arccosh(K)/2 and then Leo against anti-Leo with a; it bounds the
    mixed-state one-vs-two contangles of the reduction from above.
    """
    _require_nonnegative(s=s, a=a)
    t = 0.5 * math.acosh(_bound_ansatz_k(s, a))
    inner = two_mode_squeezer(t, 1, 2, 3)
    outer = two_mode_squeezer(a, 1, 0, 3)
    return apply_congruence(outer, apply_congruence(inner, vacuum_cm(3)))


def tripartite_upper_bound(s: float, a: float) -> float:
    """Upper bound on the tripartite contangle among anti-Leo, Leo and Nadia.

    Minimum of the two candidate differences built from the pure-ansatz
    one-vs-two parameters; the third conceivable candidate is provably
    larger and excluded.  Rises while the Leo-Nadia pair stays entangled,
    peaks near the death threshold a*(s), then decays to zero as a -> inf.
    """
    _require_nonnegative(s=s, a=a)
    k = _bound_ansatz_k(s, a)
    cand_lbar = (contangle_from_m(math.cosh(a) ** 2 + k * math.sinh(a) ** 2)
                 - 4.0 * a * a)
    cand_n = contangle_from_m(k) - contangle_from_m(m_ln_equal_accel(s, a))
    return min(cand_lbar, cand_n)


def mutual_info_ln(s: float, a: float) -> float:
    """Mutual information between Leo and Nadia at equal accelerations.

    f(d) + f(d) - 2 f((det sigma_LN)^(1/4)) with the degenerate symplectic
    eigenvalue computed from the cancellation-free determinant expansion
    cosh^4 a + 2 cosh 2s cosh^2 a sinh^2 a + sinh^4 a.
    """
    _require_nonnegative(s=s, a=a)
    ch2s, cha2, sha2 = math.cosh(2 * s), math.cosh(a) ** 2, math.sinh(a) ** 2
    d = ch2s * cha2 + sha2
    eta = math.sqrt(cha2 * cha2 + 2.0 * ch2s * cha2 * sha2 + sha2 * sha2)
    return 2.0 * entropy_term_f(d) - 2.0 * entropy_term_f(eta)


def mutual_info_ln_general(s: float, l: float, n: float) -> float:
    """Mutual information between Leo and Nadia for independent accelerations."""
    _require_nonnegative(s=s, l=l, n=n)
    ch2s = math.cosh(2 * s)
    chl2, shl2 = math.cosh(l) ** 2, math.sinh(l) ** 2
    chn2, shn2 = math.cosh(n) ** 2, math.sinh(n) ** 2
    da = ch2s * chl2 + shl2
    db = ch2s * chn2 + shn2
    c = math.sinh(2 * s) * math.cosh(l) * math.cosh(n)
    det_root = chl2 * chn2 + ch2s * (chl2 * shn2 + shl2 * chn2) + shl2 * shn2
    # seralian a^2 + b^2 - 2c^2 in factored form to survive large squeezing
    diff_a = math.cosh(l) * (ch2s * (math.cosh(l) - math.cosh(n))
                             + math.cosh(n) * math.exp(-2 * s)) + shl2
    diff_b = math.cosh(n) * (ch2s * (math.cosh(n) - math.cosh(l))
                             + math.cosh(l) * math.exp(-2 * s)) + shn2
    delta = diff_a * (da + c) + diff_b * (db + c)
    gap = max(delta * delta - 4.0 * det_root * det_root, 0.0)
    eta_minus_sq = 2.0 * det_root * det_root / (delta + math.sqrt(gap))
    eta_plus_sq = 0.5 * (delta + math.sqrt(gap))
    return (entropy_term_f(da) + entropy_term_f(db)
            - entropy_term_f(math.sqrt(eta_minus_sq)) - entropy_term_f(math.sqrt(eta_plus_sq)))


def classical_deficit(a: float, s: float) -> float:
    """Mutual-information deficit of two accelerated observers versus one.

    I(Alice|Rob) at r = a minus I(Leo|Nadia); nonnegative, bounded and
    saturating at exactly 1 (natural-log units) as s -> inf for any a > 0.
    """
    _require_nonnegative(a=a, s=s)
    return mutual_info_ar(s, a) - mutual_info_ln(s, a)


# ---------------------------------------------------------------------------
# Scenario reports.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SingleObserverReport:
    """All single-observer quantities at one parameter point."""

    s: float
    r: float
    m_a_vs_rest: float
    m_r_vs_rest: float
    m_rbar_vs_rest: float
    m_ar: float
    m_r_rbar: float
    tau_ar: float
    tau_r_rbar: float
    residual_tripartite: float
    mutual_info_ar: float
    r_star: float
    tau_max_ar: float

    def to_dict(self) -> dict:
        return asdict(self)

    def monogamy_residuals(self) -> dict[str, float]:
        """Monogamy residual (one-vs-rest minus pairwise sum) per probe mode."""
        return {
            "A": contangle_from_m(self.m_a_vs_rest) - self.tau_ar,
            "R": contangle_from_m(self.m_r_vs_rest) - self.tau_ar - self.tau_r_rbar,
            "Rbar": contangle_from_m(self.m_rbar_vs_rest) - self.tau_r_rbar,
        }

    def validate(self, tol: float = RESIDUAL_TOL) -> None:
        """Raise InconsistencyError when an internal invariant fails."""
        for name in ("m_a_vs_rest", "m_r_vs_rest", "m_rbar_vs_rest", "m_ar", "m_r_rbar"):
            if getattr(self, name) < 1.0 - tol:
                raise InconsistencyError(f"{name} = {getattr(self, name)!r} below 1")
        if self.residual_tripartite < -tol:
            raise InconsistencyError(f"negative tripartite residual {self.residual_tripartite!r}")
        for probe, value in self.monogamy_residuals().items():
            if value < -tol:
                raise InconsistencyError(f"monogamy violated at probe {probe}: {value!r}")


def single_observer_report(s: float, r: float) -> SingleObserverReport:
    """Evaluate every single-observer closed form at (s, r)."""
    m_a, m_r, m_rbar = one_vs_rest_m_single(s, r)
    ar = contangle_ar(s, r)
    rr = contangle_r_rbar(r)
    return SingleObserverReport(
        s=s, r=r,
        m_a_vs_rest=m_a, m_r_vs_rest=m_r, m_rbar_vs_rest=m_rbar,
        m_ar=ar.m, m_r_rbar=rr.m,
        tau_ar=ar.contangle, tau_r_rbar=rr.contangle,
        residual_tripartite=residual_tripartite(s, r),
        mutual_info_ar=mutual_info_ar(s, r),
        r_star=r_star(s),
        tau_max_ar=tau_max_ar(r),
    )


@dataclass(frozen=True)
class DoubleObserverReport:
    """All double-observer quantities at one parameter point.

    Fields defined only at equal accelerations (the tripartite bound and the
    classical deficit) are None when l != n.
    """

    s: float
    l: float
    n: float
    m_l_nbar: float
    m_n_lbar: float
    m_lbar_nbar: float
    m_l_lbar: float
    m_n_nbar: float
    m_l_n: float
    m_lbar_vs_rest: float
    m_l_vs_rest: float
    m_n_vs_rest: float
    m_nbar_vs_rest: float
    tau_l_lbar: float
    tau_n_nbar: float
    tau_l_n: float
    residual_multipartite: float
    tripartite_upper_bound: Optional[float]
    mutual_info_ln: float
    r_eff: float
    a_star: float
    deficit: Optional[float]

    def to_dict(self) -> dict:
        return asdict(self)

    def monogamy_residuals(self) -> dict[str, float]:
        """Monogamy residual per probe mode."""
        return {
            "Lbar": contangle_from_m(self.m_lbar_vs_rest) - self.tau_l_lbar,
            "L": contangle_from_m(self.m_l_vs_rest) - self.tau_l_lbar - self.tau_l_n,
            "N": contangle_from_m(self.m_n_vs_rest) - self.tau_n_nbar - self.tau_l_n,
            "Nbar": contangle_from_m(self.m_nbar_vs_rest) - self.tau_n_nbar,
        }

    def validate(self, tol: float = RESIDUAL_TOL) -> None:
        """Raise InconsistencyError when an internal invariant fails."""
        for name in ("m_l_nbar", "m_n_lbar", "m_lbar_nbar", "m_l_lbar",
                     "m_n_nbar", "m_l_n", "m_lbar_vs_rest", "m_l_vs_rest",
                     "m_n_vs_rest", "m_nbar_vs_rest"):
            if getattr(self, name) < 1.0 - tol:
                raise InconsistencyError(f"{name} = {getattr(self, name)!r} below 1")
        if self.residual_multipartite < -tol:
            raise InconsistencyError(f"negative multipartite residual {self.residual_multipartite!r}")
        if self.tripartite_upper_bound is not None and self.tripartite_upper_bound < -tol:
            raise InconsistencyError(f"negative tripartite bound {self.tripartite_upper_bound!r}")
        for probe, value in self.monogamy_residuals().items():
            if value < -tol:
                raise InconsistencyError(f"monogamy violated at probe {probe}: {value!r}")


def double_observer_report(s: float, l: float, n: float) -> DoubleObserverReport:
    """Evaluate every double-observer closed form at (s, l, n)."""
    pw = pairwise_m_double(s, l, n)
    m_lbar, m_l, m_n, m_nbar = one_vs_rest_m_double(s, l, n)
    tau_l_lbar = contangle_from_m(pw.m_l_lbar)
    tau_n_nbar = contangle_from_m(pw.m_n_nbar)
    tau_l_n = contangle_from_m(pw.m_l_n)
    equal = (l == n)
    if equal:
        residual = residual_multipartite(s, l)
        bound = tripartite_upper_bound(s, l)
        mi = mutual_info_ln(s, l)
        deficit = classical_deficit(l, s)
    else:
        candidates = {
            "Lbar": contangle_from_m(m_lbar) - tau_l_lbar,
            "Nbar": contangle_from_m(m_nbar) - tau_n_nbar,
            "L": contangle_from_m(m_l) - tau_l_lbar - tau_l_n,
            "N": contangle_from_m(m_n) - tau_n_nbar - tau_l_n,
        }
        residual = min(candidates.values())
        bound = None
        mi = mutual_info_ln_general(s, l, n)
        deficit = None
    return DoubleObserverReport(
        s=s, l=l, n=n,
        m_l_nbar=pw.m_l_nbar, m_n_lbar=pw.m_n_lbar, m_lbar_nbar=pw.m_lbar_nbar,
        m_l_lbar=pw.m_l_lbar, m_n_nbar=pw.m_n_nbar, m_l_n=pw.m_l_n,
        m_lbar_vs_rest=m_lbar, m_l_vs_rest=m_l, m_n_vs_rest=m_n, m_nbar_vs_rest=m_nbar,
        tau_l_lbar=tau_l_lbar, tau_n_nbar=tau_n_nbar, tau_l_n=tau_l_n,
        residual_multipartite=residual,
        tripartite_upper_bound=bound,
        mutual_info_ln=mi,
        r_eff=r_effective(s, l, n) if s > 0 else math.nan,
        a_star=a_star(s),
        deficit=deficit,
    )
