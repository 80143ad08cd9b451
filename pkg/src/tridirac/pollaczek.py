"""Pollaczek polynomial family: evaluation in all normalizations, the
second (associated) solution, generating-function partial sums, and the
large-degree Darboux approximants for the oscillatory (|x| < 1) and
exponential (|x| > 1) regimes.

Forward recursion is the normative evaluator for |x| <= 1 where the
polynomials are the dominant solution.  For |x| > 1 the sequences grow
geometrically and overflow doubles quickly, and near quantization points
the wanted solution is minimal, so the evaluator switches to mpmath
floats there (plain doubles on request).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from . import specfun
from .errors import BranchError, DegenerateError, PoleError, RadiusError
from .model import RecursionCoefficients

__all__ = [
    "PollaczekParams",
    "PolynomialSequence",
    "evaluate",
    "evaluate_second_kind",
    "to_symmetric",
    "to_orthonormal",
    "symmetric_pair",
    "recursion_residual",
    "generating_partial_sum",
    "generating_closed_form",
    "phase_parameter",
    "scattering_amplitude_phase",
    "asymptotic_scattering",
    "asymptotic_bound",
    "asymptotic_bound_log",
    "jacobi_coefficients",
]

NORMALIZATIONS = ("standard", "second_kind", "symmetric", "orthonormal")


@dataclass(frozen=True)
class PollaczekParams:
    """Family parameters (lam > 0).  The physical map always produces
    a = 0; general a is accepted for library completeness."""

    lam: float
    a: float = 0.0
    b: float = 0.0

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError("lam must be positive")


@dataclass(frozen=True)
class PolynomialSequence:
    """Values of one normalization at a fixed argument.  `values` is an
    ndarray in double precision or a list of mpmath numbers when the
    evaluation ran in extended precision."""

    values: object
    argument: object
    normalization: str
    params: PollaczekParams

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]


def _wants_extended(x) -> bool:
    return not isinstance(x, complex) and abs(x) > 1.0


def evaluate(params: PollaczekParams, x, n_max: int, extended: bool | None = None,
             dps: int = 40) -> PolynomialSequence:
    """Values P_0..P_{n_max} of the standard normalization by forward
    recursion:

        (n+1) P_{n+1} = 2[(n+lam+a)x + b] P_n - (n+2lam-1) P_{n-1},
        P_0 = 1,  P_1 = 2(lam+a)x + 2b.

    extended=None switches to mpmath automatically for real |x| > 1;
    complex arguments always use plain complex arithmetic.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    lam, a, b = params.lam, params.a, params.b
    if extended is None:
        extended = _wants_extended(x)
    if extended:
        with mp.workdps(dps):
            xm = mp.mpmathify(x)
            vals = [mp.mpf(1)]
            if n_max >= 1:
                vals.append(2 * (lam + a) * xm + 2 * b)
            for n in range(1, n_max):
                vals.append((2 * ((n + lam + a) * xm + b) * vals[n] - (n + 2 * lam - 1) * vals[n - 1]) / (n + 1))
        return PolynomialSequence(vals, x, "standard", params)
    one = complex(1.0) if isinstance(x, complex) else 1.0
    vals = [one]
    if n_max >= 1:
        vals.append(2 * (lam + a) * x + 2 * b)
    for n in range(1, n_max):
        vals.append((2 * ((n + lam + a) * x + b) * vals[n] - (n + 2 * lam - 1) * vals[n - 1]) / (n + 1))
    return PolynomialSequence(np.asarray(vals), x, "standard", params)


def _symmetric_offdiag(params: PollaczekParams, n: int) -> float:
    # off-diagonal of the symmetrized recursion, b_n = sqrt((n+1)(n+2lam))/2
    return 0.5 * math.sqrt((n + 1.0) * (n + 2.0 * params.lam))


def evaluate_second_kind(params: PollaczekParams, x, n_max: int, extended: bool | None = None,
                         dps: int = 40) -> PolynomialSequence:
    """Second solution of the symmetrized recursion, with initial values
    0 and 1/b_0 instead of the polynomial pair; emitted in the symmetric
    normalization.  The two solutions have constant Casoratian 1."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    b0 = _symmetric_offdiag(params, 0)
    if b0 == 0.0:
        raise DegenerateError("symmetric off-diagonal b_0 vanishes")
    lam, a, b = params.lam, params.a, params.b
    if extended is None:
        extended = _wants_extended(x)

    def run(xv, zero, inv_b0):
        vals = [zero]
        if n_max >= 1:
            vals.append(inv_b0)
        for n in range(1, n_max):
            cn = (n + lam + a) * xv + b
            bn = _symmetric_offdiag(params, n)
            bnm1 = _symmetric_offdiag(params, n - 1)
            vals.append((cn * vals[n] - bnm1 * vals[n - 1]) / bn)
        return vals

    if extended:
        with mp.workdps(dps):
            vals = run(mp.mpmathify(x), mp.mpf(0), 1 / mp.mpf(b0))
        return PolynomialSequence(vals, x, "second_kind", params)
    zero = complex(0.0) if isinstance(x, complex) else 0.0
    vals = run(x, zero, 1.0 / b0)
    return PolynomialSequence(np.asarray(vals), x, "second_kind", params)


def _symmetric_scale(params: PollaczekParams, n: int) -> float:
    # P_n = sqrt(Gamma(n+2lam) / (Gamma(n+1) Gamma(2lam+1))) Q_n
    lam = params.lam
    return math.exp(0.5 * (math.lgamma(n + 1.0) + math.lgamma(2.0 * lam + 1.0) - math.lgamma(n + 2.0 * lam)))


def _orthonormal_scale(params: PollaczekParams, n: int) -> float:
    # p_n = sqrt(Gamma(n+1)(lam+a+n) / Gamma(n+2lam)) P_n
    lam, a = params.lam, params.a
    return math.exp(0.5 * (math.lgamma(n + 1.0) + math.log(lam + a + n) - math.lgamma(n + 2.0 * lam)))


def _rescaled(seq: PolynomialSequence, scale, name: str) -> PolynomialSequence:
    vals = seq.values
    if isinstance(vals, np.ndarray):
        factors = np.array([scale(seq.params, n) for n in range(len(vals))])
        return PolynomialSequence(vals * factors, seq.argument, name, seq.params)
    out = [v * scale(seq.params, n) for n, v in enumerate(vals)]
    return PolynomialSequence(out, seq.argument, name, seq.params)


def to_symmetric(seq: PolynomialSequence) -> PolynomialSequence:
    """Rescale a standard sequence to the symmetric normalization
    Q_n = P_n sqrt(Gamma(n+1) Gamma(2lam+1) / Gamma(n+2lam)).  Note
    Q_0 = sqrt(2 lam), not 1: the transformation is kept verbatim and
    only ratios and recursion residuals carry meaning."""
    if seq.normalization != "standard":
        raise ValueError("to_symmetric expects the standard normalization")
    return _rescaled(seq, _symmetric_scale, "symmetric")


def to_orthonormal(seq: PolynomialSequence) -> PolynomialSequence:
    """Rescale a standard sequence to the orthonormal normalization;
    ratios go through log-Gamma so large degrees do not overflow."""
    if seq.normalization != "standard":
        raise ValueError("to_orthonormal expects the standard normalization")
    return _rescaled(seq, _orthonormal_scale, "orthonormal")


def symmetric_pair(params: PollaczekParams, x, n_max: int):
    """Both solutions of the symmetrized recursion: (Q, Q*).  Their
    Casoratian b_n (Q_n Q*_{n+1} - Q_{n+1} Q*_n) is constant in n, equal
    to its n = 0 value Q_0 = sqrt(2 lam); constancy certifies the two
    solutions stay independent."""
    first = to_symmetric(evaluate(params, x, n_max))
    second = evaluate_second_kind(params, x, n_max)
    return first, second


def recursion_residual(seq: PolynomialSequence) -> float:
    """Max over n of |LHS - RHS| / (1 + |LHS|) of the recursion the
    sequence is supposed to satisfy (standard or symmetric form)."""
    lam, a, b = seq.params.lam, seq.params.a, seq.params.b
    x = seq.argument
    vals = seq.values
    worst = 0.0
    if seq.normalization == "standard":
        for n in range(1, len(vals) - 1):
            lhs = 2 * ((n + lam + a) * x + b) * vals[n]
            rhs = (n + 2 * lam - 1) * vals[n - 1] + (n + 1) * vals[n + 1]
            worst = max(worst, float(abs(lhs - rhs) / (1 + abs(lhs))))
        return worst
    if seq.normalization in ("symmetric", "second_kind"):
        for n in range(1, len(vals) - 1):
            lhs = ((n + lam + a) * x + b) * vals[n]
            rhs = (
                _symmetric_offdiag(seq.params, n - 1) * vals[n - 1]
                + _symmetric_offdiag(seq.params, n) * vals[n + 1]
            )
            worst = max(worst, float(abs(lhs - rhs) / (1 + abs(lhs))))
        return worst
    raise ValueError(f"no recursion residual for normalization {seq.normalization!r}")


# --- generating function -----------------------------------------------------


def phase_parameter(params: PollaczekParams, theta) -> complex:
    """phi(theta) = (a cos(theta) + b) / sin(theta)."""
    theta = complex(theta)
    return (params.a * cmath.cos(theta) + params.b) / cmath.sin(theta)


def generating_partial_sum(params: PollaczekParams, theta, t, n_max: int) -> complex:
    """Partial sum sum_{n=0}^{n_max} P_n(cos theta) t^n.  Requires |t|
    at least 5% inside the convergence disc bounded by the nearer of the
    two singularities e^{+-i theta}."""
    theta = complex(theta)
    t = complex(t)
    radius = min(abs(cmath.exp(1j * theta)), abs(cmath.exp(-1j * theta)))
    if abs(t) > radius / 1.05:
        raise RadiusError(f"|t| = {abs(t):.6g} outside 0.95 * radius {radius:.6g}")
    seq = evaluate(params, cmath.cos(theta), n_max)
    powers = t ** np.arange(n_max + 1)
    return complex(np.sum(np.asarray(seq.values) * powers))


def generating_closed_form(params: PollaczekParams, theta, t) -> complex:
    """(1 - t e^{i theta})^{-lam + i phi} (1 - t e^{-i theta})^{-lam - i phi}."""
    theta = complex(theta)
    t = complex(t)
    lam = params.lam
    phi = phase_parameter(params, theta)
    u = (-lam + 1j * phi) * cmath.log(1 - t * cmath.exp(1j * theta))
    v = (-lam - 1j * phi) * cmath.log(1 - t * cmath.exp(-1j * theta))
    return cmath.exp(u + v)


# --- Darboux approximants ----------------------------------------------------


def scattering_amplitude_phase(params: PollaczekParams, theta: float):
    """Energy-dependent amplitude and Gamma phase of the oscillatory
    approximant: amplitude = 2 e^{(pi/2-theta) phi} /
    (|Gamma(lam+i phi)| (2 sin theta)^lam), psi = arg Gamma(lam+i phi)."""
    if not 0.0 < theta < math.pi:
        raise BranchError("scattering form needs theta in (0, pi)")
    lam = params.lam
    phi = complex(phase_parameter(params, theta)).real
    mod, psi = specfun.gamma_abs_arg(complex(lam, phi))
    amplitude = 2.0 * math.exp((0.5 * math.pi - theta) * phi) / (mod * (2.0 * math.sin(theta)) ** lam)
    return amplitude, psi, phi


def oscillation_phase(params: PollaczekParams, theta: float, n: int) -> float:
    """Slowly drifting phase psi_n of the cos(n theta + psi_n)
    approximant:

        psi_n = psi + lam (theta - pi/2) - phi ln(2 n sin theta).

    The ln(sin theta) constant comes from the (2 e^{-i pi/2} sin
    theta)^{-(lam - i phi)} factor of the singular expansion; dropping it
    leaves an O(1) phase offset that does not decay with n.
    """
    _, psi, phi = scattering_amplitude_phase(params, theta)
    return psi + params.lam * (theta - 0.5 * math.pi) - phi * math.log(2.0 * n * math.sin(theta))


def asymptotic_scattering(params: PollaczekParams, theta: float, n: int) -> float:
    """Oscillatory-regime approximant of the orthonormal value p_n at
    x = cos(theta): amplitude * cos(n theta + psi_n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    amplitude, psi, phi = scattering_amplitude_phase(params, theta)
    psi_n = psi + params.lam * (theta - 0.5 * math.pi) - phi * math.log(2.0 * n * math.sin(theta))
    return amplitude * math.cos(n * theta + psi_n)


def _bound_branch(params: PollaczekParams, x: float):
    """Branch data for |x| > 1: w = e^{i theta} = x + sqrt(x^2 - 1)
    (positive square root), so |w| > 1 for x > 1 and |w| < 1 for x < -1.
    Returns (w, exponent) with exponent = lam -+ i phi, the combination
    whose Gamma pole marks the quantization points of that branch."""
    if abs(x) <= 1.0:
        raise BranchError("bound-regime form needs |x| > 1")
    root = math.sqrt(x * x - 1.0)
    w = x + root
    # sin(theta) = -i sqrt(x^2-1) on both branches; phi = i b' / sqrt(x^2-1)
    phi_over_i = (params.a * x + params.b) / root  # phi = i * phi_over_i
    if x > 1.0:
        exponent = params.lam + phi_over_i   # lam - i phi
    else:
        exponent = params.lam - phi_over_i   # lam + i phi
    return w, exponent


def asymptotic_bound_log(params: PollaczekParams, x: float, n: int):
    """(log modulus, sign) of the leading bound-regime term; sign is the
    real phase factor (+-1).  Returns (-inf, 1.0) at quantization points
    where the reciprocal Gamma kills the leading term."""
    if n < 1:
        raise ValueError("n must be >= 1")
    w, exponent = _bound_branch(params, x)
    lam = params.lam
    try:
        lg = specfun.log_gamma(exponent)
    except PoleError:
        return -math.inf, 1.0
    if x > 1.0:
        # n^{lam - i phi - 1} e^{i n theta} (1 - e^{-2 i theta})^{-(lam + i phi)} / Gamma(lam - i phi)
        other = 2.0 * lam - exponent      # lam + i phi
        log_mod = (exponent - 1.0) * math.log(n) + n * math.log(w) - other * math.log1p(-w ** -2) - lg.real
        return log_mod, 1.0
    # x < -1: n^{lam + i phi - 1} e^{-i n theta} (1 - e^{+2 i theta})^{-(lam - i phi)} / Gamma(lam + i phi)
    other = 2.0 * lam - exponent
    log_mod = (exponent - 1.0) * math.log(n) + n * math.log(abs(1.0 / w)) - other * math.log1p(-w * w) - lg.real
    sign = 1.0 if n % 2 == 0 else -1.0    # e^{-i n theta} = (1/w)^n with 1/w < -1
    return log_mod, sign


def asymptotic_bound(params: PollaczekParams, x: float, n: int) -> complex:
    """Leading Darboux term of P_n for |x| > 1; exactly zero when the
    branch exponent lam -+ i phi is a non-positive integer (the
    quantization condition).  Overflows to inf when the term exceeds
    double range; use asymptotic_bound_log for ratio tests at large n."""
    log_mod, sign = asymptotic_bound_log(params, x, n)
    if log_mod == -math.inf:
        return 0.0 + 0.0j
    if log_mod > 709.0:
        return complex(sign * math.inf)
    return complex(sign * math.exp(log_mod))


def jacobi_coefficients(params: PollaczekParams) -> RecursionCoefficients:
    """Jacobi-matrix coefficients of the orthonormal recursion in the
    polynomial argument:

        x p_n = atil_n p_n + btil_{n-1} p_{n-1} + btil_n p_{n+1},
        atil_n = -b / (n+lam+a),
        btil_n = sqrt((n+1)(n+2lam)) / (2 sqrt((n+lam+a)(n+lam+a+1))).

    This is the operator whose spectral measure is the orthogonality
    measure of the family (continuous on [-1, 1] plus any discrete
    points outside).
    """
    lam, a, b = params.lam, params.a, params.b

    def diag(n):
        return -b / (n + lam + a)

    def offdiag(n):
        return 0.5 * math.sqrt((n + 1.0) * (n + 2.0 * lam) / ((n + lam + a) * (n + lam + a + 1.0)))

    return RecursionCoefficients(diag=diag, offdiag=offdiag)
