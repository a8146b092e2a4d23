"""Closed-form BER: conditional Q-function sums, MGF averages over the
Gaussian cascade, the eta = pi/2 upper bound, system BER and the TDMA
baseline.

Two evaluation modes are supported.  ``paper`` evaluates the printed
expressions verbatim: amplitude-type coefficients inside the Q argument, the
printed coefficient tables and the variance-only cascade second moment.
``consistent`` uses the coefficients that the detector chain actually
produces: squared amplitudes, the full second moment ``var + mean^2`` and
the real-part noise variance ``sigma_W / 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import integrate, special

from risnoma import geometry
from risnoma.channel import SecondMomentMode as Mode
from risnoma.channel import clt_stats
from risnoma.transceiver import ImpairmentProfile, PowerAllocation

DEFAULT_NODES = 64
REFINE_RTOL = 1e-9

XI_F = np.array([1.0, 1.0, -1.0, 1.0, 1.0, -1.0])


class QuadratureError(RuntimeError):
    pass


def q_function(x):
    """Gaussian tail probability ``P[Z > x]``."""
    return 0.5 * special.erfc(np.asarray(x, dtype=float) / math.sqrt(2.0))


def q_function_craig(x: float) -> float:
    """Q(x) for x >= 0 from Craig's finite-range integral."""
    if x < 0:
        return 1.0 - q_function_craig(-x)
    if x == 0:
        return 0.5
    val, _ = integrate.quad(
        lambda t: math.exp(-x * x / (2.0 * math.sin(t) ** 2)),
        0.0, math.pi / 2, epsabs=1e-15, epsrel=1e-13, limit=200,
    )
    return val / math.pi


@dataclass(frozen=True)
class BerTermTable:
    zeta_s: np.ndarray
    zeta_f: np.ndarray
    xi_f: np.ndarray
    delta_f: np.ndarray
    mode: Mode


def term_table(alloc: PowerAllocation, mode: Mode | str = Mode.CONSISTENT) -> BerTermTable:
    mode = Mode(mode)
    a, b = alloc.amp1, alloc.amp2
    if mode is Mode.PAPER:
        zeta_s = np.array([a + b, a - b])
        zeta_f = np.array([alloc.eps2, alloc.eps2, a + b, math.sqrt(2 * alloc.eps1) + b, a - b, 2 * a - b])
        delta_f = np.array([a - b, a + b, a + b, a + b, a - b, a - b])
    else:
        # Decision distances of the SIC chain, from enumerating (s1, s2) and
        # both outcomes of the first-stage decision.
        zeta_s = np.array([a + b, a - b]) ** 2
        zeta_f = np.array([b, b, a + b, 2 * a + b, a - b, 2 * a - b]) ** 2
        delta_f = np.zeros(6)
    return BerTermTable(zeta_s, zeta_f, XI_F.copy(), delta_f, mode)


@dataclass(frozen=True)
class OperatingPoint:
    """Everything the closed forms need at one (SNR, N, geometry) point."""

    n_elements: int
    power: float
    psi1: float
    psi2: float
    iota: float
    alloc: PowerAllocation = field(default_factory=PowerAllocation)
    profile: ImpairmentProfile = field(default_factory=ImpairmentProfile)
    noise_var: float = 1.0
    mode: Mode = Mode.CONSISTENT

    def __post_init__(self):
        if self.n_elements < 1:
            raise ValueError("n_elements must be >= 1")
        if self.power < 0 or not self.noise_var > 0:
            raise ValueError("need power >= 0 and noise_var > 0")
        object.__setattr__(self, "mode", Mode(self.mode))

    @classmethod
    def from_scenario(cls, geo, pathloss, n_elements, snr_db, alloc=None, profile=None,
                      mode=Mode.CONSISTENT, noise_var=1.0):
        return cls(
            n_elements=n_elements,
            power=noise_var * 10 ** (snr_db / 10),
            psi1=geometry.large_scale_gain(geo, pathloss, 1),
            psi2=geometry.large_scale_gain(geo, pathloss, 2),
            iota=geometry.neighbor_gain(geo, pathloss),
            alloc=alloc or PowerAllocation(),
            profile=profile or ImpairmentProfile(),
            noise_var=noise_var,
            mode=mode,
        )

    def psi(self, user_index: int) -> float:
        if user_index == 1:
            return self.psi1
        if user_index == 2:
            return self.psi2
        raise ValueError(f"user_index must be 1 or 2, got {user_index!r}")


@dataclass(frozen=True)
class VarianceTerms:
    psi: float
    iota: float
    varpi: float
    aleph: float
    ka2: float
    kb2: float
    noise_var: float
    sigma_w: np.ndarray


def variance_terms(user_index: int, op: OperatingPoint, lam=None, oma: bool = False) -> VarianceTerms:
    """Per-term effective noise variance at user ``user_index``.

    ``lam`` conditions the serving distortion power on a known ``A1^2``;
    otherwise its CLT expectation is used.
    """
    stats = clt_stats(op.n_elements, op.mode)
    prof = op.profile
    psi = op.psi(user_index)
    varpi = op.power * (stats.second_moment if lam is None else lam)
    aleph = prof.n_cells * op.iota * prof.neighbor_tx_power(op.power) * stats.second_moment
    table = term_table(op.alloc, op.mode)
    if oma:
        n_terms = 1
    else:
        n_terms = 2 if user_index == 1 else 6
    base = psi * varpi * prof.ka2 + op.noise_var
    if op.mode is Mode.PAPER:
        if oma:
            coeff = np.ones(1)
        else:
            coeff = table.zeta_s if user_index == 1 else table.delta_f
        sw = base + coeff * aleph * prof.kb2 + aleph * prof.kb2
    else:
        sw = np.full(n_terms, base + aleph * (1 + prof.kb2))
    return VarianceTerms(psi, op.iota, varpi, aleph, prof.ka2, prof.kb2, op.noise_var, sw)


def sigma_w(user_index: int, term_index: int, op: OperatingPoint, lam=None) -> float:
    terms = variance_terms(user_index, op, lam).sigma_w
    if not 0 <= term_index < terms.shape[0]:
        raise IndexError(f"user {user_index} has {terms.shape[0]} terms, got {term_index}")
    return float(terms[term_index])


def _terms(user_index: int, op: OperatingPoint, oma: bool = False):
    """(Lambda_f, weight_f) so that BER = sum_f weight_f * Q-type term."""
    if oma:
        return np.ones(1), np.ones(1)
    table = term_table(op.alloc, op.mode)
    if user_index == 1:
        return table.zeta_s, np.full(2, 0.5)
    if user_index == 2:
        return table.zeta_f, 0.5 * table.xi_f
    raise ValueError(f"user_index must be 1 or 2, got {user_index!r}")


def _conditional(user_index, lam, op, oma=False):
    if np.any(np.asarray(lam) < 0):
        raise ValueError("lambda must be >= 0")
    lam_ = np.asarray(lam, dtype=float)
    zeta, weight = _terms(user_index, op, oma)
    sw = variance_terms(user_index, op, lam=lam_[..., None], oma=oma).sigma_w
    scale = 1.0 if op.mode is Mode.PAPER else 2.0
    snr = scale * op.power * zeta * op.psi(user_index) * lam_[..., None] / sw
    return np.sum(weight * q_function(np.sqrt(snr)), axis=-1)


def ber_u1_conditional(lam, op: OperatingPoint):
    """BER of user 1 given ``lam = A1^2`` (2 terms, averaged over s2)."""
    return _conditional(1, lam, op)


def ber_u2_conditional(lam, op: OperatingPoint):
    """BER of user 2 given ``lam``: six signed terms covering correct and
    erroneous first-stage decisions."""
    out = _conditional(2, lam, op)
    if np.any((out < -1e-12) | (out > 1 + 1e-12)):
        raise ValueError("user-2 conditional BER outside [0, 1]: term table and mode disagree")
    return out


def ber_oma_conditional(user_index: int, lam, op: OperatingPoint):
    return _conditional(user_index, lam, op, oma=True)


@lru_cache(maxsize=8)
def _gauss_legendre(nodes: int):
    return np.polynomial.legendre.leggauss(nodes)


def _mgf_constants(lam_coef, sw, op: OperatingPoint, psi: float):
    """``(c, d)`` with ``varpi_a = 1 + c/sin^2(eta)`` and ``Upsilon_a = d/sin^2(eta)``."""
    n = op.n_elements
    c = n * (16 - math.pi**2) * op.power * psi * lam_coef / (8 * sw)
    d = n * n * math.pi**2 * op.power * psi * lam_coef / (16 * sw)
    return c, d


def _mgf_integrand(sin_eta, c, d):
    """``varpi_a^(-1/2) exp(-Upsilon_a / varpi_a)`` rewritten without 1/sin^2."""
    s2 = sin_eta * sin_eta
    return sin_eta / np.sqrt(s2 + c) * np.exp(-d / (s2 + c))


def _average(user_index, op, nodes, oma=False):
    lam_coef, weight = _terms(user_index, op, oma)
    sw = variance_terms(user_index, op, oma=oma).sigma_w
    c, d = _mgf_constants(lam_coef, sw, op, op.psi(user_index))
    # The integrand has a layer of width ~sqrt(c) at eta=0; eta = a*sinh(v)
    # with a ~ sqrt(c) spreads it over O(1) in v.
    a = np.clip(np.sqrt(c), 1e-150, 1.0)
    vmax = np.arcsinh((math.pi / 2) / a)
    x, w = _gauss_legendre(nodes)
    v = 0.5 * (x[:, None] + 1.0) * vmax
    eta = a * np.sinh(v)
    jac = 0.5 * vmax * a * np.cosh(v)
    with np.errstate(invalid="ignore", divide="ignore"):
        vals = np.where(c > 0, _mgf_integrand(np.sin(eta), c, d), 1.0)
    integral = np.sum(w[:, None] * jac * vals, axis=0)
    return float(np.sum(weight * integral) / math.pi)


def _refined(user_index, op, nodes, check, oma=False):
    val = _average(user_index, op, nodes, oma)
    if check:
        fine = _average(user_index, op, 2 * nodes, oma)
        if abs(fine - val) > REFINE_RTOL * abs(fine):
            raise QuadratureError(
                f"user {user_index}: {nodes}-node and {2 * nodes}-node results differ "
                f"({val!r} vs {fine!r})"
            )
    return val


def ber_u1_avg(op: OperatingPoint, nodes: int = DEFAULT_NODES, check: bool = True) -> float:
    return _refined(1, op, nodes, check)


def ber_u2_avg(op: OperatingPoint, nodes: int = DEFAULT_NODES, check: bool = True) -> float:
    val = _refined(2, op, nodes, check)
    if not -1e-12 <= val <= 1 + 1e-12:
        raise ValueError(f"user-2 average BER {val!r} outside [0, 1]")
    return val


def ber_avg(user_index: int, op: OperatingPoint, nodes: int = DEFAULT_NODES, check: bool = True) -> float:
    if user_index == 1:
        return ber_u1_avg(op, nodes, check)
    return ber_u2_avg(op, nodes, check)


def ber_upper(user_index: int, op: OperatingPoint) -> float:
    """Closed-form bound from freezing the Craig angle at pi/2."""
    lam_coef, weight = _terms(user_index, op)
    sw = variance_terms(user_index, op).sigma_w
    c, d = _mgf_constants(lam_coef, sw, op, op.psi(user_index))
    vals = _mgf_integrand(1.0, c, d)
    return float(0.5 * np.sum(weight * vals))


def ber_system(p1: float, p2: float) -> float:
    """Probability that at least one user mis-detects its own symbol."""
    for p in (p1, p2):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"probability out of range: {p!r}")
    return 1.0 - (1.0 - p1) * (1.0 - p2)


def ber_oma(user_index: int, op: OperatingPoint, nodes: int = DEFAULT_NODES, check: bool = True) -> float:
    """TDMA baseline: user ``user_index`` alone in its slot at full power."""
    return _refined(user_index, op, nodes, check, oma=True)


def ber_oma_system(op: OperatingPoint, nodes: int = DEFAULT_NODES, check: bool = True) -> float:
    return ber_system(ber_oma(1, op, nodes, check), ber_oma(2, op, nodes, check))


def evaluate(op: OperatingPoint, nodes: int = DEFAULT_NODES, check: bool = True) -> dict:
    """All analytic figures of merit at one operating point."""
    p1 = ber_u1_avg(op, nodes, check)
    p2 = ber_u2_avg(op, nodes, check)
    o1 = ber_oma(1, op, nodes, check)
    o2 = ber_oma(2, op, nodes, check)
    return {
        "u1": p1,
        "u2": p2,
        "system": ber_system(p1, min(max(p2, 0.0), 1.0)),
        "upper_u1": ber_upper(1, op),
        "upper_u2": ber_upper(2, op),
        "oma_u1": o1,
        "oma_u2": o2,
        "oma_system": ber_system(o1, o2),
    }
