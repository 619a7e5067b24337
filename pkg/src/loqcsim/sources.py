"""Single-photon source models: spectra, correlations and heralding.

A pulsed source is described by its single-photon amplitude f_m over
integer frequency modes m = 1..N; time is measured in units of pi L/c
so every counting curve is 2*pi periodic.  Includes the binomial and
Lorentzian spectral families, time-bin correlation functions, the
Hong-Ou-Mandel coincidence overlap, parametric down-conversion and
heralded single photons through realistic detectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuits import mirror_splitter
from .elements import apply_unitary
from .fock import DEFAULT_CUTOFF, FockError, FockState, StateEnsemble, basis_state
from .measurement import IDEAL_DETECTOR, DetectorModel, measure_modes

__all__ = [
    "SpectralAmplitude", "binomial_amplitudes", "lorentzian_amplitudes",
    "lorentzian_printed_constant", "counting_rate", "time_bin_amplitude",
    "two_photon_g2", "hom_coincidence", "hom_coincidence_brute",
    "pdc_state", "pdc_pair_probability",
    "heralded_single_photon", "imperfect_single_photon",
]

_NORM_TOL = 1e-10
_SINGULAR_TOL = 1e-6


@dataclass(frozen=True)
class SpectralAmplitude:
    """Unit-norm amplitudes f_1..f_N over integer frequencies."""
    amplitudes: tuple
    kind: str = "custom"
    carrier: float = 0.0

    def __post_init__(self):
        amps = tuple(complex(a) for a in self.amplitudes)
        object.__setattr__(self, "amplitudes", amps)
        if not amps:
            raise FockError("spectral amplitude needs at least one mode")
        norm = sum(abs(a) ** 2 for a in amps)
        if abs(norm - 1.0) > _NORM_TOL:
            raise FockError(f"spectral amplitudes not normalized: {norm!r}")

    @property
    def n_modes(self) -> int:
        return len(self.amplitudes)

    def array(self) -> np.ndarray:
        return np.asarray(self.amplitudes, dtype=complex)

    def overlap(self, other: "SpectralAmplitude") -> complex:
        if other.n_modes != self.n_modes:
            raise FockError("spectra live on different mode ranges")
        return complex(np.vdot(other.array(), self.array()))


def binomial_amplitudes(N: int, mu: float) -> SpectralAmplitude:
    """f_m proportional to C(N,m)^(1/2) mu^(m/2) (1-mu)^((N-m)/2).

    The carrier (dominant) frequency is mu*N; at fixed carrier the
    profile tends to a Poisson shape as N grows.
    """
    if N < 1:
        raise FockError("mode cutoff must be at least 1")
    if not 0.0 < mu <= 0.5:
        raise FockError("mu must lie in (0, 0.5]")
    m = np.arange(1, N + 1)
    log_comb = (np.array([math.lgamma(N + 1) for _ in m])
                - np.array([math.lgamma(k + 1) for k in m])
                - np.array([math.lgamma(N - k + 1) for k in m]))
    log_f = 0.5 * (log_comb + m * math.log(mu) + (N - m) * math.log1p(-mu))
    norm = 1.0 - (1.0 - mu) ** N
    amps = np.exp(log_f) / math.sqrt(norm)
    amps /= np.linalg.norm(amps)
    return SpectralAmplitude(tuple(amps), kind="binomial", carrier=mu * N)


def lorentzian_printed_constant(mu: float) -> float:
    """Large-N normalization constant as usually quoted; kept for
    reference only, the constructors normalize numerically."""
    z = mu * math.pi
    return math.pi * math.exp(z) / (2.0 * math.sinh(z)) - 1.0 / (2.0 * mu)


def lorentzian_amplitudes(N: int, mu: float) -> SpectralAmplitude:
    """f_n proportional to sqrt(mu)/(mu + i n), renormalized at finite N."""
    if N < 1:
        raise FockError("mode cutoff must be at least 1")
    if mu <= 0.0:
        raise FockError("mu must be positive")
    n = np.arange(1, N + 1)
    amps = math.sqrt(mu) / (mu + 1j * n)
    amps = amps / np.linalg.norm(amps)
    return SpectralAmplitude(tuple(amps), kind="lorentzian", carrier=mu)


def counting_rate(f: SpectralAmplitude, t):
    """n(t) = |sum_k f_k exp(-i k t)|^2, per unit time, 2*pi periodic."""
    times = np.atleast_1d(np.asarray(t, dtype=float))
    k = np.arange(1, f.n_modes + 1)
    phases = np.exp(-1j * np.outer(times, k))
    values = np.abs(phases @ f.array()) ** 2
    return float(values[0]) if np.isscalar(t) or np.ndim(t) == 0 else values


def time_bin_amplitude(mu_bin: int, t: float, N: int) -> complex:
    """g_mu(t) = N^(-1/2) / (1 - exp(i(mu*tau - t))), tau = 2*pi/N.

    The printed expansion functions are singular where the pulse sits;
    sample points within 1e-6 of mu*tau (mod 2*pi) are rejected.
    """
    if not 1 <= mu_bin <= N:
        raise FockError("time-bin index out of range")
    tau = 2.0 * math.pi / N
    arg = mu_bin * tau - t
    wrapped = math.remainder(arg, 2.0 * math.pi)
    if abs(wrapped) < _SINGULAR_TOL:
        raise FockError(f"sample point t={t!r} sits on the bin-{mu_bin} singularity")
    return 1.0 / (math.sqrt(N) * (1.0 - np.exp(1j * arg)))


def two_photon_g2(mu_bin: int, nu_bin: int, t: float, T: float, N: int) -> float:
    """Second-order correlation of the two-pulse state |1_mu, 1_nu>.

    G2 = |g_mu(t) g_nu(t+T) + g_nu(t) g_mu(t+T)|^2: vanishing near
    T = 0 for separated pulses (anti-bunching) and peaking near
    T = |mu-nu| tau.
    """
    if mu_bin == nu_bin:
        raise FockError("time bins must differ")
    a = time_bin_amplitude(mu_bin, t, N) * time_bin_amplitude(nu_bin, t + T, N)
    b = time_bin_amplitude(nu_bin, t, N) * time_bin_amplitude(mu_bin, t + T, N)
    return abs(a + b) ** 2


def hom_coincidence(alpha: SpectralAmplitude, beta: SpectralAmplitude) -> float:
    """Coincidence probability after a 50:50 splitter.

    C = 1/2 - (1/2) |sum_n alpha_n beta_n^*|^2: zero for identical
    wave packets, 1/2 for fully distinguishable ones.
    """
    return 0.5 - 0.5 * abs(alpha.overlap(beta)) ** 2


def hom_coincidence_brute(alpha: SpectralAmplitude,
                          beta: SpectralAmplitude) -> float:
    """Coincidence probability from an explicit two-photon simulation.

    One photon per spatial arm, each spread over the spectral modes of
    its amplitude; a 50:50 splitter acts bin by bin and the coincidence
    mass is read off the full outcome distribution.  Routes the same
    question as :func:`hom_coincidence` through the Fock machinery.
    """
    if beta.n_modes != alpha.n_modes:
        raise FockError("spectra live on different mode ranges")
    d = alpha.n_modes
    amps = {}
    for n, a in enumerate(alpha.amplitudes):
        for m, b in enumerate(beta.amplitudes):
            occ = [0] * (2 * d)
            occ[n] += 1
            occ[d + m] += 1
            key = tuple(occ)
            amps[key] = amps.get(key, 0j) + a * b
    state = FockState(2 * d, amps, cutoff=4)
    splitter = mirror_splitter(math.pi / 4.0)
    for n in range(d):
        state = apply_unitary(state, splitter, modes=[n, d + n])
    return sum(abs(a) ** 2 for occ, a in state.amplitudes.items()
               if sum(occ[:d]) == 1)


def pdc_state(lam: complex, cutoff: int = 25) -> FockState:
    """Two-mode squeezed vacuum sqrt(1-|lam|^2) sum lam^n |n,n>.

    Truncated at the cutoff without renormalizing, so the missing
    geometric tail stays visible in the norm.
    """
    if abs(lam) >= 1.0:
        raise FockError("squeezing parameter must satisfy |lambda| < 1")
    scale = math.sqrt(1.0 - abs(lam) ** 2)
    amps = {(n, n): scale * lam ** n for n in range(cutoff + 1)}
    return FockState(2, amps, cutoff=max(2 * cutoff, DEFAULT_CUTOFF))


def pdc_pair_probability(lam: complex, n: int) -> float:
    """p(n) = (1-|lam|^2)|lam|^(2n), the bunched pair distribution."""
    return (1.0 - abs(lam) ** 2) * abs(lam) ** (2 * n)


def heralded_single_photon(lam: complex, detector: DetectorModel = IDEAL_DETECTOR,
                           cutoff: int = 25) -> StateEnsemble:
    """Signal state of a PDC pair conditioned on a herald detection.

    The herald arm is measured with the given detector; a bucket
    detector accepts any click, a number-resolving one demands exactly
    one count.  With an ideal bucket herald the fidelity to |1> is
    1 - |lambda|^2, deteriorating as the pump strength grows.
    """
    state = pdc_state(lam, cutoff)
    dist = measure_modes(state, [0], detector)
    branches = []
    for signature, prob in dist.probabilities.items():
        count = signature[0]
        wanted = count >= 1 if detector.kind == "bucket" else count == 1
        if not wanted or prob <= 0.0:
            continue
        cond = dist.conditional(signature)
        if isinstance(cond, StateEnsemble):
            branches.extend((prob * q, s) for q, s in cond.branches)
        else:
            branches.append((prob, cond))
    if not branches:
        raise FockError("herald never clicks for this source setting")
    return StateEnsemble(branches)


def imperfect_single_photon(p: float, cutoff: int = DEFAULT_CUTOFF) -> StateEnsemble:
    """Mixed source p |1><1| + (1-p) |0><0| on a single mode."""
    if not 0.0 <= p <= 1.0:
        raise FockError("emission probability must lie in [0, 1]")
    branches = [(p, basis_state((1,), cutoff)), (1.0 - p, basis_state((0,), cutoff))]
    return StateEnsemble(branches)
