"""Photon counting, detector imperfections and heralding checks.

Detectors are diagonal in the Fock basis, so imperfect detection is a
classical channel applied to ideal photon-count statistics: a quantum
efficiency eta thins each photon independently, a bucket detector then
collapses counts to click or no click, and dark counts add a Poisson
background. Conditional states for a reported outcome are mixtures over
the true signatures compatible with it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .fock import DEFAULT_CUTOFF, FockError, FockState, StateEnsemble

__all__ = [
    "DetectorModel", "OutcomeDistribution",
    "povm_number_resolving", "povm_bucket",
    "measure_modes", "post_select", "test_operator",
    "distinguishability_check",
]


# -- POVMs ---------------------------------------------------------------

def povm_number_resolving(eta: float, cutoff: int = DEFAULT_CUTOFF) -> list:
    """Diagonals of the POVM elements of a lossy counting detector.

    Element n reports n photons; its weight on |k><k| is the chance of
    exactly n survivors out of k under independent loss:
    C(k, n) eta^n (1 - eta)^(k - n). Returns a list of arrays over
    photon number 0..cutoff, one per reported count.
    """
    if not 0.0 <= eta <= 1.0:
        raise FockError("detector efficiency must lie in [0, 1]")
    elements = []
    for n in range(cutoff + 1):
        diag = np.zeros(cutoff + 1)
        for k in range(n, cutoff + 1):
            diag[k] = math.comb(k, n) * eta ** n * (1.0 - eta) ** (k - n)
        elements.append(diag)
    return elements


def povm_bucket(eta: float, cutoff: int = DEFAULT_CUTOFF) -> tuple:
    """(no-click, click) POVM diagonals of a threshold detector."""
    if not 0.0 <= eta <= 1.0:
        raise FockError("detector efficiency must lie in [0, 1]")
    n = np.arange(cutoff + 1)
    miss = (1.0 - eta) ** n
    return miss, 1.0 - miss


@dataclass(frozen=True)
class DetectorModel:
    """Detection channel: response kind, efficiency and dark counts.

    ``dark_rate`` is the mean Poisson dark-count number per window.
    Number-resolving detectors report true survivors plus dark counts;
    bucket detectors report a click when either fires.
    """
    kind: str = "number_resolving"
    efficiency: float = 1.0
    dark_rate: float = 0.0
    max_photons: int = DEFAULT_CUTOFF

    def __post_init__(self):
        if self.kind not in ("number_resolving", "bucket"):
            raise FockError(f"unknown detector kind {self.kind!r}")
        if not 0.0 <= self.efficiency <= 1.0:
            raise FockError("detector efficiency must lie in [0, 1]")
        if self.dark_rate < 0.0:
            raise FockError("dark rate cannot be negative")

    def response(self, true_count: int) -> dict:
        """Map a true photon number to reported-outcome probabilities."""
        eta, nu = self.efficiency, self.dark_rate
        survive = {}
        for d in range(true_count + 1):
            survive[d] = math.comb(true_count, d) * eta ** d * (1 - eta) ** (true_count - d)
        if self.kind == "bucket":
            p_dark_none = math.exp(-nu)
            p_none = survive.get(0, 0.0) * p_dark_none
            return {0: p_none, 1: 1.0 - p_none}
        if nu == 0.0:
            return survive
        out = {}
        # fold in Poisson dark counts, truncating the tail below 1e-15
        tail = 1.0
        d = 0
        while tail > 1e-15 and d <= self.max_photons + 20:
            p_dark = math.exp(-nu) * nu ** d / math.factorial(d)
            for k, p in survive.items():
                out[k + d] = out.get(k + d, 0.0) + p * p_dark
            tail -= p_dark
            d += 1
        return out


IDEAL_DETECTOR = DetectorModel()


# -- measurement ----------------------------------------------------------

@dataclass
class OutcomeDistribution:
    """Joint outcome statistics of counting a subset of modes.

    ``probabilities`` maps reported signatures (counts per measured
    mode) to probabilities; ``conditionals`` maps each signature to the
    post-measurement state of the unmeasured modes, a pure state when a
    single true signature is compatible and an ensemble otherwise.
    """
    measured_modes: tuple
    probabilities: dict = field(default_factory=dict)
    conditionals: dict = field(default_factory=dict)

    def probability(self, signature) -> float:
        return self.probabilities.get(tuple(signature), 0.0)

    def conditional(self, signature):
        return self.conditionals.get(tuple(signature))

    def sample(self, rng: np.random.Generator):
        sigs = sorted(self.probabilities)
        weights = np.array([self.probabilities[s] for s in sigs])
        total = weights.sum()
        idx = rng.choice(len(sigs), p=weights / total)
        return sigs[idx]


def _split_by_signature(state: FockState, modes: Sequence[int]):
    """Group amplitudes by measured-mode counts; conditionals keep the rest."""
    modes = list(modes)
    keep = [m for m in range(state.modes) if m not in modes]
    groups = {}
    for occ, a in state.amplitudes.items():
        sig = tuple(occ[m] for m in modes)
        rest = tuple(occ[m] for m in keep)
        bucket = groups.setdefault(sig, {})
        bucket[rest] = bucket.get(rest, 0j) + a
    out = {}
    for sig, amps in groups.items():
        cond = FockState(len(keep), amps, state.cutoff)
        p = cond.norm_sq()
        if p > 0.0:
            out[sig] = (p, cond.normalized())
    return out


def measure_modes(state: FockState, modes: Sequence[int],
                  detector: DetectorModel = IDEAL_DETECTOR) -> OutcomeDistribution:
    """Count photons on the given modes through a detector model.

    With an ideal detector the reported signatures are the true ones
    and every conditional is pure. Otherwise reported signatures mix
    true ones, and conditionals become ensembles weighted by the
    posterior over true signatures.
    """
    modes = tuple(modes)
    ideal = _split_by_signature(state, modes)
    is_ideal = (detector.kind == "number_resolving"
                and detector.efficiency == 1.0 and detector.dark_rate == 0.0)
    dist = OutcomeDistribution(measured_modes=modes)
    if is_ideal:
        for sig, (p, cond) in ideal.items():
            dist.probabilities[sig] = p
            dist.conditionals[sig] = cond
        return dist

    responses = {}
    reported = {}
    for sig, (p_true, cond) in ideal.items():
        per_mode = []
        for count in sig:
            if count not in responses:
                responses[count] = detector.response(count)
            per_mode.append(responses[count])
        for combo in itertools.product(*(r.items() for r in per_mode)):
            rep = tuple(k for k, _ in combo)
            p_rep = p_true
            for _, q in combo:
                p_rep *= q
            if p_rep <= 0.0:
                continue
            entry = reported.setdefault(rep, [])
            entry.append((p_rep, cond))
    for rep, branches in reported.items():
        total = sum(p for p, _ in branches)
        dist.probabilities[rep] = total
        if len(branches) == 1:
            dist.conditionals[rep] = branches[0][1]
        else:
            dist.conditionals[rep] = StateEnsemble(
                [(p / total, s) for p, s in branches])
    return dist


def post_select(state: FockState, modes: Sequence[int], pattern) -> tuple:
    """Ideal projection of the listed modes onto exact photon counts.

    Returns (probability, conditional state on the remaining modes);
    the conditional is None when the pattern has no support.
    """
    pattern = tuple(pattern)
    groups = _split_by_signature(state, modes)
    if pattern not in groups:
        return 0.0, None
    p, cond = groups[pattern]
    return p, cond


# -- heralding diagnostics -------------------------------------------------

def test_operator(evolved: Sequence[FockState], herald_modes: Sequence[int],
                  herald_pattern, atol: float = 1e-8) -> tuple:
    """Decide whether a heralded circuit acts unitarily on a code space.

    ``evolved`` holds the images of an orthonormal logical basis after
    the full circuit (ancilla included). With P the projector onto the
    herald pattern, the matrix T[i, j] = <evolved_i| P |evolved_j> is
    proportional to the identity exactly when the heralded map is a
    scaled isometry on the code space; the proportionality constant is
    the success probability. Returns (T, is_proportional, probability).
    """
    herald_pattern = tuple(herald_pattern)
    projected = []
    for s in evolved:
        p, cond = post_select(s, herald_modes, herald_pattern)
        projected.append((p, cond))
    d = len(evolved)
    t = np.zeros((d, d), dtype=complex)
    for i, (pi, ci) in enumerate(projected):
        for j, (pj, cj) in enumerate(projected):
            if ci is None or cj is None:
                continue
            t[i, j] = math.sqrt(pi * pj) * ci.inner(cj)
    mean = np.trace(t) / d
    ok = bool(np.allclose(t, mean * np.eye(d), atol=atol) and mean.imag < atol)
    return t, ok, float(mean.real)


def _number_weight(occ, mode_multiset) -> int:
    w = 1
    for m in mode_multiset:
        w *= occ[m]
    return w


def distinguishability_check(states: Sequence[FockState], max_order: int = 2,
                             atol: float = 1e-9) -> list:
    """Cross terms of photon-number observables between heralded branches.

    For distinct branches k != l every expectation
    <chi_k| n_{j1} n_{j2} ... |chi_l> built from up to ``max_order``
    number operators must vanish, otherwise counting photons leaks
    which-branch information. Returns the list of violations as
    (k, l, mode tuple, value); empty means indistinguishable.
    """
    if not states:
        return []
    modes = states[0].modes
    violations = []
    for k in range(len(states)):
        for l in range(k + 1, len(states)):
            for order in range(0, max_order + 1):
                for ms in itertools.combinations_with_replacement(range(modes), order):
                    val = 0j
                    for occ, a in states[l].amplitudes.items():
                        b = states[k].amplitudes.get(occ)
                        if b is None:
                            continue
                        val += b.conjugate() * a * _number_weight(occ, ms)
                    if abs(val) > atol:
                        violations.append((k, l, ms, val))
    return violations
