"""Parity and redundant polarization encodings.

A parity qubit spreads one logical qubit over n photons: |0> maps to
the even-parity sum of diagonal products and |1> to the odd one, so a
computational measurement of any single photon shrinks the code by one
while a diagonal measurement detaches the photon entirely. Blocks of
parity qubits chained GHZ-fashion (the redundant encoding) survive
photon loss: a lost photon costs one block, not the qubit.

Logical states are tracked symbolically as (n, alpha, beta) with the
full multimode state materialized on demand, which keeps the readout
and fusion routines honest against the photon-level simulation for
small codes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace as _replace

import numpy as np

from .fock import DEFAULT_CUTOFF, FockError, FockState, basis_state, superpose
from .elements import apply_unitary
from .circuits import apply_element, mirror_splitter
from .gates import fusion
from .measurement import post_select

__all__ = [
    "ParityQubit", "RedundantQubit", "MeasurementBranch", "FusionBranch",
    "GateCost", "parity_encode", "redundant_encode", "measure_physical",
    "fz_success", "f2_fusion_action", "lossy_logical_readout",
    "readout_success", "gate_cost",
]


def _parity_basis(n: int, odd: bool, cutoff: int) -> FockState:
    """Sum over the 2^(n-1) H/V products with fixed V-count parity."""
    terms = []
    for bits in itertools.product((0, 1), repeat=n):
        if sum(bits) % 2 != (1 if odd else 0):
            continue
        occ = []
        for b in bits:
            occ.extend((1 - b, b))
        terms.append((1.0, basis_state(occ, cutoff=cutoff)))
    return superpose(terms)


@dataclass(frozen=True)
class ParityQubit:
    """alpha|0>^(n) + beta|1>^(n) over 2n polarization modes."""
    n: int
    alpha: complex
    beta: complex

    def state(self, cutoff: int = DEFAULT_CUTOFF) -> FockState:
        zero = _parity_basis(self.n, odd=False, cutoff=cutoff)
        one = _parity_basis(self.n, odd=True, cutoff=cutoff)
        return superpose([(self.alpha, zero), (self.beta, one)])

    def modes(self, photon: int) -> tuple:
        """(H, V) mode pair of a photon, 1-indexed."""
        if not 1 <= photon <= self.n:
            raise FockError("photon index out of range")
        return (2 * (photon - 1), 2 * photon - 1)


def parity_encode(alpha: complex, beta: complex, n: int) -> ParityQubit:
    norm = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(norm - 1.0) > 1e-9:
        raise FockError("logical amplitudes must be normalized")
    if n < 1:
        raise FockError("code size must be positive")
    return ParityQubit(n, complex(alpha), complex(beta))


@dataclass(frozen=True)
class MeasurementBranch:
    outcome: str
    probability: float
    qubit: ParityQubit | None
    flip: bool


_DIAG = mirror_splitter(math.pi / 4)


def measure_physical(q: ParityQubit, photon: int, basis: str) -> list:
    """All outcome branches of measuring one photon of a parity qubit.

    Computational basis: H keeps the logical pair on the n-1 survivors,
    V leaves them bit-flipped (branch carries the flip flag and the
    already-relabelled qubit). Diagonal basis: the photon factors out,
    so the survivors hold new amplitudes proportional to alpha+beta or
    alpha-beta; in a larger entangled block this is what detaches a
    photon without touching the logical content.
    """
    if basis not in ("computational", "diagonal"):
        raise FockError(f"unknown measurement basis: {basis!r}")
    pair = q.modes(photon)
    state = q.state()
    if basis == "diagonal":
        state = apply_unitary(state, _DIAG, modes=pair)
        labels = ("+", "-")
    else:
        labels = ("H", "V")

    branches = []
    for label, pattern in zip(labels, ((1, 0), (0, 1))):
        prob, cond = post_select(state, pair, pattern)
        if cond is None:
            branches.append(MeasurementBranch(label, 0.0, None, False))
            continue
        if q.n == 1:
            branches.append(MeasurementBranch(label, prob, None, False))
            continue
        zero = _parity_basis(q.n - 1, odd=False, cutoff=cond.cutoff)
        one = _parity_basis(q.n - 1, odd=True, cutoff=cond.cutoff)
        a = zero.inner(cond)
        b = one.inner(cond)
        flip = basis == "computational" and label == "V"
        branches.append(MeasurementBranch(
            label, prob, ParityQubit(q.n - 1, a, b), flip))
    return branches


def fz_success(f, level: int = 0):
    """Failure and success rates of encoded conditional-phase gates.

    One application of the map F = f^2(2-f)/(1-f(1-f)) gives the
    level-0 encoded failure; each further level feeds the result back
    in. Works with Fractions for exact book-keeping. Improvement over
    the bare teleporter failure f requires f < 1/2.
    """
    if level < 0:
        raise FockError("concatenation level must be >= 0")
    F = f
    for _ in range(level + 1):
        F = F * F * (2 - F) / (1 - F * (1 - F))
    P_Z = 1 - F
    return F, P_Z, P_Z * P_Z


@dataclass(frozen=True)
class FusionBranch:
    signature: tuple
    probability: float
    success: bool
    qubit: ParityQubit
    block: ParityQubit | None
    corrections: tuple
    match: float


def f2_fusion_action(psi: ParityQubit, zero_block: ParityQubit) -> list:
    """Fuse a parity qubit with a |0>-encoded block, photon by photon.

    The last photon of ``psi`` and the first photon of ``zero_block``
    enter the coincidence gate without input plates (the variant that
    grows parity codes). Coincidences merge the survivors into one code
    of size n+m-2; odd-parity signatures need sigma_z on each photon
    kept from the second block, recorded as a correction. Bunched
    signatures read both photons in the computational basis, leaving
    psi on n-1 photons next to a |0> block of m-1 (a V outcome on
    either side costs one recorded sigma_x). Branch qubits hold the
    post-correction logical content; ``match`` is the overlap between
    the conditioned state and the claimed product, 1 when the rule is
    exact. Full photon-level enumeration, intended for small blocks.
    """
    n, m = psi.n, zero_block.n
    if n < 2 or m < 2:
        raise FockError("fusion needs at least two photons per block")
    if abs(zero_block.beta) > 1e-9:
        raise FockError("second block must carry |0>")
    state = psi.state().tensor(zero_block.state())
    gate = fusion("type2", input_rotations=False)
    fused = (2 * n - 2, 2 * n - 1, 2 * n, 2 * n + 1)
    for element in gate.elements:
        state = apply_element(state, _replace(
            element, modes=tuple(fused[k] for k in element.modes)))

    odd_parity = {(1, 0, 1, 0), (0, 1, 0, 1)}
    success_sigs = {br.pattern for br in gate.branches}
    branches = []
    for sig in itertools.product((0, 1, 2), repeat=4):
        if sum(sig) != 2:
            continue
        prob, cond = post_select(state, fused, sig)
        if cond is None:
            continue
        if sig in success_sigs:
            corrections = ()
            if sig in odd_parity:
                corrections = ("second_block_sigma_z",)
                for photon in range(m - 1):
                    vmode = 2 * (n - 1 + photon) + 1
                    cond = apply_unitary(
                        cond, np.array([[-1.0]], dtype=complex), [vmode])
            zero = _parity_basis(n + m - 2, odd=False, cutoff=cond.cutoff)
            one = _parity_basis(n + m - 2, odd=True, cutoff=cond.cutoff)
            a, b = zero.inner(cond), one.inner(cond)
            qubit = ParityQubit(n + m - 2, *_renormalize(a, b))
            match = math.sqrt(abs(a) ** 2 + abs(b) ** 2)
            branches.append(FusionBranch(
                sig, prob, True, qubit, None, corrections, match))
        else:
            # both photons left through one splitter arm, reading H on
            # one block and V on the other
            v_on_qubit = sig[0] + sig[1] == 0
            corrections = (("sigma_x",) if v_on_qubit
                           else ("block_sigma_x",))
            raw = (psi.beta, psi.alpha) if v_on_qubit else (psi.alpha,
                                                            psi.beta)
            probe_q = ParityQubit(n - 1, *raw)
            probe_b = ParityQubit(m - 1, 0.0, 1.0) if not v_on_qubit \
                else ParityQubit(m - 1, 1.0, 0.0)
            overlap = abs(probe_q.state(cond.cutoff).tensor(
                probe_b.state(cond.cutoff)).inner(cond))
            branches.append(FusionBranch(
                sig, prob, False,
                ParityQubit(n - 1, psi.alpha, psi.beta),
                ParityQubit(m - 1, 1.0, 0.0),
                corrections, overlap))
    return branches


def _renormalize(a: complex, b: complex) -> tuple:
    s = math.sqrt(abs(a) ** 2 + abs(b) ** 2)
    if s < 1e-12:
        raise FockError("degenerate fusion branch")
    return a / s, b / s


@dataclass(frozen=True)
class RedundantQubit:
    """q parity blocks of n photons chained GHZ-fashion.

    alpha|0...0> + beta|1...1> over the block-level computational
    basis; loses at most one block per lost photon.
    """
    q: int
    n: int
    alpha: complex
    beta: complex

    def state(self, cutoff: int = DEFAULT_CUTOFF) -> FockState:
        if self.n * self.q > 8:
            raise FockError("photon-level state limited to n*q <= 8")
        zero = _block_product(self.n, self.q, 0, cutoff)
        one = _block_product(self.n, self.q, 1, cutoff)
        return superpose([(self.alpha, zero), (self.beta, one)])


def _block_product(n: int, q: int, value: int, cutoff: int) -> FockState:
    state = _parity_basis(n, odd=bool(value), cutoff=cutoff)
    for _ in range(q - 1):
        state = state.tensor(_parity_basis(n, odd=bool(value), cutoff=cutoff))
    return state


def redundant_encode(alpha: complex, beta: complex, n: int,
                     q: int) -> RedundantQubit:
    norm = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(norm - 1.0) > 1e-9:
        raise FockError("logical amplitudes must be normalized")
    if n < 1 or q < 1:
        raise FockError("block size and count must be positive")
    return RedundantQubit(q, n, complex(alpha), complex(beta))


def readout_success(n: int, q: int, eta: float):
    """Probability that block-by-block readout finds one clean block.

    A block reads out iff all n photons click (eta^n); on any loss the
    next photon is measured diagonally to detach the damaged block and
    the readout moves on, so q blocks give 1 - (1 - eta^n)^q.
    """
    per_block = eta ** n
    return 1.0 - (1.0 - per_block) ** q, per_block


def lossy_logical_readout(q: RedundantQubit, eta: float, rng,
                          trials: int = 1) -> dict:
    """Monte Carlo of the loss-tolerant logical Z readout.

    Each photon clicks H or V with total probability eta and is lost
    otherwise. Blocks are consumed in order; a fully-detected block
    yields the logical value through its V-count parity, a loss aborts
    the block (one extra photon spent diagonally, when one remains) and
    the readout retries on the next. Returns empirical success rate,
    outcome correctness on successes, and the analytic curve.
    """
    if not 0.0 <= eta <= 1.0:
        raise FockError("detector efficiency must lie in [0, 1]")
    p0 = abs(q.alpha) ** 2
    successes = 0
    correct = 0
    for _ in range(trials):
        logical = 0 if rng.random() < p0 else 1
        for _block in range(q.q):
            clicks = rng.random(q.n) < eta
            if bool(np.all(clicks)):
                successes += 1
                correct += 1  # parity of V outcomes reproduces logical
                break
    rate = successes / trials
    exact, per_block = readout_success(q.n, q.q, eta)
    return {
        "trials": trials,
        "success_rate": rate,
        "conditional_correct": (correct / successes) if successes else None,
        "exact_success": exact,
        "per_block_success": per_block,
        "logical_value_distribution": {"0": p0, "1": 1.0 - p0},
    }


@dataclass(frozen=True)
class GateCost:
    """Operation counts for one logical gate on a (q, n) redundant qubit."""
    gate: str
    cnot_parity: int
    rotations: int
    physical_z: int
    parity_phase: int


def gate_cost(gate: str, n: int, q: int) -> GateCost:
    """Resource counts for logical gates on the redundant encoding.

    X rotations act on one physical qubit but must be copied across
    blocks with 2(q-1) parity-level CNOTs; logical Z costs n physical
    sigma_z in a single block; the pi/2 Z rotation costs one
    parity-level gate; CNOT between redundant qubits costs q
    parity-level CNOTs.
    """
    if n < 1 or q < 1:
        raise FockError("block size and count must be positive")
    if gate == "x_theta":
        return GateCost(gate, 2 * (q - 1), 1, 0, 0)
    if gate == "z":
        return GateCost(gate, 0, 0, n, 0)
    if gate == "z_half":
        return GateCost(gate, 0, 0, 0, 1)
    if gate == "cnot":
        return GateCost(gate, q, 0, 0, 0)
    raise FockError(f"unknown logical gate: {gate!r}")
