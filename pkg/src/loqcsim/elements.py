"""Linear-optical elements and mode-unitary evolution.

A passive linear element on N modes is an N x N unitary U acting on the
creation operators: a_k^dag -> sum_j U[j, k] a_j^dag, so the columns of
U are the images of the input modes. Photon number is conserved, which
keeps evolution exact under the global cutoff.

Two independent evolution routes are provided on purpose. The default
expands each input term multinomially; the second computes transition
amplitudes from matrix permanents. They share no code beyond the state
container, so agreement between them is a meaningful consistency check.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .fock import FockError, FockState

__all__ = [
    "beam_splitter", "phase_shifter", "rotation", "polarizing_bs",
    "fourier", "embed", "apply_unitary", "apply_unitary_permanent",
    "permanent", "transition_amplitude", "apply_cross_kerr",
    "ElementSpec", "ReckDecomposition", "reck_decompose", "reck_recompose",
]


# -- element matrices ----------------------------------------------------

def beam_splitter(theta: float, phi: float = 0.0) -> np.ndarray:
    """Two-mode coupler with transmission cos^2(theta) on the diagonal.

    Convention: a1 -> cos(theta) a1 + i e^{i phi} sin(theta) a2, so a
    single photon in the first mode splits as
    (|1,0> + i|0,1>)/sqrt(2) for theta = pi/4, phi = 0.
    """
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, 1j * np.exp(-1j * phi) * s],
                     [1j * np.exp(1j * phi) * s, c]])


def phase_shifter(phi: float) -> np.ndarray:
    """Single-mode phase: |n> picks up e^{i n phi}."""
    return np.array([[np.exp(1j * phi)]])


def rotation(theta: float) -> np.ndarray:
    """Real rotation a_H -> cos a_H + sin a_V, a_V -> -sin a_H + cos a_V.

    Same physical family as the beam splitter; phi = -pi/2 turns the
    coupler real. Used for polarization rotations and wave plates.
    """
    return beam_splitter(theta, -math.pi / 2)


def polarizing_bs(kind: str = "hv") -> np.ndarray:
    """Four-mode polarizing splitter on (aH, aV, bH, bV).

    "hv": transmits horizontal, swaps vertical between the two spatial
    arms. "diag": same device rotated 45 degrees, so it transmits the
    diagonal polarization and swaps the anti-diagonal.
    """
    swap_v = np.eye(4, dtype=complex)
    swap_v[[1, 3], :] = swap_v[[3, 1], :]
    if kind == "hv":
        return swap_v
    if kind == "diag":
        r = rotation(math.pi / 4)
        r2 = np.zeros((4, 4), dtype=complex)
        r2[0:2, 0:2] = r
        r2[2:4, 2:4] = r
        return r2 @ swap_v @ r2.conj().T
    raise FockError(f"unknown polarizing splitter kind {kind!r}")


def fourier(n: int) -> np.ndarray:
    """Discrete Fourier transform matrix, F[j,k] = e^{2 pi i jk/n}/sqrt(n)."""
    j = np.arange(n)
    return np.exp(2j * math.pi * np.outer(j, j) / n) / math.sqrt(n)


def embed(unitary: np.ndarray, modes: Sequence[int], total_modes: int) -> np.ndarray:
    """Place a k-mode unitary on the given modes of a larger identity."""
    unitary = np.asarray(unitary, dtype=complex)
    k = unitary.shape[0]
    if unitary.shape != (k, k) or len(modes) != k:
        raise FockError("embed needs a square matrix matching the mode list")
    if len(set(modes)) != k or any(not 0 <= m < total_modes for m in modes):
        raise FockError(f"bad mode list {modes} for {total_modes} modes")
    full = np.eye(total_modes, dtype=complex)
    for a, ma in enumerate(modes):
        for b, mb in enumerate(modes):
            full[ma, mb] = unitary[a, b]
    return full


def _check_unitary(u: np.ndarray, tol: float = 1e-10):
    d = u.shape[0]
    if not np.allclose(u.conj().T @ u, np.eye(d), atol=tol):
        raise FockError("matrix is not unitary within tolerance")


# -- multinomial evolution (default route) -------------------------------

def _compositions(n: int, k: int):
    """All tuples of k non-negative ints summing to n."""
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def apply_unitary(state: FockState, unitary: np.ndarray,
                  modes: Sequence[int] | None = None) -> FockState:
    """Evolve a state through a linear element by multinomial expansion.

    ``unitary`` is k x k and acts on the listed modes (all modes when
    omitted). Each occupied input mode contributes a multinomial
    expansion of (sum_j U[j,k] a_j^dag)^{n_k}; products are collected
    per output occupation.
    """
    unitary = np.asarray(unitary, dtype=complex)
    if modes is None:
        modes = list(range(state.modes))
    modes = list(modes)
    k = len(modes)
    if unitary.shape != (k, k):
        raise FockError("unitary shape does not match the targeted modes")
    _check_unitary(unitary)

    # per-mode expansion cache: (column, n) -> list of (distribution, coeff)
    cache = {}

    def column_terms(col: int, n: int):
        key = (col, n)
        if key not in cache:
            out = []
            for dist in _compositions(n, k):
                coeff = math.factorial(n)
                for j, m in enumerate(dist):
                    coeff /= math.factorial(m)
                amp = complex(coeff)
                for j, m in enumerate(dist):
                    if m:
                        amp *= unitary[j, col] ** m
                if amp != 0:
                    out.append((dist, amp))
            cache[key] = out
        return cache[key]

    result = {}
    for occ, a in state.amplitudes.items():
        local = [occ[m] for m in modes]
        norm_in = 1.0
        for n in local:
            norm_in *= math.factorial(n)
        # accumulate scattered photon counts across targeted modes
        partial = [((0,) * k, a / math.sqrt(norm_in))]
        for col, n in enumerate(local):
            if n == 0:
                continue
            step = []
            for dist, amp in column_terms(col, n):
                for acc, acc_amp in partial:
                    step.append((tuple(x + y for x, y in zip(acc, dist)),
                                 acc_amp * amp))
            # merge duplicates between columns to bound the blowup
            merged = {}
            for dist, amp in step:
                merged[dist] = merged.get(dist, 0j) + amp
            partial = list(merged.items())
        for dist, amp in partial:
            out = list(occ)
            for j, m in zip(modes, dist):
                out[j] = m
            out = tuple(out)
            norm_out = 1.0
            for m in dist:
                norm_out *= math.factorial(m)
            result[out] = result.get(out, 0j) + amp * math.sqrt(norm_out)
    return FockState(state.modes, result, state.cutoff, state.truncation_loss)


# -- permanent-based evolution (independent route) ------------------------

def permanent(matrix: np.ndarray) -> complex:
    """Matrix permanent via Ryser's formula with Gray-code updates."""
    matrix = np.asarray(matrix, dtype=complex)
    n = matrix.shape[0]
    if n == 0:
        return 1.0 + 0j
    if matrix.shape != (n, n):
        raise FockError("permanent needs a square matrix")
    total = 0j
    row_sum = np.zeros(n, dtype=complex)
    gray = 0
    sign = 1 if n % 2 == 0 else -1
    for counter in range(1, 2 ** n):
        new_gray = counter ^ (counter >> 1)
        bit = new_gray ^ gray
        j = bit.bit_length() - 1
        if new_gray & bit:
            row_sum += matrix[:, j]
        else:
            row_sum -= matrix[:, j]
        gray = new_gray
        parity = -1 if bin(gray).count("1") % 2 else 1
        total += parity * np.prod(row_sum)
    return sign * total


def transition_amplitude(unitary: np.ndarray, occ_in, occ_out) -> complex:
    """<occ_out| U |occ_in> from the permanent of the repeated submatrix."""
    unitary = np.asarray(unitary, dtype=complex)
    occ_in = tuple(occ_in)
    occ_out = tuple(occ_out)
    if sum(occ_in) != sum(occ_out):
        return 0j
    cols = [k for k, n in enumerate(occ_in) for _ in range(n)]
    rows = [j for j, m in enumerate(occ_out) for _ in range(m)]
    sub = unitary[np.ix_(rows, cols)]
    norm = 1.0
    for n in occ_in:
        norm *= math.factorial(n)
    for m in occ_out:
        norm *= math.factorial(m)
    return permanent(sub) / math.sqrt(norm)


def apply_unitary_permanent(state: FockState, unitary: np.ndarray,
                            modes: Sequence[int] | None = None) -> FockState:
    """Same action as ``apply_unitary`` but from permanents, term by term.

    Exponentially slower; intended as a cross-check for small circuits.
    """
    unitary = np.asarray(unitary, dtype=complex)
    if modes is None:
        modes = list(range(state.modes))
    modes = list(modes)
    k = len(modes)
    if unitary.shape != (k, k):
        raise FockError("unitary shape does not match the targeted modes")
    _check_unitary(unitary)
    result = {}
    for occ, a in state.amplitudes.items():
        local = tuple(occ[m] for m in modes)
        n = sum(local)
        for target in _compositions(n, k):
            amp = transition_amplitude(unitary, local, target)
            if amp == 0j:
                continue
            out = list(occ)
            for j, m in zip(modes, target):
                out[j] = m
            out = tuple(out)
            result[out] = result.get(out, 0j) + a * amp
    return FockState(state.modes, result, state.cutoff, state.truncation_loss)


# -- nonlinear phase -----------------------------------------------------

def apply_cross_kerr(state: FockState, mode_a: int, mode_b: int,
                     tau: float) -> FockState:
    """Cross-Kerr phase |n_a, n_b> -> e^{i tau n_a n_b} |n_a, n_b>."""
    amps = {occ: a * np.exp(1j * tau * occ[mode_a] * occ[mode_b])
            for occ, a in state.amplitudes.items()}
    return FockState(state.modes, amps, state.cutoff, state.truncation_loss)


# -- triangular mesh decomposition ----------------------------------------

@dataclass(frozen=True)
class ElementSpec:
    """One placed element: kind 'bs' or 'ps', target modes, parameters."""
    kind: str
    modes: tuple
    params: tuple

    def matrix(self, total_modes: int) -> np.ndarray:
        if self.kind == "bs":
            return embed(beam_splitter(*self.params), self.modes, total_modes)
        if self.kind == "ps":
            return embed(phase_shifter(*self.params), self.modes, total_modes)
        raise FockError(f"unknown element kind {self.kind!r}")


@dataclass
class ReckDecomposition:
    """Factorization U = E_0 E_1 ... E_{m-1} diag(phases)."""
    size: int
    elements: list = field(default_factory=list)
    phases: np.ndarray = None

    @property
    def splitter_count(self) -> int:
        return sum(1 for e in self.elements if e.kind == "bs")


def reck_decompose(unitary: np.ndarray) -> ReckDecomposition:
    """Reduce a mode unitary to a triangular mesh of two-mode couplers.

    Nulls the lower triangle column by column with Givens-type steps,
    each realized as a phase shifter followed by a beam splitter. At
    most N(N-1)/2 splitters are produced; the leftover diagonal is
    returned as per-mode phases.
    """
    u = np.array(unitary, dtype=complex)
    n = u.shape[0]
    _check_unitary(u)
    inverse_ops = []  # elements applied on the left of U, in order
    for col in range(n - 1):
        for row in range(n - 1, col, -1):
            x = u[col, col]
            y = u[row, col]
            if abs(y) <= 1e-14:
                continue
            theta = math.atan2(abs(y), abs(x))
            delta = np.angle(x) - math.pi / 2 - np.angle(y)
            ps = embed(phase_shifter(delta), (row,), n)
            bs = embed(beam_splitter(theta, 0.0), (col, row), n)
            u = bs @ (ps @ u)
            inverse_ops.append(("ps", (row,), (delta,)))
            inverse_ops.append(("bs", (col, row), (theta, 0.0)))
    phases = np.angle(np.diag(u))
    if not np.allclose(np.abs(np.diag(u)), 1.0, atol=1e-9):
        raise FockError("triangularization left a non-diagonal remainder")
    # (B_k P_k ... B_1 P_1) U = D, so U = P_1' B_1' ... P_k' B_k' D with
    # primes denoting adjoints; daggering already reverses the order.
    elements = []
    for kind, modes, params in inverse_ops:
        if kind == "bs":
            theta, phi = params
            elements.append(ElementSpec("bs", modes, (-theta, phi)))
        else:
            elements.append(ElementSpec("ps", modes, (-params[0],)))
    return ReckDecomposition(size=n, elements=elements, phases=phases)


def reck_recompose(dec: ReckDecomposition) -> np.ndarray:
    u = np.diag(np.exp(1j * dec.phases))
    for element in reversed(dec.elements):
        u = element.matrix(dec.size) @ u
    return u
