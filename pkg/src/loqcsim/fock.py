"""Sparse multimode Fock-state core.

States live in a bosonic Fock space over a fixed number of discrete
optical modes. Amplitudes are stored sparsely, keyed by occupation
tuples (photons per mode), because every protocol in this toolkit stays
below roughly ten photons spread over a dozen modes. Dense matrices are
only formed on demand and only below a configurable basis-size limit.

Conventions
-----------
* An occupation vector is a tuple of non-negative ints, one per mode.
* A global total-photon cutoff (default 12) bounds every stored term.
  Operations that would push a term past the cutoff drop it and record
  the lost squared amplitude in ``truncation_loss``.
* Polarization is encoded as two consecutive modes per spatial mode,
  horizontal at the even index.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping, Sequence

import numpy as np

DEFAULT_CUTOFF = 12
PRUNE_THRESHOLD = 1e-14
DENSE_BASIS_LIMIT = 2048

Occupation = tuple


class FockError(ValueError):
    """Raised for malformed states, mode mismatches or cutoff overflow."""


def _validate_occupation(occ, modes, cutoff):
    if len(occ) != modes:
        raise FockError(f"occupation {occ} has {len(occ)} modes, expected {modes}")
    if any(n < 0 or n != int(n) for n in occ):
        raise FockError(f"occupation {occ} has negative or non-integer entries")
    if sum(occ) > cutoff:
        raise FockError(f"occupation {occ} carries {sum(occ)} photons, cutoff is {cutoff}")


class FockState:
    """Pure state as a sparse map from occupation tuples to amplitudes.

    Instances are treated as immutable; all operations return new
    states. ``truncation_loss`` accumulates squared amplitude discarded
    by cutoff truncation anywhere in the state's history.
    """

    __slots__ = ("modes", "cutoff", "amplitudes", "truncation_loss")

    def __init__(self, modes: int, amplitudes: Mapping | None = None,
                 cutoff: int = DEFAULT_CUTOFF, truncation_loss: float = 0.0):
        self.modes = int(modes)
        self.cutoff = int(cutoff)
        amps = {}
        if amplitudes:
            for occ, a in amplitudes.items():
                if abs(a) <= PRUNE_THRESHOLD:
                    continue
                amps[tuple(int(n) for n in occ)] = complex(a)
        self.amplitudes = amps
        self.truncation_loss = float(truncation_loss)

    # -- basic queries -------------------------------------------------

    def norm_sq(self) -> float:
        return sum(abs(a) ** 2 for a in self.amplitudes.values())

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def total_photons(self):
        """Set of total photon numbers present across stored terms."""
        return {sum(occ) for occ in self.amplitudes}

    def amplitude(self, occ) -> complex:
        return self.amplitudes.get(tuple(occ), 0j)

    def probability(self, occ) -> float:
        return abs(self.amplitude(occ)) ** 2

    def terms(self):
        return self.amplitudes.items()

    def __len__(self):
        return len(self.amplitudes)

    def __repr__(self):
        parts = []
        for occ, a in sorted(self.amplitudes.items())[:6]:
            parts.append(f"{a:.4g}|{','.join(map(str, occ))}>")
        more = " ..." if len(self.amplitudes) > 6 else ""
        return f"FockState({' + '.join(parts)}{more})"

    # -- algebra -------------------------------------------------------

    def normalized(self) -> "FockState":
        n = self.norm()
        if n == 0.0:
            raise FockError("cannot normalize a zero state")
        return FockState(self.modes,
                         {occ: a / n for occ, a in self.amplitudes.items()},
                         self.cutoff, self.truncation_loss)

    def scaled(self, factor: complex) -> "FockState":
        return FockState(self.modes,
                         {occ: a * factor for occ, a in self.amplitudes.items()},
                         self.cutoff, self.truncation_loss)

    def add(self, other: "FockState") -> "FockState":
        """Unnormalized sum; modes and cutoff must match."""
        if other.modes != self.modes:
            raise FockError("mode count mismatch in state sum")
        amps = dict(self.amplitudes)
        for occ, a in other.amplitudes.items():
            amps[occ] = amps.get(occ, 0j) + a
        return FockState(self.modes, amps, min(self.cutoff, other.cutoff),
                         self.truncation_loss + other.truncation_loss)

    def inner(self, other: "FockState") -> complex:
        """<self|other>."""
        if other.modes != self.modes:
            raise FockError("mode count mismatch in inner product")
        small, large = self.amplitudes, other.amplitudes
        if len(large) < len(small):
            return sum(large[occ].conjugate() * small[occ]
                       for occ in large.keys() & small.keys())
        return sum(small[occ].conjugate() * large[occ]
                   for occ in small.keys() & large.keys())

    def tensor(self, other: "FockState") -> "FockState":
        """Tensor product, modes of ``other`` appended after ``self``."""
        cutoff = min(self.cutoff, other.cutoff)
        amps = {}
        for occ_a, a in self.amplitudes.items():
            for occ_b, b in other.amplitudes.items():
                occ = occ_a + occ_b
                if sum(occ) > cutoff:
                    raise FockError("tensor product exceeds photon cutoff")
                amps[occ] = a * b
        return FockState(self.modes + other.modes, amps, cutoff,
                         self.truncation_loss + other.truncation_loss)

    def permute_modes(self, order: Sequence[int]) -> "FockState":
        """Relabel modes; ``order[i]`` gives the old index placed at i."""
        if sorted(order) != list(range(self.modes)):
            raise FockError("mode permutation must touch every mode exactly once")
        amps = {tuple(occ[j] for j in order): a for occ, a in self.amplitudes.items()}
        return FockState(self.modes, amps, self.cutoff, self.truncation_loss)


# -- constructors ------------------------------------------------------

def basis_state(occupations, cutoff: int = DEFAULT_CUTOFF) -> FockState:
    """Single Fock basis ket |n1, n2, ...> with amplitude 1."""
    occ = tuple(int(n) for n in occupations)
    _validate_occupation(occ, len(occ), cutoff)
    return FockState(len(occ), {occ: 1.0 + 0j}, cutoff)


def vacuum(modes: int, cutoff: int = DEFAULT_CUTOFF) -> FockState:
    return basis_state((0,) * modes, cutoff)


def superpose(terms: Iterable) -> FockState:
    """Normalized linear combination of (coefficient, FockState) pairs."""
    terms = list(terms)
    if not terms:
        raise FockError("superpose needs at least one term")
    modes = terms[0][1].modes
    cutoff = min(s.cutoff for _, s in terms)
    amps = {}
    for coeff, state in terms:
        if state.modes != modes:
            raise FockError("superpose terms must share the mode count")
        for occ, a in state.amplitudes.items():
            amps[occ] = amps.get(occ, 0j) + complex(coeff) * a
    out = FockState(modes, amps, cutoff)
    if out.norm() == 0.0:
        raise FockError("superposition collapsed to the zero vector")
    return out.normalized()


def ladder(state: FockState, mode: int, direction: str) -> FockState:
    """Apply a creation ('raise') or annihilation ('lower') operator.

    Returns the unnormalized image. Raising a term past the photon
    cutoff drops it and books the lost weight as truncation loss.
    Lowering the vacuum yields the (flagged) zero state.
    """
    if not 0 <= mode < state.modes:
        raise FockError(f"mode {mode} out of range for {state.modes} modes")
    amps = {}
    lost = 0.0
    for occ, a in state.amplitudes.items():
        n = occ[mode]
        if direction == "lower":
            if n == 0:
                continue
            new = occ[:mode] + (n - 1,) + occ[mode + 1:]
            amps[new] = amps.get(new, 0j) + a * math.sqrt(n)
        elif direction == "raise":
            if sum(occ) + 1 > state.cutoff:
                lost += abs(a) ** 2 * (n + 1)
                continue
            new = occ[:mode] + (n + 1,) + occ[mode + 1:]
            amps[new] = amps.get(new, 0j) + a * math.sqrt(n + 1)
        else:
            raise FockError(f"unknown ladder direction {direction!r}")
    return FockState(state.modes, amps, state.cutoff,
                     state.truncation_loss + lost)


def inner_product(a: FockState, b: FockState) -> complex:
    return a.inner(b)


def compose(a: FockState, b: FockState) -> FockState:
    return a.tensor(b)


# -- mixtures and density operators ------------------------------------

class StateEnsemble:
    """Probabilistic mixture of pure states (classical branches)."""

    def __init__(self, branches: Iterable):
        branches = [(float(p), s) for p, s in branches if p > 0.0]
        if not branches:
            raise FockError("ensemble needs at least one branch")
        total = sum(p for p, _ in branches)
        if abs(total - 1.0) > 1e-12:
            branches = [(p / total, s) for p, s in branches]
        modes = branches[0][1].modes
        for _, s in branches:
            if s.modes != modes:
                raise FockError("ensemble branches must share the mode count")
        self.branches = branches
        self.modes = modes

    @classmethod
    def pure(cls, state: FockState) -> "StateEnsemble":
        return cls([(1.0, state)])


class DensityOperator:
    """Dense density matrix over an explicit occupation basis."""

    def __init__(self, basis: Sequence, matrix: np.ndarray):
        self.basis = [tuple(occ) for occ in basis]
        self.matrix = np.asarray(matrix, dtype=complex)
        d = len(self.basis)
        if self.matrix.shape != (d, d):
            raise FockError("density matrix shape does not match basis size")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def is_physical(self, tol: float = 1e-10) -> bool:
        h = np.linalg.norm(self.matrix - self.matrix.conj().T)
        if h > 1e-12 * max(1.0, np.linalg.norm(self.matrix)):
            return False
        eigs = np.linalg.eigvalsh(self.matrix)
        return bool(eigs.min() >= -tol and abs(self.trace() - 1.0) <= tol)

    def entropy_bits(self) -> float:
        """Von Neumann entropy in bits."""
        eigs = np.linalg.eigvalsh(self.matrix)
        eigs = eigs[eigs > 1e-15]
        return float(-(eigs * np.log2(eigs)).sum())


def to_density(ensemble: StateEnsemble, dense_limit: int = DENSE_BASIS_LIMIT) -> DensityOperator:
    """rho = sum_i p_i |psi_i><psi_i| over the union occupation basis."""
    basis = sorted({occ for _, s in ensemble.branches for occ in s.amplitudes})
    if len(basis) > dense_limit:
        raise FockError(f"dense basis of size {len(basis)} exceeds limit {dense_limit}")
    index = {occ: i for i, occ in enumerate(basis)}
    rho = np.zeros((len(basis), len(basis)), dtype=complex)
    for p, s in ensemble.branches:
        vec = np.zeros(len(basis), dtype=complex)
        for occ, a in s.amplitudes.items():
            vec[index[occ]] = a
        rho += p * np.outer(vec, vec.conj())
    return DensityOperator(basis, rho)


def density_from_state(state: FockState) -> DensityOperator:
    return to_density(StateEnsemble.pure(state))


def reduced_density(state: FockState, keep: Sequence[int],
                    dense_limit: int = DENSE_BASIS_LIMIT) -> DensityOperator:
    """Partial trace of a pure state keeping only the listed modes."""
    keep = list(keep)
    drop = [m for m in range(state.modes) if m not in keep]
    blocks = {}
    for occ, a in state.amplitudes.items():
        kept = tuple(occ[m] for m in keep)
        rest = tuple(occ[m] for m in drop)
        blocks.setdefault(rest, {})[kept] = blocks.setdefault(rest, {}).get(kept, 0j) + a
    basis = sorted({kept for block in blocks.values() for kept in block})
    if len(basis) > dense_limit:
        raise FockError(f"dense basis of size {len(basis)} exceeds limit {dense_limit}")
    index = {occ: i for i, occ in enumerate(basis)}
    rho = np.zeros((len(basis), len(basis)), dtype=complex)
    for block in blocks.values():
        vec = np.zeros(len(basis), dtype=complex)
        for kept, a in block.items():
            vec[index[kept]] = a
        rho += np.outer(vec, vec.conj())
    return DensityOperator(basis, rho)
