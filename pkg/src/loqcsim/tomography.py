"""Density-matrix fidelity and chi-matrix process tomography.

A two-qubit channel is probed on the 16 product states built from
{|0>, |1>, |+>, |+i>} per qubit, inverted linearly to a superoperator
and re-expressed in the Pauli-product basis as E(rho) =
sum_mn chi_mn A_m rho A_n^dag.  The chi matrix of the ideal CNOT
follows from its coherent sum (II + IX + ZI - ZX)/2.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .fock import DensityOperator, FockError

__all__ = [
    "PAULI_LABELS", "pauli_product", "two_qubit_paulis", "probe_states",
    "ProcessMatrix", "state_fidelity", "process_tomography",
    "apply_process", "unitary_chi", "cnot_ideal_chi", "process_fidelity",
]

_PAULI_1 = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

PAULI_LABELS = tuple(a + b for a in "IXYZ" for b in "IXYZ")

_HERMITIAN_TOL = 1e-10
_PSD_TOL = 1e-8
_TRACE_TOL = 1e-8


def pauli_product(label: str) -> np.ndarray:
    """Tensor product of single-qubit Paulis, first character first qubit."""
    mat = np.eye(1, dtype=complex)
    for ch in label:
        if ch not in _PAULI_1:
            raise FockError(f"unknown Pauli letter {ch!r}")
        mat = np.kron(mat, _PAULI_1[ch])
    return mat


def two_qubit_paulis():
    """Ordered basis [(label, 4x4 matrix)] for II, IX, ..., ZZ."""
    return [(label, pauli_product(label)) for label in PAULI_LABELS]


_PROBE_KETS_1 = (
    np.array([1, 0], dtype=complex),
    np.array([0, 1], dtype=complex),
    np.array([1, 1], dtype=complex) / math.sqrt(2),
    np.array([1, 1j], dtype=complex) / math.sqrt(2),
)


def probe_states():
    """The 16 product probes {|0>,|1>,|+>,|+i>} x same, as kets."""
    return [np.kron(u, v) for u in _PROBE_KETS_1 for v in _PROBE_KETS_1]


@dataclass(frozen=True)
class ProcessMatrix:
    """chi matrix over an explicit operator basis.

    Physicality is enforced on construction: Hermitian, positive
    semidefinite within tolerance and trace preserving, i.e.
    sum_mn chi_mn A_n^dag A_m = identity.
    """
    basis: tuple
    chi: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        chi = np.asarray(self.chi, dtype=complex)
        d = len(self.basis)
        if chi.shape != (d, d):
            raise FockError("chi shape does not match the operator basis")
        if np.max(np.abs(chi - chi.conj().T)) > _HERMITIAN_TOL:
            raise FockError("chi matrix is not Hermitian")
        chi = 0.5 * (chi + chi.conj().T)
        eigs = np.linalg.eigvalsh(chi)
        if eigs.min() < -_PSD_TOL:
            raise FockError(f"chi has a negative eigenvalue {eigs.min():.3e}")
        mats = [pauli_product(label) for label in self.basis]
        dim = mats[0].shape[0]
        tp = np.zeros((dim, dim), dtype=complex)
        for m in range(d):
            for n in range(d):
                tp += chi[m, n] * (mats[n].conj().T @ mats[m])
        if np.max(np.abs(tp - np.eye(dim))) > _TRACE_TOL:
            raise FockError("chi does not describe a trace-preserving channel")
        object.__setattr__(self, "chi", chi)

    @property
    def d(self) -> int:
        return len(self.basis)

    def to_json(self) -> str:
        payload = {
            "basis": list(self.basis),
            "chi": [[[float(z.real), float(z.imag)] for z in row]
                    for row in self.chi],
        }
        return json.dumps(payload)

    @classmethod
    def from_json(cls, text: str) -> "ProcessMatrix":
        payload = json.loads(text)
        chi = np.array([[complex(re, im) for re, im in row]
                        for row in payload["chi"]])
        return cls(tuple(payload["basis"]), chi)


def _sqrt_psd(matrix: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(matrix)
    if vals.min() < -_PSD_TOL:
        raise FockError(f"density matrix has a negative eigenvalue {vals.min():.3e}")
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def _as_matrix(rho) -> np.ndarray:
    if isinstance(rho, DensityOperator):
        return np.asarray(rho.matrix, dtype=complex)
    return np.asarray(rho, dtype=complex)


def state_fidelity(rho_a, rho_b) -> float:
    """Uhlmann fidelity [Tr sqrt(sqrt(a) b sqrt(a))]^2.

    Accepts DensityOperator instances (same basis required) or plain
    matrices; symmetric in its arguments and reduces to |<psi|phi>|^2
    on pure inputs.
    """
    if isinstance(rho_a, DensityOperator) and isinstance(rho_b, DensityOperator):
        if rho_a.basis != rho_b.basis:
            raise FockError("density operators live on different bases")
    a, b = _as_matrix(rho_a), _as_matrix(rho_b)
    if a.shape != b.shape:
        raise FockError("density matrix shapes differ")
    singular = np.linalg.svd(_sqrt_psd(a) @ _sqrt_psd(b), compute_uv=False)
    f = float(np.sum(singular) ** 2)
    return min(max(f, 0.0), 1.0)


def _vec(matrix: np.ndarray) -> np.ndarray:
    return np.asarray(matrix, dtype=complex).reshape(-1, order="F")


def process_tomography(channel, basis=None) -> ProcessMatrix:
    """Reconstruct the chi matrix of a two-qubit black-box channel.

    The channel must accept a 4x4 density matrix and return one; the
    16 standard probes span the operator space, so linear inversion
    followed by a Hermitian projection recovers chi exactly for any
    linear channel.
    """
    paulis = two_qubit_paulis() if basis is None else list(basis)
    labels = tuple(label for label, _ in paulis)
    mats = [mat for _, mat in paulis]
    d = len(mats)
    dim = mats[0].shape[0]

    probes = probe_states()
    if len(probes) != d:
        raise FockError("probe count does not match the operator basis size")
    b_cols = np.column_stack([_vec(np.outer(k, k.conj())) for k in probes])
    o_cols = np.column_stack([_vec(channel(np.outer(k, k.conj())))
                              for k in probes])
    superop = o_cols @ np.linalg.inv(b_cols)

    chi = np.zeros((d, d), dtype=complex)
    for m in range(d):
        for n in range(d):
            basis_op = np.kron(mats[n].T, mats[m])
            chi[m, n] = np.trace(basis_op.conj().T @ superop) / dim ** 2
    chi = 0.5 * (chi + chi.conj().T)
    return ProcessMatrix(labels, chi)


def apply_process(pm: ProcessMatrix, rho: np.ndarray) -> np.ndarray:
    """Evaluate E(rho) = sum_mn chi_mn A_m rho A_n^dag."""
    mats = [pauli_product(label) for label in pm.basis]
    rho = np.asarray(rho, dtype=complex)
    out = np.zeros_like(rho)
    for m in range(pm.d):
        for n in range(pm.d):
            if abs(pm.chi[m, n]) > 1e-15:
                out += pm.chi[m, n] * (mats[m] @ rho @ mats[n].conj().T)
    return out


def unitary_chi(unitary: np.ndarray, basis=None) -> ProcessMatrix:
    """Rank-1 chi of a unitary channel: chi = c c^dag, c_m = Tr(A_m^dag U)/d."""
    paulis = two_qubit_paulis() if basis is None else list(basis)
    labels = tuple(label for label, _ in paulis)
    u = np.asarray(unitary, dtype=complex)
    dim = u.shape[0]
    c = np.array([np.trace(mat.conj().T @ u) / dim for _, mat in paulis])
    return ProcessMatrix(labels, np.outer(c, c.conj()))


def cnot_ideal_chi() -> ProcessMatrix:
    """chi of the ideal CNOT from its coherent sum (II + IX + ZI - ZX)/2."""
    c = np.zeros(16, dtype=complex)
    for label, coeff in (("II", 0.5), ("IX", 0.5), ("ZI", 0.5), ("ZX", -0.5)):
        c[PAULI_LABELS.index(label)] = coeff
    return ProcessMatrix(PAULI_LABELS, np.outer(c, c.conj()))


def process_fidelity(chi_a: ProcessMatrix, chi_b: ProcessMatrix) -> float:
    """Normalized overlap Tr(chi_a chi_b) / (Tr chi_a Tr chi_b)."""
    if chi_a.basis != chi_b.basis:
        raise FockError("process matrices use different operator bases")
    value = np.trace(chi_a.chi @ chi_b.chi)
    norm = np.trace(chi_a.chi).real * np.trace(chi_b.chi).real
    f = float(value.real) / norm
    return min(max(f, 0.0), 1.0)
