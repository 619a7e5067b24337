"""Near-deterministic single-rail teleportation and teleported gates.

The n-photon resource state spreads one logical qubit over n+1
possible photon counts; a discrete Fourier transform over the input
mode and the first resource group erases path information, and the
detected photon count m relocates the qubit to mode n+m. Only the two
extreme counts (m = 0 and m = n+1) fail, each eating exactly 1/(n+1)
of the corresponding amplitude, so the protocol succeeds with
probability exactly n/(n+1).

Each success signature leaves a known relative phase between the
vacuum and one-photon components of the output. The phase is always an
integer multiple of 2*pi/(n+1); the multiple is derived once from the
enumeration (it equals minus the count-weighted sum of detector
indices, mod n+1) and frozen here as ``correction_steps``. Teleporting
a conditional phase through the doubled resource additionally needs a
Z fix on each qubit keyed to the parity of n minus the *other*
channel's photon count.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .fock import DEFAULT_CUTOFF, FockError, FockState, basis_state, superpose
from .elements import apply_unitary, fourier

__all__ = [
    "build_tn", "build_czn", "qft", "correction_steps", "correction_table",
    "teleport", "success_probability", "TeleportOutcome", "TeleportResult",
    "teleported_cz", "teleported_cz_success", "TeleportedCz",
]


def qft(n: int) -> np.ndarray:
    """n-mode discrete Fourier transform, the multiport that erases
    which-path information; n = 2 reduces to a 50:50 splitter."""
    if n < 1:
        raise FockError("the Fourier multiport needs at least one mode")
    return fourier(n)


def build_tn(n: int, cutoff: int | None = None) -> FockState:
    """Teleportation resource over 2n modes.

    Equal superposition of the n+1 states |1>^j |0>^(n-j) |0>^j
    |1>^(n-j); every branch carries exactly n photons. Modes 0..n-1
    form the first group (consumed by the detection), modes n..2n-1
    the second (one of them receives the output qubit).
    """
    if n < 1:
        raise FockError("resource index n must be positive")
    cutoff = cutoff if cutoff is not None else max(DEFAULT_CUTOFF, n + 1)
    terms = []
    for j in range(n + 1):
        occ = [1] * j + [0] * (n - j) + [0] * j + [1] * (n - j)
        terms.append((1.0, basis_state(occ, cutoff=cutoff)))
    return superpose(terms)


def build_czn(n: int, cutoff: int | None = None) -> FockState:
    """Doubled resource over 4n modes with the conditional-phase signs.

    Amplitudes are (-1)^((n-i)(n-j))/(n+1) over the double sum of
    branch indices; groups are ordered (first-1, second-1, first-2,
    second-2), each n modes wide.
    """
    if n < 1:
        raise FockError("resource index n must be positive")
    cutoff = cutoff if cutoff is not None else max(DEFAULT_CUTOFF, 2 * n + 2)
    terms = []
    for i in range(n + 1):
        for j in range(n + 1):
            occ = ([1] * i + [0] * (n - i) + [0] * i + [1] * (n - i)
                   + [1] * j + [0] * (n - j) + [0] * j + [1] * (n - j))
            sign = -1.0 if ((n - i) * (n - j)) % 2 else 1.0
            terms.append((sign, basis_state(occ, cutoff=cutoff)))
    return superpose(terms)


def correction_steps(signature, n: int) -> int:
    """Phase multiple of 2*pi/(n+1) left on the output by a signature.

    The output state is a0|0> + e^(i*phi)*a1|1> with
    phi = -(2*pi/(n+1)) * sum_k k*signature[k]; undoing it multiplies
    the one-photon amplitude by e^(-i*phi). Returns the undo multiple
    u with e^(-i*phi) = e^(i*u*2*pi/(n+1)), reduced mod n+1.
    """
    weighted = sum(k * int(c) for k, c in enumerate(signature))
    return weighted % (n + 1)


def correction_table(n: int) -> dict:
    """Signature -> phase-step table for all success signatures."""
    table = {}
    for sig in itertools.product(range(n + 2), repeat=n + 1):
        m = sum(sig)
        if 0 < m < n + 1:
            table[sig] = correction_steps(sig, n)
    return table


@dataclass(frozen=True)
class TeleportOutcome:
    signature: tuple
    m: int
    probability: float
    success: bool
    output_mode: int | None
    correction: int
    logical: tuple | None


@dataclass
class TeleportResult:
    n: int
    outcomes: list
    success_probability: float

    def outcome(self, signature) -> TeleportOutcome:
        signature = tuple(signature)
        for o in self.outcomes:
            if o.signature == signature:
                return o
        raise KeyError(signature)


def success_probability(n: int) -> Fraction:
    """Exact success probability n/(n+1).

    The two failing counts each claim a single resource branch of
    squared amplitude 1/(n+1); everything in between teleports.
    """
    if n < 1:
        raise FockError("resource index n must be positive")
    return Fraction(n, n + 1)


def teleport(alpha: complex, beta: complex, n: int,
             cutoff: int | None = None) -> TeleportResult:
    """Teleport alpha|0> + beta|1> through the n-photon resource.

    Enumerates every detector signature on modes 0..n after the
    Fourier multiport. Success signatures (0 < m < n+1) report the
    output mode n+m and the post-correction logical amplitudes, valid
    up to a signature-dependent global phase; failure signatures
    report the collapsed bit value.
    """
    norm = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(norm - 1.0) > 1e-9:
        raise FockError("input qubit amplitudes must be normalized")
    cutoff = cutoff if cutoff is not None else max(DEFAULT_CUTOFF, n + 1)
    resource = build_tn(n, cutoff)
    inp = FockState(1, {(0,): complex(alpha), (1,): complex(beta)}, cutoff)
    state = inp.tensor(resource)
    state = apply_unitary(state, qft(n + 1), modes=range(n + 1))

    groups = {}
    for occ, a in state.terms():
        sig = occ[:n + 1]
        groups.setdefault(sig, {})[occ[n + 1:]] = a

    tau = 2.0 * math.pi / (n + 1)
    outcomes = []
    total_success = 0.0
    for sig in sorted(groups):
        amps = groups[sig]
        p = sum(abs(a) ** 2 for a in amps.values())
        m = sum(sig)
        if m == 0 or m == n + 1:
            outcomes.append(TeleportOutcome(
                signature=sig, m=m, probability=p, success=False,
                output_mode=None, correction=0,
                logical=(1.0, 0.0) if m == 0 else (0.0, 1.0)))
            continue
        base0 = tuple([0] * m + [1] * (n - m))
        base1 = tuple([0] * (m - 1) + [1] * (n - m + 1))
        a0 = amps.get(base0, 0j)
        a1 = amps.get(base1, 0j)
        steps = correction_steps(sig, n)
        a1 = a1 * complex(math.cos(steps * tau), math.sin(steps * tau))
        scale = math.sqrt(p) if p > 0 else 1.0
        outcomes.append(TeleportOutcome(
            signature=sig, m=m, probability=p, success=True,
            output_mode=n + m, correction=steps,
            logical=(a0 / scale, a1 / scale)))
        total_success += p
    return TeleportResult(n=n, outcomes=outcomes,
                          success_probability=total_success)


def teleported_cz_success(n: int) -> Fraction:
    """Joint success probability of the teleported conditional phase."""
    return success_probability(n) ** 2


@dataclass
class TeleportedCz:
    n: int
    joint_success: float
    min_fidelity: float
    branch_fidelities: dict = field(default_factory=dict)


def teleported_cz(n: int, qubit1=(1.0, 0.0), qubit2=(1.0, 0.0),
                  cutoff: int | None = None) -> TeleportedCz:
    """Run both halves of a conditional phase through the doubled resource.

    Two independent detections (input mode + first group of each
    channel) succeed jointly with probability (n/(n+1))^2. On success
    the two-qubit output equals CZ applied to the inputs after three
    classical fixes: each channel's phase steps, plus a Z on qubit 1
    when n minus the other channel's count m2 is odd, and vice versa.
    Exhaustive enumeration; practical for n <= 2.
    """
    a1, b1 = qubit1
    a2, b2 = qubit2
    for pair in (qubit1, qubit2):
        if abs(abs(pair[0]) ** 2 + abs(pair[1]) ** 2 - 1.0) > 1e-9:
            raise FockError("input qubit amplitudes must be normalized")
    cutoff = cutoff if cutoff is not None else max(DEFAULT_CUTOFF, 2 * n + 2)
    resource = build_czn(n, cutoff)
    in1 = FockState(1, {(0,): complex(a1), (1,): complex(b1)}, cutoff)
    in2 = FockState(1, {(0,): complex(a2), (1,): complex(b2)}, cutoff)
    state = in1.tensor(in2).tensor(resource)

    first1 = [0] + list(range(2, 2 + n))
    first2 = [1] + list(range(2 + 2 * n, 2 + 3 * n))
    out1 = list(range(2 + n, 2 + 2 * n))
    out2 = list(range(2 + 3 * n, 2 + 4 * n))
    f = qft(n + 1)
    state = apply_unitary(state, f, modes=first1)
    state = apply_unitary(state, f, modes=first2)

    groups = {}
    for occ, a in state.terms():
        s1 = tuple(occ[k] for k in first1)
        s2 = tuple(occ[k] for k in first2)
        rest = tuple(occ[k] for k in out1 + out2)
        groups.setdefault((s1, s2), {})[rest] = a

    target = np.array([a1 * a2, a1 * b2, b1 * a2, -b1 * b2], dtype=complex)
    tau = 2.0 * math.pi / (n + 1)
    joint = 0.0
    worst = 1.0
    branch_fid = {}
    for (s1, s2), amps in groups.items():
        m1, m2 = sum(s1), sum(s2)
        if not (0 < m1 < n + 1 and 0 < m2 < n + 1):
            continue
        vec = np.zeros(4, dtype=complex)
        for rest, a in amps.items():
            r1, r2 = rest[:n], rest[n:]
            bit1 = _branch_bit(r1, n, m1)
            bit2 = _branch_bit(r2, n, m2)
            if bit1 is None or bit2 is None:
                continue
            vec[2 * bit1 + bit2] += a
        ph1 = _phase(correction_steps(s1, n) * tau)
        ph2 = _phase(correction_steps(s2, n) * tau)
        z1 = -1.0 if (n - m2) % 2 else 1.0
        z2 = -1.0 if (n - m1) % 2 else 1.0
        vec *= np.array([1.0, ph2 * z2, ph1 * z1, ph1 * ph2 * z1 * z2])
        p = float(np.sum(np.abs(vec) ** 2))
        joint += p
        if p > 0:
            fid = abs(np.vdot(target, vec)) ** 2 / (
                float(np.vdot(target, target).real) * p)
            branch_fid[(s1, s2)] = fid
            worst = min(worst, fid)
    return TeleportedCz(n=n, joint_success=joint, min_fidelity=worst,
                        branch_fidelities=branch_fid)


def _branch_bit(rest, n: int, m: int):
    """Which logical bit a second-group occupation encodes, if any."""
    if list(rest) == [0] * m + [1] * (n - m):
        return 0
    if list(rest) == [0] * (m - 1) + [1] * (n - m + 1):
        return 1
    return None


def _phase(angle: float) -> complex:
    return complex(math.cos(angle), math.sin(angle))
