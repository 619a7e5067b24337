"""Probabilistic gate constructions and a verification runner.

Every gate is described by a CircuitSpec: ancilla preparation, an
ordered element list, herald patterns with their classical Pauli
fixes, the qubit encoding at the input and output, and the success
probability the construction is supposed to deliver. ``run_gate``
evolves a spanning set of logical inputs through the circuit, applies
the per-signature corrections, and compares the heralded action
against the ideal gate, so a spec either verifies or visibly fails.

Success probability is reported as the total heralded in-span weight
averaged over the standard logical basis. For gates whose heralded map
is a scaled isometry this equals the per-input success probability;
for projective gates (parity check, fusion) it is the uniform-input
average the quoted 1/2 refers to.

Conventions: a rail qubit slot lists (zero_mode, one_mode), so a
polarization qubit with horizontal mapped to logical 0 lists the even
mode first. Number slots expose the lowest ``levels`` Fock states of a
single mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .fock import DEFAULT_CUTOFF, FockError, FockState, basis_state, superpose
from .circuits import Circuit, CircuitElement, apply_elements
from .measurement import post_select

__all__ = [
    "QubitSlot", "HeraldBranch", "CircuitSpec", "GateReport",
    "ns_gate", "cz_gate", "cnot_gate", "parity_check", "fusion",
    "hyper_bell_transform", "run_gate", "gate_circuit", "PAULI",
    "heralded_kraus", "heralded_channel",
]


PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "XZ": np.array([[0, -1], [1, 0]], dtype=complex),
}

# cos^2 = 1/3 coupler; shared by the Knill CZ and the coincidence CNOT
_ONE_THIRD_ANGLE = math.acos(1.0 / math.sqrt(3.0))

# nonlinear-sign mixing angle with transmission intensity 3 - 2*sqrt(2)
_NS_MIX_ANGLE = math.acos(math.sqrt(2.0) - 1.0)

# two-splitter NS: cos^2(theta) = (3 - sqrt(2))/7 and cos(sigma) chosen so
# the heralded amplitudes come out proportional to (1, 1, -1)
NS_TWO_SPLITTER_SUCCESS = (3.0 - math.sqrt(2.0)) / 7.0
_NS2_THETA = math.acos(math.sqrt(NS_TWO_SPLITTER_SUCCESS))
_NS2_SIGMA = math.acos(-math.sqrt(7.0 * (3.0 - math.sqrt(2.0)))
                       / (1.0 + 2.0 * math.sqrt(2.0)))

# closed-form angles for the 2/27 CZ; the rounded pair keeps only two
# decimals in degrees and costs ~2.4e-5 in success probability
KNILL_THETA = _ONE_THIRD_ANGLE
KNILL_PHI = math.acos(math.sqrt((3.0 + math.sqrt(6.0)) / 6.0))
KNILL_THETA_ROUNDED = math.radians(54.74)
KNILL_PHI_ROUNDED = math.radians(17.63)


@dataclass(frozen=True)
class QubitSlot:
    """Logical carrier: 'rail' over (zero_mode, one_mode) or 'number'."""
    kind: str
    modes: tuple
    levels: int = 2

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(int(m) for m in self.modes))
        if self.kind == "rail" and (len(self.modes) != 2 or self.levels != 2):
            raise FockError("rail slot needs exactly two modes and two levels")
        if self.kind == "number" and len(self.modes) != 1:
            raise FockError("number slot lives on a single mode")
        if self.kind not in ("rail", "number"):
            raise FockError(f"unknown qubit slot kind {self.kind!r}")

    def occupation(self, value: int) -> dict:
        """Mode occupations realizing logical basis state ``value``."""
        if not 0 <= value < self.levels:
            raise FockError(f"slot value {value} outside 0..{self.levels - 1}")
        if self.kind == "rail":
            return {self.modes[value]: 1}
        return {self.modes[0]: value}


@dataclass(frozen=True)
class HeraldBranch:
    """One accepted detector signature and its classical fix-up.

    ``corrections`` lists one Pauli label per output qubit; ``ideal``
    optionally overrides the spec-level ideal action for signatures
    that herald a different (but equally useful) target map.
    """
    pattern: tuple
    corrections: tuple = ()
    ideal: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "pattern", tuple(int(n) for n in self.pattern))
        object.__setattr__(self, "corrections", tuple(self.corrections))
        for label in self.corrections:
            if label not in PAULI:
                raise FockError(f"unknown correction label {label!r}")


@dataclass
class CircuitSpec:
    name: str
    modes: int
    io_convention: str
    inputs: tuple
    outputs: tuple
    elements: tuple
    herald_modes: tuple
    branches: tuple
    declared_success: float
    ideal: np.ndarray | None = None
    ancilla_modes: tuple = ()
    ancilla: FockState | None = None
    destructive: bool = False
    cutoff: int = DEFAULT_CUTOFF

    def __post_init__(self):
        if not 0.0 < self.declared_success <= 1.0:
            raise FockError("declared success must lie in (0, 1]")
        if self.ancilla is not None and self.ancilla.modes != len(self.ancilla_modes):
            raise FockError("ancilla state does not match the ancilla mode list")
        for br in self.branches:
            if len(br.pattern) != len(self.herald_modes):
                raise FockError("herald pattern length mismatch")
            if br.corrections and len(br.corrections) != len(self.outputs):
                raise FockError("one correction label per output qubit required")


@dataclass
class GateReport:
    """Outcome of verifying a CircuitSpec against its ideal action."""
    name: str
    declared_success: float
    measured_success: float
    action_fidelity: float
    branch_probabilities: dict
    corrections: dict
    per_input_success: list
    leakage: float
    destructive: bool

    def summary(self) -> dict:
        return {
            "name": self.name,
            "declared_success": self.declared_success,
            "measured_success": self.measured_success,
            "action_fidelity": self.action_fidelity,
            "branches": {",".join(map(str, sig)): p
                         for sig, p in sorted(self.branch_probabilities.items())},
            "leakage": self.leakage,
        }


# -- the runner ------------------------------------------------------------


def _basis(slots: Sequence[QubitSlot]):
    """Product logical basis, first slot most significant."""
    dims = [s.levels for s in slots]
    values = [()]
    for d in dims:
        values = [v + (k,) for v in values for k in range(d)]
    return values


def _input_state(spec: CircuitSpec, assignment) -> FockState:
    occ = [0] * spec.modes
    for slot, value in zip(spec.inputs, assignment):
        for mode, n in slot.occupation(value).items():
            occ[mode] += n
    if spec.ancilla is None:
        return basis_state(occ, cutoff=spec.cutoff)
    amps = {}
    for anc_occ, a in spec.ancilla.terms():
        full = list(occ)
        for mode, n in zip(spec.ancilla_modes, anc_occ):
            full[mode] += n
        amps[tuple(full)] = a
    return FockState(spec.modes, amps, spec.cutoff)


def _correction_matrix(branch: HeraldBranch, outputs) -> np.ndarray:
    labels = branch.corrections or ("I",) * len(outputs)
    mat = np.eye(1, dtype=complex)
    for slot, label in zip(outputs, labels):
        if slot.levels != 2 and label != "I":
            raise FockError("Pauli corrections only apply to two-level slots")
        mat = np.kron(mat, PAULI[label] if slot.levels == 2 else np.eye(slot.levels))
    return mat


def _branch_maps(spec: CircuitSpec, in_basis):
    """Post-correction logical maps of each accepted signature.

    Returns (branch_maps, branch_probs, leakage, per_input) where each
    map carries the sqrt of the herald probability, so columns are the
    unnormalized heralded output amplitudes.
    """
    out_basis = _basis(spec.outputs)
    d_in, d_out = len(in_basis), max(len(out_basis), 1)

    kept = [m for m in range(spec.modes) if m not in set(spec.herald_modes)]
    reindex = {orig: i for i, orig in enumerate(kept)}

    out_patterns = []
    for assignment in out_basis:
        occ = [0] * len(kept)
        for slot, value in zip(spec.outputs, assignment):
            for mode, n in slot.occupation(value).items():
                occ[reindex[mode]] += n
        out_patterns.append(tuple(occ))

    evolved = [apply_elements(_input_state(spec, a), list(spec.elements))
               for a in in_basis]

    branch_maps = {}
    branch_probs = {}
    leakage = 0.0
    per_input = [0.0] * d_in
    for branch in spec.branches:
        m = np.zeros((d_out, d_in), dtype=complex)
        probs = []
        for col, state in enumerate(evolved):
            p, cond = post_select(state, spec.herald_modes, branch.pattern)
            probs.append(p)
            if cond is None:
                continue
            scale = math.sqrt(p)
            for row, pattern in enumerate(out_patterns):
                m[row, col] = cond.amplitude(pattern) * scale
            in_span = float(np.sum(np.abs(m[:, col]) ** 2))
            leakage = max(leakage, p - in_span)
            per_input[col] += in_span
        branch_maps[branch.pattern] = _correction_matrix(branch, spec.outputs) @ m
        branch_probs[branch.pattern] = sum(probs) / d_in
    return branch_maps, branch_probs, leakage, per_input


def heralded_kraus(spec: CircuitSpec) -> dict:
    """Kraus operator of each accepted signature on the logical basis.

    Corrections are already applied; sum_b K_b^dag K_b equals the
    acceptance probability times the identity whenever acceptance does
    not depend on the input.
    """
    maps, _, _, _ = _branch_maps(spec, _basis(spec.inputs))
    return maps


def heralded_channel(spec: CircuitSpec):
    """Success-conditioned density-matrix channel of a heralded gate.

    Returns (channel, success).  Dividing by the mean acceptance
    probability makes the map trace preserving for gates whose success
    is input independent, which holds for the shipped gate set.
    """
    kraus = list(heralded_kraus(spec).values())
    d = kraus[0].shape[1]
    total = sum(k.conj().T @ k for k in kraus)
    success = float(np.trace(total).real) / d

    def channel(rho: np.ndarray) -> np.ndarray:
        rho = np.asarray(rho, dtype=complex)
        out = sum(k @ rho @ k.conj().T for k in kraus)
        return out / success

    return channel, success


def run_gate(spec: CircuitSpec, inputs=None) -> GateReport:
    """Verify heralded action and success probability of a gate spec.

    ``inputs`` defaults to the full logical product basis; a list of
    basis-value tuples restricts the spanning set. The report carries
    the in-span success per input, per-branch probabilities, the
    post-correction action fidelity against the ideal gate, and the
    worst-case out-of-span weight inside accepted signatures (leakage;
    discarded silently only when the spec is flagged destructive).
    """
    in_basis = _basis(spec.inputs) if inputs is None else [tuple(v) for v in inputs]
    out_basis = _basis(spec.outputs)
    d_in, d_out = len(in_basis), max(len(out_basis), 1)

    branch_maps, branch_probs, leakage, per_input = _branch_maps(spec, in_basis)

    overlap = 0j
    ideal_weight = 0.0
    measured_weight = 0.0
    for branch in spec.branches:
        ideal = branch.ideal if branch.ideal is not None else spec.ideal
        m = branch_maps[branch.pattern]
        if ideal is None:
            raise FockError(f"branch {branch.pattern} of {spec.name} has no ideal action")
        ideal = np.asarray(ideal, dtype=complex).reshape(d_out, d_in)
        overlap += np.trace(ideal.conj().T @ m)
        ideal_weight += float(np.trace(ideal.conj().T @ ideal).real)
        measured_weight += float(np.trace(m.conj().T @ m).real)

    fidelity = 0.0
    if measured_weight > 0.0:
        fidelity = abs(overlap) ** 2 / (ideal_weight * measured_weight)

    return GateReport(
        name=spec.name,
        declared_success=spec.declared_success,
        measured_success=measured_weight / d_in,
        action_fidelity=fidelity,
        branch_probabilities=branch_probs,
        corrections={b.pattern: b.corrections for b in spec.branches},
        per_input_success=per_input,
        leakage=leakage,
        destructive=spec.destructive,
    )


def gate_circuit(spec: CircuitSpec, assignment=None) -> Circuit:
    """Materialize a spec as a serializable circuit for the CLI runner.

    ``assignment`` picks the logical basis input (defaults to all
    zeros); heralds become a measurement over the herald modes so the
    emitted circuit reports the full signature distribution.
    """
    if assignment is None:
        assignment = tuple(0 for _ in spec.inputs)
    state = _input_state(spec, assignment).normalized()
    measure = {"modes": list(spec.herald_modes)} if spec.herald_modes else None
    return Circuit(modes=spec.modes, input=state, elements=list(spec.elements),
                   cutoff=spec.cutoff, measure=measure)


# -- nonlinear sign gates ----------------------------------------------------


def _rot(modes, theta) -> CircuitElement:
    return CircuitElement("rot", tuple(modes), (theta,))


def ns_gate(variant: str = "klm") -> CircuitSpec:
    """Nonlinear sign flip on one mode: (a, b, c) -> (a, b, -c).

    klm: three splitters, transmission intensities 1/(4-2*sqrt(2)) on
    the outer pair and 3-2*sqrt(2) in the middle, one ancilla photon
    plus one vacuum ancilla, success exactly 1/4.

    ralph: two splitters on the same resources, success (3-sqrt(2))/7.

    rudolph_pan: the two-splitter gate rebuilt from polarization
    rotations around a polarizing splitter, with angles rounded to
    sigma = 150.5 deg and theta = 61.5 deg, so the success probability
    sits within about 4e-4 of (3-sqrt(2))/7.
    """
    ns_ideal = np.diag([1.0, 1.0, -1.0])
    signal = (QubitSlot("number", (0,), levels=3),)
    if variant == "klm":
        t1 = math.pi / 8.0
        return CircuitSpec(
            name="ns-klm", modes=3, io_convention="single-rail",
            inputs=signal, outputs=signal,
            elements=(_rot((1, 2), math.pi + t1),
                      _rot((0, 1), math.pi + _NS_MIX_ANGLE),
                      _rot((1, 2), t1)),
            herald_modes=(1, 2), branches=(HeraldBranch((1, 0)),),
            declared_success=0.25, ideal=ns_ideal,
            ancilla_modes=(1, 2), ancilla=basis_state((1, 0)))
    if variant == "ralph":
        return CircuitSpec(
            name="ns-ralph", modes=3, io_convention="single-rail",
            inputs=signal, outputs=signal,
            elements=(_rot((0, 1), _NS2_SIGMA), _rot((0, 2), _NS2_THETA)),
            herald_modes=(1, 2), branches=(HeraldBranch((0, 1)),),
            declared_success=NS_TWO_SPLITTER_SUCCESS, ideal=ns_ideal,
            ancilla_modes=(1, 2), ancilla=basis_state((0, 1)))
    if variant == "rudolph_pan":
        sigma, theta = math.radians(150.5), math.radians(61.5)
        return CircuitSpec(
            name="ns-rudolph-pan", modes=4, io_convention="single-rail",
            inputs=signal, outputs=signal,
            elements=(_rot((0, 1), sigma),
                      CircuitElement("pbs", (0, 1, 2, 3), ("hv",)),
                      _rot((0, 1), theta)),
            herald_modes=(1, 2, 3), branches=(HeraldBranch((1, 0, 0)),),
            declared_success=NS_TWO_SPLITTER_SUCCESS, ideal=ns_ideal,
            ancilla_modes=(1, 2, 3), ancilla=basis_state((0, 0, 1)))
    raise FockError(f"unknown NS variant {variant!r}")


# -- conditional phase gates -------------------------------------------------

_CZ = np.diag([1.0, 1.0, 1.0, -1.0])
_CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
                 dtype=complex)


def _ns_block(rail: int, anc: tuple) -> tuple:
    t1 = math.pi / 8.0
    return (_rot(anc, math.pi + t1),
            _rot((rail, anc[0]), math.pi + _NS_MIX_ANGLE),
            _rot(anc, t1))


def cz_gate(variant: str = "knill", angles: str = "exact") -> CircuitSpec:
    """Controlled phase on two dual-rail qubits.

    two_ns: 50:50 coupler on the occupied rails, a nonlinear sign gate
    on each, coupler undone; success (1/4)^2 = 1/16.

    knill: four-splitter network with two ancilla photons, both
    detectors reading one photon; success 2/27, the best known for a
    non-teleported CZ. ``angles="exact"`` uses the closed forms
    arccos(1/sqrt(3)) and arccos(sqrt((3+sqrt(6))/6)); "rounded" keeps
    two decimal places in degrees (54.74, 17.63) at a ~2.4e-5 cost in
    success probability. The heralded map needs a sign fix on the
    first qubit, recorded as the branch correction.

    kerr: a cross-Kerr phase of pi between the occupied rails;
    deterministic, included as the nonlinear reference point.
    """
    q1 = QubitSlot("rail", (1, 0))
    q2 = QubitSlot("rail", (3, 2))
    slots = (q1, q2)
    if variant == "two_ns":
        elements = ((CircuitElement("mirror", (0, 2), (math.pi / 4.0,)),)
                    + _ns_block(0, (4, 5)) + _ns_block(2, (6, 7))
                    + (CircuitElement("mirror", (0, 2), (math.pi / 4.0,)),))
        return CircuitSpec(
            name="cz-two-ns", modes=8, io_convention="dual-rail",
            inputs=slots, outputs=slots, elements=elements,
            herald_modes=(4, 5, 6, 7),
            branches=(HeraldBranch((1, 0, 1, 0)),),
            declared_success=1.0 / 16.0, ideal=_CZ,
            ancilla_modes=(4, 5, 6, 7), ancilla=basis_state((1, 0, 1, 0)))
    if variant == "knill":
        if angles == "exact":
            theta, phi = KNILL_THETA, KNILL_PHI
        elif angles == "rounded":
            theta, phi = KNILL_THETA_ROUNDED, KNILL_PHI_ROUNDED
        else:
            raise FockError(f"unknown angle choice {angles!r}")
        return CircuitSpec(
            name="cz-knill", modes=6, io_convention="dual-rail",
            inputs=slots, outputs=slots,
            elements=(_rot((2, 5), math.pi + theta),
                      _rot((0, 4), -theta),
                      _rot((4, 5), phi),
                      _rot((0, 2), theta)),
            herald_modes=(4, 5),
            branches=(HeraldBranch((1, 1), corrections=("Z", "I")),),
            declared_success=2.0 / 27.0, ideal=_CZ,
            ancilla_modes=(4, 5), ancilla=basis_state((1, 1)))
    if variant == "kerr":
        return CircuitSpec(
            name="cz-kerr", modes=4, io_convention="dual-rail",
            inputs=slots, outputs=slots,
            elements=(CircuitElement("kerr", (0, 2), (math.pi,)),),
            herald_modes=(), branches=(HeraldBranch(()),),
            declared_success=1.0, ideal=_CZ)
    raise FockError(f"unknown CZ variant {variant!r}")


def cnot_gate(variant: str = "ralph_coincidence") -> CircuitSpec:
    """Controlled NOT, either coincidence-based or ancilla-boosted.

    ralph_coincidence: five cos^2 = 1/3 couplers on six modes, no
    ancilla photons. The gate is destructive: success is declared only
    when one photon remains in each qubit pair, which happens with
    probability 1/9 regardless of input, and the surviving action is
    exactly CNOT.

    pittman_ancilla: a Bell pair |HH> + |VV| consumed across two
    polarizing-splitter parity checks, the first read out in the
    diagonal basis and the second in H/V. All four signatures succeed
    (1/16 each, 1/4 total) with the tabulated Pauli fixes.
    """
    if variant == "ralph_coincidence":
        control = QubitSlot("rail", (1, 0))
        target = QubitSlot("rail", (2, 3))
        slots = (control, target)
        theta = _ONE_THIRD_ANGLE
        return CircuitSpec(
            name="cnot-ralph", modes=6, io_convention="dual-rail",
            inputs=slots, outputs=slots,
            elements=(_rot((2, 3), math.pi / 4.0),
                      _rot((0, 2), theta),
                      _rot((1, 4), theta),
                      _rot((3, 5), theta),
                      _rot((2, 3), -math.pi / 4.0)),
            herald_modes=(4, 5), branches=(HeraldBranch((0, 0)),),
            declared_success=1.0 / 9.0, ideal=_CNOT, destructive=True)
    if variant == "pittman_ancilla":
        control = QubitSlot("rail", (0, 1))
        target = QubitSlot("rail", (2, 3))
        slots = (control, target)
        bell = superpose([(1.0, basis_state((1, 0, 1, 0))),
                          (1.0, basis_state((0, 1, 0, 1)))])
        return CircuitSpec(
            name="cnot-pittman", modes=8, io_convention="polarization",
            inputs=slots, outputs=slots,
            elements=(CircuitElement("pbs", (0, 1, 4, 5), ("hv",)),
                      _rot((4, 5), math.pi / 4.0),
                      CircuitElement("pbs", (6, 7, 2, 3), ("diag",))),
            herald_modes=(4, 5, 6, 7),
            branches=(HeraldBranch((1, 0, 1, 0), corrections=("Z", "I")),
                      HeraldBranch((1, 0, 0, 1), corrections=("Z", "X")),
                      HeraldBranch((0, 1, 1, 0), corrections=("I", "I")),
                      HeraldBranch((0, 1, 0, 1), corrections=("I", "X"))),
            declared_success=0.25, ideal=_CNOT,
            ancilla_modes=(4, 5, 6, 7), ancilla=bell)
    raise FockError(f"unknown CNOT variant {variant!r}")


# -- parity check and fusion -------------------------------------------------

# (H, V) <- (HH, HV, VH, VV): keep equal-polarization amplitudes
_EQUAL_PROJECTION = np.array([[1, 0, 0, 0], [0, 0, 0, 1]], dtype=complex)


def _parity_circuit(name: str, declared: float) -> CircuitSpec:
    qa = QubitSlot("rail", (0, 1))
    qb = QubitSlot("rail", (2, 3))
    return CircuitSpec(
        name=name, modes=4, io_convention="polarization",
        inputs=(qa, qb), outputs=(qb,),
        elements=(CircuitElement("pbs", (0, 1, 2, 3), ("hv",)),
                  _rot((0, 1), math.pi / 4.0)),
        herald_modes=(0, 1),
        branches=(HeraldBranch((1, 0), corrections=("Z",)),
                  HeraldBranch((0, 1), corrections=("I",))),
        declared_success=declared, ideal=_EQUAL_PROJECTION)


def parity_check() -> CircuitSpec:
    """Two polarization qubits onto their equal-value subspace.

    A polarizing splitter routes both vertical components to one arm;
    detecting exactly one photon there in the rotated basis heralds
    success and leaves a single qubit carrying the shared value, with
    a sign fix on one of the two outcomes. Zero or two photons at the
    detector flag unequal inputs (the failure branch). Averaged over
    the four basis pairs the success probability is 1/2.
    """
    return _parity_circuit("parity-check", 0.5)


def fusion(variant: str = "type1", input_rotations: bool = True) -> CircuitSpec:
    """Cluster-joining fusion gates on two polarization qubits.

    type1 is the parity-check circuit used destructively on one
    photon: success (a single detector photon) projects onto
    |H><HH| +/- |V><VV| keyed to the outcome, melting two cluster
    fragments into one; failure removes the photon pair as if both
    qubits had been measured in Z.

    type2 detects both photons behind half-wave plates around the
    polarizing splitter and a rotated second output; each of the four
    coincidence signatures projects onto a Bell state (same-parity for
    cross-polarized signatures, opposite-parity otherwise); failure
    acts as X measurements on both qubits.

    With input_rotations=False the two plates before the splitter are
    omitted. Coincidences then project onto the even-parity Bell pair
    (|HH>+|VV> or |HH>-|VV>, keyed to the signature) and the bunched
    failures act as computational measurements, which is the variant
    that merges parity-encoded blocks.
    """
    if variant == "type1":
        return _parity_circuit("fusion-1", 0.5)
    if variant == "type2":
        qa = QubitSlot("rail", (0, 1))
        qb = QubitSlot("rail", (2, 3))
        hwp = CircuitElement("mirror", (0, 1), (math.pi / 4.0,))
        hwp_b = CircuitElement("mirror", (2, 3), (math.pi / 4.0,))
        tail = (CircuitElement("pbs", (0, 1, 2, 3), ("hv",)),
                hwp,
                _rot((2, 3), math.pi / 4.0))
        if input_rotations:
            same = np.array([[1, 0, 0, 1]], dtype=complex) / math.sqrt(2.0)
            cross = np.array([[0, 1, 1, 0]], dtype=complex) / math.sqrt(2.0)
            return CircuitSpec(
                name="fusion-2", modes=4, io_convention="polarization",
                inputs=(qa, qb), outputs=(),
                elements=(hwp, hwp_b) + tail,
                herald_modes=(0, 1, 2, 3),
                branches=(HeraldBranch((1, 0, 1, 0), ideal=cross),
                          HeraldBranch((0, 1, 0, 1), ideal=cross),
                          HeraldBranch((1, 0, 0, 1), ideal=same),
                          HeraldBranch((0, 1, 1, 0), ideal=same)),
                declared_success=0.5)
        even = np.array([[1, 0, 0, 1]], dtype=complex) / math.sqrt(2.0)
        odd = np.array([[1, 0, 0, -1]], dtype=complex) / math.sqrt(2.0)
        return CircuitSpec(
            name="fusion-2-bare", modes=4, io_convention="polarization",
            inputs=(qa, qb), outputs=(),
            elements=tail,
            herald_modes=(0, 1, 2, 3),
            branches=(HeraldBranch((1, 0, 0, 1), ideal=even),
                      HeraldBranch((0, 1, 1, 0), ideal=even),
                      HeraldBranch((1, 0, 1, 0), ideal=odd),
                      HeraldBranch((0, 1, 0, 1), ideal=odd)),
            declared_success=0.5)
    raise FockError(f"unknown fusion variant {variant!r}")


def hyper_bell_transform() -> np.ndarray:
    """Mode unitary separating all four Bell states of one photon.

    Acts on the single-photon subspace spanned by (H, V) x (path 1,
    path 2), basis ordered (H1, V1, H2, V2) in and (H3, V3, H4, V4)
    out. Columns are the images:

        H1 -> (V3 + H4)/sqrt(2)      V1 -> (V4 - H3)/sqrt(2)
        H2 -> (H4 - V3)/sqrt(2)      V2 -> (H3 + V4)/sqrt(2)

    Counting the output photon in the (polarization, path) basis then
    distinguishes the four path-entangled Bell states deterministically,
    which a linear-optical polarization-only measurement cannot do.
    """
    return np.array([[0, -1, 0, 1],
                     [1, 0, -1, 0],
                     [1, 0, 1, 0],
                     [0, 1, 0, 1]], dtype=complex) / math.sqrt(2.0)
