"""Serializable circuit descriptions and a small interpreter.

A circuit file is JSON with top-level keys:

* ``modes``: mode count.
* ``cutoff``: optional total photon cutoff.
* ``input``: mapping from comma-joined occupations to amplitudes as
  [re, im] pairs, e.g. ``{"1,0": [0.7071, 0], "0,1": [0, 0.7071]}``.
* ``elements``: ordered list of ``{"type", "modes", "params"}``.
* ``measure``: optional ``{"modes": [...], "detector": {...}}``.
* ``postselect``: optional mapping mode index -> exact photon count.

Element types: ``bs`` (theta, phi), ``mirror`` (theta, real splitter
with a sign on the reflected port), ``ps`` (phi), ``rot`` (theta),
``polrot`` (alias of rot), ``pbs`` (kind "hv" or "diag" on four
modes), ``kerr`` (tau, two modes), ``fourier`` (no params, any mode
count). Complex numbers are always [re, im] pairs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .fock import DEFAULT_CUTOFF, FockError, FockState
from . import elements as el
from .measurement import DetectorModel, OutcomeDistribution, measure_modes, post_select

__all__ = ["CircuitElement", "Circuit", "apply_element", "apply_elements",
           "circuit_from_dict", "circuit_to_dict", "load_circuit", "run_circuit"]


@dataclass(frozen=True)
class CircuitElement:
    type: str
    modes: tuple
    params: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(int(m) for m in self.modes))
        object.__setattr__(self, "params", tuple(self.params))


def mirror_splitter(theta: float) -> np.ndarray:
    """Real splitter [[c, s], [s, -c]]: sign flip on the reflected port."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [s, -c]], dtype=complex)


def element_matrix(element: CircuitElement) -> np.ndarray | None:
    """Mode unitary for linear elements; None for the Kerr phase."""
    kind, params = element.type, element.params
    if kind == "bs":
        return el.beam_splitter(*params)
    if kind == "mirror":
        return mirror_splitter(*params)
    if kind == "ps":
        return el.phase_shifter(*params)
    if kind in ("rot", "polrot"):
        return el.rotation(*params)
    if kind == "pbs":
        return el.polarizing_bs(params[0] if params else "hv")
    if kind == "fourier":
        return el.fourier(len(element.modes))
    if kind == "kerr":
        return None
    raise FockError(f"unknown element type {kind!r}")


def apply_element(state: FockState, element: CircuitElement) -> FockState:
    if element.type == "kerr":
        (tau,) = element.params
        return el.apply_cross_kerr(state, element.modes[0], element.modes[1], tau)
    matrix = element_matrix(element)
    return el.apply_unitary(state, matrix, element.modes)


def apply_elements(state: FockState, elements: Sequence[CircuitElement]) -> FockState:
    for element in elements:
        state = apply_element(state, element)
    return state


@dataclass
class Circuit:
    modes: int
    input: FockState
    elements: list = field(default_factory=list)
    cutoff: int = DEFAULT_CUTOFF
    measure: dict | None = None
    postselect: dict | None = None


def _state_from_terms(modes, cutoff, terms: dict) -> FockState:
    amps = {}
    for key, (re, im) in terms.items():
        occ = tuple(int(x) for x in str(key).split(","))
        if len(occ) != modes:
            raise FockError(f"input term {key!r} does not have {modes} modes")
        amps[occ] = complex(re, im)
    state = FockState(modes, amps, cutoff)
    if abs(state.norm() - 1.0) > 1e-9:
        raise FockError("input state is not normalized")
    return state


def _state_to_terms(state: FockState) -> dict:
    return {",".join(map(str, occ)): [a.real, a.imag]
            for occ, a in sorted(state.amplitudes.items())}


def circuit_from_dict(data: dict) -> Circuit:
    try:
        modes = int(data["modes"])
        cutoff = int(data.get("cutoff", DEFAULT_CUTOFF))
        input_state = _state_from_terms(modes, cutoff, data["input"])
        elements = [CircuitElement(e["type"], tuple(e["modes"]),
                                   tuple(e.get("params", ())))
                    for e in data.get("elements", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise FockError(f"malformed circuit description: {exc}") from exc
    for e in elements:
        if any(not 0 <= m < modes for m in e.modes):
            raise FockError(f"element {e.type} touches mode outside 0..{modes-1}")
    measure = data.get("measure")
    postselect = data.get("postselect")
    if postselect is not None:
        postselect = {int(k): int(v) for k, v in postselect.items()}
    return Circuit(modes=modes, input=input_state, elements=elements,
                   cutoff=cutoff, measure=measure, postselect=postselect)


def circuit_to_dict(circuit: Circuit) -> dict:
    data = {
        "modes": circuit.modes,
        "cutoff": circuit.cutoff,
        "input": _state_to_terms(circuit.input),
        "elements": [{"type": e.type, "modes": list(e.modes),
                      "params": list(e.params)} for e in circuit.elements],
    }
    if circuit.measure is not None:
        data["measure"] = circuit.measure
    if circuit.postselect is not None:
        data["postselect"] = {str(k): v for k, v in circuit.postselect.items()}
    return data


def load_circuit(path: str) -> Circuit:
    with open(path) as fh:
        return circuit_from_dict(json.load(fh))


def _detector_from_dict(data: dict | None) -> DetectorModel:
    if not data:
        return DetectorModel()
    return DetectorModel(kind=data.get("kind", "number_resolving"),
                         efficiency=float(data.get("efficiency", 1.0)),
                         dark_rate=float(data.get("dark_rate", 0.0)))


def run_circuit(circuit: Circuit) -> dict:
    """Evolve, optionally post-select, optionally measure; report it all.

    The returned dict is JSON-ready: output state terms, post-selection
    probability if requested, and the measured outcome distribution
    with conditional-state summaries.
    """
    state = apply_elements(circuit.input, circuit.elements)
    report = {}
    if circuit.postselect:
        modes = sorted(circuit.postselect)
        pattern = [circuit.postselect[m] for m in modes]
        prob, cond = post_select(state, modes, pattern)
        report["postselect"] = {
            "modes": modes, "pattern": pattern, "probability": prob,
        }
        if cond is None:
            report["output"] = None
            return report
        state = cond
    if circuit.measure:
        modes = [int(m) for m in circuit.measure["modes"]]
        detector = _detector_from_dict(circuit.measure.get("detector"))
        dist = measure_modes(state, modes, detector)
        outcomes = {}
        for sig in sorted(dist.probabilities):
            entry = {"probability": dist.probabilities[sig]}
            cond = dist.conditionals[sig]
            if isinstance(cond, FockState):
                entry["conditional"] = _state_to_terms(cond)
            else:
                entry["conditional_branches"] = len(cond.branches)
            outcomes[",".join(map(str, sig))] = entry
        report["measure"] = {"modes": modes, "outcomes": outcomes}
    else:
        report["output"] = _state_to_terms(state)
    return report
