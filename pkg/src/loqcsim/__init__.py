"""Desk-scale simulation and verification of linear-optical quantum computing.

Sparse Fock simulation, probabilistic gate constructions, teleported
gates, parity and redundant encodings, cluster-growth accounting,
photon-source and detector models, and process tomography, with every
headline success probability wired to an executable check.
"""

from ._version import __version__
from .fock import (
    DEFAULT_CUTOFF,
    DensityOperator,
    FockError,
    FockState,
    StateEnsemble,
    basis_state,
    compose,
    inner_product,
    ladder,
    superpose,
    to_density,
    vacuum,
)
from .elements import (
    apply_cross_kerr,
    apply_unitary,
    apply_unitary_permanent,
    beam_splitter,
    embed,
    fourier,
    permanent,
    phase_shifter,
    polarizing_bs,
    reck_decompose,
    reck_recompose,
    rotation,
)
from .measurement import (
    DetectorModel,
    OutcomeDistribution,
    measure_modes,
    post_select,
    povm_bucket,
    povm_number_resolving,
)
from .circuits import (
    Circuit,
    CircuitElement,
    circuit_from_dict,
    circuit_to_dict,
    load_circuit,
    run_circuit,
)
from .gates import (
    CircuitSpec,
    GateReport,
    cnot_gate,
    cz_gate,
    fusion,
    heralded_channel,
    heralded_kraus,
    hyper_bell_transform,
    ns_gate,
    parity_check,
    run_gate,
)
from .teleport import (
    TeleportResult,
    TeleportedCz,
    build_czn,
    build_tn,
    success_probability,
    teleport,
    teleported_cz,
)
from .encoding import (
    ParityQubit,
    f2_fusion_action,
    fz_success,
    gate_cost,
    parity_encode,
    readout_success,
    redundant_encode,
)
from .cluster import (
    GhzPurifyReport,
    GraphState,
    GrowthStrategy,
    LossTree,
    ghz_purify_scenario,
    graph_fock_state,
    grow_chain_monte_carlo,
    growth_requirement,
    micro_cluster_retry,
    micro_cluster_retry_mc,
    tree_loss_exact,
    tree_loss_sim,
)
from .sources import (
    SpectralAmplitude,
    binomial_amplitudes,
    heralded_single_photon,
    hom_coincidence,
    hom_coincidence_brute,
    imperfect_single_photon,
    lorentzian_amplitudes,
    pdc_state,
    two_photon_g2,
)
from .tomography import (
    ProcessMatrix,
    cnot_ideal_chi,
    process_fidelity,
    process_tomography,
    state_fidelity,
    unitary_chi,
)
from .scenarios import (
    SCENARIO_NAMES,
    ScenarioConfig,
    list_scenarios,
    render_csv,
    render_json,
    run_scenario,
)

__all__ = [
    "__version__",
    "DEFAULT_CUTOFF", "DensityOperator", "FockError", "FockState",
    "StateEnsemble", "basis_state", "compose", "inner_product", "ladder",
    "superpose", "to_density", "vacuum",
    "apply_cross_kerr", "apply_unitary", "apply_unitary_permanent",
    "beam_splitter", "embed", "fourier", "permanent", "phase_shifter",
    "polarizing_bs", "reck_decompose", "reck_recompose", "rotation",
    "DetectorModel", "OutcomeDistribution", "measure_modes", "post_select",
    "povm_bucket", "povm_number_resolving",
    "Circuit", "CircuitElement", "circuit_from_dict", "circuit_to_dict",
    "load_circuit", "run_circuit",
    "CircuitSpec", "GateReport", "cnot_gate", "cz_gate", "fusion",
    "heralded_channel", "heralded_kraus", "hyper_bell_transform", "ns_gate",
    "parity_check", "run_gate",
    "TeleportResult", "TeleportedCz", "build_czn", "build_tn",
    "success_probability", "teleport", "teleported_cz",
    "ParityQubit", "f2_fusion_action", "fz_success", "gate_cost",
    "parity_encode", "readout_success", "redundant_encode",
    "GhzPurifyReport", "GraphState", "GrowthStrategy", "LossTree",
    "ghz_purify_scenario", "graph_fock_state", "grow_chain_monte_carlo",
    "growth_requirement", "micro_cluster_retry", "micro_cluster_retry_mc",
    "tree_loss_exact", "tree_loss_sim",
    "SpectralAmplitude", "binomial_amplitudes", "heralded_single_photon",
    "hom_coincidence", "hom_coincidence_brute", "imperfect_single_photon",
    "lorentzian_amplitudes", "pdc_state", "two_photon_g2",
    "ProcessMatrix", "cnot_ideal_chi", "process_fidelity",
    "process_tomography", "state_fidelity", "unitary_chi",
    "SCENARIO_NAMES", "ScenarioConfig", "list_scenarios", "render_csv",
    "render_json", "run_scenario",
]
