"""Named verification scenarios behind the command line and the service.

Every scenario runs a protocol at desk scale, compares measured values
against their declared expectations and returns a deterministic report:
same configuration and seed, same bytes.  Wall time is never part of
the report for that reason; runners print it separately.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._version import __version__
from .circuits import mirror_splitter
from .cluster import (GrowthStrategy, LossTree, ghz_purify_scenario,
                      grow_chain_monte_carlo, growth_requirement,
                      micro_cluster_retry, micro_cluster_retry_mc,
                      tree_loss_exact, tree_loss_sim)
from .elements import apply_unitary
from .encoding import (f2_fusion_action, fz_success, gate_cost, parity_encode,
                       readout_success)
from .fock import FockError, basis_state
from .gates import (cnot_gate, cz_gate, fusion, heralded_channel,
                    heralded_kraus, hyper_bell_transform, ns_gate,
                    parity_check, run_gate)
from .measurement import DetectorModel, IDEAL_DETECTOR
from .rng import make_rng
from .sources import (SpectralAmplitude, binomial_amplitudes, counting_rate,
                      heralded_single_photon, hom_coincidence,
                      hom_coincidence_brute, lorentzian_amplitudes,
                      lorentzian_printed_constant)
from .teleport import success_probability, teleport, teleported_cz
from .tomography import (cnot_ideal_chi, process_fidelity,
                         process_tomography)

__all__ = [
    "ScenarioConfig", "list_scenarios", "run_scenario",
    "render_json", "render_csv", "SCENARIO_NAMES",
]

_NS_SUCCESS = (3.0 - math.sqrt(2.0)) / 7.0


@dataclass(frozen=True)
class ScenarioConfig:
    """One reproducible batch job: scenario name, parameter overrides,
    seed and trial count (both meaningful for Monte Carlo scenarios)."""
    scenario: str
    parameters: dict = field(default_factory=dict)
    seed: int | None = None
    trials: int | None = None


def _check(name: str, expected, measured, tolerance) -> dict:
    expected = float(expected)
    measured = float(measured)
    return {
        "name": name,
        "expected": expected,
        "measured": measured,
        "tolerance": float(tolerance),
        "passed": bool(abs(measured - expected) <= tolerance),
    }


def _table(columns, rows) -> dict:
    return {"columns": list(columns), "rows": [list(r) for r in rows]}


def _branch_table(report) -> dict:
    rows = [("|".join(map(str, sig)), p)
            for sig, p in sorted(report.branch_probabilities.items())]
    return _table(("signature", "probability"), rows)


def _gate_checks(report, expected_success, tol_success, tol_fidelity):
    return [
        _check("success probability", expected_success,
               report.measured_success, tol_success),
        _check("heralded action fidelity", 1.0,
               report.action_fidelity, tol_fidelity),
    ]


# -- probabilistic gate scenarios -------------------------------------------


def _sc_ns_klm(params, seed, trials):
    report = run_gate(ns_gate("klm"))
    checks = _gate_checks(report, 0.25, 1e-10, 1e-10)
    return checks, {"branches": _branch_table(report)}, []


def _sc_ns_ralph(params, seed, trials):
    report = run_gate(ns_gate("ralph"))
    checks = _gate_checks(report, _NS_SUCCESS, 1e-9, 1e-9)
    return checks, {"branches": _branch_table(report)}, []


def _sc_ns_rudolph_pan(params, seed, trials):
    report = run_gate(ns_gate("rudolph_pan"))
    checks = [
        _check("success probability (rounded angles)", _NS_SUCCESS,
               report.measured_success, 1e-3),
        _check("heralded action fidelity", 1.0, report.action_fidelity, 1e-4),
    ]
    return checks, {"branches": _branch_table(report)}, []


def _entanglement_entropy_bits(vector: np.ndarray) -> float:
    rho = np.outer(vector, vector.conj()).reshape(2, 2, 2, 2)
    reduced = np.einsum("ijkj->ik", rho)
    eigs = np.linalg.eigvalsh(reduced)
    eigs = eigs[eigs > 1e-15]
    return float(-(eigs * np.log2(eigs)).sum())


def _sc_cz_two_ns(params, seed, trials):
    spec = cz_gate("two_ns")
    report = run_gate(spec)
    checks = _gate_checks(report, 1.0 / 16.0, 1e-10, 1e-9)
    kraus = list(heralded_kraus(spec).values())[0]
    plus = kraus @ (np.full(4, 0.5, dtype=complex))
    plus = plus / np.linalg.norm(plus)
    checks.append(_check("entanglement entropy on uniform input (bits)",
                         1.0, _entanglement_entropy_bits(plus), 1e-9))
    return checks, {"branches": _branch_table(report)}, []


def _sc_cz_knill(params, seed, trials):
    exact = run_gate(cz_gate("knill", angles="exact"))
    rounded = run_gate(cz_gate("knill", angles="rounded"))
    checks = [
        _check("success probability (exact angles)", 2.0 / 27.0,
               exact.measured_success, 1e-10),
        _check("heralded action fidelity (exact angles)", 1.0,
               exact.action_fidelity, 1e-9),
        _check("success probability (rounded angles)", 2.0 / 27.0,
               rounded.measured_success, 1e-3),
        _check("heralded action fidelity (rounded angles)", 1.0,
               rounded.action_fidelity, 1e-5),
    ]
    return checks, {"branches": _branch_table(exact)}, []


def _sc_cz_kerr(params, seed, trials):
    report = run_gate(cz_gate("kerr"))
    checks = _gate_checks(report, 1.0, 1e-12, 1e-12)
    return checks, {}, []


def _sc_cnot_ralph(params, seed, trials):
    report = run_gate(cnot_gate("ralph_coincidence"))
    checks = _gate_checks(report, 1.0 / 9.0, 1e-10, 1e-10)
    spread = max(abs(p - 1.0 / 9.0) for p in report.per_input_success)
    checks.append(_check("per-input coincidence success spread", 0.0,
                         spread, 1e-10))
    return checks, {"branches": _branch_table(report)}, []


def _sc_cnot_pittman(params, seed, trials):
    spec = cnot_gate("pittman_ancilla")
    report = run_gate(spec)
    checks = _gate_checks(report, 0.25, 1e-10, 1e-9)
    kraus = list(heralded_kraus(spec).values())
    minus_v = np.array([0.0, 1.0, 0.0, -1.0], dtype=complex) / math.sqrt(2.0)
    singlet = np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / math.sqrt(2.0)
    hit = sum(abs(np.vdot(singlet, k @ minus_v)) ** 2 for k in kraus)
    mass = sum(float(np.linalg.norm(k @ minus_v) ** 2) for k in kraus)
    checks.append(_check("singlet fidelity for (|H>-|V>)|V> input", 1.0,
                         hit / mass, 1e-9))
    return checks, {"branches": _branch_table(report)}, []


def _sc_parity_check(params, seed, trials):
    report = run_gate(parity_check())
    per = report.per_input_success
    checks = [
        _check("mean success probability", 0.5, report.measured_success, 1e-12),
        _check("heralded action fidelity", 1.0, report.action_fidelity, 1e-9),
        _check("equal-parity inputs kept", 1.0, min(per[0], per[3]), 1e-10),
        _check("odd-parity inputs rejected", 0.0, max(per[1], per[2]), 1e-12),
    ]
    return checks, {"branches": _branch_table(report)}, []


def _sc_fusion(variant):
    def run(params, seed, trials):
        report = run_gate(fusion(variant))
        checks = _gate_checks(report, 0.5, 1e-12, 1e-9)
        return checks, {"branches": _branch_table(report)}, []
    return run


def _sc_hyper_bell(params, seed, trials):
    u = hyper_bell_transform()
    images = {
        "H1": {"V3": 1.0, "H4": 1.0},
        "V1": {"V4": 1.0, "H3": -1.0},
        "H2": {"H4": 1.0, "V3": -1.0},
        "V2": {"V4": 1.0, "H3": 1.0},
    }
    out_index = {"H3": 0, "V3": 1, "H4": 2, "V4": 3}
    worst = 0.0
    for col, (_, terms) in enumerate(images.items()):
        target = np.zeros(4, dtype=complex)
        for label, sign in terms.items():
            target[out_index[label]] = sign / math.sqrt(2.0)
        worst = max(worst, float(np.max(np.abs(u[:, col] - target))))
    gram = u.conj().T @ u
    checks = [
        _check("declared four-line transformation", 0.0, worst, 1e-12),
        _check("unitarity defect", 0.0,
               float(np.max(np.abs(gram - np.eye(4)))), 1e-12),
        _check("image orthogonality", 0.0,
               float(np.max(np.abs(gram - np.diag(np.diag(gram))))), 1e-12),
    ]
    rows = [(inp, " ".join(f"{sign:+.0f}|{label}>"
                           for label, sign in terms.items()))
            for inp, terms in images.items()]
    return checks, {"transformation": _table(("input", "image"), rows)}, []


# -- teleportation -----------------------------------------------------------


def _sc_teleport_tn(params, seed, trials):
    n_max = int(params["n"])
    checks = []
    rows = []
    for n in range(1, n_max + 1):
        result = teleport(0.6, 0.8, n)
        expected = float(success_probability(n))
        checks.append(_check(f"success probability at n={n}", expected,
                             result.success_probability, 1e-12))
        rows.append((n, expected, result.success_probability))
    result = teleport(0.6, 0.8, n_max)
    m_pick = int(params["m"])
    modes = sorted({o.output_mode for o in result.outcomes
                    if o.success and o.m == m_pick})
    checks.append(_check(f"output mode for m={m_pick}", n_max + m_pick,
                         modes[0] if modes else -1, 0.0))
    return checks, {"success": _table(("n", "expected", "measured"), rows)}, []


def _sc_teleport_cz(params, seed, trials):
    n_max = int(params["n"])
    checks = []
    rows = []
    for n in range(1, n_max + 1):
        result = teleported_cz(n, (0.6, 0.8), (1 / math.sqrt(2), 1 / math.sqrt(2)))
        expected = (n / (n + 1.0)) ** 2
        checks.append(_check(f"joint success at n={n}", expected,
                             result.joint_success, 1e-10))
        checks.append(_check(f"worst branch fidelity at n={n}", 1.0,
                             result.min_fidelity, 1e-9))
        rows.append((n, expected, result.joint_success, result.min_fidelity))
    table = _table(("n", "expected", "measured", "min_fidelity"), rows)
    return checks, {"success": table}, []


# -- encoded qubits ----------------------------------------------------------


def _sc_parity_code(params, seed, trials):
    n = int(params["n"])
    m = int(params["m"])
    psi = parity_encode(0.6, 0.8, n)
    block = parity_encode(1.0, 0.0, m)
    branches = f2_fusion_action(psi, block)
    total = sum(b.probability for b in branches)
    success = sum(b.probability for b in branches if b.success)
    match = min((b.match for b in branches if b.success), default=0.0)
    checks = [
        _check("branch probabilities sum to one", 1.0, total, 1e-12),
        _check("fusion success probability", 0.5, success, 1e-12),
        _check("worst success-branch match", 1.0, match, 1e-9),
    ]
    rows = [("|".join(map(str, b.signature)), b.probability,
             int(b.success), ";".join(b.corrections) or "-")
            for b in branches]
    eta = float(params["eta"])
    q = int(params["q"])
    p_read, per_block = readout_success(n, q, eta)
    costs = [gate_cost(g, n, q) for g in ("x_theta", "z", "z_half", "cnot")]
    cost_rows = [(c.gate, c.cnot_parity, c.rotations, c.physical_z,
                  c.parity_phase) for c in costs]
    tables = {
        "fusion_branches": _table(
            ("signature", "probability", "success", "corrections"), rows),
        "readout": _table(("n", "q", "eta", "per_block", "success"),
                          [(n, q, eta, per_block, p_read)]),
        "gate_costs": _table(
            ("gate", "cnot_parity", "rotations", "physical_z",
             "parity_phase"), cost_rows),
    }
    return checks, tables, []


def _sc_fz_thresholds(params, seed, trials):
    quarter = fz_success(Fraction(1, 4), level=0)
    one_level = fz_success(Fraction(1, 4), level=1)
    checks = [
        _check("F_Z at f=1/4", 7.0 / 52.0, float(quarter[0]), 1e-15),
        _check("one concatenation F_Z1 at f=1/4",
               float(Fraction(4753, 124228)), float(one_level[0]), 1e-15),
        _check("one concatenation success P_Z1", 0.96174,
               float(one_level[1]), 1e-5),
    ]
    rows = []
    worst_above_half = 0.0
    improvement_below = 0.0
    for i in range(1, 100):
        f = i / 100.0
        fz, p_z, p_zz = fz_success(f)
        rows.append((f, fz, p_z, f - fz))
        if f > 0.5:
            worst_above_half = max(worst_above_half, f - fz)
        if abs(f - 0.25) < 1e-12:
            improvement_below = f - fz
    checks.append(_check("no improvement for f > 1/2", 0.0,
                         max(0.0, worst_above_half), 0.0))
    checks.append(_check("improvement exists at f = 1/4", 1.0,
                         1.0 if improvement_below > 0 else 0.0, 0.0))
    flags = [
        "declared encoded-CZ success above 0.95 is not derivable from the "
        "failure recursion implemented here; the one-level Z-readout "
        "success 0.961740 is reported for reference, not asserted",
    ]
    return checks, {"recursion": _table(("f", "F_Z", "P_Z", "improvement"),
                                        rows)}, flags


# -- cluster growth ----------------------------------------------------------


def _sc_growth(params, seed, trials):
    p = float(params["p"])
    checks = [
        _check("type-I requirement (d_s=1, d_f=1, p=1/2)", 2.0,
               growth_requirement(0.5, 1.0, 1.0), 1e-12),
        _check("type-II requirement (d_s=2, d_f=1, p=1/2)", 3.0,
               growth_requirement(0.5, 2.0, 1.0), 1e-12),
        _check("bucket type-II requirement (d_s=2, d_f=2)", 2.0 / p,
               growth_requirement(p, 2.0, 2.0), 1e-12),
        _check("two-qubit attach requirement (p=2/3, d_s=0, d_f=1)", 0.5,
               growth_requirement(2.0 / 3.0, 0.0, 1.0), 1e-12),
    ]
    strategy = GrowthStrategy(p, int(params["d_s"]), int(params["d_f"]),
                              int(params["m"]))
    stats = grow_chain_monte_carlo(strategy, int(params["target"]),
                                   trials, seed)
    z = abs(stats.mean_drift - stats.analytic_drift) / stats.drift_stderr
    checks.append(_check("measured drift z-score", 0.0, z, 3.0))
    rows = [(stats.p, stats.d_s, stats.d_f, stats.m, stats.analytic_drift,
             stats.mean_drift, stats.drift_stderr, stats.reached,
             stats.died, stats.truncated)]
    table = _table(("p", "d_s", "d_f", "m", "analytic_drift", "mean_drift",
                    "stderr", "reached", "died", "truncated"), rows)
    return checks, {"monte_carlo": table}, []


def _sc_micro_cluster(params, seed, trials):
    k = int(params["k"])
    p = float(params["p"])
    stats = micro_cluster_retry_mc(k, p, trials, seed)
    analytic = micro_cluster_retry(k, p)
    z = abs(stats.estimate - stats.exact) / stats.stderr
    checks = [
        _check("analytic retry success 1-(1-p)^k", analytic,
               stats.exact, 1e-15),
        _check("monte carlo z-score", 0.0, z, 3.0),
    ]
    rows = [(j, micro_cluster_retry(j, p)) for j in range(1, k + 1)]
    return checks, {"retry_curve": _table(("k", "success"), rows)}, []


def _sc_loss_tree(params, seed, trials):
    eta = float(params["eta"])
    eta_low = float(params["eta_low"])
    branch = int(params["branch"])
    depths = (1, 3, 5)
    checks = []
    rows = []
    exact_vals = []
    for depth in depths:
        tree = LossTree((branch,) * depth, eta)
        exact = tree_loss_exact(tree)
        stats = tree_loss_sim(tree, trials, seed)
        z = abs(stats.rate - exact) / stats.stderr
        exact_vals.append(exact)
        checks.append(_check(f"monte carlo z-score at depth {depth}", 0.0,
                             z, 3.0))
        rows.append((depth, "x".join([str(branch)] * depth), eta,
                     exact, stats.rate, stats.stderr))
    monotone = all(b > a for a, b in zip(exact_vals, exact_vals[1:]))
    checks.append(_check("success monotone in depth", 1.0,
                         1.0 if monotone else 0.0, 0.0))
    bound = 1.0 - (1.0 - eta_low) ** branch
    worst = 0.0
    for depth in depths:
        tree = LossTree((branch,) * depth, eta_low)
        exact = tree_loss_exact(tree)
        rows.append((depth, "x".join([str(branch)] * depth), eta_low,
                     exact, float("nan"), float("nan")))
        worst = max(worst, exact)
    checks.append(_check("low-efficiency success below first-click bound",
                         0.0, max(0.0, worst - bound), 1e-12))
    table = _table(("depth", "branching", "eta", "exact", "measured",
                    "stderr"), rows)
    return checks, {"trees": table}, []


def _sc_ghz_purify(params, seed, trials):
    ideal = ghz_purify_scenario(0.0, 1.0, cutoff=8)
    checks = [
        _check("acceptance probability at ideal sources", 0.125,
               ideal.acceptance_probability, 1e-10),
        _check("fidelity at ideal sources", 1.0, ideal.fidelity, 1e-9),
    ]
    p_s = float(params["p_s"])
    eta = float(params["eta"])
    report = ghz_purify_scenario(p_s, eta, cutoff=8)
    flags = []
    if report.fidelity is None:
        flags.append("no coincidences at these settings; conditional "
                     "fidelity undefined")
    else:
        checks.append(_check("conditional fidelity", 1.0,
                             report.fidelity, 1e-9))
        checks.append(_check("filtering never hurts", 0.0,
                             max(0.0, report.unfiltered_fidelity -
                                 report.fidelity), 1e-12))
    rows = [(p_s, eta, report.acceptance_probability,
             report.fidelity if report.fidelity is not None else float("nan"),
             report.unfiltered_fidelity)]
    table = _table(("p_s", "eta", "acceptance", "fidelity", "unfiltered"),
                   rows)
    return checks, {"purification": table}, flags


# -- sources -----------------------------------------------------------------


def _sc_source_curves(params, seed, trials):
    n_modes = int(params["n_modes"])
    mu = float(params["mu"])
    binom = binomial_amplitudes(n_modes, mu)
    lorentz = lorentzian_amplitudes(n_modes, mu)
    peak = int(np.argmax(np.abs(binom.array()))) + 1
    checks = [
        _check("binomial norm", 1.0,
               float(np.sum(np.abs(binom.array()) ** 2)), 1e-12),
        _check("lorentzian norm", 1.0,
               float(np.sum(np.abs(lorentz.array()) ** 2)), 1e-12),
        _check("binomial carrier frequency", mu * n_modes, peak, 1.0),
    ]
    spec_rows = [(m + 1, float(abs(binom.amplitudes[m]) ** 2),
                  float(abs(lorentz.amplitudes[m]) ** 2))
                 for m in range(n_modes)]
    ts = np.linspace(0.0, 2.0 * math.pi, 129)
    rate = counting_rate(binom, ts)
    rate_rows = [(float(t), float(v)) for t, v in zip(ts, rate)]
    printed = lorentzian_printed_constant(mu)
    direct = float(np.sum(mu / (mu ** 2 + np.arange(1, n_modes + 1) ** 2)))
    flags = [
        "lorentzian closed-form normalization constant "
        f"{printed:.6f} disagrees with the direct amplitude sum "
        f"{math.sqrt(direct):.6f} at these settings; amplitudes are "
        "normalized numerically and the constant kept for reference",
    ]
    tables = {
        "spectra": _table(("m", "binomial_weight", "lorentzian_weight"),
                          spec_rows),
        "counting_rate": _table(("t", "rate"), rate_rows),
    }
    return checks, tables, flags


def _sc_hom_dip(params, seed, trials):
    dim = int(params["dim"])
    base = np.zeros(dim, dtype=complex)
    ortho = np.zeros(dim, dtype=complex)
    base[0] = 1.0
    ortho[1] = 1.0
    alpha = SpectralAmplitude(tuple(base))
    checks = [
        _check("identical spectra coincidence", 0.0,
               hom_coincidence(alpha, alpha), 1e-12),
        _check("orthogonal spectra coincidence", 0.5,
               hom_coincidence(alpha, SpectralAmplitude(tuple(ortho))), 1e-12),
    ]
    rows = []
    for i in range(21):
        x = i / 20.0
        mixed = x * base + math.sqrt(max(0.0, 1.0 - x * x)) * ortho
        c = hom_coincidence(alpha, SpectralAmplitude(tuple(mixed)))
        rows.append((x, c, 0.5 * (1.0 - x * x)))
    rng = make_rng(seed)
    worst = 0.0
    for _ in range(trials):
        x = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        y = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        sa = SpectralAmplitude(tuple(x / np.linalg.norm(x)))
        sb = SpectralAmplitude(tuple(y / np.linalg.norm(y)))
        worst = max(worst, abs(hom_coincidence(sa, sb) -
                               hom_coincidence_brute(sa, sb)))
    checks.append(_check("overlap formula vs two-photon simulation", 0.0,
                         worst, 1e-10))
    return checks, {"dip": _table(("overlap", "coincidence", "analytic"),
                                  rows)}, []


def _sc_pdc_herald(params, seed, trials):
    bucket = DetectorModel(kind="bucket", efficiency=1.0)

    def bucket_fidelity(lam):
        ens = heralded_single_photon(lam, bucket)
        return sum(p * abs(s.amplitudes.get((1,), 0.0)) ** 2
                   for p, s in ens.branches)

    checks = [
        _check("bucket herald fidelity at lambda=0.01", 0.9999,
               bucket_fidelity(0.01), 1e-12),
    ]
    ens = heralded_single_photon(0.3, IDEAL_DETECTOR)
    nr_fid = sum(p * abs(s.amplitudes.get((1,), 0.0)) ** 2
                 for p, s in ens.branches)
    checks.append(_check("number-resolving herald fidelity", 1.0,
                         nr_fid, 1e-12))
    rows = []
    worst = 0.0
    fids = []
    for i in range(1, 11):
        lam = 0.05 * i
        fid = bucket_fidelity(lam)
        fids.append(fid)
        worst = max(worst, abs(fid - (1.0 - lam * lam)))
        rows.append((lam, fid, 1.0 - lam * lam))
    checks.append(_check("bucket fidelity equals 1-|lambda|^2", 0.0,
                         worst, 1e-10))
    monotone = all(b < a for a, b in zip(fids, fids[1:]))
    checks.append(_check("bucket fidelity monotone decreasing", 1.0,
                         1.0 if monotone else 0.0, 0.0))
    return checks, {"herald": _table(("lambda", "fidelity", "analytic"),
                                     rows)}, []


# -- tomography and demos ----------------------------------------------------


def _sc_tomography_cnot(params, seed, trials):
    channel, success = heralded_channel(cnot_gate("pittman_ancilla"))
    chi = process_tomography(channel)
    reference = cnot_ideal_chi()
    fid = process_fidelity(chi, reference)
    checks = [
        _check("heralded success probability", 0.25, success, 1e-10),
        _check("process fidelity to ideal CNOT", 1.0, fid, 1e-9),
        _check("chi trace", 1.0, float(np.trace(chi.chi).real), 1e-10),
    ]
    rows = []
    for m in range(chi.d):
        for n in range(chi.d):
            z = chi.chi[m, n]
            if abs(z) > 1e-10:
                rows.append((chi.basis[m], chi.basis[n],
                             float(z.real), float(z.imag)))
    return checks, {"chi_nonzero": _table(("row", "column", "re", "im"),
                                          rows)}, []


def _sc_cerf_hadamard(params, seed, trials):
    state = basis_state((1, 0), cutoff=2)
    h = mirror_splitter(math.pi / 4.0)
    once = apply_unitary(state, h, modes=[0, 1])
    p0 = abs(once.amplitude((1, 0))) ** 2
    p1 = abs(once.amplitude((0, 1))) ** 2
    twice = apply_unitary(once, h, modes=[0, 1])
    checks = [
        _check("equal path split (mode 0)", 0.5, p0, 1e-12),
        _check("equal path split (mode 1)", 0.5, p1, 1e-12),
        _check("double application returns the input", 1.0,
               abs(twice.amplitude((1, 0))) ** 2, 1e-12),
    ]
    flags = [
        "demo only: one photon over 2^k paths can carry k qubits with "
        "single-qubit gates as splitters, but the mode count grows "
        "exponentially; only this Hadamard is exercised",
    ]
    table = _table(("pattern", "probability"),
                   [("1,0", p0), ("0,1", p1)])
    return checks, {"split": table}, flags


# -- registry ----------------------------------------------------------------


@dataclass(frozen=True)
class _Scenario:
    func: object
    description: str
    monte_carlo: bool = False
    defaults: dict = field(default_factory=dict)
    default_trials: int | None = None


_REGISTRY = {
    "ns-klm": _Scenario(_sc_ns_klm, "three-mode nonlinear sign gate, success 1/4"),
    "ns-ralph": _Scenario(_sc_ns_ralph,
                          "two-splitter nonlinear sign gate, success (3-sqrt2)/7"),
    "ns-rudolph-pan": _Scenario(_sc_ns_rudolph_pan,
                                "nonlinear sign gate at rounded angles"),
    "cz-two-ns": _Scenario(_sc_cz_two_ns,
                           "conditional phase from two NS gates, success 1/16"),
    "cz-knill": _Scenario(_sc_cz_knill,
                          "six-mode conditional phase, success 2/27"),
    "cz-kerr": _Scenario(_sc_cz_kerr,
                         "deterministic conditional phase from a cross-Kerr medium"),
    "cnot-ralph": _Scenario(_sc_cnot_ralph,
                            "coincidence-basis CNOT, success 1/9"),
    "cnot-pittman": _Scenario(_sc_cnot_pittman,
                              "Bell-pair assisted CNOT with corrections, success 1/4"),
    "parity-check": _Scenario(_sc_parity_check,
                              "polarization parity check, success 1/2"),
    "fusion-1": _Scenario(_sc_fusion("type1"), "type-I fusion, success 1/2"),
    "fusion-2": _Scenario(_sc_fusion("type2"), "type-II fusion, success 1/2"),
    "hyper-bell": _Scenario(_sc_hyper_bell,
                            "polarization and path Bell-state transform"),
    "teleport-tn": _Scenario(_sc_teleport_tn,
                             "teleportation through |t_n>, success n/(n+1)",
                             defaults={"n": 5, "m": 2}),
    "teleport-cz": _Scenario(_sc_teleport_cz,
                             "teleported conditional phase, success (n/(n+1))^2",
                             defaults={"n": 2}),
    "parity-code": _Scenario(_sc_parity_code,
                             "parity-code fusion growth and readout",
                             defaults={"n": 2, "m": 2, "q": 3, "eta": 0.9}),
    "fz-thresholds": _Scenario(_sc_fz_thresholds,
                               "encoded gate failure recursion and thresholds"),
    "growth": _Scenario(_sc_growth,
                        "chain growth requirements and drift Monte Carlo",
                        monte_carlo=True,
                        defaults={"p": 0.5, "d_s": 2.0, "d_f": 1.0,
                                  "m": 4.0, "target": 50},
                        default_trials=20000),
    "micro-cluster": _Scenario(_sc_micro_cluster,
                               "micro-cluster repeat-until-success statistics",
                               monte_carlo=True,
                               defaults={"k": 5, "p": 0.25},
                               default_trials=50000),
    "loss-tree": _Scenario(_sc_loss_tree,
                           "loss-tolerant tree measurement success",
                           monte_carlo=True,
                           defaults={"eta": 0.9, "eta_low": 0.45,
                                     "branch": 4},
                           default_trials=20000),
    "ghz-purify": _Scenario(_sc_ghz_purify,
                            "four-photon GHZ purification by fusion coincidences",
                            defaults={"p_s": 0.3, "eta": 1.0}),
    "source-curves": _Scenario(_sc_source_curves,
                               "single-photon spectral families and counting rate",
                               defaults={"n_modes": 64, "mu": 0.2}),
    "hom-dip": _Scenario(_sc_hom_dip,
                         "two-photon interference dip vs spectral overlap",
                         monte_carlo=True,
                         defaults={"dim": 6},
                         default_trials=5),
    "pdc-herald": _Scenario(_sc_pdc_herald,
                            "heralded single photons from down-conversion"),
    "tomography-cnot": _Scenario(_sc_tomography_cnot,
                                 "process tomography of the heralded CNOT"),
    "cerf-hadamard-demo": _Scenario(_sc_cerf_hadamard,
                                    "path-encoded Hadamard demo"),
}

SCENARIO_NAMES = tuple(sorted(_REGISTRY))


def list_scenarios() -> list:
    """Names, descriptions and defaults of every shipped scenario."""
    out = []
    for name in SCENARIO_NAMES:
        sc = _REGISTRY[name]
        out.append({
            "name": name,
            "description": sc.description,
            "monte_carlo": sc.monte_carlo,
            "defaults": dict(sc.defaults),
            "default_trials": sc.default_trials,
        })
    return out


def run_scenario(config: ScenarioConfig) -> dict:
    """Execute a named scenario and return its deterministic report."""
    if config.scenario not in _REGISTRY:
        raise FockError(f"unknown scenario {config.scenario!r}")
    sc = _REGISTRY[config.scenario]
    params = dict(sc.defaults)
    for key, value in (config.parameters or {}).items():
        if key not in params:
            raise FockError(
                f"unknown parameter {key!r} for scenario {config.scenario!r}")
        params[key] = value
    if sc.monte_carlo and config.seed is None:
        raise FockError(
            f"scenario {config.scenario!r} is Monte Carlo and needs a seed")
    trials = config.trials if config.trials is not None else sc.default_trials
    checks, tables, flags = sc.func(params, config.seed, trials)
    return {
        "scenario": config.scenario,
        "version": __version__,
        "seed": config.seed,
        "trials": trials,
        "parameters": params,
        "checks": checks,
        "tables": tables,
        "flags": flags,
        "passed": all(c["passed"] for c in checks),
    }


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_csv(report: dict) -> str:
    lines = [f"# scenario,{report['scenario']},version,{report['version']},"
             f"seed,{report['seed']},trials,{report['trials']}"]
    lines.append("# checks")
    lines.append("name,expected,measured,tolerance,passed")
    for c in report["checks"]:
        lines.append(",".join([c["name"].replace(",", ";"),
                               _cell(c["expected"]), _cell(c["measured"]),
                               _cell(c["tolerance"]), str(c["passed"])]))
    for name in sorted(report["tables"]):
        table = report["tables"][name]
        lines.append(f"# table,{name}")
        lines.append(",".join(table["columns"]))
        for row in table["rows"]:
            lines.append(",".join(_cell(v) for v in row))
    for flag in report["flags"]:
        lines.append(f"# flag,{flag.replace(',', ';')}")
    return "\n".join(lines) + "\n"
