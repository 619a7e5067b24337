"""Graph states, fusion-driven growth statistics and loss tolerance.

Cluster fragments are tracked as plain graphs: vertices are logical
qubits and the state is fixed by the stabilizer generators
``X_q Z_neighbors(q)``.  Measurement rules, chain-growth accounting,
micro-cluster retries, loss-tolerant tree readout and the heralded
four-photon GHZ purification scenario all live here.  Growth Monte
Carlo deliberately tracks sizes and topology only; state-level
agreement of the graph rules is validated separately on small clusters.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .circuits import apply_elements, mirror_splitter
from .elements import apply_unitary
from .fock import DEFAULT_CUTOFF, FockError, FockState, StateEnsemble, basis_state, superpose
from .gates import PAULI, fusion
from .measurement import DetectorModel, measure_modes, post_select
from .rng import make_rng

__all__ = [
    "GraphState", "graph", "chain_graph", "star_graph",
    "stabilizers", "paulis_commute", "measure_z", "measure_x",
    "graph_fock_state", "apply_qubit_pauli", "measure_polarization_qubit",
    "stabilizer_expectation",
    "GrowthStrategy", "growth_requirement", "GrowthStats",
    "grow_chain_monte_carlo", "RetryStats", "micro_cluster_retry",
    "micro_cluster_retry_mc",
    "LossTree", "tree_loss_exact", "TreeLossStats", "tree_loss_sim",
    "GhzPurifyReport", "ghz_purify_scenario",
]


# -- graph bookkeeping -----------------------------------------------------

@dataclass(frozen=True)
class GraphState:
    """Simple undirected graph; vertices sorted, edges as sorted pairs."""
    vertices: tuple
    edges: tuple

    def neighbors(self, v) -> tuple:
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return tuple(sorted(out))

    def degree(self, v) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u, v) -> bool:
        return tuple(sorted((u, v))) in set(self.edges)


def graph(vertices, edges=()) -> GraphState:
    verts = tuple(sorted(set(vertices)))
    vset = set(verts)
    norm = set()
    for u, v in edges:
        if u == v:
            raise FockError(f"self-loop on vertex {u!r}")
        if u not in vset or v not in vset:
            raise FockError(f"edge ({u!r}, {v!r}) references a missing vertex")
        norm.add(tuple(sorted((u, v))))
    return GraphState(verts, tuple(sorted(norm)))


def chain_graph(n: int) -> GraphState:
    return graph(range(n), [(k, k + 1) for k in range(n - 1)])


def star_graph(n: int) -> GraphState:
    """Center 0 bonded to leaves 1..n-1."""
    return graph(range(n), [(0, k) for k in range(1, n)])


def stabilizers(g: GraphState) -> list:
    """Generators X_v Z_neighbors(v), one dict per vertex."""
    gens = []
    for v in g.vertices:
        op = {v: "X"}
        for u in g.neighbors(v):
            op[u] = "Z"
        gens.append(op)
    return gens


def paulis_commute(p: dict, q: dict) -> bool:
    """Two Pauli products commute iff they anticommute on an even
    number of shared vertices."""
    clashes = 0
    for v, a in p.items():
        b = q.get(v, "I")
        if "I" not in (a, b) and a != b:
            clashes += 1
    return clashes % 2 == 0


def measure_z(g: GraphState, v) -> GraphState:
    """Z measurement severs all bonds of v and drops it."""
    if v not in g.vertices:
        raise FockError(f"vertex {v!r} not in graph")
    verts = tuple(u for u in g.vertices if u != v)
    edges = tuple(e for e in g.edges if v not in e)
    return GraphState(verts, edges)


def measure_x(g: GraphState, v, heir=None) -> GraphState:
    """X measurement removes v, transferring its bonds to one neighbor.

    The heir (lowest-index neighbor unless given) inherits all of v's
    bonds; every other neighbor of v ends up singly connected to the
    heir, handing its remaining bonds over as well.  Validated against
    full state simulation on small clusters: the five-chain center
    collapses to a four-qubit GHZ star, and two adjacent X measurements
    shorten a chain by two.
    """
    if v not in g.vertices:
        raise FockError(f"vertex {v!r} not in graph")
    nbrs = g.neighbors(v)
    if not nbrs:
        return measure_z(g, v)
    if heir is None:
        heir = nbrs[0]
    elif heir not in nbrs:
        raise FockError(f"heir {heir!r} is not a neighbor of {v!r}")
    others = [u for u in nbrs if u != heir]
    edges = set(g.edges)
    edges = {e for e in edges if v not in e}
    for u in others:
        handover = [e for e in edges if u in e]
        for e in handover:
            w = e[0] if e[1] == u else e[1]
            edges.discard(e)
            if w != heir:
                edges.add(tuple(sorted((heir, w))))
        edges.add(tuple(sorted((heir, u))))
    verts = tuple(u for u in g.vertices if u != v)
    return GraphState(verts, tuple(sorted(edges)))


# -- Fock-level bridge for small clusters ----------------------------------

def graph_fock_state(g: GraphState, cutoff: int = DEFAULT_CUTOFF) -> FockState:
    """Polarization-encoded graph state, qubits in sorted vertex order.

    Built as the uniform superposition over H/V products with a sign
    flip for every bonded pair of V photons (the CZ pattern).
    """
    verts = list(g.vertices)
    n = len(verts)
    idx = {v: k for k, v in enumerate(verts)}
    pairs = [(idx[u], idx[v]) for u, v in g.edges]
    scale = 2.0 ** (-n / 2.0)
    terms = []
    for bits in itertools.product((0, 1), repeat=n):
        sign = 1.0
        for a, b in pairs:
            if bits[a] and bits[b]:
                sign = -sign
        occ = []
        for b in bits:
            occ.extend((0, 1) if b else (1, 0))
        terms.append((sign * scale, basis_state(tuple(occ), cutoff)))
    return superpose(terms)


def apply_qubit_pauli(state: FockState, qubit: int, label: str) -> FockState:
    """Pauli on the polarization qubit at modes (2q, 2q+1); the label
    "XZ" stands in for Y up to a global phase."""
    if label == "I":
        return state
    return apply_unitary(state, PAULI[label], [2 * qubit, 2 * qubit + 1])


def stabilizer_expectation(state: FockState, labels) -> complex:
    """<psi| P |psi> for a Pauli product given as one letter per qubit."""
    probe = state
    for q, label in enumerate(labels):
        probe = apply_qubit_pauli(probe, q, label)
    return state.inner(probe)


_DIAG = mirror_splitter(math.pi / 4.0)


def measure_polarization_qubit(state: FockState, qubit: int, basis: str = "z") -> list:
    """Projective single-qubit measurement at the Fock level.

    Returns (outcome, probability, conditional-on-remaining-modes)
    triples; outcomes are +1/-1 eigenvalues.  The X basis is reached by
    a half-wave plate before the H/V projection.
    """
    modes = (2 * qubit, 2 * qubit + 1)
    if basis == "x":
        work = apply_unitary(state, _DIAG, modes)
    elif basis == "z":
        work = state
    else:
        raise FockError(f"unsupported measurement basis {basis!r}")
    out = []
    for outcome, pattern in ((+1, (1, 0)), (-1, (0, 1))):
        p, cond = post_select(work, modes, pattern)
        if p > 0.0:
            out.append((outcome, p, cond))
    return out


# -- chain growth accounting ------------------------------------------------

@dataclass(frozen=True)
class GrowthStrategy:
    """Bookkeeping symbols of one entangling strategy: success chance p,
    qubits lost from the joined chains on success (d_s) and on failure
    (d_f), and the length m of the chain added per attempt."""
    p: float
    d_s: int
    d_f: int
    m: int

    def __post_init__(self):
        if not 0.0 < self.p <= 1.0:
            raise FockError("success probability must lie in (0, 1]")
        for name in ("d_s", "d_f", "m"):
            value = getattr(self, name)
            if value != int(value) or value < 0:
                raise FockError(f"{name} must be a nonnegative integer")

    @property
    def drift(self) -> float:
        """Expected length change per attempt."""
        return self.p * (self.m - self.d_s) - (1.0 - self.p) * self.d_f


def growth_requirement(p: float, d_s: int, d_f: int) -> float:
    """Minimum added-chain length for positive expected growth.

    An attempt takes the chain length N to N + m - d_s with chance p
    and to N - d_f otherwise, so chains grow on average iff
    m > (p d_s + (1-p) d_f) / p.
    """
    if not 0.0 < p <= 1.0:
        raise FockError("success probability must lie in (0, 1]")
    if d_s < 0 or d_f < 0:
        raise FockError("loss counts cannot be negative")
    return (p * d_s + (1.0 - p) * d_f) / p


@dataclass(frozen=True)
class GrowthStats:
    p: float
    d_s: int
    d_f: int
    m: int
    target_length: int
    trials: int
    seed: int
    attempts: int
    mean_drift: float
    drift_stderr: float
    analytic_drift: float
    reached: int
    died: int
    truncated: int
    mean_attempts_to_target: float

    def csv_row(self) -> dict:
        return {
            "p": self.p, "d_s": self.d_s, "d_f": self.d_f, "m": self.m,
            "target_length": self.target_length, "trials": self.trials,
            "mean": self.mean_drift, "stderr": self.drift_stderr,
            "seed": self.seed,
        }


def grow_chain_monte_carlo(strategy: GrowthStrategy, target_length: int,
                           trials: int, seed: int,
                           max_attempts: int = 10000) -> GrowthStats:
    """Repeated m-chain attach attempts until the chain reaches the
    target or dies.

    Every trial starts from a fresh m-chain.  Per-attempt length
    changes are pooled across trials; their mean estimates the drift
    p(m - d_s) - (1-p) d_f.
    """
    if trials < 1:
        raise FockError("at least one trial required")
    if target_length < 1:
        raise FockError("target length must be positive")
    rng = make_rng(seed)
    p, d_s, d_f, m = strategy.p, strategy.d_s, strategy.d_f, strategy.m
    lengths = np.full(trials, m, dtype=np.int64)
    attempts_used = np.zeros(trials, dtype=np.int64)
    alive = (lengths > 0) & (lengths < target_length)
    n_attempts = 0
    delta_sum = 0.0
    delta_sq = 0.0
    rounds = 0
    while alive.any() and rounds < max_attempts:
        idx = np.flatnonzero(alive)
        wins = rng.random(idx.size) < p
        deltas = np.where(wins, m - d_s, -d_f)
        lengths[idx] += deltas
        attempts_used[idx] += 1
        n_attempts += idx.size
        delta_sum += float(deltas.sum())
        delta_sq += float((deltas.astype(np.float64) ** 2).sum())
        alive = (lengths > 0) & (lengths < target_length)
        rounds += 1
    if n_attempts == 0:
        mean = stderr = math.nan
    else:
        mean = delta_sum / n_attempts
        var = max(delta_sq / n_attempts - mean ** 2, 0.0)
        stderr = math.sqrt(var / n_attempts)
    reached = int((lengths >= target_length).sum())
    died = int((lengths <= 0).sum())
    truncated = int(alive.sum())
    won = lengths >= target_length
    mean_attempts = float(attempts_used[won].mean()) if reached else math.nan
    return GrowthStats(
        p=p, d_s=d_s, d_f=d_f, m=m, target_length=target_length,
        trials=trials, seed=seed, attempts=n_attempts, mean_drift=mean,
        drift_stderr=stderr, analytic_drift=strategy.drift,
        reached=reached, died=died, truncated=truncated,
        mean_attempts_to_target=mean_attempts)


def micro_cluster_retry(k: int, p: float) -> float:
    """Success chance of an entangling attempt with k dangling qubits
    to burn: 1 - (1-p)^k."""
    if k < 1:
        raise FockError("need at least one dangling qubit")
    if not 0.0 < p <= 1.0:
        raise FockError("success probability must lie in (0, 1]")
    return 1.0 - (1.0 - p) ** k


@dataclass(frozen=True)
class RetryStats:
    k: int
    p: float
    trials: int
    seed: int
    estimate: float
    stderr: float
    exact: float

    def csv_row(self) -> dict:
        return {"k": self.k, "p": self.p, "trials": self.trials,
                "mean": self.estimate, "stderr": self.stderr,
                "seed": self.seed}


def micro_cluster_retry_mc(k: int, p: float, trials: int, seed: int) -> RetryStats:
    exact = micro_cluster_retry(k, p)
    rng = make_rng(seed)
    hits = 0
    remaining = trials
    while remaining > 0:
        chunk = min(remaining, 1 << 16)
        draws = rng.random((chunk, k)) < p
        hits += int(draws.any(axis=1).sum())
        remaining -= chunk
    rate = hits / trials
    stderr = math.sqrt(max(rate * (1.0 - rate), 1e-300) / trials)
    return RetryStats(k=k, p=p, trials=trials, seed=seed,
                      estimate=rate, stderr=stderr, exact=exact)


# -- loss-tolerant tree readout ---------------------------------------------

@dataclass(frozen=True)
class LossTree:
    """Tree hung below an in-line cluster qubit, described by its
    branching vector: branching[0] candidate qubits at the top level,
    each level-k node with branching[k+1] children below it.  eta is
    the per-photon detection efficiency."""
    branching: tuple
    eta: float

    def __post_init__(self):
        object.__setattr__(self, "branching", tuple(int(b) for b in self.branching))
        if not self.branching or any(b < 1 for b in self.branching):
            raise FockError("branching entries must be positive")
        if not 0.0 < self.eta <= 1.0:
            raise FockError("detection efficiency must lie in (0, 1]")

    @property
    def level_sizes(self) -> tuple:
        sizes = []
        count = 1
        for b in self.branching:
            count *= b
            sizes.append(count)
        return tuple(sizes)

    @property
    def qubits(self) -> int:
        return sum(self.level_sizes)


def _z_tables(tree: LossTree):
    """Per-level direct-or-indirect Z probabilities.

    A lost qubit at level l is measured indirectly through any one of
    its children: the child is measured in X and each grandchild in Z.
    Leaves have no fallback.
    """
    b = tree.branching
    eta = tree.eta
    d = len(b)
    z = [1.0] * (d + 2)
    indirect = [0.0] * d
    for level in range(d - 1, -1, -1):
        if level == d - 1:
            i_l = 0.0
        else:
            grand = z[level + 2] ** b[level + 2] if level + 2 < d else 1.0
            route = eta * grand
            i_l = 1.0 - (1.0 - route) ** b[level + 1]
        indirect[level] = i_l
        z[level] = 1.0 - (1.0 - eta) * (1.0 - i_l)
    return z, indirect


def tree_loss_exact(tree: LossTree) -> float:
    """Success probability of the arbitrary-basis tree measurement.

    Candidates are tried left to right.  A lost candidate must be
    detached by an indirect Z before moving on; the first detected one
    takes the measurement, after which its children and all remaining
    candidates need direct-or-indirect Z removal.  Summing the
    geometric fallback series gives

        P = z2^b2 * (z1^b1 - ((1-eta) i1)^b1)

    in terms of the per-level removal probabilities.  A lone click on a
    candidate cannot be cloned into anything better: P stays below
    1 - (1-eta)^b1, which keeps any efficiency at or below 1/2 from
    reaching unit success.  Two-level trees never beat the bare
    efficiency (the candidate's leaf children contribute a raw eta^b2
    factor); gains start at three levels, where the children acquire
    indirect fallbacks of their own.
    """
    b = tree.branching
    z, indirect = _z_tables(tree)
    lost_candidate = (1.0 - tree.eta) * indirect[0]
    child_factor = z[1] ** b[1] if len(b) >= 2 else 1.0
    return child_factor * (z[0] ** b[0] - lost_candidate ** b[0])


@dataclass(frozen=True)
class TreeLossStats:
    branching: tuple
    eta: float
    trials: int
    seed: int
    successes: int
    rate: float
    stderr: float
    exact: float

    def csv_row(self) -> dict:
        return {"branching": "x".join(str(b) for b in self.branching),
                "eta": self.eta, "trials": self.trials, "mean": self.rate,
                "stderr": self.stderr, "seed": self.seed}


_TRIAL_CHUNK = 1 << 12


def tree_loss_sim(tree: LossTree, trials: int, seed: int) -> TreeLossStats:
    """Monte Carlo of the tree measurement with per-photon loss.

    Each photon is present with probability eta; the protocol of
    tree_loss_exact is then evaluated on the realized tree, levels
    processed bottom-up.
    """
    if trials < 1:
        raise FockError("at least one trial required")
    rng = make_rng(seed)
    b = tree.branching
    sizes = tree.level_sizes
    depth = len(b)
    successes = 0
    remaining = trials
    while remaining > 0:
        t = min(remaining, _TRIAL_CHUNK)
        present = [rng.random((t, n)) < tree.eta for n in sizes]
        # can_z: direct or indirect removal; all_kids: every child removable
        can_z = present[depth - 1]
        all_kids = np.ones((t, sizes[depth - 1]), dtype=bool)
        can_ind = np.zeros((t, sizes[depth - 1]), dtype=bool)
        for level in range(depth - 2, -1, -1):
            n = sizes[level]
            width = b[level + 1]
            routes = (present[level + 1] & all_kids).reshape(t, n, width)
            can_ind = routes.any(axis=2)
            all_kids = can_z.reshape(t, n, width).all(axis=2)
            can_z = present[level] | can_ind
        pres = present[0]
        seen = np.cumsum(pres, axis=1)
        first = pres & (seen == 1)
        before = seen == 0
        after = (seen >= 1) & ~first
        ok = pres.any(axis=1)
        ok &= (first & all_kids).any(axis=1)
        ok &= (can_ind | ~before).all(axis=1)
        ok &= (can_z | ~after).all(axis=1)
        successes += int(ok.sum())
        remaining -= t
    rate = successes / trials
    stderr = math.sqrt(max(rate * (1.0 - rate), 1e-300) / trials)
    return TreeLossStats(branching=b, eta=tree.eta, trials=trials, seed=seed,
                         successes=successes, rate=rate, stderr=stderr,
                         exact=tree_loss_exact(tree))


# -- heralded four-photon GHZ purification ----------------------------------

_SOURCES = 4
_GHZ_QUBITS = (0, 3, 4, 7)
_TYPE1_MAPS = ((2, 3, 4, 5), (10, 11, 12, 13))
_TYPE2_MAP = (4, 5, 12, 13)
_DETECTED = (2, 3, 10, 11, 4, 5, 12, 13)
_OUTPUT_MODES = (0, 1, 6, 7, 8, 9, 14, 15)


def _remap(element, mapping):
    return replace(element, modes=tuple(mapping[m] for m in element.modes))


def _purify_elements():
    type1 = fusion("type1").elements
    type2 = fusion("type2").elements
    out = []
    for mapping in _TYPE1_MAPS:
        out.extend(_remap(el, mapping) for el in type1)
    out.extend(_remap(el, _TYPE2_MAP) for el in type2)
    return out


def _source_branch(real_flags, cutoff):
    """Product of singlet pairs and empty slots over 16 modes."""
    root = math.sqrt(0.5)
    per_source = []
    for k, real in enumerate(real_flags):
        base = 4 * k
        if not real:
            per_source.append(((1.0, ()),))
        else:
            per_source.append((
                (root, ((base, 1), (base + 3, 1))),
                (-root, ((base + 1, 1), (base + 2, 1))),
            ))
    terms = []
    for combo in itertools.product(*per_source):
        amp = 1.0
        occ = [0] * 16
        for a, placements in combo:
            amp *= a
            for mode, count in placements:
                occ[mode] += count
        terms.append((amp, basis_state(tuple(occ), cutoff)))
    return superpose(terms)


def _accepted(signature) -> bool:
    """One click per detector pair: both type-I heralds fire once and
    the type-II coincidence sees one photon on each side."""
    return all(signature[k] + signature[k + 1] == 1 for k in (0, 2, 4, 6))


_GHZ_TERMS = ((1, 0, 1, 0, 1, 0, 1, 0), (0, 1, 0, 1, 0, 1, 0, 1))


def _ghz_overlap(state: FockState) -> float:
    amp = (state.amplitude(_GHZ_TERMS[0]) + state.amplitude(_GHZ_TERMS[1]))
    return abs(amp) ** 2 / 2.0


def _branches(conditional):
    if isinstance(conditional, StateEnsemble):
        return conditional.branches
    return [(1.0, conditional)]


def _correction_table(cutoff) -> dict:
    """Per-signature Pauli frame fixing the ideal-source output to
    (|HHHH> + |VVVV>)/sqrt(2), found by direct search once."""
    state = apply_elements(_source_branch((True,) * _SOURCES, cutoff),
                           _purify_elements())
    dist = measure_modes(state, _DETECTED)
    table = {}
    labels = ("I", "X", "Z", "XZ")
    for sig, prob in dist.probabilities.items():
        if not _accepted(sig) or prob <= 1e-15:
            continue
        cond = dist.conditional(sig)
        best = None
        for combo in itertools.product(labels, repeat=4):
            fixed = cond
            for q, label in enumerate(combo):
                fixed = apply_qubit_pauli(fixed, q, label)
            overlap = _ghz_overlap(fixed)
            if best is None or overlap > best[0]:
                best = (overlap, combo)
        if best[0] < 1.0 - 1e-9:
            raise FockError(f"no Pauli frame for signature {sig}")
        table[sig] = best[1]
    return table


@dataclass(frozen=True)
class GhzPurifyReport:
    p_s: float
    eta: float
    acceptance_probability: float
    fidelity: float | None
    unfiltered_fidelity: float
    corrections: dict = field(repr=False)


def ghz_purify_scenario(p_s: float, eta: float = 1.0,
                        cutoff: int = DEFAULT_CUTOFF) -> GhzPurifyReport:
    """Four-photon GHZ creation from noisy Bell-pair sources.

    Four sources each emit p_s |0><0| + (1-p_s) |Psi-><Psi-|.  Two
    type-I fusions post-selected on a single click each build
    three-photon GHZ attempts; their output modes meet in a type-II
    fusion post-selected on a coincidence.  A lone pair can fire a
    type-I herald, but then the fusion output mode is necessarily
    empty and the type-II coincidence removes the branch, so the
    surviving state is purified.  Detection uses bucket detectors of
    efficiency eta.  Fidelity is None when nothing passes the filter.
    """
    if not 0.0 <= p_s <= 1.0:
        raise FockError("vacuum weight must lie in [0, 1]")
    corrections = _correction_table(cutoff)
    elements = _purify_elements()
    detector = DetectorModel(kind="bucket", efficiency=eta)
    accept_mass = 0.0
    ghz_mass = 0.0
    raw_mass = 0.0
    for flags in itertools.product((False, True), repeat=_SOURCES):
        weight = 1.0
        for real in flags:
            weight *= (1.0 - p_s) if real else p_s
        if weight <= 0.0:
            continue
        state = apply_elements(_source_branch(flags, cutoff), elements)
        ideal = measure_modes(state, _DETECTED)
        for sig, prob in ideal.probabilities.items():
            raw_mass += weight * prob * _ghz_overlap(ideal.conditional(sig))
        clicks = measure_modes(state, _DETECTED, detector)
        for sig, prob in clicks.probabilities.items():
            if not _accepted(sig) or prob <= 1e-15:
                continue
            frame = corrections.get(tuple(sig), ("I",) * 4)
            accept_mass += weight * prob
            for branch_p, branch in _branches(clicks.conditional(sig)):
                fixed = branch
                for q, label in enumerate(frame):
                    fixed = apply_qubit_pauli(fixed, q, label)
                ghz_mass += weight * prob * branch_p * _ghz_overlap(fixed)
    fidelity = ghz_mass / accept_mass if accept_mass > 1e-15 else None
    return GhzPurifyReport(p_s=p_s, eta=eta,
                           acceptance_probability=accept_mass,
                           fidelity=fidelity, unfiltered_fidelity=raw_mass,
                           corrections=corrections)
