"""Exact activation probabilities by evolving subset distributions.

The active set is a Markov chain on subsets of the node set.  Given the
current set s, each inactive node j activates independently with
probability q_j = `activation_probability`(g, s, j): the attempts
targeting different inactive nodes use disjoint edge trials, so the
one-step law factorizes over targets.  Evolving the full probability
table over subsets therefore gives exact activation probabilities,
which serve as ground truth for the Monte Carlo engines.

State tables are keyed by bit mask.  For small graphs the one-step law
is assembled once into a sparse transition matrix and steps become
sparse matrix-vector products; larger graphs (up to the cap) fall back
to a lazily cached per-state law.  Node counts above the configured cap
are refused outright to keep memory predictable.
"""

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .cascade import activation_probability
from .graph import Graph

__all__ = [
    "DEFAULT_EXACT_CAP",
    "ExactCapError",
    "ActivationDistribution",
    "ProbabilityMatrix",
    "point_distribution",
    "transition_distribution",
    "evolve_distribution",
    "exact_activation_matrix",
    "TransitionModel",
]

DEFAULT_EXACT_CAP = 20

# Above this node count the full 2^N x 2^N sparse transition matrix is
# not built; states are expanded lazily instead.
_FULL_MATRIX_MAX_NODES = 13


class ExactCapError(ValueError):
    """Graph is too large for exact subset enumeration."""

    def __init__(self, node_count: int, cap: int):
        super().__init__(
            f"graph has {node_count} nodes, above the exact-computation cap "
            f"of {cap}; raise the cap explicitly to allow larger subsets"
        )
        self.node_count = node_count
        self.cap = cap


@dataclass
class ActivationDistribution:
    """Probability distribution over active sets after some steps.

    ``mass`` maps active-set masks to probabilities; every key is a
    superset of ``seed_mask`` and the masses sum to 1 (within float
    tolerance).
    """

    node_count: int
    seed_mask: int
    step: int
    mass: dict[int, float]


@dataclass
class ProbabilityMatrix:
    """Exact activation probabilities for every (seed, target) pair.

    ``values[i, j]`` is the probability that node j is active within
    ``n`` steps when the cascade starts from exactly {i}.
    """

    values: np.ndarray
    n: int


def _check_cap(g: Graph, exact_cap: int) -> None:
    if g.node_count > exact_cap:
        raise ExactCapError(g.node_count, exact_cap)
    if g.node_count > 62:
        raise ValueError(
            f"exact enumeration over {g.node_count} nodes exceeds the 62-bit "
            "mask arithmetic limit"
        )


def _one_step_law(g: Graph, s: int) -> tuple[int, list[int], list[float]]:
    """Split the one-step law from state ``s`` into certain and uncertain parts.

    Returns (base, nodes, qs): ``base`` is s plus every node that
    activates with probability exactly 1; ``nodes`` lists the inactive
    nodes with activation probability strictly between 0 and 1, and
    ``qs`` their probabilities.
    """
    base = s
    nodes: list[int] = []
    qs: list[float] = []
    for j in range(g.node_count):
        if (s >> j) & 1:
            continue
        q = activation_probability(g, s, j)
        if q >= 1.0:
            base |= 1 << j
        elif q > 0.0:
            nodes.append(j)
            qs.append(q)
    return base, nodes, qs


def _expand_outcomes(
    base: int, nodes: list[int], qs: list[float]
) -> tuple[np.ndarray, np.ndarray]:
    """Enumerate all next states and their probabilities.

    Outcome index bit b decides whether ``nodes[b]`` activates; the
    probability of an outcome is the product of q / (1 - q) factors in
    ascending node order.
    """
    u = len(nodes)
    combos = np.arange(1 << u, dtype=np.int64)
    masks = np.full(1 << u, base, dtype=np.int64)
    probs = np.ones(1 << u, dtype=np.float64)
    for b, (j, q) in enumerate(zip(nodes, qs)):
        chosen = (combos >> b) & 1
        masks |= chosen << j
        probs *= np.where(chosen, q, 1.0 - q)
    return masks, probs


def transition_distribution(g: Graph, s: int) -> dict[int, float]:
    """One-step distribution over next active sets from state ``s``.

    Each inactive node j joins independently with probability
    `activation_probability`(g, s, j); the returned table maps each
    superset of s to its probability and sums to 1.
    """
    base, nodes, qs = _one_step_law(g, s)
    masks, probs = _expand_outcomes(base, nodes, qs)
    return {int(m): float(p) for m, p in zip(masks, probs)}


class TransitionModel:
    """Reusable one-step transition structure for a fixed graph.

    Building the model is the expensive part of exact evaluation;
    evolving distributions afterwards is cheap, so share one model
    across seed rows and step counts.
    """

    def __init__(self, g: Graph, exact_cap: int = DEFAULT_EXACT_CAP):
        _check_cap(g, exact_cap)
        self.graph = g
        self.size = 1 << g.node_count
        self._matrix: sparse.csr_matrix | None = None
        self._law_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}

    def _ensure_matrix(self) -> sparse.csr_matrix:
        if self._matrix is None:
            rows: list[np.ndarray] = []
            cols: list[np.ndarray] = []
            vals: list[np.ndarray] = []
            for s in range(self.size):
                masks, probs = _expand_outcomes(*_one_step_law(self.graph, s))
                rows.append(masks)
                cols.append(np.full(len(masks), s, dtype=np.int64))
                vals.append(probs)
            self._matrix = sparse.csr_matrix(
                (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                shape=(self.size, self.size),
            )
        return self._matrix

    def _state_law(self, s: int) -> tuple[np.ndarray, np.ndarray]:
        law = self._law_cache.get(s)
        if law is None:
            law = _expand_outcomes(*_one_step_law(self.graph, s))
            self._law_cache[s] = law
        return law

    def evolve_vector(self, vec: np.ndarray, steps: int) -> np.ndarray:
        """Push a dense mass vector (indexed by mask) forward ``steps`` times."""
        if steps == 0:
            return vec.copy()
        if self.graph.node_count <= _FULL_MATRIX_MAX_NODES:
            matrix = self._ensure_matrix()
            for _ in range(steps):
                vec = matrix @ vec
            return vec
        for _ in range(steps):
            occupied = np.flatnonzero(vec)
            masks_parts: list[np.ndarray] = []
            weight_parts: list[np.ndarray] = []
            for s in occupied.tolist():
                masks, probs = self._state_law(s)
                masks_parts.append(masks)
                weight_parts.append(probs * vec[s])
            vec = np.bincount(
                np.concatenate(masks_parts),
                weights=np.concatenate(weight_parts),
                minlength=self.size,
            )
        return vec


def point_distribution(g: Graph, seeds: int) -> ActivationDistribution:
    """Distribution concentrated on one seed set at step 0."""
    if seeds < 0 or seeds >> g.node_count:
        raise ValueError(f"seed mask {seeds:#x} does not fit {g.node_count} nodes")
    return ActivationDistribution(
        node_count=g.node_count, seed_mask=seeds, step=0, mass={seeds: 1.0}
    )


def evolve_distribution(
    g: Graph,
    d: ActivationDistribution,
    steps: int,
    exact_cap: int = DEFAULT_EXACT_CAP,
    model: TransitionModel | None = None,
) -> ActivationDistribution:
    """Apply the one-step law ``steps`` times to a whole distribution.

    Mass over identical resulting sets is summed; total mass is
    preserved and support only moves upward (to supersets).  Refuses
    graphs above the exact cap.
    """
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    if d.node_count != g.node_count:
        raise ValueError(
            f"distribution is over {d.node_count} nodes, graph has {g.node_count}"
        )
    if model is None:
        model = TransitionModel(g, exact_cap)
    else:
        _check_cap(g, exact_cap)
        if model.graph is not g:
            raise ValueError("transition model was built for a different graph")
    vec = np.zeros(1 << g.node_count, dtype=np.float64)
    for mask, m in d.mass.items():
        if mask < 0 or mask >> g.node_count:
            raise ValueError(f"mask {mask:#x} does not fit {g.node_count} nodes")
        vec[mask] = m
    vec = model.evolve_vector(vec, steps)
    mass = {int(i): float(vec[i]) for i in np.flatnonzero(vec)}
    return ActivationDistribution(
        node_count=d.node_count,
        seed_mask=d.seed_mask,
        step=d.step + steps,
        mass=mass,
    )


def _bit_marginals(vec: np.ndarray, node_count: int) -> np.ndarray:
    """For each node j, the total mass of states whose bit j is set."""
    out = np.empty(node_count, dtype=np.float64)
    for j in range(node_count):
        out[j] = vec.reshape(-1, 2, 1 << j)[:, 1, :].sum()
    return out


def exact_activation_matrix(
    g: Graph,
    n: int,
    exact_cap: int = DEFAULT_EXACT_CAP,
    model: TransitionModel | None = None,
) -> ProbabilityMatrix:
    """Exact activation-probability matrix after ``n`` steps.

    Row i evolves the point mass on {i} for n steps and reads off the
    per-node marginals.  The one-step matrix is the edge-probability
    table itself (single attempt per neighbor), so n = 1 is written by
    copying probabilities rather than recomputing them.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    _check_cap(g, exact_cap)
    size = g.node_count
    if n == 0:
        return ProbabilityMatrix(np.eye(size, dtype=np.float64), 0)
    if n == 1:
        values = np.eye(size, dtype=np.float64)
        for u, v, p in g.edges():
            values[u, v] = p
            values[v, u] = p
        return ProbabilityMatrix(values, 1)
    if model is None:
        model = TransitionModel(g, exact_cap)
    elif model.graph is not g:
        raise ValueError("transition model was built for a different graph")
    values = np.empty((size, size), dtype=np.float64)
    for i in range(size):
        vec = np.zeros(1 << size, dtype=np.float64)
        vec[1 << i] = 1.0
        vec = model.evolve_vector(vec, n)
        values[i] = _bit_marginals(vec, size)
        values[i, i] = 1.0
    return ProbabilityMatrix(values, n)
