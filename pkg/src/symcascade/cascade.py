"""Step-by-step cascade simulation and Monte Carlo estimation.

Dynamics: at every step, each active node makes a fresh Bernoulli
attempt on each currently inactive neighbor, with the edge probability.
Activations within a step are simultaneous (computed from the previous
active set only), and an activated node stays active forever, so active
sets grow monotonically.

Note this is the persistent-attempt variant: an edge that failed to
transmit is retried with fresh randomness at every later step, unlike
the classic single-attempt independent cascade.
"""

from collections import Counter

import numpy as np

from .bitset import iter_bits
from .graph import Graph
from .matrix import StepMatrix, sample_step_matrix
from .rng import TAG_CASCADE_TRIAL, TAG_ROW_SEED, StreamFactory, derive_seed
from .stats import EstimateCell

__all__ = [
    "activation_probability",
    "step",
    "run_cascade",
    "estimate_activation_row",
    "estimate_activation_rows",
]


def activation_probability(g: Graph, s: int, j: int) -> float:
    """Probability that node ``j`` activates in one step from active set ``s``.

    Equals 1 - prod over active neighbors k of (1 - p_kj): node j stays
    inactive only if every active neighbor's attempt fails.  Requires
    j not in s; returns 0 when s contains no neighbor of j.
    """
    if s < 0 or s >> g.node_count:
        raise ValueError(f"active-set mask {s:#x} does not fit {g.node_count} nodes")
    if (s >> j) & 1:
        raise ValueError(f"node {j} is already active")
    probs = [p for k, p in g.neighbors(j) if (s >> k) & 1]
    if not probs:
        return 0.0
    if len(probs) == 1:
        # A single attempter succeeds with exactly the edge probability.
        return probs[0]
    fail = 1.0
    for p in probs:
        fail *= 1.0 - p
    return 1.0 - fail


def step(g: Graph, s: int, outcomes: StepMatrix) -> int:
    """Advance the active set one step using pre-sampled edge outcomes.

    A node j joins if some active node k has outcomes entry (k, j) = 1.
    New activations are computed solely from ``s`` (simultaneous
    update), so the result is always a superset of ``s``.
    """
    if outcomes.size != g.node_count:
        raise ValueError(
            f"outcome matrix size {outcomes.size} != graph size {g.node_count}"
        )
    if s < 0 or s >> g.node_count:
        raise ValueError(f"active-set mask {s:#x} does not fit {g.node_count} nodes")
    new = s
    rows = outcomes.rows
    for j in range(g.node_count):
        if not (s >> j) & 1 and rows[j] & s:
            new |= 1 << j
    return new


def run_cascade(
    g: Graph, seeds: int, n: int, rng: np.random.Generator
) -> tuple[int, ...]:
    """Run one cascade for ``n`` steps from the seed set.

    Returns the trajectory of active-set masks, length n + 1, starting
    with ``seeds``.  Each step samples a fresh outcome matrix from
    ``rng`` (exactly as `sample_step_matrix` would), so a fixed
    generator state determines the whole trajectory.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if seeds < 0 or seeds >> g.node_count:
        raise ValueError(f"seed mask {seeds:#x} does not fit {g.node_count} nodes")
    states = [seeds]
    s = seeds
    for _ in range(n):
        outcomes = sample_step_matrix(g, rng)
        s = step(g, s, outcomes)
        states.append(s)
    return tuple(states)


def estimate_activation_row(
    g: Graph,
    i: int,
    n: int,
    trials: int,
    master_seed: int,
    confidence: float = 0.95,
) -> list[EstimateCell]:
    """Monte Carlo estimates of activation probabilities from seed node ``i``.

    Runs ``trials`` independent cascades seeded at {i}; cell j counts the
    trials in which j was active after n steps.  Trial t draws from a
    counter-based stream derived from (master_seed, t), so results are
    reproducible and independent of execution order; cell i always has
    point estimate 1.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if not 0 <= i < g.node_count:
        raise ValueError(f"seed node {i} out of range [0, {g.node_count})")
    factory = StreamFactory(master_seed, TAG_CASCADE_TRIAL)
    seeds = 1 << i
    final_counts: Counter[int] = Counter()
    for t in range(trials):
        rng = factory.stream(t)
        final_counts[run_cascade(g, seeds, n, rng)[-1]] += 1
    successes = [0] * g.node_count
    for mask, c in final_counts.items():
        for j in iter_bits(mask):
            successes[j] += c
    return [EstimateCell.from_counts(s, trials, confidence) for s in successes]


def estimate_activation_rows(
    g: Graph,
    n: int,
    trials: int,
    master_seed: int,
    confidence: float = 0.95,
) -> list[list[EstimateCell]]:
    """Estimate the full activation-probability matrix by Monte Carlo.

    Row i comes from `estimate_activation_row` under a per-row sub-seed
    derived from (master_seed, row), so rows use independent randomness.
    """
    return [
        estimate_activation_row(
            g, i, n, trials, derive_seed(master_seed, TAG_ROW_SEED, i), confidence
        )
        for i in range(g.node_count)
    ]
