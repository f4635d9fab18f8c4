"""Undirected graphs with symmetric per-edge activation probabilities.

A graph is a node count plus a table of probabilities indexed by
unordered node pairs.  Storage is canonical (pairs are kept as
``(min, max)``), so the symmetry p_ij = p_ji holds by construction and a
probability of zero is the same thing as an absent edge.
"""

import math
from dataclasses import dataclass

import numpy as np

from .rng import TAG_GRAPH_GEN, trial_stream

__all__ = [
    "Graph",
    "EdgeListError",
    "parse_edge_list",
    "generate_er_graph",
    "validate",
    "Violation",
    "ValidationReport",
    "UNIFORM_RANDOM",
]

UNIFORM_RANDOM = "uniform-random"


class EdgeListError(ValueError):
    """Malformed edge-list input; carries the offending line number."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


def _check_probability(p: float) -> float:
    p = float(p)
    if math.isnan(p) or not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must be in [0, 1], got {p}")
    return p


class Graph:
    """Immutable undirected graph with edge activation probabilities.

    Args:
        node_count: Number of nodes N >= 1; node ids are 0..N-1.
        edges: Iterable of (u, v, p) triples.  Pairs are unordered;
            listing the same pair twice is an error; p = 0 entries are
            accepted and dropped (a zero probability means no edge).
    """

    __slots__ = ("_n", "_probs", "_edge_u", "_edge_v", "_edge_p", "_neighbors")

    def __init__(self, node_count: int, edges=()):
        if node_count < 1:
            raise ValueError(f"node_count must be >= 1, got {node_count}")
        self._n = int(node_count)
        probs: dict[tuple[int, int], float] = {}
        for u, v, p in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop on node {u} is not allowed")
            if not (0 <= u < self._n and 0 <= v < self._n):
                raise ValueError(f"node index out of range in pair ({u}, {v})")
            key = (u, v) if u < v else (v, u)
            if key in probs:
                raise ValueError(f"duplicate pair {key}")
            probs[key] = _check_probability(p)
        # Drop zero-probability pairs after duplicate detection.
        self._probs = {k: p for k, p in sorted(probs.items()) if p > 0.0}
        us, vs, ps = [], [], []
        adjacency: list[list[tuple[int, float]]] = [[] for _ in range(self._n)]
        for (u, v), p in self._probs.items():
            us.append(u)
            vs.append(v)
            ps.append(p)
            adjacency[u].append((v, p))
            adjacency[v].append((u, p))
        self._edge_u = np.asarray(us, dtype=np.int64)
        self._edge_v = np.asarray(vs, dtype=np.int64)
        self._edge_p = np.asarray(ps, dtype=np.float64)
        self._neighbors = tuple(tuple(sorted(a)) for a in adjacency)

    @property
    def node_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return len(self._probs)

    def probability(self, u: int, v: int) -> float:
        """Activation probability of the pair {u, v}; 0 if no edge."""
        self._check_node(u)
        self._check_node(v)
        if u == v:
            raise ValueError("probability is defined only between distinct nodes")
        key = (u, v) if u < v else (v, u)
        return self._probs.get(key, 0.0)

    def neighbors(self, u: int) -> tuple[tuple[int, float], ...]:
        """Neighbors of ``u`` as (node, probability) pairs, ascending by node."""
        self._check_node(u)
        return self._neighbors[u]

    def edges(self) -> list[tuple[int, int, float]]:
        """Edges as (u, v, p) with u < v, sorted lexicographically."""
        return [(u, v, p) for (u, v), p in self._probs.items()]

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Edge endpoints and probabilities as parallel numpy arrays.

        The arrays follow the canonical (min, max) lexicographic edge
        order, which fixes the sampling layout of random streams.
        """
        return self._edge_u, self._edge_v, self._edge_p

    def serialize(self) -> str:
        """Edge-list text; `parse_edge_list` round-trips it exactly."""
        lines = [str(self._n)]
        lines.extend(f"{u} {v} {p!r}" for (u, v), p in self._probs.items())
        return "\n".join(lines) + "\n"

    def _check_node(self, u: int) -> None:
        if not 0 <= u < self._n:
            raise ValueError(f"node index {u} out of range [0, {self._n})")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._probs == other._probs

    __hash__ = None

    def __repr__(self) -> str:
        return f"Graph(node_count={self._n}, edges={self.edge_count})"


def parse_edge_list(text: str) -> Graph:
    """Parse edge-list text into a Graph.

    Format: the first non-comment line is the node count N; every other
    non-comment line is ``u v p`` (whitespace separated).  ``#`` starts a
    comment that runs to end of line; blank lines are ignored.  Lines
    with p = 0 are accepted and treated as absent edges.

    Raises:
        EdgeListError: on malformed lines, out-of-range probabilities,
            self-loops, duplicate pairs, or node indices >= N.
    """
    node_count: int | None = None
    seen: dict[tuple[int, int], tuple[float, int]] = {}
    edges: list[tuple[int, int, float]] = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if node_count is None:
            if len(tokens) != 1:
                raise EdgeListError(
                    f"expected a single node count, got {len(tokens)} tokens",
                    line_number,
                )
            try:
                node_count = int(tokens[0])
            except ValueError:
                raise EdgeListError(
                    f"node count is not an integer: {tokens[0]!r}", line_number
                ) from None
            if node_count < 1:
                raise EdgeListError(
                    f"node count must be >= 1, got {node_count}", line_number
                )
            continue
        if len(tokens) != 3:
            raise EdgeListError(
                f"expected 'u v p', got {len(tokens)} tokens", line_number
            )
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise EdgeListError(
                f"node indices must be integers: {tokens[0]!r} {tokens[1]!r}",
                line_number,
            ) from None
        try:
            p = float(tokens[2])
        except ValueError:
            raise EdgeListError(
                f"probability is not numeric: {tokens[2]!r}", line_number
            ) from None
        if math.isnan(p) or not 0.0 <= p <= 1.0:
            raise EdgeListError(f"probability out of range [0, 1]: {p}", line_number)
        if u == v:
            raise EdgeListError(f"self-loop on node {u}", line_number)
        if not (0 <= u < node_count and 0 <= v < node_count):
            raise EdgeListError(
                f"node index out of range [0, {node_count}) in pair ({u}, {v})",
                line_number,
            )
        key = (u, v) if u < v else (v, u)
        if key in seen:
            prev_p, prev_line = seen[key]
            detail = (
                f"conflicting probabilities {prev_p} and {p}"
                if prev_p != p
                else "same probability repeated"
            )
            raise EdgeListError(
                f"duplicate pair {key} (first on line {prev_line}; {detail})",
                line_number,
            )
        seen[key] = (p, line_number)
        edges.append((u, v, p))
    if node_count is None:
        raise EdgeListError("missing node count line", 1)
    return Graph(node_count, edges)


def generate_er_graph(
    n_nodes: int,
    edge_density: float,
    prob_value: float | str,
    seed: int,
) -> Graph:
    """Generate a seeded Erdős–Rényi style graph.

    Each unordered pair is included independently with probability
    ``edge_density``.  Included pairs get probability ``prob_value``, or
    an independent uniform draw on (0, 1) when ``prob_value`` is the
    string ``"uniform-random"``.  Deterministic for a fixed seed.
    """
    if n_nodes < 1:
        raise ValueError(f"n_nodes must be >= 1, got {n_nodes}")
    if not 0.0 <= edge_density <= 1.0:
        raise ValueError(f"edge_density must be in [0, 1], got {edge_density}")
    uniform = isinstance(prob_value, str)
    if uniform:
        if prob_value != UNIFORM_RANDOM:
            raise ValueError(f"unknown probability spec {prob_value!r}")
    else:
        prob_value = _check_probability(prob_value)
    pairs = [(u, v) for u in range(n_nodes) for v in range(u + 1, n_nodes)]
    rng = trial_stream(seed, TAG_GRAPH_GEN, 0)
    include = rng.random(len(pairs)) < edge_density
    values = rng.random(len(pairs))
    # random() lives on [0, 1); remap the measure-zero 0.0 draw so that a
    # "uniform-random" edge can never silently disappear as p = 0.
    values = np.where(values == 0.0, 0.5, values)
    edges = []
    for k, (u, v) in enumerate(pairs):
        if include[k]:
            edges.append((u, v, float(values[k]) if uniform else prob_value))
    return Graph(n_nodes, edges)


@dataclass(frozen=True)
class Violation:
    kind: str  # one of: node_count, self_pair, bounds, symmetry, range
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(g: Graph) -> ValidationReport:
    """Report every invariant violation of a Graph's probability table.

    Graphs built through the public constructors always validate clean;
    this exists to catch hand-injected or corrupted tables.
    """
    found: list[Violation] = []
    n = g._n
    if n < 1:
        found.append(Violation("node_count", f"node count {n} is not positive"))
    for key, p in g._probs.items():
        u, v = key
        if u == v:
            found.append(Violation("self_pair", f"self-pair {key} stored"))
            continue
        if not (0 <= u < n and 0 <= v < n):
            found.append(
                Violation("bounds", f"pair {key} outside node range [0, {n})")
            )
        if u > v:
            found.append(
                Violation(
                    "symmetry",
                    f"non-canonical pair {key} stored; table no longer "
                    f"guarantees p[{u},{v}] == p[{v},{u}]",
                )
            )
        if math.isnan(p) or not 0.0 <= p <= 1.0:
            found.append(
                Violation("range", f"probability {p} for pair {key} outside [0, 1]")
            )
    return ValidationReport(tuple(found))
