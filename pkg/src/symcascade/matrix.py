"""Random symmetric boolean step matrices and semiring products.

One cascade step corresponds to applying a sampled boolean matrix: unit
diagonal, and a symmetric Bernoulli entry for every edge.  Products are
taken in the boolean (OR-AND) semiring, so an entry of a product chain
being positive means "reachable through that sequence of step outcomes".

Rows are stored as packed bit masks (Python ints), which makes a
matrix-vector application a handful of word-parallel OR operations.
Full matrix-matrix products exist only on the verification path used by
the transpose-identity check.
"""

from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .bitset import iter_bits
from .graph import Graph
from .rng import TAG_PRODUCT_FORWARD, TAG_PRODUCT_REVERSE, StreamFactory
from .stats import EstimateCell

__all__ = [
    "StepMatrix",
    "identity_matrix",
    "sample_step_matrix",
    "apply_matrix",
    "chain_entry",
    "product_matrix",
    "estimate_by_products",
]


@dataclass(frozen=True)
class StepMatrix:
    """Symmetric boolean matrix with unit diagonal, one row per node.

    ``rows[i]`` is a bit mask: bit j set means entry (i, j) is 1.
    """

    size: int
    rows: tuple[int, ...]

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_bool_array(self) -> np.ndarray:
        """Dense boolean view, for the verification-path products."""
        nbytes = (self.size + 7) // 8
        buf = b"".join(r.to_bytes(nbytes, "little") for r in self.rows)
        bits = np.unpackbits(
            np.frombuffer(buf, dtype=np.uint8).reshape(self.size, nbytes),
            axis=1,
            bitorder="little",
        )
        return bits[:, : self.size].astype(bool)


def identity_matrix(size: int) -> StepMatrix:
    return StepMatrix(size, tuple(1 << i for i in range(size)))


def sample_step_matrix(g: Graph, rng: np.random.Generator) -> StepMatrix:
    """Sample one step matrix for ``g`` from ``rng``.

    Every edge gets an independent Bernoulli(p) draw written into both
    symmetric entries; the diagonal is always 1; pairs without an edge
    stay 0.  Draws consume the stream in canonical edge order, so a
    fixed generator state yields one well-defined matrix.
    """
    edge_u, edge_v, edge_p = g.edge_arrays()
    hits = rng.random(len(edge_p)) < edge_p
    rows = [1 << i for i in range(g.node_count)]
    for k in np.flatnonzero(hits):
        u = int(edge_u[k])
        v = int(edge_v[k])
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return StepMatrix(g.node_count, tuple(rows))


def _check_mask(mask: int, size: int) -> None:
    if mask < 0 or mask >> size:
        raise ValueError(f"active-set mask {mask:#x} does not fit {size} nodes")


def apply_matrix(t: StepMatrix, s: int) -> int:
    """Boolean-semiring matrix-vector product: nodes reachable from ``s``.

    Returns the mask {i : exists k in s with entry (i, k) = 1}.  The unit
    diagonal guarantees s is a subset of the result.
    """
    _check_mask(s, t.size)
    result = 0
    for k in iter_bits(s):
        result |= t.rows[k]
    return result


def chain_entry(matrices: Sequence[StepMatrix], source: int, target: int) -> bool:
    """Whether entry (target, source) of the chained product is positive.

    The product is taken with ``matrices[0]`` applied first; an empty
    sequence is the identity.  Computed by folding `apply_matrix` over
    the singleton {source}.
    """
    if not matrices:
        return source == target
    size = matrices[0].size
    for t in matrices:
        if t.size != size:
            raise ValueError(f"mixed matrix sizes in chain: {t.size} != {size}")
    if not (0 <= source < size and 0 <= target < size):
        raise ValueError(f"source/target out of range [0, {size})")
    mask = 1 << source
    for t in matrices:
        mask = apply_matrix(t, mask)
    return bool((mask >> target) & 1)


def _bool_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # uint8 accumulators are safe below 256 summands; stay exact above.
    dtype = np.uint8 if a.shape[0] < 256 else np.int64
    return (a.astype(dtype) @ b.astype(dtype)) > 0


def _product_bool(arrays: Sequence[np.ndarray], size: int) -> np.ndarray:
    prod = np.eye(size, dtype=bool)
    for a in arrays:
        prod = _bool_matmul(a, prod)
    return prod


def product_matrix(matrices: Sequence[StepMatrix], size: int) -> np.ndarray:
    """Full boolean product of a chain, first matrix applied first.

    Returns a dense boolean array P with P[target, source] equal to
    `chain_entry(matrices, source, target)`.  Verification-path only;
    the simulation engines never need matrix-matrix products.
    """
    for t in matrices:
        if t.size != size:
            raise ValueError(f"matrix of size {t.size} in a chain of size {size}")
    return _product_bool([t.to_bool_array() for t in matrices], size)


def estimate_by_products(
    g: Graph,
    n: int,
    samples: int,
    master_seed: int,
    confidence: float = 0.95,
    reverse: bool = False,
) -> list[list[EstimateCell]]:
    """Estimate activation probabilities from random matrix chains.

    Draws ``samples`` independent sequences of ``n`` step matrices and,
    for every source node, folds the chain over the singleton source
    vector.  Cell [i][j] estimates the probability that entry (j, i) of
    the chained product is positive; with ``reverse=True`` each sampled
    sequence is folded in reversed order, which estimates the same
    quantity for the order-reversed product.  Forward and reverse runs
    use independent streams derived from the same master seed.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    size = g.node_count
    tag = TAG_PRODUCT_REVERSE if reverse else TAG_PRODUCT_FORWARD
    factory = StreamFactory(master_seed, tag)
    counts: list[Counter[int]] = [Counter() for _ in range(size)]
    for index in range(samples):
        rng = factory.stream(index)
        matrices = [sample_step_matrix(g, rng) for _ in range(n)]
        if reverse:
            matrices.reverse()
        for source in range(size):
            mask = 1 << source
            for t in matrices:
                mask = apply_matrix(t, mask)
            counts[source][mask] += 1
    cells: list[list[EstimateCell]] = []
    for source in range(size):
        successes = [0] * size
        for mask, c in counts[source].items():
            for j in iter_bits(mask):
                successes[j] += c
        cells.append(
            [EstimateCell.from_counts(s, samples, confidence) for s in successes]
        )
    return cells
