"""Checks that activation probabilities are symmetric in seed and target.

Three independent routes, each exercising a different part of the
argument for why P[i -> j after n steps] equals P[j -> i after n steps]
on symmetric-probability graphs:

* exact: compute the full probability matrix and compare it with its
  transpose (the claim itself).
* per-sample: for sampled chains of symmetric step matrices, reversing
  the chain must transpose the boolean product, bit for bit.  This is a
  deterministic identity; a single violation is an implementation bug.
* monte-carlo: forward-order and reverse-order chains are identically
  distributed, so independent estimators of the same product entry must
  agree statistically.
"""

from dataclasses import dataclass, field

import numpy as np

from .cascade import estimate_activation_rows
from .exact import DEFAULT_EXACT_CAP, TransitionModel, exact_activation_matrix
from .graph import Graph
from .matrix import _product_bool, estimate_by_products, sample_step_matrix
from .rng import TAG_TRANSPOSE_CHECK, StreamFactory
from .stats import EstimateCell, wilson_interval  # noqa: F401  (wilson re-export)

__all__ = [
    "SymmetryReport",
    "PairRecord",
    "ConsistencyReport",
    "check_exact_symmetry",
    "check_transpose_identity",
    "check_reversal_agreement",
    "check_mc_consistency",
    "wilson_interval",
]


@dataclass(frozen=True)
class SymmetryReport:
    """Outcome of one symmetry check.

    ``method`` is "exact", "per-sample", or "monte-carlo".  Exact checks
    pass iff the largest |P_ij - P_ji| is within tolerance; sample-based
    checks pass iff there are zero violations.
    """

    method: str
    nodes: int
    edges: int
    n: int
    passed: bool
    tolerance: float | None = None
    max_abs_asymmetry: float | None = None
    argmax_pair: tuple[int, int] | None = None
    samples: int | None = None
    violations: int | None = None

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "nodes": self.nodes,
            "edges": self.edges,
            "n": self.n,
            "pass": self.passed,
            "tolerance": self.tolerance,
            "max_abs_asymmetry": self.max_abs_asymmetry,
            "argmax_pair": list(self.argmax_pair) if self.argmax_pair else None,
            "samples": self.samples,
            "violations": self.violations,
        }


def check_exact_symmetry(
    g: Graph,
    n: int,
    tol: float = 1e-9,
    exact_cap: int = DEFAULT_EXACT_CAP,
    model: TransitionModel | None = None,
) -> SymmetryReport:
    """Exact check: max over pairs of |P_ij(n) - P_ji(n)| must be <= tol."""
    matrix = exact_activation_matrix(g, n, exact_cap=exact_cap, model=model)
    diff = np.abs(matrix.values - matrix.values.T)
    max_asym = float(diff.max()) if diff.size else 0.0
    argmax = None
    if g.node_count > 1 and max_asym > 0.0:
        flat = int(diff.argmax())
        argmax = (flat // g.node_count, flat % g.node_count)
    return SymmetryReport(
        method="exact",
        nodes=g.node_count,
        edges=g.edge_count,
        n=n,
        passed=max_asym <= tol,
        tolerance=tol,
        max_abs_asymmetry=max_asym,
        argmax_pair=argmax,
    )


def check_transpose_identity(
    g: Graph, n: int, samples: int, master_seed: int
) -> SymmetryReport:
    """Per-sample check: reversing a sampled chain transposes its product.

    For each sample, draws n step matrices and compares the boolean
    product of the chain with the transposed product of the reversed
    chain, entry by entry.  Any nonzero violation count fails; no
    statistical tolerance is involved.  Works at any graph size.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    factory = StreamFactory(master_seed, TAG_TRANSPOSE_CHECK)
    size = g.node_count
    violations = 0
    for index in range(samples):
        rng = factory.stream(index)
        arrays = [sample_step_matrix(g, rng).to_bool_array() for _ in range(n)]
        forward = _product_bool(arrays, size)
        backward = _product_bool(arrays[::-1], size)
        violations += int((forward != backward.T).sum())
    return SymmetryReport(
        method="per-sample",
        nodes=size,
        edges=g.edge_count,
        n=n,
        passed=violations == 0,
        samples=samples,
        violations=violations,
    )


def check_reversal_agreement(
    g: Graph,
    n: int,
    samples: int,
    master_seed: int,
    confidence: float = 0.99,
) -> SymmetryReport:
    """Statistical check that chain order does not change the distribution.

    Runs the product estimator twice on independent seed streams, once
    folding sampled chains forward and once reversed, and requires the
    two Wilson intervals to overlap for every ordered pair.
    """
    forward = estimate_by_products(g, n, samples, master_seed, confidence)
    backward = estimate_by_products(
        g, n, samples, master_seed, confidence, reverse=True
    )
    size = g.node_count
    violations = 0
    max_gap = 0.0
    argmax = None
    for i in range(size):
        for j in range(size):
            if i == j:
                continue
            f, b = forward[i][j], backward[i][j]
            gap = abs(f.point - b.point)
            if gap > max_gap:
                max_gap = gap
                argmax = (i, j)
            if max(f.ci_low, b.ci_low) > min(f.ci_high, b.ci_high):
                violations += 1
    return SymmetryReport(
        method="monte-carlo",
        nodes=size,
        edges=g.edge_count,
        n=n,
        passed=violations == 0,
        max_abs_asymmetry=max_gap,
        argmax_pair=argmax,
        samples=samples,
        violations=violations,
    )


@dataclass(frozen=True)
class PairRecord:
    """Exact value vs Monte Carlo estimates for one ordered (seed, target) pair."""

    source: int
    target: int
    exact: float
    cascade: EstimateCell
    cascade_inside: bool
    matrix: EstimateCell
    matrix_inside: bool


@dataclass(frozen=True)
class ConsistencyReport:
    """Cross-engine validation of Monte Carlo estimates against exact values."""

    nodes: int
    edges: int
    n: int
    trials: int
    confidence: float
    records: tuple[PairRecord, ...] = field(repr=False)
    coverage_cascade: float
    coverage_matrix: float

    def to_dict(self, include_pairs: bool = True) -> dict:
        out = {
            "nodes": self.nodes,
            "edges": self.edges,
            "n": self.n,
            "trials": self.trials,
            "confidence": self.confidence,
            "pairs_checked": len(self.records),
            "coverage_cascade": self.coverage_cascade,
            "coverage_matrix": self.coverage_matrix,
        }
        if include_pairs:
            out["pairs"] = [
                {
                    "source": r.source,
                    "target": r.target,
                    "exact": r.exact,
                    "cascade_point": r.cascade.point,
                    "cascade_ci": [r.cascade.ci_low, r.cascade.ci_high],
                    "cascade_inside": r.cascade_inside,
                    "matrix_point": r.matrix.point,
                    "matrix_ci": [r.matrix.ci_low, r.matrix.ci_high],
                    "matrix_inside": r.matrix_inside,
                }
                for r in self.records
            ]
        return out


def check_mc_consistency(
    g: Graph,
    n: int,
    trials: int,
    confidence: float,
    master_seed: int,
    exact_cap: int = DEFAULT_EXACT_CAP,
) -> ConsistencyReport:
    """Compare both Monte Carlo engines against the exact oracle.

    For every ordered pair (i, j), i != j, records whether the exact
    value lies inside the cascade estimator's confidence interval, and
    likewise for the product estimator run on a disjoint seed stream.
    Coverage is the fraction of pairs whose interval contains the exact
    value, reported per estimator.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    exact = exact_activation_matrix(g, n, exact_cap=exact_cap)
    cascade_cells = estimate_activation_rows(g, n, trials, master_seed, confidence)
    matrix_cells = estimate_by_products(g, n, trials, master_seed, confidence)
    records: list[PairRecord] = []
    inside_cascade = 0
    inside_matrix = 0
    for i in range(g.node_count):
        for j in range(g.node_count):
            if i == j:
                continue
            value = float(exact.values[i, j])
            c_cell = cascade_cells[i][j]
            m_cell = matrix_cells[i][j]
            c_in = c_cell.contains(value)
            m_in = m_cell.contains(value)
            inside_cascade += c_in
            inside_matrix += m_in
            records.append(
                PairRecord(i, j, value, c_cell, c_in, m_cell, m_in)
            )
    pairs = len(records)
    return ConsistencyReport(
        nodes=g.node_count,
        edges=g.edge_count,
        n=n,
        trials=trials,
        confidence=confidence,
        records=tuple(records),
        coverage_cascade=inside_cascade / pairs if pairs else 1.0,
        coverage_matrix=inside_matrix / pairs if pairs else 1.0,
    )
