import pytest

from symcascade import (
    ExactCapError,
    Graph,
    check_exact_symmetry,
    check_mc_consistency,
    check_reversal_agreement,
    check_transpose_identity,
    generate_er_graph,
    wilson_interval,
)
from symcascade.verify import wilson_interval as reexported_wilson

from corpus import named_small_graphs


def test_wilson_reexported_from_verify():
    assert reexported_wilson is wilson_interval


def test_exact_symmetry_one_step_is_trivially_zero():
    g = generate_er_graph(6, 0.5, "uniform-random", 42)
    rep = check_exact_symmetry(g, 1)
    assert rep.passed
    assert rep.max_abs_asymmetry == 0.0
    assert rep.method == "exact"


def test_exact_symmetry_path_anchor():
    rep = check_exact_symmetry(named_small_graphs()["path_3_7"], 2, tol=1e-9)
    assert rep.passed
    assert rep.max_abs_asymmetry <= 1e-9


def test_exact_symmetry_single_node_graph():
    rep = check_exact_symmetry(named_small_graphs()["single"], 4)
    assert rep.passed
    assert rep.max_abs_asymmetry == 0.0
    assert rep.argmax_pair is None


def test_exact_symmetry_random_graphs_multiple_steps():
    for seed in (1, 2, 3):
        g = generate_er_graph(7, 0.45, "uniform-random", seed)
        for n in (2, 3, 4):
            assert check_exact_symmetry(g, n, tol=1e-9).passed


def test_exact_symmetry_propagates_cap_error():
    g = generate_er_graph(8, 0.3, 0.5, seed=4)
    with pytest.raises(ExactCapError):
        check_exact_symmetry(g, 2, exact_cap=7)


def test_transpose_identity_zero_and_one_steps():
    g = generate_er_graph(10, 0.4, "uniform-random", 6)
    assert check_transpose_identity(g, 0, 20, master_seed=1).passed
    assert check_transpose_identity(g, 1, 20, master_seed=1).passed


def test_transpose_identity_random_graph():
    g = generate_er_graph(16, 0.3, "uniform-random", 10)
    rep = check_transpose_identity(g, 4, 300, master_seed=2)
    assert rep.passed
    assert rep.violations == 0
    assert rep.samples == 300
    assert rep.method == "per-sample"


def test_transpose_identity_deterministic():
    g = generate_er_graph(8, 0.5, "uniform-random", 3)
    a = check_transpose_identity(g, 3, 50, master_seed=9)
    b = check_transpose_identity(g, 3, 50, master_seed=9)
    assert a == b


def test_reversal_agreement_on_small_graph():
    g = named_small_graphs()["triangle_half"]
    rep = check_reversal_agreement(g, 2, 20_000, master_seed=11, confidence=0.99)
    assert rep.passed
    assert rep.method == "monte-carlo"
    assert rep.violations == 0
    assert rep.max_abs_asymmetry < 0.05


def test_consistency_deterministic_graph_has_full_coverage():
    g = named_small_graphs()["deterministic"]
    rep = check_mc_consistency(g, 2, 200, 0.99, master_seed=21)
    assert rep.coverage_cascade == 1.0
    assert rep.coverage_matrix == 1.0
    for r in rep.records:
        assert r.cascade.point == r.exact
        assert r.matrix.point == r.exact


def test_consistency_two_node_exact_value_inside_ci():
    g = named_small_graphs()["two_node_half"]
    rep = check_mc_consistency(g, 2, 20_000, 0.99, master_seed=31)
    rec = next(r for r in rep.records if r.source == 0 and r.target == 1)
    assert rec.exact == 0.75
    assert rec.cascade_inside and rec.matrix_inside


def test_consistency_triangle_anchor_inside_ci():
    g = named_small_graphs()["triangle_half"]
    rep = check_mc_consistency(g, 2, 20_000, 0.99, master_seed=43)
    rec = next(r for r in rep.records if r.source == 0 and r.target == 2)
    assert rec.exact == 0.8125
    assert rec.cascade_inside and rec.matrix_inside
    assert rep.coverage_cascade >= 0.95
    assert rep.coverage_matrix >= 0.95


def test_consistency_counts_ordered_pairs():
    g = named_small_graphs()["triangle_half"]
    rep = check_mc_consistency(g, 1, 500, 0.99, master_seed=51)
    assert len(rep.records) == 6  # ordered pairs, diagonal excluded
    assert rep.n == 1 and rep.trials == 500


def test_symmetry_report_to_dict_round_trip_fields():
    g = named_small_graphs()["path_3_7"]
    d = check_exact_symmetry(g, 2).to_dict()
    assert d["method"] == "exact"
    assert d["pass"] is True
    assert set(d) == {
        "method",
        "nodes",
        "edges",
        "n",
        "pass",
        "tolerance",
        "max_abs_asymmetry",
        "argmax_pair",
        "samples",
        "violations",
    }


def test_consistency_report_to_dict():
    g = named_small_graphs()["two_node_half"]
    rep = check_mc_consistency(g, 1, 300, 0.95, master_seed=61)
    d = rep.to_dict()
    assert d["pairs_checked"] == 2
    assert len(d["pairs"]) == 2
    slim = rep.to_dict(include_pairs=False)
    assert "pairs" not in slim
