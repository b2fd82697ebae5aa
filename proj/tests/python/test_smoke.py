import math

import numpy as np
import pytest

import specgraph as sg


def test_graph_basics():
    g = sg.Graph(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)])
    assert g.num_vertices == 3
    assert g.num_edges == 3
    np.testing.assert_allclose(g.degrees, [2.0, 2.0, 2.0])
    np.testing.assert_allclose(g.laplacian().sum(axis=1), 0.0, atol=1e-15)


def test_invalid_edges_raise_value_error():
    with pytest.raises(ValueError):
        sg.Graph(2, [(0, 0, 1.0)])
    with pytest.raises(sg.ValidationError):
        sg.Graph(2, [(0, 1, -1.0)])


def test_dumbbell_partition():
    g = sg.family("dumbbell", 5)
    lam, vec = sg.fiedler(g)
    sweep = sg.sweep_cut(g, vec)
    assert sweep["best_conductance"] == pytest.approx(1 / 21)
    assert sg.partition_quality(g, [0, 1, 2, 3, 4])["conductance"] == pytest.approx(1 / 21)


def test_path_spectrum():
    values, _ = sg.eigensystem(sg.family("path", 3))
    np.testing.assert_allclose(values, [0.0, 1.0, 3.0], atol=1e-12)


def test_pagerank_and_push_agree():
    g = sg.family("star", 8)
    seed = np.zeros(8)
    seed[0] = 1.0
    p, r, pushes = sg.push_ppr(g, seed, 0.2, 1e-8)
    assert pushes > 0
    assert p.sum() + r.sum() <= 1 + 1e-12
    np.testing.assert_allclose(p + sg.pagerank(g, 0.2, r), sg.pagerank(g, 0.2, seed), atol=1e-10)


def test_l1_push_is_optimal():
    _, _, ok = sg.push_l1(sg.family("dumbbell", 6), [0, 1, 2, 3, 4, 5], 0.9, 1e-4)
    assert ok


def test_resistance():
    assert sg.effective_resistance(sg.family("cycle", 4), 0, 1) == pytest.approx(0.75)
    assert sg.total_resistance(sg.family("complete", 6)) == pytest.approx(5.0)
    assert sum(sg.leverage_scores(sg.gnp(30, 0.3, 2))) == pytest.approx(29.0)


def test_sparsify_and_pcg():
    g = sg.gnp(60, 0.2, 4)
    h = sg.sparsify(g, sg.sample_size(60, 1.0), seed=2)
    sigma = sg.spectral_similarity(g, h)
    assert 1.0 <= sigma < 2.0
    b = np.cos(np.arange(60.0))
    b -= b.mean()
    plain = sg.solve(g, b, "cg")
    pre = sg.solve_pcg(g, b, h)
    dense = sg.solve(g, b, "dense")
    np.testing.assert_allclose(pre["x"], dense["x"], atol=1e-6)
    assert pre["iterations"] <= plain["iterations"]


def test_solve_k2():
    res = sg.solve(sg.family("complete", 2), np.array([1.0, -1.0]), "cg")
    np.testing.assert_allclose(res["x"], [0.5, -0.5], atol=1e-12)


def test_ssl_path_interpolation():
    scores, pred = sg.ssl(sg.family("path", 5), [(0, 0), (4, 1)], "zgl")
    np.testing.assert_allclose(scores[:, 0], [1.0, 0.5, 0.0, -0.5, -1.0], atol=1e-12)
    assert pred[:2] == [0, 0] and pred[3:] == [1, 1]


def test_planted_bisection_recovery():
    n = 1024
    q = 0.5 - 12 / math.sqrt(n)
    g, truth = sg.planted_bisection(n, 0.5, q, seed=3)
    assert sg.misclassification_rate(sg.recover_bisection(g), truth) <= 1 / 8


def test_rsc_two_blocks():
    g, truth = sg.planted_bisection(100, 0.4, 0.05, seed=1)
    assert sg.misclassification_rate(sg.rsc(g, 2, 0.0), truth) == 0.0


def test_edge_list_round_trip(tmp_path):
    g = sg.gnp(25, 0.3, 7)
    path = str(tmp_path / "g.tsv")
    sg.write_edge_list(path, g)
    assert sg.read_edge_list(path) == g
