import numpy as np
import pytest
import scipy.sparse.csgraph as csgraph

from tvgsp import (EigendecompositionCapError, ValidationError, build_graph,
                   eigendecompose, erdos_renyi_graph, estimate_lambda_max,
                   generate_graph, grid2d_graph, knn_sensor_graph, path_graph,
                   ring_graph)
from oracles import quadratic_form


def test_single_edge_laplacian():
    g = build_graph([(0, 1, 1.0)], 2)
    assert np.array_equal(g.L.toarray(), [[1.0, -1.0], [-1.0, 1.0]])


def test_empty_graph_laplacian():
    g = build_graph([], 3)
    assert np.array_equal(g.L.toarray(), np.zeros((3, 3)))
    assert g.lmax == 0.0


def test_p3_laplacian():
    g = path_graph(3)
    expected = [[1.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 1.0]]
    assert np.array_equal(g.L.toarray(), expected)


def test_duplicate_edges_merge_by_summing():
    g = build_graph([(0, 1, 1.0), (1, 0, 2.0)], 2)
    assert g.W[0, 1] == 3.0
    assert g.num_edges == 1


@pytest.mark.parametrize("edges, n", [
    ([(0, 1, -1.0)], 2),        # negative weight
    ([(0, 0, 1.0)], 2),         # self-loop
    ([(0, 3, 1.0)], 2),         # id out of range
])
def test_invalid_edges_rejected(edges, n):
    with pytest.raises(ValidationError):
        build_graph(edges, n)


def test_row_sums_vanish(sensor30):
    ones = np.ones(sensor30.N)
    assert np.abs(sensor30.L @ ones).max() <= 1e-12
    # integer weights: exact zero
    g = grid2d_graph(4, 5)
    assert np.abs(g.L @ np.ones(g.N)).max() == 0.0


def test_quadratic_form_identity(sensor30, rng):
    for _ in range(100):
        x = rng.standard_normal((sensor30.N, 1))
        lhs = float(x.ravel() @ (sensor30.L @ x.ravel()))
        rhs = quadratic_form(x, sensor30)
        assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-12)


def test_p2_eigenvalues(p2):
    eig = p2.eigensystem()
    assert np.allclose(eig.values, [0.0, 2.0], atol=1e-12)


def test_k3_eigenvalues(k3):
    # oracle: brute-force eigensolve of the hand-built Laplacian
    expected = np.sort(np.linalg.eigvalsh(
        np.array([[2.0, -1.0, -1.0], [-1.0, 2.0, -1.0], [-1.0, -1.0, 2.0]])))
    eig = k3.eigensystem()
    assert np.allclose(eig.values, expected, atol=1e-12)
    assert np.allclose(eig.values, [0.0, 3.0, 3.0], atol=1e-12)


def test_zero_graph_eigensystem():
    g = build_graph([], 2)
    eig = g.eigensystem()
    assert np.allclose(eig.values, [0.0, 0.0])
    assert np.allclose(eig.vectors.T @ eig.vectors, np.eye(2), atol=1e-12)


def test_eigensystem_reconstruction_and_orthonormality(sensor30):
    eig = sensor30.eigensystem()
    L = sensor30.L.toarray()
    recon = eig.vectors @ np.diag(eig.values) @ eig.vectors.T
    assert (np.linalg.norm(recon - L) / np.linalg.norm(L)) <= 1e-10
    assert np.abs(eig.vectors.T @ eig.vectors - np.eye(sensor30.N)).max() <= 1e-10
    assert eig.values[0] <= 1e-10
    # connected graph: first eigenvector is the positive constant vector
    const = np.full(sensor30.N, 1 / np.sqrt(sensor30.N))
    assert np.allclose(eig.vectors[:, 0], const, atol=1e-8)


def test_sign_convention(sensor30):
    eig = sensor30.eigensystem()
    for j in range(sensor30.N):
        col = eig.vectors[:, j]
        nz = np.flatnonzero(np.abs(col) > 1e-12)
        assert col[nz[0]] > 0


def test_eigendecompose_cap(p3):
    with pytest.raises(EigendecompositionCapError, match="fast path"):
        eigendecompose(p3, cap=2)


def test_lambda_max_bounds(p2, k3):
    assert estimate_lambda_max(p2) == 2.0
    b = estimate_lambda_max(k3)
    assert 3.0 <= b <= 4.0
    assert estimate_lambda_max(build_graph([], 4)) == 0.0


def test_lambda_max_refined_still_upper_bound():
    for seed in range(5):
        g = knn_sensor_graph(40, 4, seed=seed)
        true_lmax = g.eigensystem().values[-1]
        refined = estimate_lambda_max(g, refine=True)
        assert true_lmax <= refined <= 2.0 * g.degrees.max() + 1e-12


def test_ring_degrees():
    g = ring_graph(4)
    assert np.allclose(g.degrees, 2.0)


def test_grid2d_counts():
    g = grid2d_graph(3, 3)
    assert g.N == 9
    assert g.num_edges == 12


def test_knn_sensor_connected_seed7():
    g = knn_sensor_graph(50, 5, seed=7)
    # independent connectivity oracle
    ncomp, _ = csgraph.connected_components(g.W, directed=False)
    assert ncomp == 1
    assert g.is_connected()
    assert g.coords.shape == (50, 2)


def test_knn_sensor_deterministic():
    a = knn_sensor_graph(25, 3, seed=11)
    b = knn_sensor_graph(25, 3, seed=11)
    assert np.array_equal(a.W.toarray(), b.W.toarray())
    assert np.array_equal(a.coords, b.coords)


def test_erdos_renyi_seeded():
    a = erdos_renyi_graph(30, 0.2, seed=5)
    b = erdos_renyi_graph(30, 0.2, seed=5)
    assert np.array_equal(a.W.toarray(), b.W.toarray())
    c = erdos_renyi_graph(30, 0.2, seed=6)
    assert not np.array_equal(a.W.toarray(), c.W.toarray())


def test_generate_graph_dispatch():
    g = generate_graph("grid2d", {"rows": 2, "cols": 3})
    assert g.N == 6
    with pytest.raises(ValidationError):
        generate_graph("unknown", {})
    with pytest.raises(ValidationError):
        generate_graph("knn_sensor", {"n": 10, "k": 10})
    with pytest.raises(ValidationError):
        generate_graph("grid2d", {"rows": 2})


def test_edges_canonical_order():
    g = build_graph([(2, 0, 1.0), (1, 0, 2.0)], 3)
    src, dst, w = g.edges()
    assert src.tolist() == [0, 0]
    assert dst.tolist() == [1, 2]
    assert w.tolist() == [2.0, 1.0]


def test_power_iteration_refine_empty():
    assert estimate_lambda_max(build_graph([], 3), refine=True) == 0.0
