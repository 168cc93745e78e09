"""Worked examples for each operation, one small oracle each."""
import math

import numpy as np
import pytest

from ophardy.boundary import poisson_convergence_report, radial_boundary
from ophardy.gallery import (
    arc_index,
    banach_transpose,
    make_arc_multiplier,
    make_diagonal_boundary,
    make_diagonal_disk,
    make_evaluation_functional,
    make_matrix_polynomial,
    make_rotation_symbol,
    make_unbounded_row,
    separability_witness,
    separating_mode,
)
from ophardy.grid import (
    CircleGrid,
    FourierPolynomial,
    PoissonExtension,
    RadiusLadder,
    TaylorPolynomial,
    eval_circle,
    eval_disk,
    make_grid,
    sample,
)
from ophardy.norms import (
    ScalarSampled,
    hp_disk_norm,
    l2_strong_norm,
    lp_scalar_norm,
    lp_sot_norm,
    lp_strong_norm_estimate,
    op_norm,
    pointwise_norm,
    strong_disk_norm,
)
from ophardy.transforms import (
    analytic_defect,
    fourier_coefficient,
    poisson_integral,
    poisson_kernel,
    radial_section,
    strong_poisson,
)

A = np.array([[1.0, 2j], [-0.5, 3.0]])
E = lambda n, d: np.diag((np.arange(d) == n).astype(complex))  # noqa: E731


# ---------------------------------------------------------------- grid

def test_make_grid_small():
    assert make_grid(1).nodes.tolist() == [1] and make_grid(1).weights.tolist() == [1.0]
    assert make_grid(4).nodes.tolist() == [1, 1j, -1, -1j]
    g = make_grid(8)
    assert math.fsum(g.weights) == 1.0
    assert g.nodes[1] == pytest.approx(np.exp(1j * np.pi / 4), abs=1e-16)


def test_eval_circle_examples():
    assert np.array_equal(eval_circle(FourierPolynomial({0: np.eye(2)}), 1j), np.eye(2))
    assert eval_circle(FourierPolynomial({1: [[1]]}), -1)[0, 0] == -1
    z = np.exp(0.9j)
    assert np.allclose(eval_circle(make_rotation_symbol(3), z), np.diag([1, z, z * z]), atol=1e-15)


def test_eval_disk_examples():
    assert np.array_equal(eval_disk(TaylorPolynomial([A]), 0.3 + 0.1j), A)
    zeta = 0.2 - 0.6j
    assert np.allclose(eval_disk(make_diagonal_disk(2), zeta), np.diag([zeta, zeta ** 2]), atol=1e-16)
    assert np.array_equal(eval_disk(TaylorPolynomial([0 * np.eye(2), np.eye(2)]), 0), np.zeros((2, 2)))


def test_sample_examples():
    g = make_grid(4)
    assert np.array_equal(sample(FourierPolynomial({0: A}), g).values, np.stack([A] * 4))
    assert sample(FourierPolynomial({1: [[1]]}), g).values[:, 0, 0].tolist() == [1, 1j, -1, -1j]
    arc = make_arc_multiplier(1)
    g8 = make_grid(8)
    assert np.array_equal(sample(arc, g8).values, arc.values_at(g8.nodes))


# ---------------------------------------------------------------- transforms

def test_fourier_coefficient_examples():
    g = make_grid(16)
    f = FourierPolynomial({0: A})
    assert np.allclose(fourier_coefficient(f, 0, g), A, atol=1e-15)
    assert np.max(np.abs(fourier_coefficient(f, 3, g))) < 1e-15
    assert np.allclose(fourier_coefficient(make_rotation_symbol(4), 2, g), E(2, 4), atol=1e-15)


def test_analytic_defect_examples():
    g = make_grid(32)
    assert analytic_defect(FourierPolynomial({1: A}), 4, g).max_negative_defect <= 1e-13
    assert analytic_defect(FourierPolynomial({-1: A}), 4, g).max_negative_defect == pytest.approx(op_norm(A))
    assert analytic_defect(make_rotation_symbol(3), 4, g).max_negative_defect <= 1e-13


def test_poisson_kernel_examples():
    assert poisson_kernel(0, np.exp(2j)) == pytest.approx(1.0)
    assert poisson_kernel(0.5, 1) == pytest.approx(3.0)
    assert poisson_kernel(0.5, -1) == pytest.approx(1 / 3)


def test_poisson_integral_examples():
    g = make_grid(64)
    zeta = 0.6 + 0.3j
    assert np.allclose(poisson_integral(FourierPolynomial({0: A}), zeta, g), A, atol=1e-14)
    for n in range(5):
        assert abs(poisson_integral(FourierPolynomial({n: [[1]]}), zeta, g)[0, 0] - zeta ** n) <= 1e-12
    assert abs(poisson_integral(FourierPolynomial({-1: [[1]]}), zeta, g)[0, 0] - np.conj(zeta)) <= 1e-12


def test_strong_poisson_examples():
    zeta = -0.4 + 0.7j
    assert np.allclose(strong_poisson(make_rotation_symbol(3), zeta), np.diag([1, zeta, zeta ** 2]), atol=1e-12)
    assert np.allclose(strong_poisson(FourierPolynomial({0: A}), zeta), A, atol=1e-13)
    h = make_diagonal_disk(4)
    assert np.allclose(strong_poisson(make_diagonal_boundary(4), zeta), eval_disk(h, zeta), atol=1e-12)


def test_radial_section_examples():
    g = make_grid(8)
    assert np.array_equal(radial_section(TaylorPolynomial([A]), 0.7, g).values, np.stack([A] * 8))
    assert np.allclose(radial_section(make_diagonal_disk(2), 0.5, g).values[0], np.diag([0.5, 0.25]))
    assert np.array_equal(radial_section(TaylorPolynomial([0 * A, np.eye(2)]), 0.0, g).values, np.zeros((8, 2, 2)))


# ---------------------------------------------------------------- norms

def test_op_norm_examples():
    assert op_norm(np.eye(3)) == pytest.approx(1.0)
    assert op_norm(np.diag([2, -3j])) == pytest.approx(3.0)
    assert op_norm([[0, 2], [0, 0]]) == pytest.approx(2.0)


def test_pointwise_norm_examples():
    g = make_grid(16)
    assert np.allclose(pointwise_norm(make_rotation_symbol(3), g).values, 1.0)
    assert np.allclose(pointwise_norm(FourierPolynomial({1: A}), g).values, op_norm(A))
    arc = make_arc_multiplier(2)
    z = np.exp(1j * 1.2 * np.pi)  # inside E_1
    assert arc_index(np.array([z]), 2)[0] == 1
    assert op_norm(eval_circle(arc, z)) == pytest.approx(math.sqrt(2))
    # sqrt(2N) on E_N and 1 on E_0
    q = arc.exact_quadrature()
    assert np.allclose(pointwise_norm(arc, q).values, [1, math.sqrt(2), 2])


def test_lp_scalar_examples():
    g = make_grid(8)
    assert lp_scalar_norm(ScalarSampled(g, np.ones(8)), 3.3) == pytest.approx(1.0)
    half = ScalarSampled(g, np.array([1.0] * 4 + [0.0] * 4))
    assert lp_scalar_norm(half, 1) == pytest.approx(0.5)
    assert lp_scalar_norm(half, 2) == pytest.approx(math.sqrt(0.5))


def test_lp_sot_examples():
    for p in (1, 2, "inf"):
        assert lp_sot_norm(make_rotation_symbol(4), p, make_grid(32)) == pytest.approx(1.0)
    for d in (1, 4, 16):
        H = math.fsum(1 / k for k in range(1, d + 1))
        assert lp_sot_norm(make_arc_multiplier(d), 2) == pytest.approx(math.sqrt(0.5 + H), abs=1e-8)
    assert lp_sot_norm(FourierPolynomial({0: np.zeros((2, 2))}), 2, make_grid(4)) == 0.0


def test_hp_disk_examples():
    g = make_grid(64)
    prof = hp_disk_norm(make_diagonal_disk(3), "inf", RadiusLadder(12), g)
    assert prof.final == pytest.approx(1 - 2.0 ** -12)
    d = 6
    prof = hp_disk_norm(make_evaluation_functional(d), 2, RadiusLadder(10), g)
    assert all(abs(v - math.sqrt((1 - r ** (2 * d)) / (1 - r * r))) <= 1e-10 for r, v in prof.per_radius)
    const = hp_disk_norm(TaylorPolynomial([A]), 1.5, RadiusLadder(3), g)
    assert np.allclose(const.values(), op_norm(A))


def test_l2_strong_examples():
    for d in (1, 4, 16):
        assert l2_strong_norm(make_arc_multiplier(d)) == pytest.approx(1.0, abs=1e-12)
    assert l2_strong_norm(FourierPolynomial({1: A}), make_grid(8)) == pytest.approx(op_norm(A))
    # the Gram of the row (z, ..., z^d) is the identity, so the strong norm is 1
    assert l2_strong_norm(make_unbounded_row(9), make_grid(64)) == pytest.approx(1.0, abs=1e-13)


def test_strong_estimate_examples():
    g = make_grid(64)
    for f in (make_rotation_symbol(3), make_unbounded_row(4), make_matrix_polynomial(dim=2, degree=3, seed=3)):
        assert lp_strong_norm_estimate(f, 2, g) <= l2_strong_norm(f, g) + 1e-10
    _, _, vh = np.linalg.svd(A)
    top = vh[0].conj()
    est = lp_strong_norm_estimate(FourierPolynomial({0: A}), 3, g, probes=top)
    assert est == pytest.approx(op_norm(A), abs=1e-12)
    assert lp_strong_norm_estimate(FourierPolynomial({0: np.zeros((2, 2))}), 1, g) == 0.0


# ---------------------------------------------------------------- boundary

def test_radial_boundary_examples():
    g = make_grid(64)
    res = radial_boundary(make_diagonal_disk(2), g, RadiusLadder(12))
    assert np.max(np.abs(res.boundary.values - make_diagonal_boundary(2).values_at(g.nodes))) < 1e-10
    assert np.max(res.per_node_residual.values) <= 1e-8
    res = radial_boundary(TaylorPolynomial([A]), g, RadiusLadder(5))
    assert np.allclose(res.boundary.values, A, atol=1e-14) and np.max(res.per_node_residual.values) <= 1e-14
    f = make_matrix_polynomial(dim=2, degree=4, seed=8, analytic=False)
    res = radial_boundary(PoissonExtension(f), g, RadiusLadder(12))
    assert np.max(np.abs(res.boundary.values - f.values_at(g.nodes))) <= 1e-6


def test_convergence_report_examples():
    g = make_grid(64)
    rows = poisson_convergence_report(FourierPolynomial({0: A}), 2, RadiusLadder(6), g)
    assert max(r["max_deviation"] for r in rows) < 1e-13
    f = make_matrix_polynomial(dim=2, degree=4, seed=2, analytic=False)
    rows = poisson_convergence_report(f, 2, RadiusLadder(12), g)
    dev = [r["lp_deviation"] for r in rows]
    assert all(b < a for a, b in zip(dev, dev[1:]))
    C = [r["lp_deviation"] / (1 - r["r"]) for r in rows[-3:]]
    assert max(C) / min(C) < 1.01
    dev = [r["lp_deviation"] for r in poisson_convergence_report(make_rotation_symbol(4), 1, RadiusLadder(10), g)]
    assert all(b < a for a, b in zip(dev, dev[1:]))


# ---------------------------------------------------------------- gallery

def test_diagonal_disk_examples():
    zeta = 0.3 + 0.2j
    assert eval_disk(make_diagonal_disk(1), zeta)[0, 0] == zeta
    for d in (1, 5):
        prof = hp_disk_norm(make_diagonal_disk(d), "inf", RadiusLadder(14), make_grid(64))
        assert prof.final == pytest.approx(1.0, abs=1e-4)


def test_diagonal_boundary_separation():
    d = 40
    b = make_diagonal_boundary(d)
    z1, z2 = np.exp(0.3j), np.exp(0.42j)
    n0 = separating_mode(z1, z2)
    assert n0 <= d
    v = b.values_at(np.array([z1]))[0] - b.values_at(np.array([z2]))[0]
    assert np.linalg.norm(v[:, n0 - 1]) > math.sqrt(2)


def test_rotation_symbol_examples():
    d = 6
    f = make_rotation_symbol(d)
    g = make_grid(32)
    for n in range(-2, d + 2):
        expect = E(n, d) if 0 <= n < d else np.zeros((d, d))
        assert np.allclose(fourier_coefficient(f, n, g), expect, atol=1e-15)
    z1, z2 = np.exp(0.1j), np.exp(1.0j)
    n0 = separating_mode(z1, z2)
    diff = (f.values_at(np.array([z1]))[0] - f.values_at(np.array([z2]))[0])[:, n0]
    assert np.linalg.norm(diff) ** 2 > 2


def test_evaluation_functional_examples():
    d = 5
    h = make_evaluation_functional(d)
    zeta = 0.7 * np.exp(0.4j)
    assert op_norm(eval_disk(h, zeta)) == pytest.approx(math.sqrt(sum(abs(zeta) ** (2 * n) for n in range(d))))
    lad = RadiusLadder(8)
    assert strong_disk_norm(h, lad, make_grid(64)).final == pytest.approx(1.0, abs=1e-12)
    tops = [hp_disk_norm(make_evaluation_functional(k), 2, RadiusLadder(14), make_grid(64)).final for k in (1, 4, 16)]
    assert tops == pytest.approx([1, 2, 4], rel=1e-3)


def test_unbounded_row_examples():
    f = make_unbounded_row(7)
    g = make_grid(32)
    assert np.allclose(pointwise_norm(f, g).values, math.sqrt(7))
    assert analytic_defect(f, 8, g).max_negative_defect <= 1e-14


def test_transpose_examples():
    t = banach_transpose(FourierPolynomial({1: A}))
    assert np.array_equal(t.coefficient(1), A.T) and not np.any(t.coefficient(0))
    f = make_rotation_symbol(4)
    z = make_grid(8).nodes
    assert np.array_equal(banach_transpose(f).values_at(z), f.values_at(z))


def test_witness_examples():
    assert separability_witness(FourierPolynomial({0: A}), 0.01, make_grid(20)) == 1
    assert separability_witness(make_rotation_symbol(40), 1.4, make_grid(32)) == 32
    f = make_matrix_polynomial(dim=2, degree=3, seed=1)
    assert separability_witness(f, 1.5, make_grid(512)) == separability_witness(f, 1.5, make_grid(1024))
