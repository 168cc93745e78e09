import math

import numpy as np
import pytest

from ophardy.errors import (
    DomainError,
    InvalidArgumentError,
    InvalidValueError,
    NotRepresentableError,
    ValidationError,
)
from ophardy.grid import (
    ArcQuadrature,
    CircleGrid,
    FourierPolynomial,
    PoissonExtension,
    RadiusLadder,
    Sampled,
    TaylorPolynomial,
    as_matrix,
    eval_circle,
    eval_disk,
    sample,
    unit_roots,
)


def test_unit_roots_quarter_turns_exact():
    z = unit_roots(8)
    assert z[0] == 1 and z[2] == 1j and z[4] == -1 and z[6] == -1j


@pytest.mark.parametrize("n", [3, 7, 64, 1000, 1 << 16])
def test_unit_roots_match_exp(n):
    k = np.arange(n)
    assert np.max(np.abs(unit_roots(n) - np.exp(2j * np.pi * k / n))) < 1e-15 * max(1, math.log2(n))


def test_unit_roots_small_components_keep_relative_precision():
    # the point just below 1: imaginary part is -sin(2 pi / n), tiny for large n
    n = 1 << 20
    z = unit_roots(n, [n - 1])[0]
    exact = -math.sin(2 * math.pi / n)
    assert abs(z.imag - exact) <= 4e-16 * abs(exact)


def test_unit_roots_wraps_indices():
    assert np.allclose(unit_roots(5, [-1, 5, 6]), unit_roots(5, [4, 0, 1]), atol=0)


def test_grid_weights_sum_to_one():
    g = CircleGrid(17)
    assert math.fsum(g.weights) == pytest.approx(1.0, abs=1e-15)
    assert g.nodes.shape == (17,)


@pytest.mark.parametrize("bad", [0, -3, 2.5, True])
def test_grid_rejects_bad_sizes(bad):
    with pytest.raises(InvalidArgumentError):
        CircleGrid(bad)


def test_grid_index_of():
    g = CircleGrid(12)
    assert g.index_of(g.nodes[7]) == 7
    with pytest.raises(NotRepresentableError):
        g.index_of(np.exp(0.1j))


def test_grid_refine():
    assert CircleGrid(8).refine(4) == CircleGrid(32)


def test_arc_quadrature_checks_weights():
    with pytest.raises(InvalidArgumentError):
        ArcQuadrature(np.array([1, -1]), np.array([0.5, 0.4]))
    q = ArcQuadrature(np.array([1j, -1j]), np.array([0.5, 0.5]))
    assert q.n_points == 2 and not q.uniform


def test_radius_ladder_is_dyadic():
    lad = RadiusLadder(5)
    assert lad.radii.tolist() == [0.5, 0.75, 0.875, 0.9375, 0.96875]
    assert np.all(1 - lad.radii == lad.gaps)
    with pytest.raises(InvalidArgumentError):
        RadiusLadder(0)


def test_as_matrix_rejects_nonfinite():
    assert as_matrix(3).shape == (1, 1)
    with pytest.raises(InvalidValueError):
        as_matrix([[np.nan]])
    with pytest.raises(InvalidArgumentError):
        as_matrix(np.zeros((2, 2, 2)))


def test_fourier_polynomial_values():
    A0, A1, Am = np.eye(2), np.array([[0, 1], [0, 0]]), np.array([[0, 0], [2j, 0]])
    f = FourierPolynomial({0: A0, 1: A1, -2: Am})
    z = np.exp(0.7j)
    expect = A0 + A1 * z + Am * z ** -2
    assert np.allclose(eval_circle(f, z), expect, atol=1e-15)
    assert f.degree == 2 and f.shape == (2, 2)
    assert np.all(f.coefficient(5) == 0)


def test_fourier_polynomial_shape_mismatch():
    with pytest.raises(ValidationError):
        FourierPolynomial({0: np.eye(2), 1: np.eye(3)})


def test_fourier_polynomial_add():
    f = FourierPolynomial({0: [[1]], 1: [[2]]})
    g = FourierPolynomial({1: [[3]], 2: [[4]]})
    s = f + g
    assert s.coefficient(1)[0, 0] == 5 and s.coefficient(2)[0, 0] == 4


def test_eval_circle_domain():
    f = FourierPolynomial({0: [[1]]})
    with pytest.raises(DomainError):
        eval_circle(f, 0.5)


def test_sampled_lookup_and_shape():
    g = CircleGrid(4)
    vals = np.arange(4, dtype=complex).reshape(4, 1, 1)
    f = Sampled(g, vals)
    assert f.values_at(np.array([1j]))[0, 0, 0] == 1
    with pytest.raises(NotRepresentableError):
        f.values_at(np.array([np.exp(0.3j)]))
    with pytest.raises(ValidationError):
        Sampled(g, np.zeros((3, 1, 1)))
    assert sample(f, g) is f


def test_taylor_and_disk_eval():
    h = TaylorPolynomial([np.eye(2), 2 * np.eye(2)])
    assert np.allclose(eval_disk(h, 0.5), 2 * np.eye(2))
    with pytest.raises(DomainError):
        eval_disk(h, 1.0)
    assert h.boundary_polynomial().degree == 1


def test_poisson_extension_reproduces_polynomial():
    f = FourierPolynomial({0: [[1, 0]], 2: [[0, 1j]]})
    ext = PoissonExtension(f)
    zeta = 0.4 - 0.3j
    assert np.allclose(eval_disk(ext, zeta), [[1, 1j * zeta ** 2]], atol=1e-13)
