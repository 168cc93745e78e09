"""Fourier coefficients, the Poisson kernel and (strong) Poisson integrals.

All integrals are node quadratures on the circle. For boundaries that are not
stored samples, the quadrature grid is refined with the evaluation radius so
that ``n_points >= COUPLING / (1 - r)``; this keeps the aliasing error of the
kernel, of order ``r**n_points``, near machine precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _core
from ._linalg import op_norms
from .errors import DomainError, InvalidArgumentError
from .grid import (
    Z_TOL,
    ArcQuadrature,
    CircleFunction,
    CircleGrid,
    DiskFunction,
    FourierPolynomial,
    PoissonExtension,
    RuleBased,
    Sampled,
    sample,
    unit_roots,
)

COUPLING = 32.0
MIN_POISSON_POINTS = 64
# nodes sampled at once in direct sums
_CHUNK = 1 << 15
# entries per polyphase FFT block
_FFT_BLOCK = 1 << 22


@dataclass(frozen=True)
class AnalyticityReport:
    max_negative_defect: float
    tested_range: int

    def certifies(self, tol: float = 1e-10) -> bool:
        return self.max_negative_defect <= tol


def _band(f: CircleFunction):
    if isinstance(f, FourierPolynomial):
        return f.degree
    if isinstance(f, RuleBased):
        return f.band
    return None


def quadrature_for(f: CircleFunction, grid=None):
    """Quadrature on which ``f`` is integrated: its own grid if sampled, else ``grid``."""
    if isinstance(f, Sampled):
        if grid is not None and grid is not f.grid and grid != f.grid:
            raise InvalidArgumentError("a sampled function can only be integrated on its own grid")
        return f.grid
    if grid is None:
        if isinstance(f, RuleBased) and f.exact_quadrature() is not None:
            return f.exact_quadrature()
        raise InvalidArgumentError(f"{f!r} needs an explicit grid")
    return grid


# ------------------------------------------------------------ coefficients

def fourier_coefficient(f: CircleFunction, n: int, grid=None) -> np.ndarray:
    """``sum_j w_j conj(z_j)**n f(z_j)``."""
    quad = quadrature_for(f, grid)
    if isinstance(quad, CircleGrid) and quad.n_points < 2:
        raise InvalidArgumentError("Fourier coefficients need at least 2 nodes")
    vals = sample(f, quad).values
    n = int(n)
    if isinstance(quad, CircleGrid):
        # z_j**n is again a root of unity; index arithmetic keeps it exact
        phase = np.conj(unit_roots(quad.n_points, np.arange(quad.n_points) * n))
    else:
        phase = np.conj(quad.nodes) ** n if n >= 0 else quad.nodes ** (-n)
    return np.tensordot(quad.weights * phase, vals, axes=(0, 0))


def analytic_defect(f: CircleFunction, M: int, grid=None) -> AnalyticityReport:
    """Largest operator norm among the coefficients of modes ``-M..-1``."""
    if M < 1:
        raise InvalidArgumentError("M must be positive")
    coeffs = np.stack([fourier_coefficient(f, -k, grid) for k in range(1, M + 1)])
    return AnalyticityReport(float(np.max(op_norms(coeffs))), int(M))


# ------------------------------------------------------------ Poisson

def poisson_kernel(zeta: complex, z: complex) -> float:
    zeta, z = complex(zeta), complex(z)
    if abs(zeta) >= 1.0:
        raise DomainError(f"|zeta| = {abs(zeta)!r} is not below 1")
    if abs(abs(z) - 1.0) > Z_TOL:
        raise DomainError(f"|z| = {abs(z)!r} is not 1")
    return (1.0 - abs(zeta) ** 2) / abs(z - zeta) ** 2


def poisson_grid(r: float, base: CircleGrid | None = None, band: int | None = None) -> CircleGrid:
    """Smallest dyadic refinement of ``base`` resolving the kernel at radius ``r``."""
    n0 = base.n_points if base is not None else MIN_POISSON_POINTS
    need = max(COUPLING / (1.0 - r), n0, 4 * band + 4 if band is not None else 0)
    n = n0
    while n < need:
        n *= 2
    return CircleGrid(n)


def _check_zetas(zetas) -> np.ndarray:
    zetas = np.atleast_1d(np.asarray(zetas, dtype=np.complex128))
    if zetas.ndim != 1:
        raise InvalidArgumentError("zeta batch must be one-dimensional")
    if np.any(np.abs(zetas) >= 1.0):
        raise DomainError("Poisson integral needs |zeta| < 1")
    return zetas


def _poisson_quadrature(f: CircleFunction, r: float, grid):
    if isinstance(f, Sampled):
        return quadrature_for(f, grid)
    if grid is not None and not isinstance(grid, CircleGrid):
        raise InvalidArgumentError("the Poisson kernel needs a uniform base grid")
    return poisson_grid(r, grid, _band(f))


def _node_chunks(f: CircleFunction, quad):
    """Yield ``(nodes, weights, values)`` blocks covering the quadrature."""
    if isinstance(f, Sampled):
        for s in range(0, quad.n_points, _CHUNK):
            yield quad.nodes[s:s + _CHUNK], quad.weights[s:s + _CHUNK], f.values[s:s + _CHUNK]
        return
    if isinstance(quad, ArcQuadrature):
        yield quad.nodes, quad.weights, f.values_at(quad.nodes)
        return
    n = quad.n_points
    for s in range(0, n, _CHUNK):
        nodes = unit_roots(n, np.arange(s, min(s + _CHUNK, n)))
        yield nodes, np.full(nodes.size, 1.0 / n), f.values_at(nodes)


def _direct_sum(f, zetas, quad, columnwise: bool) -> np.ndarray:
    rows, cols = f.shape
    out = np.zeros((zetas.size, rows, cols), dtype=np.complex128)
    for nodes, weights, vals in _node_chunks(f, quad):
        if columnwise:
            # P_s[f](zeta) e_j = P[f(.) e_j](zeta), one vector function per column
            for j in range(cols):
                out[:, :, j] += _core.poisson_sum(zetas, nodes, weights, vals[:, :, j])
        else:
            flat = vals.reshape(vals.shape[0], rows * cols)
            out += _core.poisson_sum(zetas, nodes, weights, flat).reshape(zetas.size, rows, cols)
    return out


def poisson_integral_many(f: CircleFunction, zetas, grid=None) -> np.ndarray:
    """Entrywise Poisson integral at a batch of points, shape ``(n, rows, cols)``."""
    zetas = _check_zetas(zetas)
    quad = _poisson_quadrature(f, float(np.max(np.abs(zetas))), grid)
    return _direct_sum(f, zetas, quad, columnwise=False)


def strong_poisson_many(f: CircleFunction, zetas, grid=None) -> np.ndarray:
    """Columnwise (strong) Poisson integral at a batch of points."""
    zetas = _check_zetas(zetas)
    quad = _poisson_quadrature(f, float(np.max(np.abs(zetas))), grid)
    return _direct_sum(f, zetas, quad, columnwise=True)


def poisson_integral(f: CircleFunction, zeta: complex, grid=None) -> np.ndarray:
    return poisson_integral_many(f, [complex(zeta)], grid)[0]


def strong_poisson(f: CircleFunction, zeta: complex, grid=None) -> np.ndarray:
    return strong_poisson_many(f, [complex(zeta)], grid)[0]


def quadrature_used(f: CircleFunction, zeta: complex, grid=None):
    """The quadrature rule a Poisson integral at ``zeta`` would use."""
    return _poisson_quadrature(f, abs(complex(zeta)), grid)


# ------------------------------------------------------------ radial sections

def _polyphase(sampler, Q: int, n: int, r: float, shape) -> np.ndarray:
    """Poisson quadrature on the Q-grid evaluated at ``r`` times the n-grid.

    Splits the Q nodes into ``Q // n`` cosets of the n-grid; each coset is a
    length-n circular correlation done by FFT.
    """
    s = Q // n
    m = shape[0] * shape[1]
    acc = np.zeros((n, m), dtype=np.complex128)
    q = np.arange(n)
    block = max(1, _FFT_BLOCK // (n * max(m, 1)))
    for t0 in range(0, s, block):
        t = np.arange(t0, min(t0 + block, s))
        idx = q[None, :] * s + t[:, None]  # (b, n)
        g = sampler(idx.ravel()).reshape(t.size, n, m)
        # kernel depends on the circular distance only; folding keeps sin accurate near 2 pi
        half = np.pi * np.minimum(idx, Q - idx) / Q
        kern = (1.0 - r * r) / ((1.0 - r) ** 2 + 4.0 * r * np.sin(half) ** 2) / Q
        acc += np.einsum("bnm,bn->nm", np.fft.fft(g, axis=1), np.conj(np.fft.fft(kern, axis=1)))
    return np.fft.ifft(acc, axis=0).reshape(n, *shape)


def _poisson_radial(f: CircleFunction, r: float, grid, base) -> np.ndarray:
    points = r * grid.nodes
    if not isinstance(grid, CircleGrid):
        quad = _poisson_quadrature(f, r, base)
        return _direct_sum(f, points, quad, columnwise=True)
    n = grid.n_points
    if isinstance(f, Sampled):
        G = f.grid
        if isinstance(G, CircleGrid) and G.n_points % n == 0:
            return _polyphase(lambda idx: f.values[idx], G.n_points, n, r, f.shape)
        return _direct_sum(f, points, G, columnwise=True)
    n0 = n if base is None else n * math.ceil(base.n_points / n)
    Q = poisson_grid(r, CircleGrid(n0), _band(f)).n_points
    return _polyphase(lambda idx: f.values_at(unit_roots(Q, idx)), Q, n, r, f.shape)


def radial_section(h: DiskFunction, r: float, grid) -> Sampled:
    """``h_r(z) = h(r z)`` sampled on ``grid``."""
    r = float(r)
    if not 0.0 <= r < 1.0:
        raise DomainError(f"radius {r!r} is outside [0, 1)")
    if isinstance(h, PoissonExtension):
        return Sampled(grid, _poisson_radial(h.boundary, r, grid, h.grid))
    return Sampled(grid, h.values_at(r * grid.nodes))
