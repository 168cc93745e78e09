"""Pointwise operator norms and the L^p / H^p norm family.

Exponents are floats with ``math.inf`` standing for the sup-norm; see
:func:`parse_exponent` for the string forms accepted on the command line.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._linalg import op_norms
from .errors import InvalidArgumentError, InvalidValueError
from .grid import CircleFunction, DiskFunction, RadiusLadder, as_matrix, sample
from .transforms import quadrature_for, radial_section

INF = math.inf


def parse_exponent(p) -> float:
    if isinstance(p, str):
        text = p.strip().lower()
        p = INF if text in ("inf", "infinity", "oo") else float(text)
    p = float(p)
    if math.isnan(p) or p < 1.0:
        raise InvalidArgumentError(f"exponent must be >= 1 or inf, got {p!r}")
    return p


def format_exponent(p: float) -> str:
    if math.isinf(p):
        return "inf"
    return str(int(p)) if float(p).is_integer() else repr(float(p))


@dataclass(frozen=True, eq=False)
class ScalarSampled:
    """Nonnegative scalar function stored at quadrature nodes."""

    grid: object
    values: np.ndarray


@dataclass
class NormProfile:
    p: float
    per_radius: list = field(default_factory=list)
    final: float = 0.0

    def radii(self) -> np.ndarray:
        return np.array([r for r, _ in self.per_radius])

    def values(self) -> np.ndarray:
        return np.array([v for _, v in self.per_radius])


def op_norm(A) -> float:
    """Spectral norm (largest singular value)."""
    m = as_matrix(A)
    return float(np.linalg.norm(m, 2))


def pointwise_norm(f: CircleFunction, grid=None) -> ScalarSampled:
    quad = quadrature_for(f, grid)
    return ScalarSampled(quad, op_norms(sample(f, quad).values))


def _lp(values: np.ndarray, weights: np.ndarray, p: float) -> float:
    if values.size == 0:
        return 0.0
    if math.isinf(p):
        return float(np.max(values))
    top = float(np.max(values))
    if top == 0.0:
        return 0.0
    # scaled to avoid overflow for large p
    return top * float(np.sum(weights * (values / top) ** p)) ** (1.0 / p)


def lp_scalar_norm(g: ScalarSampled, p) -> float:
    p = parse_exponent(p)
    vals = np.asarray(g.values, dtype=np.float64)
    if np.any(vals < 0) or not np.all(np.isfinite(vals)):
        raise InvalidValueError("scalar samples must be finite and nonnegative")
    return _lp(vals, g.grid.weights, p)


def lp_sot_norm(f: CircleFunction, p, grid=None) -> float:
    """``|| N(f) ||_p`` on the chosen quadrature."""
    return lp_scalar_norm(pointwise_norm(f, grid), p)


def hp_disk_norm(h: DiskFunction, p, ladder: RadiusLadder, grid) -> NormProfile:
    """``|| N(h_r) ||_p`` along the ladder; ``final`` is the top rung."""
    p = parse_exponent(p)
    rows = []
    for r in ladder.radii:
        rows.append((float(r), lp_sot_norm(radial_section(h, r, grid), p)))
    return NormProfile(p, rows, rows[-1][1])


def gram(f: CircleFunction, grid=None) -> np.ndarray:
    """``sum_j w_j f(z_j)^H f(z_j)``, the quadratic form of ``x -> ||f(.)x||_2^2``."""
    quad = quadrature_for(f, grid)
    vals = sample(f, quad).values
    return np.einsum("j,jri,jrk->ik", quad.weights, np.conj(vals), vals)


def l2_strong_norm(f: CircleFunction, grid=None) -> float:
    """``sup_{|x|<=1} ||f(.)x||_{L^2}`` via the top Gram eigenvalue."""
    lam = np.linalg.eigvalsh(gram(f, grid))[-1]
    return math.sqrt(max(float(lam), 0.0))


def strong_disk_norm(h: DiskFunction, ladder: RadiusLadder, grid) -> NormProfile:
    """Strong H^2 disk norm profile: ``l2_strong_norm(h_r)`` per rung, ``final`` = max."""
    rows = [(float(r), l2_strong_norm(radial_section(h, r, grid))) for r in ladder.radii]
    return NormProfile(2.0, rows, max(v for _, v in rows))


def probe_vectors(cols: int, n_probe: int, seed: int) -> np.ndarray:
    """Canonical basis followed by ``n_probe`` seeded random unit vectors, as columns."""
    if n_probe < 1:
        raise InvalidArgumentError("n_probe must be positive")
    rng = np.random.default_rng(seed)
    rand = rng.standard_normal((cols, n_probe)) + 1j * rng.standard_normal((cols, n_probe))
    rand /= np.linalg.norm(rand, axis=0)
    return np.hstack([np.eye(cols, dtype=np.complex128), rand])


def lp_strong_norm_estimate(
    f: CircleFunction, p, grid=None, n_probe: int = 16, seed: int = 0, probes=None
) -> float:
    """Lower bound for ``sup_{|x|<=1} ||f(.)x||_{L^p}`` over finitely many probes.

    Exact when the supremum is attained at one of the probe vectors. Extra
    probes (columns of ``probes``) are tried in addition to the default set.
    """
    p = parse_exponent(p)
    quad = quadrature_for(f, grid)
    vals = sample(f, quad).values
    X = probe_vectors(f.cols, n_probe, seed)
    if probes is not None:
        extra = np.asarray(probes, dtype=np.complex128).reshape(f.cols, -1)
        X = np.hstack([X, extra / np.linalg.norm(extra, axis=0)])
    images = np.linalg.norm(vals @ X, axis=1)  # (nodes, probes)
    return max(_lp(images[:, k], quad.weights, p) for k in range(X.shape[1]))
