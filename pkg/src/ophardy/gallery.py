"""Exact constructors for the model functions, the Banach transpose, and the
separability witness.

Truncations: the diagonal disk function acts on modes ``1..d``; the rotation
symbol and the evaluation functional act on Fourier modes ``0..d-1``; the arc
multiplier acts on modes ``0..d``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._linalg import op_norms
from .errors import InvalidArgumentError
from .grid import (
    ArcQuadrature,
    CircleFunction,
    FourierPolynomial,
    RuleBased,
    Sampled,
    TaylorPolynomial,
    sample,
)

NAMES = (
    "diagonal_disk",
    "diagonal_boundary",
    "rotation_symbol",
    "evaluation_functional",
    "arc_multiplier",
    "unbounded_row",
    "matrix_polynomial",
)


def _check_dim(d) -> int:
    if isinstance(d, bool) or int(d) != d or d < 1:
        raise InvalidArgumentError(f"dimension must be a positive integer, got {d!r}")
    return int(d)


def _diag_powers(z: np.ndarray, powers: np.ndarray) -> np.ndarray:
    out = np.zeros((z.size, powers.size, powers.size), dtype=np.complex128)
    idx = np.arange(powers.size)
    out[:, idx, idx] = z[:, None] ** powers[None, :]
    return out


def make_diagonal_disk(d: int) -> TaylorPolynomial:
    """``h(zeta) = diag(zeta, zeta**2, ..., zeta**d)``."""
    d = _check_dim(d)
    coeffs = [np.zeros((d, d), dtype=np.complex128)]
    for n in range(1, d + 1):
        c = np.zeros((d, d), dtype=np.complex128)
        c[n - 1, n - 1] = 1.0
        coeffs.append(c)
    return TaylorPolynomial(coeffs, label=f"diagonal_disk(d={d})")


def make_diagonal_boundary(d: int) -> RuleBased:
    """Radial boundary of :func:`make_diagonal_disk`: ``diag(z, ..., z**d)``."""
    d = _check_dim(d)
    powers = np.arange(1, d + 1)
    return RuleBased("diagonal_boundary", {"dim": d}, (d, d), lambda z: _diag_powers(z, powers), band=d)


def make_rotation_symbol(d: int) -> RuleBased:
    """``f(z) x(s) = x(z s)`` on polynomials of degree < d: ``diag(1, z, ..., z**(d-1))``."""
    d = _check_dim(d)
    powers = np.arange(d)
    return RuleBased("rotation_symbol", {"dim": d}, (d, d), lambda z: _diag_powers(z, powers), band=d - 1)


def make_evaluation_functional(d: int) -> TaylorPolynomial:
    """Point evaluation of the Poisson integral on polynomials of degree < d.

    With the Hilbert pairing this is the row ``(1, zeta, ..., zeta**(d-1))``.
    Its operator norm is ``sqrt(sum_{n<d} |zeta|**(2n))``, which tends to
    ``sqrt(d)`` at the boundary while every column stays bounded by 1 in H^2.
    """
    d = _check_dim(d)
    coeffs = []
    for n in range(d):
        c = np.zeros((1, d), dtype=np.complex128)
        c[0, n] = 1.0
        coeffs.append(c)
    return TaylorPolynomial(coeffs, label=f"evaluation_functional(d={d})")


# arc classification slack for angles landing on an arc endpoint
_SNAP = 1e-9


def arc_index(z: np.ndarray, d: int) -> np.ndarray:
    """Index N of the arc containing each point, capped at ``d``.

    Arc 0 is the open upper half circle (plus ``z = 1`` by convention); arc N
    is ``(2 - 1/N) pi <= theta < (2 - 1/(N+1)) pi``; arc ``d`` absorbs the whole
    tail ``theta >= (2 - 1/d) pi``. Endpoints follow the half-open convention.
    """
    theta = np.mod(np.angle(z), 2 * np.pi)
    t = theta / np.pi
    out = np.zeros(z.shape, dtype=np.int64)
    lower = t >= 1.0 - _SNAP
    upper = lower & (t < 2.0)
    with np.errstate(divide="ignore"):
        u = 1.0 / (2.0 - t[upper])
    out[upper] = np.clip(np.floor(u + _SNAP), 1, d).astype(np.int64)
    return out


def _arc_quadrature(d: int) -> ArcQuadrature:
    lo = [0.0] + [(2.0 - 1.0 / n) * math.pi for n in range(1, d + 1)]
    hi = [math.pi] + [(2.0 - 1.0 / (n + 1)) * math.pi for n in range(1, d)] + [2 * math.pi]
    weights = [0.5] + [1.0 / (2 * n * (n + 1)) for n in range(1, d)] + [1.0 / (2 * d)]
    mids = np.array([(a + b) / 2 for a, b in zip(lo, hi)])
    return ArcQuadrature(np.exp(1j * mids), np.array(weights), tuple(range(d + 1)))


def make_arc_multiplier(d: int) -> RuleBased:
    """Diagonal multiplier on modes ``0..d``: entry n is ``sqrt(2n)`` on the tail arcs
    ``theta >= (2 - 1/n) pi`` and 0 elsewhere; entry 0 is always 1.

    ``exact_quadrature()`` integrates it exactly (one node per arc).
    """
    d = _check_dim(d)
    scale = np.sqrt(2.0 * np.arange(d + 1))
    scale[0] = 1.0
    modes = np.arange(d + 1)

    def rule(z):
        N = arc_index(z, d)
        out = np.zeros((z.size, d + 1, d + 1), dtype=np.complex128)
        active = modes[None, :] <= N[:, None]
        out[:, modes, modes] = np.where(active, scale[None, :], 0.0)
        return out

    return RuleBased("arc_multiplier", {"dim": d}, (d + 1, d + 1), rule, arcs=lambda: _arc_quadrature(d))


def make_unbounded_row(d: int) -> RuleBased:
    """Row functional ``x -> sum_{n=1..d} x(n) z**n``."""
    d = _check_dim(d)
    powers = np.arange(1, d + 1)
    return RuleBased("unbounded_row", {"dim": d}, (1, d), lambda z: (z[:, None] ** powers)[:, None, :], band=d)


def make_matrix_polynomial(
    coeffs: Optional[dict] = None,
    dim: Optional[int] = None,
    degree: Optional[int] = None,
    seed: int = 0,
    analytic: bool = True,
) -> FourierPolynomial:
    """Explicit coefficients, or a seeded random ``dim x dim`` polynomial of ``degree``.

    Random coefficients are complex Gaussian on modes ``0..degree`` (analytic)
    or ``-degree..degree``.
    """
    if coeffs is not None:
        return FourierPolynomial({int(n): a for n, a in coeffs.items()})
    if dim is None or degree is None:
        raise InvalidArgumentError("random matrix polynomial needs dim and degree")
    d = _check_dim(dim)
    if int(degree) != degree or degree < 0:
        raise InvalidArgumentError(f"degree must be a nonnegative integer, got {degree!r}")
    rng = np.random.default_rng(seed)
    lo = 0 if analytic else -int(degree)
    out = {}
    for n in range(lo, int(degree) + 1):
        out[n] = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2 * d)
    return FourierPolynomial(out)


def banach_transpose(f):
    """Pointwise transpose without conjugation (the dual-pairing adjoint).

    Keeps analyticity: the n-th coefficient of the result is the transpose of
    the n-th coefficient of ``f``.
    """
    if isinstance(f, FourierPolynomial):
        return FourierPolynomial({n: a.T for n, a in f.coeffs.items()})
    if isinstance(f, Sampled):
        return Sampled(f.grid, np.swapaxes(f.values, 1, 2))
    if isinstance(f, TaylorPolynomial):
        return TaylorPolynomial([a.T for a in f.coeffs], f.label and f.label + "^T")
    if isinstance(f, RuleBased):
        rule = f._rule
        params = {**f.params, "transposed": not f.params.get("transposed", False)}
        return RuleBased(
            f.name, params, f.shape[::-1], lambda z: np.swapaxes(rule(z), 1, 2), f._arcs, f.band
        )
    raise InvalidArgumentError(f"cannot transpose {f!r}")


def separability_witness(f: CircleFunction, eps: float, grid=None) -> int:
    """Size of the greedy eps-net of the sampled values, in node order.

    A value joins the net when its operator-norm distance to every member is
    greater than ``eps``.
    """
    if not eps > 0:
        raise InvalidArgumentError("eps must be positive")
    if not isinstance(f, Sampled):
        if grid is None:
            raise InvalidArgumentError("separability witness needs sampled values or a grid")
        f = sample(f, grid)
    net = []
    for v in f.values:
        if not net or np.min(op_norms(np.stack(net) - v)) > eps:
            net.append(v)
    return len(net)


def separating_mode(z1: complex, z2: complex) -> int:
    """Smallest ``n >= 1`` with the angle ``n (theta2 - theta1)`` in ``(pi/2, pi]`` modulo 2 pi.

    For that mode ``|1 - (z2 conj(z1))**n| > sqrt(2)``.
    """
    w = complex(z2) * complex(z1).conjugate()
    delta = math.atan2(w.imag, w.real)
    if abs(delta) < 1e-15:
        raise InvalidArgumentError("points coincide")
    n = 1
    while True:
        ang = abs(math.remainder(n * delta, 2 * math.pi))
        if math.pi / 2 < ang <= math.pi:
            return n
        n += 1


@dataclass
class GallerySpec:
    name: str
    dim: Optional[int] = None
    params: dict = field(default_factory=dict)


def build(spec: GallerySpec):
    name = spec.name
    if name == "matrix_polynomial":
        return make_matrix_polynomial(
            coeffs=spec.params.get("coeffs"),
            dim=spec.dim,
            degree=spec.params.get("degree"),
            seed=spec.params.get("seed", 0),
            analytic=spec.params.get("analytic", True),
        )
    makers = {
        "diagonal_disk": make_diagonal_disk,
        "diagonal_boundary": make_diagonal_boundary,
        "rotation_symbol": make_rotation_symbol,
        "evaluation_functional": make_evaluation_functional,
        "arc_multiplier": make_arc_multiplier,
        "unbounded_row": make_unbounded_row,
    }
    if name not in makers:
        raise InvalidArgumentError(f"unknown gallery function {name!r}")
    return makers[name](spec.dim)
