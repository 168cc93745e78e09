"""Radial boundary functions and Poisson convergence diagnostics."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._linalg import op_norms
from .errors import ConvergenceError, InvalidArgumentError
from .grid import CircleFunction, DiskFunction, PoissonExtension, RadiusLadder, Sampled, sample
from .norms import ScalarSampled, _lp, parse_exponent
from .transforms import radial_section


def richardson(values: np.ndarray, ratio: float = 2.0):
    """Extrapolate ``values[k]`` taken at steps ``t0 / ratio**k`` to step zero.

    Works along axis 0. Returns the highest-order estimate and the last
    increment along the diagonal of the tableau (zero for a single level).
    """
    cur = np.asarray(values)
    diag = [cur[-1]]
    for j in range(1, cur.shape[0]):
        factor = ratio ** j
        cur = cur[1:] + (cur[1:] - cur[:-1]) / (factor - 1.0)
        diag.append(cur[-1])
    if len(diag) == 1:
        return diag[0], np.zeros_like(diag[0])
    return diag[-1], diag[-1] - diag[-2]


@dataclass
class BoundaryResult:
    boundary: Sampled
    per_node_residual: ScalarSampled
    ladder_used: RadiusLadder
    basis_dimension: int
    tol: float
    #: max of N(h_r) over the top three rungs, a heuristic stand-in for liminf
    norm_proxy: ScalarSampled

    @property
    def failed_nodes(self) -> np.ndarray:
        return np.nonzero(self.per_node_residual.values > self.tol)[0]

    @property
    def converged(self) -> bool:
        return self.failed_nodes.size == 0


def radial_boundary(
    h: DiskFunction, grid, ladder: RadiusLadder, tol: float = 1e-6, strict: bool = False
) -> BoundaryResult:
    """Radial limits ``lim_{r->1} h(r z) e_j`` at each node, by Richardson in ``1 - r``.

    Nodes whose last extrapolation increment exceeds ``tol`` are reported in
    the result; with ``strict=True`` they raise :class:`ConvergenceError`.
    """
    if ladder.levels < 3:
        raise InvalidArgumentError("radial extrapolation needs at least 3 ladder levels")
    if not tol > 0:
        raise InvalidArgumentError("tol must be positive")
    stack = np.stack([radial_section(h, r, grid).values for r in ladder.radii])
    limit, increment = richardson(stack)
    residual = op_norms(increment)
    proxy = np.max(np.stack([op_norms(v) for v in stack[-3:]]), axis=0)
    result = BoundaryResult(
        boundary=Sampled(grid, limit),
        per_node_residual=ScalarSampled(grid, residual),
        ladder_used=ladder,
        basis_dimension=h.shape[1],
        tol=float(tol),
        norm_proxy=ScalarSampled(grid, proxy),
    )
    if strict and not result.converged:
        worst = int(np.argmax(residual))
        raise ConvergenceError(
            f"{result.failed_nodes.size} node(s) above tol={tol:g}; worst node {worst} residual {residual[worst]:.3e}"
        )
    return result


def poisson_convergence_report(f: CircleFunction, p, ladder: RadiusLadder, grid) -> list:
    """Rows ``{r, lp_deviation, max_deviation}`` comparing ``(P[f])_r`` with ``f``.

    ``lp_deviation`` is ``None`` for ``p = inf``.
    """
    p = parse_exponent(p)
    target = sample(f, grid).values
    ext = PoissonExtension(f)
    rows = []
    for r in ladder.radii:
        dev = op_norms(radial_section(ext, r, grid).values - target)
        rows.append(
            {
                "r": float(r),
                "lp_deviation": None if math.isinf(p) else _lp(dev, grid.weights, p),
                "max_deviation": float(np.max(dev)),
            }
        )
    return rows
