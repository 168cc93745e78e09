"""Discrete circle, radius ladder and the operator-valued function families.

Matrix values are plain 2-D ``complex128`` arrays; a function evaluated at a
batch of points returns a stacked ``(n, rows, cols)`` array.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from .errors import (
    DomainError,
    InvalidArgumentError,
    InvalidValueError,
    NotRepresentableError,
    ValidationError,
)

#: tolerance for "lies on the unit circle" and for node identification
Z_TOL = 1e-12


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a finite 2-D complex array."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise InvalidArgumentError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidValueError("matrix has NaN or infinite entries")
    return m


def unit_roots(n: int, k=None) -> np.ndarray:
    """``exp(2 pi i k / n)`` for integer ``k`` (default ``0..n-1``).

    Exact at multiples of a quarter turn.
    """
    k = np.arange(n) if k is None else np.mod(np.asarray(k, dtype=np.int64), n)
    quadrant, rem = np.divmod(4 * k, n)
    # reflect the upper half of each quadrant so small components keep full relative precision
    flip = 2 * rem > n
    theta = 0.5 * np.pi * np.where(flip, n - rem, rem) / n
    c, s = np.cos(theta), np.sin(theta)
    base = np.where(flip, s + 1j * c, c + 1j * s)
    return base * np.array([1, 1j, -1, -1j])[quadrant]


@dataclass(frozen=True)
class CircleGrid:
    """Uniform quadrature on the circle: nodes ``exp(2 pi i j / n)``, weights ``1/n``."""

    n_points: int

    def __post_init__(self):
        if isinstance(self.n_points, bool) or int(self.n_points) != self.n_points or self.n_points < 1:
            raise InvalidArgumentError(f"n_points must be a positive integer, got {self.n_points!r}")
        object.__setattr__(self, "n_points", int(self.n_points))

    @cached_property
    def nodes(self) -> np.ndarray:
        return unit_roots(self.n_points)

    @cached_property
    def weights(self) -> np.ndarray:
        return np.full(self.n_points, 1.0 / self.n_points)

    @property
    def uniform(self) -> bool:
        return True

    def index_of(self, z: complex) -> int:
        ang = math.atan2(z.imag, z.real)
        j = int(round(ang * self.n_points / (2 * math.pi))) % self.n_points
        if abs(z - self.nodes[j]) > Z_TOL:
            raise NotRepresentableError(f"{z!r} is not a node of the {self.n_points}-point grid")
        return j

    def refine(self, factor: int) -> "CircleGrid":
        return CircleGrid(self.n_points * factor)


@dataclass(frozen=True, eq=False)
class ArcQuadrature:
    """Exact integration rule for functions constant on finitely many arcs.

    One representative node per arc, weighted by the arc's normalized measure.
    """

    nodes: np.ndarray
    weights: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=np.complex128)
        weights = np.asarray(self.weights, dtype=np.float64)
        if nodes.shape != weights.shape or nodes.ndim != 1 or nodes.size == 0:
            raise InvalidArgumentError("arc nodes and weights must be matching 1-D arrays")
        if np.any(weights < 0) or abs(math.fsum(weights) - 1.0) > 1e-12:
            raise InvalidArgumentError("arc weights must be nonnegative and sum to 1")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def n_points(self) -> int:
        return self.nodes.size

    @property
    def uniform(self) -> bool:
        return False

    def index_of(self, z: complex) -> int:
        j = int(np.argmin(np.abs(self.nodes - z)))
        if abs(z - self.nodes[j]) > Z_TOL:
            raise NotRepresentableError(f"{z!r} is not an arc representative")
        return j


@dataclass(frozen=True)
class RadiusLadder:
    """Dyadic radii ``1 - 2**-k`` for ``k = 1..levels``."""

    levels: int

    def __post_init__(self):
        if int(self.levels) != self.levels or self.levels < 1:
            raise InvalidArgumentError(f"levels must be a positive integer, got {self.levels!r}")

    @property
    def radii(self) -> np.ndarray:
        return 1.0 - 2.0 ** -np.arange(1, self.levels + 1, dtype=np.float64)

    @property
    def gaps(self) -> np.ndarray:
        """``1 - r_k``, exact powers of two."""
        return 2.0 ** -np.arange(1, self.levels + 1, dtype=np.float64)


def make_grid(n_points: int) -> CircleGrid:
    return CircleGrid(n_points)


def _check_on_circle(z: np.ndarray) -> None:
    if np.any(np.abs(np.abs(z) - 1.0) > Z_TOL):
        raise DomainError("evaluation point is not on the unit circle")


# ---------------------------------------------------------------- circle

class CircleFunction:
    """Operator-valued function on the unit circle."""

    shape: tuple

    def values_at(self, z) -> np.ndarray:
        """Values at a 1-D array of unit-modulus points, shape ``(n, rows, cols)``."""
        raise NotImplementedError

    def scaled(self, c: complex) -> "CircleFunction":
        raise NotImplementedError

    @property
    def rows(self) -> int:
        return self.shape[0]

    @property
    def cols(self) -> int:
        return self.shape[1]


def _stack_same_shape(mats: Sequence, what: str) -> np.ndarray:
    arrs = [as_matrix(m) for m in mats]
    shapes = {a.shape for a in arrs}
    if len(shapes) != 1:
        raise ValidationError(f"{what} have mismatched shapes {sorted(shapes)}")
    return np.stack(arrs)


class FourierPolynomial(CircleFunction):
    """``f(z) = sum_n A_n z**n`` over finitely many integer modes."""

    def __init__(self, coeffs: Mapping[int, object]):
        if not coeffs:
            raise InvalidArgumentError("a Fourier polynomial needs at least one coefficient")
        modes = sorted(int(n) for n in coeffs)
        stack = _stack_same_shape([coeffs[n] for n in sorted(coeffs, key=int)], "coefficients")
        self.modes = np.array(modes, dtype=np.int64)
        self._stack = stack
        self._stack.setflags(write=False)
        self.shape = stack.shape[1:]

    @property
    def coeffs(self) -> dict:
        return {int(n): self._stack[i] for i, n in enumerate(self.modes)}

    @property
    def degree(self) -> int:
        return int(np.max(np.abs(self.modes)))

    def coefficient(self, n: int) -> np.ndarray:
        hit = np.nonzero(self.modes == n)[0]
        if hit.size:
            return self._stack[hit[0]].copy()
        return np.zeros(self.shape, dtype=np.complex128)

    def values_at(self, z) -> np.ndarray:
        z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
        _check_on_circle(z)
        # negative powers through the conjugate: exact inverse on the circle
        pos = np.where(self.modes >= 0, self.modes, 0)
        neg = np.where(self.modes < 0, -self.modes, 0)
        powers = z[:, None] ** pos[None, :] * np.conj(z)[:, None] ** neg[None, :]
        return np.tensordot(powers, self._stack, axes=(1, 0))

    def scaled(self, c):
        return FourierPolynomial({n: c * a for n, a in self.coeffs.items()})

    def __add__(self, other):
        if not isinstance(other, FourierPolynomial):
            return NotImplemented
        if other.shape != self.shape:
            raise ValidationError("cannot add Fourier polynomials of different shapes")
        out = {n: a.copy() for n, a in self.coeffs.items()}
        for n, a in other.coeffs.items():
            out[n] = out[n] + a if n in out else a.copy()
        return FourierPolynomial(out)

    def __repr__(self):
        return f"FourierPolynomial(shape={self.shape}, modes={self.modes.tolist()})"


class Sampled(CircleFunction):
    """Values stored at the nodes of a quadrature rule; no interpolation."""

    def __init__(self, grid, values):
        values = np.array(values, dtype=np.complex128)
        if values.ndim != 3 or values.shape[0] != grid.n_points:
            raise ValidationError(
                f"need one matrix per node: grid has {grid.n_points} nodes, values shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise InvalidValueError("sampled values contain NaN or infinite entries")
        values.setflags(write=False)
        self.grid = grid
        self.values = values
        self.shape = values.shape[1:]

    def values_at(self, z) -> np.ndarray:
        z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
        _check_on_circle(z)
        idx = [self.grid.index_of(complex(w)) for w in z]
        return self.values[idx]

    def scaled(self, c):
        return Sampled(self.grid, c * self.values)

    def __sub__(self, other):
        if not isinstance(other, Sampled) or other.grid != self.grid:
            return NotImplemented
        return Sampled(self.grid, self.values - other.values)

    def __repr__(self):
        return f"Sampled(n_points={self.grid.n_points}, shape={self.shape})"


class RuleBased(CircleFunction):
    """A function given by an exact vectorized rule.

    ``arcs`` returns an :class:`ArcQuadrature` that integrates the rule exactly
    when the rule is piecewise constant. ``band`` is the largest ``|n|`` with a
    nonzero Fourier coefficient for trigonometric-polynomial rules.
    """

    def __init__(
        self,
        name: str,
        params: Mapping,
        shape: tuple,
        rule: Callable[[np.ndarray], np.ndarray],
        arcs: Optional[Callable[[], ArcQuadrature]] = None,
        band: Optional[int] = None,
    ):
        self.name = name
        self.params = dict(params)
        self.shape = tuple(shape)
        self._rule = rule
        self._arcs = arcs
        self.band = band

    def values_at(self, z) -> np.ndarray:
        z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
        _check_on_circle(z)
        return np.asarray(self._rule(z), dtype=np.complex128)

    def exact_quadrature(self) -> Optional[ArcQuadrature]:
        return self._arcs() if self._arcs is not None else None

    def scaled(self, c):
        rule = self._rule
        return RuleBased(
            self.name, {**self.params, "scale": c}, self.shape, lambda z: c * rule(z), self._arcs, self.band
        )

    def __repr__(self):
        return f"RuleBased({self.name!r}, {self.params})"


def eval_circle(f: CircleFunction, z: complex) -> np.ndarray:
    z = complex(z)
    if abs(abs(z) - 1.0) > Z_TOL:
        raise DomainError(f"|z| = {abs(z)!r} is not 1")
    return f.values_at(np.array([z]))[0]


def sample(f: CircleFunction, grid) -> Sampled:
    if isinstance(f, Sampled) and f.grid == grid:
        return f
    return Sampled(grid, f.values_at(grid.nodes))


# ------------------------------------------------------------------ disk

class DiskFunction:
    """Operator-valued holomorphic (or harmonic) function on the open disk."""

    shape: tuple

    def values_at(self, zeta) -> np.ndarray:
        raise NotImplementedError


def _check_in_disk(zeta: np.ndarray) -> None:
    if np.any(np.abs(zeta) >= 1.0):
        raise DomainError("point is not in the open unit disk")


class TaylorPolynomial(DiskFunction):
    """``h(zeta) = sum_{n>=0} C_n zeta**n``."""

    def __init__(self, coeffs: Sequence, label: Optional[str] = None):
        if len(coeffs) == 0:
            raise InvalidArgumentError("a Taylor polynomial needs at least one coefficient")
        self._stack = _stack_same_shape(list(coeffs), "Taylor coefficients")
        self._stack.setflags(write=False)
        self.shape = self._stack.shape[1:]
        self.label = label

    @property
    def coeffs(self) -> list:
        return list(self._stack)

    @property
    def degree(self) -> int:
        return self._stack.shape[0] - 1

    def values_at(self, zeta) -> np.ndarray:
        zeta = np.atleast_1d(np.asarray(zeta, dtype=np.complex128))
        _check_in_disk(zeta)
        powers = zeta[:, None] ** np.arange(self._stack.shape[0])[None, :]
        return np.tensordot(powers, self._stack, axes=(1, 0))

    def boundary_polynomial(self) -> FourierPolynomial:
        return FourierPolynomial(dict(enumerate(self._stack)))

    def scaled(self, c):
        return TaylorPolynomial([c * a for a in self._stack], self.label)

    def __repr__(self):
        return f"TaylorPolynomial(label={self.label!r}, degree={self.degree}, shape={self.shape})"


@dataclass(frozen=True, eq=False)
class PoissonExtension(DiskFunction):
    """Strong Poisson integral of a circle function, evaluated lazily.

    ``grid`` is the base quadrature for non-sampled boundaries; it is refined
    automatically as ``|zeta|`` approaches 1.
    """

    boundary: CircleFunction
    grid: Optional[CircleGrid] = field(default=None)

    @property
    def shape(self):
        return self.boundary.shape

    def values_at(self, zeta) -> np.ndarray:
        from .transforms import strong_poisson_many

        zeta = np.atleast_1d(np.asarray(zeta, dtype=np.complex128))
        _check_in_disk(zeta)
        return strong_poisson_many(self.boundary, zeta, self.grid)


def eval_disk(h: DiskFunction, zeta: complex) -> np.ndarray:
    zeta = complex(zeta)
    if abs(zeta) >= 1.0:
        raise DomainError(f"|zeta| = {abs(zeta)!r} is not below 1")
    return h.values_at(np.array([zeta]))[0]
