"""Kernel selection: the compiled extension when it imports, numpy otherwise."""
import numpy as np

from . import _fallback

try:
    from ._kernels import poisson_sum as _compiled_poisson_sum
except ImportError:  # extension not built
    _compiled_poisson_sum = None

BACKEND = "cython" if _compiled_poisson_sum is not None else "numpy"

python_poisson_sum = _fallback.poisson_sum
compiled_poisson_sum = _compiled_poisson_sum


def poisson_sum(zetas, nodes, weights, values):
    zetas = np.ascontiguousarray(zetas, dtype=np.complex128)
    nodes = np.ascontiguousarray(nodes, dtype=np.complex128)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    values = np.ascontiguousarray(values, dtype=np.complex128)
    if _compiled_poisson_sum is not None:
        return _compiled_poisson_sum(zetas, nodes, weights, values)
    return _fallback.poisson_sum(zetas, nodes, weights, values)
