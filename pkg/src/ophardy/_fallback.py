"""Pure numpy versions of the compiled kernels."""
import numpy as np

# bound on the temporary kernel block, in entries
_BLOCK = 1 << 22


def poisson_sum(zetas, nodes, weights, values):
    """``out[a, k] = sum_j weights[j] * P(zetas[a], nodes[j]) * values[j, k]``."""
    zetas = np.asarray(zetas, dtype=np.complex128)
    nodes = np.asarray(nodes, dtype=np.complex128)
    if values.shape[0] != nodes.size or weights.shape[0] != nodes.size:
        raise ValueError("nodes, weights and values disagree in length")
    out = np.empty((zetas.size, values.shape[1]), dtype=np.complex128)
    step = max(1, _BLOCK // max(nodes.size, 1))
    for start in range(0, zetas.size, step):
        zc = zetas[start:start + step]
        num = 1.0 - np.abs(zc) ** 2
        kern = weights[None, :] * num[:, None] / np.abs(nodes[None, :] - zc[:, None]) ** 2
        out[start:start + step] = kern @ values
    return out
