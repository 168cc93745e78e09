import numpy as np


def op_norms(stack: np.ndarray) -> np.ndarray:
    """Largest singular value of every matrix in a ``(n, rows, cols)`` stack."""
    stack = np.asarray(stack)
    if stack.shape[0] == 0:
        return np.zeros(0)
    # row and column vectors: the Euclidean norm is the spectral norm
    if stack.shape[1] == 1 or stack.shape[2] == 1:
        return np.sqrt(np.sum(np.abs(stack) ** 2, axis=(1, 2)))
    return np.linalg.svd(stack, compute_uv=False)[:, 0]
