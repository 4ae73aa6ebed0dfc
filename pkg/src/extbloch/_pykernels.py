"""Pure numpy implementations of the hot kernels.

Used when the compiled module is unavailable or ``EXTBLOCH_PURE=1`` is set.
"""

import numpy as np


def kron(a, b):
    return np.kron(a, b)


def partial_trace(d, na, nb, trace_out_b):
    t = d.reshape(na, nb, na, nb)
    if trace_out_b:
        return np.einsum("ikjk->ij", t)
    return np.einsum("kikj->ij", t)


def trace_products(d, gens):
    # Tr(d @ g) = sum_ij d[i, j] g[j, i]
    return np.einsum("ij,gji->g", d, gens)


def count_outcomes(uniforms, cdf):
    # outcome k is the first index with u < cdf[k]; the last bin absorbs u >= cdf[-2]
    idx = np.searchsorted(cdf[:-1], uniforms, side="right")
    return np.bincount(idx, minlength=cdf.shape[0]).astype(np.int64)
