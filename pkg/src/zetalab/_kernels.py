"""Compiled inner loops (numba)."""

import numpy as np
from numba import njit


@njit(cache=True)
def dirichlet_main_sums(t, nterms, logn, amp):
    """sum_{n=1}^{nterms[j]} amp[n-1] * n^{-i t[j]} for every j.

    Summation runs in increasing n for every point, independent of how the
    points are batched.
    """
    out = np.empty(t.shape[0], dtype=np.complex128)
    for j in range(t.shape[0]):
        tj = t[j]
        re = 0.0
        im = 0.0
        for i in range(nterms[j]):
            ph = tj * logn[i]
            a = amp[i]
            re += a * np.cos(ph)
            im -= a * np.sin(ph)
        out[j] = re + 1j * im
    return out


@njit(cache=True)
def convolve_with_ones(prev, out):
    """out[m] = sum_{d | m} prev[d] for 1 <= m < len(prev); index 0 unused."""
    n = prev.shape[0] - 1
    for d in range(1, n + 1):
        v = prev[d]
        if v == 0:
            continue
        for m in range(d, n + 1, d):
            out[m] += v
