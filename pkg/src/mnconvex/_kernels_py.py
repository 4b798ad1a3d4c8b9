"""Pure-Python fallback for the compiled kernels in ``_kernels.pyx``.

Same signatures and the same floating-point operation order, so results
agree with the compiled module to the last bit on IEEE hardware.
"""
from __future__ import annotations

import math

import numpy as np

from mnconvex.means import mean_scalar

_MASK = 0xFFFF_FFFF_FFFF_FFFF
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def batch_mean(code, param, x, y, out):
    if not 0 <= code <= 7:
        raise ValueError(f"bad mean code {code}")
    for i in range(len(x)):
        out[i] = mean_scalar(code, param, float(x[i]), float(y[i]))


def uniforms(seed, start, out):
    n = len(out)
    counters = np.arange(n, dtype=np.uint64) + np.uint64((start + 1) & _MASK)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & _MASK) + counters * _GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        z = z ^ (z >> np.uint64(31))
    out[:] = (z >> np.uint64(11)).astype(np.float64) * (1.0 / 9007199254740992.0)


def monotone_scan(v, tol):
    v = np.asarray(v, dtype=np.float64).tolist()
    n = len(v)
    min_up = min_down = math.inf
    up_i = up_j = down_i = down_j = -1
    if n == 0:
        return (min_up, -1, -1, min_down, -1, -1)
    imax = imin = 0
    for j in range(1, n):
        vj = v[j]
        m = (vj - v[imax]) / (1.0 + abs(vj) + abs(v[imax]))
        if m < min_up:
            min_up = m
        if m < -tol and up_j < 0:
            up_i, up_j = imax, j
        m = (v[imin] - vj) / (1.0 + abs(vj) + abs(v[imin]))
        if m < min_down:
            min_down = m
        if m < -tol and down_j < 0:
            down_i, down_j = imin, j
        if vj > v[imax]:
            imax = j
        if vj < v[imin]:
            imin = j
    return (float(min_up), up_i, up_j, float(min_down), down_i, down_j)
