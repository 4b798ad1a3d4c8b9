"""Reproducible sampling of abscissae and pairs.

Random draws come from a counter-based generator: uniform number ``i`` of
stream ``seed`` is a pure function of ``(seed, i)`` (SplitMix64 finaliser),
so any subset of pairs can be regenerated independently and in any order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from mnconvex._backend import kernels

__all__ = ["IntervalSpec", "uniforms", "grid", "random_pairs", "structured_pairs", "sample_pairs"]

_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class IntervalSpec:
    lo: float
    hi: float
    samples: int = 10_000
    sampling: str = "log-uniform"
    seed: int = 0

    def __post_init__(self):
        if not (0.0 < self.lo < self.hi < math.inf):
            raise ValueError(f"need 0 < lo < hi < inf, got [{self.lo}, {self.hi}]")
        if self.samples < 2:
            raise ValueError("samples must be at least 2")
        if self.sampling not in ("log-uniform", "uniform"):
            raise ValueError(f"sampling must be 'log-uniform' or 'uniform', not {self.sampling!r}")
        object.__setattr__(self, "seed", int(self.seed) & _MASK)

    def scaled(self, factor: float) -> "IntervalSpec":
        return IntervalSpec(self.lo * factor, self.hi * factor, self.samples, self.sampling, self.seed)


def uniforms(seed: int, start: int, n: int) -> np.ndarray:
    """Uniforms in [0, 1) for counters ``start .. start+n-1`` of stream ``seed``."""
    out = np.empty(n, dtype=np.float64)
    kernels.uniforms(int(seed) & _MASK, int(start) & _MASK, out)
    return out


def _spread(u: np.ndarray, iv: IntervalSpec) -> np.ndarray:
    if iv.sampling == "log-uniform":
        a, b = math.log(iv.lo), math.log(iv.hi)
        out = np.exp(a + u * (b - a))
    else:
        out = iv.lo + u * (iv.hi - iv.lo)
    return np.clip(out, iv.lo, iv.hi)


def grid(iv: IntervalSpec, n: int | None = None) -> np.ndarray:
    """Monotone grid of ``n`` (default ``iv.samples``) points spanning ``iv``."""
    n = iv.samples if n is None else n
    if iv.sampling == "log-uniform":
        return np.geomspace(iv.lo, iv.hi, n)
    return np.linspace(iv.lo, iv.hi, n)


def random_pairs(iv: IntervalSpec, n: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Pair ``i`` uses counters ``2i`` and ``2i+1``."""
    n = iv.samples if n is None else n
    u = uniforms(iv.seed, 0, 2 * n)
    return _spread(u[0::2], iv), _spread(u[1::2], iv)


def structured_pairs(iv: IntervalSpec, anchors: int = 5) -> tuple[np.ndarray, np.ndarray]:
    """Near-diagonal pairs ``(m, m(1 + 10**-k))``, k = 2..8, plus the extremes."""
    top = iv.hi / 1.01
    if top <= iv.lo:
        ms = np.array([iv.lo])
    elif iv.sampling == "log-uniform":
        ms = np.geomspace(iv.lo, top, anchors + 2)[1:-1]
    else:
        ms = np.linspace(iv.lo, top, anchors + 2)[1:-1]
    xs, ys = [], []
    for m in ms:
        for k in range(2, 9):
            y = m * (1.0 + 10.0 ** (-k))
            if y <= iv.hi:
                xs.append(m)
                ys.append(y)
    if iv.lo * 1.01 < iv.hi * 0.99:
        xs.append(iv.lo * 1.01)
        ys.append(iv.hi * 0.99)
    return np.array(xs, dtype=np.float64), np.array(ys, dtype=np.float64)


def sample_pairs(iv: IntervalSpec, n: int | None = None, structured: bool = True):
    """Random pairs followed by the structured ones, as two arrays."""
    x, y = random_pairs(iv, n)
    if structured:
        sx, sy = structured_pairs(iv)
        x = np.concatenate([x, sx])
        y = np.concatenate([y, sy])
    return x, y
