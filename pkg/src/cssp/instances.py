"""Deterministic generators for benchmark matrices.

All randomness flows through the Philox counter-based generator, so equal
seeds give bit-identical matrices on any platform numpy supports.
"""

from __future__ import annotations

import numpy as np


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed)))


def hard_instance(d: int, delta: float) -> np.ndarray:
    """The (d+1) x d matrix with column j equal to e_1 + delta * e_{j+1}.

    Its Gram matrix is exactly delta^2 I + ones(d, d), so the spectrum is
    [d + delta^2, delta^2, ..., delta^2].  Every k-subset achieves the same
    residual, which makes the instance a sharp stress test for bounds.
    """
    d = int(d)
    if d < 2:
        raise ValueError("need d >= 2")
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    a = np.zeros((d + 1, d))
    a[0, :] = 1.0
    a[np.arange(1, d + 1), np.arange(d)] = float(delta)
    return a


def _haar_frame(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """Orthonormal frame from QR of a Gaussian draw, sign-fixed for determinism."""
    g = rng.standard_normal((rows, cols))
    q, r = np.linalg.qr(g)
    signs = np.sign(np.diag(r))
    signs[signs == 0.0] = 1.0
    return q * signs


def power_law(n: int, d: int, t: int, s: float, c: float, seed: int) -> np.ndarray:
    """Rank-t matrix whose Gram eigenvalues follow c / i**s, i = 1..t.

    Built as U diag(sqrt(c/i**s)) V^T with U, V seeded random orthonormal
    frames, so the prescribed spectrum is realized up to rounding.
    """
    n, d, t = int(n), int(d), int(t)
    if not 1 <= t <= min(n, d):
        raise ValueError("need 1 <= t <= min(n, d)")
    if c <= 0.0:
        raise ValueError("c must be positive")
    rng = _rng(seed)
    u = _haar_frame(rng, n, t)
    v = _haar_frame(rng, d, t)
    sigma = np.sqrt(c / np.arange(1.0, t + 1.0) ** s)
    return (u * sigma) @ v.T


def random_gaussian(n: int, d: int, seed: int) -> np.ndarray:
    """Seeded standard-normal matrix."""
    n, d = int(n), int(d)
    if n < 1 or d < 1:
        raise ValueError("dimensions must be positive")
    return _rng(seed).standard_normal((n, d))
