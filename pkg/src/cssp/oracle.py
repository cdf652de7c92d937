"""Exhaustive optima and identity checks for desk-scale instances.

Everything here exists to certify the fast path from an independent angle:
residuals come from numpy's SVD instead of the Jacobi/projector route,
determinants are cross-checked between a factored product and numpy, and
the operator identity is tested against a literal weighted subset sum.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import NotFullColumnRank, TooManySubsets
from .linalg import (
    as_matrix,
    char_poly,
    check_subset,
    complement_projector,
    gram,
    numerical_rank,
    projector_update,
    rank_tolerance,
    sym_eigenvalues,
    symmetrize,
)
from .polynomial import flip, derivative, maxroot, minroot, polar_power
from .selector import DEFAULT_EPS

ENUMERATION_CAP = 10**6

# pass/fail thresholds used by the verification suite (max relative error)
IDENTITY_TOLERANCES = {
    "expected_poly_vs_operator": 1e-7,
    "weighted_step_sum": 1e-7,
    "alpha_as_expectation": 1e-7,
    "frobenius_expectation": 1e-7,
    "det_factorization": 1e-8,
    "subset_det_sum_two_routes": 1e-8,
    "restricted_invertibility": 1e-6,
    "flip_involution": 0.0,
    "reciprocal_root": 1e-6,
}


@dataclass(frozen=True)
class OracleReport:
    best_subset: list[int]
    best_residual_sq: float
    expected_poly: np.ndarray
    ck: float
    identity_errors: dict


def _require_enumerable(d: int, k: int) -> int:
    total = math.comb(d, k)
    if total > ENUMERATION_CAP:
        raise TooManySubsets(f"C({d},{k}) = {total} subsets exceed the {ENUMERATION_CAP} cap")
    return total


def svd_residual_sq(a, cols) -> float:
    """Squared spectral residual through numpy's SVD and pseudoinverse.

    Deliberately shares no code with the projector/Jacobi route it checks.
    """
    arr = as_matrix(a)
    cols = list(cols)
    if cols:
        sub = arr[:, cols]
        resid = arr - sub @ np.linalg.pinv(sub) @ arr
    else:
        resid = arr
    return float(np.linalg.svd(resid, compute_uv=False)[0] ** 2)


def brute_force_best(a, k: int, threads: int = 1):
    """Exact optimum over all k-subsets: (subset, squared residual).

    Ties resolve to the lexicographically smallest subset regardless of
    evaluation order.
    """
    arr = as_matrix(a)
    d = arr.shape[1]
    k = int(k)
    if not 0 <= k <= d:
        raise ValueError("need 0 <= k <= d")
    _require_enumerable(d, k)
    combos = list(itertools.combinations(range(d), k))

    def score(s):
        return (svd_residual_sq(arr, s), s)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            best = min(pool.map(score, combos))
    else:
        best = min(map(score, combos))
    return list(best[1]), float(best[0])


def gram_det_factored(a, cols, tol: float | None = None) -> float:
    """det(A_S^T A_S) as a product of squared projected-column norms.

    Each accepted column multiplies in the squared norm of its component
    orthogonal to the span so far; a dependent column makes the determinant
    zero.  Stabler than forming the Gram submatrix and also exercises the
    determinant factorization the expected-polynomial identity relies on.
    """
    arr = as_matrix(a)
    idx = check_subset(cols, arr.shape[1])
    if tol is None:
        tol = rank_tolerance(arr)
    q = np.eye(arr.shape[0])
    det = 1.0
    for j in idx:
        u = q @ arr[:, j]
        nu2 = float(u @ u)
        if np.sqrt(nu2) <= tol:
            return 0.0
        det *= nu2
        q = projector_update(q, arr[:, j], tol)
    return det


def residual_char_poly(a, cols) -> np.ndarray:
    """Characteristic polynomial of A^T Q_S A for the given columns."""
    arr = as_matrix(a)
    q = complement_projector(arr, cols)
    return char_poly(symmetrize(arr.T @ q @ arr))


def expected_poly_bruteforce(a, k: int) -> np.ndarray:
    """k! times the determinant-weighted sum of subset residual polynomials.

    Enumerates every k-subset; equals the k-th polar-operator power of the
    full Gram characteristic polynomial, which is exactly what the identity
    tests assert.
    """
    arr = as_matrix(a)
    d = arr.shape[1]
    k = int(k)
    if k == 0:
        return char_poly(gram(arr))
    _require_enumerable(d, k)
    tol = rank_tolerance(arr)
    acc = np.zeros(d + 1)
    for s in itertools.combinations(range(d), k):
        det = gram_det_factored(arr, s, tol)
        if det == 0.0:
            continue
        acc += det * residual_char_poly(arr, s)
    return math.factorial(k) * acc


def gram_det_sum(a, k: int) -> float:
    """Sum of det(A_S^T A_S) over k-subsets, via the eigenvalue route.

    Equals the elementary symmetric polynomial of the positive Gram
    eigenvalues, so it stays cheap at any width.
    """
    arr = as_matrix(a)
    k = int(k)
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return 1.0
    tol = rank_tolerance(arr)
    side = "columns" if arr.shape[1] <= arr.shape[0] else "rows"
    eigs = sym_eigenvalues(gram(arr, by=side))
    eigs = eigs[eigs > tol * tol]
    if k > eigs.size:
        return 0.0
    esym = np.zeros(k + 1)
    esym[0] = 1.0
    for lam in eigs:
        upto = min(k, int(np.count_nonzero(esym)))
        for j in range(upto, 0, -1):
            esym[j] += lam * esym[j - 1]
    return float(esym[k])


def gram_det_sum_enumerated(a, k: int) -> float:
    """Same sum by direct enumeration; the slow half of the dual route."""
    arr = as_matrix(a)
    k = int(k)
    if k == 0:
        return 1.0
    _require_enumerable(arr.shape[1], k)
    tol = rank_tolerance(arr)
    return float(sum(gram_det_factored(arr, s, tol)
                     for s in itertools.combinations(range(arr.shape[1]), k)))


def volume_mean_residual(a) -> float:
    """Volume-sampling average of the squared spectral residual over
    (rank-1)-subsets.  Must reproduce the harmonic-mean constant of the
    spectrum summary; rank-deficient subsets carry zero weight."""
    arr = as_matrix(a)
    t = numerical_rank(arr)
    k = t - 1
    _require_enumerable(arr.shape[1], max(k, 0))
    tol = rank_tolerance(arr)
    num = 0.0
    den = 0.0
    for s in itertools.combinations(range(arr.shape[1]), k):
        det = gram_det_factored(arr, s, tol)
        if det == 0.0:
            continue
        num += det * svd_residual_sq(arr, s)
        den += det
    return num / den


def expected_frobenius_residual(a, k: int) -> float:
    """Volume-sampling mean of the squared Frobenius residual over
    k-subsets, through the subset-determinant ratio (k+1) c_{k+1} / c_k."""
    arr = as_matrix(a)
    k = int(k)
    if not 0 <= k < numerical_rank(arr):
        raise ValueError("need 0 <= k < rank")
    return (k + 1) * gram_det_sum(arr, k + 1) / gram_det_sum(arr, k)


def volume_mean_frobenius_enumerated(a, k: int) -> float:
    """The same Frobenius expectation by direct weighted enumeration."""
    arr = as_matrix(a)
    k = int(k)
    _require_enumerable(arr.shape[1], k)
    tol = rank_tolerance(arr)
    num = 0.0
    den = 0.0
    for s in itertools.combinations(range(arr.shape[1]), k):
        det = gram_det_factored(arr, s, tol)
        if det == 0.0:
            continue
        cols = list(s)
        sub = arr[:, cols]
        resid = arr - sub @ np.linalg.pinv(sub) @ arr if cols else arr
        num += det * float(np.sum(resid * resid))
        den += det
    return num / den


def restricted_invertibility_pair(a, cols, eps: float = DEFAULT_EPS):
    """(largest residual-poly root, inverse squared min singular value).

    For a full-column-rank matrix these two numbers coincide: dropping the
    selected columns from the transposed pseudoinverse and taking its
    smallest singular value inverts the selection residual.
    """
    arr = as_matrix(a)
    n, d = arr.shape
    idx = check_subset(cols, d)
    if len(idx) >= d:
        raise ValueError("the subset must be a proper subset of the columns")
    if numerical_rank(arr) < d:
        raise NotFullColumnRank("matrix must have full column rank")
    mr = maxroot(residual_char_poly(arr, idx), eps).value
    b = np.linalg.pinv(arr).T
    comp = [j for j in range(d) if j not in set(idx)]
    sig2_min = float(sym_eigenvalues(gram(b[:, comp]))[-1])
    return float(mr), 1.0 / sig2_min


def weighted_step_identity_error(a, cols) -> float:
    """Max relative coefficient error of the one-step weighted-sum identity.

    The sum of ||Q_S a_i||^2 * p_(S+i) over columns outside the span must
    equal one polar-operator application to p_S.
    """
    arr = as_matrix(a)
    d = arr.shape[1]
    idx = check_subset(cols, d)
    tol = rank_tolerance(arr)
    q = complement_projector(arr, idx)
    p_s = char_poly(symmetrize(arr.T @ q @ arr))
    lhs = np.zeros(d + 1)
    chosen = set(idx)
    for i in range(d):
        if i in chosen:
            continue
        u = q @ arr[:, i]
        nu2 = float(u @ u)
        if np.sqrt(nu2) <= tol:
            continue
        q_i = symmetrize(q - np.outer(u, u) / nu2)
        lhs += nu2 * char_poly(symmetrize(arr.T @ q_i @ arr))
    rhs = polar_power(p_s, 1)
    scale = max(float(np.max(np.abs(rhs))), float(np.max(np.abs(lhs))), 1e-300)
    return float(np.max(np.abs(lhs - rhs))) / scale


def _rel_err(x: float, y: float) -> float:
    return abs(x - y) / max(abs(x), abs(y), 1e-300)


def run_identity_suite(a, k: int, eps: float = DEFAULT_EPS, threads: int = 1) -> OracleReport:
    """Run every identity check on one instance and collect max errors.

    Pass/fail thresholds live in IDENTITY_TOLERANCES; callers compare.
    """
    from .bounds import spectrum_of

    arr = as_matrix(a)
    d = arr.shape[1]
    k = int(k)
    t = numerical_rank(arr)
    if not 1 <= k <= t:
        raise ValueError(f"need 1 <= k <= rank = {t}")
    errors: dict[str, float] = {}

    expected = expected_poly_bruteforce(arr, k)
    operator = polar_power(char_poly(gram(arr)), k)
    scale = max(float(np.max(np.abs(operator))), 1e-300)
    errors["expected_poly_vs_operator"] = float(np.max(np.abs(expected - operator))) / scale

    err = weighted_step_identity_error(arr, [])
    for s in ([0], [0, 1]):
        if len(s) < d:
            err = max(err, weighted_step_identity_error(arr, s))
    errors["weighted_step_sum"] = err

    info = spectrum_of(arr)
    errors["alpha_as_expectation"] = _rel_err(volume_mean_residual(arr), info.alpha)

    kf = min(k, t - 1)
    if kf >= 0:
        errors["frobenius_expectation"] = _rel_err(
            expected_frobenius_residual(arr, kf),
            volume_mean_frobenius_enumerated(arr, kf),
        )

    det_err = 0.0
    for s in itertools.islice(itertools.combinations(range(d), k), 64):
        sub = arr[:, list(s)]
        det_err = max(det_err, _rel_err(gram_det_factored(arr, s),
                                        float(np.linalg.det(symmetrize(sub.T @ sub)))))
    errors["det_factorization"] = det_err

    errors["subset_det_sum_two_routes"] = _rel_err(gram_det_sum(arr, k),
                                                   gram_det_sum_enumerated(arr, k))

    if t == d:
        ri_err = 0.0
        for s in itertools.islice(itertools.combinations(range(d), min(k, d - 1)), 32):
            lhs, rhs = restricted_invertibility_pair(arr, s, eps)
            ri_err = max(ri_err, _rel_err(lhs, rhs))
        errors["restricted_invertibility"] = ri_err

    errors["flip_involution"] = float(np.max(np.abs(flip(flip(expected)) - expected)))

    p_full = char_poly(gram(arr))
    # structural zero roots of a rank-deficient Gram matrix leave rounding
    # residue in the low coefficients; zero it so the flip is clean
    low = np.nonzero(np.abs(p_full) > 1e-12 * np.max(np.abs(p_full)))[0]
    if low.size and low[0] > 0:
        p_full = p_full.copy()
        p_full[: low[0]] = 0.0
    kk = min(k, t - 1)
    if kk >= 1:
        mr = maxroot(polar_power(p_full, kk), eps).value
        mn = minroot(derivative(flip(p_full), kk), eps).value
        errors["reciprocal_root"] = abs(mr * mn - 1.0)

    best_subset, best_res = brute_force_best(arr, k, threads=threads)
    return OracleReport(
        best_subset=best_subset,
        best_residual_sq=best_res,
        expected_poly=expected,
        ck=gram_det_sum(arr, k),
        identity_errors=errors,
    )
