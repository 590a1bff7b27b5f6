"""Pure numpy/scipy implementations of the kernels in ``_core.pyx``."""
from __future__ import annotations

import numpy as np
import scipy.sparse as sp

_BLOCK_CELLS = 1 << 23


def _matrix(indptr, indices, n):
    data = np.ones(len(indices), dtype=np.int32)
    return sp.csr_matrix((data, indices, indptr), shape=(n, n))


def codegree_block(indptr, indices, n, start, stop):
    a = _matrix(indptr, indices, n)
    return np.asarray((a[start:stop] @ a).toarray(), dtype=np.int32)


def max_codegree(indptr, indices, n):
    if n < 2:
        return 0, -1, -1
    a = _matrix(indptr, indices, n)
    best, bu, bv = -1, -1, -1
    cols = np.arange(n)
    step = max(1, _BLOCK_CELLS // n)
    for lo in range(0, n, step):
        hi = min(n, lo + step)
        block = (a[lo:hi] @ a).toarray()
        block[cols[None, :] <= np.arange(lo, hi)[:, None]] = -1
        i = int(np.argmax(block))
        r, c = divmod(i, n)
        if block[r, c] > best:
            best, bu, bv = int(block[r, c]), lo + r, c
    return best, bu, bv


def _round_robin(n):
    """n-1 rounds of disjoint pairs covering every pair once (n even)."""
    idx = list(range(n))
    for _ in range(n - 1):
        yield np.array(idx[: n // 2]), np.array(idx[n // 2:][::-1])
        idx = [idx[0]] + [idx[-1]] + idx[1:-1]


def jacobi_eigenvalues(A, tol, max_sweeps):
    """Jacobi with round-robin ordering: each round applies n/2 disjoint rotations at once."""
    A = np.array(A, dtype=np.float64)
    n = A.shape[0]
    fro = np.linalg.norm(A)

    def off():
        return float(np.sqrt(np.sum(A * A, where=~np.eye(n, dtype=bool))))

    skip = 0.1 * tol * fro / max(n, 1)
    m = n + (n % 2)
    sweeps = 0
    cur = off()
    while cur > tol * fro and sweeps < max_sweeps and n > 1:
        for P, Q in _round_robin(m):
            lo, hi = np.minimum(P, Q), np.maximum(P, Q)
            real = hi < n
            p, q = lo[real], hi[real]
            apq = A[p, q]
            live = np.abs(apq) > skip
            p, q, apq = p[live], q[live], apq[live]
            if not len(p):
                continue
            theta = (A[q, q] - A[p, p]) / (2.0 * apq)
            big = np.abs(theta) > 1e150
            safe = np.where(big, 1.0, theta)
            tt = np.where(big, 0.5 / np.where(big, theta, 1.0),
                          np.sign(safe + (safe == 0)) / (np.abs(safe) + np.sqrt(safe * safe + 1.0)))
            c = 1.0 / np.sqrt(tt * tt + 1.0)
            s = tt * c
            rp, rq = A[p, :].copy(), A[q, :].copy()
            A[p, :] = c[:, None] * rp - s[:, None] * rq
            A[q, :] = s[:, None] * rp + c[:, None] * rq
            cp, cq = A[:, p].copy(), A[:, q].copy()
            A[:, p] = cp * c - cq * s
            A[:, q] = cp * s + cq * c
            A[p, q] = 0.0
            A[q, p] = 0.0
        sweeps += 1
        cur = off()
    return np.diag(A).copy(), sweeps, cur


def max_violation(x, levels, rhs, cap_ptr, cap_idx, cap_w, radius):
    k = len(rhs)
    v = max(0.0, float(-x.min())) if len(x) else 0.0
    s = np.cumsum(np.bincount(levels, weights=x, minlength=k))
    v = max(v, float(np.max(rhs - s)))
    caps = np.add.reduceat(cap_w * x[cap_idx] ** 2, cap_ptr[:-1])
    return max(v, float(np.max(caps)) - radius)


def _cap_project(z, w, radius):
    mu = 0.0
    for _ in range(100):
        den = 1.0 + mu * w
        zz = w * z * z / (den * den)
        f = zz.sum() - radius
        if f <= 1e-15 * radius:
            break
        step = f / (-2.0 * np.sum(w * zz / den))
        mu -= step
        if -step <= 1e-16 * mu:
            break
    return z / (1.0 + mu * w)


def project_run(x, levels, sizes, rhs, cap_ptr, cap_idx, cap_w, radius, relax,
                feas_tol, conv_tol, max_sweeps):
    k = len(rhs)
    caps = [(cap_idx[cap_ptr[m]:cap_ptr[m + 1]], cap_w[cap_ptr[m]:cap_ptr[m + 1]]) for m in range(k)]
    sizes_f = np.asarray(sizes, dtype=np.float64)
    rhs_l = rhs.tolist()
    best = max_violation(x, levels, rhs, cap_ptr, cap_idx, cap_w, radius)
    if best <= feas_tol:
        return 0, 0, best, 0.0
    sweeps, code, res = 0, 2, 0.0
    shift = np.zeros(k + 1)
    while sweeps < max_sweeps:
        prev = x.copy()
        base = np.cumsum(np.bincount(levels, weights=x, minlength=k)).tolist()
        add = 0.0
        for l in range(k):
            cur = base[l] + add
            delta = relax * (rhs_l[l] - cur) / sizes_f[l] if cur < rhs_l[l] else 0.0
            add += delta * sizes_f[l]
            shift[l] = delta
        x += np.cumsum(shift[::-1])[::-1][levels]
        for idx, w in caps:
            z = x[idx]
            if np.dot(w, z * z) > radius:
                x[idx] = z + relax * (_cap_project(z, w, radius) - z)
        np.maximum(x, 0.0, out=x)
        sweeps += 1
        v = max_violation(x, levels, rhs, cap_ptr, cap_idx, cap_w, radius)
        best = min(best, v)
        if v <= feas_tol:
            code = 0
            break
        res = float(np.max(np.abs(x - prev)))
        if res <= conv_tol * max(1.0, float(np.max(np.abs(x)))):
            code = 1
            break
    return code, sweeps, best, res
