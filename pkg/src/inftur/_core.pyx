# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: walk-count codegrees, cyclic Jacobi, relaxed projections.

Signatures mirror ``inftur._fallback``.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs

cnp.import_array()

ctypedef cnp.int64_t i64
ctypedef cnp.int32_t i32


def max_codegree(const i64[::1] indptr, const i32[::1] indices, Py_ssize_t n):
    """Largest |N(u) & N(v)| over pairs u < v, with a witness pair."""
    cdef i32[::1] cnt = np.zeros(n, dtype=np.int32)
    cdef i32[::1] touched = np.empty(max(n, 1), dtype=np.int32)
    cdef Py_ssize_t u, a, b, m, nt
    cdef i32 w, v
    cdef int best = 0
    cdef Py_ssize_t bu = -1, bv = -1
    with nogil:
        for u in range(n):
            nt = 0
            for a in range(indptr[u], indptr[u + 1]):
                w = indices[a]
                for b in range(indptr[w], indptr[w + 1]):
                    v = indices[b]
                    if v > u:
                        if cnt[v] == 0:
                            touched[nt] = v
                            nt += 1
                        cnt[v] += 1
            for m in range(nt):
                v = touched[m]
                if cnt[v] > best or (bu < 0 and cnt[v] > 0):
                    best = cnt[v]
                    bu = u
                    bv = v
                cnt[v] = 0
    if bu < 0 and n >= 2:
        bu, bv = 0, 1
    return best, bu, bv


def codegree_block(const i64[::1] indptr, const i32[::1] indices, Py_ssize_t n,
                   Py_ssize_t start, Py_ssize_t stop):
    """Rows ``start..stop`` of A @ A (walks of length two) as an int32 array."""
    out_arr = np.zeros((stop - start, n), dtype=np.int32)
    cdef i32[:, ::1] out = out_arr
    cdef Py_ssize_t u, a, b
    cdef i32 w
    with nogil:
        for u in range(start, stop):
            for a in range(indptr[u], indptr[u + 1]):
                w = indices[a]
                for b in range(indptr[w], indptr[w + 1]):
                    out[u - start, indices[b]] += 1
    return out_arr


cdef double _off_norm(double[:, ::1] A, Py_ssize_t n) noexcept nogil:
    cdef double s = 0.0
    cdef Py_ssize_t i, j
    for i in range(n):
        for j in range(i + 1, n):
            s += A[i, j] * A[i, j]
    return sqrt(2.0 * s)


cdef void _rotate_rows(double[:, ::1] A, Py_ssize_t n, const Py_ssize_t[::1] P,
                       const Py_ssize_t[::1] Q, const double[::1] C, const double[::1] S,
                       Py_ssize_t npairs) noexcept nogil:
    # rows p, q <- c*row_p - s*row_q, s*row_p + c*row_q for each pair
    cdef Py_ssize_t k, r, p, q
    cdef double c, s, g, h
    for k in range(npairs):
        p = P[k]
        q = Q[k]
        c = C[k]
        s = S[k]
        for r in range(n):
            g = A[p, r]
            h = A[q, r]
            A[p, r] = c * g - s * h
            A[q, r] = s * g + c * h


cdef void _transpose(double[:, ::1] A, Py_ssize_t n) noexcept nogil:
    # in place, in 32x32 tiles
    cdef Py_ssize_t bi = 0, bj, i, j, jstart, iend, jend
    cdef double tmp
    while bi < n:
        iend = min(bi + 32, n)
        bj = bi
        while bj < n:
            jend = min(bj + 32, n)
            for i in range(bi, iend):
                jstart = i + 1 if bj == bi else bj
                for j in range(jstart, jend):
                    tmp = A[i, j]
                    A[i, j] = A[j, i]
                    A[j, i] = tmp
            bj += 32
        bi += 32


def jacobi_eigenvalues(double[:, ::1] A, double tol, int max_sweeps):
    """Jacobi rotations on a symmetric matrix, in place, round-robin pair ordering.

    Each sweep runs m-1 rounds of m/2 disjoint pairs (m = n rounded up to
    even), covering every pair once. A round applies all its rotations as
    one orthogonal similarity: rotate rows, transpose, rotate rows again,
    so every update walks memory contiguously. Stops once the off-diagonal
    Frobenius norm is at most ``tol`` times the input's Frobenius norm.
    Entries below ``0.1 * tol * fro / n`` are not rotated; together they
    contribute at most a tenth of the stopping threshold.
    Returns ``(diag, sweeps, off)``.
    """
    cdef Py_ssize_t n = A.shape[0]
    cdef Py_ssize_t m = n + (n % 2)
    cdef Py_ssize_t i, rnd, p, q, last, k, npairs
    cdef double fro = 0.0, off, skip, apq, theta, tt, c
    cdef int sweeps = 0
    cdef cnp.intp_t[::1] idx = np.arange(max(m, 1), dtype=np.intp)
    cdef Py_ssize_t[::1] P = np.zeros(max(m // 2, 1), dtype=np.intp)
    cdef Py_ssize_t[::1] Q = np.zeros(max(m // 2, 1), dtype=np.intp)
    cdef double[::1] C = np.zeros(max(m // 2, 1))
    cdef double[::1] S = np.zeros(max(m // 2, 1))
    cdef double[::1] DP = np.zeros(max(m // 2, 1))
    cdef double[::1] DQ = np.zeros(max(m // 2, 1))
    for p in range(n):
        for q in range(n):
            fro += A[p, q] * A[p, q]
    fro = sqrt(fro)
    skip = 0.1 * tol * fro / max(n, 1)
    with nogil:
        off = _off_norm(A, n)
        while n > 1 and off > tol * fro and sweeps < max_sweeps:
            for rnd in range(m - 1):
                npairs = 0
                for i in range(m // 2):
                    p = idx[i]
                    q = idx[m - 1 - i]
                    if p > q:
                        p, q = q, p
                    if q >= n:
                        continue
                    apq = A[p, q]
                    if fabs(apq) <= skip:
                        continue
                    theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                    if fabs(theta) > 1e150:
                        tt = 0.5 / theta
                    else:
                        tt = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                        if theta < 0.0:
                            tt = -tt
                    c = 1.0 / sqrt(tt * tt + 1.0)
                    P[npairs] = p
                    Q[npairs] = q
                    C[npairs] = c
                    S[npairs] = tt * c
                    DP[npairs] = A[p, p] - tt * apq
                    DQ[npairs] = A[q, q] + tt * apq
                    npairs += 1
                if npairs:
                    _rotate_rows(A, n, P, Q, C, S, npairs)
                    _transpose(A, n)
                    _rotate_rows(A, n, P, Q, C, S, npairs)
                    for k in range(npairs):
                        p = P[k]
                        q = Q[k]
                        A[p, p] = DP[k]
                        A[q, q] = DQ[k]
                        A[p, q] = 0.0
                        A[q, p] = 0.0
                # circle method: keep idx[0], rotate the rest right by one
                last = idx[m - 1]
                for i in range(m - 1, 1, -1):
                    idx[i] = idx[i - 1]
                idx[1] = last
            sweeps += 1
            off = _off_norm(A, n)
    diag = np.array([A[i, i] for i in range(n)], dtype=np.float64)
    return diag, sweeps, off


cdef double _violation(const double[::1] x, const i32[::1] levels, const double[::1] rhs,
                       const i64[::1] cap_ptr, const i32[::1] cap_idx,
                       const double[::1] cap_w, double radius, double[::1] lsum) noexcept nogil:
    cdef Py_ssize_t d = x.shape[0], k = rhs.shape[0], j, m, l
    cdef double v = 0.0, s, z
    for l in range(k):
        lsum[l] = 0.0
    for j in range(d):
        if -x[j] > v:
            v = -x[j]
        lsum[levels[j]] += x[j]
    s = 0.0
    for l in range(k):
        s += lsum[l]
        if rhs[l] - s > v:
            v = rhs[l] - s
    for m in range(k):
        s = 0.0
        for j in range(cap_ptr[m], cap_ptr[m + 1]):
            z = x[cap_idx[j]]
            s += cap_w[j] * z * z
        if s - radius > v:
            v = s - radius
    return v


def max_violation(const double[::1] x, const i32[::1] levels, const double[::1] rhs,
                  const i64[::1] cap_ptr, const i32[::1] cap_idx,
                  const double[::1] cap_w, double radius):
    cdef double[::1] lsum = np.empty(rhs.shape[0], dtype=np.float64)
    return _violation(x, levels, rhs, cap_ptr, cap_idx, cap_w, radius, lsum)


def project_run(double[::1] x, const i32[::1] levels, const i64[::1] sizes,
                const double[::1] rhs, const i64[::1] cap_ptr, const i32[::1] cap_idx,
                const double[::1] cap_w, double radius, double relax,
                double feas_tol, double conv_tol, long max_sweeps):
    """Relaxed cyclic projections until feasible, stalled, or out of sweeps.

    One sweep visits the k nested halfspaces in order, then the k ellipsoidal
    caps, then the orthant. Returns ``(code, sweeps, best_violation, residual)``
    with code 0 = feasible, 1 = converged (residual <= conv_tol), 2 = cap hit.
    ``x`` holds the final iterate.
    """
    cdef Py_ssize_t d = x.shape[0], k = rhs.shape[0]
    cdef double[::1] prev = np.empty(d, dtype=np.float64)
    cdef double[::1] lsum = np.empty(k, dtype=np.float64)
    cdef double[::1] shift = np.empty(k + 1, dtype=np.float64)
    cdef Py_ssize_t j, l, m, a, b, it
    cdef long sweeps = 0
    cdef int code = 2
    cdef double s, add, cur, delta, mu, f, fp, den, zz, step, v, res, best, scale
    best = _violation(x, levels, rhs, cap_ptr, cap_idx, cap_w, radius, lsum)
    res = 0.0
    if best <= feas_tol:
        return 0, 0, best, 0.0
    with nogil:
        while sweeps < max_sweeps:
            for j in range(d):
                prev[j] = x[j]
            # nested halfspaces: S_0 c S_1 c ... so earlier shifts raise later sums
            for l in range(k):
                lsum[l] = 0.0
            for j in range(d):
                lsum[levels[j]] += x[j]
            s = 0.0
            add = 0.0
            for l in range(k):
                s += lsum[l]
                cur = s + add
                delta = 0.0
                if cur < rhs[l]:
                    delta = relax * (rhs[l] - cur) / sizes[l]
                    add += delta * sizes[l]
                shift[l] = delta
            shift[k] = 0.0
            for l in range(k - 1, -1, -1):
                shift[l] += shift[l + 1]
            for j in range(d):
                x[j] += shift[levels[j]]
            # caps: sum_j w_j z_j^2 <= radius, exact Euclidean projection
            for m in range(k):
                a = cap_ptr[m]
                b = cap_ptr[m + 1]
                s = 0.0
                for j in range(a, b):
                    s += cap_w[j] * x[cap_idx[j]] * x[cap_idx[j]]
                if s <= radius:
                    continue
                mu = 0.0
                for it in range(100):
                    f = -radius
                    fp = 0.0
                    for j in range(a, b):
                        den = 1.0 + mu * cap_w[j]
                        zz = cap_w[j] * x[cap_idx[j]] * x[cap_idx[j]] / (den * den)
                        f += zz
                        fp -= 2.0 * cap_w[j] * zz / den
                    if f <= 1e-15 * radius:
                        break
                    step = f / fp
                    mu -= step
                    if -step <= 1e-16 * mu:
                        break
                for j in range(a, b):
                    x[cap_idx[j]] += relax * (x[cap_idx[j]] / (1.0 + mu * cap_w[j]) - x[cap_idx[j]])
            for j in range(d):
                if x[j] < 0.0:
                    x[j] = 0.0
            sweeps += 1
            v = _violation(x, levels, rhs, cap_ptr, cap_idx, cap_w, radius, lsum)
            if v < best:
                best = v
            if v <= feas_tol:
                code = 0
                break
            res = 0.0
            scale = 1.0
            for j in range(d):
                if fabs(x[j] - prev[j]) > res:
                    res = fabs(x[j] - prev[j])
                if fabs(x[j]) > scale:
                    scale = fabs(x[j])
            if res <= conv_tol * scale:
                code = 1
                break
    return code, sweeps, best, res
