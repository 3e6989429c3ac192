"""Dense exact linear algebra over F_p backed by BLAS.

Matrices are float arrays holding integers in [0, p).  Products of reduced
entries are exact as long as accumulations stay below the integer capacity
of the dtype (2^24 for float32, 2^53 for float64); the inner dimension is
chunked when necessary.  The elimination is blocked so the bulk of the work
runs as matmul, which is where all the speed comes from.
"""

import numpy as np

try:
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        import numba

    @numba.njit(cache=True, parallel=True)
    def _mod_flat_f32(a, p):
        for i in numba.prange(a.size):
            r = np.int64(a[i]) % p
            a[i] = r

    @numba.njit(cache=True, parallel=True)
    def _mod_flat_f64(a, p):
        for i in numba.prange(a.size):
            r = np.int64(a[i]) % p
            a[i] = r

    _HAVE_NUMBA = True
except Exception:  # pragma: no cover - numba is present in normal installs
    _HAVE_NUMBA = False

_F32_CAP = 2 ** 24
_F64_CAP = 2 ** 53


def choose_dtype(p, inner):
    """Smallest exact dtype for accumulating `inner` products of residues."""
    if (p - 1) ** 2 * max(inner, 1) < _F32_CAP:
        return np.float32
    return np.float64


def as_modp_array(A, p):
    """Copy A into a reduced C-order float array of the appropriate dtype.

    C order matters: the panel factorization takes Fortran-order working
    copies, which must never alias the matrix being reduced.
    """
    A = np.asarray(A)
    out = np.array(A, dtype=np.float64, order="C")
    out %= p
    dt = choose_dtype(p, A.shape[-1] if A.ndim else 1)
    return out.astype(dt, copy=False)


def mod_inplace(A, p):
    """Exact elementwise reduction of integer-valued floats into [0, p)."""
    if A.size == 0:
        return A
    if A.size <= 1 << 14 or not _HAVE_NUMBA:
        np.remainder(A, p, out=A)
        return A
    flat = A.reshape(-1) if A.flags["C_CONTIGUOUS"] or A.flags["F_CONTIGUOUS"] \
        else None
    if flat is None:
        np.remainder(A, p, out=A)
        return A
    if A.dtype == np.float32:
        _mod_flat_f32(flat, p)
    else:
        _mod_flat_f64(flat, p)
    return A


def _inner_step(p, dtype_a, dtype_b):
    # half the exact-integer capacity leaves room for a (-p, p) addend
    cap = _F32_CAP if (dtype_a == np.float32 and dtype_b == np.float32) \
        else _F64_CAP
    return max(1, (cap // 2) // max((p - 1) ** 2, 1))


def matmul_modp(A, B, p):
    """Exact (A @ B) mod p for reduced integer-valued float arrays."""
    n_inner = A.shape[1]
    step = _inner_step(p, A.dtype, B.dtype)
    if n_inner <= step:
        C = A @ B
        return mod_inplace(C, p)
    C = np.zeros((A.shape[0], B.shape[1]),
                 dtype=np.promote_types(A.dtype, B.dtype))
    for s in range(0, n_inner, step):
        C += A[:, s:s + step] @ B[s:s + step]
        mod_inplace(C, p)
    return C


def submul_modp(C, A, B, p):
    """C -= A @ B followed by reduction, chunked to stay exact.

    C must hold entries in (-p, p); afterwards it is reduced into [0, p).
    Saves a full pass over C compared to reducing the product first.
    """
    n_inner = A.shape[1]
    step = _inner_step(p, A.dtype, B.dtype)
    for s in range(0, n_inner, step):
        C -= A[:, s:s + step] @ B[s:s + step]
        mod_inplace(C, p)
    return C


def _inv_mod(a, p):
    return pow(int(a), -1, p)


def _unit_lower_solve(L, B, p, base=48):
    """Overwrite B with L^-1 B, L unit lower triangular, all entries reduced."""
    n = L.shape[0]
    if n == 0:
        return B
    if n <= base:
        for i in range(1, n):
            B[i] -= L[i, :i] @ B[:i]
            mod_inplace(B[i], p)
        return B
    h = n // 2
    _unit_lower_solve(L[:h, :h], B[:h], p, base)
    submul_modp(B[h:], L[h:, :h], B[:h], p)
    _unit_lower_solve(L[h:, h:], B[h:], p, base)
    return B


def _upper_solve(U, B, p, base=48):
    """Overwrite B with U^-1 B, U upper triangular with nonzero diagonal."""
    n = U.shape[0]
    if n == 0:
        return B
    if n <= base:
        for i in range(n - 1, -1, -1):
            if i < n - 1:
                B[i] -= U[i, i + 1:] @ B[i + 1:]
                mod_inplace(B[i], p)
            inv = _inv_mod(U[i, i], p)
            if inv != 1:
                B[i] *= inv
                mod_inplace(B[i], p)
        return B
    h = n // 2
    _upper_solve(U[h:, h:], B[h:], p, base)
    submul_modp(B[:h], U[:h, h:], B[h:], p)
    _upper_solve(U[:h, :h], B[:h], p, base)
    return B


def _factor_base(A, r, c0, c1, p, pivots):
    """Unblocked elimination of columns [c0, c1) on rows r:, in a copy.

    Multipliers are stored below each pivot in its column.  Row swaps are
    applied to the full rows of A so earlier multipliers and untouched
    trailing columns travel with their rows.  Returns the pivot count.
    """
    m = A.shape[0]
    # .copy never aliases A, unlike asfortranarray on an F-contiguous slice
    B = A[r:, c0:c1].copy(order="F")
    rr = 0
    for lc in range(c1 - c0):
        mod_inplace(B[rr:, lc], p)
        nz = np.nonzero(B[rr:, lc])[0]
        if nz.size == 0:
            continue
        pr = rr + int(nz[0])
        if pr != rr:
            A[[r + rr, r + pr]] = A[[r + pr, r + rr]]
            B[[rr, pr]] = B[[pr, rr]]
        mod_inplace(B[rr, lc:], p)
        inv = _inv_mod(B[rr, lc], p)
        below = B[rr + 1:, lc]
        if below.size:
            mult = below * inv
            mod_inplace(mult, p)
            B[rr + 1:, lc] = mult
            if lc + 1 < c1 - c0:
                B[rr + 1:, lc + 1:] -= np.outer(mult, B[rr, lc + 1:])
        pivots.append(c0 + lc)
        rr += 1
    mod_inplace(B, p)
    A[r:, c0:c1] = B
    return rr


def _apply_pivots(A, r, piv_cols, c_from, c_to, p):
    """Push the row operations of pivots at rows r.. onto columns [c_from, c_to)."""
    rp = len(piv_cols)
    if rp == 0 or c_from >= c_to:
        return
    m = A.shape[0]
    trail = A[r:, c_from:c_to]
    mod_inplace(trail[:rp], p)
    G = A[r:r + rp][:, piv_cols]
    L11 = np.tril(G, -1) + np.identity(rp, dtype=A.dtype)
    _unit_lower_solve(L11, trail[:rp], p)
    if m - r - rp > 0:
        L21 = np.ascontiguousarray(A[r + rp:, piv_cols])
        submul_modp(trail[rp:], L21, trail[:rp], p)


def _echelon_region(A, r, c0, c1, p, pivots, base):
    """Recursive blocked elimination of the column range [c0, c1)."""
    if c1 - c0 <= base:
        return _factor_base(A, r, c0, c1, p, pivots)
    mid = (c0 + c1) // 2
    before = len(pivots)
    rp1 = _echelon_region(A, r, c0, mid, p, pivots, base)
    _apply_pivots(A, r, pivots[before:], mid, c1, p)
    rp2 = _echelon_region(A, r + rp1, mid, c1, p, pivots, base)
    return rp1 + rp2


def row_echelon(A, p, block=512, base=32):
    """In-place row echelon form of A mod p; returns the pivot column list.

    A must hold reduced entries in a float dtype able to accumulate
    base-many products exactly (as_modp_array guarantees much more).
    First-nonzero pivoting keeps the result deterministic.  Panels are
    factored by halving recursion, so nearly all work runs as matmul.
    """
    m, n = A.shape
    pivots = []
    r = 0
    c = 0
    while r < m and c < n:
        cb = min(block, n - c)
        before = len(pivots)
        rp = _echelon_region(A, r, c, c + cb, p, pivots, base)
        _apply_pivots(A, r, pivots[before:], c + cb, n, p)
        r += rp
        c += cb
    # drop the multiplier storage above the rank line: rows below r are
    # never read back, but the U block must be clean
    for i, j in enumerate(pivots):
        A[i + 1:len(pivots), j] = 0
    return pivots


def _solved_free_block(A, p, pivots, free):
    """U_rr^-1 * A[:r, free]: the reduced-echelon values at the free columns."""
    r = len(pivots)
    U = np.ascontiguousarray(A[:r][:, pivots])
    B = np.ascontiguousarray(A[:r][:, free])
    _upper_solve(U, B, p)
    return B


def rref(A, p, block=256):
    """Reduced row echelon form mod p.  Returns (R, pivot_columns)."""
    A = as_modp_array(A, p)
    m, n = A.shape
    pivots = row_echelon(A, p, block=block)
    r = len(pivots)
    piv_set = set(pivots)
    free = [j for j in range(n) if j not in piv_set]
    R = np.zeros((r, n), dtype=A.dtype)
    if r:
        R[np.arange(r), pivots] = 1
        if free:
            R[:, free] = _solved_free_block(A, p, pivots, free)
    return R, pivots


def rank(A, p, block=256):
    A = as_modp_array(A, p)
    return len(row_echelon(A, p, block=block))


def nullspace(A, p, block=256):
    """Kernel basis of A, one row per basis vector, deterministic.

    Row k has a 1 at its free column, the negated reduced-echelon entries
    at the pivot columns, and 0 at the other free columns.
    """
    A = as_modp_array(A, p)
    m, n = A.shape
    pivots = row_echelon(A, p, block=block)
    r = len(pivots)
    piv_set = set(pivots)
    free = [j for j in range(n) if j not in piv_set]
    if not free:
        return np.zeros((0, n), dtype=A.dtype)
    if r == 0:
        K = np.zeros((len(free), n), dtype=A.dtype)
        K[np.arange(len(free)), free] = 1
        return K
    X = _solved_free_block(A, p, pivots, free)
    del A
    K = np.zeros((len(free), n), dtype=X.dtype)
    K[np.arange(len(free)), free] = 1
    K[:, pivots] = (-X.T) % p
    return K


def rank_int(A, p):
    """Rank of a small integer matrix (plain convenience wrapper)."""
    return rank(np.asarray(A, dtype=np.int64), p)
