"""Jordan structure of unipotent Z/p actions and tensor products.

A module datum is (P, blocks): P is a square array whose columns form a
Jordan basis for delta = sigma - 1, grouped per block with the socle vector
first, and blocks lists the block sizes in column order.  Tensor products
of block pairs V_a (x) V_b (diagonal group action) are decomposed once per
(p, a, b) by brute force and cached; larger products are folded from these,
which keeps the per-component work proportional to small matrix products
instead of eliminations on the full component.
"""

import numpy as np

from . import linalg


class _IncrementalEchelon:
    """Row space tracker: add(v) reduces v and stores it when independent."""

    def __init__(self, n, p):
        self.n = n
        self.p = p
        self.rows = {}  # pivot column -> reduced row

    def residual(self, v):
        v = v.astype(np.float64) % self.p
        for j in sorted(self.rows):
            if v[j]:
                v = (v - v[j] * self.rows[j]) % self.p
        return v

    def add(self, v):
        """Returns True when v was independent of the stored rows."""
        v = self.residual(v)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        j = int(nz[0])
        v = (v * pow(int(v[j]), -1, self.p)) % self.p
        self.rows[j] = v
        return True


def jordan_basis(D, p):
    """Jordan basis of a nilpotent matrix mod p.

    Returns (P, blocks): the columns of P are chains v_1, ..., v_k per
    block with D v_i = v_{i-1} and D v_1 = 0 (socle first); blocks lists
    the chain lengths in column order, longest first.
    """
    D = np.asarray(D, dtype=np.float64) % p
    n = D.shape[0]
    if n == 0:
        return np.zeros((0, 0)), []
    powers = [np.identity(n)]
    while True:
        nxt = linalg.matmul_modp(powers[-1].astype(np.float64), D, p)
        powers.append(nxt)
        if not nxt.any():
            break
    s = len(powers) - 1  # nilpotency index
    if s == 0:
        raise ValueError("matrix is zero-dimensional or not nilpotent")
    kernels = [linalg.nullspace(powers[j], p).astype(np.float64)
               for j in range(s + 1)]
    chains = []  # (height, top vector)
    for j in range(s, 0, -1):
        # span already inside ker D^j: ker D^(j-1) plus pushed-down tops
        covered_j = _IncrementalEchelon(n, p)
        for row in kernels[j - 1]:
            covered_j.add(row)
        for h, top in chains:
            v = top
            for _ in range(h - j):
                v = (D @ v) % p
            covered_j.add(v)
        for row in kernels[j]:
            if covered_j.residual(row).any():
                covered_j.add(row)
                chains.append((j, row % p))
    chains.sort(key=lambda c: -c[0])
    cols = []
    blocks = []
    for h, top in chains:
        chain = [top]
        for _ in range(h - 1):
            chain.append((D @ chain[-1]) % p)
        cols.extend(reversed(chain))  # socle first
        blocks.append(h)
    P = np.column_stack(cols) % p
    if sum(blocks) != n:
        raise AssertionError("Jordan chains do not fill the space")
    return P, blocks


def _sigma_block(k):
    """Matrix of sigma on V_k: identity plus the shift e_i -> e_(i-1)."""
    return np.identity(k) + np.eye(k, k, 1)


_PAIR_CACHE = {}


def pair_data(p, a, b):
    """Cached Jordan datum of V_a (x) V_b under the diagonal action."""
    key = (p, a, b)
    if key not in _PAIR_CACHE:
        sig = np.kron(_sigma_block(a), _sigma_block(b)) % p
        delta = (sig - np.identity(a * b)) % p
        _PAIR_CACHE[key] = jordan_basis(delta, p)
    return _PAIR_CACHE[key]


def tensor_type(p, type_a, type_b):
    """Block-size multiset of a tensor product from factor multisets."""
    out = []
    for a in type_a:
        for b in type_b:
            out.extend(pair_data(p, a, b)[1])
    return sorted(out, reverse=True)


def _block_columns(P, blocks):
    """Iterate (size, column slice of P) per Jordan block."""
    start = 0
    for k in blocks:
        yield k, P[:, start:start + k]
        start += k


def _embed(U, W, C, p):
    """Columns U C_j W^T flattened: the pair basis C pushed into the ambient.

    U: (L, a), W: (R, b), C: (a*b, m) columns over V_a (x) V_b.  Returns an
    (L*R, m) array; row index i_left * R + i_right matches np.kron.
    """
    a = U.shape[1]
    b = W.shape[1]
    m = C.shape[1]
    T = C.reshape(a, b, m)
    T = np.tensordot(U, T, axes=(1, 0)) % p          # (L, b, m)
    T = np.tensordot(T, W, axes=(1, 1)) % p          # (L, m, R)
    return np.ascontiguousarray(T.transpose(0, 2, 1).reshape(-1, m))


def tensor_jordan(datum_a, datum_b, p):
    """Jordan datum of the tensor product of two explicit module data."""
    Pa, blocks_a = datum_a
    Pb, blocks_b = datum_b
    N = Pa.shape[0] * Pb.shape[0]
    cols = []
    blocks = []
    for a, U in _block_columns(Pa, blocks_a):
        for b, W in _block_columns(Pb, blocks_b):
            Ppair, pblocks = pair_data(p, a, b)
            cols.append(_embed(U, W, Ppair, p))
            blocks.extend(pblocks)
    P = np.concatenate(cols, axis=1)
    if P.shape != (N, N):
        raise AssertionError("tensor basis has the wrong shape")
    return P, blocks


def socle_columns(blocks):
    """Column indices of the socle vectors in a Jordan datum layout."""
    idx = []
    start = 0
    for k in blocks:
        idx.append(start)
        start += k
    return idx


def fold_socle(data, p):
    """Socle (fixed-space) basis of a tensor product of module data.

    Returns rows spanning the socle of data[0] (x) ... (x) data[-1].  All
    factors but the last are folded into one explicit Jordan datum; the
    last fold only materializes socle vectors.
    """
    if len(data) == 1:
        P, blocks = data[0]
        return np.ascontiguousarray(P[:, socle_columns(blocks)].T)
    cur = data[0]
    for nxt in data[1:-1]:
        cur = tensor_jordan(cur, nxt, p)
    Pa, blocks_a = cur
    Pb, blocks_b = data[-1]
    rows = []
    for a, U in _block_columns(Pa, blocks_a):
        for b, W in _block_columns(Pb, blocks_b):
            Ppair, pblocks = pair_data(p, a, b)
            S = Ppair[:, socle_columns(pblocks)]
            rows.append(_embed(U, W, S, p).T)
    return np.concatenate(rows, axis=0)


def fold_socle_values(data, p, targets):
    """Socle vectors evaluated only at the selected ambient coordinates.

    targets is a sequence of flat indices into the full tensor component;
    the output has one row per socle vector and one column per target.
    Equivalent to fold_socle(data, p)[:, targets] but avoids materializing
    the full vectors.
    """
    if len(data) == 1:
        P, blocks = data[0]
        return np.ascontiguousarray(P[np.ix_(list(targets),
                                             socle_columns(blocks))].T)
    cur = data[0]
    for nxt in data[1:-1]:
        cur = tensor_jordan(cur, nxt, p)
    Pa, blocks_a = cur
    Pb, blocks_b = data[-1]
    R = Pb.shape[0]
    t = np.asarray(list(targets), dtype=np.int64)
    t_left = t // R
    t_right = t % R
    rows = []
    for a, U in _block_columns(Pa, blocks_a):
        for b, W in _block_columns(Pb, blocks_b):
            Ppair, pblocks = pair_data(p, a, b)
            S = Ppair[:, socle_columns(pblocks)]
            M1 = U[t_left]            # (T, a)
            M2 = W[t_right]           # (T, b)
            vals = np.einsum("ta,abk,tb->kt", M1,
                             S.reshape(a, b, -1), M2) % p
            rows.append(vals)
    return np.concatenate(rows, axis=0)


def jordan_type_from_ranks(ranks):
    """Multiplicities {k: m_k} from the rank sequence of a nilpotent map.

    ranks[j] = rank(D^j) with ranks[0] the space dimension; the list must
    end with 0.  m_k = r_(k-1) - 2 r_k + r_(k+1).
    """
    r = list(ranks)
    if not r or r[-1] != 0:
        raise ValueError("rank sequence must end at 0")
    r = r + [0]
    out = {}
    for k in range(1, len(r) - 1):
        m = r[k - 1] - 2 * r[k] + r[k + 1]
        if m < 0:
            raise ArithmeticError(
                "negative Jordan multiplicity: operator is not nilpotent "
                "or the rank sequence is inconsistent")
        if m:
            out[k] = m
    return out
