"""Representations of Z/p as sums of Jordan blocks and the induced action.

A representation is an ordered list of block sizes (n_1, ..., n_s) with
1 <= n_b <= p.  Block b contributes variables indexed bottom-up, so the
generator sigma sends the level-j variable to itself plus the level-(j-1)
variable, and delta = sigma - 1 lowers the level by one.
"""

import numpy as np
import scipy.sparse as sp

from .ff import PrimeField
from .poly import PolyRing, product


def _auto_names(blocks):
    if len(blocks) == 1:
        return [f"x{j}" for j in range(1, blocks[0] + 1)]
    if all(n <= 3 for n in blocks):
        return _xyz_names(blocks)
    names = []
    for b, n in enumerate(blocks, start=1):
        names += [f"x{b}_{j}" for j in range(1, n + 1)]
    return names


def _xyz_names(blocks):
    if any(n > 3 for n in blocks):
        raise ValueError("X/Y/Z naming needs all blocks of size <= 3")
    if len(blocks) == 1:
        return [f"x{j}" for j in range(1, blocks[0] + 1)]
    letters = "XYZ"
    names = []
    for b, n in enumerate(blocks, start=1):
        names += [f"{letters[j]}{b}" for j in range(n)]
    return names


def _flat_names(blocks):
    return [f"x{k}" for k in range(1, sum(blocks) + 1)]


_REP_CACHE = {}


def get_rep(p, blocks, names="auto"):
    """Shared RepSpec instances, so per-degree action caches are reused."""
    key = (p, tuple(blocks), names if isinstance(names, str) else tuple(names))
    if key not in _REP_CACHE:
        _REP_CACHE[key] = RepSpec(p, blocks, names=names)
    return _REP_CACHE[key]


class RepSpec:
    """Block sizes plus the polynomial ring carrying the Z/p action."""

    def __init__(self, p, blocks, names="auto"):
        self.field = PrimeField(p)
        self.p = p
        self.blocks = tuple(int(n) for n in blocks)
        if not self.blocks:
            raise ValueError("need at least one block")
        for n in self.blocks:
            if n < 1:
                raise ValueError(f"block size {n} < 1")
            if n > p:
                raise ValueError(
                    f"block size {n} exceeds p={p}; a Jordan block of a "
                    f"p-th root of identity has size at most p")
        # flattened variables: var k belongs to block_of[k] at level level_of[k]
        self.block_of = []
        self.level_of = []
        for b, n in enumerate(self.blocks):
            for j in range(1, n + 1):
                self.block_of.append(b)
                self.level_of.append(j)
        if names == "auto":
            name_list = _auto_names(self.blocks)
        elif names == "xyz":
            name_list = _xyz_names(self.blocks)
        elif names == "flat":
            name_list = _flat_names(self.blocks)
        else:
            name_list = list(names)
        self.ring = PolyRing(p, name_list, levels=self.level_of)
        self.n_vars = self.ring.n
        self._deg_action = None

    def __repr__(self):
        return f"RepSpec(p={self.p}, blocks={self.blocks})"

    def var_index(self, b, j):
        """Flat index of the level-j variable of block b (both 1-based)."""
        return sum(self.blocks[: b - 1]) + (j - 1)

    def block_multidegree(self, exps):
        """Per-block total degrees of a monomial."""
        out = [0] * len(self.blocks)
        for k, e in enumerate(exps):
            out[self.block_of[k]] += e
        return tuple(out)

    # -- the group action ----------------------------------------------------

    def sigma_image(self, k, m=1):
        """sigma^m applied to variable k: sum of C(m, t) * (level j-t var)."""
        m %= self.p
        j = self.level_of[k]
        terms = []
        for t in range(j):
            c = self.field.binomial(m, t)
            if c:
                e = [0] * self.n_vars
                e[k - t] = 1
                terms.append((c, tuple(e)))
        return self.ring.from_terms(terms)

    def sigma(self, f, m=1):
        """The algebra automorphism sigma^m."""
        m %= self.p
        if m == 0 or f.is_zero():
            return f
        images = [self.sigma_image(k, m) for k in range(self.n_vars)]
        return f.substitute(images)

    def delta(self, f):
        """delta(f) = sigma(f) - f."""
        return self.sigma(f) - f

    def delta_power(self, f, k):
        for _ in range(k):
            f = self.delta(f)
        return f

    def transfer(self, f):
        """Tr(f) = sum of sigma^m(f) over m = 0..p-1 (sigma^p = identity)."""
        out = self.ring.zero()
        for m in range(self.p):
            out = out + self.sigma(f, m)
        return out

    def norm(self, f):
        """Orbit product of a linear form: prod of sigma^m(f), m = 0..p-1."""
        if f.is_zero() or f.degree() != 1 or not f.is_homogeneous():
            raise ValueError("norm is defined here for homogeneous linear forms")
        return product([self.sigma(f, m) for m in range(self.p)])

    # -- the bilinear invariants and the projection of Section-3 shape -------

    def _v2v3_layout(self):
        sizes = set(self.blocks)
        if not sizes <= {2, 3}:
            raise ValueError(
                f"blocks {self.blocks}: this construction needs only "
                f"V2 and V3 blocks")
        m = sum(1 for n in self.blocks if n == 2)
        l = len(self.blocks) - m
        if self.blocks != (2,) * m + (3,) * l:
            raise ValueError("V2 blocks must precede V3 blocks")
        return m, l

    def _XYZ(self, b):
        """(X_b, Y_b, Z_b) generators of block b (1-based); missing -> None."""
        n = self.blocks[b - 1]
        base = self.var_index(b, 1)
        g = [self.ring.variable(base + t) if t < n else None for t in range(3)]
        return g[0], g[1], g[2]

    def bilinear_invariants(self):
        """The invariants u_ij, d_i, w_ij of a sum of V2 and V3 blocks.

        Every returned polynomial is checked to be killed by delta.
        """
        m, l = self._v2v3_layout()
        s = m + l
        out = []
        for i in range(1, s + 1):
            Xi, Yi, Zi = self._XYZ(i)
            for j in range(i + 1, s + 1):
                Xj, Yj, _ = self._XYZ(j)
                out.append((f"u_{i}{j}", Xj * Yi - Xi * Yj))
        for i in range(m + 1, s + 1):
            Xi, Yi, Zi = self._XYZ(i)
            out.append((f"d_{i}", Yi * Yi - Xi * (Yi + 2 * Zi)))
        for i in range(m + 1, s + 1):
            Xi, Yi, Zi = self._XYZ(i)
            for j in range(i + 1, s + 1):
                Xj, Yj, Zj = self._XYZ(j)
                out.append((f"w_{i}{j}", Zi * Xj - Yi * Yj + Xi * Zj + Xi * Yj))
        for name, f in out:
            if not self.delta(f).is_zero():
                raise AssertionError(f"{name} failed the invariance check")
        return out

    def rho_target(self):
        """The (m+l)V2 representation that rho maps onto."""
        m, l = self._v2v3_layout()
        return RepSpec(self.p, (2,) * (m + l), names="xyz")

    def rho(self, f, target=None):
        """Project mV2 + lV3 onto (m+l)V2: Z_i -> Y_i, Y_i -> X_i, X_i -> 0
        on V3 blocks; identity on V2 blocks."""
        m, l = self._v2v3_layout()
        if target is None:
            target = self.rho_target()
        images = []
        for b in range(1, m + l + 1):
            tbase = target.var_index(b, 1)
            if b <= m:
                images.append(target.ring.variable(tbase))      # X_b -> X_b
                images.append(target.ring.variable(tbase + 1))  # Y_b -> Y_b
            else:
                images.append(target.ring.zero())               # X_b -> 0
                images.append(target.ring.variable(tbase))      # Y_b -> X_b
                images.append(target.ring.variable(tbase + 1))  # Z_b -> Y_b
        return f.substitute(images, target=target.ring)

    # -- per-degree action matrices -------------------------------------------

    def degree_action(self):
        if self._deg_action is None:
            self._deg_action = DegreeAction(self)
        return self._deg_action


class DegreeAction:
    """Sparse matrices of sigma and delta on each graded piece.

    Columns and rows are indexed by the ring's decreasing-grevlex monomial
    lists.  sigma on degree d is assembled from degree d-1 via multiplication
    by the images sigma(x_k), which keeps the construction linear in the
    number of nonzeros.
    """

    def __init__(self, rep):
        self.rep = rep
        self.ring = rep.ring
        self._sigma = {}

    def _mult_by_sigma_image(self, k, d):
        """Matrix of multiplication by sigma(x_k): degree d-1 -> degree d."""
        ring = self.ring
        src = ring.monomials_of_degree(d - 1)
        tgt_index = ring.monomial_index(d)
        rows, cols, data = [], [], []
        level = self.rep.level_of[k]
        for c, mon in enumerate(src):
            e = list(mon)
            e[k] += 1
            rows.append(tgt_index[tuple(e)])
            cols.append(c)
            data.append(1)
            if level >= 2:
                e[k] -= 1
                e[k - 1] += 1
                rows.append(tgt_index[tuple(e)])
                cols.append(c)
                data.append(1)
        return sp.csc_matrix((data, (rows, cols)),
                             shape=(len(tgt_index), len(src)), dtype=np.int64)

    def sigma_matrix(self, d):
        """CSC matrix of sigma on the degree-d piece, entries in [0, p)."""
        if d == 0:
            return sp.identity(1, dtype=np.int64, format="csc")
        if d in self._sigma:
            return self._sigma[d]
        prev = self.sigma_matrix(d - 1)
        ring = self.ring
        p = self.rep.p
        mons = ring.monomials_of_degree(d)
        prev_index = ring.monomial_index(d - 1)
        # factor each degree-d monomial as x_k * (rest) with k its last variable
        split_k = []
        split_rest = []
        for mon in mons:
            k = max(i for i, e in enumerate(mon) if e)
            e = list(mon)
            e[k] -= 1
            split_k.append(k)
            split_rest.append(prev_index[tuple(e)])
        split_k = np.array(split_k)
        split_rest = np.array(split_rest)
        pieces = []
        positions = []
        for k in range(self.rep.n_vars):
            sel = np.nonzero(split_k == k)[0]
            if sel.size == 0:
                continue
            T = self._mult_by_sigma_image(k, d) @ prev
            T.data %= p
            pieces.append(T[:, split_rest[sel]])
            positions.append(sel)
        big = sp.hstack(pieces, format="csc")
        order = np.concatenate(positions)
        inv = np.empty_like(order)
        inv[order] = np.arange(len(order))
        out = big[:, inv].tocsc()
        out.data %= p
        out.eliminate_zeros()
        self._sigma[d] = out
        # keep a rolling window; older degrees are cheap to rebuild if needed
        self._sigma.pop(d - 2, None)
        return out

    def delta_matrix(self, d):
        """delta = sigma - identity on the degree-d piece."""
        S = self.sigma_matrix(d).copy()
        S = (S - sp.identity(S.shape[0], dtype=np.int64, format="csc"))
        S.data %= self.rep.p
        S.eliminate_zeros()
        return S
