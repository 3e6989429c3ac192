"""The Hilbert ideal: degree-wise invariants, assembly, and certification.

Invariants in a fixed degree are the kernel of delta on the graded piece.
For a single Jordan block the kernel comes from a dense elimination; for a
direct sum the graded piece splits over multidegrees into tensor products
of block pieces, and each component socle is assembled from cached Jordan
data of small tensor pairs, never eliminating the full component.

The computed ideal is certified equal to the Hilbert ideal by a saturation
argument: once the quotient is finite with top degree T, checking that the
invariants in degrees dmax+1..T reduce to zero suffices, because every
polynomial in degree > T already lies in the ideal.
"""

from dataclasses import dataclass, field

import numpy as np

from . import jordan, linalg
from .groebner import (GroebnerBasis, InfiniteQuotientError, QuotientBasis,
                       degree_projection, reduced_gb, standard_monomials)
from .poly import Poly, grevlex_key
from .rep import RepSpec, get_rep


_BLOCK_PIECE_CACHE = {}


def _block_piece(p, n, d):
    """Cached Jordan datum of delta on the degree-d piece of one V_n block."""
    key = (p, n, d)
    if key not in _BLOCK_PIECE_CACHE:
        block = get_rep(p, (n,))
        D = block.degree_action().delta_matrix(d).toarray()
        _BLOCK_PIECE_CACHE[key] = jordan.jordan_basis(D, p)
    return _BLOCK_PIECE_CACHE[key]


def compositions(total, parts):
    """All ways to write total as an ordered sum of `parts` nonnegatives."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def component_monomials(rep, mdeg):
    """Exponent tuples of the multidegree component, in tensor index order.

    The flat index of (m_1, ..., m_s) is nested C-order over the per-block
    monomial lists, matching the Jordan fold layout.
    """
    block_rings = [get_rep(rep.p, (n,)).ring for n in rep.blocks]
    lists = [r.monomials_of_degree(d) for r, d in zip(block_rings, mdeg)]
    out = []
    def rec(prefix, k):
        if k == len(lists):
            out.append(sum(prefix, ()))
            return
        for mon in lists[k]:
            rec(prefix + (mon,), k + 1)
    rec((), 0)
    return out


def component_socle_data(rep, mdeg):
    """(exps, data) for one multidegree component; data feeds jordan folds."""
    data = [_block_piece(rep.p, n, d) for n, d in zip(rep.blocks, mdeg)]
    return component_monomials(rep, mdeg), data


def invariant_components(rep, d):
    """Yield (exps, socle_rows) per component of the degree-d invariants."""
    s = len(rep.blocks)
    if s == 1:
        ring = rep.ring
        D = rep.degree_action().delta_matrix(d)
        K = linalg.nullspace(D.toarray(), rep.p)
        yield list(ring.monomials_of_degree(d)), K
        return
    for mdeg in compositions(d, s):
        exps, data = component_socle_data(rep, mdeg)
        socle = jordan.fold_socle(data, rep.p)
        yield exps, socle


@dataclass
class InvariantSpace:
    """Echelonized basis of the invariants in one degree."""
    degree: int
    basis: list
    dimension: int = field(init=False)

    def __post_init__(self):
        self.dimension = len(self.basis)


def invariants_in_degree(rep, d):
    """Basis of ker(delta) on the degree-d graded piece, echelonized.

    Rows are reduced over F_p with grevlex-ordered pivot columns, so the
    result is deterministic.
    """
    if d < 1:
        raise ValueError("invariants are collected in positive degrees")
    pieces = []
    for exps, socle in invariant_components(rep, d):
        if socle.shape[0] == 0:
            continue
        order = sorted(range(len(exps)),
                       key=lambda i: grevlex_key(exps[i]), reverse=True)
        sorted_exps = [exps[i] for i in order]
        R, _ = linalg.rref(socle[:, order], rep.p)
        for row in R:
            pieces.append(_row_to_poly(rep.ring, sorted_exps, row))
    pieces.sort(key=lambda f: grevlex_key(f.lm()), reverse=True)
    return InvariantSpace(degree=d, basis=pieces)


def _row_to_poly(ring, exps, row):
    terms = {}
    for i in np.nonzero(row)[0]:
        terms[exps[int(i)]] = int(row[int(i)]) % ring.p
    return Poly(ring, terms)


@dataclass
class HilbertIdealResult:
    """Reduced Groebner basis of the Hilbert ideal plus its certificate."""
    rep: RepSpec
    gb: GroebnerBasis
    dmax_used: int
    saturation_certificate: list   # (degree, invariants checked, ok)
    quotient: QuotientBasis

    @property
    def top_degree(self):
        return self.quotient.top_degree

    def max_generator_degree(self):
        return self.gb.max_generator_degree()


def _is_multihomogeneous(rep, gb):
    return all(len({rep.block_multidegree(e) for e in g.terms}) == 1
               for g in gb.gens)


def _filter_new_invariants(rep, gb, exps, socle):
    """Rows of socle whose normal form against gb is nonzero, as polys.

    Uses the vectorized projection so that the common all-reduce-to-zero
    case costs one small matrix product.
    """
    ring = rep.ring
    order = sorted(range(len(exps)), key=lambda i: grevlex_key(exps[i]),
                   reverse=True)
    sorted_exps = [exps[i] for i in order]
    S = np.asarray(socle, dtype=np.float64)[:, order] % rep.p
    std_pos, nonstd_pos, P = degree_projection(gb, sorted_exps)
    img = S[:, std_pos]
    if nonstd_pos:
        img = (img + S[:, nonstd_pos] @ P) % rep.p
    out = []
    for k in np.nonzero(img.any(axis=1))[0]:
        out.append(_row_to_poly(ring, sorted_exps, S[int(k)]))
    return out


def _certify_degree(rep, result_gb, qb, d):
    """Check that every degree-d invariant reduces to zero against the basis.

    Returns (ok, number of invariant vectors checked).
    """
    p = rep.p
    s = len(rep.blocks)
    if s == 1:
        mons = rep.ring.monomials_of_degree(d)
        std_pos, nonstd_pos, P = degree_projection(result_gb, mons)
        if not std_pos:
            return True, 0
        D = rep.degree_action().delta_matrix(d)
        K = linalg.nullspace(D.toarray(), p)
        img = K[:, std_pos].astype(np.float64)
        if nonstd_pos:
            img = (img + linalg.matmul_modp(
                K[:, nonstd_pos].astype(np.float64), P, p)) % p
        return not img.any(), K.shape[0]
    if not _is_multihomogeneous(rep, result_gb):
        raise NotImplementedError(
            "certificate for a non-multihomogeneous basis on a decomposable "
            "representation is not supported")
    std_by_mdeg = {}
    for mon in (qb.by_degree[d] if d <= qb.top_degree else []):
        std_by_mdeg.setdefault(rep.block_multidegree(mon), []).append(mon)
    checked = 0
    monomial_ideal = result_gb.is_monomial_basis()
    for mdeg, std_mons in std_by_mdeg.items():
        exps, data = component_socle_data(rep, mdeg)
        index = {m: i for i, m in enumerate(exps)}
        if monomial_ideal:
            # the projection keeps only standard coordinates
            targets = [index[m] for m in std_mons]
            vals = jordan.fold_socle_values(data, p, targets)
            checked += vals.shape[0]
            if vals.any():
                return False, checked
        else:
            socle = jordan.fold_socle(data, p)
            checked += socle.shape[0]
            if _filter_new_invariants(rep, result_gb, exps, socle):
                return False, checked
    return True, checked


def hilbert_ideal(rep, dmax=None, ceiling=None):
    """Compute and certify the Hilbert ideal of the representation.

    Ingests the invariants of degrees 1..dmax (default p) into a reduced
    Groebner basis, skipping invariants that already reduce to zero.  The
    result is accepted only with a saturation certificate; on certificate
    failure dmax is raised to the failing degree and the computation
    repeats.  An infinite quotient escalates dmax up to the ceiling
    (default 4p) before giving up.
    """
    p = rep.p
    if dmax is None:
        dmax = p
    if dmax < 1:
        raise ValueError("dmax must be positive")
    if ceiling is None:
        ceiling = max(4 * p, dmax)
    key = (rep.p, rep.blocks, rep.ring.names, dmax, ceiling)
    if key in _HILBERT_CACHE:
        return _HILBERT_CACHE[key]
    while True:
        gb = _ingest_up_to(rep, dmax)
        try:
            qb = standard_monomials(gb)
        except InfiniteQuotientError:
            if dmax < ceiling:
                dmax += 1
                continue
            raise
        failed = None
        certificate = []
        for d in range(dmax + 1, qb.top_degree + 1):
            ok, n_checked = _certify_degree(rep, gb, qb, d)
            certificate.append((d, n_checked, ok))
            if not ok:
                failed = d
                break
        if failed is None:
            result = HilbertIdealResult(rep, gb, dmax, certificate, qb)
            _HILBERT_CACHE[key] = result
            return result
        dmax = failed


_HILBERT_CACHE = {}


def _ingest_up_to(rep, dmax):
    """Reduced basis of the ideal of all invariants in degrees 1..dmax."""
    ring = rep.ring
    gens = []
    gb = GroebnerBasis(ring, [], _trusted=True)
    for d in range(1, dmax + 1):
        for exps, socle in invariant_components(rep, d):
            if socle.shape[0] == 0:
                continue
            while True:
                new = _filter_new_invariants(rep, gb, exps, socle)
                if not new:
                    break
                gens.append(new[0].monic())
                gb = reduced_gb(gens, ring)
    return gb
