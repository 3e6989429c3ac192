"""Buchberger's algorithm over F_p with grevlex, and quotient-basis tools.

Generators are kept monic and auto-reduced, so the reduced basis of an
ideal is canonical for the fixed order and equality of ideals is equality
of bases.
"""

import numpy as np

from .poly import (Poly, grevlex_key, mon_degree, mon_div, mon_divides,
                   mon_lcm, mon_mul)


class InfiniteQuotientError(Exception):
    """Raised when a quotient has no finite monomial basis."""

    def __init__(self, variable):
        self.variable = variable
        super().__init__(
            f"quotient is infinite-dimensional: no pure power of "
            f"{variable} among the leading monomials")


def normal_form(f, gens):
    """Remainder of f under the division algorithm against gens.

    No term of the result is divisible by any leading monomial of gens;
    the result is the canonical normal form whenever gens is a Groebner
    basis.  Deterministic: the divisor picked is the first match in list
    order for the currently largest reducible term.
    """
    gens = [g for g in gens if not g.is_zero()]
    if f.is_zero() or not gens:
        return f
    ring = f.ring
    field = ring.field
    lead = [(g.lm(), field.inv(g.lc()), g) for g in gens]
    work = dict(f.terms)
    out = {}
    while work:
        m = max(work, key=grevlex_key)
        c = work.pop(m)
        hit = None
        for lm, lcinv, g in lead:
            if mon_divides(lm, m):
                hit = (lm, lcinv, g)
                break
        if hit is None:
            out[m] = c
            continue
        lm, lcinv, g = hit
        shift = mon_div(m, lm)
        factor = (c * lcinv) % ring.p
        for e, ce in g.terms.items():
            if e == lm:
                continue
            tgt = mon_mul(e, shift)
            v = (work.get(tgt, 0) - factor * ce) % ring.p
            if v:
                work[tgt] = v
            else:
                work.pop(tgt, None)
    return Poly(ring, out)


def spoly(f, g):
    """The S-polynomial of two monic polynomials."""
    lf, lg = f.lm(), g.lm()
    l = mon_lcm(lf, lg)
    return f.term_mul(mon_div(l, lf), 1) - g.term_mul(mon_div(l, lg), 1)


def _buchberger(gens):
    """Plain Buchberger with the normal pair-selection strategy."""
    G = [g.monic() for g in gens if not g.is_zero()]
    if not G:
        return G
    pairs = {(i, j) for i in range(len(G)) for j in range(i)}
    while pairs:
        i, j = min(pairs, key=lambda ij: (
            mon_degree(mon_lcm(G[ij[0]].lm(), G[ij[1]].lm())),
            grevlex_key(mon_lcm(G[ij[0]].lm(), G[ij[1]].lm()))))
        pairs.discard((i, j))
        lf, lg = G[i].lm(), G[j].lm()
        if mon_lcm(lf, lg) == mon_mul(lf, lg):
            continue  # coprime leading monomials reduce to zero
        r = normal_form(spoly(G[i], G[j]), G)
        if not r.is_zero():
            G.append(r.monic())
            k = len(G) - 1
            pairs.update((k, t) for t in range(k))
    return G


def _autoreduce(G):
    """Minimalize and tail-reduce a Groebner basis: the reduced basis."""
    # ascending grevlex order of leading monomials; a divisor always sorts
    # first, so dropping against already-kept generators is enough
    G = sorted((g.monic() for g in G if not g.is_zero()),
               key=lambda g: grevlex_key(g.lm()))
    minimal = []
    for g in G:
        if not any(mon_divides(h.lm(), g.lm()) for h in minimal):
            minimal.append(g)
    # tail reduction to a fixpoint
    changed = True
    while changed:
        changed = False
        for i in range(len(minimal)):
            others = minimal[:i] + minimal[i + 1:]
            r = normal_form(minimal[i], others)
            if r != minimal[i]:
                changed = True
                if r.is_zero():
                    minimal.pop(i)
                else:
                    minimal[i] = r.monic()
                break
    minimal.sort(key=lambda g: grevlex_key(g.lm()))
    return minimal


class GroebnerBasis:
    """A reduced Groebner basis with its ring and fixed grevlex order."""

    def __init__(self, ring, gens, _trusted=False):
        self.ring = ring
        if _trusted:
            self.gens = list(gens)
        else:
            self.gens = _autoreduce(_buchberger(list(gens)))
        self._lms = [g.lm() for g in self.gens]

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.ring == other.ring
                and self.gens == other.gens)

    def __repr__(self):
        return f"GroebnerBasis({[str(g) for g in self.gens]})"

    def leading_monomials(self):
        return list(self._lms)

    def normal_form(self, f):
        return normal_form(f, self.gens)

    def contains(self, f):
        return self.normal_form(f).is_zero()

    def max_generator_degree(self):
        return max((g.degree() for g in self.gens), default=0)

    def is_monomial_basis(self):
        return all(len(g.terms) == 1 for g in self.gens)

    def assert_spolys_reduce(self):
        for i in range(len(self.gens)):
            for j in range(i):
                r = normal_form(spoly(self.gens[i], self.gens[j]), self.gens)
                if not r.is_zero():
                    raise AssertionError(
                        f"S-polynomial of generators {i},{j} does not reduce "
                        f"to zero: basis is not a Groebner basis")


def reduced_gb(gens, ring=None):
    """The canonical reduced Groebner basis of the ideal generated by gens.

    The Buchberger postcondition (every S-polynomial reduces to zero) is
    asserted on the output of every run.
    """
    gens = [g for g in gens if not g.is_zero()]
    if ring is None:
        if not gens:
            raise ValueError("need a ring for the empty generator list")
        ring = gens[0].ring
    gb = GroebnerBasis(ring, gens)
    gb.assert_spolys_reduce()
    return gb


def ideal_equal(gens_a, gens_b, ring=None):
    """True iff the two generator lists generate the same ideal."""
    a = [g for g in gens_a if not g.is_zero()]
    b = [g for g in gens_b if not g.is_zero()]
    if not a and not b:
        return True
    if ring is None:
        ring = (a or b)[0].ring
    return reduced_gb(a, ring).gens == reduced_gb(b, ring).gens


class QuotientBasis:
    """Standard monomials of a finite quotient, grouped by total degree."""

    def __init__(self, ring, by_degree):
        self.ring = ring
        self.by_degree = by_degree        # list of lists of exponent tuples
        self.top_degree = len(by_degree) - 1
        self.dimension = sum(len(l) for l in by_degree)

    def hilbert_series(self):
        return [len(l) for l in self.by_degree]

    def monomials(self):
        for mons in self.by_degree:
            yield from mons


def standard_monomials(gb):
    """The monomial basis of ring/ideal, per degree, decreasing grevlex.

    Standard monomials are downward closed, so the frontier search stops at
    the first empty degree.  Raises InfiniteQuotientError (naming a culprit
    variable) when some variable has no pure power among the leading
    monomials.
    """
    ring = gb.ring
    lms = gb.leading_monomials()
    zero_mon = (0,) * ring.n
    if zero_mon in lms:
        return QuotientBasis(ring, [])
    for i in range(ring.n):
        if not any(all(e == 0 for k, e in enumerate(lm) if k != i) and lm[i] > 0
                   for lm in lms):
            raise InfiniteQuotientError(ring.names[i])

    def is_standard(mon):
        return not any(mon_divides(lm, mon) for lm in lms)

    by_degree = [[zero_mon]]
    frontier = [zero_mon]
    while frontier:
        nxt = set()
        for mon in frontier:
            for i in range(ring.n):
                e = list(mon)
                e[i] += 1
                cand = tuple(e)
                if cand not in nxt and is_standard(cand):
                    nxt.add(cand)
        if not nxt:
            break
        frontier = sorted(nxt, key=grevlex_key, reverse=True)
        by_degree.append(frontier)
    return QuotientBasis(ring, by_degree)


def hilbert_series(qb):
    """Coefficient list of the quotient's Hilbert series."""
    return qb.hilbert_series()


def degree_projection(gb, mons_desc):
    """Vectorized normal-form data on a rewriting-closed monomial set.

    mons_desc must be sorted in decreasing grevlex order and closed under
    the tail rewriting of gb (a full graded piece is; so is a multidegree
    component when the basis is multihomogeneous).  Returns
    (std_pos, nonstd_pos, P) where P[k] holds the standard-monomial
    coordinates of the normal form of the k-th nonstandard monomial.
    """
    ring = gb.ring
    lead = [(g.lm(), g) for g in gb.gens]
    index = {m: i for i, m in enumerate(mons_desc)}
    std_pos = []
    nonstd_pos = []
    for i, m in enumerate(mons_desc):
        if any(mon_divides(lm, m) for lm, _ in lead):
            nonstd_pos.append(i)
        else:
            std_pos.append(i)
    std_local = {pos: k for k, pos in enumerate(std_pos)}
    nonstd_local = {pos: k for k, pos in enumerate(nonstd_pos)}
    P = np.zeros((len(nonstd_pos), len(std_pos)), dtype=np.float64)
    p = ring.p
    # smallest monomials first: every tail monomial is already resolved
    for pos in reversed(nonstd_pos):
        m = mons_desc[pos]
        row = P[nonstd_local[pos]]
        g = next(g for lm, g in lead if mon_divides(lm, m))
        lm = g.lm()
        shift = mon_div(m, lm)
        for e, c in g.terms.items():
            if e == lm:
                continue
            t = mon_mul(e, shift)
            ti = index[t]
            if ti in std_local:
                row[std_local[ti]] -= c
            else:
                row -= c * P[nonstd_local[ti]]
        row %= p
    return std_pos, nonstd_pos, P
