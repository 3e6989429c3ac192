"""Module structure of the coinvariants over the group ring.

The group acts on the quotient by the Hilbert ideal; each homogeneous
component is a direct sum of Jordan blocks V_1, ..., V_p read off from
the rank sequence of delta in the standard-monomial basis.  The weight
filtration refines this: delta strictly drops the weight of an isobaric
class, and its weight-graded part is the operator delta_bar whose
iterates have closed forms used to pin down the decompositions.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .groebner import normal_form
from .hilbert import hilbert_ideal
from .jordan import jordan_type_from_ranks
from .poly import Poly, grevlex_key


@dataclass
class GradedAction:
    """delta on one homogeneous component of the coinvariants."""
    degree: int
    basis: list                 # standard monomials, decreasing grevlex
    matrix: np.ndarray          # column j = coordinates of delta(basis[j])

    @property
    def dimension(self):
        return len(self.basis)


def graded_action(rep, H, d):
    """Matrix of delta on the degree-d standard monomials.

    Images are computed by lifting each basis monomial, applying delta in
    the polynomial ring, and reducing against the Hilbert-ideal basis.
    The matrix is checked nilpotent of index at most p.
    """
    if d > H.top_degree:
        raise ValueError(f"degree {d} exceeds the top degree {H.top_degree}")
    basis = list(H.quotient.by_degree[d])
    index = {m: i for i, m in enumerate(basis)}
    n = len(basis)
    M = np.zeros((n, n), dtype=np.int64)
    ring = rep.ring
    for j, mon in enumerate(basis):
        img = normal_form(rep.delta(Poly(ring, {mon: 1})), H.gb.gens)
        for e, c in img.terms.items():
            M[index[e], j] = c
    power = M.copy()
    for _ in range(rep.p - 1):
        if not power.any():
            break
        power = linalg.matmul_modp(power.astype(np.float64),
                                   M.astype(np.float64), rep.p).astype(np.int64)
    if power.any():
        raise AssertionError("delta is not nilpotent of index <= p on the "
                             "quotient: upstream basis is wrong")
    return GradedAction(degree=d, basis=basis, matrix=M)


def jordan_type(action, p):
    """Multiplicities {k: m_k} of the indecomposable summands V_k."""
    M = action.matrix.astype(np.float64) % p
    dim = M.shape[0]
    ranks = [dim]
    power = M
    while ranks[-1] != 0:
        ranks.append(linalg.rank(power, p))
        if ranks[-1] == 0:
            break
        power = linalg.matmul_modp(power, M, p)
    mults = jordan_type_from_ranks(ranks)
    if sum(k * m for k, m in mults.items()) != dim:
        raise AssertionError("Jordan multiplicities do not account for the "
                             "whole component")
    return mults


def fixed_subspace(rep, action):
    """Echelonized basis of ker(delta) on the component, as coinvariants."""
    K = linalg.nullspace(action.matrix, rep.p)
    out = []
    for row in K:
        terms = {action.basis[i]: int(row[i]) % rep.p
                 for i in np.nonzero(row)[0]}
        out.append(Poly(rep.ring, terms))
    return out


@dataclass
class DecompositionTable:
    """Indecomposable summand multiplicities per homogeneous degree."""
    rep: object
    by_degree: dict             # degree -> {k: multiplicity}

    def total_dimension(self):
        return sum(k * m for mults in self.by_degree.values()
                   for k, m in mults.items())

    def summands(self, d):
        return self.by_degree[d]


def decompose(rep, H=None):
    """Full decomposition table of the coinvariants, degree by degree.

    Checks the socle count (number of summands = kernel dimension) and
    total-dimension conservation against the Hilbert series.
    """
    if H is None:
        H = hilbert_ideal(rep)
    table = {}
    for d in range(H.top_degree + 1):
        act = graded_action(rep, H, d)
        mults = jordan_type(act, rep.p)
        kernel_dim = act.dimension - linalg.rank(act.matrix, rep.p)
        if sum(mults.values()) != kernel_dim:
            raise AssertionError("summand count differs from the socle "
                                 f"dimension in degree {d}")
        table[d] = mults
    result = DecompositionTable(rep=rep, by_degree=table)
    if result.total_dimension() != H.quotient.dimension:
        raise AssertionError("decomposition loses dimensions")
    return result


def decompose_multidegree(rep, H=None):
    """Decomposition refined over the per-block multidegree.

    Only meaningful for decomposable representations, where the Hilbert
    ideal is multihomogeneous and delta preserves the multidegree.
    """
    if H is None:
        H = hilbert_ideal(rep)
    groups = {}
    for d in range(H.top_degree + 1):
        act = graded_action(rep, H, d)
        index = {m: i for i, m in enumerate(act.basis)}
        comp = {}
        for m in act.basis:
            comp.setdefault(rep.block_multidegree(m), []).append(m)
        for mdeg, mons in comp.items():
            sel = [index[m] for m in mons]
            sub = act.matrix[np.ix_(sel, sel)]
            # delta must not leak outside the multidegree component
            other = [i for i in range(act.dimension) if i not in set(sel)]
            if other and act.matrix[np.ix_(other, sel)].any():
                raise AssertionError("delta does not preserve multidegree")
            sub_action = GradedAction(degree=d, basis=mons, matrix=sub)
            groups[mdeg] = jordan_type(sub_action, rep.p)
    return groups


# -- the weight filtration and its graded operator --------------------------


def weight_of(rep, f):
    """Common weight of an isobaric coinvariant class."""
    weights = f.weights()
    if len(weights) != 1:
        raise ValueError(f"class is not isobaric: weights {sorted(weights)}")
    return next(iter(weights))


def delta_bar(rep, H, f):
    """The weight-drop-one part of delta on an isobaric coinvariant class.

    f is a combination of standard monomials of one weight m; the result
    keeps the terms of weight exactly m - 1 in NF(delta(lift f)).
    """
    if f.is_zero():
        return f
    m = weight_of(rep, f)
    img = normal_form(rep.delta(f), H.gb.gens)
    return img.weight_part(m - 1)


def delta_bar_power(rep, H, f, k):
    for _ in range(k):
        f = delta_bar(rep, H, f)
        if f.is_zero():
            break
    return f


def _falling(field, j, k):
    """j!/(j-k)! as a residue (j < p in all uses here)."""
    return field.falling(j, k)


def _nf_of_terms(rep, H, terms):
    """Class of a formula-side combination, dropping zero coefficients."""
    ring = rep.ring
    clean = [(c, e) for c, e in terms if c % rep.p]
    for c, e in clean:
        if any(x < 0 for x in e):
            raise AssertionError(f"formula produced a negative exponent: {e}")
    return normal_form(ring.from_terms(clean), H.gb.gens)


def verify_power_formulas_v4(p):
    """Iterated delta_bar on x3^i x4^j against its closed form.

    delta_bar^k(x3^i x4^j) = (j!/(j-k)!) x3^(i+k) x4^(j-k)
      + (j!/(j-k+1)!) (ik + C(k,2)) x2 x3^(i+k-2) x4^(j-k+1), for j >= k.
    Returns (label, ok) pairs over all standard starting monomials.
    """
    from .rep import get_rep
    rep = get_rep(p, (4,))
    H = hilbert_ideal(rep)
    field = rep.field
    ring = rep.ring
    out = []
    for i in range(p - 1):
        for j in range(1, p):
            f = ring.monomial((0, 0, i, j))
            cur = Poly(ring, dict(f.terms))
            for k in range(1, j + 1):
                cur = delta_bar(rep, H, cur)
                terms = [(_falling(field, j, k), (0, 0, i + k, j - k))]
                c2 = field.mul(_falling(field, j, k - 1),
                               field.el(i * k + k * (k - 1) // 2))
                if c2:
                    terms.append((c2, (0, 1, i + k - 2, j - k + 1)))
                ok = cur == _nf_of_terms(rep, H, terms)
                out.append((f"v4 power formula i={i} j={j} k={k}", ok))
    return out


def verify_power_formulas_v5(p):
    """The V5 closed forms for iterated delta_bar, over full stated ranges.

    Covers delta_bar^k of x3 x4^i x5^j (with its recursive correction
    term), of x4^i x5^j (with the coefficient quartet a, b, c, d), the
    collapse delta_bar^d(x3 x5^(d-1)) = d d! x2 x4^(d-1), and the two
    x5^d socle formulas with denominators 12.
    """
    from .rep import get_rep
    rep = get_rep(p, (5,))
    H = hilbert_ideal(rep)
    field = rep.field
    ring = rep.ring
    out = []

    # delta_bar^k(x3 x4^i x5^j), recursive c_k correction at k+i = 3
    for i in range(p - 3):
        for j in range(1, p):
            cur = ring.monomial((0, 0, 1, i, j))
            for k in range(1, j + 1):
                c_k = 0
                if k + i == 3:
                    c_k = cur.coeff((0, 1, 0, i + k - 2, j - k + 2))
                cur = delta_bar(rep, H, cur)
                terms = [(_falling(field, j, k), (0, 0, 1, k + i, j - k))]
                c2 = field.mul(_falling(field, j, k - 1),
                               field.el(2 * i * k + k * k))
                if c2:
                    terms.append((c2, (0, 1, 0, k + i - 1, j - k + 1)))
                if c_k:
                    terms.append((c_k, (0, 1, 1, 0, j - k + 2)))
                ok = cur == _nf_of_terms(rep, H, terms)
                out.append((f"v5 x3-power formula i={i} j={j} k={k}", ok))

    # delta_bar^k(x4^i x5^j) with the a, b, c, d coefficient quartet
    def c_coeff(i, j, k):
        poly = field.el(2 * i * i) \
            + field.mul(field.el(2 * k - 5), field.el(i)) \
            + field.rational((k - 2) * (3 * k - 7), 6)
        return field.mul(field.mul(_falling(field, j, k - 2),
                                   field.binomial(k, 2)), field.el(poly))

    for i in range(p - 1):
        for j in range(1, p):
            cur = ring.monomial((0, 0, 0, i, j))
            for k in range(1, j + 1):
                cur = delta_bar(rep, H, cur)
                terms = [(_falling(field, j, k), (0, 0, 0, i + k, j - k))]
                b = field.mul(_falling(field, j, k - 1),
                              field.el(i * k + k * (k - 1) // 2))
                if b:
                    terms.append((b, (0, 0, 1, i + k - 2, j - k + 1)))
                c = c_coeff(i, j, k)
                if c:
                    terms.append((c, (0, 1, 0, i + k - 3, j - k + 2)))
                if i + k == 5:
                    d_co = c_coeff(i, j, k - 1)
                    if d_co:
                        terms.append((d_co, (0, 1, 1, 0, i + j - 2)))
                ok = cur == _nf_of_terms(rep, H, terms)
                out.append((f"v5 x4-power formula i={i} j={j} k={k}", ok))

    # collapse: delta_bar^d(x3 x5^(d-1)) = d (d!) x2 x4^(d-1), 3 < d <= p-4
    for d in range(4, p - 3):
        lhs = delta_bar_power(rep, H, ring.monomial((0, 0, 1, 0, d - 1)), d)
        coeff = field.mul(field.el(d), field.factorial(d))
        ok = lhs == _nf_of_terms(rep, H, [(coeff, (0, 1, 0, d - 1, 0))])
        out.append((f"v5 collapse d={d}", ok))

    # socle formulas for x5^d
    for d in range(5, p - 2):
        lhs = delta_bar_power(rep, H, ring.monomial((0, 0, 0, 0, d)), d + 1)
        lead = field.mul(field.el(d), field.factorial(d + 1))
        lead = field.mul(lead, field.inv(field.el(12)))
        terms = [(field.mul(lead, field.el(6)), (0, 0, 1, d - 1, 0)),
                 (field.mul(lead, field.el((d - 1) * (3 * d - 4))),
                  (0, 1, 0, d - 2, 1))]
        ok = lhs == _nf_of_terms(rep, H, terms)
        out.append((f"v5 socle formula one d={d}", ok))
    for d in range(4, p - 3):
        lhs = delta_bar_power(rep, H, ring.monomial((0, 0, 0, 0, d)), d + 2)
        coeff = field.rational(d * (3 * d - 1), 12)
        coeff = field.mul(coeff, field.factorial(d + 2))
        ok = lhs == _nf_of_terms(rep, H, [(coeff, (0, 1, 0, d - 1, 0))])
        out.append((f"v5 socle formula two d={d}", ok))
    return out


def weight_filtration_violations(rep, H):
    """Standard monomials whose delta image fails the weight drop.

    Returns the (monomial, offending weight) pairs where some term of
    NF(delta(lift)) has weight >= the monomial's weight; the filtration
    property says this list is empty.
    """
    bad = []
    ring = rep.ring
    for d in range(H.top_degree + 1):
        for mon in H.quotient.by_degree[d]:
            w = ring.weight(mon)
            img = normal_form(rep.delta(Poly(ring, {mon: 1})), H.gb.gens)
            for e in img.terms:
                if ring.weight(e) >= w:
                    bad.append((mon, ring.weight(e)))
    return bad
