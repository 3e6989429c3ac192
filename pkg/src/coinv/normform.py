"""Closed-form expansion of the orbit product of the top V_3 variable.

The norm N(Z) = prod over m in F_p of (Z + mY + C(m,2)X) expands as
A_0 + A_1 X + ... + A_p X^p with A_i in F[Y, Z].  This module evaluates
the closed forms for the coefficients and provides the brute-force
subset-sum quantities they are built from, each computable by direct
enumeration over subsets of F_p, so the closed forms can be checked
independently of the polynomial arithmetic.
"""

from itertools import combinations

from .ff import PrimeField
from .rep import RepSpec

_ENUM_LIMIT = 13


def _check_enumerable(p):
    if p > _ENUM_LIMIT:
        raise ValueError(
            f"subset enumeration is limited to p <= {_ENUM_LIMIT}, got {p}")


def elementary_symmetric(field, values, k):
    """e_k of a collection of residues, by direct expansion."""
    if k == 0:
        return 1
    total = 0
    for sub in combinations(values, k):
        prod = 1
        for v in sub:
            prod = field.mul(prod, v)
        total = field.add(total, prod)
    return total


def b_kj(p, k, j, t):
    """Subset sum b_{k,j}(t): brute-force evaluation over subsets of F_p.

    Sums t * pi(alpha) * e_j(alpha + {t}) over (k-1)-subsets alpha of F_p
    avoiding t.
    """
    _check_enumerable(p)
    field = PrimeField(p)
    if not 0 <= j <= k <= p:
        raise ValueError(f"need 0 <= j <= k <= p, got k={k}, j={j}")
    t = field.el(t)
    others = [x for x in range(p) if x != t]
    total = 0
    for alpha in combinations(others, k - 1):
        pi = 1
        for v in alpha:
            pi = field.mul(pi, v)
        term = field.mul(field.mul(t, pi),
                         elementary_symmetric(field, alpha + (t,), j))
        total = field.add(total, term)
    return total


def d_kj(p, k, j):
    """Subset sum d_{k,j} = sum over k-subsets of pi(alpha) e_j(alpha)."""
    _check_enumerable(p)
    field = PrimeField(p)
    if not 0 <= j <= k <= p:
        raise ValueError(f"need 0 <= j <= k <= p, got k={k}, j={j}")
    total = 0
    for alpha in combinations(range(p), k):
        pi = 1
        for v in alpha:
            pi = field.mul(pi, v)
        total = field.add(total, field.mul(pi,
                          elementary_symmetric(field, alpha, j)))
    return total


def xi(p, i, k):
    """Coefficient of Z^k Y^(p-i-k) in A_i:
    (-1)^i / (2^i (p-k)) * C(p-2k+1, i-k+1) * C(p-k, k-1)."""
    if p == 2:
        raise ValueError("the closed form divides by powers of 2; p must be odd")
    field = PrimeField(p)
    upper = i + 1 if i <= (p - 1) // 2 else p - i
    if not (1 <= i <= p - 2 and 1 <= k <= upper):
        raise ValueError(f"index (i={i}, k={k}) outside the stated ranges")
    sign = field.el((-1) ** i)
    denom = field.mul(field.pow(2, i), field.el(p - k))
    return field.mul(field.mul(sign, field.inv(denom)),
                     field.mul(field.binomial(p - 2 * k + 1, i - k + 1),
                               field.binomial(p - k, k - 1)))


def A_bc(p, b, c):
    """Coefficient of X^c Y^b Z^(p-c-b) in N(Z), as a total function.

    Zero whenever no integer j with 0 <= j <= c and b+c+j = p-1 exists,
    with the pure-Y^b (c = 0) and X^(p-1) (c = p-1) columns handled by
    their special cases.
    """
    field = PrimeField(p)
    if b < 0 or c < 0 or b + c > p:
        raise ValueError(f"need b, c >= 0 with b + c <= p, got ({b}, {c})")
    if b + c == p:
        return 0
    if c == 0:
        if b == 0:
            return 1
        if b == p - 1:
            return field.el(-1)
        return 0
    if c == p - 1:
        return 0
    j = p - 1 - b - c
    if not 0 <= j <= c:
        return 0
    num = field.el((-1) ** (b + 2 * c - j))
    num = field.mul(num, field.binomial(b + c - j, c - j))
    num = field.mul(num, field.binomial(b + c, j))
    denom = field.mul(field.pow(2, c), field.el(b + c))
    return field.mul(num, field.inv(denom))


def closed_form_norm_v3(p):
    """N(Z) for V_3 assembled from the closed-form coefficients.

    Returns a polynomial in the V_3 ring (variables X < Y < Z) equal,
    term for term, to the orbit product of Z.
    """
    if p == 2:
        raise ValueError("the closed form divides by powers of 2; p must be odd")
    rep = RepSpec(p, (3,), names=["X", "Y", "Z"])
    ring = rep.ring
    terms = []
    # A_0 = Z^p - Z Y^(p-1)
    terms.append((1, (0, 0, p)))
    terms.append((ring.field.el(-1), (0, p - 1, 1)))
    for i in range(1, p - 1):
        upper = i + 1 if i <= (p - 1) // 2 else p - i
        for k in range(1, upper + 1):
            coeff = xi(p, i, k)
            if coeff:
                terms.append((coeff, (i, p - i - k, k)))
    return ring.from_terms(terms)


def norm_v3_by_orbit_product(p):
    """The same norm via the direct p-factor orbit product (the oracle)."""
    rep = RepSpec(p, (3,), names=["X", "Y", "Z"])
    return rep.norm(rep.ring.variable(2))
