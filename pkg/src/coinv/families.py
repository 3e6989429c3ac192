"""Published generator families and reference Groebner bases.

These are the explicit constructions attached to the representations
whose invariant rings are understood: the bilinear invariants and norms
of sums of V2/V3 blocks, the transfer families for V4 and V5, and the
reference reduced bases for their Hilbert ideals.  The reference data is
used to cross-validate the generic nullspace/Buchberger pipeline; it is
never fed back into it.
"""

from dataclasses import dataclass, field

from .groebner import GroebnerBasis, normal_form, reduced_gb
from .poly import grevlex_key


def _v2v3_split(rep):
    m = sum(1 for n in rep.blocks if n == 2)
    l = len(rep.blocks) - m
    if rep.blocks != (2,) * m + (3,) * l:
        return None
    return m, l


def reference_gb(rep):
    """The reduced Groebner basis known for this representation, or None.

    Covered: mV2 (any p), mV2 + lV3 (p > 2), V4 (p >= 5), V5 (p >= 5).
    The data is entered verbatim; uncovered shapes return None rather
    than a guess.
    """
    p = rep.p
    ring = rep.ring
    split = _v2v3_split(rep)
    gens = None
    if split is not None:
        m, l = split
        if l == 0:
            gens = []
            for b in range(1, m + 1):
                X = ring.variable(rep.var_index(b, 1))
                Y = ring.variable(rep.var_index(b, 2))
                gens += [X, Y ** p]
        elif p > 2:
            gens = []
            for b in range(1, m + 1):
                X = ring.variable(rep.var_index(b, 1))
                Y = ring.variable(rep.var_index(b, 2))
                gens += [X, Y ** p]
            for b in range(m + 1, m + l + 1):
                X = ring.variable(rep.var_index(b, 1))
                Z = ring.variable(rep.var_index(b, 3))
                gens.append(X)
                for b2 in range(b, m + l + 1):
                    Y1 = ring.variable(rep.var_index(b, 2))
                    Y2 = ring.variable(rep.var_index(b2, 2))
                    gens.append(Y1 * Y2)
                gens.append(Z ** p)
    elif rep.blocks == (4,) and p >= 5:
        x1, x2, x3, x4 = ring.gens()
        gens = [x1, x2 ** 2, x2 * x3 ** (p - 3), x3 ** (p - 1), x4 ** p]
    elif rep.blocks == (5,) and p >= 5:
        x1, x2, x3, x4, x5 = ring.gens()
        if p == 5:
            gens = [x1, x2 ** 2,
                    x3 ** 2 - 2 * x2 * x4 - x2 * x3,
                    x2 * x3 * x4,
                    x3 * x4 ** 2 + 2 * x2 * x4 ** 2,
                    x2 * x4 ** 3,
                    x4 ** 4,
                    x5 ** 5]
        else:
            gens = [x1, x2 ** 2,
                    x3 ** 2 - 2 * x2 * x4 - x2 * x3,
                    x2 * x3 * x4,
                    x2 * x4 ** (p - 4),
                    x3 * x4 ** (p - 3),
                    x4 ** (p - 1),
                    x5 ** p]
    if gens is None:
        return None
    gens = sorted((g.monic() for g in gens), key=lambda g: grevlex_key(g.lm()))
    return GroebnerBasis(ring, gens, _trusted=True)


@dataclass
class GeneratorFamily:
    """Constructible members of a published generating set."""
    rep: object
    generators: list            # (label, polynomial)
    omitted: list = field(default_factory=list)

    def polynomials(self):
        return [g for _, g in self.generators]


def invariant_generators(rep):
    """The published generating/ideal-generating family for rep.

    Every emitted element is checked to be invariant.  Members only known
    partially (their expansions are stated modulo smaller ideals) are
    omitted and listed in `omitted` instead of being guessed.
    """
    p = rep.p
    split = _v2v3_split(rep)
    if split is not None:
        fam = _v2v3_generators(rep, *split)
    elif rep.blocks == (4,) and p >= 5:
        fam = _v4_generators(rep)
    elif rep.blocks == (5,) and p >= 5:
        fam = _v5_generators(rep)
    else:
        raise ValueError(f"no published generating family for {rep}")
    for label, g in fam.generators:
        if not rep.delta(g).is_zero():
            raise AssertionError(f"emitted generator {label} is not invariant")
    return fam


def _divisor_exponents(bound):
    """All exponent tuples componentwise below `bound`."""
    out = [()]
    for b in bound:
        out = [t + (e,) for t in out for e in range(b + 1)]
    return out


def _v2v3_generators(rep, m, l):
    ring = rep.ring
    gens = []
    for b in range(1, m + 1):
        X = ring.variable(rep.var_index(b, 1))
        Y = ring.variable(rep.var_index(b, 2))
        gens.append((f"X{b}", X))
        gens.append((f"N(Y{b})", rep.norm(Y)))
    for b in range(m + 1, m + l + 1):
        X = ring.variable(rep.var_index(b, 1))
        Z = ring.variable(rep.var_index(b, 3))
        gens.append((f"X{b}", X))
        gens.append((f"N(Z{b})", rep.norm(Z)))
    for label, g in rep.bilinear_invariants():
        gens.append((label, g))
    # transfers of divisors of (Y_1 ... Y_m Z_(m+1) ... Z_(m+l))^(p-1)
    tops = [rep.var_index(b, 2) for b in range(1, m + 1)] + \
           [rep.var_index(b, 3) for b in range(m + 1, m + l + 1)]
    p = rep.p
    for exps in _divisor_exponents([p - 1] * len(tops)):
        if not any(exps):
            continue
        e = [0] * ring.n
        for var, k in zip(tops, exps):
            e[var] = k
        tr = rep.transfer(ring.monomial(e))
        if not tr.is_zero():
            name = "*".join(f"v{i}^{k}" for i, k in zip(tops, exps) if k)
            gens.append((f"Tr({name})", tr))
    return GeneratorFamily(rep, gens)


def _v4_generators(rep):
    ring = rep.ring
    p = rep.p
    x1, x2, x3, x4 = ring.gens()
    gens = [
        ("x1", x1),
        ("q2", x2 ** 2 - x1 * (x2 + 2 * x3)),
        ("q3", x2 ** 3 + x1 ** 2 * (3 * x4 - x2) - 3 * x1 * x2 * x3),
        ("N(x4)", rep.norm(x4)),
    ]
    if p % 3 == 1:
        lpar = (p - 1) // 3
        q = 2 * lpar + 1
    else:
        lpar = (p + 1) // 3
        q = 2 * lpar - 1
    for i in range(0, p - 1):
        gens.append((f"Tr(x3^{i}*x4^{p-1})",
                     rep.transfer(x3 ** i * x4 ** (p - 1))))
    for i in range(3, p - 1):
        gens.append((f"Tr(x3^{i}*x4^{p-2})",
                     rep.transfer(x3 ** i * x4 ** (p - 2))))
    for j in range(q, p - 1):
        gens.append((f"Tr(x4^{j})", rep.transfer(x4 ** j)))
    for j in range(2 * lpar - 1, p - 1):
        gens.append((f"Tr(x3^2*x4^{j})", rep.transfer(x3 ** 2 * x4 ** j)))
    return GeneratorFamily(rep, gens, omitted=[
        "degree-4 invariant with leading term x2^2*x3^2 "
        "(only its reduction modulo x1 is on record)"])


def _v5_generators(rep):
    ring = rep.ring
    p = rep.p
    x1, x2, x3, x4, x5 = ring.gens()
    gens = [
        ("x1", x1),
        ("q2", x2 ** 2 - x1 * (x2 + 2 * x3)),
        ("q3", x3 ** 2 - x2 * (x3 + 2 * x4) + x1 * (x3 + 3 * x4 + 2 * x5)),
        ("q4", x2 ** 3 + x1 ** 2 * (3 * x4 - x2) - 3 * x1 * x2 * x3),
        ("N(x5)", rep.norm(x5)),
        (f"Tr(x2*x3*x5^{(p-1)//2})",
         rep.transfer(x2 * x3 * x5 ** ((p - 1) // 2))),
    ]
    for i in range(0, p - 1):
        gens.append((f"Tr(x4^{i}*x5^{p-1})",
                     rep.transfer(x4 ** i * x5 ** (p - 1))))
        gens.append((f"Tr(x2*x4^{i}*x5^{p-1})",
                     rep.transfer(x2 * x4 ** i * x5 ** (p - 1))))
    for i in range(3, p - 1):
        gens.append((f"Tr(x4^{i}*x5^{p-2})",
                     rep.transfer(x4 ** i * x5 ** (p - 2))))
        gens.append((f"Tr(x2*x4^{i}*x5^{p-2})",
                     rep.transfer(x2 * x4 ** i * x5 ** (p - 2))))
    for i in range((p - 1) // 2, p - 1):
        gens.append((f"Tr(x4^2*x5^{i})", rep.transfer(x4 ** 2 * x5 ** i)))
        gens.append((f"Tr(x2*x4^2*x5^{i})",
                     rep.transfer(x2 * x4 ** 2 * x5 ** i)))
    for i in range((p + 1) // 2, p):
        gens.append((f"Tr(x5^{i})", rep.transfer(x5 ** i)))
    for i in range((p - 1) // 2, p - 1):
        gens.append((f"Tr(x2*x5^{i})", rep.transfer(x2 * x5 ** i)))
    return GeneratorFamily(rep, gens, omitted=[
        "cubic rational invariant with leading term 2*x3^3 "
        "(only its reduction modulo x1 is on record)"])


def transfer_divisor_checks(rep, gb=None):
    """Transfers of divisors of the top monomial product reduce to zero.

    For mV2 + lV3: every divisor beta of
    (Y_1 ... Y_m Z_(m+1) ... Z_(m+l))^(p-1) has NF(Tr(beta)) = 0 against
    the Hilbert-ideal basis.  Returns a list of (exponents, ok).
    """
    split = _v2v3_split(rep)
    if split is None:
        raise ValueError("divisor transfer checks need an mV2 + lV3 shape")
    m, l = split
    if gb is None:
        gb = reference_gb(rep)
    ring = rep.ring
    p = rep.p
    tops = [rep.var_index(b, 2) for b in range(1, m + 1)] + \
           [rep.var_index(b, 3) for b in range(m + 1, m + l + 1)]
    out = []
    for exps in _divisor_exponents([p - 1] * len(tops)):
        e = [0] * ring.n
        for var, k in zip(tops, exps):
            e[var] = k
        tr = rep.transfer(ring.monomial(e))
        out.append((exps, normal_form(tr, gb.gens).is_zero()))
    return out


def transfer_coefficient_checks(rep, max_degree=None):
    """Vanishing of selected coefficients in V5 transfers.

    Part one: the coefficient of x2^a x3^b x4^c x5^d in Tr(x5^i) vanishes
    when c + 2b + 3a < p - 1 (degrees matched, i = a+b+c+d).  Part two:
    in Tr(x4^k x5^i) it vanishes when i - d + b + 2a < p - 1.  Returns
    (monomial, source, ok) triples over all cases of total degree up to
    max_degree (default p + 2).
    """
    if rep.blocks != (5,):
        raise ValueError("coefficient checks are stated for V5")
    p = rep.p
    ring = rep.ring
    if max_degree is None:
        max_degree = p + 2
    out = []
    cache = {}

    def tr(k, i):
        if (k, i) not in cache:
            cache[k, i] = rep.transfer(ring.variable(3) ** k
                                       * ring.variable(4) ** i)
        return cache[k, i]

    for a in range(max_degree + 1):
        for b in range(max_degree + 1 - a):
            for c in range(max_degree + 1 - a - b):
                for d in range(max_degree + 1 - a - b - c):
                    deg = a + b + c + d
                    if deg == 0:
                        continue
                    mon = (0, a, b, c, d)
                    if c + 2 * b + 3 * a < p - 1:
                        ok = tr(0, deg).coeff(mon) == 0
                        out.append((mon, f"Tr(x5^{deg})", ok))
                    for k in range(1, deg):
                        i = deg - k
                        if i - d + b + 2 * a < p - 1:
                            ok = tr(k, i).coeff(mon) == 0
                            out.append((mon, f"Tr(x4^{k}*x5^{i})", ok))
    return out
