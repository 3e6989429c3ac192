"""Sparse multivariate polynomials over F_p under graded reverse lex order.

Monomials are exponent tuples. The ambient order is x_1 < x_2 < ... < x_N;
two monomials of equal total degree are compared at the smallest variable
where their exponents differ, and the one with the *smaller* exponent there
is the *larger* monomial.
"""

from .ff import PrimeField


# ---------------------------------------------------------------------------
# monomial helpers (exponent tuples)

def mon_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))

def mon_divides(a, b):
    """True when a | b componentwise."""
    return all(x <= y for x, y in zip(a, b))

def mon_div(a, b):
    """a / b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))

def mon_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))

def mon_degree(a):
    return sum(a)

def grevlex_key(e):
    """Sort key: larger key = larger monomial."""
    return (sum(e), tuple(-x for x in e))

def grevlex_cmp(a, b):
    """-1, 0 or 1 as a <, =, > b in grevlex."""
    if len(a) != len(b):
        raise ValueError("monomials from different rings are not comparable")
    ka, kb = grevlex_key(a), grevlex_key(b)
    return (ka > kb) - (ka < kb)


class PolyRing:
    """F_p[x_1, ..., x_N] with a fixed grevlex order and variable weights.

    ``levels[i]`` is the position (1-based) of variable i inside its Jordan
    block; the weight of a monomial is sum(levels[i] * e[i]).
    """

    def __init__(self, p, names, levels=None):
        self.field = PrimeField(p)
        self.p = p
        self.names = tuple(names)
        self.n = len(self.names)
        if levels is None:
            levels = (1,) * self.n
        if len(levels) != self.n:
            raise ValueError("levels length must match variable count")
        self.levels = tuple(levels)
        self._mon_lists = {}
        self._mon_index = {}

    def __repr__(self):
        return f"PolyRing(p={self.p}, vars={list(self.names)})"

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and other.p == self.p
                and other.names == self.names and other.levels == self.levels)

    def __hash__(self):
        return hash((self.p, self.names, self.levels))

    # -- constructors -------------------------------------------------------

    def zero(self):
        return Poly(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.field.el(c)
        if c == 0:
            return self.zero()
        return Poly(self, {(0,) * self.n: c})

    def variable(self, i):
        e = [0] * self.n
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self):
        return [self.variable(i) for i in range(self.n)]

    def monomial(self, exps, coeff=1):
        exps = tuple(exps)
        if len(exps) != self.n or any(x < 0 for x in exps):
            raise ValueError(f"bad exponent vector {exps}")
        c = self.field.el(coeff)
        return Poly(self, {exps: c} if c else {})

    def from_terms(self, terms):
        """Build from an iterable of (coeff, exps), summing duplicates."""
        acc = {}
        for c, e in terms:
            e = tuple(e)
            acc[e] = (acc.get(e, 0) + c) % self.p
        return Poly(self, {e: c for e, c in acc.items() if c})

    # -- monomial enumeration ------------------------------------------------

    def monomials_of_degree(self, d):
        """All degree-d monomials in decreasing grevlex order (cached)."""
        if d not in self._mon_lists:
            mons = []
            def rec(prefix, remaining, k):
                if k == self.n - 1:
                    mons.append(prefix + (remaining,))
                    return
                for e in range(remaining + 1):
                    rec(prefix + (e,), remaining - e, k + 1)
            if self.n == 0:
                mons = [()] if d == 0 else []
            else:
                rec((), d, 0)
            mons.sort(key=grevlex_key, reverse=True)
            self._mon_lists[d] = mons
            self._mon_index[d] = {m: i for i, m in enumerate(mons)}
        return self._mon_lists[d]

    def monomial_index(self, d):
        """Map degree-d monomial -> position in monomials_of_degree(d)."""
        self.monomials_of_degree(d)
        return self._mon_index[d]

    def weight(self, e):
        return sum(l * x for l, x in zip(self.levels, e))

    # -- rendering -----------------------------------------------------------

    def render_term(self, coeff, exps):
        vars_part = "*".join(
            self.names[i] if e == 1 else f"{self.names[i]}^{e}"
            for i, e in enumerate(exps) if e
        )
        if not vars_part:
            return str(coeff)
        if coeff == 1:
            return vars_part
        return f"{coeff}*{vars_part}"


class Poly:
    """Immutable sparse polynomial: dict of exponent tuple -> coeff in (0, p)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- queries -------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def sorted_terms(self):
        """(exps, coeff) pairs in decreasing grevlex order."""
        return [(e, self.terms[e]) for e in
                sorted(self.terms, key=grevlex_key, reverse=True)]

    def lm(self):
        """Leading monomial (exponent tuple)."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=grevlex_key)

    def lc(self):
        return self.terms[self.lm()]

    def lt(self):
        m = self.lm()
        return m, self.terms[m]

    def coeff(self, exps):
        return self.terms.get(tuple(exps), 0)

    def weights(self):
        """Set of weights occurring among the terms."""
        return {self.ring.weight(e) for e in self.terms}

    def weight_part(self, w):
        """The sub-sum of terms of weight exactly w."""
        return Poly(self.ring, {e: c for e, c in self.terms.items()
                                if self.ring.weight(e) == w})

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise ValueError("polynomials from different rings")

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __add__(self, other):
        self._check(other)
        p = self.ring.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    def __neg__(self):
        p = self.ring.p
        return Poly(self.ring, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.ring.field.el(c)
        if c == 0:
            return self.ring.zero()
        p = self.ring.p
        return Poly(self.ring, {e: (c * v) % p for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        p = self.ring.p
        out = {}
        if len(self.terms) > len(other.terms):
            a, b = other, self
        else:
            a, b = self, other
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = (out.get(e, 0) + ca * cb) % p
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative polynomial power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k = base_needed
        return result

    def term_mul(self, exps, coeff):
        """Multiply by the single term coeff * x^exps."""
        p = self.ring.p
        coeff = self.ring.field.el(coeff)
        if coeff == 0:
            return self.ring.zero()
        return Poly(self.ring, {
            tuple(x + y for x, y in zip(e, exps)): (c * coeff) % p
            for e, c in self.terms.items()})

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.ring.field.inv(self.lc()))

    # -- substitution --------------------------------------------------------

    def substitute(self, images, target=None):
        """Apply the algebra map x_i -> images[i] (polynomials in target)."""
        ring = target if target is not None else self.ring
        out = ring.zero()
        pow_cache = [{} for _ in range(self.ring.n)]
        for e, c in self.terms.items():
            term = ring.const(c)
            for i, k in enumerate(e):
                if k == 0:
                    continue
                if k not in pow_cache[i]:
                    pow_cache[i][k] = images[i] ** k
                term = term * pow_cache[i][k]
            out = out + term
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(self.ring.render_term(c, e)
                          for e, c in self.sorted_terms())

    def __repr__(self):
        return f"Poly({self})"


def product(polys, one=None):
    """Balanced product of a list of polynomials (keeps intermediates small)."""
    if not polys:
        if one is None:
            raise ValueError("empty product needs an explicit unit")
        return one
    items = list(polys)
    while len(items) > 1:
        items = [items[i] * items[i + 1] if i + 1 < len(items) else items[i]
                 for i in range(0, len(items), 2)]
    return items[0]
