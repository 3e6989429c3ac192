"""Arithmetic in the prime field F_p and the mod-p combinatorics built on it.

Field elements are plain Python ints in [0, p); the prime is carried by a
:class:`PrimeField` context object rather than by each element.
"""

import math


def is_prime(n):
    """Deterministic primality test for word-sized n."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """Context for exact arithmetic modulo a prime p.

    All operations reduce into [0, p) and never wrap silently; inverting
    zero raises ZeroDivisionError.
    """

    __slots__ = ("p",)

    def __init__(self, p):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"p must be a prime integer, got {p!r}")
        if p >= 1 << 31:
            raise ValueError(f"p={p} too large; primes must fit a machine word")
        self.p = p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def el(self, n):
        """Reduce an integer (possibly negative) to its residue."""
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"0 is not invertible mod {self.p}")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a % self.p, e, self.p)

    def rational(self, num, den):
        """The residue of the integer fraction num/den (den not divisible by p)."""
        return self.mul(self.el(num), self.inv(self.el(den)))

    def binomial(self, n, k):
        """C(n, k) mod p via the base-p (Lucas) decomposition.

        Correct for all n, k >= 0 including arguments >= p; k > n gives 0.
        """
        if n < 0 or k < 0:
            raise ValueError(f"binomial needs nonnegative arguments, got ({n}, {k})")
        result = 1
        p = self.p
        while k > 0 or n > 0:
            ni, ki = n % p, k % p
            if ki > ni:
                return 0
            result = (result * math.comb(ni, ki)) % p
            n //= p
            k //= p
        return result

    def factorial(self, n):
        """n! mod p (0 whenever n >= p)."""
        if n < 0:
            raise ValueError("factorial needs a nonnegative argument")
        if n >= self.p:
            return 0
        r = 1
        for i in range(2, n + 1):
            r = (r * i) % self.p
        return r

    def falling(self, n, k):
        """The falling factorial n(n-1)...(n-k+1) mod p."""
        r = 1
        for i in range(k):
            r = (r * (n - i)) % self.p
        return r

    def power_sum(self, l):
        """Sum of t^l over all t in F_p: -1 when (p-1) | l, else 0."""
        if l < 1:
            raise ValueError("power_sum needs l >= 1")
        return self.p - 1 if l % (self.p - 1) == 0 else 0
