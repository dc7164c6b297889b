"""Eta-style product expansion and the two colored partition families.

An "fproduct" is a finite map delta -> r giving prod_delta f_delta^r with
f_delta = prod_{n>=1} (1 - q^{delta n}).  The two families:

  kind "a":    1 / (f_1 f_2^{c-1})          parts, with c-1 extra colors on
                                            the even parts
  kind "abar": f_4^{c-1} / (f_1^2 f_2^{2c-3})  the overlined variant

Expansion works factor by factor with the sparse pentagonal and cube
expansions.  Modulo a prime power p^k, exponents of size >= p^k first get
folded down through f_delta^(p^k) == f_{delta p}^(p^(k-1)) (binomial
coefficients C(p,i) vanish mod p, then lift the congruence through k-1
squarings); that is what makes exponents like 817 tractable mod 43.
"""

from __future__ import annotations

import math

from .series import (
    Ring,
    TruncatedSeries,
    cube_factor,
    div_sparse,
    euler_factor,
    mul_sparse,
    one,
    zero,
)


def normalize_fproduct(fp):
    out = {}
    for delta, r in fp.items():
        delta = int(delta)
        r = int(r)
        if delta < 1:
            raise ValueError("factor index must be >= 1, got %d" % delta)
        if r:
            out[delta] = out.get(delta, 0) + r
    return {d: r for d, r in sorted(out.items()) if r}


def merge_fproducts(p1, p2):
    out = dict(p1)
    for d, r in p2.items():
        out[d] = out.get(d, 0) + r
    return normalize_fproduct(out)


def _prime_power(m):
    """(p, k) if m == p**k with k >= 1, else None."""
    if m < 2:
        return None
    p = 2
    while p * p <= m:
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            return (p, k) if m == 1 else None
        p += 1
    return (m, 1)


def freshman_reduce(fp, p, k):
    """Fold exponents with |r| >= p^k down to dilated factors, mod p^k.

    Valid for either sign of r: both sides of the congruence have unit
    constant term, so inverses are congruent too.
    """
    q = p ** k
    cur = dict(normalize_fproduct(fp))
    while True:
        nxt = {}
        changed = False
        for d, r in cur.items():
            sgn = 1 if r > 0 else -1
            a = abs(r)
            if a >= q:
                hi, lo = divmod(a, q)
                nxt[d * p] = nxt.get(d * p, 0) + sgn * hi * p ** (k - 1)
                if lo:
                    nxt[d] = nxt.get(d, 0) + sgn * lo
                changed = True
            else:
                nxt[d] = nxt.get(d, 0) + r
        cur = normalize_fproduct(nxt)
        if not changed:
            return cur


def expand_fproduct(fp, ring, order):
    """Expand prod f_delta^{r_delta} to a TruncatedSeries.

    Each positive exponent is applied as floor(r/3) cube factors plus
    remainder pentagonal factors; negative exponents divide by the same
    factors via the sparse recurrence.  The result is identical to
    multiplying out dense inverses, just without the quadratic cost.
    """
    fp = normalize_fproduct(fp)
    if not ring.is_exact:
        pk = _prime_power(ring.modulus)
        if pk is not None:
            fp = freshman_reduce(fp, *pk)
    s = one(ring, order)
    cubes = {}
    pents = {}
    for delta, r in fp.items():
        a = abs(r)
        nc, np_ = divmod(a, 3)
        if nc and delta not in cubes:
            cubes[delta] = cube_factor(delta, order)
        if np_ and delta not in pents:
            pents[delta] = euler_factor(delta, order)
        op = mul_sparse if r > 0 else div_sparse
        for _ in range(nc):
            s = op(s, cubes[delta])
        for _ in range(np_):
            s = op(s, pents[delta])
    return s


class PartitionFamily:
    """Counting function family: kind 'a' or 'abar', color parameter c >= 1."""

    __slots__ = ("kind", "c")

    def __init__(self, kind, c):
        if kind not in ("a", "abar"):
            raise ValueError("kind must be 'a' or 'abar'")
        c = int(c)
        if c < 1:
            raise ValueError("need c >= 1, got %d" % c)
        self.kind = kind
        self.c = c

    def fproduct(self):
        c = self.c
        if self.kind == "a":
            return normalize_fproduct({1: -1, 2: -(c - 1)})
        return normalize_fproduct({4: c - 1, 1: -2, 2: -(2 * c - 3)})

    def __eq__(self, other):
        return (
            isinstance(other, PartitionFamily)
            and self.kind == other.kind
            and self.c == other.c
        )

    def __hash__(self):
        return hash((self.kind, self.c))

    def __repr__(self):
        return "PartitionFamily(%r, %d)" % (self.kind, self.c)


def genfun(family, ring, order):
    """Generating function of the family, expanded to `order`."""
    return expand_fproduct(family.fproduct(), ring, order)


def oracle_count(family, n):
    """Count by direct dynamic programming, independent of the series code.

    Each factor (1 - q^m)^{-1} is one unbounded-knapsack pass (ascending),
    each factor (1 - q^m) one subtraction pass (descending).  Exact, so it
    only makes sense for small n.
    """
    n = int(n)
    if n < 0:
        return 0
    if n > 2000:
        raise ValueError("oracle_count is meant for n <= 2000")
    dp = [0] * (n + 1)
    dp[0] = 1
    for delta, r in family.fproduct().items():
        for j in range(1, n // delta + 1):
            m = delta * j
            if r < 0:
                for _ in range(-r):
                    for i in range(m, n + 1):
                        dp[i] += dp[i - m]
            else:
                for _ in range(r):
                    for i in range(n, m - 1, -1):
                        dp[i] -= dp[i - m]
    return dp[n]


def phi(ring, order):
    """Theta series 1 + 2 sum q^{k^2}, cross-checked against f_2^5/(f_1^2 f_4^2)."""
    s = zero(ring, order)
    s._d[0] = ring.reduce(1)
    k = 1
    while k * k < order:
        s._d[k * k] = ring.reduce(2)
        k += 1
    alt = expand_fproduct({2: 5, 1: -2, 4: -2}, ring, order)
    if s != alt:
        raise AssertionError("theta-sum and product expansions disagree")
    return s


def psi(ring, order):
    """f_2^2 / f_1 = sum q^{k(k+1)/2}."""
    return expand_fproduct({2: 2, 1: -1}, ring, order)


def omega(ring, order):
    """f_2^2 f_3 f_12 / (f_1 f_4 f_6), the 3-dissection companion of phi."""
    return expand_fproduct({2: 2, 3: 1, 12: 1, 1: -1, 4: -1, 6: -1}, ring, order)
