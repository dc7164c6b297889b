"""Weights, characters, cusp orders and Sturm bounds for eta-quotients.

An EtaQuotient is a level N together with a finite map delta -> r_delta
describing prod_delta eta(delta z)^{r_delta}.  All the number theory here
is exact: Fractions for orders and weights, integer Kronecker symbols for
characters.  The scale indices delta are NOT required to divide the level;
the two infinite certificate families below use scales like 72 at level
768, and every formula involved only touches delta through gcds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def factorize(n):
    """Prime factorization by trial division; fine for the sizes we meet."""
    n = int(n)
    if n < 1:
        raise ValueError("factorize wants n >= 1")
    out = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 5
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 2 if p % 6 == 5 else 4
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n):
    n = int(n)
    if n < 2:
        return False
    return factorize(n) == {n: 1}


def divisors(n):
    out = [1]
    for p, e in factorize(n).items():
        out = [d * p ** i for d in out for i in range(e + 1)]
    return sorted(out)


def _jacobi(a, n):
    """Jacobi symbol, n odd positive."""
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a, n):
    """Kronecker symbol (a|n), extended to all integers n."""
    a = int(a)
    n = int(n)
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if twos % 2 and a % 8 in (3, 5):
            result = -result
    return result * _jacobi(a, n)


def squarefree_kernel(x):
    """Representative of x modulo nonzero rational squares, as an integer."""
    x = Fraction(x)
    if x == 0:
        return 0
    sign = -1 if x < 0 else 1
    n = abs(x.numerator) * x.denominator
    kernel = 1
    for p, e in factorize(n).items():
        if e % 2:
            kernel *= p
    return sign * kernel


def index_gamma0(n):
    """Index of Gamma_0(n) in the full modular group: n prod_{p|n} (1 + 1/p)."""
    idx = Fraction(n)
    for p in factorize(n):
        idx *= Fraction(p + 1, p)
    assert idx.denominator == 1
    return int(idx)


def sturm_bound(k, n):
    """floor(k/12 * [Gamma : Gamma_0(n)]) for integer weight k."""
    if int(k) != k:
        raise ValueError("Sturm bound needs an integral weight")
    return int(Fraction(int(k) * index_gamma0(n), 12))


class EtaQuotient:
    __slots__ = ("level", "exponents")

    def __init__(self, level, exponents):
        level = int(level)
        if level < 1:
            raise ValueError("level must be >= 1")
        exps = {}
        for d, r in exponents.items():
            d = int(d)
            r = int(r)
            if d < 1:
                raise ValueError("scale index must be >= 1")
            if r:
                exps[d] = exps.get(d, 0) + r
        self.level = level
        self.exponents = {d: r for d, r in sorted(exps.items()) if r}

    def weight(self):
        return Fraction(sum(self.exponents.values()), 2)

    def weight_is_integral(self):
        return self.weight().denominator == 1

    def cond24(self):
        """The two divisibility-by-24 conditions on (delta, r_delta).

        The second sum N/delta need not be integral when a scale walks
        outside the level; it is evaluated as an exact rational and only
        counts as satisfied when it lands in 24Z.
        """
        s1 = sum(d * r for d, r in self.exponents.items())
        s2 = sum(Fraction(self.level, d) * r for d, r in self.exponents.items())
        return (s1 % 24 == 0, s2.denominator == 1 and s2.numerator % 24 == 0)

    def index(self):
        return index_gamma0(self.level)

    def cusp_order(self, d):
        """Vanishing order at the cusp class of 1/d, times 24/N normalized out.

        (N/24) * sum_delta gcd(d, delta)^2 r_delta / (gcd(d, N/d) d delta).
        """
        d = int(d)
        if d < 1 or self.level % d:
            raise ValueError("cusp index %d does not divide level %d" % (d, self.level))
        n = self.level
        g = math.gcd(d, n // d)
        total = Fraction(0)
        for delta, r in self.exponents.items():
            total += Fraction(math.gcd(d, delta) ** 2 * r, delta)
        return Fraction(n, 24) * total / (g * d)

    def cusp_orders(self):
        return {d: self.cusp_order(d) for d in divisors(self.level)}

    def is_holomorphic(self):
        orders = self.cusp_orders()
        return all(v >= 0 for v in orders.values()), orders

    def character_discriminant(self):
        """Squarefree kernel of (-1)^weight * prod delta^{r_delta}."""
        if not self.weight_is_integral():
            raise ValueError("character needs an integral weight, got %s" % self.weight())
        ell = int(self.weight())
        t = Fraction(-1 if ell % 2 else 1)
        for d, r in self.exponents.items():
            t *= Fraction(d) ** r
        return squarefree_kernel(t)

    def character(self, d):
        return kronecker(self.character_discriminant(), d)

    def sturm(self):
        if not self.weight_is_integral():
            raise ValueError("Sturm bound needs an integral weight, got %s" % self.weight())
        return sturm_bound(int(self.weight()), self.level)

    def __repr__(self):
        body = " ".join(
            "eta(%dz)^%d" % (d, r) for d, r in self.exponents.items()
        )
        return "EtaQuotient(level=%d, %s)" % (self.level, body)


@dataclass
class FormMeta:
    level: int
    weight: Fraction
    weight_is_integral: bool
    cond24: tuple
    index: int
    sturm: object          # int, or None for non-integral weight
    character_discriminant: object
    cusp_orders: dict
    holomorphic: bool


def form_meta(eq):
    wint = eq.weight_is_integral()
    holo, orders = eq.is_holomorphic()
    return FormMeta(
        level=eq.level,
        weight=eq.weight(),
        weight_is_integral=wint,
        cond24=eq.cond24(),
        index=eq.index(),
        sturm=eq.sturm() if wint else None,
        character_discriminant=eq.character_discriminant() if wint else None,
        cusp_orders=orders,
        holomorphic=holo,
    )


def check_24_conditions(eq):
    return eq.cond24()


def weight(eq):
    return eq.weight()


def cusp_order(eq, d):
    return eq.cusp_order(d)


def is_holomorphic(eq):
    return eq.is_holomorphic()


def character_of(eq):
    return eq.character_discriminant()


def min_level(exponents, base, limit=576):
    """Smallest N = base*M, M <= limit, satisfying both cond24 constraints.

    The scales delta stay fixed while the level grows, so the first
    condition does not depend on M at all; the second is an exact rational
    that must land in 24Z.
    """
    fixed = {int(d): int(r) for d, r in exponents.items() if r}
    s1 = sum(d * r for d, r in fixed.items())
    if s1 % 24:
        raise ValueError("sum delta*r = %d is never 0 mod 24" % s1)
    for m in range(1, limit + 1):
        n = base * m
        s2 = sum(Fraction(n, d) * r for d, r in fixed.items())
        if s2.denominator == 1 and s2.numerator % 24 == 0:
            return n
    raise ValueError("no multiplier <= %d clears the level conditions" % limit)


# ---------------------------------------------------------------------------
# the two infinite certificate families (levels 768 and 2304)

POW2_LEVEL = 768
PRIMEPOW_LEVEL = 2304


def pow2_family_quotient(alpha, m, k, level=POW2_LEVEL):
    """Certificate quotient for the c = 2^alpha * m family, 3-power moduli.

    Scales (24, 48, 72, 96) with exponents
    (3^{k+1} - 2, -(2^{alpha+1} m - 3), -3^k, 2^alpha m - 1).
    """
    if alpha < 1 or m < 1 or m % 2 == 0 or k < 0:
        raise ValueError("need alpha >= 1, odd m >= 1, k >= 0")
    r = {
        24: 3 ** (k + 1) - 2,
        48: -(2 ** (alpha + 1) * m - 3),
        72: -(3 ** k),
        96: 2 ** alpha * m - 1,
    }
    return EtaQuotient(level, r)


def pow2_family_hypothesis(alpha, m, k):
    """3^{k-2} >= 2^{alpha-3} m, with k >= 2 (exact rational comparison)."""
    return k >= 2 and Fraction(3 ** k, 9) >= Fraction(2 ** alpha * m, 8)


def pow2_family_table(alpha, m, k):
    """Per-cusp inequality table, rows keyed by groups of divisors of 768.

    Each value is a positive multiple of the raw cusp order on its group,
    so sign(value) == sign(cusp order) divisor by divisor.
    """
    c = 2 ** alpha * m
    return [
        ((1, 2, 4, 8, 24), Fraction(32 * 3 ** k - 9 * c - 9)),
        ((3, 6, 12), Fraction(3 ** k) - Fraction(9, 32) * (c + 1)),
        ((16, 48), Fraction(8 * 3 ** k - 9 * c + 9)),
        ((32, 64, 128, 256), Fraction(3 ** k, 9)),
        ((96, 192, 384, 768), Fraction(3 ** k)),
    ]


def primepow_family_quotient(p, a, k, t, level=PRIMEPOW_LEVEL):
    """Certificate quotient for the c = (t-1)/2-ish family on prime powers.

    Scales (24, 48, 96, 24 p^a) with exponents
    (p^{a+k} - 2, -(2t - 3), t - 1, -p^k); t must be a multiple of p^a
    composed of primes >= 5.
    """
    if not is_prime(p) or p < 5:
        raise ValueError("p must be a prime >= 5")
    if a < 1 or k < 1:
        raise ValueError("need a >= 1 and k >= 1")
    if t < 1 or t % p ** a:
        raise ValueError("t must be a positive multiple of p^a")
    if any(q < 5 for q in factorize(t)):
        raise ValueError("t must be composed of primes >= 5")
    r = {
        24: p ** (a + k) - 2,
        48: -(2 * t - 3),
        96: t - 1,
        24 * p ** a: -(p ** k),
    }
    return EtaQuotient(level, r)


def primepow_family_hypothesis(p, a, k, t):
    return 2 * p ** (k + a) >= 5 * t


def primepow_family_table(p, a, k, t):
    """Published per-cusp inequality rows for the level-2304 family.

    Unlike the pow2 table these are NOT sign-faithful to the raw cusp
    orders away from the hypothesis region (the d <= 72 row drops a
    p^{k-a} term, and the last row goes negative while the raw order
    stays positive); they are kept verbatim for comparison.
    """
    s = p ** (k + a)
    return [
        ((1, 2, 3, 4, 6, 8, 9, 12, 18, 24, 36, 72), Fraction(8 * s - (1 + 5 * t))),
        ((16, 48, 144), Fraction(2 * s + 5 * (1 - t))),
        (
            (32, 64, 96, 128, 192, 256, 288, 384, 576, 768, 1152, 2304),
            Fraction(2 * s + 8 * (1 - t)),
        ),
    ]
