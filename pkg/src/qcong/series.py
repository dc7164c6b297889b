"""Truncated power series in q with exact integer or Z/m coefficients.

A TruncatedSeries knows its coefficients a(0), ..., a(order-1) and nothing
past that.  Binary operations truncate to the shorter operand; nothing ever
re-extends a series implicitly.  Exact coefficients are python ints (they
get large quickly), modular coefficients live in numpy int64 arrays so the
compiled kernels in _kernels can chew on them.

SparseSignedSeries holds the handful of nonzero terms of an expanded
infinite product such as f_k = prod (1 - q^{kn}).  Multiplying or dividing
a dense series by one of these costs O(order * nterms), which is the whole
performance story of this package: every generating function we expand is
a quotient of such factors.
"""

from __future__ import annotations

import math

import numpy as np

from . import _kernels

# below this many coefficient operations the pure-python loop beats the
# trip through numba dispatch (and avoids jit latency on cold caches)
_SMALL = 1 << 16


class Ring:
    """Coefficient ring: exact integers (modulus None) or Z/m."""

    __slots__ = ("modulus",)

    def __init__(self, modulus=None):
        if modulus is not None:
            modulus = int(modulus)
            if modulus < 2:
                raise ValueError("modulus must be >= 2")
        self.modulus = modulus

    @property
    def is_exact(self):
        return self.modulus is None

    def reduce(self, x):
        if self.modulus is None:
            return int(x)
        return int(x) % self.modulus

    def invert_unit(self, x):
        if self.modulus is None:
            if x in (1, -1):
                return int(x)
            raise ValueError("%r is not invertible over exact integers" % (x,))
        x = int(x) % self.modulus
        if math.gcd(x, self.modulus) != 1:
            raise ValueError("%d is not a unit mod %d" % (x, self.modulus))
        return pow(x, -1, self.modulus)

    def __eq__(self, other):
        return isinstance(other, Ring) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("Ring", self.modulus))

    def __repr__(self):
        if self.modulus is None:
            return "ZZ"
        return "Mod(%d)" % self.modulus


ZZ = Ring()


def Mod(m):
    return Ring(m)


class TruncatedSeries:
    __slots__ = ("ring", "order", "_d")

    def __init__(self, ring, coeffs, order=None):
        self.ring = ring
        if order is None:
            order = len(coeffs)
        if order < 1:
            raise ValueError("order must be >= 1")
        self.order = order
        if ring.is_exact:
            d = [int(c) for c in coeffs[:order]]
            d.extend([0] * (order - len(d)))
            self._d = d
        else:
            m = ring.modulus
            arr = np.zeros(order, dtype=np.int64)
            cs = np.asarray([int(c) % m for c in coeffs[:order]], dtype=np.int64)
            arr[: len(cs)] = cs
            self._d = arr

    @classmethod
    def _raw(cls, ring, data):
        s = object.__new__(cls)
        s.ring = ring
        s._d = data
        s.order = len(data)
        return s

    def coeff(self, n):
        if n < 0:
            return 0
        if n >= self.order:
            raise IndexError("coefficient %d outside truncation order %d" % (n, self.order))
        return int(self._d[n])

    __getitem__ = coeff

    def coeffs(self):
        return [int(c) for c in self._d]

    def copy(self):
        if self.ring.is_exact:
            return TruncatedSeries._raw(self.ring, list(self._d))
        return TruncatedSeries._raw(self.ring, self._d.copy())

    def is_zero(self):
        if self.ring.is_exact:
            return all(c == 0 for c in self._d)
        return not self._d.any()

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise ValueError("mixed coefficient rings: %r vs %r" % (self.ring, other.ring))

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.order == other.order
            and self.coeffs() == other.coeffs()
        )

    def __hash__(self):
        return hash((self.ring, self.order, tuple(self.coeffs())))

    def __add__(self, other):
        if isinstance(other, int):
            other = constant(self.ring, other, self.order)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_ring(other)
        n = min(self.order, other.order)
        if self.ring.is_exact:
            return TruncatedSeries._raw(
                self.ring, [self._d[i] + other._d[i] for i in range(n)]
            )
        m = self.ring.modulus
        return TruncatedSeries._raw(self.ring, (self._d[:n] + other._d[:n]) % m)

    __radd__ = __add__

    def __neg__(self):
        if self.ring.is_exact:
            return TruncatedSeries._raw(self.ring, [-c for c in self._d])
        return TruncatedSeries._raw(self.ring, (-self._d) % self.ring.modulus)

    def __sub__(self, other):
        if isinstance(other, int):
            other = constant(self.ring, other, self.order)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self._scale(other)
        if isinstance(other, SparseSignedSeries):
            return mul_sparse(self, other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self._scale(other)
        return NotImplemented

    def _scale(self, k):
        if self.ring.is_exact:
            return TruncatedSeries._raw(self.ring, [k * c for c in self._d])
        return TruncatedSeries._raw(self.ring, (k * self._d) % self.ring.modulus)

    def __pow__(self, e):
        return power(self, e)

    def __repr__(self):
        head = ", ".join(str(self.coeff(i)) for i in range(min(self.order, 8)))
        tail = ", ..." if self.order > 8 else ""
        return "TruncatedSeries(%r, [%s%s], order=%d)" % (self.ring, head, tail, self.order)


def zero(ring, order):
    return TruncatedSeries(ring, [], order)


def one(ring, order):
    return TruncatedSeries(ring, [1], order)


def constant(ring, c, order):
    return TruncatedSeries(ring, [c], order)


def monomial(ring, coef, exp, order):
    if exp >= order:
        return zero(ring, order)
    cs = [0] * (exp + 1)
    cs[exp] = coef
    return TruncatedSeries(ring, cs, order)


def from_coeffs(ring, coeffs, order=None):
    return TruncatedSeries(ring, coeffs, order)


class SparseSignedSeries:
    """Sorted exponents with small integer coefficients, constant term first.

    euler_factor produces coefficients in {+1, -1} (pentagonal numbers);
    cube_factor carries +-(2j+1).  `order` records the truncation the terms
    were generated for, so a factor is never used past what it covers.
    """

    __slots__ = ("exponents", "coeffs", "order")

    def __init__(self, exponents, coeffs, order):
        self.exponents = np.asarray(exponents, dtype=np.int64)
        self.coeffs = np.asarray(coeffs, dtype=np.int64)
        if len(self.exponents) != len(self.coeffs):
            raise ValueError("exponent/coefficient length mismatch")
        if len(self.exponents) == 0 or self.exponents[0] != 0:
            raise ValueError("sparse factor must have a constant term")
        if np.any(np.diff(self.exponents) <= 0):
            raise ValueError("exponents must be strictly increasing")
        self.order = order

    def __len__(self):
        return len(self.exponents)

    def terms(self):
        return [(int(e), int(c)) for e, c in zip(self.exponents, self.coeffs)]

    def to_series(self, ring, order=None):
        if order is None:
            order = self.order
        if order > self.order:
            raise ValueError("factor only covers order %d" % self.order)
        s = zero(ring, order)
        for e, c in zip(self.exponents, self.coeffs):
            if e >= order:
                break
            s._d[e] = ring.reduce(c)
        return s

    def __repr__(self):
        return "SparseSignedSeries(%s, order=%d)" % (self.terms()[:6], self.order)


def euler_factor(k, order):
    """Pentagonal-number expansion of f_k = prod_{n>=1} (1 - q^{kn}).

    Exponents k*j(3j-1)/2 for j = 0, +-1, +-2, ... with sign (-1)^j;
    about 2*sqrt(2*order/(3k)) terms survive the truncation.
    """
    if k < 1 or order < 1:
        raise ValueError("need k >= 1 and order >= 1")
    terms = [(0, 1)]
    j = 1
    while True:
        e1 = k * j * (3 * j - 1) // 2
        e2 = k * j * (3 * j + 1) // 2
        sign = -1 if j % 2 else 1
        hit = False
        if e1 < order:
            terms.append((e1, sign))
            hit = True
        if e2 < order:
            terms.append((e2, sign))
            hit = True
        if not hit:
            break
        j += 1
    terms.sort()
    return SparseSignedSeries([e for e, _ in terms], [c for _, c in terms], order)


def cube_factor(k, order):
    """Expansion of f_k^3 = sum_{j>=0} (-1)^j (2j+1) q^{k*j(j+1)/2}.

    Dividing by f^3 in one pass instead of three keeps the number of
    array sweeps down when exponents run into the hundreds.
    """
    if k < 1 or order < 1:
        raise ValueError("need k >= 1 and order >= 1")
    exps = []
    coefs = []
    j = 0
    while True:
        e = k * j * (j + 1) // 2
        if e >= order:
            break
        exps.append(e)
        coefs.append((2 * j + 1) * (-1 if j % 2 else 1))
        j += 1
    return SparseSignedSeries(exps, coefs, order)


def mul(a, b):
    """Dense truncated product, order min(order(a), order(b))."""
    a._check_ring(b)
    ring = a.ring
    n = min(a.order, b.order)
    if ring.is_exact:
        out = [0] * n
        ad, bd = a._d, b._d
        for i in range(n):
            ai = ad[i]
            if ai:
                for j in range(n - i):
                    if bd[j]:
                        out[i + j] += ai * bd[j]
        return TruncatedSeries._raw(ring, out)
    m = ring.modulus
    ad, bd = a._d[:n], b._d[:n]
    if n * n <= _SMALL or not _kernels.HAVE_NUMBA:
        out = np.zeros(n, dtype=np.int64)
        for i in range(n):
            ai = int(ad[i])
            if ai:
                out[i:] = (out[i:] + ai * bd[: n - i]) % m
        return TruncatedSeries._raw(ring, out)
    return TruncatedSeries._raw(ring, _kernels.mul_dense_mod(ad, bd, m))


def _sparse_arrays(ring, s):
    exps = s.exponents
    coefs = s.coeffs
    if not ring.is_exact:
        coefs = coefs % ring.modulus
    return exps, coefs


def mul_sparse(a, s):
    """a times a sparse factor; costs O(order * len(s))."""
    if s.order < a.order:
        raise ValueError("sparse factor covers order %d < %d" % (s.order, a.order))
    ring = a.ring
    n = a.order
    exps, coefs = _sparse_arrays(ring, s)
    if ring.is_exact:
        ad = a._d
        out = [0] * n
        for e, c in zip(exps.tolist(), coefs.tolist()):
            if e >= n:
                break
            for i in range(e, n):
                if ad[i - e]:
                    out[i] += c * ad[i - e]
        return TruncatedSeries._raw(ring, out)
    m = ring.modulus
    if n * len(exps) <= _SMALL or not _kernels.HAVE_NUMBA:
        out = np.zeros(n, dtype=np.int64)
        ad = a._d
        for e, c in zip(exps.tolist(), coefs.tolist()):
            if e >= n:
                break
            out[e:] += int(c) * ad[: n - e]
        return TruncatedSeries._raw(ring, out % m)
    return TruncatedSeries._raw(ring, _kernels.mul_sparse_mod(a._d, exps, coefs, m))


def div_sparse(a, s):
    """a divided by a sparse factor with unit constant term."""
    if s.order < a.order:
        raise ValueError("sparse factor covers order %d < %d" % (s.order, a.order))
    ring = a.ring
    n = a.order
    exps, coefs = _sparse_arrays(ring, s)
    inv0 = ring.invert_unit(int(coefs[0]))
    if ring.is_exact:
        ad = a._d
        b = [0] * n
        exl = exps.tolist()
        col = coefs.tolist()
        k = len(exl)
        for i in range(n):
            acc = ad[i]
            for t in range(1, k):
                e = exl[t]
                if e > i:
                    break
                if b[i - e]:
                    acc -= col[t] * b[i - e]
            b[i] = acc * inv0
        return TruncatedSeries._raw(ring, b)
    m = ring.modulus
    if n * len(exps) <= _SMALL or not _kernels.HAVE_NUMBA:
        ad = a._d.tolist()
        b = [0] * n
        exl = exps.tolist()
        col = coefs.tolist()
        k = len(exl)
        for i in range(n):
            acc = ad[i]
            for t in range(1, k):
                e = exl[t]
                if e > i:
                    break
                acc -= col[t] * b[i - e]
            b[i] = acc * inv0 % m
        return TruncatedSeries._raw(ring, np.asarray(b, dtype=np.int64))
    return TruncatedSeries._raw(ring, _kernels.div_sparse_mod(a._d, exps, coefs, m, inv0))


def invert(a):
    """Multiplicative inverse via the forward recurrence; needs a(0) a unit."""
    ring = a.ring
    n = a.order
    inv0 = ring.invert_unit(a.coeff(0))
    if ring.is_exact:
        ad = a._d
        b = [0] * n
        b[0] = inv0
        for i in range(1, n):
            acc = 0
            for j in range(1, i + 1):
                if ad[j] and b[i - j]:
                    acc -= ad[j] * b[i - j]
            b[i] = acc * inv0
        return TruncatedSeries._raw(ring, b)
    m = ring.modulus
    if n * n <= _SMALL or not _kernels.HAVE_NUMBA:
        ad = a._d.tolist()
        b = [0] * n
        b[0] = inv0
        for i in range(1, n):
            acc = 0
            for j in range(1, i + 1):
                if ad[j]:
                    acc -= ad[j] * b[i - j]
            b[i] = acc % m * inv0 % m
        return TruncatedSeries._raw(ring, np.asarray(b, dtype=np.int64))
    return TruncatedSeries._raw(ring, _kernels.invert_dense_mod(a._d, m, inv0))


def power(a, e):
    """Binary exponentiation; negative e inverts first."""
    e = int(e)
    if e < 0:
        return power(invert(a), -e)
    result = one(a.ring, a.order)
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def extract_progression(a, d, r):
    """Series of a(d*n + r); order ceil((order(a) - r) / d)."""
    if d < 1 or r < 0 or r >= d:
        raise ValueError("need d >= 1 and 0 <= r < d")
    if r >= a.order:
        return zero(a.ring, 1)
    if a.ring.is_exact:
        return TruncatedSeries._raw(a.ring, a._d[r :: d])
    return TruncatedSeries._raw(a.ring, a._d[r :: d].copy())


def dilate(a, d):
    """Substitute q -> q^d; order becomes d * order(a)."""
    if d < 1:
        raise ValueError("need d >= 1")
    n = a.order
    if a.ring.is_exact:
        out = [0] * (d * n)
        for i, c in enumerate(a._d):
            out[d * i] = c
        return TruncatedSeries._raw(a.ring, out)
    out = np.zeros(d * n, dtype=np.int64)
    out[::d] = a._d
    return TruncatedSeries._raw(a.ring, out)


def shift(a, j):
    """Multiply by q^j (j >= 0); order grows to order(a) + j."""
    if j < 0:
        raise ValueError("need j >= 0")
    if j == 0:
        return a.copy()
    if a.ring.is_exact:
        return TruncatedSeries._raw(a.ring, [0] * j + list(a._d))
    return TruncatedSeries._raw(a.ring, np.concatenate([np.zeros(j, dtype=np.int64), a._d]))


def truncate(a, order):
    """Drop coefficients at or past `order`; never extends."""
    if order > a.order:
        raise ValueError("cannot extend order %d to %d" % (a.order, order))
    if order == a.order:
        return a.copy()
    if a.ring.is_exact:
        return TruncatedSeries._raw(a.ring, a._d[:order])
    return TruncatedSeries._raw(a.ring, a._d[:order].copy())


def reduce_mod(a, m):
    """Image of an exact series in Z/m (the coefficient ring homomorphism)."""
    if not a.ring.is_exact:
        raise ValueError("reduce_mod expects an exact series")
    return TruncatedSeries(Mod(m), a._d, a.order)
