"""Inner loops for coefficient arithmetic modulo m.

Everything here works on plain int64 numpy arrays with coefficients already
reduced into [0, m).  The callers guarantee the overflow preconditions:
partial sums are bounded by terms * (m-1)**2, so m below ~2**31 and a few
thousand sparse terms stay far inside int64.  There is no FFT here on
purpose; the series we expand are dominated by sparse factors, where a
schoolbook pass per factor is both simpler and fast enough.

Set QCONG_PURE=1 to skip numba and run the pure-python versions (slow, for
debugging and for environments without a working compiler).
"""

import os

import numpy as np

HAVE_NUMBA = False
if not os.environ.get("QCONG_PURE"):
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover
        pass

if not HAVE_NUMBA:
    def njit(*args, **kwargs):  # pragma: no cover
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


@njit(cache=True)
def mul_dense_mod(a, b, m):
    """Truncated Cauchy product, length min(len(a), len(b))."""
    n = min(len(a), len(b))
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(n - i):
            out[i + j] = (out[i + j] + ai * b[j]) % m
    return out


@njit(cache=True)
def mul_sparse_mod(a, exps, coefs, m):
    """a times a sparse factor; one accumulator per output coefficient."""
    n = len(a)
    k = len(exps)
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        acc = 0
        for t in range(k):
            e = exps[t]
            if e > i:
                break
            acc += coefs[t] * a[i - e]
        out[i] = acc % m
    return out


@njit(cache=True)
def div_sparse_mod(a, exps, coefs, m, inv0):
    """Solve b * s = a coefficient by coefficient.

    b(n) = (a(n) - sum_{e>=1} s_e b(n-e)) * s_0^{-1}; sequential in n, so
    this cannot be vectorized, which is exactly why it lives here.
    """
    n = len(a)
    k = len(exps)
    b = np.zeros(n, dtype=np.int64)
    for i in range(n):
        acc = a[i]
        for t in range(1, k):
            e = exps[t]
            if e > i:
                break
            acc -= coefs[t] * b[i - e]
        b[i] = (acc % m) * inv0 % m
    return b


@njit(cache=True)
def invert_dense_mod(a, m, inv0):
    n = len(a)
    b = np.zeros(n, dtype=np.int64)
    b[0] = inv0
    for i in range(1, n):
        acc = 0
        for j in range(1, i + 1):
            if a[j]:
                acc -= a[j] * b[i - j]
                if acc < -(2 ** 62):
                    acc %= m
        b[i] = (acc % m) * inv0 % m
    return b


def warmup():
    """Compile the kernels on a toy input so first real use is not timed."""
    a = np.ones(4, dtype=np.int64)
    e = np.array([0, 1], dtype=np.int64)
    c = np.array([1, 1], dtype=np.int64)
    mul_dense_mod(a, a, 5)
    mul_sparse_mod(a, e, c, 5)
    div_sparse_mod(a, e, c, 5, 1)
    invert_dense_mod(a, 5, 1)
