"""Independent reference expansions used to pin expected coefficients.

Nothing here imports the package.  Everything is naive dense polynomial
arithmetic over python ints: each f_delta is literally multiplied out term
by term, inverses come from the defining recurrence.  Quadratic cost, so
keep orders small.
"""


def poly_mul(a, b, order):
    out = [0] * order
    for i, ai in enumerate(a[:order]):
        if ai:
            bs = b[: order - i]
            for j, bj in enumerate(bs):
                if bj:
                    out[i + j] += ai * bj
    return out


def poly_inv(a, order):
    if a[0] not in (1, -1):
        raise ValueError("constant term must be a unit")
    b = [0] * order
    b[0] = a[0]
    for n in range(1, order):
        acc = 0
        for j in range(1, min(n, len(a) - 1) + 1):
            acc += a[j] * b[n - j]
        b[n] = -a[0] * acc
    return b


def f_factor(delta, order):
    # prod_{j >= 1} (1 - q^{delta j}), truncated
    out = [1] + [0] * (order - 1)
    j = 1
    while delta * j < order:
        step = [1] + [0] * (delta * j - 1) + [-1]
        out = poly_mul(out, step, order)
        j += 1
    return out


def fproduct_series(fp, order):
    out = [1] + [0] * (order - 1)
    for delta, r in fp.items():
        if not r:
            continue
        base = f_factor(delta, order)
        if r < 0:
            base = poly_inv(base, order)
        for _ in range(abs(r)):
            out = poly_mul(out, base, order)
    return out


def family_series(kind, c, order):
    if kind == "a":
        fp = {1: -1, 2: -(c - 1)}
    elif kind == "abar":
        fp = {4: c - 1, 1: -2, 2: -(2 * c - 3)}
    else:
        raise ValueError(kind)
    return fproduct_series(fp, order)
