"""Dissection and product identities checked coefficient by coefficient.

Each identity is a pair of expression trees sharing a small node algebra:
finite products of f_k powers, the three theta series, generating
functions of the partition families, dilation, progression extraction,
q-shifts, scalars, sums, products, and powers.  verify_identity expands
both sides at the case's order and compares.  Evaluation errors are
reported together with the innermost subtree that raised.

The catalog at the bottom carries the identities the congruence proofs
in this package lean on: the 2- and 3-dissections of phi, psi, 1/f1^2
and friends, the even/odd split of the overlaid family, the recursion
F_c(q) = phi(q) phi(q^2)^(c-1) F_c(q^2)^2 and its iterated product form,
and the three binomial-sum dissections of the 4n+1, 4n+2, 4n+3 slices.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .qfuncs import PartitionFamily, expand_fproduct, genfun, normalize_fproduct, omega, phi, psi
from .series import Mod, ZZ, dilate, extract_progression, power, shift, truncate, zero


class ExprEvalError(RuntimeError):
    """Evaluation failure, pinned to the subtree that raised."""

    def __init__(self, node, cause):
        super().__init__("%r: %s" % (node, cause))
        self.node = node
        self.cause = cause


def _guard(node, fn):
    try:
        return fn()
    except ExprEvalError:
        raise
    except Exception as exc:
        raise ExprEvalError(node, exc) from exc


class Expr:
    def expand(self, ring, order):
        raise NotImplementedError


class FP(Expr):
    """Finite product of f_k^e factors; negative e divides."""

    def __init__(self, factors):
        self.factors = normalize_fproduct(factors)

    def expand(self, ring, order):
        return _guard(self, lambda: expand_fproduct(self.factors, ring, order))

    def __repr__(self):
        inner = ",".join("%d:%d" % (k, e) for k, e in sorted(self.factors.items()))
        return "FP{%s}" % inner


_THETAS = {"phi": phi, "psi": psi, "omega": omega}


class Theta(Expr):
    def __init__(self, name, dilation=1):
        if name not in _THETAS:
            raise ValueError("unknown theta %r" % name)
        if dilation < 1:
            raise ValueError("dilation must be >= 1")
        self.name = name
        self.dilation = dilation

    def expand(self, ring, order):
        def run():
            base = _THETAS[self.name](ring, -(-order // self.dilation))
            return truncate(dilate(base, self.dilation), order)

        return _guard(self, run)

    def __repr__(self):
        return "%s(q^%d)" % (self.name, self.dilation) if self.dilation > 1 else "%s(q)" % self.name


class GenFun(Expr):
    def __init__(self, kind, c):
        self.family = PartitionFamily(kind, c)

    def expand(self, ring, order):
        return _guard(self, lambda: genfun(self.family, ring, order))

    def __repr__(self):
        return "genfun(%s,%d)" % (self.family.kind, self.family.c)


class Dilate(Expr):
    def __init__(self, child, d):
        self.child = child
        self.d = d

    def expand(self, ring, order):
        inner = self.child.expand(ring, -(-order // self.d))
        return _guard(self, lambda: truncate(dilate(inner, self.d), order))

    def __repr__(self):
        return "dilate(%r,%d)" % (self.child, self.d)


class Extract(Expr):
    """Coefficients on the progression step*n + residue, reindexed by n."""

    def __init__(self, child, step, residue):
        self.child = child
        self.step = step
        self.residue = residue

    def expand(self, ring, order):
        inner = self.child.expand(ring, self.step * order + self.residue)
        def run():
            got = extract_progression(inner, self.step, self.residue)
            return truncate(got, order)

        return _guard(self, run)

    def __repr__(self):
        return "extract(%r,%dn+%d)" % (self.child, self.step, self.residue)


class Shift(Expr):
    def __init__(self, child, j):
        self.child = child
        self.j = j

    def expand(self, ring, order):
        if self.j >= order:
            return zero(ring, order)
        inner = self.child.expand(ring, order - self.j)
        return _guard(self, lambda: shift(inner, self.j))

    def __repr__(self):
        return "q^%d*%r" % (self.j, self.child)


class Scalar(Expr):
    def __init__(self, k, child):
        self.k = k
        self.child = child

    def expand(self, ring, order):
        return _guard(self, lambda: self.child.expand(ring, order) * self.k)

    def __repr__(self):
        return "%d*%r" % (self.k, self.child)


class Add(Expr):
    def __init__(self, *terms):
        if len(terms) < 2:
            raise ValueError("Add needs at least two terms")
        self.terms = terms

    def expand(self, ring, order):
        out = self.terms[0].expand(ring, order)
        for term in self.terms[1:]:
            out = _guard(self, lambda t=term: out + t.expand(ring, order))
        return out

    def __repr__(self):
        return "(" + " + ".join(repr(t) for t in self.terms) + ")"


def Sub(a, b):
    return Add(a, Scalar(-1, b))


class Mul(Expr):
    def __init__(self, *factors):
        if len(factors) < 2:
            raise ValueError("Mul needs at least two factors")
        self.factors = factors

    def expand(self, ring, order):
        out = self.factors[0].expand(ring, order)
        for factor in self.factors[1:]:
            out = _guard(self, lambda f=factor: out * f.expand(ring, order))
        return out

    def __repr__(self):
        return "(" + " * ".join(repr(f) for f in self.factors) + ")"


class Pow(Expr):
    def __init__(self, child, e):
        if e < 0:
            raise ValueError("Pow wants e >= 0; put division inside an FP")
        self.child = child
        self.e = e

    def expand(self, ring, order):
        inner = self.child.expand(ring, order)
        return _guard(self, lambda: power(inner, self.e))

    def __repr__(self):
        return "(%r)^%d" % (self.child, self.e)


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityCase:
    id: str
    lhs: Expr
    rhs: Expr
    order: int
    modulus: object = None   # None checks exactly over the integers


@dataclass(frozen=True)
class IdentityVerdict:
    case: IdentityCase
    ok: bool
    first_mismatch: object   # (n, lhs_coeff, rhs_coeff) or None
    error: object            # (subtree repr, message) or None


def verify_identity(case):
    ring = ZZ if case.modulus is None else Mod(case.modulus)
    try:
        left = case.lhs.expand(ring, case.order)
        right = case.rhs.expand(ring, case.order)
    except ExprEvalError as exc:
        return IdentityVerdict(case, False, None, (repr(exc.node), str(exc.cause)))
    first = None
    lc, rc = left.coeffs(), right.coeffs()
    for n in range(case.order):
        if lc[n] != rc[n]:
            first = (n, int(lc[n]), int(rc[n]))
            break
    return IdentityVerdict(case, first is None, first, None)


# ---------------------------------------------------------------------------
# catalog

def _binomial_slice(i, residue, fixed=False):
    """One of the three order-4 slices of the doubled-subscript family.

    Each is a closed form: scalar * (f-product prefactor) * sum over k of
    binom(2i+1, ...) * 4^k * q^k * (f-product)^k.

    The 4n+2 slice comes in two variants.  The plain one keeps the f_4
    prefactor exponent at 10i+1 and first breaks at q^4; the fixed one
    uses 10i-3, which is what redoing the even-slice dissection yields,
    and holds at every order tried.
    """
    kernel = lambda k: FP({2: 4 * k, 8: 8 * k, 4: -12 * k})
    if residue == 1:
        scale = 2
        pre = FP({4: 10 * i + 7, 1: -(8 * i + 4), 2: -1, 8: -(4 * i + 2)})
        terms = [
            Scalar(comb(2 * i + 1, 2 * k) * 4 ** k, Shift(kernel(k), k))
            for k in range(i + 1)
        ]
    elif residue == 3:
        scale = 4
        pre = FP({2: 1, 4: 10 * i + 1, 1: -(8 * i + 4), 8: -(4 * i - 2)})
        terms = [
            Scalar(comb(2 * i + 1, 2 * k + 1) * 4 ** k, Shift(kernel(k), k))
            for k in range(i + 1)
        ]
    else:  # residue == 2
        scale = 2
        e4 = 10 * i - 3 if fixed else 10 * i + 1
        pre = FP({2: 7, 4: e4, 1: -(8 * i + 6), 8: -(4 * i - 2)})
        terms = [
            Scalar(comb(2 * i + 1, 2 * k + 1) * 4 ** k, Shift(kernel(k), k))
            for k in range(i + 1)
        ]
    body = terms[0] if len(terms) == 1 else Add(*terms)
    return IdentityCase(
        id="abar-%d-slice-4n%d%s" % (2 * i, residue, "-fixed" if fixed else ""),
        lhs=Extract(GenFun("abar", 2 * i), 4, residue),
        rhs=Scalar(scale, Mul(pre, body)),
        order=400,
    )


def _functional_equation(c):
    # F_c(q) = phi(q) phi(q^2)^(c-1) F_c(q^2)^2
    return IdentityCase(
        id="abar-%d-doubling" % c,
        lhs=GenFun("abar", c),
        rhs=Mul(
            Theta("phi"),
            Pow(Theta("phi", 2), c - 1),
            Pow(Dilate(GenFun("abar", c), 2), 2),
        ),
        order=500,
    )


def _iterated_product(c, order=400):
    # F_{c-1}(q) = phi(q) * prod_{i>=1} phi(q^(2^i))^(c 2^(i-1)); factors
    # with 2^i past the order are 1 up to truncation and are dropped
    factors = [Theta("phi")]
    step = 2
    scale = 1
    while step <= order:
        factors.append(Pow(Theta("phi", step), c * scale))
        step *= 2
        scale *= 2
    return IdentityCase(
        id="abar-%d-phi-product" % (c - 1),
        lhs=GenFun("abar", c - 1),
        rhs=Mul(*factors),
        order=order,
    )


def _even_odd_split(c):
    even = IdentityCase(
        id="abar-%d-even-slice" % c,
        lhs=Extract(GenFun("abar", c), 2, 0),
        rhs=FP({2: c - 1, 4: 5, 1: -(2 * c + 2), 8: -2}),
        order=400,
    )
    odd = IdentityCase(
        id="abar-%d-odd-slice" % c,
        lhs=Extract(GenFun("abar", c), 2, 1),
        rhs=Scalar(2, FP({8: 2, 4: -1, 2: c + 1, 1: -(2 * c + 2)})),
        order=400,
    )
    return [even, odd]


def build_catalog():
    cases = [
        IdentityCase(
            id="phi-split-mod4",
            lhs=Theta("phi"),
            rhs=Add(Theta("phi", 4), Scalar(2, Shift(Theta("psi", 8), 1))),
            order=500,
        ),
        IdentityCase(
            id="f1sq-split-mod2",
            lhs=FP({1: 2}),
            rhs=Sub(
                FP({2: 1, 8: 5, 4: -2, 16: -2}),
                Scalar(2, Shift(FP({2: 1, 16: 2, 8: -1}), 1)),
            ),
            order=500,
        ),
        IdentityCase(
            id="inv-f1sq-split-mod2",
            lhs=FP({1: -2}),
            rhs=Add(
                FP({8: 5, 2: -5, 16: -2}),
                Scalar(2, Shift(FP({4: 2, 16: 2, 2: -5, 8: -1}), 1)),
            ),
            order=500,
        ),
        IdentityCase(
            id="phi-split-mod9",
            lhs=Theta("phi"),
            rhs=Add(Theta("phi", 9), Scalar(2, Shift(Theta("omega", 3), 1))),
            order=500,
        ),
        IdentityCase(
            id="psi-split-mod3",
            lhs=FP({2: 2, 1: -1}),
            rhs=Add(
                FP({6: 1, 9: 2, 3: -1, 18: -1}),
                Shift(FP({18: 2, 9: -1}), 1),
            ),
            order=500,
        ),
        IdentityCase(
            id="f1-over-f4-split-mod3",
            lhs=FP({1: 1, 4: -1}),
            rhs=Add(
                FP({6: 1, 9: 1, 18: 1, 12: -3}),
                Scalar(-1, Shift(FP({3: 1, 18: 4, 9: -2, 12: -3}), 1)),
                Scalar(-1, Shift(FP({6: 2, 9: 1, 36: 3, 12: -4, 18: -2}), 2)),
            ),
            order=400,
        ),
        # the four helpers behind the f1/f4 split
        IdentityCase(
            id="aux-f6-block-split",
            lhs=FP({6: 1, 12: 2, 18: 2, 36: 2, 3: -1}),
            rhs=Add(
                FP({18: 9, 9: -3}),
                Shift(FP({6: 3, 36: 6, 3: -1, 12: -2}), 3),
            ),
            order=400,
        ),
        IdentityCase(
            id="aux-f9cube-split",
            lhs=FP({9: 3, 12: 1}),
            rhs=Add(
                FP({3: 1, 12: 4, 18: 2, 6: -2, 36: -1}),
                Shift(FP({3: 1, 36: 3}), 3),
            ),
            order=400,
        ),
        IdentityCase(
            id="aux-f1-over-f2sq-split",
            lhs=FP({1: 1, 2: -2}),
            rhs=Add(
                FP({3: 2, 9: 3, 6: -6}),
                Scalar(-1, Shift(FP({3: 3, 18: 3, 6: -7}), 1)),
                Shift(FP({3: 4, 18: 6, 6: -8, 9: -3}), 2),
            ),
            order=400,
        ),
        IdentityCase(
            id="aux-f1f4-over-f2-split",
            lhs=FP({1: 1, 4: 1, 2: -1}),
            rhs=Sub(
                FP({3: 1, 12: 1, 18: 5, 6: -2, 9: -2, 36: -2}),
                Shift(FP({9: 1, 36: 1, 18: -1}), 1),
            ),
            order=400,
        ),
    ]
    for c in range(1, 7):
        cases.append(_functional_equation(c))
    for c_minus_1 in range(2, 7):
        cases.append(_iterated_product(c_minus_1 + 1))
    for c in (2, 5):
        cases.extend(_even_odd_split(c))
    for i in (1, 2):
        for residue in (1, 2, 3):
            cases.append(_binomial_slice(i, residue))
        cases.append(_binomial_slice(i, 2, fixed=True))
    ids = [case.id for case in cases]
    assert len(set(ids)) == len(ids)
    return cases


CASES = build_catalog()


def case_by_id(case_id):
    for case in CASES:
        if case.id == case_id:
            return case
    raise KeyError(case_id)
