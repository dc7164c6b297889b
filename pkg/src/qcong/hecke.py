"""Hecke operator T_p on q-expansions and the Sturm-bound proof pipeline.

The pipeline proves a_c(pn + b) == 0 mod p for the seven single-prime rows:
expand G = q^shift * f_1^A / f_2^B mod p (which equals q^shift * genfun *
f_1^{A+1} because B = c - 1), hit it with T_p, and check the image vanishes
through the Sturm bound of the corresponding weight-(A-B)/2 eta-quotient.
Coefficient extraction then gives the congruence on the arithmetic
progression, since b == -shift mod p.  The verdict records the modular
bookkeeping (24-conditions, holomorphy, weight) that the vanishing check
is conditional on.
"""

from __future__ import annotations

from dataclasses import dataclass

from .etaq import EtaQuotient, form_meta
from .qfuncs import PartitionFamily, expand_fproduct, genfun
from .series import Mod, TruncatedSeries, shift as q_shift


@dataclass
class HeckeContext:
    p: int
    weight: int
    ring: object
    chi: object = None  # callable d -> {-1, 0, 1}; None means trivial

    def chi_value(self, d):
        return 1 if self.chi is None else int(self.chi(d))


def apply_Tp(ctx, f):
    """(f | T_p)(n) = a(pn) + chi(p) p^{weight-1} a(n/p), order floor(order/p)."""
    p = ctx.p
    n_out = f.order // p
    if n_out < 1:
        raise ValueError("order %d too small for T_%d" % (f.order, p))
    ring = f.ring
    if ring != ctx.ring:
        raise ValueError("series ring %r does not match context %r" % (ring, ctx.ring))
    scale = ctx.chi_value(p) * p ** (ctx.weight - 1)
    scale = scale if ring.is_exact else scale % ring.modulus
    out = []
    for n in range(n_out):
        v = f.coeff(p * n)
        if scale and n % p == 0:
            v += scale * f.coeff(n // p)
        out.append(v)
    return TruncatedSeries(ring, out, n_out)


@dataclass
class Row:
    """One single-prime congruence row a_c(pn + b) == 0 mod p."""

    c: int
    p: int
    b: int
    eta_num: int      # exponent A on f_1
    eta_den: int      # exponent B on f_2
    level: int

    @property
    def eta_exponent(self):
        # multiplying the generating function by f_1^{A+1} clears both
        # denominator factors: B equals c - 1 on every row
        return self.eta_num + 1

    @property
    def shift(self):
        s, rem = divmod(self.eta_num - 2 * self.eta_den, 24)
        if rem:
            raise ValueError("row exponents are not 24-aligned")
        return s

    def quotient(self):
        return EtaQuotient(self.level, {1: self.eta_num, 2: -self.eta_den})


ROWS = (
    Row(37, 43, 12, 816, 36, 4),
    Row(41, 47, 21, 704, 40, 2),
    Row(53, 59, 56, 176, 52, 4),
    Row(61, 67, 19, 1272, 60, 4),
    Row(65, 71, 32, 1064, 64, 2),
    Row(73, 79, 62, 552, 72, 2),
    Row(77, 83, 79, 248, 76, 4),
)


@dataclass
class RowVerdict:
    row: Row
    depth: int
    order: int
    ok: bool
    first_failure: object   # (n, value) or None
    constant_term: int
    meta: object            # FormMeta of the auxiliary quotient
    status: str


def verify_row(row, depth=None):
    """Check the T_p image of the auxiliary form vanishes mod p to `depth`.

    depth defaults to the Sturm bound; reaching it makes the vanishing a
    proof (conditional on the recorded modularity bookkeeping), anything
    less is only consistency.
    """
    if row.b != (-row.shift) % row.p:
        raise ValueError("residue %d does not match the q-power shift" % row.b)
    if row.eta_den != row.c - 1:
        raise ValueError("denominator exponent must equal c - 1")
    meta = form_meta(row.quotient())
    sturm = meta.sturm
    if depth is None:
        depth = sturm
    p = row.p
    ring = Mod(p)
    order = p * (depth + 2)
    base = expand_fproduct({1: row.eta_num, 2: -row.eta_den}, ring, order)
    g = q_shift(base, row.shift)
    disc = row.quotient().character_discriminant()
    from .etaq import kronecker

    ctx = HeckeContext(p=p, weight=int(meta.weight), ring=ring,
                       chi=lambda d: kronecker(disc, d))
    image = apply_Tp(ctx, g)
    first = None
    for n in range(1, depth + 1):
        if image.coeff(n):
            first = (n, image.coeff(n))
            break
    ok = first is None
    if not ok:
        status = "refuted"
    elif depth >= sturm:
        status = "proved"
    else:
        status = "consistent"
    return RowVerdict(
        row=row,
        depth=depth,
        order=order,
        ok=ok,
        first_failure=first,
        constant_term=image.coeff(0),
        meta=meta,
        status=status,
    )


@dataclass
class DirectVerdict:
    family: object
    step: int
    residue: int
    modulus: int
    depth: int
    order: int
    ok: bool
    first_failure: object


def direct_congruence(family, step, residue, modulus, depth):
    """Check a(step*n + residue) == 0 mod modulus for all n <= depth.

    Plain series expansion to order step*depth + residue + 1; no modular
    forms involved, so this works for any progression.
    """
    if not (0 <= residue < step):
        raise ValueError("need 0 <= residue < step")
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    order = step * depth + residue + 1
    g = genfun(family, Mod(modulus), order)
    first = None
    for n in range(depth + 1):
        v = g.coeff(step * n + residue)
        if v:
            first = (n, v)
            break
    return DirectVerdict(
        family=family,
        step=step,
        residue=residue,
        modulus=modulus,
        depth=depth,
        order=order,
        ok=first is None,
        first_failure=first,
    )
