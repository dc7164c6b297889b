"""Certificate framework for congruences on arithmetic progressions.

An instance fixes (m, M, N, t, r) with r supported on divisors of M, plus
an auxiliary exponent vector r' on divisors of N.  The machinery:

  * the orbit P(t) of the residue t under s acting through
    t' = t s + (s-1)/24 * sum(delta r_delta), s a square unit mod 24m
  * the six Delta^* admissibility conditions
  * per-coset lower bounds p (from r, minimized over lambda) and p' (from r')
  * an exact rational bound nu; checking the progression coefficients up to
    floor(nu) upgrades consistency to proof

The finite check itself expands A(q) = prod f_delta^{r_delta} mod u and
looks at every class a(m n + t') for t' in the orbit.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .etaq import divisors, factorize, index_gamma0
from .qfuncs import expand_fproduct
from .series import Mod


@dataclass
class RaduInstance:
    m: int
    M: int
    N: int
    t: int
    r: dict           # divisor of M -> exponent
    r_prime: dict     # divisor of N -> exponent
    u: int            # modulus the congruence is claimed for

    def __post_init__(self):
        if not (0 <= self.t < self.m):
            raise ValueError("need 0 <= t < m")
        self.r = _on_divisors(self.r, self.M, "M")
        self.r_prime = _on_divisors(self.r_prime, self.N, "N")

    @property
    def kappa(self):
        return math.gcd(self.m * self.m - 1, 24)

    def sum_r(self):
        return sum(self.r.values())

    def sum_delta_r(self):
        return sum(d * r for d, r in self.r.items())


def _on_divisors(mapping, n, label):
    divs = divisors(n)
    out = {d: 0 for d in divs}
    for d, r in mapping.items():
        d = int(d)
        if d not in out:
            raise ValueError("index %d is not a divisor of %s = %d" % (d, label, n))
        out[d] = int(r)
    return out


def squares_mod(n):
    """Sorted squares of units modulo n."""
    return sorted({w * w % n for w in range(1, n) if math.gcd(w, n) == 1})


@dataclass
class Orbit:
    values: tuple
    t_min: int


def orbit_P(inst):
    """Residue classes reachable from t; every acting s is 1 mod 24."""
    m = inst.m
    sdr = inst.sum_delta_r()
    out = set()
    for s in squares_mod(24 * m):
        if (s - 1) % 24:
            raise AssertionError("square unit %d mod %d is not 1 mod 24" % (s, 24 * m))
        out.add((inst.t * s + (s - 1) // 24 * sdr) % m)
    values = tuple(sorted(out))
    return Orbit(values=values, t_min=values[0])


def delta_star_check(inst):
    """The six admissibility conditions, reported one bool each."""
    m, M, N = inst.m, inst.M, inst.N
    kap = inst.kappa
    r = inst.r
    c1 = all(p in factorize(N) for p in factorize(m))
    active = [d for d, v in r.items() if v]
    c2 = all((m * N) % d == 0 for d in active)
    if c2:
        s3 = sum(v * (m * N // d) for d, v in r.items())
        c3 = (kap * N * s3) % 24 == 0
    else:
        s3f = sum(Fraction(v * m * N, d) for d, v in r.items())
        c3 = s3f.denominator == 1 and (kap * N * s3f.numerator) % 24 == 0
    c4 = (kap * N * inst.sum_r()) % 8 == 0
    g = math.gcd(-24 * kap * inst.t - kap * inst.sum_delta_r(), 24 * m)
    c5 = N % (24 * m // g) == 0
    if m % 2 == 0:
        prod = 1
        for d, v in r.items():
            prod *= d ** abs(v)
        s2 = 0
        j = prod
        while j % 2 == 0:
            j //= 2
            s2 += 1
        c6 = ((kap * N) % 4 == 0 and (s2 * N) % 8 == 0) or (
            s2 % 2 == 0 and ((1 - j) * N) % 8 == 0
        )
    else:
        c6 = True
    return (c1, c2, c3, c4, c5, c6)


def coset_reps(n):
    """Matrices [[1, 0], [delta, 1]] for delta | n.

    This set only covers all cusp classes when n or n/2 is squarefree;
    refuse otherwise rather than silently under-checking.
    """
    def squarefree(x):
        return all(e == 1 for e in factorize(x).values()) if x > 1 else True

    if not (squarefree(n) or (n % 2 == 0 and squarefree(n // 2))):
        raise ValueError("level %d needs a fuller coset traversal than divisors give" % n)
    return [((1, 0), (d, 1)) for d in divisors(n)]


def p_lower(inst, gamma):
    """min over lambda of (1/24) sum r_delta gcd(delta(a + kappa lambda c), mc)^2 / (delta m)."""
    (a, _), (c, _) = gamma
    m = inst.m
    kap = inst.kappa
    best = None
    for lam in range(m):
        total = Fraction(0)
        for d, v in inst.r.items():
            if v:
                g = math.gcd(d * (a + kap * lam * c), m * c)
                total += Fraction(v * g * g, d * m)
        total /= 24
        if best is None or total < best:
            best = total
    return best


def p_prime_lower(inst, gamma):
    """(1/24) sum r'_delta gcd(delta, c)^2 / delta."""
    (_, _), (c, _) = gamma
    total = Fraction(0)
    for d, v in inst.r_prime.items():
        if v:
            g = math.gcd(d, c)
            total += Fraction(v * g * g, d)
    return total / 24


def nu_bound(inst, t_min=None):
    """Exact rational depth bound; checking past floor(nu) proves the claim."""
    if t_min is None:
        t_min = orbit_P(inst).t_min
    idx = index_gamma0(inst.N)
    total = Fraction(inst.sum_r() + sum(inst.r_prime.values())) * idx
    total -= sum(d * v for d, v in inst.r_prime.items())
    total -= Fraction(inst.sum_delta_r(), inst.m)
    nu = total / 24 - Fraction(t_min, inst.m)
    return nu, math.floor(nu)


def find_uniform_rprime(inst, cap=200):
    """Smallest x with r' = {1: x} clearing every p + p' >= 0, if any."""
    reps = coset_reps(inst.N)
    worst = min(p_lower(inst, g) for g in reps)
    for x in range(cap + 1):
        if worst + Fraction(x, 24) >= 0:
            return {1: x}
    raise ValueError("no uniform r' up to %d clears the cusp bounds" % cap)


@dataclass
class RaduVerdict:
    instance: RaduInstance
    delta_star: tuple
    coset_ok: bool
    cusp_bounds: dict      # delta -> (p, p', sum)
    cusp_ok: bool
    orbit: tuple
    t_min: int
    nu: Fraction
    nu_floor: int
    depth_checked: int
    order: int
    ok: bool
    first_failure: object
    hook_ok: object        # None when no hook was given
    status: str


def radu_verify(inst, u=None, depth=None, series_hook=None):
    """Run the whole certificate: hypotheses, bound, and finite check.

    depth defaults to floor(nu).  series_hook, if given, is a callable
    (ring, order) -> TruncatedSeries producing the generating function the
    instance is supposed to encode; A(q) is compared against it to order
    min(500, expansion order) as an independent cross-check.
    """
    if u is None:
        u = inst.u
    ds = delta_star_check(inst)
    try:
        reps = coset_reps(inst.N)
        coset_ok = True
    except ValueError:
        reps = []
        coset_ok = False
    bounds = {}
    for g in reps:
        d = g[1][0]
        p = p_lower(inst, g)
        pp = p_prime_lower(inst, g)
        bounds[d] = (p, pp, p + pp)
    cusp_ok = coset_ok and all(v[2] >= 0 for v in bounds.values())
    orb = orbit_P(inst)
    nu, nu_floor = nu_bound(inst, orb.t_min)
    depth_checked = nu_floor if depth is None else depth
    hypotheses = all(ds) and coset_ok and cusp_ok
    order = inst.m * (depth_checked + 1) + max(orb.values) + 1
    a = expand_fproduct(inst.r, Mod(u), order)
    first = None
    for n in range(depth_checked + 1):
        for tp in orb.values:
            if a.coeff(inst.m * n + tp):
                first = (n, tp, a.coeff(inst.m * n + tp))
                break
        if first:
            break
    hook_ok = None
    if series_hook is not None:
        horder = min(500, order)
        want = series_hook(Mod(u), horder)
        from .series import truncate

        hook_ok = truncate(a, horder) == truncate(want, horder)
    ok = first is None
    if not ok:
        status = "refuted"
    elif hypotheses and depth_checked >= nu_floor:
        status = "proved"
    else:
        status = "consistent"
    return RaduVerdict(
        instance=inst,
        delta_star=ds,
        coset_ok=coset_ok,
        cusp_bounds=bounds,
        cusp_ok=cusp_ok,
        orbit=orb.values,
        t_min=orb.t_min,
        nu=nu,
        nu_floor=nu_floor,
        depth_checked=depth_checked,
        order=order,
        ok=ok,
        first_failure=first,
        hook_ok=hook_ok,
        status=status,
    )


def instance_from_dict(d):
    return RaduInstance(
        m=int(d["m"]),
        M=int(d["M"]),
        N=int(d["N"]),
        t=int(d["t"]),
        r={int(k): int(v) for k, v in d["r"].items()},
        r_prime={int(k): int(v) for k, v in d.get("r_prime", {}).items()},
        u=int(d["u"]),
    )


def instance_to_dict(inst):
    return {
        "m": inst.m,
        "M": inst.M,
        "N": inst.N,
        "t": inst.t,
        "r": {str(k): v for k, v in inst.r.items() if v},
        "r_prime": {str(k): v for k, v in inst.r_prime.items() if v},
        "u": inst.u,
    }


def load_instance(path):
    with open(path) as fh:
        return instance_from_dict(json.load(fh))
