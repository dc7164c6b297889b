"""Catalog runner: parameterized congruence claims, characterization
checkers, density estimates, and JSON reports.

A claim is a congruence family like "abar_{2i}(8n+7) == 0 mod 2^(k+2)"
stored as strings in a tiny arithmetic expression language over named
integer parameters.  verify_claim instantiates the parameters over their
ranges, expands each distinct (family, c, modulus) once at sufficient
order, and scans the progression.  Instantiations whose subscript lands
below 1 are reported as skipped, never silently dropped and never counted
as passes.

Claim statuses split in two: 'theorem' and 'remark' entries are load
bearing (a witness means the run failed), 'conjecture' and
'conjecture-strength' entries report 'consistent' or 'counterexample'
and are excluded from a default catalog run.
"""

from __future__ import annotations

import json
import multiprocessing
import platform
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from ._kernels import HAVE_NUMBA
from .qfuncs import PartitionFamily, genfun
from .series import Mod

SCHEMA_VERSION = 1

STATUSES = ("theorem", "remark", "conjecture", "conjecture-strength")
LOAD_BEARING = ("theorem", "remark")

# conjectures get a cheap shallow scan first; most false ones die here
STAGE_DEPTH = 32


class CatalogError(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer expressions over named parameters: "2^k*i+2^(k-1)-3"

def _tokenize(text):
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(("int", int(text[i:j])))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(("name", text[i:j]))
            i = j
        elif ch in "+-*^()":
            out.append((ch, ch))
            i += 1
        else:
            raise CatalogError("bad character %r in expression %r" % (ch, text))
    out.append(("end", None))
    return out


class _Parser:
    # expr := term (('+'|'-') term)*
    # term := unary ('*' unary)*
    # unary := '-' unary | power
    # power := atom ('^' unary)?      exponent must come out nonnegative

    def __init__(self, text, env):
        self.text = text
        self.env = env
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos][0]

    def take(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expr(self):
        v = self.term()
        while self.peek() in "+-":
            op = self.take()[0]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek() == "*":
            self.take()
            v = v * self.unary()
        return v

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek() == "^":
            self.take()
            e = self.unary()
            if e < 0:
                raise CatalogError("negative exponent in %r" % self.text)
            return v ** e
        return v

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return val
        if kind == "name":
            if val not in self.env:
                raise CatalogError("unknown parameter %r in %r" % (val, self.text))
            return self.env[val]
        if kind == "(":
            v = self.expr()
            if self.take()[0] != ")":
                raise CatalogError("unbalanced parentheses in %r" % self.text)
            return v
        raise CatalogError("unexpected %r in expression %r" % (kind, self.text))


def eval_expr(text, env=None):
    """Evaluate an integer expression with +, -, *, ^ and parameters."""
    p = _Parser(text, env or {})
    v = p.expr()
    if p.peek() != "end":
        raise CatalogError("trailing junk in expression %r" % text)
    return v


# ---------------------------------------------------------------------------
# claims

@dataclass(frozen=True)
class Claim:
    id: str
    family: str            # 'a' or 'abar'
    c_expr: str
    step_expr: str
    residue_expr: str
    mod_expr: str
    ranges: tuple          # ((name, lo, hi), ...) sorted by name
    depth: int
    status: str = "theorem"
    note: str = ""


def claim_from_dict(d):
    ranges = tuple(
        sorted((name, int(lo), int(hi)) for name, (lo, hi) in d.get("ranges", {}).items())
    )
    status = d.get("status", "theorem")
    if status not in STATUSES:
        raise CatalogError("claim %r has unknown status %r" % (d.get("id"), status))
    prog = d["progression"]
    return Claim(
        id=d["id"],
        family=d["family"],
        c_expr=str(d["c_expr"]),
        step_expr=str(prog["A_expr"]),
        residue_expr=str(prog["B_expr"]),
        mod_expr=str(d["mod_expr"]),
        ranges=ranges,
        depth=int(d["depth"]),
        status=status,
        note=d.get("note", ""),
    )


def claim_to_dict(claim):
    d = {
        "id": claim.id,
        "family": claim.family,
        "c_expr": claim.c_expr,
        "progression": {"A_expr": claim.step_expr, "B_expr": claim.residue_expr},
        "mod_expr": claim.mod_expr,
        "ranges": {name: [lo, hi] for name, lo, hi in claim.ranges},
        "depth": claim.depth,
        "status": claim.status,
    }
    if claim.note:
        d["note"] = claim.note
    return d


def load_claims(path=None):
    """Load the packaged claim catalog, or a catalog file at path."""
    if path is None:
        from importlib.resources import files

        text = files("qcong.data").joinpath("claims.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    claims = [claim_from_dict(d) for d in json.loads(text)]
    ids = [c.id for c in claims]
    if len(set(ids)) != len(ids):
        raise CatalogError("duplicate claim ids in catalog")
    return claims


def _instantiations(claim):
    names = [name for name, _, _ in claim.ranges]
    if not names:
        yield {}
        return

    def rec(i, env):
        if i == len(names):
            yield dict(env)
            return
        name, lo, hi = claim.ranges[i]
        for v in range(lo, hi + 1):
            env[name] = v
            yield from rec(i + 1, env)

    yield from rec(0, {})


@dataclass(frozen=True)
class Check:
    """One parameter instantiation of a claim."""

    params: tuple          # ((name, value), ...)
    c: int
    step: int
    residue: int
    modulus: int
    depth: int
    verdict: str           # pass | fail | consistent | counterexample | skipped
    witness: object = None # (n, value mod modulus) when the progression breaks


@dataclass(frozen=True)
class ClaimVerdict:
    claim: Claim
    checks: tuple
    ok: bool
    wall_ms: int


def _ensure_series(cache, family, c, modulus, order):
    key = (family, c, modulus)
    got = cache.get(key)
    if got is None or got.order < order:
        got = genfun(PartitionFamily(family, c), Mod(modulus), order)
        cache[key] = got
    return got


def _scan(series, step, residue, depth):
    co = series.coeffs()
    for n in range(depth + 1):
        v = co[step * n + residue]
        if v:
            return (n, int(v))
    return None


def verify_claim(claim, depth=None, cache=None):
    """Check every instantiation of a claim to the given depth.

    The expansion cache may be shared across claims; it maps
    (family, c, modulus) to the widest series expanded so far.
    """
    depth = claim.depth if depth is None else depth
    if depth < 1:
        raise CatalogError("depth must be >= 1")
    cache = {} if cache is None else cache
    t0 = time.perf_counter()

    insts = []
    for env in _instantiations(claim):
        c = eval_expr(claim.c_expr, env)
        step = eval_expr(claim.step_expr, env)
        residue = eval_expr(claim.residue_expr, env)
        modulus = eval_expr(claim.mod_expr, env)
        params = tuple(sorted(env.items()))
        if c >= 1:
            if step < 1 or not 0 <= residue < step:
                raise CatalogError(
                    "claim %s: bad progression %dn+%d" % (claim.id, step, residue)
                )
            if modulus < 2:
                raise CatalogError("claim %s: modulus %d" % (claim.id, modulus))
        insts.append((params, c, step, residue, modulus))

    # two passes: a shallow scan kills bad progressions before the full
    # depth expansion gets paid for
    stages = (STAGE_DEPTH, depth) if depth > STAGE_DEPTH else (depth,)
    witnesses = {}
    for d in stages:
        pending = [
            row for row in insts if row[1] >= 1 and row[0] not in witnesses
        ]
        if not pending:
            break
        need = {}
        for params, c, step, residue, modulus in pending:
            key = (claim.family, c, modulus)
            order = step * d + residue + 1
            need[key] = max(need.get(key, 0), order)
        for (fam, c, modulus), order in need.items():
            _ensure_series(cache, fam, c, modulus, order)
        for params, c, step, residue, modulus in pending:
            w = _scan(cache[(claim.family, c, modulus)], step, residue, d)
            if w is not None:
                witnesses[params] = w

    good = "pass" if claim.status in LOAD_BEARING else "consistent"
    bad = "fail" if claim.status in LOAD_BEARING else "counterexample"
    checks = []
    for params, c, step, residue, modulus in insts:
        if c < 1:
            checks.append(Check(params, c, step, residue, modulus, depth, "skipped"))
            continue
        w = witnesses.get(params)
        checks.append(
            Check(params, c, step, residue, modulus, depth, bad if w else good, w)
        )
    ok = all(ch.verdict not in ("fail", "counterexample") for ch in checks)
    wall_ms = int((time.perf_counter() - t0) * 1000)
    return ClaimVerdict(claim=claim, checks=tuple(checks), ok=ok, wall_ms=wall_ms)


# ---------------------------------------------------------------------------
# characterizations of the doubled family mod 4 and mod 8

def _is_square(n):
    return n >= 0 and isqrt(n) ** 2 == n


def _mixed_rep_count(n):
    # number of pairs k, l >= 1 with n == k^2 + 2*l^2
    count = 0
    l = 1
    while 2 * l * l < n:
        if _is_square(n - 2 * l * l):
            count += 1
        l += 1
    return count


def predicted_mod4(c, n):
    """Residue of abar_c(n) mod 4 for n >= 1 by classifying n."""
    if _is_square(n):
        return 2
    if n % 2 == 0 and _is_square(n // 2):
        return (2 * (c + 1)) % 4
    return 0


def predicted_mod8(c, n):
    """Residue of abar_c(n) mod 8 for n >= 1.

    n may sit in several classes at once (16 is a square and 4 times a
    square; 9 is a square and 1^2 + 2*2^2).  The residue is the sum of
    the contributions of every class containing n, and the mixed class
    k^2 + 2*l^2 contributes once per representation with k, l >= 1.
    """
    total = 0
    if _is_square(n):
        total += 2
    if n % 2 == 0 and _is_square(n // 2):
        k = isqrt(n // 2)
        total += 6 * (c + 1) if k % 2 == 0 else 2 * (c + 1)
    if n % 4 == 0 and _is_square(n // 4):
        total += 2 * (c + 1) * (c + 2)
    total += 4 * (c + 1) * _mixed_rep_count(n)
    return total % 8


@dataclass(frozen=True)
class CharacterizationVerdict:
    c: int
    modulus: int
    n_max: int
    ok: bool
    first_failure: object  # (n, got, predicted) or None


def _check_characterization(c, n_max, modulus, predict):
    if c < 1 or n_max < 1:
        raise ValueError("need c >= 1 and n_max >= 1")
    f = genfun(PartitionFamily("abar", c), Mod(modulus), n_max + 1)
    co = f.coeffs()
    first = None
    for n in range(1, n_max + 1):
        want = predict(c, n)
        if co[n] != want:
            first = (n, int(co[n]), want)
            break
    return CharacterizationVerdict(
        c=c, modulus=modulus, n_max=n_max, ok=first is None, first_failure=first
    )


def check_characterization_mod4(c, n_max):
    return _check_characterization(c, n_max, 4, predicted_mod4)


def check_characterization_mod8(c, n_max):
    return _check_characterization(c, n_max, 8, predicted_mod8)


# ---------------------------------------------------------------------------
# density

def estimate_density(family, modulus, x, stride=1):
    """Exact share of n in [1, x] with coefficient divisible by modulus.

    With stride > 1 only every stride-th n is sampled (n = stride,
    2*stride, ...); the denominator shrinks to the sample count.
    """
    if x < 1:
        raise ValueError("x must be >= 1")
    if stride < 1 or stride > x:
        raise ValueError("stride out of range")
    f = genfun(family, Mod(modulus), x + 1)
    co = f.coeffs()
    points = range(stride, x + 1, stride)
    hits = sum(1 for n in points if co[n] == 0)
    return Fraction(hits, len(points))


# ---------------------------------------------------------------------------
# reports

@dataclass(frozen=True)
class Report:
    schema_version: int
    environment: tuple     # ((key, value), ...) sorted
    verdicts: tuple

    @property
    def ok(self):
        return all(v.ok for v in self.verdicts)


def env_fingerprint():
    import numpy

    pairs = {
        "python": sys.version.split()[0],
        "platform": platform.platform(),
        "numpy": numpy.__version__,
        "accelerated": "numba" if HAVE_NUMBA else "pure",
    }
    return tuple(sorted(pairs.items()))


def _check_to_dict(ch):
    d = {
        "params": {name: value for name, value in ch.params},
        "c": ch.c,
        "progression": [ch.step, ch.residue],
        "modulus": ch.modulus,
        "depth": ch.depth,
        "verdict": ch.verdict,
    }
    if ch.witness is not None:
        d["witness"] = [ch.witness[0], ch.witness[1]]
    return d


def _check_from_dict(d):
    w = d.get("witness")
    return Check(
        params=tuple(sorted((k, int(v)) for k, v in d["params"].items())),
        c=int(d["c"]),
        step=int(d["progression"][0]),
        residue=int(d["progression"][1]),
        modulus=int(d["modulus"]),
        depth=int(d["depth"]),
        verdict=d["verdict"],
        witness=(int(w[0]), int(w[1])) if w is not None else None,
    )


def report_to_dict(report):
    return {
        "schema_version": report.schema_version,
        "environment": {k: v for k, v in report.environment},
        "entries": [
            {
                "claim": claim_to_dict(v.claim),
                "ok": v.ok,
                "wall_ms": v.wall_ms,
                "checks": [_check_to_dict(ch) for ch in v.checks],
            }
            for v in report.verdicts
        ],
    }


def report_from_dict(d):
    verdicts = []
    for e in d["entries"]:
        verdicts.append(
            ClaimVerdict(
                claim=claim_from_dict(e["claim"]),
                checks=tuple(_check_from_dict(ch) for ch in e["checks"]),
                ok=bool(e["ok"]),
                wall_ms=int(e["wall_ms"]),
            )
        )
    return Report(
        schema_version=int(d["schema_version"]),
        environment=tuple(sorted((k, str(v)) for k, v in d["environment"].items())),
        verdicts=tuple(verdicts),
    )


def save_report(report, path):
    with open(path, "w") as fh:
        json.dump(report_to_dict(report), fh, indent=2)
        fh.write("\n")


def load_report(path):
    with open(path) as fh:
        return report_from_dict(json.load(fh))


# ---------------------------------------------------------------------------
# catalog driver

def _verify_for_pool(args):
    claim, depth = args
    return verify_claim(claim, depth=depth)


def run_catalog(claims, depth=None, include_conjectures=False, parallel=1):
    """Verify a list of claims and assemble a report.

    Conjecture-status entries only run when include_conjectures is set.
    parallel > 1 fans independent claims out to worker processes; each
    claim is verified sequentially inside one worker.
    """
    ids = [c.id for c in claims]
    if len(set(ids)) != len(ids):
        raise CatalogError("duplicate claim ids")
    selected = [
        c for c in claims if include_conjectures or c.status in LOAD_BEARING
    ]
    if parallel > 1 and len(selected) > 1:
        with multiprocessing.Pool(parallel) as pool:
            verdicts = pool.map(
                _verify_for_pool, [(c, depth) for c in selected]
            )
    else:
        cache = {}
        verdicts = [verify_claim(c, depth=depth, cache=cache) for c in selected]
    return Report(
        schema_version=SCHEMA_VERSION,
        environment=env_fingerprint(),
        verdicts=tuple(verdicts),
    )
