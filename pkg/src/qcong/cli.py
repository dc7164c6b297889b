"""Command line front end.  Exit codes: 0 all checks passed, 1 at least
one check failed or found a counterexample, 2 usage or input errors."""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import engine, identities
from .etaq import (
    EtaQuotient,
    form_meta,
    min_level,
    pow2_family_hypothesis,
    pow2_family_quotient,
    pow2_family_table,
    primepow_family_hypothesis,
    primepow_family_quotient,
    primepow_family_table,
)
from .hecke import ROWS, verify_row
from .qfuncs import PartitionFamily, genfun
from .radu import load_instance, radu_verify
from .series import Mod, ZZ


def _common(sub):
    sub.add_argument("--depth", type=int, default=None)
    sub.add_argument("--order", type=int, default=None)
    sub.add_argument("--mod", type=int, default=None)
    sub.add_argument("--json", dest="json_path", default=None)
    sub.add_argument("--parallel", type=int, default=1)
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--include-conjectures", action="store_true")


def build_parser():
    ap = argparse.ArgumentParser(prog="qcong")
    subs = ap.add_subparsers(dest="command", required=True)

    p = subs.add_parser("expand", help="print generating function coefficients")
    p.add_argument("--family", choices=("a", "abar"), required=True)
    p.add_argument("--c", type=int, required=True)
    _common(p)

    p = subs.add_parser("claim", help="run congruence catalog entries")
    p.add_argument("--id", action="append", dest="ids", default=None)
    p.add_argument("--all", action="store_true")
    p.add_argument("--catalog", default=None, help="claims file (default: packaged)")
    _common(p)

    p = subs.add_parser("identity", help="check dissection identities")
    p.add_argument("--id", action="append", dest="ids", default=None)
    p.add_argument("--all", action="store_true")
    _common(p)

    p = subs.add_parser("radu", help="run a progression certificate from a file")
    p.add_argument("--file", required=True)
    _common(p)

    p = subs.add_parser("eta", help="eta-quotient bookkeeping")
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--exponents", default=None, help="like 1:816,2:-36")
    p.add_argument("--family", choices=("pow2", "primepow"), default=None)
    p.add_argument("--params", default=None, help="like alpha=1,m=1,k=2")
    p.add_argument("--sample", type=int, default=0)
    _common(p)

    p = subs.add_parser("hecke", help="verify the isolated rows via Hecke images")
    p.add_argument("--c", type=int, default=None, help="subscript of one row")
    p.add_argument("--all", action="store_true")
    _common(p)

    p = subs.add_parser("density", help="share of coefficients divisible by mod")
    p.add_argument("--family", choices=("a", "abar"), required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--stride", type=int, default=1)
    _common(p)

    p = subs.add_parser("characterize", help="residue classification checkers")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--n-max", type=int, default=1000)
    _common(p)

    return ap


def _cmd_expand(args):
    order = args.order if args.order is not None else 10
    ring = ZZ if args.mod is None else Mod(args.mod)
    f = genfun(PartitionFamily(args.family, args.c), ring, order)
    print(", ".join(str(int(f.coeff(n))) for n in range(order)))
    return 0


def _cmd_claim(args):
    claims = engine.load_claims(args.catalog)
    if args.ids:
        by_id = {c.id: c for c in claims}
        missing = [i for i in args.ids if i not in by_id]
        if missing:
            print("unknown claim ids: %s" % ", ".join(missing), file=sys.stderr)
            return 2
        claims = [by_id[i] for i in args.ids]
        include = True  # explicit selection runs whatever was named
    elif args.all:
        include = args.include_conjectures
    else:
        print("claim: need --id or --all", file=sys.stderr)
        return 2
    report = engine.run_catalog(
        claims,
        depth=args.depth,
        include_conjectures=include,
        parallel=args.parallel,
    )
    for verdict in report.verdicts:
        states = {}
        for ch in verdict.checks:
            states[ch.verdict] = states.get(ch.verdict, 0) + 1
        summary = ", ".join("%d %s" % (v, k) for k, v in sorted(states.items()))
        print("%-4s %-26s %s" % ("ok" if verdict.ok else "FAIL", verdict.claim.id, summary))
        for ch in verdict.checks:
            if ch.witness is not None:
                params = ",".join("%s=%d" % kv for kv in ch.params) or "-"
                print(
                    "     witness %s c=%d: value(%dn+%d) at n=%d is %d mod %d"
                    % (params, ch.c, ch.step, ch.residue, ch.witness[0], ch.witness[1], ch.modulus)
                )
    if args.json_path:
        engine.save_report(report, args.json_path)
    return 0 if report.ok else 1


def _cmd_identity(args):
    if args.ids:
        try:
            cases = [identities.case_by_id(i) for i in args.ids]
        except KeyError as exc:
            print("unknown identity id: %s" % exc, file=sys.stderr)
            return 2
    else:
        cases = identities.CASES
    failures = 0
    results = []
    for case in cases:
        if args.order is not None:
            case = identities.IdentityCase(case.id, case.lhs, case.rhs, args.order, case.modulus)
        verdict = identities.verify_identity(case)
        results.append(verdict)
        if verdict.ok:
            print("ok   %s (order %d)" % (case.id, case.order))
        else:
            failures += 1
            if verdict.error is not None:
                print("FAIL %s: error at %s: %s" % (case.id, verdict.error[0], verdict.error[1]))
            else:
                n, lv, rv = verdict.first_mismatch
                print("FAIL %s: q^%d has %d vs %d" % (case.id, n, lv, rv))
    if args.json_path:
        payload = [
            {
                "id": v.case.id,
                "order": v.case.order,
                "ok": v.ok,
                "first_mismatch": list(v.first_mismatch) if v.first_mismatch else None,
                "error": list(v.error) if v.error else None,
            }
            for v in results
        ]
        with open(args.json_path, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return 1 if failures else 0


def _cmd_radu(args):
    inst = load_instance(args.file)
    verdict = radu_verify(inst, depth=args.depth)
    print("instance m=%d M=%d N=%d t=%d u=%d" % (inst.m, inst.M, inst.N, inst.t, inst.u))
    print("delta* conditions:", "all hold" if all(verdict.delta_star) else verdict.delta_star)
    print("orbit classes P(t) = {%s}" % ", ".join(str(t) for t in verdict.orbit))
    print("nu = %s, floor %d" % (verdict.nu, verdict.nu_floor))
    for delta, (p, pp, total) in sorted(verdict.cusp_bounds.items()):
        print("  cusp delta=%-3d p=%s p'=%s sum=%s" % (delta, p, pp, total))
    print("checked n <= %d (expansion order %d)" % (verdict.depth_checked, verdict.order))
    if verdict.first_failure is not None:
        print("counterexample:", verdict.first_failure)
    print("status:", verdict.status)
    if args.json_path:
        payload = {
            "status": verdict.status,
            "ok": verdict.ok,
            "orbit": list(verdict.orbit),
            "nu_floor": verdict.nu_floor,
            "depth": verdict.depth_checked,
        }
        with open(args.json_path, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return 0 if verdict.ok else 1


def _parse_exponents(text):
    out = {}
    for part in text.split(","):
        k, _, v = part.partition(":")
        out[int(k)] = int(v)
    return out


def _parse_params(text):
    out = {}
    for part in text.split(","):
        k, _, v = part.partition("=")
        out[k.strip()] = int(v)
    return out


def _print_meta(meta):
    print("level %d, weight %s%s" % (
        meta.level, meta.weight, "" if meta.weight_is_integral else " (not integral)"))
    c1, c2 = meta.cond24
    print("24-divisibility: %s / %s" % ("holds" if c1 else "BROKEN",
                                        "holds" if c2 else "BROKEN"))
    print("index in the full modular group: %d" % meta.index)
    if meta.sturm is not None:
        print("sturm bound %d, character discriminant %s" % (meta.sturm, meta.character_discriminant))
    holo = "holomorphic" if meta.holomorphic else "NOT holomorphic"
    bad = {d: o for d, o in meta.cusp_orders.items() if o < 0}
    print("%s%s" % (holo, "" if not bad else ", negative cusp orders %s" % bad))


def _cmd_eta(args):
    if args.family is None:
        if args.level is None or args.exponents is None:
            print("eta: need --level and --exponents, or --family", file=sys.stderr)
            return 2
        meta = form_meta(EtaQuotient(args.level, _parse_exponents(args.exponents)))
        _print_meta(meta)
        return 0

    if args.sample:
        rng = random.Random(args.seed)
        disagreements = 0
        for _ in range(args.sample):
            if args.family == "pow2":
                params = {"alpha": rng.randint(1, 4), "m": rng.choice((1, 3, 5, 7)), "k": rng.randint(2, 6)}
                eq = pow2_family_quotient(**params)
                table = pow2_family_table(**params)
            else:
                params = {"p": rng.choice((5, 7, 11, 13)), "a": 1, "k": rng.randint(1, 4)}
                params["t"] = params["p"] * rng.choice((1, params["p"]))
                eq = primepow_family_quotient(**params)
                table = primepow_family_table(**params)
            holo, orders = eq.is_holomorphic()
            table_ok = all(value >= 0 for _, value in table)
            mark = "agree" if holo == table_ok else "DISAGREE"
            if holo != table_ok:
                disagreements += 1
            print("%s %s: holomorphic=%s table=%s" % (mark, params, holo, table_ok))
        print("%d/%d samples agree" % (args.sample - disagreements, args.sample))
        return 1 if disagreements else 0

    if args.params is None:
        print("eta: --family needs --params", file=sys.stderr)
        return 2
    params = _parse_params(args.params)
    if args.family == "pow2":
        eq = pow2_family_quotient(**params)
        hyp = pow2_family_hypothesis(**params)
        table = pow2_family_table(**params)
        exps = {24: 3 ** (params["k"] + 1) - 2, 48: -(2 ** (params["alpha"] + 1) * params["m"] - 3),
                72: -(3 ** params["k"]), 96: 2 ** params["alpha"] * params["m"] - 1}
    else:
        eq = primepow_family_quotient(**params)
        hyp = primepow_family_hypothesis(**params)
        table = primepow_family_table(**params)
        p, a, k, t = params["p"], params["a"], params["k"], params["t"]
        exps = {24: p ** (a + k) - 2, 48: -(2 * t - 3), 96: t - 1, 24 * p ** a: -(p ** k)}
    _print_meta(form_meta(eq))
    print("hypothesis satisfied:", hyp)
    print("smallest level with 24-divisibility: %d" % min_level(exps, 96))
    for label, value in table:
        print("  table row %-40s %s (%s)" % (label, value, "ok" if value >= 0 else "negative"))
    return 0


def _cmd_hecke(args):
    rows = ROWS
    if args.c is not None:
        rows = [r for r in ROWS if r.c == args.c]
        if not rows:
            print("no row with subscript %d" % args.c, file=sys.stderr)
            return 2
    elif not args.all:
        print("hecke: need --c or --all", file=sys.stderr)
        return 2
    bad = 0
    for row in rows:
        verdict = verify_row(row, depth=args.depth)
        if not verdict.ok:
            bad += 1
        print(
            "%-4s a_%d(%dn+%d) mod %d: weight %s, sturm %d, checked %d coefficients, %s"
            % (
                "ok" if verdict.ok else "FAIL",
                row.c, row.p, row.b, row.p,
                verdict.meta.weight, verdict.meta.sturm, verdict.depth, verdict.status,
            )
        )
        if verdict.first_failure is not None:
            print("     first nonzero image coefficient:", verdict.first_failure)
    return 1 if bad else 0


def _cmd_density(args):
    if args.mod is None:
        print("density: need --mod", file=sys.stderr)
        return 2
    share = engine.estimate_density(
        PartitionFamily(args.family, args.c), args.mod, args.x, stride=args.stride
    )
    print("%s (= %.6f) of n in [1, %d]%s have coefficient divisible by %d" % (
        share, float(share), args.x,
        "" if args.stride == 1 else " sampled every %d" % args.stride, args.mod))
    return 0


def _cmd_characterize(args):
    if args.mod not in (4, 8):
        print("characterize: --mod must be 4 or 8", file=sys.stderr)
        return 2
    check = (
        engine.check_characterization_mod4
        if args.mod == 4
        else engine.check_characterization_mod8
    )
    verdict = check(args.c, args.n_max)
    if verdict.ok:
        print("ok: subscript %d matches the mod-%d classification for n <= %d"
              % (args.c, args.mod, args.n_max))
        return 0
    n, got, want = verdict.first_failure
    print("FAIL at n=%d: coefficient is %d, classification predicts %d" % (n, got, want))
    return 1


_COMMANDS = {
    "expand": _cmd_expand,
    "claim": _cmd_claim,
    "identity": _cmd_identity,
    "radu": _cmd_radu,
    "eta": _cmd_eta,
    "hecke": _cmd_hecke,
    "density": _cmd_density,
    "characterize": _cmd_characterize,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError, KeyError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
