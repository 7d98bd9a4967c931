"""Weight distributions of p-ary cyclic codes from quadratic-form censuses.

Every subcommand prints one report in the chosen format.  Exit status is 0
when all cross-checks hold, 1 on a mismatch and 2 on invalid parameters.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

import numpy as np
import sympy

from . import census as census_mod
from . import codes, counting, expsum, gf, quadform, scheme
from .checks import Check
from .errors import CyclicWeightsError, NonPrimeP

ORACLES = ("closed", "census", "brute", "all")


def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


class Report:
    def __init__(self, params: dict):
        self.params = params
        self.result: dict = {}
        self.rows: list[tuple[str, object]] = []  # CSV/text data rows
        self.header = ("key", "value")
        self.checks: list[Check] = []

    def check(self, name, lhs, rhs):
        self.checks.append(Check(name, lhs, rhs))

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            doc = {"params": _jsonable(self.params), "result": _jsonable(self.result),
                   "checks": [c.as_dict() for c in self.checks]}
            return json.dumps(doc, sort_keys=True, indent=2) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.header)
            for row in self.rows:
                w.writerow([str(v) for v in row])
            return buf.getvalue()
        lines = [f"{k} = {v}" for k, v in sorted(self.params.items())]
        lines += [f"{a}: {b}" for a, b in self.rows]
        lines += [f"[{'ok' if c.ok else 'FAIL'}] {c.name}: {c.lhs} vs {c.rhs}" for c in self.checks]
        return "\n".join(lines) + "\n"


def _field(args):
    return gf.make_field(args.p, args.m)


def _census_routes(args, report: Report, which: str) -> census_mod.RankCensus:
    """Census by the requested route(s); 'all' also cross-checks them."""
    p, m = args.p, args.m
    routes = {}
    if which in ("closed", "all"):
        routes["closed"] = census_mod.census_closed_form(p, m)
    if which in ("census", "brute", "all"):
        ctx = _field(args)
        routes["census"] = census_mod.run_census(ctx, workers=args.workers, max_enum=args.max_enum)
    if len(routes) == 2:
        for name, v in routes["closed"].as_dict().items():
            report.check(f"closed form = census: {name}", v, routes["census"].as_dict()[name])
    return routes.get("census") or routes["closed"]


# -- subcommands ----------------------------------------------------------------

def cmd_field(args, report: Report):
    ctx = _field(args)
    report.result = {"q": ctx.q, "modulus": gf.format_poly(ctx.modulus),
                     "modulus_coefficients": list(ctx.modulus), "primitive_element": ctx.pi,
                     "basis_traces": [ctx.trace(int(b)) for b in ctx.place]}
    report.rows = [(k, v) for k, v in sorted(report.result.items())]
    report.check("modulus is primitive", gf.is_primitive_modulus(ctx.p, ctx.m, ctx.modulus), True)
    report.check("pi^(q-1) = 1", ctx.pow(ctx.pi, ctx.order), 1)


def cmd_coset(args, report: Report):
    n = args.p**args.m - 1
    if args.s:
        report.header = ("s", "coset")
        cos = {s: sorted(codes.cyclotomic_coset(args.p, args.m, s)) for s in args.s}
        report.result = {"cosets": {str(s): c for s, c in cos.items()}}
        report.rows = [(s, " ".join(map(str, c))) for s, c in cos.items()]
        for s, c in cos.items():
            report.check(f"|coset({s})| divides m", args.m % len(c), 0)
        return
    spec = codes.code_spec(args.code, args.p, args.m)
    cos = {s: sorted(codes.cyclotomic_coset(args.p, args.m, s % n)) for s in spec.exponents}
    report.header = ("s", "coset")
    report.result = {"code": spec.name, "cosets": {str(s): c for s, c in cos.items()},
                     "nonconjugate": spec.nonconjugate()}
    report.rows = [(s, " ".join(map(str, c))) for s, c in cos.items()]
    report.check("nonzeros are non-conjugate", spec.nonconjugate(), True)


def cmd_census(args, report: Report):
    which = "census" if args.oracle == "brute" else args.oracle
    c = _census_routes(args, report, which)
    report.header = ("counter", "value")
    report.result = {"census": c.as_dict()}
    report.rows = list(c.as_dict().items())
    a_values = scheme.top_a_values(args.p, args.m) if args.p == 3 and args.m >= 5 else None
    for chk in census_mod.linear_identities(c, args.p, args.m, a_values):
        report.checks.append(chk)


def cmd_moments(args, report: Report):
    c = _census_routes(args, report, "census" if args.oracle == "brute" else args.oracle)
    ks = range(1, 6) if args.p == 3 else range(1, 4)
    report.header = ("k", "moment")
    res = {}
    for k in ks:
        mc = census_mod.moment_check(c, k, args.p, args.m)
        res[str(k)] = mc.lhs
        report.rows.append((k, mc.lhs))
        report.check(f"moment {k}" if k < 5 else "five-variable count", mc.lhs, mc.rhs)
    report.result = {"moments": res}


def cmd_scheme(args, report: Report):
    n = (args.m + 1) // 2 if args.variant == "symmetric" else args.m // 2
    sp = scheme.SchemeParams(args.p, args.m, args.d or max(n - 2, 1), args.variant)
    dd = scheme.distance_distribution(sp)
    report.header = ("i", "a_i")
    report.rows = list(enumerate(dd.a))
    report.result = {"n": sp.n, "d": sp.d, "b": sp.b, "c": sp.c, "a": list(dd.a)}
    report.check("sum of a_i = c^(n-d+1)", dd.total, sp.size)
    if args.variant == "symmetric" and args.p == 3 and sp.size == args.p ** (3 * args.m):
        c = census_mod.census_closed_form(args.p, args.m)
        n = sp.n
        for chk in census_mod.linear_identities(c, args.p, args.m, (dd.a[n], dd.a[n - 1], dd.a[n - 2]))[-3:]:
            report.checks.append(chk)


_SYSTEMS = [(2, True), (3, True), (4, True), (3, False), (4, False)]


def cmd_count(args, report: Report):
    ctx = _field(args)
    systems = [(args.nvars, not args.inhomogeneous)] if args.nvars else _SYSTEMS
    report.header = ("system", "count")
    res = {}
    for nv, hom in systems:
        name = f"{'M' if hom else 'T'}{nv}"
        got = counting.count_power_system(ctx, nv, hom, max_enum=args.max_enum).count
        res[name] = got
        report.rows.append((name, got))
        try:
            want = counting.power_system_formula(args.p, args.m, nv, hom)
        except CyclicWeightsError:
            continue
        report.check(f"{name} enumeration = closed form", got, want)
    report.result = {"counts": res}


def _distribution(args, report: Report, which: str):
    c = _census_routes(args, report, which)
    if args.code == "c1":
        return codes.c1_distribution(c, args.p, args.m, include_zero=args.include_zero_word)
    return codes.c2_distribution(c, args.p, args.m, include_zero=args.include_zero_word)


def cmd_weights(args, report: Report):
    codes.code_spec(args.code, args.p, args.m)
    codes._require_code_params(args.p, args.m, args.code)
    ctx = None
    if args.oracle == "brute":
        if args.code != "c1":
            raise CyclicWeightsError("exhaustive enumeration of C2 is out of reach; use --oracle all or verify")
        ctx = _field(args)
        dist = codes.brute_distribution(ctx, codes.c1_spec(args.p, args.m), workers=args.workers,
                                        max_enum=args.max_enum, include_zero=args.include_zero_word)
    else:
        dist = _distribution(args, report, args.oracle)
    if args.oracle == "all":
        ctx = _field(args)
        spec = codes.code_spec(args.code, args.p, args.m)
        if args.code == "c1" and ctx.q**3 <= args.max_enum:
            brute = codes.brute_distribution(ctx, spec, workers=args.workers, max_enum=args.max_enum,
                                             include_zero=args.include_zero_word)
            report.check("formula = exhaustive codewords", dist.as_dict(), brute.as_dict())
        if args.code == "c2":
            cen = census_mod.census_closed_form(args.p, args.m)
            alt = codes.c2_from_table2(cen, args.p, args.m, include_zero=args.include_zero_word)
            report.check("R' table = S' table aggregated", dist.as_dict(), alt.as_dict())
        rep = codes.sample_verify(ctx, spec, args.samples, args.seed)
        report.check(f"sampled codeword weights ({rep.samples}, seed {rep.seed}) mismatches", len(rep.mismatches), 0)
    report.header = ("weight", "multiplicity")
    report.rows = list(dist.as_dict().items())
    report.result = {"code": args.code, "weights": dist.as_dict(), "zero_rows": dist.zero_rows,
                     "total": dist.total()}
    report.check("number of codewords", dist.total(), dist.expected_total())


def cmd_verify(args, report: Report):
    ctx = _field(args)
    spec = codes.code_spec(args.code, args.p, args.m)
    rep = codes.sample_verify(ctx, spec, args.samples, args.seed)
    report.header = ("coefficients", "predicted", "observed")
    report.rows = [(" ".join(map(str, t)), want, got) for t, want, got in rep.mismatches]
    report.check(f"codeword weight mismatches over {rep.samples} samples", len(rep.mismatches), 0)
    s_bad = _sum_mismatches(ctx, args.samples, args.seed)
    report.check(f"S value mismatches over {args.samples} samples", s_bad, 0)
    if args.code == "c2":
        t2 = codes.table2_sample_check(ctx, min(args.samples, 1000), args.seed)
        report.check("sampled S' phase patterns", sum(not c.ok for c in t2), 0)
    report.result = {"samples": rep.samples, "mismatches": len(rep.mismatches), "s_mismatches": s_bad}


def _sum_mismatches(ctx, samples: int, seed: int) -> int:
    rng = np.random.default_rng(seed)
    HA, HB, HG = quadform.slot_grams(ctx)
    bad = 0
    for a, b, c in rng.integers(0, ctx.q, size=(samples, 3)):
        a, b, c = int(a), int(b), int(c)
        cls = quadform.classify_matrix((HA[a] + HB[b] + HG[c]) % ctx.p, ctx.p)
        bad += expsum.s_value(cls, ctx.p, ctx.m) != expsum.s_brute(ctx, a, b, c).value
    return bad


COMMANDS = {
    "field": cmd_field, "coset": cmd_coset, "census": cmd_census, "moments": cmd_moments,
    "scheme": cmd_scheme, "count": cmd_count, "weights": cmd_weights, "verify": cmd_verify,
}


HELP = {
    "field": "show the field modulus and primitive element",
    "coset": "list cyclotomic cosets of the code exponents",
    "census": "rank / quadratic-character census of the form family",
    "moments": "power moments of the exponential sums",
    "scheme": "distance distribution of the extremal scheme subset",
    "count": "solution counts of the power-sum systems",
    "weights": "weight distribution of C1 or C2",
    "verify": "compare sampled codeword weights with the closed forms",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=3, help="characteristic (default 3)")
    common.add_argument("--m", type=int, default=5, help="extension degree (default 5)")
    common.add_argument("--code", choices=("c1", "c2"), default="c1")
    common.add_argument("--oracle", choices=ORACLES, default="closed")
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--samples", type=int, default=1000)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--max-enum", type=int, default=census_mod.DEFAULT_MAX_ENUM,
                        help="largest exhaustive enumeration allowed")
    common.add_argument("--include-zero-word", action="store_true")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="cyclicweights", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common], help=HELP[name])
        if name == "coset":
            sp.add_argument("--s", type=int, action="append", help="exponent (repeatable)")
        if name == "scheme":
            sp.add_argument("--d", type=int, default=None)
            sp.add_argument("--variant", choices=("symmetric", "skew"), default="symmetric")
        if name == "count":
            sp.add_argument("--nvars", type=int, default=None)
            sp.add_argument("--inhomogeneous", action="store_true")
    return ap


def _params(args) -> dict:
    skip = {"format", "verbose", "command"}
    return {"command": args.command, **{k: v for k, v in sorted(vars(args).items()) if k not in skip}}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    report = Report(_params(args))
    try:
        if args.p < 2 or args.m < 1 or args.workers < 1 or args.samples < 1:
            raise CyclicWeightsError("p >= 2, m >= 1, workers >= 1 and samples >= 1 are required")
        if not sympy.isprime(args.p):
            raise NonPrimeP(f"p must be prime, got {args.p}")
        COMMANDS[args.command](args, report)
    except CyclicWeightsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(report.render(args.format))
    return 0 if report.ok else 1
