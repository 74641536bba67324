"""Command line entry point: ``rcolor <command> ...``.

Exit status is 0 when every check passes or is vacuous, 1 when any check
fails, and 2 for usage or resource errors.
"""

import argparse
import json
import sys

from . import series as S
from .modform import EtaQuotient, analyze, eta_expansion, hecke_Tp
from .arith import is_prime, kronecker
from .newman import (
    CongruenceFamily,
    c_level_families,
    families_part1,
    families_part2,
    family_part3,
    newman_shift,
    profile,
    verify_recurrence,
)
from .partitions import a_r, c_series
from .verify import (
    FAIL,
    Config,
    ResourceError,
    SeriesCache,
    check_family,
    run_suite,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _json_arg(text, what):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what} is not valid JSON: {exc}") from None


def _print_coeffs(values, out):
    for n, v in enumerate(values):
        print(f"{n}\t{v}", file=out)


def cmd_coeffs(args, out):
    _print_coeffs(a_r(args.r, args.limit, args.mod).tolist(), out)
    return EXIT_OK


def cmd_cseries(args, out):
    _print_coeffs(c_series(args.limit, args.mod).coefficients, out)
    return EXIT_OK


def cmd_check(args, out):
    fam = CongruenceFamily.from_json(_json_arg(args.family, "--family"))
    rep = check_family(fam, args.nmax, SeriesCache())
    print(json.dumps(rep.to_json(), indent=2), file=out)
    return EXIT_FAIL if rep.result == FAIL else EXIT_OK


def _need_prime(p):
    if p < 5 or not is_prime(p):
        raise UsageError(f"--p must be a prime >= 5, got {p}")


def cmd_newman(args, out):
    _need_prime(args.p)
    top = max(newman_shift(args.p), args.p**2 * args.nmax + newman_shift(args.p))
    c = c_series(top).series
    prof = profile(args.p, c)
    rep = verify_recurrence(args.p, args.nmax, c)
    print(json.dumps({"profile": prof.to_json(), "recurrence": rep.to_json()}, indent=2), file=out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_families(args, out):
    _need_prime(args.p)
    c = c_series(newman_shift(args.p)).series
    prof = profile(args.p, c)
    fams = []
    notes = []
    if args.p == 5:
        fams.append(family_part3(args.k))
    else:
        fams.append(families_part1(args.p, args.k, prof))
        if prof.xi % 5:
            fam = families_part2(args.p, args.k, prof)
            fams.append(fam)
            if fam.vacuous:
                notes.append("part 2 has no admissible residues for this p (vacuous)")
    fams.extend(c_level_families(args.p, args.k, prof))
    print(json.dumps({"profile": prof.to_json(), "families": [f.to_json() for f in fams],
                      "notes": notes}, indent=2), file=out)
    return EXIT_OK


def _form_arg(text):
    obj = _json_arg(text, "form")
    try:
        return EtaQuotient.from_json(obj), int(obj.get("E4_power", 0))
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"bad eta-quotient: {exc}") from None


def cmd_eta(args, out):
    if args.action != "analyze":
        raise UsageError(f"unknown eta action {args.action!r}")
    eq, e4 = _form_arg(args.form)
    meta = analyze(eq, e4)
    print(json.dumps({"form": eq.to_json(), "E4_power": e4, **meta.to_json()}, indent=2), file=out)
    return EXIT_OK


def cmd_hecke(args, out):
    eq, e4 = _form_arg(args.form)
    if not is_prime(args.p):
        raise UsageError(f"--p must be prime, got {args.p}")
    meta = analyze(eq, e4)
    if meta.total_weight.denominator != 1 or meta.total_weight < 1:
        raise UsageError("Hecke operators need a positive integral weight")
    if e4 and args.mod not in (3, 5) and args.mod != 0:
        raise UsageError("E4 factors are only supported mod 3 or mod 5 (where E4 = 1)")
    if e4 and args.mod == 0:
        raise UsageError("E4 factors need --mod 3 or --mod 5")
    k = int(meta.total_weight)
    chi_p = kronecker(meta.character_disc, args.p)
    need = args.p**args.times * args.through
    if need > Config().a_ceiling:
        raise ResourceError(f"expansion to order {need} exceeds ceiling")
    f = eta_expansion(eq, need, args.mod)
    if f.offset24:
        raise UsageError("form has a fractional leading exponent; Hecke operators need integral powers")
    for _ in range(args.times):
        f = hecke_Tp(f, args.p, k, chi_p)
    values = S.truncate(f, args.through).tolist()
    _print_coeffs(values, out)
    if args.mod:
        zero = all(v % args.mod == 0 for v in values)
        print(f"# all coefficients through {args.through} = 0 mod {args.mod}: {zero}", file=out)
    return EXIT_OK


def _summary_lines(report):
    for c in report["checks"]:
        yield f"{c['result']}\t{c['wall_time']:.3f}\t{c['check']}"
    s = report["summary"]
    yield f"# total={s['total']} pass={s['pass']} fail={s['fail']} vacuous={s['vacuous']}"


def cmd_suite(args, out):
    config = Config()
    if args.config:
        with open(args.config) as fh:
            try:
                config = Config.from_json(json.load(fh))
            except (ValueError, TypeError) as exc:
                raise UsageError(f"bad config: {exc}") from None
    report = run_suite(config)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    for line in _summary_lines(report):
        print(line, file=out)
    if args.figures:
        from .plots import render_suite_figures

        for path in render_suite_figures(report, args.figures):
            print(f"# figure {path}", file=out)
    return EXIT_FAIL if report["summary"]["fail"] else EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="rcolor", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="print a_r(0..N)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--mod", type=int, default=0)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("cseries", help="print c(0..N), the coefficients of f1*f2^2")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--mod", type=int, default=0)
    p.set_defaults(func=cmd_cseries)

    p = sub.add_parser("check", help="scan a congruence family")
    p.add_argument("--family", required=True, help='e.g. \'{"r":3,"A":7,"B":2,"mod":7}\'')
    p.add_argument("--nmax", type=int, required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("newman", help="xi/omega profile and recurrence check for a prime")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--nmax", type=int, default=60)
    p.set_defaults(func=cmd_newman)

    p = sub.add_parser("families", help="emit the mod-5 a_3 families for a prime as JSON")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, default=0)
    p.set_defaults(func=cmd_families)

    p = sub.add_parser("eta", help="eta-quotient analysis")
    p.add_argument("action", choices=["analyze"])
    p.add_argument("form", help='e.g. \'{"N": 4, "factors": {"1": 184, "2": 4}}\'')
    p.set_defaults(func=cmd_eta)

    p = sub.add_parser("hecke", help="apply T_p repeatedly to an eta-quotient")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--times", type=int, default=1)
    p.add_argument("--form", required=True)
    p.add_argument("--mod", type=int, default=0)
    p.add_argument("--through", type=int, required=True)
    p.set_defaults(func=cmd_hecke)

    p = sub.add_parser("suite", help="run every check")
    p.add_argument("--config")
    p.add_argument("--json")
    p.add_argument("--figures", help="directory for PNG figures")
    p.set_defaults(func=cmd_suite)
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (UsageError, ResourceError, S.SeriesError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
