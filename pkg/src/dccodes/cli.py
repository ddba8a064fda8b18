"""Command-line front end: ``python -m dccodes <verb> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from fractions import Fraction
from importlib import resources
from typing import Sequence, TextIO

from . import __version__
from .circulant import DccSpec, Family, build
from .classify import EXHAUSTIVE_MAX_LENGTH, SearchConfig, search_optimal, spot_check
from .errors import BudgetExceeded, DccError, InfeasibleError, ReferenceIncomplete
from .gf2 import LinearCode
from .gleason import (
    GleasonBasis,
    doubly_even_extremal,
    fit,
    instantiate,
    solve_parametric,
)
from .perf import (
    BddChannel,
    bdd_error_probability,
    lex_compare,
    load_table2,
    render_probability,
    theorem1_report,
)
from .shadow import OPEN_EXISTENCE_NOTE, bound_parameter, derive_families
from .wdist import (
    PartialWeightDistribution,
    WeightDistribution,
    bounded_distribution,
    bounded_work,
    default_jobs,
    full_distribution,
    min_weight,
)

# Conservative single-thread enumeration rate used to project runtimes.
STEPS_PER_SECOND = 5e7
EXTENDED_SECONDS = 600
FAST_TIER_MAX_LENGTH = 56

FAMILY_ALIASES = {"p": Family.PURE, "pure": Family.PURE, "b": Family.BORDERED, "bordered": Family.BORDERED}


def parse_family(text: str) -> Family:
    try:
        return FAMILY_ALIASES[text.strip().lower()]
    except KeyError:
        raise argparse.ArgumentTypeError(f"unknown family {text!r}; use pure or bordered") from None


def parse_code_spec(text: str) -> DccSpec:
    """``pure:1100...`` or ``B:1001...``."""
    if ":" not in text:
        raise argparse.ArgumentTypeError("code spec must look like FAMILY:ROW, e.g. pure:1110")
    fam, row = text.split(":", 1)
    return DccSpec.parse(parse_family(fam), row)


def parse_assignment(items: Sequence[str]) -> dict[str, int]:
    out = {}
    for item in items:
        for part in item.split(","):
            if not part.strip():
                continue
            k, v = part.split("=")
            out[k.strip()] = int(v)
    return out


def read_distribution(path: str, n: int | None) -> WeightDistribution:
    with open(path) as fh:
        text = " ".join(line.split("#", 1)[0] for line in fh)
    return WeightDistribution.parse_sparse(text, n)


def _gate(steps: float, extended: bool, what: str) -> None:
    seconds = steps / STEPS_PER_SECOND
    if seconds > EXTENDED_SECONDS and not extended:
        raise BudgetExceeded(
            f"{what} is projected at about {seconds / 60:.0f} min single-threaded; pass --extended"
        )


def _spec_from_args(args) -> DccSpec:
    if getattr(args, "code", None):
        return parse_code_spec(args.code)
    if not args.family or not args.row:
        raise DccError("give --family and --row (or --code FAMILY:ROW)")
    return DccSpec.parse(args.family, args.row, args.n)


def _code_distribution(
    code: LinearCode, jobs: int, extended: bool, upto: int | None = None
) -> WeightDistribution | PartialWeightDistribution:
    if upto is None and code.k <= 24:
        return full_distribution(code, jobs=jobs)
    d = min_weight(code)
    w = upto if upto is not None else d + 4
    _gate(bounded_work(code, w), extended, "bounded enumeration")
    return bounded_distribution(code, w, jobs=jobs)


def _fmt_triple(wd, d: int) -> str:
    top = wd.cutoff if isinstance(wd, PartialWeightDistribution) else wd.n
    ws = [w for w in (d, d + 2, d + 4) if w <= top]
    names = ", ".join(f"A_{w}" for w in ws)
    vals = ", ".join(str(wd[w]) for w in ws)
    return f"({names}) = ({vals})"


# --------------------------------------------------------------------------
# verbs


def cmd_build(args, out: TextIO) -> int:
    spec = _spec_from_args(args)
    code = build(spec)
    print(f"code: {spec.label()}", file=out)
    print(f"[{code.n},{code.k}] generator:", file=out)
    for row in code.gen:
        print(str(row), file=out)
    return 0


def cmd_wdist(args, out: TextIO) -> int:
    spec = _spec_from_args(args)
    code = build(spec)
    if args.upto is None:
        _gate(2.0**code.k, args.extended, "full enumeration")
        wd = full_distribution(code, jobs=args.jobs)
        d = wd.min_weight()
    else:
        _gate(bounded_work(code, args.upto), args.extended, "bounded enumeration")
        wd = bounded_distribution(code, args.upto, jobs=args.jobs)
        d = wd.min_weight()
    print(f"code: {spec.label()}", file=out)
    if d is None:
        print(f"no nonzero codeword of weight <= {args.upto}", file=out)
        return 0
    print(f"n = {code.n}, k = {code.k}, d = {d}", file=out)
    print(_fmt_triple(wd, d), file=out)
    label = "distribution" if args.upto is None else f"distribution (w <= {args.upto})"
    print(f"{label}: {wd.sparse()}", file=out)
    return 0


def cmd_minwt(args, out: TextIO) -> int:
    spec = _spec_from_args(args)
    code = build(spec)
    print(f"code: {spec.label()}", file=out)
    print(f"d = {min_weight(code)}", file=out)
    return 0


def _code_names(rep) -> list[str]:
    base = f"{rep.family.letter}_{rep.length}"
    if rep.count == 1:
        return [base]
    return [f"{base},{i}" for i in range(1, rep.count + 1)]


def _report_lines(rep, fmt: str) -> list[str]:
    letter = rep.family.letter
    a, b, c = rep.A_triple
    names = _code_names(rep)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["code", "length", "family", "first_row", "d", "A_d", "A_d+2", "A_d+4"])
        for name, r in zip(names, rep.representatives):
            w.writerow([name, rep.length, rep.family.value, str(r), rep.d_max, a, b, c])
        return buf.getvalue().splitlines()
    lines = [
        f"| 2n | d_{letter} | A_d{letter} | N_{letter} |",
        "|---|---|---|---|",
        f"| {rep.length} | {rep.d_max} | {a} | {rep.count} |",
        "",
        "| Code | First row | d | (A_d, A_d+2, A_d+4) |",
        "|---|---|---|---|",
    ]
    for name, r in zip(names, rep.representatives):
        lines.append(f"| {name} | {r} | {rep.d_max} | ({a}, {b}, {c}) |")
    return lines


def cmd_classify(args, out: TextIO) -> int:
    if args.spot_check:
        sc = spot_check(args.family, args.spot_check)
        code_name = sc.spec.label()
        print(f"code: {code_name}", file=out)
        print(f"even: {sc.even}, self-dual: {sc.self_dual}", file=out)
        print(f"d = {sc.d}, (A_d, A_d+2, A_d+4) = {sc.triple}", file=out)
        return 0
    if args.length % 2:
        raise DccError("length must be even")
    cfg = SearchConfig(args.length // 2, args.family, worker_count=args.jobs, extended=args.extended)
    rep = search_optimal(cfg)
    for line in _report_lines(rep, args.format):
        print(line, file=out)
    return 0


def _left_right(args):
    jobs, ext = args.jobs, args.extended
    if args.left:
        left = _code_distribution(build(parse_code_spec(args.left)), jobs, ext)
    elif args.left_file:
        left = read_distribution(args.left_file, args.length)
    else:
        raise DccError("give --left or --left-file")
    if args.right:
        right = _code_distribution(build(parse_code_spec(args.right)), jobs, ext)
    elif args.right_file:
        right = read_distribution(args.right_file, args.length)
    elif args.right_family_param:
        if args.length is None or args.d is None:
            raise DccError("--right-family-param needs --length and --d")
        pwe = solve_parametric(args.length, args.d)
        right = instantiate(pwe, parse_assignment(args.right_family_param))
    else:
        raise DccError("give --right, --right-file or --right-family-param")
    return left, right


def cmd_compare(args, out: TextIO) -> int:
    left, right = _left_right(args)
    verdict = lex_compare(left, right)
    print(verdict.describe(), file=out)
    if isinstance(left, WeightDistribution) and isinstance(right, WeightDistribution):
        p = Fraction(args.p)
        d = min(x for x in (left.min_weight(), right.min_weight()) if x is not None)
        ch = BddChannel.for_distance(p, d)
        for name, wd in (("left", left), ("right", right)):
            pe = bdd_error_probability(wd, ch)
            print(f"P_e({name}) at p = {p}, t = {ch.t}: {render_probability(pe)}", file=out)
            print(f"  exact: {pe}", file=out)
    return 0


def cmd_gleason(args, out: TextIO) -> int:
    basis = GleasonBasis(args.basis)
    if args.extremal:
        wd = doubly_even_extremal(args.length)
        print(f"extremal doubly even enumerator, length {args.length}:", file=out)
        print(wd.sparse(), file=out)
        return 0
    if args.d is None:
        raise DccError("--d is required")
    pwe = solve_parametric(args.length, args.d, basis)
    step = basis.step
    d = args.d
    head = ["(2n,d)", "A_0", f"A_{d}"] + [f"A_{d + step * t}" for t in range(1, 4)]
    print(" | ".join(head), file=out)
    print(" | ".join([f"({args.length},{d})"] + pwe.render_row()), file=out)
    if pwe.free_params:
        print(f"free parameters: {', '.join(pwe.free_params)}", file=out)
    if args.fit:
        known = {0: 1}
        for tok in args.fit.replace(",", " ").split():
            w, c = tok.split(":")
            known[int(w)] = int(c)
        vals = fit(known, pwe)
        print("fit: " + ", ".join(f"{k} = {v}" for k, v in vals.items()), file=out)
    return 0


def cmd_shadow(args, out: TextIO) -> int:
    fams = derive_families(args.length, args.d)
    if not fams:
        raise InfeasibleError(f"no feasible singly even self-dual family for ({args.length},{args.d})")
    for f in fams:
        code_line, shadow_line = f.render(args.terms)
        print(code_line, file=out)
        print(shadow_line, file=out)
        if f.param_range is not None:
            nm = f.free_params[0]
            print(f"  {f.param_range[0]} <= {nm} <= {f.param_range[1]}", file=out)
        if args.max_ad is not None and len(f.free_params) == 1 and f.values is not None:
            vals = bound_parameter(f, args.max_ad)
            shown = _compress(vals)
            print(f"  with A_{f.d} < {args.max_ad}: {f.free_params[0]} in {shown}", file=out)
    note = OPEN_EXISTENCE_NOTE.get(args.length)
    if note:
        print(f"note: {note}", file=out)
    return 0


def _compress(vals: Sequence[int]) -> str:
    if not vals:
        return "{}"
    runs = []
    start = prev = vals[0]
    for v in vals[1:]:
        if v == prev + 1:
            prev = v
            continue
        runs.append((start, prev))
        start = prev = v
    runs.append((start, prev))
    parts = [
        ", ".join(str(v) for v in range(a, b + 1)) if b - a < 4 else f"{a}, {a + 1}, ..., {b}"
        for a, b in runs
    ]
    return "{" + ", ".join(parts) + "}"


def cmd_bddprob(args, out: TextIO) -> int:
    if args.wd_file:
        wd = read_distribution(args.wd_file, args.length)
    else:
        code = build(_spec_from_args(args))
        _gate(2.0**code.k, args.extended, "full enumeration")
        wd = full_distribution(code, jobs=args.jobs)
    d = wd.min_weight()
    p = Fraction(args.p)
    ch = BddChannel(p, args.t) if args.t is not None else BddChannel.for_distance(p, d or 1)
    pe = bdd_error_probability(wd, ch)
    print(f"p = {p}", file=out)
    print(f"t = {ch.t}", file=out)
    print(f"P_e = {pe}", file=out)
    print(f"P_e ~ {render_probability(pe)}", file=out)
    return 0


def _table_rows(which: int) -> list[list[str]]:
    name = "table3.tsv" if which == 3 else "table4.tsv"
    text = resources.files("dccodes.data").joinpath(name).read_text()
    return [line.split("\t") for line in text.splitlines() if line and not line.startswith("#")]


def _reproduce_1(args, out: TextIO) -> bool:
    print("| (2n,d) | A_0 | A_d | A_d+2 | A_d+4 | A_d+6 |", file=out)
    print("|---|---|---|---|---|---|", file=out)
    text = resources.files("dccodes.data").joinpath("table1_params.tsv").read_text()
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        L, d = (int(x) for x in line.split("\t"))
        if L > args.max_length:
            continue
        row = solve_parametric(L, d).render_row()
        print(f"| ({L},{d}) | " + " | ".join(row) + " |", file=out)
    return True


def _reproduce_2(args, out: TextIO) -> bool:
    table = load_table2()
    print("| 2n | d_P | A_dP | N_P | d_B | A_dB | N_B | d_SD | A_SD | source | verdict |", file=out)
    print("|---|---|---|---|---|---|---|---|---|---|---|", file=out)
    ok = True
    for L in sorted(table):
        if L > args.max_length:
            continue
        row = table[L]
        pure, bord = row.pure, row.bordered
        source = "table"
        if L <= EXHAUSTIVE_MAX_LENGTH or args.extended:
            rp = search_optimal(SearchConfig(L // 2, Family.PURE, args.jobs, extended=args.extended))
            rb = search_optimal(SearchConfig(L // 2, Family.BORDERED, args.jobs, extended=args.extended))
            got = ((rp.d, rp.A_d, rp.count), (rb.d, rb.A_d, rb.count))
            want = ((pure.d, pure.A_d, pure.count), (bord.d, bord.A_d, bord.count))
            source = "computed" if got == want else "MISMATCH"
            ok &= got == want
            pure, bord = rp, rb
        try:
            verdict = theorem1_report([pure, bord], row.reference).verdict.value
        except ReferenceIncomplete:
            verdict = "undetermined"
        ref = row.reference
        a_sd = str(ref.A_SD) if ref.A_SD is not None else "-"
        pc = pure.count
        bc = bord.count
        print(
            f"| {L} | {pure.d} | {pure.A_d} | {pc} | {bord.d} | {bord.A_d} | {bc} | {ref.d_SD} | {a_sd} "
            f"| {source} | {verdict} |",
            file=out,
        )
    return ok


def _reproduce_34(which: int, args, out: TextIO) -> bool:
    if args.max_length > FAST_TIER_MAX_LENGTH and not args.extended:
        raise BudgetExceeded(f"rows beyond length {FAST_TIER_MAX_LENGTH} need --extended")
    family = Family.PURE if which == 3 else Family.BORDERED
    print("| Code | 2n | First row | d | A_d | A_d+2 | A_d+4 | check |", file=out)
    print("|---|---|---|---|---|---|---|---|", file=out)
    ok = True
    for name, L, row, d, a, b, c in _table_rows(which):
        if int(L) > args.max_length:
            continue
        code = build(DccSpec.parse(family, row))
        got_d = min_weight(code)
        part = bounded_distribution(code, got_d + 4, jobs=args.jobs)
        got = (got_d,) + part.triple(got_d)
        want = (int(d), int(a), int(b), int(c))
        status = "ok" if got == want else "MISMATCH"
        ok &= got == want
        print(f"| {name} | {L} | {row} | {got[0]} | {got[1]} | {got[2]} | {got[3]} | {status} |", file=out)
    return ok


def cmd_tables(args, out: TextIO) -> int:
    if args.max_length is None:
        args.max_length = {1: 72, 2: EXHAUSTIVE_MAX_LENGTH, 3: FAST_TIER_MAX_LENGTH, 4: FAST_TIER_MAX_LENGTH}[
            args.reproduce
        ]
    if args.reproduce == 1:
        ok = _reproduce_1(args, out)
    elif args.reproduce == 2:
        ok = _reproduce_2(args, out)
    else:
        ok = _reproduce_34(args.reproduce, args, out)
    return 0 if ok else 1


# --------------------------------------------------------------------------
# parser


def _add_code_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", type=parse_family, help="pure or bordered")
    p.add_argument("--row", help="first row of the circulant block")
    p.add_argument("--n", type=int, help="half-length (checked against the row)")
    p.add_argument("--code", help="FAMILY:ROW shorthand")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dccodes", description=__doc__)
    parser.add_argument("--version", action="version", version=f"dccodes {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default: $DCCODES_JOBS or 1)")
    common.add_argument("--extended", action="store_true", help="allow work projected over 10 minutes")
    common.add_argument("--no-timing", action="store_true", help="suppress the timing footer on stderr")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("build", parents=[common], help="print a generator matrix")
    _add_code_args(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("wdist", parents=[common], help="weight distribution")
    _add_code_args(p)
    p.add_argument("--upto", type=int, help="only weights up to this bound")
    p.set_defaults(func=cmd_wdist)

    p = sub.add_parser("minwt", parents=[common], help="minimum weight")
    _add_code_args(p)
    p.set_defaults(func=cmd_minwt)

    p = sub.add_parser("classify", parents=[common], help="optimal codes of one family and length")
    p.add_argument("--length", type=int)
    p.add_argument("--family", type=parse_family, required=True)
    p.add_argument("--spot-check", metavar="ROW", help="evaluate a single first row instead")
    p.add_argument("--format", choices=("markdown", "csv"), default="markdown")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("compare", parents=[common], help="performance order of two distributions")
    p.add_argument("--left", help="FAMILY:ROW")
    p.add_argument("--left-file", help="sparse distribution file (w:count ...)")
    p.add_argument("--right", help="FAMILY:ROW")
    p.add_argument("--right-file")
    p.add_argument("--right-family-param", action="append", help="e.g. a=364 (with --length, --d)")
    p.add_argument("--length", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--p", default="1/1000", help="symbol error probability for the BDD comparison")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("gleason", parents=[common], help="possible weight enumerators")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--basis", choices=[b.value for b in GleasonBasis], default=GleasonBasis.FSD_EVEN.value)
    p.add_argument("--extremal", action="store_true", help="extremal doubly even enumerator")
    p.add_argument("--fit", help="known coefficients, e.g. 8:348,10:2176")
    p.set_defaults(func=cmd_gleason)

    p = sub.add_parser("shadow", parents=[common], help="singly even self-dual families and shadows")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--max-ad", type=int, help="restrict one-parameter families to A_d below this")
    p.add_argument("--terms", type=int, default=3)
    p.set_defaults(func=cmd_shadow)

    p = sub.add_parser("bddprob", parents=[common], help="bounded distance decoding error probability")
    _add_code_args(p)
    p.add_argument("--wd-file")
    p.add_argument("--length", type=int)
    p.add_argument("--p", default="1/1000")
    p.add_argument("--t", type=int)
    p.set_defaults(func=cmd_bddprob)

    p = sub.add_parser("tables", parents=[common], help="reproduce the reference tables")
    p.add_argument("--reproduce", type=int, choices=(1, 2, 3, 4), required=True)
    p.add_argument("--max-length", type=int)
    p.set_defaults(func=cmd_tables)
    return parser


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.jobs is None:
        args.jobs = default_jobs()
    t0 = time.perf_counter()
    try:
        status = args.func(args, out)
    except DccError as exc:
        print(f"error: {exc}", file=err)
        return exc.exit_code
    except (ValueError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    if not args.no_timing:
        print(f"# elapsed {time.perf_counter() - t0:.2f} s", file=err)
    return status


def main() -> None:
    sys.exit(run())
