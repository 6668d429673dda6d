"""Command line entry point: number tables, identity sweeps, p-adic profiles, zeta and l-series."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from fractions import Fraction

from . import analytic, characters, identities, padic
from .exactq import to_json
from .sequences import Family, number_table

IDENTITIES = (
    "theorem6",
    "theorem7",
    "lemma4",
    "lemma4-verbatim",
    "prop2",
    "eq14",
    "theorem11",
    "functional-eqs",
    "char-decomp",
)

# (n_max, second bound) used when a flag is left out
_VERIFY_DEFAULTS = {
    "theorem6": (30, None),
    "theorem7": (12, 9),
    "lemma4": (9, 12),
    "lemma4-verbatim": (9, 12),
    "prop2": (8, 8),
    "eq14": (8, 8),
    "theorem11": (8, None),
    "functional-eqs": (5, None),
    "char-decomp": (6, None),
}


class UsageError(ValueError):
    pass


# argument parsing -------------------------------------------------------------------

def parse_number(text: str):
    """'3', '1/2', '0.25' -> exact rational; '0.5+0.2i' -> complex."""
    s = text.strip().replace(" ", "")
    try:
        if s.endswith(("i", "j")):
            return complex(s[:-1].replace("i", "j") + "j") if s[:-1] else 1j
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r} (use a/b, decimals or re+imi)") from None


def parse_range(text: str) -> list[int]:
    """'lo..hi' (inclusive), 'a,b,c' or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; use lo..hi or a,b,c") from None


def _numeric_json(v):
    if isinstance(v, Fraction):
        return {"exact": str(v), "float": float(v)}
    if isinstance(v, complex):
        return to_json(v)
    return float(v)


def _fmt_complex(z: complex) -> str:
    scale = max(abs(z), 1e-300)
    re_ = z.real if abs(z.real) > 1e-14 * scale else 0.0
    im = z.imag if abs(z.imag) > 1e-14 * scale else 0.0
    if im == 0:
        return f"{re_:.15g}"
    return f"{re_:.15g}{im:+.15g}i"


def _fmt_numeric(v) -> str:
    if isinstance(v, Fraction):
        return f"{v} ({float(v):.15g})"
    if isinstance(v, complex):
        return _fmt_complex(v)
    return f"{v:.15g}"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit(args, payload, header, rows, pretty: str) -> None:
    if args.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        text = _csv_text(header, rows)
    else:
        text = pretty if pretty.endswith("\n") else pretty + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


# commands -------------------------------------------------------------------------------

def cmd_table(args) -> int:
    fam = Family.parse(args.family)
    values = number_table(fam, args.n_max, args.method)
    q0 = args.eval_q
    payload_rows, rows, lines = [], [], []
    for n, v in enumerate(values):
        text = str(v.plain) if fam is Family.CLASSICAL_EULER else str(v)
        row = {"n": n, "text": text, "value": v.to_json()}
        line = f"{n:>3}  {text}"
        numeric = None
        if q0 is not None:
            numeric = v.evaluate(q0)
            row["numeric"] = _numeric_json(numeric)
            line += f"    = {_fmt_numeric(numeric)}"
        payload_rows.append(row)
        rows.append([n, text] + ([_fmt_numeric(numeric)] if q0 is not None else []))
        lines.append(line)
    payload = {
        "command": "table",
        "family": fam.value,
        "method": args.method,
        "eval_q": None if q0 is None else _numeric_json(q0),
        "rows": payload_rows,
    }
    header = ["n", "value"] + (["numeric"] if q0 is not None else [])
    _emit(args, payload, header, rows, "\n".join(lines))
    return 0


def _bounds(args):
    n_def, k_def = _VERIFY_DEFAULTS[args.identity]
    n_max = args.n_max if args.n_max is not None else n_def
    second = args.m_max if args.identity.startswith("lemma4") else args.k_max
    return n_max, second if second is not None else k_def


def run_identity(args) -> identities.IdentityReport:
    ident = args.identity
    n_max, k_max = _bounds(args)
    jobs = args.jobs
    if ident == "theorem6":
        return identities.verify_theorem6(n_max, jobs=jobs)
    if ident == "theorem7":
        return identities.verify_theorem7(n_max, k_max, jobs=jobs)
    if ident == "lemma4":
        return identities.verify_lemma4_corrected(k_max, n_max, jobs=jobs)
    if ident == "lemma4-verbatim":
        return identities.verify_lemma4_verbatim(k_max, n_max, jobs=jobs)
    if ident == "prop2":
        return identities.verify_power_sum_bernoulli(n_max, k_max, jobs=jobs)
    if ident == "eq14":
        return identities.verify_eq14(n_max, k_max, jobs=jobs)
    if ident == "theorem11":
        d_values = args.d or [1, 3, 5]
        if any(d < 1 or d % 2 == 0 for d in d_values):
            raise UsageError("distribution requires odd d")
        return identities.verify_theorem11(n_max, d_values, jobs=jobs)
    if ident == "functional-eqs":
        j_values = args.j if args.j is not None else list(range(-1, 5))
        report = identities.IdentityReport("functional-eqs", {"j": j_values, "n_max": n_max})
        for name in identities.FUNCTIONAL_EQUATIONS:
            _progress(f"  {name}")
            report.instances.extend(identities.verify_equation(name, j_values, n_max, jobs).instances)
        return report
    if ident == "char-decomp":
        moduli = args.d or [1, 3, 5, 7]
        if any(d < 1 or d % 2 == 0 for d in moduli):
            raise UsageError("characters are supported for odd modulus only")
        return characters.verify_char_decomp(moduli, n_max)
    raise UsageError(f"unknown identity {ident!r}")


def cmd_verify(args) -> int:
    _progress(f"verifying {args.identity} ...")
    report = run_identity(args)
    status = report.status
    _progress(f"{args.identity}: {status} ({len(report.instances)} instances)")
    rows = [
        [report.identity, json.dumps(i["params"], sort_keys=True), i["passed"], i["diff"]]
        for i in report.instances
    ]
    pretty = f"{report.identity}: {status} ({len(report.instances)} instances, {len(report.failures)} failing)"
    if report.first_counterexample:
        pretty += f"\nfirst counterexample: {json.dumps(report.first_counterexample['params'], sort_keys=True)}"
    _emit(args, report.to_json(), ["identity", "params", "passed", "diff"], rows, pretty)
    if status in ("pass", "erratum confirmed"):
        return 0
    if report.first_counterexample:
        _progress(f"counterexample: {json.dumps(report.first_counterexample, sort_keys=True)}")
    return 1


def cmd_padic(args) -> int:
    if (args.family is None) == (args.monomial is None):
        raise UsageError("give exactly one of --family or --monomial")
    common = {"p": args.p, "q": args.q, "N": 0, "M": args.precision, "budget": args.budget}
    if args.family is not None:
        fam = Family.parse(args.family)
        if fam not in padic.FAMILY_INTEGRANDS:
            raise UsageError(f"no integral representation for {fam.value}")
        config = padic.RiemannSumConfig.for_family(fam, args.n, **common)
    else:
        config = padic.RiemannSumConfig(kind=args.kind, monomial=args.monomial, **common)
    for N in args.levels:
        if N < 0 or args.p**N > args.budget:
            raise UsageError(f"level {N} exceeds the work budget p^N <= {args.budget}")
    partitions = max(1, args.jobs)
    profile = padic.Profile(config)
    for N in args.levels:
        row = padic.convergence_profile(config, [N], partitions, args.jobs).rows[0]
        profile.rows.append(row)
        _progress(f"level {N}: valuation {row.valuation_text()}")
    header = ["N", "p^N", "valuation"] + ([] if args.no_timing else ["wall-time"])
    rows, out_rows = [], []
    for r in profile.rows:
        rows.append([r.N, r.pN, r.valuation_text()] + ([] if args.no_timing else [f"{r.seconds:.6f}"]))
        entry = {"N": r.N, "pN": r.pN, "valuation": int(r.valuation), "exhausted": r.exhausted}
        if not args.no_timing:
            entry["seconds"] = r.seconds
        out_rows.append(entry)
    payload = {
        "command": "padic",
        "p": args.p,
        "q": str(args.q),
        "family": None if args.family is None else Family.parse(args.family).value,
        "n": args.n if args.family is not None else None,
        "monomial": args.monomial,
        "kind": config.kind,
        "precision": args.precision,
        "rows": out_rows,
        "nondecreasing": profile.nondecreasing,
        "offset": profile.offset,
    }
    pretty = "\n".join(
        [f"{'N':>3} {'p^N':>9} {'valuation':>10}" + ("" if args.no_timing else f" {'wall-time':>10}")]
        + [f"{r[0]:>3} {r[1]:>9} {r[2]:>10}" + ("" if args.no_timing else f" {r[3]:>10}") for r in rows]
    )
    _emit(args, payload, header, rows, pretty)
    return 0


def cmd_zeta(args) -> int:
    params = analytic.ZetaParams(
        q=complex(args.q), x=float(args.x), s=complex(args.s),
        tolerance=args.tolerance, max_terms=args.max_terms,
    )
    value = params.evaluate()
    payload = {
        "command": "zeta",
        "q": to_json(complex(params.q)),
        "x": params.x,
        "s": to_json(complex(params.s)),
        "tolerance": params.tolerance,
        "value": to_json(value),
        "branch": analytic.BRANCH_NOTE,
    }
    rows = [[str(args.q), params.x, str(args.s), value.real, value.imag]]
    pretty = f"{_fmt_complex(value)}\n# {analytic.BRANCH_NOTE}"
    _emit(args, payload, ["q", "x", "s", "re", "im"], rows, pretty)
    return 0


def cmd_lseries(args) -> int:
    if args.modulus < 1 or args.modulus % 2 == 0:
        raise UsageError("characters are supported for odd modulus only")
    chi = characters.get_character(args.modulus, args.char_index)
    value = analytic.l_series(chi, complex(args.s), complex(args.q), tolerance=args.tolerance)
    payload = {
        "command": "lseries",
        "character": {"modulus": chi.modulus, "index": chi.index, "order": chi.order, "conductor": chi.conductor},
        "q": to_json(complex(args.q)),
        "s": to_json(complex(args.s)),
        "value": to_json(value),
        "branch": analytic.BRANCH_NOTE,
    }
    rows = [[chi.modulus, chi.index, str(args.q), str(args.s), value.real, value.imag]]
    pretty = f"{_fmt_complex(value)}\n# {analytic.BRANCH_NOTE}"
    _emit(args, payload, ["modulus", "index", "q", "s", "re", "im"], rows, pretty)
    return 0


# parser ---------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="pretty")
    common.add_argument("--output", help="write to this file instead of standard output")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes")
    common.add_argument("--seed", type=int, default=0, help="seed for any random sampling")

    parser = argparse.ArgumentParser(prog="qeuler", description="q-Euler and q-Bernoulli numbers: tables, identity checks, p-adic sums, zeta values.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="exact number table for a family")
    p.add_argument("--family", required=True, choices=[f.value.replace("_", "-") for f in Family])
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--method", choices=("recurrence", "closed"), default="recurrence")
    p.add_argument("--eval-q", type=parse_number, help="also evaluate at this q (a/b or re+imi)")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="verify an identity over a parameter range")
    p.add_argument("--identity", required=True, choices=IDENTITIES)
    p.add_argument("--n-max", type=int)
    p.add_argument("--k-max", type=int)
    p.add_argument("--m-max", type=int)
    p.add_argument("--d", type=parse_range, help="moduli, e.g. 1,3,5")
    p.add_argument("--j", type=parse_range, help="monomial exponents, e.g. --j=-1..4")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("padic", parents=[common], help="p-adic Riemann-sum convergence profile")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=parse_number, required=True)
    p.add_argument("--family")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--monomial", type=int, help="integrate q^(jx) instead of a family integrand")
    p.add_argument("--kind", choices=("bosonic", "fermionic"), default="fermionic")
    p.add_argument("--levels", type=parse_range, default=[1, 2, 3, 4])
    p.add_argument("--precision", type=int, default=30)
    p.add_argument("--budget", type=int, default=10**6, help="largest allowed p^N")
    p.add_argument("--no-timing", action="store_true", help="omit wall-time for reproducible output")
    p.set_defaults(func=cmd_padic)

    p = sub.add_parser("zeta", parents=[common], help="evaluate zeta_q(s, x)")
    p.add_argument("--q", type=parse_number, required=True)
    p.add_argument("--x", type=parse_number, required=True)
    p.add_argument("--s", type=parse_number, required=True)
    p.add_argument("--tolerance", type=float, default=1e-15)
    p.add_argument("--max-terms", type=int, default=1_000_000)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("lseries", parents=[common], help="evaluate l_q(s, chi)")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--char-index", type=int, required=True)
    p.add_argument("--q", type=parse_number, required=True)
    p.add_argument("--s", type=parse_number, required=True)
    p.add_argument("--tolerance", type=float, default=1e-15)
    p.set_defaults(func=cmd_lseries)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    random.seed(args.seed)
    try:
        return args.func(args)
    except (UsageError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
