"""Command line interface: single problems, batch tables, self checks.

Exit codes: 0 success, 1 selfcheck failure, 2 input validation failure,
3 Euler characteristic route mismatch under --verify.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import __version__, selfcheck
from .exact_arith import format_rational
from .operator_engine import SYMBOLIC
from .prym_bn import (
    ValidationError,
    build_problem,
    chow_class_closed,
    class_result,
    euler_oracle,
    euler_theorem,
    problem_from_partition,
    strict_partitions,
)
from .series_ring import BetaPoly, ThetaPoly

_BETA_CHOICES = {"0": 0, "-1": -1, "symbolic": SYMBOLIC}
_TABLE_G_MAX = 10
_TABLE_LEN_MAX = 5


@dataclass(frozen=True)
class RunRequest:
    """Parsed invocation; mirrors the problem validation done downstream."""

    command: str
    output: str = "plain"
    g: int = 0
    r: int = -1
    a: tuple = ()
    beta: object = 0
    verify: bool = False
    g_min: int = 2
    g_max: int = 2
    max_len: int = 1
    quick: bool = False


def _workers() -> int:
    raw = os.environ.get("PRYM_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise ValidationError(f"PRYM_THREADS must be an integer (got {raw!r})")
    if n < 0:
        raise ValidationError(f"PRYM_THREADS must be nonnegative (got {n})")
    if n == 0:
        n = os.cpu_count() or 1
    return n


def _parse_vanishing(text: str) -> tuple:
    try:
        return tuple(int(tok.strip()) for tok in text.split(","))
    except ValueError:
        raise ValidationError(f"vanishing sequence must be comma-separated integers (got {text!r})")


def _build(req: RunRequest):
    r = req.r if req.r >= 0 else len(req.a) - 1
    return build_problem(req.g, r, req.a)


# ---------------------------------------------------------------- rendering


def _poly_strings(poly: ThetaPoly):
    return [
        str(c) if isinstance(c, BetaPoly) else format_rational(c) for c in poly.coeffs
    ]


def _xi_coeffs(poly: ThetaPoly):
    # theta' = 2*xi, so the xi-basis coefficient of degree d gains 2^d
    return [Fraction(c) * 2**d for d, c in enumerate(poly.coeffs)]


def _problem_block(p):
    return {
        "g": p.g,
        "r": p.r,
        "a": list(p.a),
        "lambda": list(p.lam),
        "parity": p.parity,
        "expected_empty": p.expected_empty,
    }


def _meta_block(beta_label, flags, normalization):
    return {
        "beta": beta_label,
        "normalization": normalization,
        "convention_flags": list(flags),
        "versions": {"prymck": __version__},
    }


def _result_json(res):
    normalization = {"basis": "theta_prime", "relation": "theta_prime = 2*xi"}
    block = {
        "kind": res.kind,
        "gamma": None,
        "exponent": None,
        "theta_poly": None,
        "chi": None,
    }
    if res.kind == "cohomology":
        block["gamma"] = format_rational(res.gamma)
        block["exponent"] = res.exponent
        normalization["gamma_xi"] = format_rational(res.gamma * 2**res.exponent)
    else:
        block["theta_poly"] = res.poly.to_json_dict()
        if res.beta != SYMBOLIC:
            normalization["xi_coeffs"] = [format_rational(c) for c in _xi_coeffs(res.poly)]
    return {
        "problem": _problem_block(res.problem),
        "result": block,
        "meta": _meta_block(str(res.beta), res.flags, normalization),
    }


def _chi_json(problem, chi):
    return {
        "problem": _problem_block(problem),
        "result": {
            "kind": "euler_characteristic",
            "gamma": None,
            "exponent": None,
            "theta_poly": None,
            "chi": format_rational(chi),
        },
        "meta": _meta_block("-1", (), {"relation": "theta_prime = 2*xi"}),
    }


def _latex_rational(x: Fraction) -> str:
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    x = abs(x)
    if x.denominator == 1:
        return f"{sign}{x.numerator}"
    return f"{sign}\\frac{{{x.numerator}}}{{{x.denominator}}}"


def _latex_beta_poly(c: BetaPoly) -> str:
    parts = []
    for e, val in c.items():
        body = _latex_rational(val)
        if e == 1:
            body += "\\beta"
        elif e > 1:
            body += f"\\beta^{{{e}}}"
        parts.append(body if not parts or body.startswith("-") else f"+{body}")
    return "".join(parts) if parts else "0"


def _latex_poly(poly: ThetaPoly) -> str:
    terms = []
    for d, c in enumerate(poly.coeffs):
        if not c:
            continue
        if isinstance(c, BetaPoly):
            coeff = f"\\left({_latex_beta_poly(c)}\\right)"
        else:
            coeff = _latex_rational(c)
        term = coeff if d == 0 else f"{coeff}(\\theta')^{{{d}}}"
        terms.append(term if not terms or term.startswith("-") else f"+{term}")
    return "".join(terms) if terms else "0"


def _problem_line(p) -> str:
    a = ",".join(str(x) for x in p.a)
    lam = ",".join(str(x) for x in p.lam) if p.lam else "()"
    empty = "yes" if p.expected_empty else "no"
    return f"problem: g={p.g} r={p.r} a={a} lambda={lam} parity={p.parity} expected_empty={empty}"


def _emit_class_plain(res, out):
    out(_problem_line(res.problem))
    flag = f" [{', '.join(res.flags)}]" if res.flags else ""
    out(f"kind: {res.kind} (beta={res.beta}){flag}")
    if res.kind == "cohomology":
        out(f"gamma: {format_rational(res.gamma)}")
        out(f"exponent: {res.exponent}")
        gx = format_rational(res.gamma * 2**res.exponent)
        out(f"class: ({format_rational(res.gamma)})*(2xi)^{res.exponent} = ({gx})*xi^{res.exponent}")
    elif res.beta == SYMBOLIC:
        out("theta_poly (T = theta' = 2xi, b = beta):")
        for d, c in enumerate(res.poly.coeffs):
            if c:
                out(f"  T^{d}: {c}")
        if not res.poly:
            out("  0")
    else:
        out(f"theta_poly: {', '.join(_poly_strings(res.poly))}  (T^0..T^{res.poly.cap}; T = theta' = 2xi)")
        xi = ", ".join(format_rational(c) for c in _xi_coeffs(res.poly))
        out(f"xi_poly: {xi}")


def _emit_class_latex(res, out):
    if res.kind == "cohomology":
        gamma = Fraction(res.gamma)
        if res.exponent == 0:
            out(_latex_rational(gamma))
        else:
            out(f"{_latex_rational(gamma)}(2\\xi)^{{{res.exponent}}}")
    else:
        out(_latex_poly(res.poly))


def run_class(req: RunRequest, out) -> int:
    problem = _build(req)
    res = class_result(problem, req.beta)
    if req.output == "json":
        out(json.dumps(_result_json(res), indent=2))
    elif req.output == "latex":
        _emit_class_latex(res, out)
    else:
        _emit_class_plain(res, out)
    return 0


def run_chi(req: RunRequest, out) -> int:
    problem = _build(req)
    chi = euler_theorem(problem)
    if req.verify:
        other = euler_oracle(problem)
        if chi != other:
            print(
                f"error: route mismatch: theorem={chi} oracle={other}",
                file=sys.stderr,
            )
            return 3
    if req.output == "json":
        out(json.dumps(_chi_json(problem, chi), indent=2))
    else:  # plain and latex both print the bare integer
        out(format_rational(chi))
    return 0


def _table_rows(req: RunRequest):
    rows = []
    for g in range(req.g_min, req.g_max + 1):
        for lam in strict_partitions(g - 1, req.max_len, 2 * g - 2):
            if lam:
                rows.append((g, lam))
    return rows


def _table_entry(args):
    g, lam = args
    p = problem_from_partition(g, lam)
    return {
        "g": g,
        "a": list(p.a),
        "lambda": list(lam),
        "gamma": format_rational(chow_class_closed(lam)),
        "exponent": p.codim,
        "chi": format_rational(euler_theorem(p)),
    }


def run_table(req: RunRequest, out) -> int:
    if not (2 <= req.g_min <= req.g_max):
        raise ValidationError(
            f"table genus range must satisfy 2 <= g_min <= g_max (got {req.g_min}..{req.g_max})"
        )
    if req.g_max > _TABLE_G_MAX:
        raise ValidationError(f"g_max exceeds {_TABLE_G_MAX} (got {req.g_max})")
    if not (1 <= req.max_len <= _TABLE_LEN_MAX):
        raise ValidationError(
            f"max_len must be between 1 and {_TABLE_LEN_MAX} (got {req.max_len})"
        )
    jobs = _table_rows(req)
    workers = _workers()
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(_table_entry, jobs))
    else:
        entries = [_table_entry(job) for job in jobs]
    if req.output == "json":
        out(json.dumps({"rows": entries, "meta": _meta_block("-1", (), {"relation": "theta_prime = 2*xi"})}, indent=2))
        return 0
    if req.output == "latex":
        out("\\begin{tabular}{llllll}")
        out("g & a & \\lambda & \\gamma & e & \\chi \\\\")
        for e in entries:
            a = ",".join(str(x) for x in e["a"])
            lam = ",".join(str(x) for x in e["lambda"])
            out(
                f"{e['g']} & ({a}) & ({lam}) & {_latex_rational(Fraction(e['gamma']))} & "
                f"{e['exponent']} & {e['chi']} \\\\"
            )
        out("\\end{tabular}")
        return 0
    header = ("g", "a", "lambda", "gamma", "exp", "chi")
    table = [header]
    for e in entries:
        table.append(
            (
                str(e["g"]),
                ",".join(str(x) for x in e["a"]),
                ",".join(str(x) for x in e["lambda"]),
                e["gamma"],
                str(e["exponent"]),
                e["chi"],
            )
        )
    widths = [max(len(row[c]) for row in table) for c in range(len(header))]
    for row in table:
        out("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return 0


def run_selfcheck(req: RunRequest, out) -> int:
    return selfcheck.run(quick=req.quick, out=out)


# ------------------------------------------------------------------ parsing


def _add_problem_args(sub):
    sub.add_argument("--genus", "-g", type=int, required=True, help="genus of the base curve")
    sub.add_argument("-r", type=int, default=-1, help="rank bound; defaults to len(a)-1")
    sub.add_argument(
        "--vanishing",
        "-a",
        required=True,
        help="comma-separated vanishing sequence, e.g. 0,1",
    )


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prymck",
        description=(
            "Exact classes and Euler characteristics of pointed Brill-Noether "
            "loci on Prym varieties."
        ),
    )
    parser.add_argument("--version", action="version", version=f"prymck {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p_class = subs.add_parser("class", help="compute a class")
    _add_problem_args(p_class)
    p_class.add_argument("--beta", choices=sorted(_BETA_CHOICES), default="0")
    p_class.add_argument("--output", choices=("plain", "json", "latex"), default="plain")

    p_chi = subs.add_parser("chi", help="compute the Euler characteristic")
    _add_problem_args(p_chi)
    p_chi.add_argument("--verify", action="store_true", help="cross-run both routes")
    p_chi.add_argument("--output", choices=("plain", "json", "latex"), default="plain")

    p_table = subs.add_parser("table", help="batch table over a genus range")
    p_table.add_argument("--g-min", type=int, default=2)
    p_table.add_argument("--g-max", type=int, default=5)
    p_table.add_argument("--max-len", type=int, default=3)
    p_table.add_argument("--output", choices=("plain", "json", "latex"), default="plain")

    p_check = subs.add_parser("selfcheck", help="run the invariant suite")
    p_check.add_argument("--quick", action="store_true", help="small-genus subset")

    return parser


def _request_from_args(args) -> RunRequest:
    if args.command in ("class", "chi"):
        a = _parse_vanishing(args.vanishing)
        beta = _BETA_CHOICES[args.beta] if args.command == "class" else -1
        return RunRequest(
            command=args.command,
            output=args.output,
            g=args.genus,
            r=args.r,
            a=a,
            beta=beta,
            verify=getattr(args, "verify", False),
        )
    if args.command == "table":
        return RunRequest(
            command="table",
            output=args.output,
            g_min=args.g_min,
            g_max=args.g_max,
            max_len=args.max_len,
        )
    return RunRequest(command="selfcheck", quick=args.quick)


def main(argv=None) -> int:
    args = _make_parser().parse_args(argv)
    out = print
    try:
        req = _request_from_args(args)
        if req.command == "class":
            return run_class(req, out)
        if req.command == "chi":
            return run_chi(req, out)
        if req.command == "table":
            return run_table(req, out)
        return run_selfcheck(req, out)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
