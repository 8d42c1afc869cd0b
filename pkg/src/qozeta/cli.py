"""Command line interface: parsing, reports and the verification harness."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd
from typing import Any

from .branch import BranchValidationError, QOBranchData, derive_invariants, is_normalized, random_branch, validate
from .exact import as_fraction
from .fan import build_fan, fan_summary
from .motivic import COMPAT_PRINTED, Atom, LaurentL, MotivicPoly, milnor_fiber_closed
from .spectrum import FracPoly, spectrum_prime, spectrum_sp
from .verify import CUSP, SURFACE_EXAMPLE, SMOOTH, VerifyOptions, failing_check, verify_branch
from .ztop import RatS, candidate_poles, cp_list, scp_list, special_vectors, z_top

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2


class InputError(ValueError):
    """Parse error with a location (JSON path or line/column)."""

    def __init__(self, message: str, position: str):
        super().__init__(f"{position}: {message}")
        self.position = position


@dataclass(frozen=True)
class InputDocument:
    branch: QOBranchData
    compat: str | None = None
    options: VerifyOptions = VerifyOptions()


# -- parsing -------------------------------------------------------------------------


def _parse_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise InputError(f"expected a rational string 'p/q', got {value!r}", where)
    try:
        return as_fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed rational {value!r}", where) from exc


def _parse_int(value: Any, where: str) -> int:
    if isinstance(value, bool):
        raise InputError("expected an integer", where)
    if isinstance(value, int):
        return value
    if isinstance(value, str) and value.strip().lstrip("-").isdigit():
        return int(value)
    raise InputError(f"expected an integer, got {value!r}", where)


def parse_input(source: str) -> InputDocument:
    """Parse JSON text ``{"d": ..., "lambda": [[...], ...]}``.

    A full JSON report (with an ``input`` block) is accepted as well.
    """
    try:
        data = json.loads(source)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from exc
    if isinstance(data, dict) and "input" in data and "lambda" not in data:
        data = data["input"]
    if not isinstance(data, dict):
        raise InputError("expected a JSON object", "$")
    for key in ("d", "lambda"):
        if key not in data:
            raise InputError(f"missing field {key!r}", "$")
    d = _parse_int(data["d"], "$.d")
    rows = data["lambda"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError("lambda must be a list of lists", "$.lambda")
    lam = [[_parse_rational(a, f"$.lambda[{j}][{i}]") for i, a in enumerate(row)] for j, row in enumerate(rows)]
    lengths = {len(r) for r in lam}
    if len(lengths) > 1:
        j = next(j for j, r in enumerate(lam) if len(r) != len(lam[0]))
        raise InputError(f"ragged exponent rows: row {j} has length {len(lam[j])}, row 0 has {len(lam[0])}", f"$.lambda[{j}]")
    if lengths and lengths != {d}:
        raise InputError(f"d mismatch: d = {d} but rows have length {lengths.pop()}", "$.d")
    compat = COMPAT_PRINTED if data.get("compat_printed_csigma") or data.get("compat") == COMPAT_PRINTED else None
    opts = VerifyOptions(compat=compat)
    verify = data.get("verify") or {}
    if "series_order" in verify:
        opts = replace(opts, series_order=_parse_int(verify["series_order"], "$.verify.series_order"))
    if "l_precision" in verify:
        opts = replace(opts, l_precision=_parse_int(verify["l_precision"], "$.verify.l_precision"))
    if "chitop_points" in verify:
        pts = tuple(_parse_int(x, f"$.verify.chitop_points[{i}]") for i, x in enumerate(verify["chitop_points"]))
        opts = replace(opts, chitop_points=pts)
    return InputDocument(validate(lam, d), compat, opts)


# -- encoding ------------------------------------------------------------------------


def _q(x) -> str:
    return str(Fraction(x))


def encode_input(b: QOBranchData) -> dict:
    return {"d": b.d, "lambda": [[_q(a) for a in v] for v in b.lam]}


def encode_fracpoly(p: FracPoly) -> list:
    return [[_q(a), c] for a, c in p.items()]


def decode_fracpoly(rows: list) -> FracPoly:
    return FracPoly({Fraction(a): int(c) for a, c in rows})


def encode_rats(r: RatS) -> dict:
    return {
        "numerator": [_q(c) for c in r.num],
        "denominator": [[str(a), str(A)] for a, A in r.factors()],
        "text": str(r),
    }


def decode_rats(obj: dict) -> RatS:
    return RatS(tuple(Fraction(c) for c in obj["numerator"]), [(int(a), int(A)) for a, A in obj["denominator"]])


def encode_motivic(m: MotivicPoly) -> list:
    return [{"atom": str(a), "coefficient": [[str(e), str(c)] for e, c in sorted(coeff.items())]} for a, coeff in m.items()]


def decode_motivic(rows: list) -> MotivicPoly:
    out = MotivicPoly()
    for row in rows:
        coeff = LaurentL({int(e): int(c) for e, c in row["coefficient"]})
        out = out + MotivicPoly.atom(Atom.parse(row["atom"]), coeff)
    return out


def _vec(v) -> list:
    return [_q(a) for a in v]


def compute_report(doc: InputDocument) -> dict:
    inv = derive_invariants(doc.branch)
    fan = build_fan(inv)
    zt = z_top(inv, fan)
    normalized, perm = is_normalized(doc.branch)
    cones = [
        {
            "id": row["id"],
            "edges": [_vec(v) for v in row["edges"]],
            "mult": None if row["mult"] is None else str(row["mult"]),
            "forms": [[_q(x), str(e)] for x, e in row["forms"]],
        }
        for row in fan_summary(fan)
    ]
    return {
        "input": encode_input(doc.branch),
        "compat_printed_csigma": doc.compat == COMPAT_PRINTED,
        "invariants": {
            "d": str(inv.d),
            "g": str(inv.g),
            "n": [str(x) for x in inv.n],
            "e": [str(x) for x in inv.e],
            "gamma": [_vec(v) for v in inv.gamma[1:]],
            "r": [str(x) for x in inv.r],
            "ell": [str(x) for x in inv.ell[1:]],
            "normalized": normalized,
            "normalizing_permutation": None if perm is None else [str(p) for p in perm],
        },
        "fan": cones,
        "ztop": encode_rats(zt),
        "spectrum_prime": encode_fracpoly(spectrum_prime(inv, doc.compat)),
        "spectrum": encode_fracpoly(spectrum_sp(inv, doc.compat)),
        "milnor": encode_motivic(milnor_fiber_closed(inv, doc.compat)),
        "poles": {
            "candidate_poles": [[str(a), str(A)] for a, A in candidate_poles(inv, zt)],
            "cp": [[str(B), str(b)] for B, b in cp_list(inv)],
            "scp": [[str(B), str(b)] for B, b in scp_list(inv)],
            "special_vectors": [[str(i), str(j)] for i, j in special_vectors(inv)],
        },
    }


def decode_report(report: dict) -> dict:
    """Turn the exact blocks of a JSON report back into objects."""
    return {
        "input": parse_input(json.dumps(report["input"])).branch,
        "ztop": decode_rats(report["ztop"]),
        "spectrum_prime": decode_fracpoly(report["spectrum_prime"]),
        "spectrum": decode_fracpoly(report["spectrum"]),
        "milnor": decode_motivic(report["milnor"]),
    }


# -- rendering -----------------------------------------------------------------------


def _fp_text(rows: list) -> str:
    return str(decode_fracpoly(rows))


def _milnor_text(rows: list) -> str:
    if not rows:
        return "0"
    return " + ".join(f"({LaurentL({int(e): int(c) for e, c in r['coefficient']})})*{r['atom']}" for r in rows)


def render_text(report: dict) -> str:
    inv = report["invariants"]
    lines = [
        f"d = {inv['d']}, g = {inv['g']}",
        "lambda = " + ", ".join("(" + ", ".join(v) + ")" for v in report["input"]["lambda"]),
        f"n = ({', '.join(inv['n'])}), e = ({', '.join(inv['e'])}), r = ({', '.join(inv['r'])}), l = ({', '.join(inv['ell'])})",
        "gamma = " + ", ".join("(" + ", ".join(v) + ")" for v in inv["gamma"]),
        f"normalized = {inv['normalized']}",
        "fan:",
    ]
    for c in report["fan"]:
        mult = f" mult={c['mult']}" if c["mult"] is not None else " (non-simplicial)"
        edges = " ".join("(" + ",".join(v) + ")" for v in c["edges"])
        lines.append(f"  {c['id']}:{mult} edges {edges}")
    lines += [
        f"Z_top = {report['ztop']['text']}",
        f"Sp' = {_fp_text(report['spectrum_prime'])}",
        f"Sp = {_fp_text(report['spectrum'])}",
        f"Milnor fiber = {_milnor_text(report['milnor'])}",
        "candidate poles = " + ", ".join(f"{a}+{'' if A == '1' else A}s" for a, A in report["poles"]["candidate_poles"]),
        "CP = " + ", ".join(f"({B},{b})" for B, b in report["poles"]["cp"]),
        "SCP = " + ", ".join(f"({B},{b})" for B, b in report["poles"]["scp"]),
    ]
    if report["compat_printed_csigma"]:
        lines.append("(compatibility mode: as-printed classes on sigma^+/sigma^-)")
    return "\n".join(lines) + "\n"


def _latex_q(q: str) -> str:
    f = Fraction(q)
    if f.denominator == 1:
        return str(f.numerator)
    sign = "-" if f < 0 else ""
    return f"{sign}\\frac{{{abs(f.numerator)}}}{{{f.denominator}}}"


def _latex_spoly(coeffs: list) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        f = Fraction(c)
        if f == 0:
            continue
        mono = "" if i == 0 else ("s" if i == 1 else f"s^{{{i}}}")
        body = _latex_q(str(abs(f)))
        if mono and abs(f) == 1:
            body = ""
        parts.append(("-" if f < 0 else "+") + body + mono)
    text = "".join(parts) or "0"
    return text[1:] if text.startswith("+") else text


def _latex_fp(rows: list) -> str:
    parts = []
    for a, c in rows:
        c = int(c)
        sign = "-" if c < 0 else "+"
        if Fraction(a) == 0:
            parts.append(f"{sign}{abs(c)}")
        else:
            parts.append(f"{sign}{'' if abs(c) == 1 else abs(c)}t^{{{a}}}")
    text = "".join(parts) or "0"
    return text[1:] if text.startswith("+") else text


def render_latex(report: dict) -> str:
    zt = report["ztop"]
    den = "".join(f"({a}+{'' if A == '1' else A}s)" for a, A in zt["denominator"]) or "1"
    inv = report["invariants"]
    lines = [
        "\\begin{align*}",
        f"n &= ({', '.join(inv['n'])}),\\quad e = ({', '.join(inv['e'])}),\\quad r = ({', '.join(inv['r'])}) \\\\",
        f"Z_{{\\mathrm{{top}}}}(s) &= \\frac{{{_latex_spoly(zt['numerator'])}}}{{{den}}} \\\\",
        f"\\mathrm{{Sp}}' &= {_latex_fp(report['spectrum_prime'])} \\\\",
        f"\\mathrm{{Sp}} &= {_latex_fp(report['spectrum'])}",
        "\\end{align*}",
    ]
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "latex":
        return render_latex(report)
    return render_text(report)


# -- fixtures ------------------------------------------------------------------------


def example_branch(name: str, args: list[str]) -> QOBranchData:
    if name == "paper-example":
        return validate(SURFACE_EXAMPLE, 2)
    if name == "cusp":
        return validate(CUSP, 1)
    if name == "smooth":
        return validate(SMOOTH, 1)
    if name == "torus-knot":
        if len(args) != 2:
            raise InputError("torus-knot needs two integers n r", "argv")
        n, r = (_parse_int(a, "argv") for a in args)
        if n < 2 or r < 1 or gcd(n, r) != 1:
            raise InputError("torus-knot needs n >= 2, r >= 1 and gcd(n, r) = 1", "argv")
        return validate([[Fraction(r, n)]], 1)
    raise InputError(f"unknown example {name!r}", "argv")


# -- commands ------------------------------------------------------------------------


def _read_source(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _options(args, base: VerifyOptions | None = None) -> VerifyOptions:
    opts = base or VerifyOptions()
    if args.series_order is not None:
        opts = replace(opts, series_order=args.series_order)
    if args.l_precision is not None:
        opts = replace(opts, l_precision=args.l_precision)
    if args.chitop_points is not None:
        try:
            pts = tuple(int(x) for x in args.chitop_points.split(",") if x.strip())
        except ValueError as exc:
            raise InputError(f"bad --chitop-points {args.chitop_points!r}", "argv") from exc
        opts = replace(opts, chitop_points=pts)
    if args.compat_printed_csigma:
        opts = replace(opts, compat=COMPAT_PRINTED)
    return opts


def _cmd_compute(args) -> int:
    doc = parse_input(_read_source(args.input))
    if args.compat_printed_csigma:
        doc = replace(doc, compat=COMPAT_PRINTED)
    sys.stdout.write(render(compute_report(doc), args.format))
    return EXIT_OK


def _print_report(rep) -> None:
    status = "PASS" if rep.ok else "FAIL"
    print(f"[{status}] {json.dumps(encode_input(rep.branch))}")
    for c in rep.checks:
        mark = "ok  " if c.ok else "FAIL"
        extra = f" -- {c.detail}" if c.detail and not c.ok else ""
        print(f"    {mark} {c.name} ({c.seconds:.2f}s){extra}")


def _cmd_verify(args) -> int:
    if args.input is not None:
        doc = parse_input(_read_source(args.input))
        branches = [doc.branch]
        opts = _options(args, doc.options)
    else:
        seed = args.seed if args.seed is not None else 0
        count = args.count if args.count is not None else 25
        branches = [random_branch(seed + i) for i in range(count)]
        opts = _options(args)
    reports = [verify_branch(b, opts) for b in branches]
    for rep in reports:
        _print_report(rep)
    failed = [r for r in reports if not r.ok]
    print(f"{len(reports) - len(failed)}/{len(reports)} branches passed")
    if not failed:
        return EXIT_OK
    small, name = failing_check(failed[0], opts)
    print(f"minimized counterexample for check '{name}': {json.dumps(encode_input(small))}")
    return EXIT_VERIFY


def _cmd_random(args) -> int:
    seed = args.seed if args.seed is not None else 0
    count = args.count if args.count is not None else 1
    for i in range(count):
        print(json.dumps(encode_input(random_branch(seed + i))))
    return EXIT_OK


def _cmd_example(args) -> int:
    print(json.dumps(encode_input(example_branch(args.name, args.params))))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qozeta", description="Exact invariants of quasi-ordinary branches.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", metavar="PATH", help="JSON input file ('-' for stdin)")
        p.add_argument("--format", choices=("text", "json", "latex"), default="text")
        p.add_argument("--series-order", type=int, metavar="N")
        p.add_argument("--l-precision", type=int, metavar="P")
        p.add_argument("--chitop-points", metavar="LIST", help='comma separated, e.g. "1,2,3"')
        p.add_argument("--count", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--compat-printed-csigma", action="store_true", help="exchange the sigma^+/sigma^- classes")

    for name, fn in (("compute", _cmd_compute), ("verify", _cmd_verify), ("random", _cmd_random)):
        p = sub.add_parser(name)
        common(p)
        p.set_defaults(func=fn)
    p = sub.add_parser("example")
    p.add_argument("name", choices=("paper-example", "cusp", "smooth", "torus-knot"))
    p.add_argument("params", nargs="*")
    p.set_defaults(func=_cmd_example)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, BranchValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
