"""Command-line front end.

    mirtrace canonical MATRIX.json
    mirtrace predict DATUM.json --q 5
    mirtrace tate PHI.json
    mirtrace eisenstein [G.json PHI1.json PHI2.json] --p 3
    mirtrace kernel [G.json F1.json F2.json] --p 2
    mirtrace verify SUITE --seed 1 --count 100

Every command prints an aligned text report, or a JSON report with --json.
The exit status is 0 iff every check passed.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .canonical import (DEFAULT_DEGREE_BOUND, RationalMatrix, char_poly, class_datum, classify,
                        frobenius_normal_form)
from .errors import DegreeBoundError, MirtraceError
from .exactnum import CyclotomicNumber, ZetaExpression
from .mirabolic import GroupElement, local_eisenstein_integral, local_kernel, verify_kernel_swap
from .oracles import eisenstein_double_sum, tate_shell_sums
from .partitions import (ClassDatum, predicted_factors_by_component, predict_zeta_multiset,
                         prediction_expression, render_prediction)
from .schwartz import SchwartzFunction
from .suites import SUITES, Check, run_suite
from .tate import local_tate_integral

SAMPLE_POINTS = (0.25, 0.5, 0.75)
NUMERIC_TOL = 1e-9


@dataclass
class Report:
    command: str
    inputs: dict
    results: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    timing: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str, passed: bool, left=None, right=None) -> None:
        witness = None if passed else {"left": _jsonable(left), "right": _jsonable(right)}
        self.checks.append(Check(name, bool(passed), witness))

    def to_json(self) -> dict:
        return {"command": self.command, "inputs": self.inputs, "results": self.results,
                "checks": [c.to_json() for c in self.checks], "ok": self.ok,
                "timing_seconds": round(self.timing, 6)}

    def render_text(self) -> str:
        lines = [f"== {self.command} =="]
        width = max([len(k) for k in self.results] + [0])
        for key, value in self.results.items():
            text = value if isinstance(value, str) else json.dumps(value, ensure_ascii=False)
            lines.append(f"  {key.ljust(width)}  {text}")
        if self.checks:
            lines.append("checks:")
            cw = max(len(c.name) for c in self.checks)
            for c in self.checks:
                lines.append(f"  {'PASS' if c.passed else 'FAIL'}  {c.name.ljust(cw)}"
                             + ("" if c.witness is None else
                                "  " + json.dumps(c.witness, ensure_ascii=False)))
        lines.append(f"{'OK' if self.ok else 'FAILED'} ({self.timing:.3f} s)")
        return "\n".join(lines)


def _jsonable(value):
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return str(value)


def _load(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


class InputError(Exception):
    pass


def _parse(path: str, kind: str, loader):
    data = _load(path)
    try:
        return loader(data)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: not a valid {kind} ({exc})") from None


def _fmt_complex(z: complex, digits: int) -> str:
    if abs(z.imag) < 10 ** (-digits):
        return f"{z.real:.{digits}g}"
    return f"{z.real:.{digits}g}{z.imag:+.{digits}g}i"


def _zeta_result(expr: ZetaExpression) -> dict:
    return {"text": str(expr.simplify()), "json": expr.to_json()}


# -- commands -------------------------------------------------------------------

def cmd_canonical(args) -> Report:
    x = _parse(args.matrix, "matrix", RationalMatrix.from_json)
    rep = Report("canonical", {"matrix": x.to_json(), "degree_bound": args.degree_bound})
    if not x.is_square():
        raise InputError("canonical needs a square matrix")
    p = char_poly(x)
    form = frobenius_normal_form(x)
    factors = list(form.invariant_factors)
    rep.results["char_poly"] = str(p)
    rep.results["invariant_factors"] = [str(f) for f in factors]
    rep.results["frobenius_form"] = form.form.to_json()
    rep.results["certificate"] = form.certificate.to_json()
    rep.check("S^-1 X S = F", form.certificate.inverse() @ x @ form.certificate == form.form,
              form.certificate.inverse() @ x @ form.certificate, form.form)
    chain = all(a.divides(b) for a, b in zip(factors, factors[1:]))
    rep.check("divisibility chain p_r | ... | p_1", chain, factors, None)
    try:
        datum = class_datum(x, args.degree_bound)
    except DegreeBoundError as exc:
        rep.results["class_datum"] = f"unavailable: {exc}"
        return rep
    rep.results["class_datum"] = datum.to_json()
    cls = classify(p, datum)
    rep.results["classification"] = cls.label
    rep.results["flags"] = {k: v for k, v in cls.to_json().items() if k != "label"}
    return rep


def cmd_predict(args) -> Report:
    datum = _parse(args.datum, "class datum", ClassDatum.from_json)
    q = args.q or args.p
    rep = Report("predict", {"datum": datum.to_json(), "q": q})
    rep.results["symbolic"] = render_prediction(datum)
    rep.results["factors"] = [
        {"field": label, "factors": [f.to_json() | {"symbol": f.symbol(label),
                                                    "expression": str(f.to_expression(q))}
                                     for f in factors]}
        for label, factors in predicted_factors_by_component(datum)]
    rep.results["multiset"] = [[f.to_json(), m] for f, m in sorted(predict_zeta_multiset(datum).items())]
    rep.results["product"] = _zeta_result(prediction_expression(datum, q))
    return rep


def _numeric_checks(rep: Report, expr: ZetaExpression, oracle, digits: int) -> None:
    values = oracle(SAMPLE_POINTS)
    numeric = {}
    for s, b in zip(SAMPLE_POINTS, values):
        a = expr.evaluate(s)
        numeric[str(s)] = {"exact": _fmt_complex(a, digits), "oracle": _fmt_complex(b, digits)}
        rep.check(f"numeric s={s}", abs(a - b) <= NUMERIC_TOL, a, b)
    rep.results["numeric"] = numeric


def cmd_tate(args) -> Report:
    phi = _parse(args.phi, "Schwartz function", SchwartzFunction.from_json)
    rep = Report("tate", {"phi": phi.to_json()})
    value = local_tate_integral(phi)
    rep.results["integral"] = _zeta_result(value)
    _numeric_checks(rep, value, lambda pts: tate_shell_sums(phi, pts), args.precision)
    return rep


def _default_or_files(args, names: list[str]):
    given = [getattr(args, n) for n in names]
    if any(given) and not all(given):
        raise InputError(f"give all of {', '.join(names)} or none of them")
    return all(given)


def cmd_eisenstein(args) -> Report:
    p = args.p
    if _default_or_files(args, ["g", "phi1", "phi2"]):
        g = _parse(args.g, "group element", GroupElement.from_json)
        phi1 = _parse(args.phi1, "Schwartz function", SchwartzFunction.from_json)
        phi2 = _parse(args.phi2, "Schwartz function", SchwartzFunction.from_json)
    else:
        g = GroupElement.identity(1)
        phi1 = phi2 = SchwartzFunction.unit_ball(p, 1)
    rep = Report("eisenstein", {"g": g.to_json(), "phi1": phi1.to_json(), "phi2": phi2.to_json()})
    value = local_eisenstein_integral(g, phi1, phi2)
    rep.results["integral"] = _zeta_result(value)
    if g.n == 1:
        _numeric_checks(rep, value,
                        lambda pts: [eisenstein_double_sum(phi1, phi2, s) for s in pts],
                        args.precision)
    else:
        rep.results["numeric"] = {str(s): _fmt_complex(value.evaluate(s), args.precision)
                                  for s in SAMPLE_POINTS}
    scaled = GroupElement(g.matrix.scale(phi1.p))
    other = local_eisenstein_integral(scaled, phi1, phi2)
    rep.check("E(p g) = E(g)", value.equals(other), value, other)
    return rep


def cmd_kernel(args) -> Report:
    p = args.p
    if _default_or_files(args, ["g", "f1", "f2"]):
        g = _parse(args.g, "group element", GroupElement.from_json)
        f1 = _parse(args.f1, "Schwartz function", SchwartzFunction.from_json)
        f2 = _parse(args.f2, "Schwartz function", SchwartzFunction.from_json)
    else:
        g = GroupElement.diagonal([p, 1])
        f1 = f2 = SchwartzFunction.unit_ball(p, 4)
    rep = Report("kernel", {"g": g.to_json(), "f1": f1.to_json(), "f2": f2.to_json()})
    value: CyclotomicNumber = local_kernel(g, f1, f2)
    rep.results["kernel"] = str(value)
    rep.results["kernel_json"] = value.to_json()
    rep.results["numeric"] = _fmt_complex(value.to_complex(), args.precision)
    holds, left, right = verify_kernel_swap(g, f1, f2)
    rep.check("K(g; F f1, f2) = K(g; f1, F f2)", holds, left, right)
    return rep


def cmd_verify(args) -> Report:
    count = args.count
    rep = Report("verify", {"suite": args.suite, "seed": args.seed,
                            "count": SUITES[args.suite][1] if count is None else count})
    rep.checks = run_suite(args.suite, args.seed, count)
    passed = sum(c.passed for c in rep.checks)
    rep.results["passed"] = f"{passed}/{len(rep.checks)}"
    rep.results["seed"] = str(args.seed)
    return rep


COMMANDS = {"canonical": cmd_canonical, "predict": cmd_predict, "tate": cmd_tate,
            "eisenstein": cmd_eisenstein, "kernel": cmd_kernel, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=2, help="residue characteristic for defaults")
    common.add_argument("--precision", type=int, default=12,
                        help="significant digits in printed numeric values")
    common.add_argument("--json", action="store_true", help="emit the JSON report")

    parser = argparse.ArgumentParser(prog="mirtrace", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("canonical", parents=[common], help="canonical forms of a rational matrix")
    c.add_argument("matrix")
    c.add_argument("--degree-bound", type=int, default=DEFAULT_DEGREE_BOUND)

    c = sub.add_parser("predict", parents=[common], help="zeta factors of a class datum")
    c.add_argument("datum")
    c.add_argument("--q", type=int, default=None, help="residue field size (default: --p)")

    c = sub.add_parser("tate", parents=[common], help="local Tate integral")
    c.add_argument("phi")

    c = sub.add_parser("eisenstein", parents=[common], help="local Eisenstein integral")
    for name in ("g", "phi1", "phi2"):
        c.add_argument(name, nargs="?")

    c = sub.add_parser("kernel", parents=[common], help="local kernel K(g; f1, f2)")
    for name in ("g", "f1", "f2"):
        c.add_argument(name, nargs="?")

    c = sub.add_parser("verify", parents=[common], help="run a verification suite")
    c.add_argument("suite", choices=list(SUITES))
    c.add_argument("--seed", type=int, default=1)
    c.add_argument("--count", type=int, default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        rep = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"mirtrace {args.command}: {exc}", file=sys.stderr)
        return 2
    except (MirtraceError, ValueError, ArithmeticError) as exc:
        print(f"mirtrace {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    rep.timing = time.perf_counter() - start
    if args.json:
        print(json.dumps(rep.to_json(), indent=2, ensure_ascii=False))
    else:
        print(rep.render_text())
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
