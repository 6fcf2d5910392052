"""Command-line front end: ``psu3 <command> [options]``.

Every command prints a report with a list of named checks.  Exit status is 0
when all checks pass, 1 when one fails and 2 on usage, parse or internal
errors.  ``--json`` selects a byte-stable machine-readable report.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .checks import CheckResult, budget_from_env, run_checks
from .connection import PAIRS, CurvOp, bianchi_residual, ricci, riemann_from_characteristic, scal
from .forms import Form, FormError, form_from_json, form_to_json, norm_sq
from .holonomy import (
    FAMILY_CASES,
    SUBALGEBRAS,
    FamilyConstraintError,
    classify_family_type,
    family,
    invariant_subspace,
    is_curvature_invariant,
    is_invariant,
    nomizu_algebra,
    spin7_report,
)
from .modules import modules_of_degree, project
from .scalar import Scalar
from .torsion import CharForms, NotRealizable, classify, gamma_of, recover_char_forms

__all__ = ["main", "Report"]

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    """Bad input documents or arguments (exit status 2)."""


@dataclass
class Report:
    command: str
    inputs: dict = field(default_factory=dict)
    checks: list[CheckResult] = field(default_factory=list)
    artifacts: dict = field(default_factory=dict)
    error: str | None = None

    def add(self, name: str, expected, actual) -> None:
        self.checks.append(CheckResult(name, expected, actual))

    @property
    def status(self) -> str:
        if self.error is not None:
            return "error"
        return "pass" if all(c.ok for c in self.checks) else "fail"

    @property
    def exit_code(self) -> int:
        return {"pass": EXIT_PASS, "fail": EXIT_FAIL, "error": EXIT_ERROR}[self.status]

    def to_json(self) -> dict:
        doc = {
            "command": self.command,
            "status": self.status,
            "inputs": self.inputs,
            "checks": [c.to_json() for c in self.checks],
            "artifacts": self.artifacts,
        }
        if self.error is not None:
            doc["error"] = self.error
        return doc

    def render_json(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def render_text(self) -> str:
        lines = []
        for c in self.checks:
            mark = "PASS" if c.ok else "FAIL"
            detail = "" if c.ok else f"  expected {_compact(c.expected)}, got {_compact(c.actual)}"
            lines.append(f"{mark} {c.name}{detail}")
        for key in sorted(self.artifacts):
            value = self.artifacts[key]
            if isinstance(value, (str, int, bool)) or value is None:
                lines.append(f"{key}: {value}")
        if self.error is not None:
            lines.append(f"error: {self.error}")
        passed = sum(c.ok for c in self.checks)
        lines.append(f"{self.command}: {self.status} ({passed}/{len(self.checks)} checks)")
        return "\n".join(lines) + "\n"


def _compact(value) -> str:
    return json.dumps(value, sort_keys=True, ensure_ascii=False)


# -- input helpers -----------------------------------------------------------


def _read_json(path: str, what: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"{what}: cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _read_form(path: str, what: str, degree: int | None = None) -> Form:
    doc = _read_json(path, what)
    try:
        f = form_from_json(doc)
    except FormError as exc:
        raise UsageError(f"{what}: {exc}") from None
    if degree is not None and f.degree != degree:
        raise UsageError(f"{what}: expected a {degree}-form, got degree {f.degree}")
    return f


def _read_optional_form(path: str | None, what: str, degree: int) -> Form:
    return Form.zero(degree) if path is None else _read_form(path, what, degree)


def _read_curvature(path: str) -> CurvOp:
    doc = _read_json(path, "curvature")
    try:
        return CurvOp.from_json(doc)
    except FormError as exc:
        raise UsageError(f"curvature: {exc}") from None
    except (TypeError, KeyError) as exc:
        raise UsageError(f"curvature: malformed document ({exc})") from None


def _parse_params(text: str | None) -> dict[str, Scalar]:
    out: dict[str, Scalar] = {}
    if not text:
        return out
    for pos, item in enumerate(text.split(",")):
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"--params item {pos} ({item!r}): expected name=value")
        try:
            out[name.strip()] = Scalar.parse(value)
        except ValueError as exc:
            raise UsageError(f"--params item {pos}: {exc}") from None
    return out


def _scalar(x: Scalar) -> str:
    return x.render()


def _matrix(m) -> list[list[str]]:
    return [[_scalar(v) for v in row] for row in m]


def _char_json(c: CharForms) -> dict:
    return {name: form_to_json(f) for name, f in c.components().items()}


def _char_inputs(T: Form, F: Form, report: Report) -> CharForms:
    c = CharForms.from_forms(T, F)
    report.add("inputs:characteristic-torsion", True, c.T == T)
    report.add("inputs:characteristic-four-form", True, c.F == F)
    return c


# -- commands ----------------------------------------------------------------


def cmd_verify_all(args) -> Report:
    report = Report("verify-all", inputs={"only": args.only, "seed": args.seed, "budget": args.budget})
    report.checks = run_checks(args.only, args.seed, args.budget)
    report.artifacts["count"] = len(report.checks)
    return report


def cmd_decompose(args) -> Report:
    alpha = _read_form(args.input, "input", args.degree)
    report = Report("decompose", inputs={"degree": args.degree, "form": form_to_json(alpha)})
    labels = modules_of_degree(args.degree)
    if not labels:
        raise UsageError(f"no module decomposition for degree {args.degree} (supported: 1-4)")
    parts = {label: project(label, alpha) for label in labels}
    total = sum(parts.values(), Form.zero(args.degree))
    report.add("decompose:sum", True, total == alpha)
    report.artifacts["components"] = {
        label: {"form": form_to_json(f), "norm_sq": _scalar(norm_sq(f))} for label, f in parts.items() if f
    }
    report.artifacts["nonzero"] = ",".join(label for label, f in parts.items() if f) or "none"
    return report


def cmd_classify(args) -> Report:
    T = _read_optional_form(args.torsion, "torsion", 3)
    F = _read_optional_form(args.four_form, "four-form", 4)
    report = Report("classify", inputs={"torsion": form_to_json(T), "four_form": form_to_json(F)})
    c = _char_inputs(T, F, report)
    cls = classify(gamma_of(c))
    report.artifacts["class"] = cls.render()
    report.artifacts["char_forms"] = _char_json(c)
    return report


def cmd_from_derivatives(args) -> Report:
    drho = _read_form(args.drho, "drho", 4)
    deltarho = _read_form(args.delta_rho, "delta-rho", 2)
    report = Report("from-derivatives", inputs={"drho": form_to_json(drho), "delta_rho": form_to_json(deltarho)})
    try:
        c = recover_char_forms(drho, deltarho)
    except NotRealizable as exc:
        report.add("recover:realizable", True, False)
        report.artifacts["reason"] = str(exc)
        return report
    report.add("recover:realizable", True, True)
    report.artifacts["char_forms"] = _char_json(c)
    report.artifacts["class"] = classify(gamma_of(c)).render()
    if not c:
        report.artifacts["note"] = "integrable"
    return report


def cmd_holonomy(args) -> Report:
    params = _parse_params(args.params)
    report = Report(
        "holonomy",
        inputs={"case": args.case, "params": {k: _scalar(v) for k, v in sorted(params.items())}},
    )
    try:
        fam = family(args.case, params)
    except FamilyConstraintError as exc:
        report.add("family:constraints", True, False)
        report.artifacts["violated"] = str(exc)
        return report
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report.add("family:constraints", True, True)
    h = fam.holonomy
    report.add(
        "family:invariance",
        True,
        is_invariant(h, fam.T) and is_invariant(h, fam.F) and is_curvature_invariant(h, fam.curvature),
    )
    report.add("family:bianchi-residual", "0+0√3", _scalar(bianchi_residual(fam.curvature, fam.chars)))
    cls = classify_family_type(args.case, params)
    Rg = riemann_from_characteristic(fam.curvature, fam.chars)
    ric = ricci(Rg)
    report.artifacts.update(
        {
            "algebra": fam.algebra,
            "class": cls.render(),
            "T": form_to_json(fam.T),
            "F": form_to_json(fam.F),
            "curvature": fam.curvature.to_json(),
            "ricci": _matrix(ric),
            "ricci_diagonal": [_scalar(ric[i][i]) for i in range(8)],
            "ricci_is_diagonal": all(not ric[i][j] for i in range(8) for j in range(8) if i != j),
            "scal": _scalar(scal(Rg)),
        }
    )
    if fam.algebra in ("r_suc2", "suc2", "t2"):
        rep = spin7_report(args.case, params)
        report.add("spin7:invariant", True, rep.invariant)
        report.artifacts["spin7"] = {
            "balanced": rep.balanced,
            "lcp": rep.lcp,
            "lee_form": form_to_json(rep.lee_form),
        }
    if fam.algebra == "so3":
        alg = nomizu_algebra(args.case, params)
        report.add("nomizu:jacobi-residual", "0+0√3", _scalar(alg.jacobi_residual()))
        report.artifacts["lie_algebra"] = {
            "dim": alg.dim,
            "killing_signature": list(alg.signature()),
            "killing_negative_definite": alg.is_negative_definite(),
        }
    return report


def _curvature_inputs(args, command: str):
    R = _read_curvature(args.curvature)
    T = _read_optional_form(args.torsion, "torsion", 3)
    F = _read_optional_form(args.four_form, "four-form", 4)
    report = Report(
        command,
        inputs={"curvature": R.to_json(), "torsion": form_to_json(T), "four_form": form_to_json(F)},
    )
    return R, _char_inputs(T, F, report), report


def cmd_residual(args) -> Report:
    R, c, report = _curvature_inputs(args, "residual")
    res = bianchi_residual(R, c)
    report.add("bianchi:residual", "0+0√3", _scalar(res))
    report.artifacts["residual"] = _scalar(res)
    return report


def cmd_ricci(args) -> Report:
    R, c, report = _curvature_inputs(args, "ricci")
    Rg = riemann_from_characteristic(R, c)
    ric = ricci(Rg)
    report.artifacts["riemann"] = Rg.to_json()
    report.artifacts["ricci"] = _matrix(ric)
    report.artifacts["scal"] = _scalar(scal(Rg))
    return report


_SPACES = ("char3", "char4", "L2", "L3", "L4")


def cmd_invariants(args) -> Report:
    if args.algebra not in SUBALGEBRAS:
        raise UsageError(f"unknown algebra {args.algebra!r}; expected one of {', '.join(SUBALGEBRAS)}")
    report = Report("invariants", inputs={"algebra": args.algebra, "space": args.space})
    basis = invariant_subspace(args.algebra, args.space)
    report.artifacts["dim"] = len(basis)
    report.artifacts["basis"] = [form_to_json(f) for f in basis]
    return report


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a machine-readable report")
    common.add_argument("--only", metavar="PREFIX", help="keep only checks whose name starts with PREFIX")
    common.add_argument("--seed", type=int, default=0, help="sampling seed for randomized checks (default 0)")

    parser = argparse.ArgumentParser(prog="psu3", description="Exact PSU(3)-structure computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("verify-all", parents=[common], help="run every named check")

    p = sub.add_parser("decompose", parents=[common], help="split a form into irreducible modules")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--in", dest="input", required=True, metavar="FILE")

    p = sub.add_parser("classify", parents=[common], help="torsion class of characteristic forms")
    p.add_argument("--torsion", metavar="FILE", help="3-form T (default 0)")
    p.add_argument("--four-form", metavar="FILE", help="4-form F (default 0)")

    p = sub.add_parser("from-derivatives", parents=[common], help="recover T, F from d rho and delta rho")
    p.add_argument("--drho", required=True, metavar="FILE")
    p.add_argument("--delta-rho", required=True, metavar="FILE")

    p = sub.add_parser("holonomy", parents=[common], help="realize and verify a solution family")
    p.add_argument("--case", required=True, choices=FAMILY_CASES)
    p.add_argument("--params", default="", metavar="k=v,...", help='values like 1, -1/2, 2√3 or "1+sqrt3"')

    for name, text in (("residual", "Bianchi residual of (R, T, F)"), ("ricci", "Riemannian Ricci tensor")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--curvature", required=True, metavar="FILE")
        p.add_argument("--torsion", metavar="FILE")
        p.add_argument("--four-form", metavar="FILE")

    p = sub.add_parser("invariants", parents=[common], help="basis of invariant forms of a subalgebra")
    p.add_argument("--algebra", required=True)
    p.add_argument("--space", default="char3", choices=_SPACES)
    return parser


_COMMANDS = {
    "verify-all": cmd_verify_all,
    "decompose": cmd_decompose,
    "classify": cmd_classify,
    "from-derivatives": cmd_from_derivatives,
    "holonomy": cmd_holonomy,
    "residual": cmd_residual,
    "ricci": cmd_ricci,
    "invariants": cmd_invariants,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.budget = budget_from_env()
    except ValueError as exc:
        sys.stderr.write(f"psu3: {exc}\n")
        return EXIT_ERROR
    try:
        report = _COMMANDS[args.command](args)
    except UsageError as exc:
        report = Report(args.command, error=str(exc))
    except Exception as exc:  # internal failure: still emit a report
        report = Report(args.command, error=f"internal error: {type(exc).__name__}: {exc}")
    if args.only and args.command != "verify-all":
        report.checks = [c for c in report.checks if c.name.startswith(args.only)]
    out = report.render_json() if args.json else report.render_text()
    sys.stdout.write(out)
    if report.error is not None and not args.json:
        sys.stderr.write(f"psu3: {report.error}\n")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
