"""Command-line front end: solve problem files, verify solutions against
the brute-force finite-part oracle.

Problem file (JSON): {"n": int >= 2, "alpha": scalar, "f_coeffs": [scalar, ...]}
with optional "f1_coeffs" (split seed for --method mpm), "max_terms",
"tail_tol".  A scalar is {"num": [[p, q], ...], "den": [[p, q], ...]} where
entry i is the rational p/q multiplying pi^i.

Exit codes: 0 success/pass, 1 input error, 2 non-converged series verdict,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from math import factorial, sqrt
from typing import Optional

import numpy as np

from .kernel import WeightedSolution
from .oracle import FD_GUARD, PV_GUARD, QuadConfig, fp_integral_order2, fp_integral_ordern
from .poly import Poly
from .scalars import PI, Scalar
from .solvers import (
    CONVERGED,
    Problem,
    SingularSystemError,
    Solution,
    mpm_solve,
    pm_solve,
    wmpm_solve,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_CONVERGED = 2
EXIT_VERIFY_FAIL = 3

DEFAULT_MAX_TERMS = 25
DEFAULT_TAIL_TOL = 1e-10


class ProblemFileError(ValueError):
    pass


@dataclass
class ProblemFile:
    problem: Problem
    f1: Optional[Poly]
    max_terms: Optional[int]
    tail_tol: Optional[float]


def _scalar_from(obj, where: str) -> Scalar:
    try:
        return Scalar.from_json(obj)
    except (ValueError, ZeroDivisionError) as e:
        raise ProblemFileError(f"{where}: {e}") from None


def _poly_from(obj, where: str) -> Poly:
    if not isinstance(obj, list):
        raise ProblemFileError(f"{where}: must be a list of scalar encodings")
    return Poly([_scalar_from(c, f"{where}[{k}]") for k, c in enumerate(obj)])


def load_problem_file(path: str) -> ProblemFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ProblemFileError(f"{path}: {e.strerror or e}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProblemFileError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None
    if not isinstance(obj, dict):
        raise ProblemFileError(f"{path}: top level must be a JSON object")

    n = obj.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise ProblemFileError(f"{path}: 'n' must be an integer >= 2")
    if "alpha" not in obj:
        raise ProblemFileError(f"{path}: missing 'alpha'")
    alpha = _scalar_from(obj["alpha"], f"{path}: alpha")
    if "f_coeffs" not in obj:
        raise ProblemFileError(f"{path}: missing 'f_coeffs'")
    f = _poly_from(obj["f_coeffs"], f"{path}: f_coeffs")

    f1 = None
    if obj.get("f1_coeffs") is not None:
        f1 = _poly_from(obj["f1_coeffs"], f"{path}: f1_coeffs")

    max_terms = obj.get("max_terms")
    if max_terms is not None and (
        not isinstance(max_terms, int) or isinstance(max_terms, bool) or max_terms < 1
    ):
        raise ProblemFileError(f"{path}: 'max_terms' must be an integer >= 1")
    tail_tol = obj.get("tail_tol")
    if tail_tol is not None:
        if not isinstance(tail_tol, (int, float)) or not tail_tol > 0:
            raise ProblemFileError(f"{path}: 'tail_tol' must be a positive number")
        tail_tol = float(tail_tol)

    try:
        problem = Problem(n, alpha, f)
    except (ValueError, ZeroDivisionError) as e:
        raise ProblemFileError(f"{path}: {e}") from None
    return ProblemFile(problem, f1, max_terms, tail_tol)


def load_solution_psi(path: str) -> Poly:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as e:
        raise ProblemFileError(f"{path}: {e.strerror or e}") from None
    except json.JSONDecodeError as e:
        raise ProblemFileError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None
    if not isinstance(obj, dict) or "psi_coeffs" not in obj:
        raise ProblemFileError(f"{path}: missing 'psi_coeffs'")
    return _poly_from(obj["psi_coeffs"], f"{path}: psi_coeffs")


def build_report(solution: Solution, grid_size: int, precision_bits: int) -> dict:
    psi = solution.psi
    grid = np.linspace(-PV_GUARD, PV_GUARD, grid_size)
    if solution.residual_poly:
        residual_sup = float(np.max(np.abs(solution.residual_poly.eval_float(grid))))
    else:
        residual_sup = 0.0
    d = solution.diagnostics
    diagnostics = None
    if d is not None:
        diagnostics = {
            "verdict": d.verdict,
            "terms": len(d.terms),
            "term_norms": list(d.term_norms),
            "ratio_estimates": list(d.ratio_estimates),
        }
    return {
        "method": solution.method,
        "psi_exact": [str(c) for c in psi.coeffs],
        "psi_coeffs": [c.to_json() for c in psi.coeffs],
        "psi_float": [c.to_float(precision_bits) for c in psi.coeffs],
        "u_description": WeightedSolution(psi).describe(),
        "residual_exact_is_zero": solution.residual_is_zero,
        "residual_float_sup": residual_sup,
        "diagnostics": diagnostics,
        "oracle_check": None,
    }


def _write_json(path: str, obj: dict) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(obj, fh, indent=2)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _solve_text(report: dict) -> str:
    lines = [f"method: {report['method']}"]
    psi = " , ".join(report["psi_exact"]) if report["psi_exact"] else "0"
    lines.append(f"psi coefficients (exact, x^0..): {psi}")
    lines.append(f"psi coefficients (float):        {report['psi_float']}")
    lines.append(f"u(x) = {report['u_description']}")
    if report["residual_exact_is_zero"]:
        lines.append("residual: exactly zero")
    else:
        lines.append(f"residual: nonzero, grid sup {report['residual_float_sup']:.6e}")
    d = report["diagnostics"]
    if d is None:
        lines.append("series: (direct solve)")
    else:
        lines.append(
            f"series: verdict={d['verdict']} terms={d['terms']} "
            f"ratios={['%.4g' % r for r in d['ratio_estimates']]}"
        )
    return "\n".join(lines)


def cmd_solve(args) -> int:
    try:
        pf = load_problem_file(args.input)
    except ProblemFileError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    max_terms = args.max_terms if args.max_terms is not None else (
        pf.max_terms if pf.max_terms is not None else DEFAULT_MAX_TERMS
    )
    tail_tol = args.tail_tol if args.tail_tol is not None else (
        pf.tail_tol if pf.tail_tol is not None else DEFAULT_TAIL_TOL
    )

    try:
        if args.method == "pm":
            solution = pm_solve(pf.problem, max_terms, tail_tol)
        elif args.method == "mpm":
            if pf.f1 is None:
                print("error: --method mpm requires 'f1_coeffs' in the problem file",
                      file=sys.stderr)
                return EXIT_INPUT
            solution = mpm_solve(pf.problem, pf.f1, max_terms, tail_tol)
        else:
            solution = wmpm_solve(pf.problem)
    except (ValueError, SingularSystemError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT

    report = build_report(solution, args.grid, args.precision_bits)
    _write_json(args.output, report)
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(_solve_text(report))

    d = solution.diagnostics
    if solution.residual_is_zero or (d is not None and d.verdict == CONVERGED):
        return EXIT_OK
    return EXIT_NOT_CONVERGED


def equation_defect(problem: Problem, psi: Poly, xs, cfg: QuadConfig,
                    precision_bits: int = 128):
    """Pointwise defect of the original weighted equation at each x in xs,
    recomputed through the finite-part oracle (order 2 uses the defining
    bracket on u itself; higher orders differentiate the PV integral)."""
    u = WeightedSolution(psi)
    alpha_over_pi = (problem.alpha / PI).to_float(precision_bits)
    f_float = problem.f.eval_float
    out = []
    for xv in xs:
        xv = float(xv)
        if problem.n == 2:
            fp = fp_integral_order2(u, xv, cfg)
        else:
            raw = fp_integral_ordern(psi.eval_float, xv, problem.n, cfg)
            fp = raw / factorial(problem.n - 1)
        w = sqrt(1.0 - xv * xv)
        out.append(u(xv) - w * f_float(xv) - alpha_over_pi * w * fp)
    return out


def cmd_verify(args) -> int:
    try:
        pf = load_problem_file(args.input)
        psi = load_solution_psi(args.solution)
    except ProblemFileError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT

    n = pf.problem.n
    bound = PV_GUARD if n == 2 else FD_GUARD
    tolerance = 1e-4 if n == 2 else 1e-3
    xs = np.linspace(-bound, bound, args.grid)
    defects = equation_defect(pf.problem, psi, xs, QuadConfig(), args.precision_bits)
    sup = max(abs(v) for v in defects)
    passed = sup < tolerance

    report = {
        "oracle_check": {
            "grid_size": int(args.grid),
            "grid_bound": bound,
            "grid_sup_error": sup,
            "tolerance": tolerance,
            "pass": passed,
        }
    }
    if args.output:
        _write_json(args.output, report)
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        check = report["oracle_check"]
        print(
            f"oracle verification on [{-bound}, {bound}] ({args.grid} points): "
            f"sup defect {check['grid_sup_error']:.6e} "
            f"(tolerance {tolerance:g}) -> {'PASS' if passed else 'FAIL'}"
        )
    return EXIT_OK if passed else EXIT_VERIFY_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hsie",
        description="Solve second-kind hypersingular integral equations with "
        "polynomial forcing, exactly over Q(pi).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="solve a problem file, write a solution report")
    ps.add_argument("input", help="problem JSON file")
    ps.add_argument("output", help="solution report JSON file to write")
    ps.add_argument("--method", choices=("pm", "mpm", "wmpm"), default="wmpm")
    ps.add_argument("--max-terms", type=int, default=None,
                    help=f"series term budget (default {DEFAULT_MAX_TERMS})")
    ps.add_argument("--tail-tol", type=float, default=None,
                    help=f"relative tail tolerance (default {DEFAULT_TAIL_TOL})")
    ps.add_argument("--grid", type=int, default=101,
                    help="grid size for the float residual sup")
    ps.add_argument("--precision-bits", type=int, default=128)
    ps.add_argument("--format", choices=("text", "json"), default="text")
    ps.set_defaults(func=cmd_solve)

    pv = sub.add_parser("verify", help="check a solution against the quadrature oracle")
    pv.add_argument("input", help="problem JSON file")
    pv.add_argument("solution", help="solution report JSON file")
    pv.add_argument("--grid", type=int, default=101)
    pv.add_argument("--precision-bits", type=int, default=128)
    pv.add_argument("--format", choices=("text", "json"), default="text")
    pv.add_argument("--output", default=None, help="also write the check as JSON")
    pv.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "precision_bits", 128) < 53:
        print("error: --precision-bits must be >= 53", file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "grid", 101) < 2:
        print("error: --grid must be >= 2", file=sys.stderr)
        return EXIT_INPUT
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
