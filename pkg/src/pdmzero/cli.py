"""Command-line front end.

Every subcommand parses and validates its flags, calls the library, and
renders a table.  Exit codes: 0 success, 1 domain or admissibility
failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .ambiguity import AmbiguityParameters, NamedSet, barrier_f, named_set, script_l, zeta
from .config import (
    DEFAULT_A_SQ,
    DEFAULT_A_TILDE,
    DEFAULT_ATILDE_SQ,
    DEFAULT_B,
    DEFAULT_B_TILDE,
    TOL,
)
from .errors import DomainError, EigenSolveError, GridTooCoarse, InadmissibleError, SeparationMismatch
from .numerics.eigensolver import Grid1D, default_grid, eigen_solve
from .numerics.special import analytic_eigenfunction
from .numerics.vonroos import RESIDUAL_HEADER, case_wavefunction, default_residual_grids, von_roos_residual
from .separation import AssembledPotential, CaseCouplings, EffectiveProblem, PotentialKind, QuantumNumbers
from .spectra import (
    REPORT_HEADER,
    EvaluationMode,
    Family,
    SpectrumConvention,
    analytic_level,
    constraint_residual,
    scan,
    solve_family,
)
from .tables import render


class _Failure(Exception):
    """Domain/admissibility failure carrying an already-rendered payload."""

    def __init__(self, reason, message, payload=""):
        super().__init__(message)
        self.reason = reason
        self.payload = payload


# ---------------------------------------------------------------- flag types

def finite_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return v


def positive_float(text):
    v = finite_float(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def nonneg_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text!r}")
    return v


def any_int(text):
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")


def case_number(text):
    v = any_int(text)
    if v not in (1, 2, 3, 4):
        raise argparse.ArgumentTypeError("case must be 1, 2, 3 or 4")
    return v


def family_type(text):
    try:
        return Family.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


# ---------------------------------------------------------------- parser

def _output_parent():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("csv", "json", "pretty"), default="csv")
    p.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
    return p


def _params_parent(required_set=False):
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--set", dest="set_name", metavar="NAME",
                   help="named set: bdd, zk, mm, gw, lk (or full name)")
    p.add_argument("--alpha", type=finite_float)
    p.add_argument("--beta", type=finite_float)
    p.add_argument("--gamma", type=finite_float)
    return p


def _couplings_parent():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("couplings")
    g.add_argument("--a-sq", type=finite_float, default=DEFAULT_A_SQ, help=f"radial oscillator a^2 (default {DEFAULT_A_SQ})")
    g.add_argument("--atilde-sq", type=finite_float, default=DEFAULT_ATILDE_SQ, help=f"axial oscillator atilde^2 (default {DEFAULT_ATILDE_SQ})")
    g.add_argument("--A-tilde", dest="A_tilde", type=positive_float, default=DEFAULT_A_TILDE, help=f"radial Coulomb strength (default {DEFAULT_A_TILDE})")
    g.add_argument("--B-tilde", dest="B_tilde", type=positive_float, default=DEFAULT_B_TILDE, help=f"axial Coulomb strength (default {DEFAULT_B_TILDE})")
    g.add_argument("--b", type=positive_float, default=DEFAULT_B, help=f"mass scale b (default {DEFAULT_B})")
    return p


def _mode_parent():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--mode", choices=("published", "rederived"), default="published")
    p.add_argument("--convention", choices=("published", "oracle"), default="oracle",
                   help="Coulomb ladder used by --mode rederived (default oracle)")
    return p


def _qn_parent():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--case", type=case_number, required=True)
    p.add_argument("--j", type=finite_float, default=0.0)
    p.add_argument("--nrho", type=nonneg_int, default=0)
    p.add_argument("--nz", type=nonneg_int, default=0)
    p.add_argument("--m", type=any_int, default=0)
    return p


def build_parser():
    out, params, coup, mode, qn = (
        _output_parent(), _params_parent(), _couplings_parent(), _mode_parent(), _qn_parent())
    parser = argparse.ArgumentParser(
        prog="pdmzero",
        description="Zero-energy separability and ordering-ambiguity constraints "
                    "for the von Roos position-dependent-mass Hamiltonian.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("zeta", parents=[out], help="zeta, F and |L| for one parameter triple")
    p.add_argument("--alpha", type=finite_float, required=True)
    p.add_argument("--beta", type=finite_float, required=True)
    p.add_argument("--gamma", type=finite_float, required=True)
    p.add_argument("--j", type=finite_float, default=0.0)
    p.set_defaults(func=cmd_zeta)

    sets = sub.add_parser("sets", help="named parameter sets").add_subparsers(dest="action", metavar="ACTION")
    p = sets.add_parser("list", parents=[out], help="list the catalog")
    p.set_defaults(func=cmd_sets_list)
    p = sets.add_parser("check", parents=[out, qn, coup, mode], help="constraint report for every named set")
    p.set_defaults(func=cmd_sets_check)

    con = sub.add_parser("constraint", help="auxiliary quantization constraints").add_subparsers(dest="action", metavar="ACTION")
    p = con.add_parser("residual", parents=[out, qn, params, coup, mode], help="one constraint report")
    p.set_defaults(func=cmd_constraint_residual)
    p = con.add_parser("solve", parents=[out, qn, coup, mode], help="roots along a one-parameter family")
    p.add_argument("--family", type=family_type, required=True,
                   help="alpha-eq-gamma or fixed-beta=B")
    p.add_argument("--bracket", type=finite_float, nargs=2, metavar=("LO", "HI"), required=True)
    p.add_argument("--tol", type=positive_float, default=TOL.root)
    p.set_defaults(func=cmd_constraint_solve)
    p = con.add_parser("scan", parents=[out, params, coup, mode], help="reports over a quantum-number box")
    p.add_argument("--case", type=case_number, required=True)
    p.add_argument("--j", type=finite_float, default=0.0)
    p.add_argument("--nrho-max", type=any_int, required=True)
    p.add_argument("--nz-max", type=any_int, required=True)
    p.add_argument("--m-max", type=any_int, required=True)
    p.set_defaults(func=cmd_constraint_scan)

    spectra_cmd = sub.add_parser("spectrum", help="half-line spectra").add_subparsers(dest="action", metavar="ACTION")
    for name, func in (("analytic", cmd_spectrum_analytic), ("numeric", cmd_spectrum_numeric)):
        p = spectra_cmd.add_parser(name, parents=[out], help=f"{name} levels")
        p.add_argument("--potential", choices=("ho", "coulomb"), required=True)
        p.add_argument("--l-abs", type=finite_float, required=True)
        p.add_argument("--coupling", type=positive_float, required=True,
                       help="omega for ho (V = omega^2 x^2/4); c for coulomb (V = -2c/x)")
        p.add_argument("--levels", type=nonneg_int, default=3)
        p.add_argument("--convention", choices=("published", "oracle"), default="oracle")
        if name == "numeric":
            p.add_argument("--grid-h", type=positive_float)
            p.add_argument("--x-max", type=positive_float)
        p.set_defaults(func=func)

    vr = sub.add_parser("vonroos", help="2D operator residual").add_subparsers(dest="action", metavar="ACTION")
    p = vr.add_parser("residual", parents=[out, params, coup], help="|| H Psi || for an assembled case solution")
    p.add_argument("--case", type=case_number, required=True)
    p.add_argument("--j", type=finite_float, default=0.0)
    p.add_argument("--qn", type=any_int, nargs=3, metavar=("NRHO", "NZ", "M"), default=[0, 0, 0])
    p.add_argument("--grid-h", type=positive_float, default=0.02)
    p.add_argument("--rho-max", type=positive_float)
    p.add_argument("--z-max", type=positive_float)
    p.add_argument("--refine", action="store_true")
    p.add_argument("--field-out", metavar="FILE", help="CSV of (rho,z,residual) on the evaluation nodes")
    p.set_defaults(func=cmd_vonroos_residual)

    wf = sub.add_parser("wavefunction", help="1D eigenfunction samples").add_subparsers(dest="action", metavar="ACTION")
    p = wf.add_parser("emit", parents=[out])
    p.add_argument("--potential", choices=("ho", "coulomb"), required=True)
    p.add_argument("--n", type=nonneg_int, default=0)
    p.add_argument("--l-abs", type=finite_float, required=True)
    p.add_argument("--coupling", type=positive_float, required=True)
    p.add_argument("--grid-h", type=positive_float, default=0.01)
    p.add_argument("--x-max", type=positive_float)
    p.add_argument("--source", choices=("analytic", "numeric"), default="analytic")
    p.set_defaults(func=cmd_wavefunction_emit)

    pot = sub.add_parser("potential", help="assembled interaction potential").add_subparsers(dest="action", metavar="ACTION")
    p = pot.add_parser("emit", parents=[out, coup])
    p.add_argument("--case", type=case_number, required=True)
    p.add_argument("--j", type=finite_float, default=0.0)
    p.add_argument("--grid-h", type=positive_float, default=0.5)
    p.add_argument("--rho-max", type=positive_float, default=5.0)
    p.add_argument("--z-max", type=positive_float, default=5.0)
    p.set_defaults(func=cmd_potential_emit)
    return parser


# ---------------------------------------------------------------- helpers

def _params(args, parser):
    triple = (args.alpha, args.beta, args.gamma)
    if args.set_name is not None:
        if any(v is not None for v in triple):
            parser.error("give either --set or --alpha/--beta/--gamma, not both")
        try:
            return named_set(args.set_name)
        except KeyError as exc:
            parser.error(str(exc.args[0]))
    if any(v is None for v in triple):
        parser.error("need --set NAME or all of --alpha --beta --gamma")
    try:
        return AmbiguityParameters(*triple)
    except ValueError as exc:
        parser.error(str(exc))


def _couplings(args):
    return CaseCouplings(args.a_sq, args.atilde_sq, args.A_tilde, args.B_tilde)


def _check_case_couplings(args, parser):
    # square roots of a^2 / atilde^2 enter the oscillator cases
    if args.case in (1, 3) and args.a_sq <= 0:
        parser.error("--a-sq must be positive for cases 1 and 3")
    if args.case in (1, 2) and args.atilde_sq <= 0:
        parser.error("--atilde-sq must be positive for cases 1 and 2")


def _problem(kind, l_abs, coupling, parser):
    if l_abs < 0:
        parser.error("--l-abs must be >= 0")
    kind = PotentialKind(kind)
    c = coupling * coupling / 4.0 if kind is PotentialKind.HARMONIC_OSCILLATOR else coupling
    return EffectiveProblem(l_abs * l_abs - 0.25, kind, c)


# ---------------------------------------------------------------- commands

def cmd_zeta(args, parser):
    try:
        p = AmbiguityParameters(args.alpha, args.beta, args.gamma)
    except ValueError as exc:
        parser.error(str(exc))
    f = barrier_f(p, args.j)
    strength = script_l(f)
    row = {"alpha": p.alpha, "beta": p.beta, "gamma": p.gamma, "j": args.j,
           "zeta": zeta(p), "F": f, "script_l_abs": strength.script_l_abs,
           "admissible": strength.admissible}
    header = ("alpha", "beta", "gamma", "j", "zeta", "F", "script_l_abs", "admissible")
    text = render(row, header, args.format)
    if not strength.admissible:
        raise _Failure("script_l_radicand_negative", "F + 1/4 < 0", text)
    return text


def cmd_sets_list(args, parser):
    rows = []
    for s in NamedSet:
        p = s.params
        rows.append({"set": s.short, "name": s.value, "alpha": p.alpha, "beta": p.beta,
                     "gamma": p.gamma, "zeta": zeta(p), "zeta_minus_beta": zeta(p) - p.beta})
    return render(rows, ("set", "name", "alpha", "beta", "gamma", "zeta", "zeta_minus_beta"), args.format)


def cmd_sets_check(args, parser):
    _check_case_couplings(args, parser)
    qn = QuantumNumbers(args.nrho, args.nz, args.m)
    rows = []
    for s in NamedSet:
        rep = constraint_residual(args.case, s.params, args.j, qn, _couplings(args), args.mode, args.convention)
        rows.append({"set": s.short, **rep.row()})
    return render(rows, ("set",) + REPORT_HEADER, args.format)


def cmd_constraint_residual(args, parser):
    _check_case_couplings(args, parser)
    params = _params(args, parser)
    qn = QuantumNumbers(args.nrho, args.nz, args.m)
    rep = constraint_residual(args.case, params, args.j, qn, _couplings(args), args.mode, args.convention)
    text = render(rep.row(), REPORT_HEADER, args.format)
    if not rep.admissible:
        raise _Failure(rep.reason, "constraint not admissible", text)
    return text


def cmd_constraint_solve(args, parser):
    _check_case_couplings(args, parser)
    lo, hi = args.bracket
    if not lo < hi:
        parser.error("--bracket needs LO < HI")
    qn = QuantumNumbers(args.nrho, args.nz, args.m)
    roots = solve_family(args.case, args.family, args.j, qn, _couplings(args), (lo, hi),
                         args.tol, args.mode, args.convention)
    rows = []
    for p in roots:
        rep = constraint_residual(args.case, p, args.j, qn, _couplings(args), args.mode, args.convention)
        rows.append({"family": str(args.family), "alpha": p.alpha, "beta": p.beta, "gamma": p.gamma,
                     "zeta": rep.zeta, "F": rep.f_value, "residual": rep.residual})
    return render(rows, ("family", "alpha", "beta", "gamma", "zeta", "F", "residual"), args.format)


def cmd_constraint_scan(args, parser):
    _check_case_couplings(args, parser)
    params = _params(args, parser)
    reps = scan(args.case, params, args.j, range(args.nrho_max + 1), range(args.nz_max + 1),
                range(args.m_max + 1), _couplings(args), args.mode, args.convention)
    return render([r.row() for r in reps], REPORT_HEADER, args.format)


def cmd_spectrum_analytic(args, parser):
    problem = _problem(args.potential, args.l_abs, args.coupling, parser)
    rows = [{"n": n, "energy": analytic_level(problem, n, args.convention)} for n in range(args.levels)]
    return render(rows, ("n", "energy"), args.format)


def cmd_spectrum_numeric(args, parser):
    problem = _problem(args.potential, args.l_abs, args.coupling, parser)
    if args.levels < 1:
        parser.error("--levels must be >= 1")
    grid = default_grid(problem, args.levels, h=args.grid_h, x_max=args.x_max)
    result = eigen_solve(problem, args.levels, grid)
    rows = []
    for n, e in enumerate(result.eigenvalues):
        ref = analytic_level(problem, n, args.convention)
        rows.append({"n": n, "energy_analytic": ref, "energy_numeric": float(e), "delta": float(e) - ref,
                     "h": grid.h, "x_max": grid.x_max})
    return render(rows, ("n", "energy_analytic", "energy_numeric", "delta", "h", "x_max"), args.format)


def cmd_vonroos_residual(args, parser):
    _check_case_couplings(args, parser)
    params = _params(args, parser)
    nr, nz, m = args.qn
    if nr < 0 or nz < 0:
        parser.error("--qn radial and axial counters must be >= 0")
    qn = QuantumNumbers(nr, nz, m)
    case = AssembledPotential.for_case(args.case, _couplings(args), b=args.b, j=args.j)
    psi = case_wavefunction(case, params, qn, check=False)
    rho_grid, z_grid = default_residual_grids(case, params, qn, args.grid_h)
    if args.rho_max is not None:
        rho_grid = Grid1D.from_extent(args.rho_max, args.grid_h)
    if args.z_max is not None:
        z_grid = Grid1D.from_extent(args.z_max, args.grid_h)
    rep = von_roos_residual(case.pdm, params, case, psi, (rho_grid, z_grid),
                            refine=args.refine, keep_field=bool(args.field_out))
    rows = [rep.row()]
    if rep.refined is not None:
        fine = rep.refined.row()
        fine["convergence_order"] = rep.convergence_order
        rows[0]["convergence_order"] = None
        rows.append(fine)
    if args.field_out:
        R, Z = np.meshgrid(rep.rho, rep.z, indexing="ij")
        field_rows = ({"rho": float(r), "z": float(z), "residual": float(v)}
                      for r, z, v in zip(R.ravel(), Z.ravel(), rep.field.ravel()))
        _write(args.field_out, render(list(field_rows), ("rho", "z", "residual"), "csv"))
    return render(rows, RESIDUAL_HEADER, args.format)


def cmd_wavefunction_emit(args, parser):
    problem = _problem(args.potential, args.l_abs, args.coupling, parser)
    grid = default_grid(problem, args.n + 1, h=args.grid_h, x_max=args.x_max)
    if args.source == "analytic":
        u = analytic_eigenfunction(problem.potential_kind, args.n, args.l_abs, args.coupling)(grid.x)
    else:
        u = eigen_solve(problem, args.n + 1, grid).eigenfunctions[args.n]
    rows = [{"x": float(x), "u": float(v)} for x, v in zip(grid.x, u)]
    return render(rows, ("x", "u"), args.format)


def cmd_potential_emit(args, parser):
    case = AssembledPotential.for_case(args.case, _couplings(args), b=args.b, j=args.j)
    rho = Grid1D.from_extent(args.rho_max, args.grid_h).x
    z = Grid1D.from_extent(args.z_max, args.grid_h).x
    R, Z = np.meshgrid(rho, z, indexing="ij")
    V = case(R, Z)
    rows = [{"rho": float(r), "z": float(zz), "value": float(v)} for r, zz, v in zip(R.ravel(), Z.ravel(), V.ravel())]
    return render(rows, ("rho", "z", "value"), args.format)


# ---------------------------------------------------------------- entry

def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _emit(args, text):
    if getattr(args, "out", None):
        _write(args.out, text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not hasattr(args, "func"):
        parser.print_help(sys.stderr)
        return 2
    try:
        text = args.func(args, parser)
    except SystemExit as exc:  # parser.error inside a command
        return int(exc.code or 0)
    except _Failure as exc:
        _emit(args, exc.payload)
        sys.stderr.write(json.dumps({"error": str(exc), "reason": exc.reason}) + "\n")
        return 1
    except (DomainError, InadmissibleError, SeparationMismatch, GridTooCoarse, EigenSolveError) as exc:
        reason = getattr(exc, "reason", type(exc).__name__)
        sys.stderr.write(json.dumps({"error": str(exc), "reason": reason}) + "\n")
        return 1
    _emit(args, text)
    return 0


def run(argv) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
