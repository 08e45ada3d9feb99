"""Command-line front end: solve problems from files, validate the coupling
matrix against its quadrature oracle, run the decay/majorant property sweeps,
and emit plot-ready decay tables.

Exit codes: 0 success, 1 input/domain error, 2 hypothesis-failure diagnostic
mode (or degenerate decay data), 3 validation mismatch. All numeric output is
full round-trip precision; identical invocations produce byte-identical
artifacts (the seed and command are recorded in everything emitted).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import coupling, solver
from .errors import ContractError, DomainError, InputError, StageError
from .fracops import FracOrder
from .jacobi import JacobiBasis

_VALIDATE_ALPHAS = (-0.75, -0.5, -0.25)
_VALIDATE_EXPONENTS = (-0.4, 0.0, 0.5)


@dataclass
class RunManifest:
    command: str
    input_path: str | None
    out_dir: Path
    seed: int
    overrides: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)

    def stamp(self):
        return f"# command={self.command} seed={self.seed}\n"

    def write(self):
        path = self.out_dir / "run_manifest.json"
        with open(path, "w") as fh:
            json.dump(
                {
                    "command": self.command,
                    "input": self.input_path,
                    "seed": self.seed,
                    "overrides": self.overrides,
                    "outputs": self.outputs,
                },
                fh,
                indent=2,
                sort_keys=True,
            )
            fh.write("\n")


def _default_out_dir():
    return os.environ.get("ABELJAC_OUT_DIR", ".")


def _add_common(p):
    p.add_argument("--input", help="problem file (JSON)")
    p.add_argument("--out-dir", default=None, help="output directory (default $ABELJAC_OUT_DIR or .)")
    p.add_argument("--seed", type=int, default=0, help="seed recorded in artifacts")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--interval", default=None, metavar="A,B", help="interval endpoints a,b")
    p.add_argument("--side", choices=("left", "right"), default=None)
    p.add_argument("--M", type=int, default=None, help="solution rows")
    p.add_argument("--N", type=int, default=None, help="right-side cutoff index")
    p.add_argument("--p", type=float, default=None, help="Lebesgue index for classification")
    p.add_argument("--tol-projection", type=float, default=None)
    p.add_argument("--tol-convergence", type=float, default=None)
    p.add_argument("--tol-residual", type=float, default=None)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="abeljac",
        description="Spectral Abel-equation solver and verification harness "
        "in Jacobi-weighted spaces.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="solve a problem file, write report JSON + CSV")
    _add_common(ps)

    pv = sub.add_parser("validate-matrix", help="closed form vs quadrature oracle sweep")
    _add_common(pv)
    pv.add_argument("--max-index", type=int, default=12)
    pv.add_argument("--tolerance", type=float, default=1e-6)
    pv.add_argument(
        "--corrupt-cell",
        default=None,
        metavar="M,N",
        help="test hook: perturb one closed-form cell to exercise the failure path",
    )

    pl = sub.add_parser("lemma-sweep", help="row-decay factor and tail-majorant property sweeps")
    _add_common(pl)
    pl.add_argument("--m-max", type=int, default=2048)
    pl.add_argument("--k-values", default="0,1,2")

    pd = sub.add_parser("decay-report", help="row-sum decay table and log-log fit data")
    _add_common(pd)
    pd.add_argument(
        "--synthetic-exponent",
        type=float,
        default=None,
        help="test hook: replace row sums by the exact power law m**(-s)",
    )
    return ap


def _apply_overrides(problem, args):
    changed = {}
    basis = problem.basis
    a, b = basis.a, basis.b
    if args.interval:
        try:
            a, b = (float(v) for v in args.interval.split(","))
        except ValueError as exc:
            raise InputError(f"cannot parse --interval {args.interval!r}") from exc
        changed["interval"] = [a, b]
    beta = basis.beta if args.beta is None else args.beta
    gamma = basis.gamma if args.gamma is None else args.gamma
    alpha = problem.order.alpha if args.alpha is None else args.alpha
    side = problem.order.side if args.side is None else args.side
    for name in ("alpha", "beta", "gamma", "side", "M", "N", "p"):
        v = getattr(args, name)
        if v is not None:
            changed[name] = v
    tol = problem.tolerances
    tols = solver.Tolerances(
        projection=args.tol_projection or tol.projection,
        convergence=args.tol_convergence or tol.convergence,
        residual=args.tol_residual or tol.residual,
    )
    tr = solver.Truncation(
        rows=problem.truncation.rows if args.M is None else args.M,
        cutoff=problem.truncation.cutoff if args.N is None else args.N,
    )
    new = solver.AbelProblem(
        order=FracOrder(alpha=alpha, side=side),
        basis=JacobiBasis(a=a, b=b, beta=beta, gamma=gamma),
        rhs=problem.rhs,
        truncation=tr,
        tolerances=tols,
        p=problem.p if args.p is None else args.p,
        q_report=problem.q_report,
    )
    return new, changed


def _fmt(x):
    return f"{x:.17e}"


def cmd_solve(args, manifest):
    if not args.input:
        raise InputError("solve requires --input problem file")
    problem = solver.load_problem(args.input)
    problem, overrides = _apply_overrides(problem, args)
    manifest.overrides = overrides
    report = solver.solve(problem)
    out = manifest.out_dir
    rep_path = out / "report.json"
    data = report.to_dict()
    data["seed"] = manifest.seed
    data["problem"] = solver.problem_to_dict(problem)
    with open(rep_path, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
    csv_path = out / "coefficients.csv"
    with open(csv_path, "w") as fh:
        fh.write(manifest.stamp())
        fh.write("m,psi_m,row_sum_m\n")
        for m_ in range(len(report.solution)):
            fh.write(f"{m_},{_fmt(report.solution.values[m_])},{_fmt(report.row_sums[m_])}\n")
    manifest.outputs = [str(rep_path), str(csv_path)]
    manifest.write()
    print(
        f"residual={report.residual_norm:.3e} "
        f"lambda={report.lambda_theoretical:.4f} "
        f"diagnostic={report.diagnostic_mode}"
    )
    return 2 if report.diagnostic_mode else 0


def cmd_validate_matrix(args, manifest):
    tol = args.tolerance
    corrupt = None
    if args.corrupt_cell:
        try:
            corrupt = tuple(int(v) for v in args.corrupt_cell.split(","))
        except ValueError as exc:
            raise InputError(f"cannot parse --corrupt-cell {args.corrupt_cell!r}") from exc
    if args.interval:
        a, b = (float(v) for v in args.interval.split(","))
    else:
        a, b = 0.0, 1.0
    alphas = (args.alpha,) if args.alpha is not None else _VALIDATE_ALPHAS
    betas = (args.beta,) if args.beta is not None else _VALIDATE_EXPONENTS
    gammas = (args.gamma,) if args.gamma is not None else _VALIDATE_EXPONENTS
    nmax = args.max_index
    rows = []
    worst = 0.0
    skipped = 0
    for alpha in alphas:
        for beta in betas:
            for gamma in gammas:
                basis = JacobiBasis(a, b, beta, gamma)
                for orientation in ("a_plus", "b_minus"):
                    order = FracOrder(alpha, "left" if orientation == "a_plus" else "right")
                    B = beta if orientation == "a_plus" else gamma
                    if alpha + B + 1.0 <= 0.0:
                        skipped += 1
                        continue
                    for m_ in range(nmax + 1):
                        for n_ in range(nmax + 1):
                            cf = coupling.entry(order, basis, m_, n_, orientation)
                            if corrupt is not None and (m_, n_) == corrupt:
                                cf += 1e-3
                            oc = coupling.oracle_entry(order, basis, m_, n_, orientation)
                            d = abs(cf - oc)
                            worst = max(worst, d)
                            rows.append(
                                (alpha, beta, gamma, orientation, m_, n_, cf, oc, d)
                            )
    csv_path = manifest.out_dir / "validation.csv"
    with open(csv_path, "w") as fh:
        fh.write(manifest.stamp())
        fh.write("alpha,beta,gamma,orientation,m,n,closed_form,oracle,abs_diff\n")
        for r in rows:
            fh.write(
                f"{r[0]},{r[1]},{r[2]},{r[3]},{r[4]},{r[5]},"
                f"{_fmt(r[6])},{_fmt(r[7])},{_fmt(r[8])}\n"
            )
    manifest.outputs = [str(csv_path)]
    manifest.write()
    print(f"cells={len(rows)} skipped_combos={skipped} max_abs_diff={worst:.3e}")
    return 0 if worst <= tol else 3


def cmd_lemma_sweep(args, manifest):
    out = manifest.out_dir
    k_values = [int(v) for v in args.k_values.split(",")]
    m_grid = [16]
    while m_grid[-1] < args.m_max:
        m_grid.append(m_grid[-1] * 2)
    alphas = (args.alpha,) if args.alpha is not None else _VALIDATE_ALPHAS
    betas = (args.beta,) if args.beta is not None else _VALIDATE_EXPONENTS
    gammas = (args.gamma,) if args.gamma is not None else _VALIDATE_EXPONENTS
    decay_path = out / "row_decay.csv"
    ok_bounded = True
    with open(decay_path, "w") as fh:
        fh.write(manifest.stamp())
        fh.write("alpha,beta,gamma,m,k,value,scaled\n")
        for alpha in alphas:
            order = FracOrder(alpha, "right")
            lam_exp = lambda g: 2.0 * alpha + g + 1.5
            for beta in betas:
                for gamma in gammas:
                    basis = JacobiBasis(0.0, 1.0, beta, gamma)
                    for k in k_values:
                        scaled = []
                        for m_ in m_grid:
                            v = coupling.row_decay_factor(order, basis, m_, k)
                            sc_ = v * m_ ** lam_exp(gamma)
                            scaled.append(sc_)
                            fh.write(
                                f"{alpha},{beta},{gamma},{m_},{k},{_fmt(v)},{_fmt(sc_)}\n"
                            )
                        if alpha != 0.0:
                            peak_at = int(np.argmax(scaled))
                            if m_grid[peak_at] >= 512:
                                ok_bounded = False
    major_path = out / "tail_majorant.csv"
    ok_onset = True
    with open(major_path, "w") as fh:
        fh.write(manifest.stamp())
        fh.write("eta,gamma,k,value,onset\n")
        for eta in (1, 2, 3):
            for gamma in (-0.4, 0.0, 0.5):
                onset = coupling.decrease_onset(eta, gamma, k_max=256)
                if onset > 64:
                    ok_onset = False
                for k in range(0, 257, 8):
                    fh.write(
                        f"{eta},{gamma},{k},{_fmt(coupling.tail_majorant(k, eta, gamma))},{onset}\n"
                    )
    manifest.outputs = [str(decay_path), str(major_path)]
    manifest.write()
    print(f"bounded={ok_bounded} onset_le_64={ok_onset}")
    return 0 if (ok_bounded and ok_onset) else 3


def cmd_decay_report(args, manifest):
    out = manifest.out_dir
    if args.synthetic_exponent is not None:
        m = np.arange(1, 1025)
        rows = m ** (-args.synthetic_exponent)
        fit = coupling.decay_fit(m, rows)
        lam_theo = args.synthetic_exponent
    else:
        if not args.input:
            raise InputError("decay-report requires --input or --synthetic-exponent")
        problem = solver.load_problem(args.input)
        problem, overrides = _apply_overrides(problem, args)
        manifest.overrides = overrides
        report = solver.solve(problem)
        if not np.any(report.row_sums[1:] != 0.0):
            print("degenerate: all row sums vanish")
            return 2
        m = np.arange(1, len(report.row_sums))
        rows = np.abs(report.row_sums[1:])
        keep = rows > 0.0
        m, rows = m[keep], rows[keep]
        if m.size < 16:
            print("degenerate: too few nonzero row sums")
            return 2
        fit = coupling.decay_fit(m, rows)
        lam_theo = problem.lambda_theoretical
    csv_path = out / "decay.csv"
    with open(csv_path, "w") as fh:
        fh.write(manifest.stamp())
        fh.write("m,row_sum,fit\n")
        for mi, ri in zip(m, rows):
            fh.write(f"{mi},{_fmt(ri)},{_fmt(fit.constant_fit * mi ** (-fit.exponent_fit))}\n")
    dat_path = out / "decay_loglog.dat"
    with open(dat_path, "w") as fh:
        fh.write(manifest.stamp())
        fh.write(f"# columns: log10(m) log10(row_sum) log10(fit)\n")
        fh.write(
            f"# exponent_fit={fit.exponent_fit:.17e} constant_fit={fit.constant_fit:.17e} "
            f"lambda_theoretical={lam_theo:.17e}\n"
        )
        for mi, ri in zip(m, rows):
            fl = fit.constant_fit * mi ** (-fit.exponent_fit)
            fh.write(f"{math.log10(mi):.17e} {math.log10(ri):.17e} {math.log10(fl):.17e}\n")
    manifest.outputs = [str(csv_path), str(dat_path)]
    manifest.write()
    print(f"exponent_fit={fit.exponent_fit:.6f} lambda_theoretical={lam_theo:.6f}")
    return 0


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    out_dir = Path(args.out_dir if args.out_dir is not None else _default_out_dir())
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        manifest = RunManifest(
            command=args.command,
            input_path=args.input,
            out_dir=out_dir,
            seed=args.seed,
        )
        handler = {
            "solve": cmd_solve,
            "validate-matrix": cmd_validate_matrix,
            "lemma-sweep": cmd_lemma_sweep,
            "decay-report": cmd_decay_report,
        }[args.command]
        return handler(args, manifest)
    except (InputError, DomainError, ContractError, StageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
