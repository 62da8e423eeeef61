"""``lagrange-fit`` command-line front end.

Exit status: 0 on success, 1 on numerical failure (singular system,
diverged training), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import metrics
from .basis import BasisError, BasisSpec, Family
from .dataset import BUILTINS, DataSet, DatasetError, Kind, builtin, read_csv
from .linreg import SingularMatrixError, fit
from .logreg import BinaryRequiredError, DivergenceError, Mode, SgdConfig, fit_sgd
from .plot import render_svg

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2

USAGE_ERRORS = (DatasetError, BasisError, BinaryRequiredError, metrics.DegenerateBaselineError,
                metrics.InvalidDofError, metrics.ContinuousRequiredError, ValueError, OSError)
NUMERIC_ERRORS = (SingularMatrixError, DivergenceError)


class UsageError(Exception):
    pass


def load_data(source: str) -> DataSet:
    if source.startswith("builtin:"):
        return builtin(source[len("builtin:"):])
    try:
        return read_csv(source)
    except FileNotFoundError:
        raise UsageError(f"no such file: {source}") from None


def parse_orders(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if b < a:
        raise argparse.ArgumentTypeError(f"empty order range {text!r}")
    return list(range(a, b + 1))


def _spec(args, family: Family, order: int, ds: DataSet) -> BasisSpec:
    return BasisSpec.for_dataset(family, order, ds, args.ndct, args.xmax)


def _sgd_config(args, spec: BasisSpec) -> SgdConfig:
    return SgdConfig.defaults(spec, alpha=args.alpha, max_epochs=args.max_epochs,
                              tolerance=args.tol, mode=Mode(args.mode))


def _basis_keys(spec: BasisSpec, ds: DataSet) -> dict:
    return {
        "basis": spec.family.value,
        "n": ds.n,
        "dct_length": spec.dct_length,
        "x_max": spec.domain_max,
    }


def continuous_report(ds: DataSet, spec: BasisSpec) -> dict:
    if ds.kind is not Kind.CONTINUOUS:
        raise metrics.ContinuousRequiredError("the fit command needs a continuous dataset; use logistic")
    model, rc = fit(ds, spec)
    mf, mm = metrics.mse_fit(ds, model), metrics.mse_mean(ds)
    r2 = metrics.r_squared(mm, mf) if mm > 0 else None
    ff = metrics.f_factor(mm, mf, spec.order, ds.n) if spec.order >= 2 and mm > 0 else None
    return {
        "order": spec.order,
        "mse_fit": mf,
        "mse_mean": mm,
        "r_squared": r2,
        "f_factor": ff,
        "rcond": rc,
        "coefficients": list(model.coefficients),
        **_basis_keys(spec, ds),
    }


def logistic_report(ds: DataSet, spec: BasisSpec, config: SgdConfig) -> dict:
    if ds.kind is not Kind.BINARY:
        raise BinaryRequiredError("the logistic command needs a binary (0/1) dataset")
    op = metrics.ll_op(ds)
    model, trace = fit_sgd(ds, spec, config)
    ll = -trace.final_cross_entropy
    return {
        "order": spec.order,
        "ll_fit": ll,
        "ll_op": op,
        "ll_null": metrics.ll_null(ds),
        "pseudo_r_squared": metrics.pseudo_r_squared(ll, op),
        "f_factor": metrics.f_factor_logistic(ll, op, spec.order, ds.n) if spec.order >= 2 else None,
        "epochs": trace.epochs_run,
        "updates": trace.updates_run,
        "converged": trace.converged,
        "coefficients": list(model.coefficients),
        **_basis_keys(spec, ds),
        "alpha": config.alpha,
        "step": config.step(spec.order),
        "mode": config.mode.value,
        "tolerance": config.tolerance,
    }


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, list):
        return "[" + ", ".join(_cell(c) for c in v) + "]"
    return str(v)


def render_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    width = max(len(k) for k in report)
    return "".join(f"{k:<{width}}  {_cell(v)}\n" for k, v in report.items())


CONTINUOUS_COLUMNS = ("basis", "order", "mse_fit", "r_squared", "f_factor", "rcond")
BINARY_COLUMNS = ("basis", "order", "alpha", "epochs", "updates", "ll_fit",
                  "pseudo_r_squared", "f_factor", "converged")


def render_table(rows: list[dict], columns: tuple[str, ...]) -> str:
    cells = [list(columns)]
    for row in rows:
        if "error" in row:
            cells.append([_cell(row["basis"]), _cell(row["order"]), "error: " + row["error"]])
        else:
            cells.append([_cell(row.get(c)) for c in columns])
    widths = [max(len(r[i]) for r in cells if i < len(r)) for i in range(len(columns))]
    lines = []
    for r in cells:
        if len(r) < len(columns):
            lines.append("  ".join(c.rjust(widths[i]) for i, c in enumerate(r[:2])) + "  " + r[2])
        else:
            lines.append("  ".join(c.rjust(w) for c, w in zip(r, widths)))
    return "\n".join(lines) + "\n"


def _families(basis: str) -> list[Family]:
    return [Family.POLYNOMIAL, Family.DCT] if basis == "both" else [Family(basis)]


def cmd_fit(args) -> str:
    ds = load_data(args.data)
    family = _families(args.basis)
    if len(family) != 1:
        raise UsageError("--basis both is only valid for sweep")
    report = continuous_report(ds, _spec(args, family[0], args.order, ds))
    return render_report(report, args.format or "json")


def cmd_logistic(args) -> str:
    ds = load_data(args.data)
    family = _families(args.basis)
    if len(family) != 1:
        raise UsageError("--basis both is only valid for sweep")
    spec = _spec(args, family[0], args.order, ds)
    report = logistic_report(ds, spec, _sgd_config(args, spec))
    return render_report(report, args.format or "json")


def sweep_rows(args, ds: DataSet, orders: list[int]) -> list[dict]:
    rows = []
    for order in orders:
        for family in _families(args.basis):
            try:
                spec = _spec(args, family, order, ds)
                if ds.kind is Kind.BINARY:
                    row = logistic_report(ds, spec, _sgd_config(args, spec))
                else:
                    row = continuous_report(ds, spec)
            except USAGE_ERRORS + NUMERIC_ERRORS as exc:
                row = {"basis": family.value, "order": order, "error": str(exc)}
            rows.append(row)
    return rows


def cmd_sweep(args) -> str:
    ds = load_data(args.data)
    orders = args.orders or [args.order]
    if orders[0] < 1 or orders[-1] > ds.n - 1:
        raise UsageError(f"orders must lie in [1, {ds.n - 1}] for this dataset")
    rows = sweep_rows(args, ds, orders)
    if args.format == "json":
        return json.dumps(rows, indent=2) + "\n"
    columns = BINARY_COLUMNS if ds.kind is Kind.BINARY else CONTINUOUS_COLUMNS
    return render_table(rows, columns)


def cmd_plot(args) -> str:
    ds = load_data(args.data)
    family = _families(args.basis)
    if len(family) != 1:
        raise UsageError("--basis both is only valid for sweep")
    spec = _spec(args, family[0], args.order, ds)
    if ds.kind is Kind.BINARY:
        model, _ = fit_sgd(ds, spec, _sgd_config(args, spec))
        title = f"logistic {spec.family.value} M={spec.order}"
    else:
        model, _ = fit(ds, spec)
        title = f"regression {spec.family.value} M={spec.order}"
    return render_svg(ds, model, title)


def cmd_datasets(args) -> str:
    rows = [{"name": name, "n": ds.n, "kind": ds.kind.value, "x_max": max(ds.x)}
            for name, ds in sorted(BUILTINS.items())]
    if args.format == "json":
        return json.dumps(rows, indent=2) + "\n"
    return "".join(f"builtin:{r['name']:<10} n={r['n']:<3} {r['kind']:<10} x_max={r['x_max']}\n" for r in rows)


COMMANDS = {
    "fit": cmd_fit,
    "logistic": cmd_logistic,
    "sweep": cmd_sweep,
    "plot": cmd_plot,
    "datasets": cmd_datasets,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--data", help="CSV path or builtin:<name>")
    common.add_argument("--basis", choices=["poly", "dct", "both"], default="poly")
    group = common.add_mutually_exclusive_group()
    group.add_argument("--order", type=int, default=2, help="model order M (default 2)")
    group.add_argument("--orders", type=parse_orders, help="order range A..B (sweep)")
    common.add_argument("--ndct", type=int, default=None, help="DCT length (default: dataset size)")
    common.add_argument("--xmax", type=float, default=None, help="DCT domain max (default: max x)")
    common.add_argument("--alpha", type=float, default=None,
                        help="SGD step numerator, step = alpha/M (default: 0.2 for dct, per-order for poly)")
    common.add_argument("--max-epochs", type=int, default=1_000_000)
    common.add_argument("--tol", type=float, default=1e-6, help="stop when |epoch change in CE| < tol")
    common.add_argument("--mode", choices=["seq", "batch"], default="seq")
    common.add_argument("--format", choices=["json", "table", "svg"], default=None)
    common.add_argument("--out", default=None, help="write output to PATH instead of stdout")

    parser = argparse.ArgumentParser(prog="lagrange-fit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("fit", parents=[common], help="least-squares fit of a continuous dataset")
    sub.add_parser("logistic", parents=[common], help="SGD logistic fit of a binary dataset")
    sub.add_parser("sweep", parents=[common], help="one report row per model order")
    sub.add_parser("plot", parents=[common], help="SVG of data and fitted curve")
    sub.add_parser("datasets", parents=[common], help="list built-in datasets")
    return parser


def _check_format(args, parser):
    allowed = {"plot": {"svg", None}}.get(args.command, {"json", "table", None})
    if args.format not in allowed:
        parser.error(f"--format {args.format} is not valid for {args.command}")
    if args.command != "datasets" and not args.data:
        parser.error("--data is required")
    if args.command in ("fit", "logistic", "plot") and args.orders:
        parser.error("--orders is only valid for sweep")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _check_format(args, parser)
    try:
        text = COMMANDS[args.command](args)
    except NUMERIC_ERRORS as exc:
        print(f"lagrange-fit: error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError,) + USAGE_ERRORS as exc:
        print(f"lagrange-fit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
