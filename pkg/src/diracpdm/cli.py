"""Command-line interface.

Exit codes: 0 success, 1 verification mismatch, 2 no bound state,
3 invalid arguments.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import oracle, reproduce, spinor
from .model import ModelParams, NoBoundStateError, StateLabel, Symmetry, b_from_m1
from .spectrum import describe, solve_energy

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_UNBOUND = 2
EXIT_USAGE = 3

VERIFY_ENERGY_TOL = 1e-5
VERIFY_NORM_TOL = 1e-8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _num(x) -> str:
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return "null"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".17g")


def to_json(obj) -> str:
    """JSON text with every float written to 17 significant digits."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.generic):
        obj = obj.item()
    return _num(obj)


def _csv_value(x) -> str:
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return "nan"
    if isinstance(x, float):
        return format(x, ".10g")
    return str(x)


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if rows:
        w.writerow(list(rows[0]))
        for row in rows:
            w.writerow([_csv_value(v) for v in row.values()])
    return buf.getvalue()


def _add_physics(p: argparse.ArgumentParser, *, state: bool = True, symmetry_required: bool = True):
    p.add_argument("--symmetry", choices=[s.value for s in Symmetry], required=symmetry_required)
    p.add_argument("--m0", type=float, default=5.0, help="rest energy m0 c^2 (default 5)")
    p.add_argument("--q", type=float, default=1.0, help="Coulomb coupling (default 1)")
    mass = p.add_mutually_exclusive_group()
    mass.add_argument("--b", type=float, default=None, help="dimensionless mass perturbation")
    mass.add_argument("--m1", type=float, default=None, help="mass perturbation m1, b = m1 / hbar_c")
    p.add_argument("--c-sym", type=float, default=0.0, dest="c_sym",
                   help="C_s (spin) or C_ps (pseudospin)")
    p.add_argument("--tensor", type=float, default=0.0)
    p.add_argument("--hbarc", type=float, default=1.0)
    if state:
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--kappa", type=int, required=True)


def _add_output(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", default=None, help="write to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="diracpdm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="bound-state energy of one level")
    _add_physics(p)
    _add_output(p)

    p = sub.add_parser("wavefunction", help="sample both radial components")
    _add_physics(p)
    p.add_argument("--r-max", type=float, default=None, dest="r_max")
    p.add_argument("--points", type=int, default=200)
    _add_output(p)

    p = sub.add_parser("verify", help="closed form vs shooting oracle and normalization")
    _add_physics(p)
    _add_output(p)

    p = sub.add_parser("table", help="regenerate a published table")
    p.add_argument("--id", type=int, choices=[1, 2, 3], required=True)
    _add_output(p)

    p = sub.add_parser("doublet", help="spin or pseudospin doublet splitting")
    _add_physics(p)
    _add_output(p)

    p = sub.add_parser("sweep", help="energy against one parameter")
    _add_physics(p)
    p.add_argument("--param", choices=["b", "tensor", "c-sym"], required=True)
    p.add_argument("--from", type=float, required=True, dest="start")
    p.add_argument("--to", type=float, required=True, dest="stop")
    p.add_argument("--steps", type=int, required=True)
    _add_output(p)
    return parser


def _params(args) -> ModelParams:
    if args.hbarc <= 0 or args.m0 <= 0:
        raise UsageError("--m0 and --hbarc must be positive")
    if args.m1 is not None:
        b = b_from_m1(args.m1, args.hbarc)
    else:
        b = args.b if args.b is not None else 0.0
    return ModelParams(m0=args.m0, b=b, q=args.q, c_sym=args.c_sym, tensor=args.tensor,
                       hbar_c=args.hbarc)


def _state(args) -> StateLabel:
    try:
        return StateLabel(args.n, args.kappa, Symmetry(args.symmetry))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cmd_spectrum(args):
    level = solve_energy(_params(args), _state(args))
    record = describe(level)
    if args.format == "csv":
        return to_csv([record]), EXIT_OK
    return to_json(record) + "\n", EXIT_OK


def _cmd_wavefunction(args):
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    if args.r_max is not None and not args.r_max > 0:
        raise UsageError("--r-max must be positive")
    level = solve_energy(_params(args), _state(args))
    r, f, g = spinor.sample(level, args.r_max, args.points)
    rows = [{"r": float(a), "F": float(b), "G": float(c)} for a, b, c in zip(r, f, g)]
    if args.format == "csv":
        return to_csv(rows), EXIT_OK
    rf = spinor.radial_function(level)
    record = describe(level)
    record.update(norm_const=rf.norm_const, primary=rf.component.value, points=rows)
    return to_json(record) + "\n", EXIT_OK


def verify_state(params: ModelParams, state: StateLabel, cfg: oracle.ShootingConfig | None = None) -> dict:
    level = solve_energy(params, state)
    shot = oracle.shoot(params, state, cfg)
    rf = spinor.radial_function(level)
    norm = oracle.quadrature(lambda r: np.asarray(spinor.eval_primary(rf, np.maximum(r, 1e-300))) ** 2,
                             scale=1.0 / rf.eps)
    abs_diff = abs(shot.energy - level.energy)
    energy_ok = abs_diff <= VERIFY_ENERGY_TOL * params.m0
    norm_ok = abs(norm - 1.0) <= VERIFY_NORM_TOL
    return {
        "label": level.label,
        "symmetry": state.symmetry.value,
        "analytic": level.energy,
        "oracle": shot.energy,
        "abs_diff": abs_diff,
        "oracle_nodes": shot.nodes,
        "norm": norm,
        "quantization_residual": level.quantization_residual,
        "ok": bool(energy_ok and norm_ok and shot.nodes == state.n),
    }


def _cmd_verify(args):
    try:
        record = verify_state(_params(args), _state(args))
    except (oracle.WrongLevelError, oracle.AccuracyNotReachedError) as exc:
        return to_json({"ok": False, "error": str(exc)}) + "\n", EXIT_MISMATCH
    text = to_csv([record]) if args.format == "csv" else to_json(record) + "\n"
    return text, EXIT_OK if record["ok"] else EXIT_MISMATCH


def _cmd_table(args):
    results = reproduce.reproduce_table(args.id)
    for line in reproduce.diff_report(results):
        print(line, file=sys.stderr)
    if args.format == "csv":
        return reproduce.table_csv(results), EXIT_OK
    lines = []
    for res in results:
        c = res.cell
        lines.append(to_json({
            "row_label": c.state, "printed_nk": c.printed_nk, "n": c.n, "kappa": c.kappa,
            "m1": c.m1, "tensor": c.tensor, "c_ps": c.c_ps, "energy": res.energy,
            "printed": c.printed, "diff": res.diff, "known_misprint": res.known_misprint,
        }))
    return "\n".join(lines) + "\n", EXIT_OK


def _cmd_doublet(args):
    state = _state(args)
    params = _params(args)
    d = reproduce.doublet_splitting(params, state.n, state.kappa, state.symmetry)
    record = {
        "symmetry": state.symmetry.value,
        "n": state.n,
        "kappa": d.kappa,
        "partner": d.partner,
        "label_a": StateLabel(state.n, d.kappa, state.symmetry).spectro,
        "label_b": StateLabel(state.n, d.partner, state.symmetry).spectro,
        "e_a": d.e_a,
        "e_b": d.e_b,
        "split": d.split,
    }
    if not d.complete:
        record["error"] = d.error
    text = to_csv([record]) if args.format == "csv" else to_json(record) + "\n"
    return text, EXIT_OK if d.complete else EXIT_UNBOUND


def _cmd_sweep(args):
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    state = _state(args)
    points = reproduce.sweep(_params(args), state, args.param, args.start, args.stop, args.steps)
    if args.format == "csv":
        return reproduce.sweep_csv(state, args.param, points), EXIT_OK
    field = args.param.replace("-", "_")
    lines = [
        to_json({"row_label": state.spectro, "kappa": state.kappa, field: p.value,
                 "energy": p.energy, "bound": p.bound})
        for p in points
    ]
    return "\n".join(lines) + "\n", EXIT_OK


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "wavefunction": _cmd_wavefunction,
    "verify": _cmd_verify,
    "table": _cmd_table,
    "doublet": _cmd_doublet,
    "sweep": _cmd_sweep,
}


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        text, code = _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"diracpdm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NoBoundStateError as exc:
        print(f"diracpdm: no bound state ({exc.condition} fails): {exc}", file=sys.stderr)
        return EXIT_UNBOUND
    except ValueError as exc:
        print(f"diracpdm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
