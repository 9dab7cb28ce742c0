"""Command-line interface reproducing the published tables and curves.

Commands: curve-d2, table2, fourier, decompose, optimize, simulate,
estimate-gamma.  Tabular results go to stdout or ``--out`` as CSV or JSON
with all reals printed to 6 decimals; diagnostics go to stderr.  Exit codes:
0 success, 2 argument or validation error, 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import refdata
from .game import GameConfig, Measurement
from .mesh import clements_decompose, prep_state_d3, waveplates_to_measurement
from .noise import NoiseModel
from .optimize import evaluate_strategy, optimize_numeric
from .pipeline import estimate_gamma, simulate_d2, simulate_d3, simulate_fourier_test, sweep_curve_d2

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2


def _fmt(value) -> str:
    if isinstance(value, float) and np.isnan(value):
        return ""
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def _round6(value):
    if isinstance(value, float):
        return None if np.isnan(value) else round(value, 6)
    return value


def _emit(rows: list[dict], fmt: str, out: str | None) -> None:
    """Write rows of column -> value as CSV or JSON with 6-decimal reals."""
    if fmt == "csv":
        header = list(rows[0].keys())
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(_fmt(row[k]) for k in header))
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(
            [{k: _round6(v) for k, v in row.items()} for row in rows], indent=2
        ) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_text(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_complex_matrix(path: str) -> np.ndarray:
    """Matrix file: JSON rows of [re, im] pairs, row-major."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return np.array([[complex(re, im) for re, im in row] for row in doc])


def _load_complex_vector(entries) -> np.ndarray:
    return np.array([complex(re, im) for re, im in entries])


def _cmd_curve_d2(args) -> int:
    if args.paper_points:
        gammas = list(refdata.GAMMAS_D2)
    else:
        gammas = list(args.gamma or [])
    if not gammas:
        raise ValueError("no gamma values given; pass --gamma or --paper-points")
    for g in gammas:
        if not 0.0 <= g <= 1.0:
            raise ValueError(f"gamma {g} outside [0, 1]")
    rows = sweep_curve_d2(gammas, layer_v=args.v)
    _emit(rows, args.format, args.out)
    return EXIT_OK


def _cmd_table2(args) -> int:
    rows = []
    for idx in range(len(refdata.THETA1_D3)):
        theta1 = refdata.THETA1_D3[idx]
        theta2 = refdata.THETA2_D3[idx]
        psi = prep_state_d3(theta1, theta2)
        analysis = waveplates_to_measurement(refdata.QWP_D3[idx], refdata.HWP_D3[idx])
        m = Measurement(elements=(
            analysis.elements[0],
            np.zeros((2, 2), dtype=complex),
            analysis.elements[1],
        ))
        p_model = evaluate_strategy(
            GameConfig(d=3, gamma=refdata.GAMMA_EXP), np.outer(psi, psi.conj()), m
        )
        row = {
            "state": idx + 1,
            "theta1_deg": theta1,
            "theta2_deg": theta2,
            "q1_deg": refdata.QWP_D3[idx],
            "h12_deg": refdata.HWP_D3[idx],
        }
        for k, amp in enumerate(psi):
            row[f"a{k}_re"] = float(amp.real)
            row[f"a{k}_im"] = float(amp.imag)
        row.update({
            "p_guess_model": p_model,
            "p_theory_paper": refdata.P_THEORY_D3[idx],
            "p_exp_paper": refdata.P_EXP_D3[idx],
            "p_exp_err_paper": refdata.P_EXP_D3_ERR[idx],
        })
        rows.append(row)
    _emit(rows, args.format, args.out)
    return EXIT_OK


def _cmd_fourier(args) -> int:
    table = simulate_fourier_test(args.v)
    rows = []
    for i in range(3):
        row = {"output_mode": i}
        for j in range(3):
            row[f"probe_{j}"] = float(table[i, j])
        rows.append(row)
    _emit(rows, args.format, args.out)
    return EXIT_OK


def _cmd_decompose(args) -> int:
    if args.format == "csv":
        raise ValueError("decompose emits the JSON plan schema; use --format json")
    matrix = _load_complex_matrix(args.matrix)
    plan = clements_decompose(matrix)
    _emit_text(plan.to_json() + "\n", args.out)
    return EXIT_OK


def _cmd_optimize(args) -> int:
    config = GameConfig(d=args.d, gamma=args.gamma)
    result = optimize_numeric(config, restarts=args.restarts, seed=args.seed)
    doc = {
        "d": args.d,
        "gamma": round(args.gamma, 6),
        "p_guess": round(result.p_guess, 6),
        "state_re": [round(a.real, 6) for a in result.best_state],
        "state_im": [round(a.imag, 6) for a in result.best_state],
        "measurement": [
            [[[round(entry.real, 6), round(entry.imag, 6)] for entry in row] for row in mx]
            for mx in result.best_measurement.elements
        ],
        "restarts_used": result.restarts_used,
        "seed": result.seed,
    }
    _emit_text(json.dumps(doc, indent=2) + "\n" if args.format == "json"
               else _optimize_csv(doc), args.out)
    return EXIT_OK


def _optimize_csv(doc: dict) -> str:
    header = ["d", "gamma", "p_guess", "restarts_used", "seed"]
    line = [str(doc["d"]), _fmt(float(doc["gamma"])), _fmt(float(doc["p_guess"])),
            str(doc["restarts_used"]), str(doc["seed"])]
    return ",".join(header) + "\n" + ",".join(line) + "\n"


def _cmd_simulate(args) -> int:
    with open(args.config, encoding="utf-8") as fh:
        doc = json.load(fh)
    d = doc["d"]
    noise = NoiseModel.from_json_dict(doc.get("noise", {}))
    psi = _load_complex_vector(doc["probe"])
    rho = np.outer(psi, psi.conj()) / np.vdot(psi, psi).real
    elements = tuple(
        np.array([[complex(re, im) for re, im in row] for row in mx])
        for mx in doc["measurement"]
    )
    m = Measurement(elements=elements)
    if d == 2:
        table = simulate_d2(noise, rho, m)
    elif d == 3:
        table = simulate_d3(noise, rho, m)
    else:
        raise ValueError(f"simulate supports d in {{2, 3}}, got {d}")
    rows = []
    for i in range(d):
        row = {"guess": i}
        for j in range(d):
            row[f"outcome_{j}"] = float(table.probs[i, j])
        rows.append(row)
    rows.append({"guess": "p_guess", **{f"outcome_{j}": (table.p_guess if j == 0 else np.nan)
                                        for j in range(d)}})
    _emit(rows, args.format, args.out)
    return EXIT_OK


def _cmd_estimate_gamma(args) -> int:
    rho = _load_complex_matrix(args.state)
    gamma, fid = estimate_gamma(rho, step=args.step)
    _emit([{"gamma": gamma, "fidelity": fid}], args.format, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ugame",
        description="Guessing-game simulator: optimal strategies, mesh compilation, noise predictions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p, default_format="csv"):
        p.add_argument("--format", choices=("csv", "json"), default=default_format)
        p.add_argument("--out", default=None, help="output path (stdout if omitted)")

    p = sub.add_parser("curve-d2", help="optimal and noisy-model guessing probability vs gamma")
    p.add_argument("--gamma", type=float, action="append", help="gamma value (repeatable)")
    p.add_argument("--paper-points", action="store_true",
                   help="use the 11 published register settings")
    p.add_argument("--v", type=float, default=0.99, help="two-layer dephasing visibility")
    add_io(p)
    p.set_defaults(func=_cmd_curve_d2)

    p = sub.add_parser("table2", help="d=3 strategy table: model vs published values")
    add_io(p)
    p.set_defaults(func=_cmd_table2)

    p = sub.add_parser("fourier", help="Fourier-gate quality test at a given visibility")
    p.add_argument("v", type=float, help="interferometer visibility in [0, 1]")
    add_io(p)
    p.set_defaults(func=_cmd_fourier)

    p = sub.add_parser("decompose", help="compile a unitary matrix file into a mesh plan")
    p.add_argument("matrix", help="JSON matrix file: rows of [re, im] pairs")
    add_io(p, default_format="json")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("optimize", help="see-saw search for the best strategy at (d, gamma)")
    p.add_argument("d", type=int)
    p.add_argument("gamma", type=float)
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    add_io(p)
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("simulate", help="run the noise pipeline described by a config file")
    p.add_argument("config", help="JSON run description (d, noise, probe, measurement)")
    add_io(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("estimate-gamma", help="register coherence from a measured state file")
    p.add_argument("state", help="JSON 2x2 density matrix: rows of [re, im] pairs")
    p.add_argument("--step", type=float, default=1e-4)
    add_io(p)
    p.set_defaults(func=_cmd_estimate_gamma)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
