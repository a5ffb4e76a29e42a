"""Command-line front end.

    ftx estimate|simulate|sweep|crossover --config <file> [--out <dir>]
        [--format json|csv|table] [--threads N]

Exit codes: 0 success, 1 configuration error, 2 infeasible hardware,
3 internal invariant violation.  FTX_OUT_DIR sets the default output
directory.  Every output embeds the resolved configuration and the tool
version, and re-running a command with the same configuration reproduces
the outputs byte for byte.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .algorithms import estimate_all
from .budget import budget_from_target
from .config import ConfigError, RunConfig, load_config, resolved_config_dict
from .crossover import (
    FitKind,
    find_crosspoint,
    fit_size_scaling,
    load_classical_endpoints,
    load_quantum_endpoints,
)
from .floorplan import build_floor_plan
from .instructions import synthesize_select
from .lattices import enumerate_terms
from .planner import (
    InfeasibleHardwareError,
    closed_form_beats,
    physical_qubits_detailed,
    runtime_estimate,
    select_qubits_involved,
    solve_code_distance,
    solve_code_distance_rough,
    sweep_grid,
)
from .simulator import simulate

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_INFEASIBLE = 2
EXIT_INTERNAL = 3


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")


def _envelope(config: RunConfig) -> dict:
    return {"tool": "ftx", "version": __version__, "config": resolved_config_dict(config)}


def _display(value: float) -> str:
    return f"{value:.3g}"


def cmd_estimate(config: RunConfig, out_dir: Path) -> tuple[list[Path], bool]:
    written = []
    any_infeasible = False
    for name, spec in config.models:
        table = enumerate_terms(spec)
        payload = _envelope(config)
        payload["model"] = name
        payload["term_table"] = {
            "count": table.count,
            "lambda": table.lam,
            "lambda_max": table.lam_max,
            "n_system": table.n_system,
            "locality": table.locality,
        }
        reports = {}
        lines = [
            f"model {name}: L={table.count} lambda={table.lam} N={table.n_system}",
            f"{'algorithm':<26}{'T-count':>14}{'display':>10}{'r':>10}"
            f"{'n_log':>8}{'d':>4}{'N_ph':>12}",
        ]
        if table.count == 0:
            payload["reports"] = {}
            payload["note"] = "empty Hamiltonian: no terms, zero cost"
            lines.append("  (empty Hamiltonian: zero costs)")
        else:
            all_reports = estimate_all(table, config.epsilon, config.consts)
            for kind in config.algorithms:
                rep = all_reports[kind]
                entry = rep.to_dict()
                entry["t_count_display"] = _display(rep.t_count_total)
                try:
                    plan = solve_code_distance_rough(
                        rep.n_logical, max(1, rep.t_count_total), config.hardware
                    )
                    entry["rough_plan"] = dataclasses.asdict(plan)
                    d_text, nph_text = str(plan.d), str(plan.n_ph)
                except InfeasibleHardwareError as exc:
                    any_infeasible = True
                    entry["rough_plan"] = None
                    entry["infeasible"] = str(exc)
                    d_text, nph_text = "-", "infeasible"
                reports[kind.value] = entry
                lines.append(
                    f"{kind.value:<26}{rep.t_count_total:>14d}"
                    f"{_display(rep.t_count_total):>10}{rep.repetitions:>10d}"
                    f"{rep.n_logical:>8d}{d_text:>4}{nph_text:>12}"
                )
            payload["reports"] = reports
        json_path = out_dir / f"estimate_{name}.json"
        _write_json(json_path, payload)
        text_path = out_dir / f"estimate_{name}.txt"
        text_path.write_text("\n".join(lines) + "\n")
        written += [json_path, text_path]
    return written, any_infeasible


def cmd_simulate(config: RunConfig, out_dir: Path) -> list[Path]:
    written = []
    for name, spec in config.models:
        table = enumerate_terms(spec)
        hw = config.hardware
        plan = build_floor_plan(table, hw)
        program = synthesize_select(table, hw.threads)
        result = simulate(
            plan, program, hw, collect_trace=config.collect_trace
        )
        budget = budget_from_target(
            config.epsilon, table.lam, config.algorithms[0]
        ) if table.lam > 0 else None
        payload = _envelope(config)
        payload["model"] = name
        payload["sim"] = result.to_dict()
        payload["floor_plan"] = plan.to_dict()
        if budget is not None:
            code = solve_code_distance(
                select_qubits_involved(table, budget.m, hw.threads),
                max(1, result.total_beats),
                budget.r,
                hw,
            )
            payload["code_plan"] = dataclasses.asdict(code)
            payload["runtime_s"] = runtime_estimate(
                code.d, result.total_beats, budget.r, hw
            )
            payload["n_ph_detailed"] = physical_qubits_detailed(
                table.n_system, table.index_bits, hw, code.d
            )
        json_path = out_dir / f"simulate_{name}.json"
        _write_json(json_path, payload)
        written.append(json_path)
        if config.collect_trace and result.trace is not None:
            trace_path = out_dir / f"simulate_{name}_trace.csv"
            with trace_path.open("w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(["beat", "instruction_id", "kind", "status"])
                writer.writerows(result.trace)
            written.append(trace_path)
    return written


def cmd_sweep(config: RunConfig, out_dir: Path, max_workers: int) -> list[Path]:
    if not config.sweep_epsilons or not config.sweep_p:
        raise ConfigError("sweep mode needs non-empty sweep.epsilons and sweep.p_list")
    written = []
    for name, spec in config.models:
        table = enumerate_terms(spec)
        beats = None
        if config.use_simulation:
            plan = build_floor_plan(table, config.hardware)
            program = synthesize_select(table, config.hardware.threads)
            beats = simulate(plan, program, config.hardware).total_beats
        else:
            beats = closed_form_beats(table, config.hardware)

        def one_epsilon(eps):
            return sweep_grid(
                table, [eps], config.sweep_p, config.hardware, beats_per_select=beats
            )

        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            chunks = list(pool.map(one_epsilon, config.sweep_epsilons))
        cells = [cell for chunk in chunks for cell in chunk]
        csv_path = out_dir / f"sweep_{name}.csv"
        with csv_path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["epsilon", "p", "d", "n_ph", "runtime_s", "feasible"])
            for cell in cells:
                writer.writerow(
                    [
                        repr(cell.epsilon),
                        repr(cell.p_phys),
                        cell.d if cell.d is not None else "",
                        cell.n_ph if cell.n_ph is not None else "",
                        repr(cell.runtime_s) if cell.runtime_s is not None else "",
                        int(cell.feasible),
                    ]
                )
        payload = _envelope(config)
        payload["model"] = name
        payload["beats_per_select"] = beats
        payload["cells"] = [dataclasses.asdict(c) for c in cells]
        json_path = out_dir / f"sweep_{name}.json"
        _write_json(json_path, payload)
        written += [csv_path, json_path]
    return written


def cmd_crossover(config: RunConfig, out_dir: Path) -> list[Path]:
    cc = config.crossover
    model = cc.get("classical_model") or (
        config.models[0][1].model.__class__.__name__.lower()
    )
    aliases = {
        "heisenbergj1j2": "heisenberg_j1j2",
        "fermihubbard": "fermi_hubbard",
        "heisenbergchain": "heisenberg_chain",
    }
    model = aliases.get(model, model)
    classical_csv = cc.get("classical_csv")
    if classical_csv:
        with open(classical_csv, newline="") as fh:
            points = [
                (float(r["size"]), float(r["seconds"])) for r in csv.DictReader(fh)
            ]
    else:
        points = load_classical_endpoints(
            model,
            coupling=cc.get("coupling"),
            geometry=cc.get("geometry", "square"),
        )
    form = FitKind.EXPONENTIAL if cc.get("form", "exponential") == "exponential" else FitKind.POWER_LAW
    fit = fit_size_scaling([p[0] for p in points], [p[1] for p in points], form)
    quantum = cc.get("quantum")
    if quantum:
        qpoints = [(float(s), float(t)) for s, t in quantum]
    else:
        qpoints = load_quantum_endpoints(
            model,
            n_factories=int(cc.get("n_factories", 16)),
            threads=int(cc.get("threads", 16)),
        )
    report = find_crosspoint(fit, qpoints)
    payload = _envelope(config)
    payload["classical_fit"] = {
        "form": fit.kind.value,
        "params": list(fit.params),
        "residual": fit.residual,
        "points": [list(p) for p in points],
    }
    payload["crosspoint"] = report.crosspoint
    payload["found"] = report.found
    payload["curves"] = {
        "sizes": list(report.sizes),
        "classical_s": list(report.classical_s),
        "classical_lower_bound_s": list(report.classical_lower_bound_s),
        "quantum_s": list(report.quantum_s),
    }
    json_path = out_dir / "crossover.json"
    _write_json(json_path, payload)
    csv_path = out_dir / "crossover.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["size", "classical_s", "classical_lower_bound_s", "quantum_s"])
        for i, s in enumerate(report.sizes):
            writer.writerow(
                [
                    repr(s),
                    repr(report.classical_s[i]),
                    repr(report.classical_lower_bound_s[i]),
                    repr(report.quantum_s[i]),
                ]
            )
    return [json_path, csv_path]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ftx",
        description="Fault-tolerant resource estimation and lattice-surgery "
        "scheduling for lattice-model energy estimation.",
    )
    parser.add_argument("--version", action="version", version=f"ftx {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("estimate", "per-algorithm T-counts and rough code plans"),
        ("simulate", "run the lattice-surgery scheduling simulation"),
        ("sweep", "code distance / qubit / runtime grid over epsilon and p"),
        ("crossover", "locate the quantum-classical runtime crosspoint"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="TOML or JSON run configuration")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument(
            "--format", default=None, choices=["json", "csv", "table"],
            help="preferred output format (reports always include JSON)",
        )
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads for sweep evaluation")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        out_dir = Path(args.out or os.environ.get("FTX_OUT_DIR", "."))
        out_dir.mkdir(parents=True, exist_ok=True)
        workers = args.threads or 4
        if args.command == "estimate":
            written, any_infeasible = cmd_estimate(config, out_dir)
            for path in written:
                print(path)
            return EXIT_INFEASIBLE if any_infeasible else EXIT_OK
        if args.command == "simulate":
            written = cmd_simulate(config, out_dir)
        elif args.command == "sweep":
            written = cmd_sweep(config, out_dir, workers)
        else:
            written = cmd_crossover(config, out_dir)
    except ConfigError as exc:
        print(f"ftx: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InfeasibleHardwareError as exc:
        print(f"ftx: infeasible hardware: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except FileNotFoundError as exc:
        print(f"ftx: missing input: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, TypeError) as exc:
        print(f"ftx: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (AssertionError, RuntimeError) as exc:
        print(f"ftx: internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    for path in written:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
