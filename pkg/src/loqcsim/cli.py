"""Command line for scenario runs and circuit-file simulation.

Thin client over the scenario runner: parse flags, run, render, write.
Reports are byte-identical for a fixed configuration and seed; wall
time goes to stderr only.  Exit codes: 0 all checks passed, 1 a check
failed, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from ._version import __version__
from .circuits import load_circuit, run_circuit
from .fock import FockError
from .scenarios import (ScenarioConfig, list_scenarios, render_csv,
                        render_json, run_scenario)

__all__ = ["build_parser", "main"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loqcsim",
        description="Run named verification scenarios or circuit files.")
    parser.add_argument("--scenario", help="scenario name (see --list)")
    parser.add_argument("--circuit", metavar="PATH",
                        help="simulate a JSON circuit file instead")
    parser.add_argument("--config", metavar="PATH",
                        help="JSON file with scenario parameter overrides")
    parser.add_argument("--seed", type=int, default=None,
                        help="RNG seed; required for Monte Carlo scenarios")
    parser.add_argument("--trials", type=int, default=None,
                        help="Monte Carlo trial count override")
    parser.add_argument("--out", metavar="PATH",
                        help="write the report here instead of stdout")
    parser.add_argument("--format", choices=("json", "csv"), default="json",
                        help="report format (default json)")
    parser.add_argument("--list", action="store_true",
                        help="list available scenarios and exit")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    return parser


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    tmp = os.path.join(directory, f".{os.path.basename(path)}.tmp")
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _emit(text: str, out: str | None) -> None:
    if out:
        _atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _load_parameters(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise FockError("parameter file must hold a JSON object")
    return data


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.list:
        for info in list_scenarios():
            mc = " [monte carlo]" if info["monte_carlo"] else ""
            sys.stdout.write(f"{info['name']:22s} {info['description']}{mc}\n")
        return 0

    if bool(args.scenario) == bool(args.circuit):
        parser.print_usage(sys.stderr)
        sys.stderr.write("error: exactly one of --scenario/--circuit required\n")
        return 2

    started = time.monotonic()
    try:
        if args.circuit:
            if args.format != "json":
                sys.stderr.write("error: circuit reports are JSON only\n")
                return 2
            circuit = load_circuit(args.circuit)
            report = run_circuit(circuit)
            _emit(json.dumps(report, sort_keys=True, indent=2) + "\n",
                  args.out)
            sys.stderr.write(f"wall time {time.monotonic() - started:.3f}s\n")
            return 0

        config = ScenarioConfig(scenario=args.scenario,
                                parameters=_load_parameters(args.config),
                                seed=args.seed, trials=args.trials)
        report = run_scenario(config)
    except (FockError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2

    text = render_json(report) if args.format == "json" else render_csv(report)
    _emit(text, args.out)
    sys.stderr.write(f"wall time {time.monotonic() - started:.3f}s\n")
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
