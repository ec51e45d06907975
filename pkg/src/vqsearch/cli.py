"""Command line front end: vqe-run, grover-run, sweep, curve, depth-report.

Options may also come from a flat key=value config file (--config); explicit
command-line flags win over file values. Exit codes: 0 ok, 2 invalid
configuration, 3 resource guard tripped.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import (
    BACKENDS,
    MODES,
    ExperimentConfig,
    depth_report,
    run_grover_search,
    run_vqe_search,
    success_vs_nfev,
    sweep,
)
from .errors import ConfigError, ResourceLimitError
from .tables import SWEEP_HEADER, Table

_DEFAULT_CHECKPOINTS = "0,1,2,4,6,8,10"

# option name -> (cast from string, default); used for both flags and config files
_OPTION_CASTS = {
    "n": str,
    "target": str,
    "backend": str,
    "optimizer": str,
    "profile": str,
    "trials": int,
    "shots_eval": int,
    "shots_final": int,
    "p1": float,
    "p2": float,
    "p_ro": float,
    "seed": int,
    "out": str,
    "format": str,
    "exact_objective": lambda s: s.strip().lower() in ("1", "true", "yes"),
    "modes": str,
    "backends": str,
    "checkpoints": str,
}


def _parse_n_values(text: str) -> list[int]:
    """Accept '5', '3,5,7' or an inclusive range '2:12'."""
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise ConfigError(f"cannot parse qubit counts from {text!r}") from exc
    if not values:
        raise ConfigError(f"no qubit counts in {text!r}")
    return values


def load_config_file(path: str) -> dict[str, str]:
    """Flat key=value lines; '#' starts a comment; keys mirror the CLI flags."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    data: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip().replace("-", "_")
        if key not in _OPTION_CASTS:
            raise ConfigError(f"{path}:{lineno}: unknown option {key!r}")
        data[key] = value.strip()
    return data


def _add_common(parser: argparse.ArgumentParser, *, targeted: bool) -> None:
    parser.add_argument("--config", help="flat key=value config file; flags override it")
    parser.add_argument("--n", help="qubit count (single runs) or list/range (grids)")
    if targeted:
        parser.add_argument("--target", help="explicit target bit string")
    parser.add_argument("--backend", choices=BACKENDS)
    parser.add_argument("--optimizer", choices=["spsa", "one-eval"])
    parser.add_argument("--profile", choices=["simulation", "hardware"])
    parser.add_argument("--trials", type=int)
    parser.add_argument("--shots-eval", type=int, dest="shots_eval")
    parser.add_argument("--shots-final", type=int, dest="shots_final")
    parser.add_argument("--p1", type=float)
    parser.add_argument("--p2", type=float)
    parser.add_argument("--p-ro", type=float, dest="p_ro")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--exact-objective", action="store_const", const=True,
                        dest="exact_objective")
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--format", choices=["csv", "json"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vqsearch",
                                     description="VQE-based bit-string search vs a Grover "
                                                 "baseline on ideal and noisy simulators")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("vqe-run", help="one VQE search run")
    _add_common(p, targeted=True)

    p = sub.add_parser("grover-run", help="one Grover search run")
    _add_common(p, targeted=True)

    p = sub.add_parser("sweep", help="success probabilities over an (n, mode, backend) grid")
    _add_common(p, targeted=False)
    p.add_argument("--modes", help="comma list from {vqe,grover} (default both)")
    p.add_argument("--backends", help="comma list from {ideal,noisy} (default both)")

    p = sub.add_parser("curve", help="success probability vs nfev in sqrt(N) units")
    _add_common(p, targeted=True)
    p.add_argument("--checkpoints", help=f"comma list of sqrt(N) units (default {_DEFAULT_CHECKPOINTS})")

    p = sub.add_parser("depth-report", help="ansatz vs Grover depth table")
    _add_common(p, targeted=False)

    return parser


def _merged_option(args, filecfg: dict[str, str], name: str, default=None):
    value = getattr(args, name, None)
    if value is not None:
        return value
    if name in filecfg:
        return _OPTION_CASTS[name](filecfg[name])
    return default


def _experiment_config(args, filecfg, mode: str, *, n_value=None) -> ExperimentConfig:
    def opt(name, default=None):
        return _merged_option(args, filecfg, name, default)

    defaults = ExperimentConfig()
    optimizer = opt("optimizer", defaults.optimizer).replace("-", "_")
    n_text = n_value if n_value is not None else opt("n")
    n = None
    if n_text is not None:
        try:
            n = int(n_text)
        except ValueError as exc:
            raise ConfigError(f"--n must be an integer here, got {n_text!r}") from exc
    return ExperimentConfig(
        mode=mode,
        backend=opt("backend", defaults.backend),
        n=n,
        target=opt("target"),
        trials=opt("trials", defaults.trials),
        seed=opt("seed", defaults.seed),
        shots_eval=opt("shots_eval", defaults.shots_eval),
        shots_final=opt("shots_final", defaults.shots_final),
        optimizer=optimizer,
        profile=opt("profile", defaults.profile),
        exact_objective=bool(opt("exact_objective", False)),
        p1=opt("p1", defaults.p1),
        p2=opt("p2", defaults.p2),
        p_ro=opt("p_ro", defaults.p_ro),
    )


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(out_path).write_text(text)


def _emit_table(table: Table, fmt: str, out_path: str | None) -> None:
    if fmt == "json":
        _emit(json.dumps({"header": list(table.header), "rows": [list(r) for r in table.rows]},
                         indent=2), out_path)
    else:
        _emit(table.to_csv_text(), out_path)


def _run(args) -> None:
    filecfg = load_config_file(args.config) if args.config else {}
    out_path = _merged_option(args, filecfg, "out")
    command = args.command

    if command in ("vqe-run", "grover-run"):
        fmt = _merged_option(args, filecfg, "format", "json")
        mode = "vqe" if command == "vqe-run" else "grover"
        config = _experiment_config(args, filecfg, mode)
        record = run_vqe_search(config) if mode == "vqe" else run_grover_search(config)
        if fmt == "json":
            _emit(json.dumps(record.to_dict(), indent=2), out_path)
        elif mode == "vqe":
            _emit_table(record.trace_table(), "csv", out_path)
        else:
            row = (record.n, record.mode, record.backend, 0, record.target,
                   float(record.success_probability), record.total_nfev,
                   record.depth["grover_logical_depth"])
            _emit_table(Table(SWEEP_HEADER, [row]), "csv", out_path)
        return

    fmt = _merged_option(args, filecfg, "format", "csv")
    if command == "sweep":
        n_text = _merged_option(args, filecfg, "n")
        if n_text is None:
            raise ConfigError("sweep requires --n (value, list or range)")
        modes = (_merged_option(args, filecfg, "modes") or ",".join(MODES)).split(",")
        backends = (_merged_option(args, filecfg, "backends") or ",".join(BACKENDS)).split(",")
        for m in modes:
            if m not in MODES:
                raise ConfigError(f"unknown mode {m!r}")
        for b in backends:
            if b not in BACKENDS:
                raise ConfigError(f"unknown backend {b!r}")
        config = _experiment_config(args, filecfg, "vqe", n_value="1")  # n replaced per grid point
        table = sweep(config, _parse_n_values(n_text), modes, backends)
        _emit_table(table, fmt, out_path)
    elif command == "curve":
        config = _experiment_config(args, filecfg, "vqe")
        text = _merged_option(args, filecfg, "checkpoints", _DEFAULT_CHECKPOINTS)
        try:
            checkpoints = [float(part) for part in text.split(",")]
        except ValueError as exc:
            raise ConfigError(f"cannot parse checkpoints from {text!r}") from exc
        table = success_vs_nfev(config, checkpoints)
        _emit_table(table, fmt, out_path)
    elif command == "depth-report":
        n_text = _merged_option(args, filecfg, "n")
        if n_text is None:
            raise ConfigError("depth-report requires --n (value, list or range)")
        table = depth_report(_parse_n_values(n_text))
        _emit_table(table, fmt, out_path)
    else:  # pragma: no cover - argparse enforces the choices
        raise ConfigError(f"unknown command {command!r}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _run(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
