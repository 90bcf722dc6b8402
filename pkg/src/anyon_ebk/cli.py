"""Command-line front end: ``spectrum``, ``sweep`` and ``validate``.

Values for ``--alpha``, ``--b``, ``--nr`` and ``--m`` are single numbers,
comma lists or inclusive ``start:stop[:step]`` ranges. A value starting with
a minus sign must be attached with ``=`` when it is a range, e.g. ``--m=-2:2``.
Flags override keys of an optional ``--config`` file of ``key = value`` lines.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .model import QuantumNumbers, SystemParams
from .oracle import RadialGrid, default_grid, oracle_energy
from .spectra import Method, landau_energy_paper, solve_ebk_numeric, solve_septic, zeeman_energy
from .validation import run_validation

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_IO = 0, 1, 2, 3

CSV_FIELDS = ("method", "alpha", "b_field", "n_r", "m", "e_bar", "e_total", "error")
METHOD_ORDER = tuple(m.value for m in Method)
_SOLVERS = {
    "ebk": solve_ebk_numeric,
    "landau": landau_energy_paper,
    "zeeman": zeeman_energy,
    "septic": solve_septic,
}

DEFAULTS = {
    "method": "ebk",
    "alpha": "0",
    "b": "0",
    "nr": "0",
    "m": "0",
    "coulomb": "on",
    "format": "csv",
    "out": "-",
    "grid_points": "4000",
    "rmax": "auto",
    "scheme": "factored",
    "energy_scale": "1",
    "jobs": "auto",
}


class UsageError(Exception):
    pass


def parse_values(text: str, kind=float) -> list:
    """Parse ``1``, ``0,0.5,1`` or ``start:stop[:step]`` (stop inclusive)."""
    text = text.strip()
    if not text:
        raise UsageError("empty value")
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) not in (2, 3):
                raise UsageError(f"bad range {text!r}; expected start:stop[:step]")
            start, stop = kind(parts[0]), kind(parts[1])
            step = kind(parts[2]) if len(parts) == 3 else kind(1)
            if not step > 0:
                raise UsageError(f"range step must be positive in {text!r}")
            if stop < start:
                raise UsageError(f"empty range {text!r}")
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            values = [start + i * step for i in range(count)]
            if kind is float:
                values = [float(round(v, 12)) for v in values]
            return values
        return [kind(v) for v in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from None


@dataclass
class RunConfig:
    methods: list = field(default_factory=lambda: ["ebk"])
    alphas: list = field(default_factory=lambda: [0.0])
    b_fields: list = field(default_factory=lambda: [0.0])
    n_rs: list = field(default_factory=lambda: [0])
    ms: list = field(default_factory=lambda: [0])
    coulomb_on: bool = True
    fmt: str = "csv"
    out: str = "-"
    grid_points: int = 4000
    rmax: float | None = None
    scheme: str = "factored"
    energy_scale: float = 1.0
    jobs: int = 1

    @classmethod
    def from_settings(cls, s: dict) -> "RunConfig":
        methods = [m.strip() for m in s["method"].split(",") if m.strip()]
        if not methods:
            raise UsageError("at least one method is required")
        unknown = sorted(set(methods) - set(METHOD_ORDER))
        if unknown:
            raise UsageError(f"unknown method(s) {unknown}; choose from {list(METHOD_ORDER)}")
        if s["format"] not in ("csv", "json"):
            raise UsageError(f"format must be csv or json, got {s['format']!r}")
        if s["coulomb"] not in ("on", "off"):
            raise UsageError(f"coulomb must be on or off, got {s['coulomb']!r}")
        if s["scheme"] not in ("factored", "pointwise"):
            raise UsageError(f"scheme must be factored or pointwise, got {s['scheme']!r}")
        try:
            grid_points = int(s["grid_points"])
            rmax = None if s["rmax"] == "auto" else float(s["rmax"])
            energy_scale = float(s["energy_scale"])
            jobs = os.cpu_count() or 1 if s["jobs"] == "auto" else int(s["jobs"])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if grid_points < 100:
            raise UsageError("grid-points must be >= 100")
        if rmax is not None and not rmax > 0:
            raise UsageError("rmax must be positive")
        if jobs < 1:
            raise UsageError("jobs must be >= 1")
        b_fields = parse_values(s["b"])
        if any(b < 0 for b in b_fields):
            raise UsageError("magnetic field values must be >= 0")
        n_rs = parse_values(s["nr"], int)
        if any(n < 0 for n in n_rs):
            raise UsageError("n_r values must be >= 0")
        return cls(
            methods=sorted(set(methods), key=METHOD_ORDER.index),
            alphas=sorted(set(parse_values(s["alpha"]))),
            b_fields=sorted(set(b_fields)),
            n_rs=sorted(set(n_rs)),
            ms=sorted(set(parse_values(s["m"], int))),
            coulomb_on=s["coulomb"] == "on",
            fmt=s["format"],
            out=s["out"],
            grid_points=grid_points,
            rmax=rmax,
            scheme=s["scheme"],
            energy_scale=energy_scale,
            jobs=jobs,
        )

    def tasks(self):
        """All (method, B, alpha, n_r, m) tuples in output order."""
        return [
            (method, b, alpha, n_r, m)
            for method in self.methods
            for b in self.b_fields
            for alpha in self.alphas
            for n_r in self.n_rs
            for m in self.ms
        ]


def compute_row(task, coulomb_on=True, grid_points=4000, rmax=None, scheme="factored", energy_scale=1.0) -> dict:
    """Evaluate one level; solver failures are returned in the ``error`` field."""
    method, b, alpha, n_r, m = task
    row = {"method": method, "alpha": alpha, "b_field": b, "n_r": n_r, "m": m, "e_bar": None, "e_total": None, "error": ""}
    try:
        params = SystemParams(alpha, b, coulomb_on)
        qn = QuantumNumbers(n_r, m)
        if method == "oracle":
            grid = default_grid(params, qn, grid_points)
            if rmax is not None:
                grid = RadialGrid(rmax, grid_points)
            rec = oracle_energy(params, qn, grid, scheme=scheme)
        else:
            rec = _SOLVERS[method](params, qn)
    except (ValueError, RuntimeError) as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row
    row["e_bar"] = rec.e_bar * energy_scale
    row["e_total"] = rec.e_total * energy_scale
    return row


def _row_worker(args):
    task, kwargs = args
    return compute_row(task, **kwargs)


def compute_rows(config: RunConfig) -> list:
    kwargs = dict(
        coulomb_on=config.coulomb_on,
        grid_points=config.grid_points,
        rmax=config.rmax,
        scheme=config.scheme,
        energy_scale=config.energy_scale,
    )
    tasks = config.tasks()
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(config.jobs, len(tasks))) as pool:
            return list(pool.map(_row_worker, [(t, kwargs) for t in tasks], chunksize=4))
    return [compute_row(t, **kwargs) for t in tasks]


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, float):
        return format(x, ".15g")
    return str(x)


def _json_num(x):
    if isinstance(x, float):
        return float(format(x, ".15g"))
    return x


def render(rows: list, fmt: str) -> str:
    if fmt == "json":
        payload = [{k: _json_num(row[k]) for k in CSV_FIELDS} for row in rows]
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for row in rows:
        writer.writerow([_fmt(row[k]) for k in CSV_FIELDS])
    return buf.getvalue()


def _emit(text: str, out: str):
    if out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    opt = common.add_argument
    opt("--config", help="file of 'key = value' lines; flags take precedence")
    opt("--method", help="comma list of ebk, landau, zeeman, septic, oracle (default ebk)")
    opt("--alpha", help="statistics parameter(s) (default 0)")
    opt("--b", help="reduced magnetic field(s) (default 0)")
    opt("--nr", help="radial quantum number(s) (default 0)")
    opt("--m", help="angular quantum number(s) (default 0)")
    opt("--coulomb", choices=("on", "off"), help="Coulomb interaction (default on)")
    opt("--format", choices=("csv", "json"), help="output format (default csv)")
    opt("--out", help="output path, '-' for stdout (default)")
    opt("--grid-points", dest="grid_points", help="oracle grid points (default 4000)")
    opt("--rmax", help="oracle box radius (default auto)")
    opt("--scheme", choices=("factored", "pointwise"), help="oracle discretisation (default factored)")
    opt("--energy-scale", dest="energy_scale", help="factor applied to output energies (default 1)")
    opt("--jobs", help="worker processes (default: available CPUs)")
    opt("--seed", help="accepted for interface compatibility; nothing is random")
    opt("--print-config", dest="print_config", action="store_true", help="print the resolved settings and exit")

    parser = _Parser(prog="anyon-ebk", description="Torus-quantized spectra of two anyons with Coulomb interaction in a magnetic field.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("spectrum", parents=[common], help="levels for every parameter combination")
    sub.add_parser("sweep", parents=[common], help="levels along one swept axis (alpha or b)")
    sub.add_parser("validate", parents=[common], help="run the closed-form and oracle cross-checks")
    return parser


def resolve_settings(args) -> dict:
    settings = dict(DEFAULTS)
    if args.config:
        cp = configparser.ConfigParser()
        try:
            with open(args.config, encoding="utf-8") as fh:
                cp.read_string("[run]\n" + fh.read())
        except OSError as exc:
            raise OSError(f"cannot read config {args.config}: {exc}") from exc
        except configparser.Error as exc:
            raise UsageError(f"bad config file: {exc}") from None
        for key, value in cp["run"].items():
            key = key.replace("-", "_")
            if key == "seed":
                continue
            if key not in settings:
                raise UsageError(f"unknown config key {key!r}")
            settings[key] = value.strip()
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    return settings


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = resolve_settings(args)
        if args.print_config:
            sys.stdout.write("".join(f"{k} = {v}\n" for k, v in settings.items()))
            return EXIT_OK
        if args.command == "validate":
            report = run_validation()
            _emit(json.dumps(report, indent=2) + "\n", settings["out"])
            return EXIT_OK if report["passed"] else EXIT_VALIDATION
        config = RunConfig.from_settings(settings)
        if args.command == "sweep":
            swept = [name for name, vals in (("alpha", config.alphas), ("b", config.b_fields)) if len(vals) > 1]
            if len(swept) != 1:
                raise UsageError("sweep needs exactly one swept axis: a range on --alpha or on --b")
        _emit(render(compute_rows(config), config.fmt), config.out)
    except UsageError as exc:
        print(f"anyon-ebk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"anyon-ebk: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
