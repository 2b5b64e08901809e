"""Command-line front end: transforms, evolutions, kernel tables, constants, experiments.

Exit codes: 0 success, 2 configuration/usage error, 3 a verification row
failed its predicate, 1 internal error. Errors print one machine-parsable
line on stderr: ``error kind=<config|domain|internal> message="..."``.

All outputs are deterministic for a fixed config and seed: reports embed the
effective configuration, package version, grid parameters, and the
localization-window description instead of timestamps.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import ConfigurationError, DomainError, GrushinError, ParameterError
from .fields import bump_field, gaussian_wavepacket, plateau_bump_field
from .harness import ExperimentConfig, run_experiment
from .kernels import KernelQuadratureConfig, dispersive_constant, heat_kernel_mehler, \
    heat_kernel_series, schrodinger_kernel_strip, StripKernelQuery
from .propagator import heat_evolve, schrodinger_evolve
from .reports import emit_report, rows_from_json, rows_to_csv
from .transform import SpectralCoefficients, default_grid, forward_transform


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigurationError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"config file {path} is not valid JSON: {exc}") from exc


def _apply_overrides(config: dict, overrides) -> dict:
    """Dotted key=value overrides; values parsed as JSON scalars when possible."""
    for item in overrides or []:
        if "=" not in item:
            raise ConfigurationError(f"override {item!r} is not of the form key=value")
        key, raw = item.split("=", 1)
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        target = config
        parts = key.split(".")
        for part in parts[:-1]:
            target = target.setdefault(part, {})
            if not isinstance(target, dict):
                raise ConfigurationError(f"override path {key!r} crosses a non-dict entry")
        target[parts[-1]] = value
    return config


def _meta(config: dict, extra: dict | None = None) -> dict:
    meta = {"version": __version__, "config": config}
    meta.update(extra or {})
    return meta


def _field_from_config(spec: dict):
    kind = spec.get("kind", "gaussian")
    n = int(spec.get("n", 1))
    if kind == "gaussian":
        return gaussian_wavepacket(n, spec.get("centers", [0.0] * (n + 1)),
                                   spec.get("widths", [1.0] * (n + 1)),
                                   spec.get("modulations", [0.0] * (n + 1)),
                                   amplitude=spec.get("amplitude", 1.0))
    if kind == "bump":
        return bump_field(n, spec.get("center", [0.0] * (n + 1)), float(spec.get("radius", 0.5)),
                          amplitude=spec.get("amplitude", 1.0))
    if kind == "plateau_bump":
        return plateau_bump_field(n, spec.get("center", [0.0] * (n + 1)),
                                  float(spec.get("radius", 0.5)),
                                  amplitude=spec.get("amplitude", 1.0))
    raise ConfigurationError(f"unknown field kind {kind!r}")


def _grid_from_config(config: dict, n: int):
    grid_cfg = dict(config.get("grids", {}))
    return default_grid(n, **grid_cfg)


def cmd_transform(args) -> int:
    config = _apply_overrides(_load_config(args.config), args.set)
    field_spec = config.get("field", {"kind": "gaussian"})
    f = _field_from_config(field_spec)
    grid = _grid_from_config(config, f.dimension)
    coeffs = forward_transform(f, grid)
    coeffs.save(args.output)
    return 0


def cmd_evolve(args) -> int:
    config = _apply_overrides(_load_config(args.config), args.set)
    coeffs = SpectralCoefficients.load(args.input)
    s = float(args.s)
    del config  # evolve has no tunables beyond kind and s today
    if args.kind == "schrodinger":
        out = schrodinger_evolve(coeffs, s)
    elif args.kind == "heat":
        out = heat_evolve(coeffs, s)
    else:
        raise ConfigurationError(f"unknown evolution kind {args.kind!r}")
    out.save(args.output)
    return 0


def cmd_kernel(args) -> int:
    config = _apply_overrides(_load_config(args.config), args.set)
    queries = config.get("queries")
    if not queries:
        raise ConfigurationError("kernel command needs a 'queries' list in the config")
    cfg = KernelQuadratureConfig(**config.get("quadrature", {}))
    lines = ["x,t,y,t1,s,re,im"]
    for entry in queries:
        x, t, y, t1, s = (float(entry[k]) for k in ("x", "t", "y", "t1", "s"))
        kind = entry.get("kind", config.get("kind", "schrodinger"))
        if kind == "schrodinger":
            val = schrodinger_kernel_strip(StripKernelQuery(x, t, y, t1, s), cfg)
        elif kind == "heat":
            val = complex(heat_kernel_mehler(x, t, y, t1, s, cfg))
        elif kind == "heat_series":
            val = complex(heat_kernel_series(x, t, y, t1, s,
                                             int(entry.get("K", config.get("K", 128))), cfg))
        else:
            raise ConfigurationError(f"unknown kernel kind {kind!r}")
        lines.append(f"{x!r},{t!r},{y!r},{t1!r},{s!r},{val.real!r},{val.imag!r}")
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_constant(args) -> int:
    M = dispersive_constant(int(args.n))
    sys.stdout.write(f"{M:.10g}\n")
    return 0


def cmd_verify(args) -> int:
    config = _apply_overrides(_load_config(args.config), args.set)
    if args.estimate:
        config["estimate"] = args.estimate
    if args.n is not None:
        config["n"] = args.n
    if args.seed is not None:
        config["seed"] = args.seed
    cfg = ExperimentConfig.from_dict(config)
    rows = run_experiment(cfg)
    meta = _meta(cfg.describe(), {
        "psi": "smooth even bump windows (plateau 1/4 propagator, 1/2 surface measure)",
        "seed": cfg.seed,
    })
    if args.output:
        fmt = "json" if args.output.endswith(".json") else "csv"
        emit_report(rows, meta, args.output, fmt)
        if args.json_output:
            emit_report(rows, meta, args.json_output, "json")
    else:
        sys.stdout.write(rows_to_csv(rows))
    if not all(r.passed for r in rows):
        return 3
    return 0


def cmd_report(args) -> int:
    with open(args.input) as fh:
        rows, meta = rows_from_json(fh.read())
    emit_report(rows, meta, args.output, args.format)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grushin",
        description="Spectral toolkit and verification harness for the Grushin operator")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="verb")

    p = sub.add_parser("transform", help="forward transform of a configured field")
    p.add_argument("--config", default=None)
    p.add_argument("--output", required=True)
    p.add_argument("--set", action="append", metavar="KEY=VALUE")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("evolve", help="apply a spectral evolution to stored coefficients")
    p.add_argument("--config", default=None)
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--kind", default="schrodinger", choices=("schrodinger", "heat"))
    p.add_argument("--s", required=True, type=float)
    p.add_argument("--set", action="append", metavar="KEY=VALUE")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("kernel", help="evaluate kernels at configured query points (CSV)")
    p.add_argument("--config", required=True)
    p.add_argument("--output", default=None)
    p.add_argument("--set", action="append", metavar="KEY=VALUE")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("constant", help="print the dispersive constant M for dimension n")
    p.add_argument("--n", default=1, type=int)
    p.set_defaults(func=cmd_constant)

    p = sub.add_parser("verify", help="run a verification experiment and emit a report")
    p.add_argument("--config", default=None)
    p.add_argument("--estimate", default=None)
    p.add_argument("--n", default=None, type=int)
    p.add_argument("--seed", default=None, type=int)
    p.add_argument("--output", default=None)
    p.add_argument("--json-output", default=None)
    p.add_argument("--set", action="append", metavar="KEY=VALUE")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="re-emit a JSON report as CSV or JSON")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--format", default="csv", choices=("csv", "json"))
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        print('error kind=config message="no verb given"', file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ConfigurationError, ParameterError) as exc:
        print(f'error kind=config message="{exc}"', file=sys.stderr)
        return 2
    except (DomainError, GrushinError) as exc:
        print(f'error kind=domain message="{exc}"', file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - the CLI boundary reports anything
        print(f'error kind=internal message="{exc}"', file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
