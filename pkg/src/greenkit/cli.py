"""Command-line front end: ``greenkit {kernel,response,sectors,curved,verify}``.

Exit codes: 0 success, 1 verification failure, 2 invalid configuration,
3 numeric error.  Errors are written to stderr as one JSON object.
"""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .carriers import carriers_of_order, sector_decomposition
from .curved import Exponential, Flat, beyond_verified_scope, curved_kernel, metric_from_json
from .errors import GreenkitError
from .kernel import GreenKernel, build_kernel, eval_kernel
from .response import Box, Gaussian, Sampled, convolve, convolve_quadrature
from .verify import run_verification

EXIT_OK, EXIT_FAILED, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3
SUBCOMMANDS = ("kernel", "response", "sectors", "curved", "verify")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    n: int = None
    grid: tuple = (-5.0, 5.0, 201)
    source: str = None
    metric: str = None
    output_path: str = "-"
    format: str = "csv"
    x0: float = 0.0
    x_ref: float = 0.0
    kernel_json: str = None
    method: str = "auto"
    rel_tol: float = 1e-10
    orders: tuple = (3, 4, 5)
    quick: bool = False
    extra: dict = field(default_factory=dict)

    def validate(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ConfigError(f"unknown subcommand {self.subcommand!r}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format!r}")
        if self.subcommand in ("sectors", "verify") and self.format == "csv":
            raise ConfigError(f"{self.subcommand} emits JSON only")
        if self.subcommand == "verify":
            if any(n < 3 for n in self.orders):
                raise ConfigError("verify orders must be >= 3")
            return
        if self.n is None and not (self.subcommand == "kernel" and self.kernel_json):
            raise ConfigError("--n is required")
        # n = 2 passes here so that kernel construction can report the
        # imaginary-root rejection itself.
        if self.n is not None and self.n < 2:
            raise ConfigError(f"order must be >= 2, got {self.n}")
        x_min, x_max, num = self.grid
        if not (math.isfinite(x_min) and math.isfinite(x_max)) or not x_min < x_max:
            raise ConfigError(f"grid needs finite x_min < x_max, got {x_min}, {x_max}")
        if num < 2:
            raise ConfigError(f"grid needs at least 2 points, got {num}")
        if self.subcommand == "response" and not self.source:
            raise ConfigError("response needs --source")
        if not 0.0 < self.rel_tol <= 1e-2:
            raise ConfigError("rel-tol must lie in (0, 1e-2]")

    def grid_points(self):
        x_min, x_max, num = self.grid
        g = np.linspace(x_min, x_max, int(num))
        # Snap round-off neighbours of the source point onto it.
        g[np.abs(g) < 1e-12 * (x_max - x_min)] = 0.0
        return g


def fmt(v):
    return format(float(v), ".17g")


def _csv_text(header, rows, comments=()):
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json_text(obj):
    return json.dumps(obj, indent=2) + "\n"


def parse_source(text):
    kind, _, arg = text.partition(":")
    kind = kind.lower()
    try:
        if kind == "box":
            return Box(float(arg))
        if kind in ("gaussian", "gauss"):
            return Gaussian(float(arg))
    except ValueError as exc:
        raise ConfigError(f"bad source {text!r}: {exc}") from exc
    if kind == "sampled":
        return load_sampled(arg)
    raise ConfigError(f"unknown source {text!r} (use box:L, gaussian:SIGMA or sampled:PATH)")


def load_sampled(path):
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"sampled source file {path!r} not found")
    text = p.read_text()
    try:
        if p.suffix.lower() == ".json":
            obj = json.loads(text)
            return Sampled(tuple(obj["x"]), tuple(obj["values"]))
        rows = [r for r in csv.reader(io.StringIO(text)) if r and not r[0].startswith("#")]
        if rows and not _is_number(rows[0][0]):
            rows = rows[1:]
        return Sampled(tuple(float(r[0]) for r in rows), tuple(float(r[1]) for r in rows))
    except (KeyError, IndexError, ValueError) as exc:
        raise ConfigError(f"cannot read sampled source {path!r}: {exc}") from exc


def _is_number(s):
    try:
        float(s)
        return True
    except ValueError:
        return False


def parse_metric(text):
    if text is None or text.lower() == "flat":
        return Flat()
    kind, _, arg = text.partition(":")
    if kind.lower() in ("exp", "exponential") and arg:
        try:
            return Exponential(float(arg))
        except ValueError as exc:
            raise ConfigError(f"bad metric {text!r}") from exc
    p = Path(text)
    if p.is_file():
        try:
            return metric_from_json(json.loads(p.read_text()))
        except (json.JSONDecodeError, ValueError) as exc:
            raise ConfigError(f"cannot read metric {text!r}: {exc}") from exc
    raise ConfigError(f"unknown metric {text!r} (use flat, exp:KAPPA or a JSON file)")


def _load_kernel(config):
    if config.kernel_json:
        p = Path(config.kernel_json)
        if not p.is_file():
            raise ConfigError(f"kernel file {config.kernel_json!r} not found")
        try:
            return GreenKernel.from_dict(json.loads(p.read_text()))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"cannot read kernel {config.kernel_json!r}: {exc}") from exc
    return build_kernel(config.n)


def _run_kernel(config):
    k = _load_kernel(config)
    g = config.grid_points()
    vals = eval_kernel(k, g)
    if config.format == "csv":
        return _csv_text(["x", "G"], [(fmt(x), fmt(v)) for x, v in zip(g, vals)])
    out = k.to_dict()
    out["samples"] = {"x": g.tolist(), "G": vals.tolist()}
    return _json_text(out)


def _run_response(config):
    k = build_kernel(config.n)
    src = parse_source(config.source)
    g = config.grid_points()
    if config.method == "quadrature":
        curve = convolve_quadrature(k, src, g, config.rel_tol)
    else:
        curve = convolve(k, src, g, config.rel_tol)
    method = curve.method.value
    if config.format == "csv":
        return _csv_text(["x", "phi", "method"], [(fmt(x), fmt(v), method) for x, v in zip(curve.grid, curve.values)])
    return _json_text(
        {"order": k.order, "source": config.source, "method": method,
         "x": curve.grid.tolist(), "phi": curve.values.tolist()}
    )


def sectors_payload(n):
    d = sector_decomposition(n)
    return {
        "order": n,
        "carriers": [
            {"index": c.index, "re": c.value.real, "im": c.value.imag, "decay_side": c.decay_side.value}
            for c in carriers_of_order(n)
        ],
        "stokes_angles": list(d.stokes_angles),
        "boundary_angles": list(d.boundary_angles),
        "sectors": [
            {
                "start": s.start,
                "end": s.end,
                "width": s.width,
                "width_deg": math.degrees(s.width),
                "active": sorted(s.active),
                "cardinality": len(s.active),
            }
            for s in d.sectors
        ],
    }


def _run_sectors(config):
    return _json_text(sectors_payload(config.n))


def _run_curved(config):
    k = build_kernel(config.n)
    m = parse_metric(config.metric)
    g = config.grid_points()
    vals = curved_kernel(k, m, g, config.x0, config.x_ref)
    meta = {
        "order": k.order,
        "metric": m.describe(),
        "x0": config.x0,
        "x_ref": config.x_ref,
        "beyond_verified_scope": beyond_verified_scope(k),
    }
    if config.format == "csv":
        comments = [f"{key}: {json.dumps(val)}" for key, val in meta.items()]
        return _csv_text(["x", "G_curved"], [(fmt(x), fmt(v)) for x, v in zip(g, vals)], comments)
    meta.update({"x": g.tolist(), "G_curved": np.asarray(vals).tolist()})
    return _json_text(meta)


def _run_verify(config):
    return _json_text(run_verification(tuple(config.orders), quick=config.quick))


RUNNERS = {
    "kernel": _run_kernel,
    "response": _run_response,
    "sectors": _run_sectors,
    "curved": _run_curved,
    "verify": _run_verify,
}


def _emit_error(kind, message, code):
    sys.stderr.write(json.dumps({"error": kind, "message": message, "exit_code": code}) + "\n")
    return code


def run(config: RunConfig) -> int:
    """Validate, compute and write one artifact; returns the exit status."""
    try:
        config.validate()
        text = RUNNERS[config.subcommand](config)
    except ConfigError as exc:
        return _emit_error("ConfigError", str(exc), EXIT_CONFIG)
    except GreenkitError as exc:
        return _emit_error(type(exc).__name__, str(exc), EXIT_NUMERIC)
    if config.output_path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(config.output_path).write_text(text)
    if config.subcommand == "verify" and not json.loads(text)["passed"]:
        return EXIT_FAILED
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _emit_error("ConfigError", message, EXIT_CONFIG)
        sys.exit(EXIT_CONFIG)


def build_parser():
    parser = _Parser(prog="greenkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def common(p, grid=True, fmt_default="csv"):
        p.add_argument("--n", type=int, help="operator order n in D^n + 1")
        if grid:
            p.add_argument("--grid", nargs=3, metavar=("XMIN", "XMAX", "NUM"), default=["-5", "5", "201"])
        p.add_argument("--output", "-o", default="-", help="output file (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=fmt_default)

    p = sub.add_parser("kernel", help="tabulate G(x)")
    common(p)
    p.add_argument("--from-json", dest="kernel_json", help="re-evaluate a kernel saved with --format json")

    p = sub.add_parser("response", help="response phi = G * F to a source")
    common(p)
    p.add_argument("--source", required=True, help="box:L, gaussian:SIGMA or sampled:PATH (.csv/.json)")
    p.add_argument("--method", choices=("auto", "quadrature"), default="auto")
    p.add_argument("--rel-tol", type=float, default=1e-10)

    p = sub.add_parser("sectors", help="Stokes-sector decomposition (JSON)")
    common(p, grid=False, fmt_default="json")

    p = sub.add_parser("curved", help="kernel in a curved 1-D metric")
    common(p)
    p.add_argument("--metric", default="flat", help="flat, exp:KAPPA or a metric JSON file")
    p.add_argument("--x0", type=float, default=0.0, help="source position")
    p.add_argument("--x-ref", type=float, default=0.0, help="reference point with y(x_ref) = 0")

    p = sub.add_parser("verify", help="run the oracle suite, emit a JSON report")
    p.add_argument("--orders", type=int, nargs="+", default=[3, 4, 5])
    p.add_argument("--quick", action="store_true", help="coarser oracle grid")
    p.add_argument("--output", "-o", default="-")
    p.add_argument("--format", choices=("json",), default="json")
    return parser


def config_from_args(ns) -> RunConfig:
    cfg = RunConfig(ns.subcommand, output_path=ns.output, format=ns.format)
    cfg.n = getattr(ns, "n", None)
    if getattr(ns, "grid", None) is not None:
        try:
            cfg.grid = (float(ns.grid[0]), float(ns.grid[1]), int(ns.grid[2]))
        except ValueError as exc:
            raise ConfigError(f"bad grid {ns.grid}: {exc}") from exc
    for name in ("source", "metric", "x0", "x_ref", "kernel_json", "method", "rel_tol", "quick"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    if hasattr(ns, "orders"):
        cfg.orders = tuple(ns.orders)
    return cfg


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ConfigError as exc:
        return _emit_error("ConfigError", str(exc), EXIT_CONFIG)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
