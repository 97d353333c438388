"""Batch driver: JSON configs in, deterministic JSON/CSV reports out.

One config schema serves every command::

    {
      "c": 1.0,
      "interval": {"left": 0.0, "right": 1.0},        # right may be "inf"
      "kind": "delta",                                  # or "delta_prime"
      "lattice": {"rule": {...}, "count": 4},           # count may be "inf"
      "strengths": {"rule": {...}},
      "command": {"window": [0.51, 6.0], "resolution": 1e-3,
                  "c_list": [10, 100], "truncation": 100}
    }

Sequence rules::

    {"variant": "constant",  "value": C}
    {"variant": "geometric", "scale": C, "ratio": r}
    {"variant": "power",     "scale": C, "exponent": p}
    {"variant": "explicit",  "values": [...]}           # "inf" entries allowed
    {"variant": "tail",      "prefix": [...], "tail": {...}}
    {"variant": "sum",       "parts": [{...}, {...}]}

Floats are rendered with %.17g and keys are ordered, so identical configs
produce byte-identical outputs; the ``GSD_THREADS`` variable caps scan
parallelism without affecting results.  Exit codes: 0 success, 1 usage or
config error, 2 verdict contradiction.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional

import numpy as np

from . import __version__
from .classify import ClassificationConflictError, classify_all
from .jacobi import build as build_jacobi, eigenvalues_truncated
from .krein import (
    RealizationSpec,
    eigenvalues_secular,
    nonrel_harness,
    transfer_oracle_dirac,
)
from .model import (
    Lattice,
    ModelConfig,
    SequenceRule,
    StrengthSeq,
    build_lattice,
)
from .weyl import WeylBlock, weyl_eval

__all__ = ["main", "run"]

EXIT_OK, EXIT_USAGE, EXIT_CONTRADICTION = 0, 1, 2

COMMANDS = ("classify", "spectrum", "jacobi", "weyl", "limit", "selftest")


class ConfigError(ValueError):
    """Malformed configuration document."""


# ---------------------------------------------------------------------------
# deterministic serialization
# ---------------------------------------------------------------------------


def _fmt_scalar(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return "null"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        v = float(x)
        if math.isinf(v):
            return '"inf"' if v > 0 else '"-inf"'
        if math.isnan(v):
            return '"nan"'
        return "%.17g" % v
    if isinstance(x, complex):
        return '{"im": %s, "re": %s}' % (_fmt_scalar(x.imag), _fmt_scalar(x.real))
    return json.dumps(x, ensure_ascii=True)


def format_json(obj) -> str:
    """Canonical JSON: sorted keys, %.17g floats, stable layout."""

    def render(o) -> str:
        if isinstance(o, np.ndarray):
            o = o.tolist()
        if isinstance(o, dict):
            items = sorted(o.items(), key=lambda kv: str(kv[0]))
            inner = ", ".join(f"{json.dumps(str(k))}: {render(v)}" for k, v in items)
            return "{" + inner + "}"
        if isinstance(o, (list, tuple)):
            return "[" + ", ".join(render(v) for v in o) + "]"
        return _fmt_scalar(o)

    return render(obj) + "\n"


def format_csv(rows, header) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt_scalar(v).strip('"') for v in row))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# config parsing
# ---------------------------------------------------------------------------


def _num(value, field: str) -> float:
    if value == "inf":
        return math.inf
    if value == "-inf":
        return -math.inf
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    raise ConfigError(f"field {field!r}: expected a number, got {value!r}")


def parse_rule(doc, field: str = "rule") -> SequenceRule:
    if not isinstance(doc, dict) or "variant" not in doc:
        raise ConfigError(f"field {field!r}: rule needs a 'variant'")
    variant = doc["variant"]
    try:
        if variant == "constant":
            return SequenceRule.constant(_num(doc["value"], field))
        if variant == "geometric":
            return SequenceRule.geometric(_num(doc["scale"], field),
                                          _num(doc["ratio"], field))
        if variant == "power":
            return SequenceRule.power(_num(doc["scale"], field),
                                      _num(doc["exponent"], field))
        if variant == "explicit":
            return SequenceRule.explicit([_num(v, field) for v in doc["values"]])
        if variant == "tail":
            return SequenceRule.with_prefix(
                [_num(v, field) for v in doc.get("prefix", [])],
                parse_rule(doc["tail"], field + ".tail"))
        if variant == "sum":
            return SequenceRule.sum_of(
                *(parse_rule(p, field + ".parts") for p in doc["parts"]))
    except KeyError as exc:
        raise ConfigError(f"field {field!r}: missing {exc.args[0]!r}") from exc
    except ValueError as exc:
        raise ConfigError(f"field {field!r}: {exc}") from exc
    raise ConfigError(f"field {field!r}: unknown variant {variant!r}")


def parse_config(doc: dict):
    if not isinstance(doc, dict):
        raise ConfigError("top-level config must be an object")
    for key in ("c", "interval", "lattice", "strengths"):
        if key not in doc:
            raise ConfigError(f"missing top-level field {key!r}")
    interval = doc["interval"]
    try:
        config = ModelConfig(
            c=_num(doc["c"], "c"),
            left=_num(interval["left"], "interval.left"),
            right=_num(interval["right"], "interval.right"),
            interaction_kind=doc.get("kind", "delta"),
        )
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"bad interval: {exc}") from exc
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    lat_doc = doc["lattice"]
    count = lat_doc.get("count", "inf")
    count = math.inf if count == "inf" else int(count)
    try:
        # an infinite lattice on a finite interval must accumulate at the
        # right endpoint; a finite one only has to stay inside
        right = config.right if (count == math.inf and not config.is_halfline) \
            else None
        lattice = build_lattice(config.left, parse_rule(lat_doc["rule"], "lattice.rule"),
                                count, right=right)
        if count != math.inf and not config.is_halfline:
            last = lattice.point(int(count))
            if last > config.right + 1e-12 * max(1.0, abs(config.right)):
                raise ConfigError("lattice points run past the right endpoint")
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"lattice: {exc}") from exc
    kind = "beta" if config.interaction_kind == "delta_prime" else "alpha"
    strengths = StrengthSeq(parse_rule(doc["strengths"]["rule"], "strengths.rule"),
                            kind=kind)
    command = doc.get("command", {})
    if not isinstance(command, dict):
        raise ConfigError("'command' must be an object")
    return config, lattice, strengths, command


def _finite_spec(config: ModelConfig, lattice: Lattice,
                 strengths: StrengthSeq) -> RealizationSpec:
    if lattice.is_infinite:
        raise ConfigError("spectrum/limit commands need a finite lattice count")
    n = int(lattice.count)
    pts = [float(p) for p in lattice.points(n)]
    if config.is_halfline:
        return RealizationSpec(
            c=config.c, points=tuple(pts), strengths=tuple(strengths.terms(n)),
            kind=config.interaction_kind, right_bc=None, halfline=True)
    if abs(pts[-1] - config.right) <= 1e-9 * max(1.0, abs(config.right)):
        # lattice exhausts the interval: last point doubles as the endpoint
        pts, strength_vals = pts, strengths.terms(n - 1)
    else:
        pts, strength_vals = pts + [config.right], strengths.terms(n)
    return RealizationSpec(
        c=config.c, points=tuple(pts), strengths=tuple(strength_vals),
        kind=config.interaction_kind)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _cmd_classify(config, lattice, strengths, command, flags) -> tuple:
    report = classify_all(config, lattice, strengths)
    return format_json({"command": "classify", "report": report.as_dict(),
                        "version": __version__}), EXIT_OK


def _cmd_spectrum(config, lattice, strengths, command, flags) -> tuple:
    window = flags.window or command.get("window")
    if not window or len(window) != 2:
        raise ConfigError("spectrum needs a window [lo, hi]")
    resolution = flags.resolution or command.get("resolution", 1e-3)
    spec = _finite_spec(config, lattice, strengths)
    window = (float(window[0]), float(window[1]))
    sec = eigenvalues_secular(spec, window, resolution)
    orc = transfer_oracle_dirac(spec, window, resolution)
    rows = []
    for i, (lam, r) in enumerate(zip(sec.eigenvalues, sec.residuals)):
        rows.append((i, float(lam), float(r), "secular"))
    for i, (lam, r) in enumerate(zip(orc.eigenvalues, orc.residuals)):
        rows.append((i, float(lam), float(r), "oracle"))
    deviation = math.nan
    if len(sec.eigenvalues) == len(orc.eigenvalues) and len(sec.eigenvalues):
        deviation = float(np.max(np.abs(sec.eigenvalues - orc.eigenvalues)))
    elif len(sec.eigenvalues) == len(orc.eigenvalues):
        deviation = 0.0
    csv = format_csv(rows, header=("index", "value", "residual", "method"))
    summary = format_json({
        "command": "spectrum",
        "count_secular": len(sec.eigenvalues),
        "count_oracle": len(orc.eigenvalues),
        "max_deviation": deviation,
        "window": list(window),
    })
    return csv + "#" + summary, EXIT_OK


def _cmd_jacobi(config, lattice, strengths, command, flags) -> tuple:
    n = int(flags.truncation or command.get("truncation", 64))
    flavor = ("beta_" if strengths.kind == "beta" else "alpha_") + "dirac"
    op = build_jacobi(flavor, lattice, strengths, config.c)
    n = min(n, int(op.size) if op.size != math.inf else n)
    lam = eigenvalues_truncated(op, n)
    rows = [(i, float(v), 0.0, "sturm") for i, v in enumerate(lam)]
    return format_csv(rows, header=("index", "value", "residual", "method")), EXIT_OK


def _cmd_weyl(config, lattice, strengths, command, flags) -> tuple:
    n_blocks = 4 if lattice.is_infinite else min(4, int(lattice.count))
    zs = command.get("z_values", [[0.0, 1.0], [0.5, 0.5], [-0.3, 2.0]])
    out = []
    for j in range(n_blocks):
        d = lattice.gap(j + 1)
        blk = WeylBlock("dirac_interval", c=config.c, d=d,
                        left=float(lattice.point(j)), regularized=True)
        samples = []
        for re_im in zs:
            z = complex(_num(re_im[0], "z"), _num(re_im[1], "z"))
            M = weyl_eval(blk, z)
            samples.append({"z": z, "m11": M[0, 0], "m12": M[0, 1],
                            "m22": M[1, 1]})
        out.append({"block": j + 1, "d": d, "samples": samples})
    return format_json({"command": "weyl", "blocks": out}), EXIT_OK


def _cmd_limit(config, lattice, strengths, command, flags) -> tuple:
    c_list = flags.c_list or command.get("c_list") or [10.0, 100.0]
    spec = _finite_spec(config, lattice, strengths)
    table = nonrel_harness(spec, [float(c) for c in c_list],
                           z=1j, n_eigenvalues=int(command.get("indices", 2)),
                           resolution=flags.resolution
                           or command.get("resolution", 1e-3))
    table["z"] = complex(table["z"])
    return format_json({"command": "limit", "table": table}), EXIT_OK


def _cmd_selftest(config, lattice, strengths, command, flags) -> tuple:
    from .selftest import run_selftest

    report, ok = run_selftest()
    return report, (EXIT_OK if ok else EXIT_USAGE)


_DISPATCH = {
    "classify": _cmd_classify,
    "spectrum": _cmd_spectrum,
    "jacobi": _cmd_jacobi,
    "weyl": _cmd_weyl,
    "limit": _cmd_limit,
    "selftest": _cmd_selftest,
}


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _parse_args(argv):
    ap = argparse.ArgumentParser(
        prog="gsdirac",
        description="Spectral analysis of 1-D Dirac operators with point "
                    "interactions")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", required=False,
                    help="path to the JSON configuration")
    ap.add_argument("--out", default=None, help="output path (default stdout)")
    ap.add_argument("--window", default=None,
                    help="scan window 'lo,hi' (overrides the config)")
    ap.add_argument("--resolution", type=float, default=None)
    ap.add_argument("--truncation", type=int, default=None)
    ap.add_argument("--c-list", dest="c_list", default=None,
                    help="comma-separated velocities for the limit command")
    ns = ap.parse_args(argv)
    if ns.window is not None:
        try:
            lo, hi = (float(t) for t in ns.window.split(","))
        except ValueError as exc:
            ap.error(f"bad --window: {exc}")
        ns.window = (lo, hi)
    if ns.c_list is not None:
        try:
            ns.c_list = [float(t) for t in ns.c_list.split(",")]
        except ValueError as exc:
            ap.error(f"bad --c-list: {exc}")
    return ns


def run(argv=None) -> int:
    flags = _parse_args(argv if argv is not None else sys.argv[1:])
    try:
        if flags.command == "selftest":
            config = lattice = strengths = None
            command = {}
        else:
            if not flags.config:
                print("error: --config is required for this command",
                      file=sys.stderr)
                return EXIT_USAGE
            try:
                with open(flags.config, "r", encoding="utf-8") as fh:
                    doc = json.load(fh)
            except (OSError, json.JSONDecodeError) as exc:
                print(f"error: cannot read config: {exc}", file=sys.stderr)
                return EXIT_USAGE
            config, lattice, strengths, command = parse_config(doc)
        text, status = _DISPATCH[flags.command](config, lattice, strengths,
                                                command, flags)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ClassificationConflictError as exc:
        print(f"contradiction: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if flags.out:
        with open(flags.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def main() -> None:
    raise SystemExit(run())
