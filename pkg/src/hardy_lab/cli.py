"""Command line harness: ``hardy-lab run`` and ``hardy-lab list``.

Configs are flat ``key = value`` files with dotted keys::

    experiment = ap-sweep
    seed = 7
    grid_size = 1024
    space.p = 2
    space.weight_table = 0:2, 1pi:1

Tables are comma-separated ``angle:value`` pairs. Angles are radians and
may carry a ``pi`` suffix (``0.5pi``). A symbol is given as ``index:value``
pairs where values may be complex (``1:1+2j``).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import fields

from hardy_lab.errors import ConfigurationError
from hardy_lab.experiments import REGISTRY, ExperimentConfig, ResultRecord, run

logger = logging.getLogger(__name__)

RECORD_KEYS = ("experiment", "inputs", "metrics", "assertions", "wall_time_ms")


def _angle(text: str) -> float:
    text = text.strip()
    if text.endswith("pi"):
        head = text[:-2].strip()
        return (float(head) if head else 1.0) * math.pi
    return float(text)


def _pairs(text: str, key: str, left, right) -> list:
    out = []
    for item in text.split(","):
        if not item.strip():
            continue
        if ":" not in item:
            raise ConfigurationError(f"expected 'a:b' pairs, got {item.strip()!r}", key)
        a, b = item.split(":", 1)
        try:
            out.append([left(a), right(b.strip().replace(" ", ""))])
        except ValueError:
            raise ConfigurationError(f"cannot parse {item.strip()!r}", key) from None
    if not out:
        raise ConfigurationError("table is empty", key)
    return out


def _int(text: str) -> int:
    return int(text.strip())


def _float(text: str) -> float:
    return float(text.strip())


def _symbol_value(text: str):
    value = complex(text)
    return value.real if value.imag == 0 else value


# config key -> (dataclass field, parser)
KEYS = {
    "experiment": ("experiment", str.strip),
    "seed": ("seed", _int),
    "grid_size": ("grid_size", _int),
    "grid.size": ("grid_size", _int),
    "degree": ("degree", _int),
    "budget": ("budget", _int),
    "cases": ("cases", _int),
    "output_path": ("output_path", str.strip),
    "space.p": ("p", _float),
    "space.q": ("q", _float),
    "space.r": ("r", _float),
    "space.p_table": ("p_table", lambda s: _pairs(s, "space.p_table", _angle, float)),
    "space.q_table": ("q_table", lambda s: _pairs(s, "space.q_table", _angle, float)),
    "space.weight_table": ("weight_table",
                           lambda s: _pairs(s, "space.weight_table", _angle, float)),
    "symbol": ("symbol", lambda s: _pairs(s, "symbol", _int, _symbol_value)),
}


def parse_config(text: str) -> ExperimentConfig:
    """Parse a flat dotted-key config into an ``ExperimentConfig``."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KEYS:
            raise ConfigurationError(
                f"unknown key; valid keys: {', '.join(sorted(KEYS))}", key)
        name, parser = KEYS[key]
        try:
            values[name] = parser(value)
        except ValueError as err:
            if isinstance(err, ConfigurationError):
                raise
            raise ConfigurationError(f"cannot parse {value!r}", key) from None
    if "experiment" not in values:
        raise ConfigurationError("missing required key", "experiment")
    if "seed" not in values:
        raise ConfigurationError("missing required key (no entropy defaults)", "seed")
    if not 0 <= values["seed"] < 2 ** 64:
        raise ConfigurationError("seed must be a 64-bit unsigned integer", "seed")
    for name in ("degree", "budget", "cases"):
        if name in values and values[name] < 0:
            raise ConfigurationError("must be nonnegative", name)
    if "p" in values and not values["p"] > 1:
        raise ConfigurationError("exponent must exceed 1", "space.p")
    if "q" in values and not values["q"] >= 1:
        raise ConfigurationError("exponent must be at least 1", "space.q")
    return ExperimentConfig(**values)


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise ConfigurationError(f"cannot read config: {err}", "config") from None
    return parse_config(text)


def _number(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    text = format(x, ".17g")
    if all(c in "-0123456789" for c in text):
        text += ".0"
    return text


def _dump(obj) -> str:
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_dump(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_dump(v) for v in obj) + "]"
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    return _number(obj)


def emit(record: ResultRecord, fmt: str = "json") -> bytes:
    """Serialize a record; floats carry 17 significant digits."""
    if fmt == "json":
        body = {key: getattr(record, key) for key in RECORD_KEYS}
        return (_dump(body) + "\n").encode("utf-8")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["experiment", "metric", "value", "pass"])
        for name, value in record.metrics.items():
            checks = [a["passed"] for a in record.assertions if a["metric"] == name]
            verdict = ("true" if all(checks) else "false") if checks else ""
            writer.writerow([record.experiment, name, _number(value), verdict])
        return buf.getvalue().encode("utf-8")
    raise ConfigurationError(f"unknown format {fmt!r}; choose json or csv", "format")


def parse(data: bytes) -> ResultRecord:
    """Inverse of ``emit(record, "json")``."""
    obj = json.loads(data.decode("utf-8"))
    if set(obj) != set(RECORD_KEYS):
        raise ValueError(f"record keys must be {RECORD_KEYS}, got {sorted(obj)}")
    return ResultRecord(**{f.name: obj[f.name] for f in fields(ResultRecord)})


class _Parser(argparse.ArgumentParser):
    # usage errors are configuration errors; exit code 2 means a failed assertion
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hardy-lab", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    run_p = sub.add_parser("run", help="run one experiment from a config file")
    run_p.add_argument("--config", required=True)
    run_p.add_argument("--format", choices=("json", "csv"), default="json")
    run_p.add_argument("--out")
    run_p.add_argument("--parallel", type=int, default=1, metavar="K")
    sub.add_parser("list", help="print registered experiments")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "list":
        for name in sorted(REGISTRY):
            exp = REGISTRY[name]
            print(f"{name}\tgrid_size={exp.grid_size} degree={exp.degree} "
                  f"budget={exp.budget} cases={exp.cases}")
        return 0
    try:
        if args.parallel < 1:
            raise ConfigurationError("must be a positive integer", "parallel")
        config = load_config(args.config)
        record = run(config, workers=args.parallel)
    except ConfigurationError as err:
        print(f"configuration error: {err}", file=sys.stderr)
        return 1
    data = emit(record, args.format)
    out = args.out or config.output_path
    if out:
        with open(out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    for a in record.assertions:
        if not a["passed"]:
            logger.warning("failed: %s = %r %s %r (tol %g)", a["metric"], a["lhs"],
                           a["relation"], a["rhs"], a["tolerance"])
    return 0 if record.passed else 2


if __name__ == "__main__":
    sys.exit(main())
