"""Problem files in, result documents out.

A problem file is YAML::

    ambient_dim: 3
    first:
      offset: [0, 0, 1]
      directions: [[1, 0, 0]]     # one list per direction column
      sign: plus                  # optional, default plus
    second:
      offset: [0, 0, 0]
      directions: [[0, 1, 0]]
      sign: minus
    solver:                       # optional
      method: direct              # direct | partitioned
      tolerance: 1.0e-8           # classification tolerance

Several problems go under a top-level ``problems:`` list, each entry shaped
like the document above plus an optional ``name``.
"""
import math
from dataclasses import dataclass
from typing import Optional

import yaml

from .errors import LinvarError, ShapeError
from .varieties import LinearVariety

METHODS = ("direct", "partitioned")
_PROBLEM_KEYS = {"name", "ambient_dim", "first", "second", "solver"}
_VARIETY_KEYS = {"offset", "directions", "sign"}
_SOLVER_KEYS = {"method", "tolerance"}


class ProblemFileError(LinvarError, ValueError):
    """Malformed problem file; the message names the field and line."""

    def __init__(self, message, field=None, line=None):
        where = " ".join(p for p in (f"line {line}" if line else "", field or "") if p)
        super().__init__(f"{where}: {message}" if where else message)
        self.field = field
        self.line = line


@dataclass(frozen=True)
class Problem:
    first: LinearVariety
    second: LinearVariety
    method: Optional[str] = None
    tolerance: Optional[float] = None
    name: Optional[str] = None
    batch: bool = False


def _field_name(path):
    out = ""
    for p in path:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out


class _Reader:
    def __init__(self, text):
        try:
            self.root = yaml.compose(text, Loader=yaml.SafeLoader)
            self.data = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            mark = getattr(exc, "problem_mark", None)
            problem = getattr(exc, "problem", None) or str(exc)
            raise ProblemFileError(problem, line=mark.line + 1 if mark else None) from None

    def line(self, path):
        node = self.root
        for key in path:
            if isinstance(node, yaml.MappingNode):
                hit = [v for k, v in node.value if k.value == key]
                if not hit:
                    break
                node = hit[0]
            elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and key < len(node.value):
                node = node.value[key]
            else:
                break
        return node.start_mark.line + 1 if node is not None else None

    def fail(self, message, path):
        raise ProblemFileError(message, field=_field_name(path), line=self.line(path))

    def number(self, value, path):
        if isinstance(value, bool):
            self.fail("expected a number, got a boolean", path)
        if isinstance(value, str):
            # YAML 1.1 reads 1e-8 (no dot) as a string
            try:
                value = float(value)
            except ValueError:
                self.fail(f"expected a number, got {value!r}", path)
        if not isinstance(value, (int, float)):
            self.fail(f"expected a number, got {type(value).__name__}", path)
        value = float(value)
        if not math.isfinite(value):
            self.fail("non-finite numbers are not allowed", path)
        return value

    def numbers(self, value, path):
        if not isinstance(value, list):
            self.fail("expected a list of numbers", path)
        return [self.number(v, path + [i]) for i, v in enumerate(value)]

    def mapping(self, value, path, allowed):
        if not isinstance(value, dict):
            self.fail("expected a mapping", path)
        extra = sorted(set(value) - allowed, key=str)
        if extra:
            self.fail(f"unknown key {extra[0]!r}", path + [extra[0]])
        return value


def _variety(rd, raw, path, dim):
    raw = rd.mapping(raw, path, _VARIETY_KEYS)
    if "offset" not in raw:
        rd.fail("missing required key 'offset'", path)
    offset = rd.numbers(raw["offset"], path + ["offset"])
    cols_raw = raw.get("directions") or []
    if not isinstance(cols_raw, list):
        rd.fail("expected a list of direction columns", path + ["directions"])
    cols = [rd.numbers(c, path + ["directions", i]) for i, c in enumerate(cols_raw)]
    sign = raw.get("sign", "plus")
    if sign not in ("plus", "minus"):
        rd.fail(f"sign must be 'plus' or 'minus', got {sign!r}", path + ["sign"])

    if len(offset) != dim:
        raise ShapeError(f"{_field_name(path + ['offset'])}: length {len(offset)}, ambient_dim is {dim}")
    for i, c in enumerate(cols):
        if len(c) != dim:
            raise ShapeError(
                f"{_field_name(path + ['directions', i])}: length {len(c)}, ambient_dim is {dim}"
            )
    directions = [list(row) for row in zip(*cols)] if cols else [[] for _ in range(dim)]
    return LinearVariety(offset, directions, sign)


def _problem(rd, raw, path, batch=False):
    raw = rd.mapping(raw, path, _PROBLEM_KEYS)
    for key in ("ambient_dim", "first", "second"):
        if key not in raw:
            rd.fail(f"missing required key {key!r}", path)
    dim = raw["ambient_dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        rd.fail("ambient_dim must be a positive integer", path + ["ambient_dim"])
    first = _variety(rd, raw["first"], path + ["first"], dim)
    second = _variety(rd, raw["second"], path + ["second"], dim)
    method = tolerance = None
    if raw.get("solver") is not None:
        solver = rd.mapping(raw["solver"], path + ["solver"], _SOLVER_KEYS)
        method = solver.get("method")
        if method is not None and method not in METHODS:
            rd.fail(f"method must be one of {', '.join(METHODS)}", path + ["solver", "method"])
        if solver.get("tolerance") is not None:
            tolerance = rd.number(solver["tolerance"], path + ["solver", "tolerance"])
            if tolerance <= 0:
                rd.fail("tolerance must be positive", path + ["solver", "tolerance"])
    name = raw.get("name")
    return Problem(first, second, method, tolerance, None if name is None else str(name), batch)


def parse_problems(text):
    """Parse problem-file text into a list of :class:`Problem`.

    Raises :class:`ProblemFileError` for malformed input and
    :class:`~linvar.errors.ShapeError` for vectors of the wrong length.
    """
    rd = _Reader(text)
    data = rd.data
    if isinstance(data, dict) and "problems" in data:
        if set(data) != {"problems"}:
            rd.fail("'problems' cannot be mixed with other top-level keys", [])
        entries = data["problems"]
        if not isinstance(entries, list) or not entries:
            rd.fail("expected a non-empty list of problems", ["problems"])
        return [_problem(rd, e, ["problems", i], batch=True) for i, e in enumerate(entries)]
    return [_problem(rd, data, [])]


def load_problems(path):
    with open(path, encoding="utf-8") as fh:
        return parse_problems(fh.read())


def format_number(x):
    """17 significant digits, always with a decimal point or exponent."""
    s = format(float(x), ".17g")
    return s if any(ch in s for ch in ".eEn") else s + ".0"


def result_document(pair, relation):
    """Flatten a best pair and its classification into an ordered dict."""
    return {
        "distance": pair.distance,
        "point_on_first": list(pair.point_on_first),
        "point_on_second": list(pair.point_on_second),
        "params_first": list(pair.params_first),
        "params_second": list(pair.params_second),
        "param_norm": pair.param_norm,
        "residual": list(pair.residual),
        "classification": relation.tag.value,
        "method": pair.method,
        "fallback": pair.fallback,
        "penrose_residuals": None if pair.penrose_residuals is None else list(pair.penrose_residuals),
        "orthogonality_residuals": list(pair.orthogonality),
    }


def _encode(value):
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{_encode(str(k))}: {_encode(v)}" for k, v in value.items()) + "}"
    return format_number(value)


def dumps_json(doc, indent=2):
    """JSON text for ``doc`` with every float at 17 significant digits."""
    if isinstance(doc, list):
        inner = ",\n".join(" " * indent + dumps_json(d, indent).replace("\n", "\n" + " " * indent) for d in doc)
        return "[\n" + inner + "\n]"
    lines = [f'{" " * indent}{_encode(k)}: {_encode(v)}' for k, v in doc.items()]
    return "{\n" + ",\n".join(lines) + "\n}"


def dumps_text(doc):
    width = max(len(k) for k in doc)
    out = []
    for key, value in doc.items():
        if isinstance(value, list):
            shown = "[" + ", ".join(format_number(v) for v in value) + "]"
        elif isinstance(value, bool) or value is None or isinstance(value, str):
            shown = str(value).lower() if not isinstance(value, str) else value
        else:
            shown = format_number(value)
        out.append(f"{key:<{width}}  {shown}")
    return "\n".join(out)
