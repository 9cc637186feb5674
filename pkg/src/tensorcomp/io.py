"""File formats and report emission.

Tensor text format (canonical): the first non-comment line is ``m n``;
each following line is ``i1 i2 ... im value`` with 1-based indices and a
decimal or ``p/q`` rational value; ``#`` starts a comment. Duplicate index
tuples are summed and zeros dropped, so files round-trip bit-exactly up to
entry order.

LCP text format: ``k``, then k rows of k rational entries, then q on one
line.
"""

from __future__ import annotations

import dataclasses
import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from .lcp import LcpInstance
from .linalg import Matrix, Vec, vec
from .tensor import SparseTensor


class TensorFormatError(ValueError):
    """Malformed tensor/matrix text; the message carries the line number."""


def _parse_value(token: str, lineno: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise TensorFormatError(f"line {lineno}: bad value {token!r}: {exc}") from None


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_tensor(text: str) -> SparseTensor:
    lines = list(_content_lines(text))
    if not lines:
        raise TensorFormatError("empty input: missing 'm n' header")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise TensorFormatError(f"line {lineno}: header must be 'm n', got {header!r}")
    try:
        order, dim = int(parts[0]), int(parts[1])
    except ValueError:
        raise TensorFormatError(f"line {lineno}: header must hold two integers") from None
    entries: list[tuple[tuple[int, ...], Fraction]] = []
    for lineno, line in lines[1:]:
        toks = line.split()
        if len(toks) != order + 1:
            raise TensorFormatError(
                f"line {lineno}: expected {order} indices and a value, got {len(toks)} fields")
        try:
            idx = tuple(int(tk) for tk in toks[:-1])
        except ValueError:
            raise TensorFormatError(f"line {lineno}: indices must be integers") from None
        if any(not 1 <= i <= dim for i in idx):
            raise TensorFormatError(f"line {lineno}: index out of range [1, {dim}]")
        entries.append((idx, _parse_value(toks[-1], lineno)))
    try:
        return SparseTensor(order, dim, entries)
    except ValueError as exc:
        raise TensorFormatError(str(exc)) from None


def fraction_text(x: Fraction | int | float) -> str:
    if isinstance(x, float):
        return repr(x)
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def emit_tensor(t: SparseTensor, header_comment: str | None = None) -> str:
    out = []
    if header_comment:
        for line in header_comment.splitlines():
            out.append(f"# {line}")
    out.append(f"{t.order} {t.dim}")
    for idx in sorted(t.entries):
        out.append(" ".join(str(i) for i in idx) + " " + fraction_text(t.entries[idx]))
    return "\n".join(out) + "\n"


def parse_vector(text: str) -> Vec:
    toks = text.replace(",", " ").split()
    if not toks:
        raise ValueError("empty vector")
    return vec(Fraction(tk) for tk in toks)


def parse_lcp(text: str) -> LcpInstance:
    lines = list(_content_lines(text))
    if not lines:
        raise TensorFormatError("empty input: missing size line")
    lineno, first = lines[0]
    try:
        k = int(first.split()[0])
    except ValueError:
        raise TensorFormatError(f"line {lineno}: size must be an integer") from None
    if len(lines) != k + 2:
        raise TensorFormatError(
            f"expected {k} matrix rows plus a q line after the size, got {len(lines) - 1}")
    rows = []
    for lineno, line in lines[1:k + 1]:
        toks = line.split()
        if len(toks) != k:
            raise TensorFormatError(f"line {lineno}: expected {k} entries, got {len(toks)}")
        rows.append([_parse_value(tk, lineno) for tk in toks])
    lineno, qline = lines[k + 1]
    qtoks = qline.split()
    if len(qtoks) != k:
        raise TensorFormatError(f"line {lineno}: q must hold {k} entries")
    q = vec(_parse_value(tk, lineno) for tk in qtoks)
    return LcpInstance(Matrix.from_rows(rows), q)


def emit_lcp(inst: LcpInstance) -> str:
    out = [str(inst.size)]
    for row in inst.m.data:
        out.append(" ".join(fraction_text(x) for x in row))
    out.append(" ".join(fraction_text(x) for x in inst.q))
    return "\n".join(out) + "\n"


class OutputFormat(enum.Enum):
    TEXT = "text"
    JSON = "json"


class ArithmeticMode(enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


@dataclass
class RunConfig:
    mode: ArithmeticMode = ArithmeticMode.EXACT
    seeds: int = 0
    output_format: OutputFormat = OutputFormat.TEXT
    lcp_cap: int = 12
    tcp_cap: int = 4
    matrix_cap: int = 8
    budget: int = 40

    def __post_init__(self) -> None:
        if min(self.lcp_cap, self.tcp_cap, self.matrix_cap, self.budget) <= 0:
            raise ValueError("caps and budget must be positive")


def to_jsonable(obj):
    """Recursively convert report objects to JSON-ready structures;
    Fractions become exact ``p/q`` strings."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Fraction):
        return fraction_text(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, Matrix):
        return [[fraction_text(x) for x in row] for row in obj.data]
    if isinstance(obj, SparseTensor):
        return {
            "order": obj.order,
            "dim": obj.dim,
            "entries": {
                " ".join(str(i) for i in idx): fraction_text(v)
                for idx, v in sorted(obj.entries.items())
            },
        }
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {"kind": type(obj).__name__}
        for f in dataclasses.fields(obj):
            out[f.name] = to_jsonable(getattr(obj, f.name))
        return out
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in items]
    return repr(obj)


def render_text(payload, indent: int = 0) -> str:
    """Generic aligned text rendering of a jsonable payload."""
    pad = "  " * indent
    data = to_jsonable(payload)
    return _render(data, indent)


def _render(data, indent: int) -> str:
    pad = "  " * indent
    if isinstance(data, dict):
        lines = []
        for k, v in data.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_render_scalar(v)}")
        return "\n".join(lines)
    if isinstance(data, list):
        if all(not isinstance(v, (dict, list)) for v in data):
            return f"{pad}[{', '.join(_render_scalar(v) for v in data)}]"
        return "\n".join(_render(v, indent) if isinstance(v, (dict, list))
                         else f"{pad}- {_render_scalar(v)}" for v in data)
    return f"{pad}{_render_scalar(data)}"


def _render_scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_render_scalar(x) for x in v) + "]"
    return json.dumps(v) if isinstance(v, str) else str(v)


def emit_report(payload, output_format: OutputFormat = OutputFormat.TEXT) -> str:
    if output_format == OutputFormat.JSON:
        return json.dumps(to_jsonable(payload), indent=2, sort_keys=False)
    if output_format == OutputFormat.TEXT:
        return render_text(payload)
    raise ValueError(f"unknown output format {output_format!r}")
