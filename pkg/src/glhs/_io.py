"""CSV/JSON writers shared by the serializable result types."""

from __future__ import annotations

import contextlib
import io
import json
import math
import sys
from pathlib import Path
from typing import Any, Iterable, Sequence, TextIO, Union

PathLike = Union[str, Path, TextIO, None]


def fmt(x: Any) -> str:
    """Render a number with 17 significant digits (round-trips a double)."""
    if isinstance(x, (int,)) and not isinstance(x, bool):
        return str(x)
    return format(float(x), ".17g")


@contextlib.contextmanager
def _open(dest: PathLike):
    if dest is None or dest == "-":
        yield sys.stdout
    elif isinstance(dest, io.TextIOBase) or hasattr(dest, "write"):
        yield dest
    else:
        with open(dest, "w", newline="") as fh:
            yield fh


def write_csv(dest: PathLike, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    with _open(dest) as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")


def jsonable(obj: Any) -> Any:
    """Convert numpy scalars/arrays and non-finite floats into plain JSON values."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "tolist"):
        return jsonable(obj.tolist())
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(jsonable(obj), indent=2, sort_keys=False, allow_nan=False)


def write_json(dest: PathLike, obj: Any) -> None:
    with _open(dest) as fh:
        fh.write(dumps(obj) + "\n")
