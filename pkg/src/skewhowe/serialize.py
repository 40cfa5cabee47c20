"""Wire formats shared by the CLI and the library: exact scalars, metadata headers, CSV."""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Iterable, Sequence

from . import __version__


def frac_to_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def str_to_frac(s: str) -> Fraction:
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den or 1))


def jsonable(obj: Any) -> Any:
    """Recursively convert tuples, Fractions and numpy scalars to JSON-friendly values."""
    if isinstance(obj, Fraction):
        return frac_to_str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        try:
            return jsonable(obj.item())
        except (TypeError, ValueError):
            pass
    if hasattr(obj, "tolist"):
        return jsonable(obj.tolist())
    return obj


def _without_out(argv: Sequence[str]) -> list[str]:
    # the destination is not part of the run, so copies written elsewhere stay identical
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
        elif a == "--out":
            skip = True
        elif not a.startswith("--out="):
            out.append(a)
    return out


def metadata(command: str, argv: Sequence[str] | None, seed: int | None, params: dict) -> dict:
    return {
        "version": __version__,
        "command": command,
        "argv": _without_out(argv) if argv is not None else None,
        "seed": seed,
        "params": jsonable(params),
    }


def dumps_json(payload: dict) -> str:
    return json.dumps(jsonable(payload), indent=2, sort_keys=False) + "\n"


def csv_text(meta: dict | None, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """CSV with ``# key: value`` metadata lines ahead of the column header."""
    buf = io.StringIO()
    if meta is not None:
        for key, value in meta.items():
            buf.write(f"# {key}: {json.dumps(jsonable(value), sort_keys=True)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _cell(v):
    if isinstance(v, Fraction):
        return frac_to_str(v)
    if isinstance(v, float):
        return repr(float(v))
    if isinstance(v, (list, tuple)):
        return json.dumps(list(v))
    if hasattr(v, "item"):
        return _cell(v.item())
    return v


def read_csv(text: str) -> tuple[dict, list[dict]]:
    """Inverse of :func:`csv_text`: metadata dict and rows as dicts of strings."""
    meta = {}
    body = []
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition(": ")
            meta[key] = json.loads(value)
        else:
            body.append(line)
    rows = list(csv.DictReader(body))
    return meta, rows
