"""CSV and JSON writers with round-trip float formatting."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path


def fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int,)) and not isinstance(v, bool):
        return str(v)
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, ".17g")
    return str(v)


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(x) for x in r])
    return buf.getvalue()


def _clean(obj):
    # json cannot carry nan/inf; store them as strings
    if isinstance(obj, float) and not math.isfinite(obj):
        return fmt(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if hasattr(obj, "item") and callable(obj.item):
        return _clean(obj.item())
    return obj


def json_text(obj) -> str:
    return json.dumps(_clean(obj), indent=2, sort_keys=True) + "\n"


def emit(text: str, out=None):
    """Write text to a path, or to stdout when ``out`` is None or '-'."""
    if out is None or str(out) == "-":
        import sys
        sys.stdout.write(text)
        return
    p = Path(out)
    if p.parent and not p.parent.exists():
        p.parent.mkdir(parents=True)
    p.write_text(text)
