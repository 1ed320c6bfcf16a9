"""JSON helpers, the reproducibility header and derived CSV/SVG views."""

from __future__ import annotations

import csv
import datetime as _dt
import io as _io
import json
import math
from importlib import metadata
from pathlib import Path
from typing import Any, Iterable

from flint import acb, arb, fmpq

TOOL = "triangle-forms"


def tool_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0+unknown"


def _digits_of(x: arb) -> int:
    rad = float(x.rad())
    mag = float(abs(x).upper()) or 1.0
    if rad == 0:
        return 40
    return max(5, min(400, int(-math.log10(rad / max(mag, 1e-300))) + 3))


def acb_to_json(x) -> dict:
    if isinstance(x, fmpq):
        x = acb(arb(x))
    elif not isinstance(x, acb):
        x = acb(x)
    re, im = x.real, x.imag
    d = max(_digits_of(re), _digits_of(im))
    conv = float(max(abs(re.mid()).upper(), abs(im.mid()).upper())) * 10.0 ** (1 - d)
    return {
        "re": re.mid().str(d, radius=False),
        "im": im.mid().str(d, radius=False),
        "rad": float(max(re.rad(), im.rad())) + conv,
    }


def rational_to_json(x: fmpq) -> str:
    return str(x) if x.q != 1 else str(x.p)


def header(command: str, signature=None, parameters: dict | None = None, **extra) -> dict:
    out = {
        "tool": TOOL,
        "version": tool_version(),
        "command": command,
        "signature": signature.to_json() if signature is not None else None,
        "parameters": dict(sorted((parameters or {}).items())),
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
    }
    out.update(extra)
    return out


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def strip_timestamp(doc: dict) -> dict:
    doc = json.loads(json.dumps(doc))
    doc.get("header", {}).pop("timestamp", None)
    return doc


def zeros_csv(rows: Iterable[dict]) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "re_tau", "im_tau", "root_re", "root_im", "multiplicity", "verdict"])
    for i, r in enumerate(rows):
        w.writerow([i, r["re_tau"], r["im_tau"], r["root_re"], r["root_im"], r["multiplicity"], r["verdict"]])
    return buf.getvalue()


def zeros_svg(rows: list[dict], h3: float, width: int = 480, height: int = 320) -> str:
    """Zero locations drawn in the period strip |Re tau| <= h3/2."""
    ims = [float(r["im_tau"]) for r in rows] or [1.0]
    top = max(ims) * 1.25 + 0.1
    pad = 30

    def sx(x):
        return pad + (x + h3 / 2) / h3 * (width - 2 * pad)

    def sy(y):
        return height - pad - y / top * (height - 2 * pad)

    colors = {"CM-candidate": "#1f77b4", "transcendental-candidate": "#d62728"}
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect x="{sx(-h3 / 2):.1f}" y="{sy(top):.1f}" width="{sx(h3 / 2) - sx(-h3 / 2):.1f}" '
        f'height="{sy(0) - sy(top):.1f}" fill="none" stroke="#888"/>',
        f'<line x1="{sx(0):.1f}" y1="{sy(0):.1f}" x2="{sx(0):.1f}" y2="{sy(top):.1f}" stroke="#ccc"/>',
    ]
    for r in rows:
        c = colors.get(r["verdict"], "#7f7f7f")
        parts.append(f'<circle cx="{sx(float(r["re_tau"])):.2f}" cy="{sy(float(r["im_tau"])):.2f}" '
                     f'r="4" fill="{c}"><title>{r["verdict"]}</title></circle>')
    parts.append(f'<text x="{pad}" y="{height - 8}" font-size="11">Re tau in [-h3/2, h3/2], h3 = {h3:.6g}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
