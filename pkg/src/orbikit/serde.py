"""Serialization helpers shared by the command line tools.

All JSON documents carry a schema_version so downstream readers can detect
format changes; all floats are rendered through one fixed 12-significant-
digit format so identical inputs (including seeds) produce byte-identical
output files; all file writes go through a temp-file-and-rename so a
crashed run never leaves a half-written artifact.
"""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path
from typing import Iterable, Optional, Sequence

SCHEMA_VERSION = 1
OUTPUT_DIR_ENV = "ORBIKIT_OUTPUT_DIR"


def json_document(kind: str, payload: dict) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "kind": kind}
    doc.update(payload)
    return doc


def format_float(x) -> str:
    return f"{float(x):.12g}"


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def render_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            [format_float(v) if isinstance(v, float) else str(v) for v in row]
        )
    return buf.getvalue()


def atomic_write_text(path: Path, text: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def resolve_output_path(arg: Optional[str]) -> Optional[Path]:
    """None stays None (stdout); relative paths land in the directory named
    by the ORBIKIT_OUTPUT_DIR environment variable when it is set."""
    if arg is None:
        return None
    p = Path(arg)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        return Path(base) / p
    return p


def emit(text: str, path: Optional[Path]) -> Optional[Path]:
    """Write text to path atomically, or to stdout when path is None."""
    if path is None:
        print(text, end="")
        return None
    atomic_write_text(path, text)
    return path
