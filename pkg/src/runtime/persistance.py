"""Atomic persistence of operator results.

Every file is first written to a temporary sibling and then moved over the target, so a
reader never sees a half-written file.
"""

import io
import json
import os
import tempfile
from pathlib import Path

from pandas import DataFrame

# Seventeen significant digits round-trip every double.
FLOAT_FORMAT = "%.17g"


def atomic_write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    handle, temporary = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(handle, "w", encoding="utf-8", newline="") as file:
            file.write(text)
        os.replace(temporary, path)
    except BaseException:
        Path(temporary).unlink(missing_ok=True)
        raise


def render_csv(df: DataFrame) -> str:
    buffer = io.StringIO()
    df.to_csv(
        buffer,
        index=False,
        float_format=FLOAT_FORMAT,
        lineterminator="\n",
        na_rep="",
    )
    return buffer.getvalue()


def write_csv(df: DataFrame, path: Path):
    atomic_write(path, render_csv(df))


def write_json(document: dict, path: Path):
    atomic_write(path, json.dumps(document, indent=2, allow_nan=False) + "\n")
