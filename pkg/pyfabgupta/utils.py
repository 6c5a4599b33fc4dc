# pyfabgupta/utils.py

"""
Output helpers shared by the CLI.

This module provides:
    - JSON pretty-printing for reports
    - CSV rendering with a fixed header order
    - atomic JSON / CSV writers
    - timestamped default filenames for `--out auto`
"""

import csv
import io
import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

logger = logging.getLogger(__name__)


def _json_default(obj: Any):
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    if isinstance(obj, bytes):
        return obj.hex()
    # numpy scalars
    if hasattr(obj, "item"):
        return obj.item()
    return str(obj)


def pretty_json(data: Any) -> str:
    """
    Pretty-printed JSON with sorted keys, so equal reports render
    byte-identically.
    """
    return json.dumps(data, indent=2, sort_keys=True, default=_json_default)


def render_csv(rows: List[Dict[str, Any]], header: Optional[Sequence[str]] = None) -> str:
    """
    CSV text for a list of dict rows. The header defaults to the keys of the
    first row; missing cells are written empty.
    """
    if header is None:
        header = list(rows[0]) if rows else []
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(header), lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _write_atomic(path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    tmp.replace(path)
    logger.debug("Wrote %s", path)
    return path


def write_json_safe(path, data: Any) -> Path:
    return _write_atomic(path, pretty_json(data) + "\n")


def write_csv_safe(path, rows: List[Dict[str, Any]], header: Optional[Sequence[str]] = None) -> Path:
    return _write_atomic(path, render_csv(rows, header))


def write_text_safe(path, text: str) -> Path:
    return _write_atomic(path, text)


def timestamp_filename(prefix: str, ext: str) -> str:
    """
    Example:
        timestamp_filename("growth", "csv") -> 'growth_20250101_120000.csv'
    """
    return f"{prefix}_{datetime.now().strftime('%Y%m%d_%H%M%S')}.{ext}"
