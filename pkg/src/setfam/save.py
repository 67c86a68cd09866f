import json
import logging
import sys
from typing import Iterable, Optional, TextIO, Union

import pandas as pd

from .exceptions import UsageError

logger = logging.getLogger("setfam")

FORMATS = ("json", "jsonl", "csv")


def dumps(record: dict) -> str:
    return json.dumps(record, separators=(",", ":"))


def write_records(
    records: Union[dict, Iterable[dict], pd.DataFrame],
    path: Optional[str] = None,
    format: str = "json",
    stream: Optional[TextIO] = None,
):
    """
    Write command output to a file or stream.

    Parameters:
    - records: a single dict (json), an iterable of dicts (jsonl), or a
      DataFrame (csv; dict records are also accepted and tabulated).
    - path (str): Output file. When omitted, `stream` (default stdout) is
      used.
    - format (str): "json", "jsonl" or "csv".

    Returns:
    - None
    """
    if format not in FORMATS:
        raise UsageError(f"Unsupported format: {format}")

    if format == "csv":
        df = records if isinstance(records, pd.DataFrame) else None
        if df is None:
            rows = [records] if isinstance(records, dict) else list(records)
            df = pd.DataFrame([_flatten(r) for r in rows])
        text = df.to_csv(index=False, float_format="%.9f", na_rep="NA")
    elif format == "jsonl" or not isinstance(records, dict):
        if isinstance(records, pd.DataFrame):
            records = records.astype(object).where(records.notna(), None)
            records = records.to_dict(orient="records")
        text = "".join(dumps(r) + "\n" for r in records)
    else:
        text = dumps(records) + "\n"

    if path is not None:
        with open(path, "w", newline="") as f:
            f.write(text)
        logger.info(f"Wrote {format} output to {path}.")
    else:
        (stream or sys.stdout).write(text)


def _flatten(record: dict) -> dict:
    # nested params maps become "k=v,k=v" cells
    flat = {}
    for key, value in record.items():
        if isinstance(value, dict):
            value = ",".join(f"{k}={v}" for k, v in value.items())
        flat[key] = value
    return flat


def save_family(fam, path: str):
    """Save a family as {"n": .., "k": .., "sets": [..]} for --witness use."""
    with open(path, "w") as f:
        f.write(dumps(fam.to_dict()) + "\n")
    logger.info(f"Saved {len(fam)} sets to {path}.")
