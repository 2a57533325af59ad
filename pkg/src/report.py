import json
import os
from datetime import datetime, timezone

import pandas as pd
import pandera as pa
from pandera import Check, Column

from src.config import TOOLKIT_VERSION
from src.numeric_core import ExactRational

STATUSES = ["ok", "violation", "counterexample"]

# CSV projection: one row per instance, exact values already strings.
RECORD_SCHEMA = pa.DataFrameSchema(
    {
        "instance_id": Column(str, unique=True),
        "command": Column(str),
        "status": Column(str, Check.isin(STATUSES)),
    },
    strict=False,
)


def to_exact(value):
    """
    Convert a value for a report.

    Integers become decimal strings and exact rationals ``"num/den"`` in
    lowest terms, so no consumer ever sees a rounded exact value. Booleans,
    floats and strings pass through; containers are converted recursively.
    """
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, ExactRational):
        return str(value)
    if isinstance(value, dict):
        return {str(key): to_exact(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_exact(item) for item in value]
    return value


def approx(value):
    """Float companion of an exact rational, or None."""
    return value.approx() if isinstance(value, ExactRational) else None


def build_envelope(config_echo, records, summary, timestamp=True):
    """
    Assemble the report envelope.

    Records are sorted by instance id so the output does not depend on the
    order in which instances were evaluated.
    """
    envelope = {
        "toolkit_version": TOOLKIT_VERSION,
        "config": to_exact(config_echo),
        "records": [to_exact(record) for record in sorted(records, key=lambda r: r["instance_id"])],
        "summary": to_exact(summary),
    }
    if timestamp:
        envelope["timestamp"] = datetime.now(timezone.utc).isoformat()
    return envelope


def envelope_to_json(envelope):
    return json.dumps(envelope, indent=2, sort_keys=True) + "\n"


def records_frame(records):
    """
    Flat projection of serialised records: scalars stay as they are, nested
    values are stored as JSON strings.
    """
    rows = []
    for record in records:
        rows.append(
            {
                key: json.dumps(value, sort_keys=True) if isinstance(value, (dict, list)) else value
                for key, value in record.items()
            }
        )
    frame = pd.DataFrame(rows)
    if frame.empty:
        frame = pd.DataFrame({"instance_id": pd.Series(dtype=str), "command": pd.Series(dtype=str),
                              "status": pd.Series(dtype=str)})
    return frame


def envelope_to_csv(envelope):
    frame = records_frame(envelope["records"])
    RECORD_SCHEMA.validate(frame, lazy=True)
    return frame.to_csv(index=False)


def write_report(envelope, out_path=None, fmt="json"):
    """
    Serialise the envelope as JSON or CSV, to ``out_path`` or as a string.

    Returns the text that was written.
    """
    text = envelope_to_json(envelope) if fmt == "json" else envelope_to_csv(envelope)
    if out_path:
        directory = os.path.dirname(out_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(out_path, "w", encoding="utf-8") as f:
            f.write(text)
    return text


def summary_table(min_slack_by_h):
    """Markdown table of the smallest slack per H, for the terminal."""
    frame = pd.DataFrame(
        [
            {"H": h, "min slack": entry["slack"], "approx": entry["slack_approx"], "attained at G": entry["g"]}
            for h, entry in sorted(min_slack_by_h.items())
        ]
    )
    if frame.empty:
        return "(no instances)"
    return frame.to_markdown(index=False)
