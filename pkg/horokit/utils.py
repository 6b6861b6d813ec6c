from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

import pandas as pd
from pydantic import BaseModel

from .errors import IoError
from .hyperbolic_core import Point

FLOAT_FORMAT = "%.12g"


def flatten_row(row: Union[BaseModel, Dict[str, Any]]) -> Dict[str, Any]:
    """Flatten one record into scalar columns.

    Points and coordinate pairs become ``<name>_x`` / ``<name>_y``, nested
    mappings become ``<name>_<key>``, sequences of words are joined with spaces.
    """
    data = row.model_dump() if isinstance(row, BaseModel) else dict(row)
    flat: Dict[str, Any] = {}
    for name, value in data.items():
        if isinstance(value, Point):
            flat[f"{name}_x"], flat[f"{name}_y"] = value.x, value.y
        elif isinstance(value, tuple) and len(value) == 2 and all(isinstance(v, float) for v in value):
            flat[f"{name}_x"], flat[f"{name}_y"] = value
        elif isinstance(value, dict):
            for key, inner in value.items():
                flat[f"{name}_{key:g}" if isinstance(key, float) else f"{name}_{key}"] = inner
        elif isinstance(value, (list, tuple)):
            flat[name] = " ".join(str(v) for v in value)
        else:
            flat[name] = value
    return flat


def rows_frame(rows: Iterable[Union[BaseModel, Dict[str, Any]]], columns: Optional[Sequence[str]] = None) -> pd.DataFrame:
    records: List[Dict[str, Any]] = [flatten_row(r) for r in rows]
    if columns is None:
        columns = list(records[0]) if records else []
    return pd.DataFrame.from_records(records, columns=list(columns))


def emit_csv(
    rows: Iterable[Union[BaseModel, Dict[str, Any]]],
    path: Union[str, Path],
    columns: Optional[Sequence[str]] = None,
) -> Path:
    """Write rows with fixed 12-significant-digit floats and '\\n' endings.

    An empty row list still writes the header when ``columns`` is given.
    """
    path = Path(path)
    df = rows_frame(rows, columns)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        df.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
    return path


def write_text(text: str, path: Union[str, Path]) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
    return path
