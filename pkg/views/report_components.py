"""
Report Components
Text and json-lines rendering of results and verification reports for the CLI
"""
import json
import os
import sys
from typing import Any, Dict, Iterable, List, Optional, TextIO

import numpy as np
import pandas as pd

from models.graph import Graph, square_adjacency
from models.reports import FAIL, PASS, UNDECIDED, VerificationReport

TEXT = "text"
JSON_LINES = "json-lines"
OUTPUT_FORMATS = (TEXT, JSON_LINES)

COLORS = {PASS: "\033[32m", FAIL: "\033[31m", UNDECIDED: "\033[33m"}
RESET = "\033[0m"


def color_enabled(stream: TextIO) -> bool:
    """Colour only on a terminal and only when NO_COLOR is unset"""
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def _plain(value: Any) -> Any:
    """JSON-safe copy with numpy integers and arrays turned into Python values"""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


class ReportRenderer:
    """Writes one result per call in the selected output format"""

    def __init__(self, output_format: str = TEXT, stream: Optional[TextIO] = None, color: Optional[bool] = None):
        self.output_format = output_format
        self.stream = stream or sys.stdout
        self.color = color_enabled(self.stream) if color is None else color

    @property
    def json(self) -> bool:
        return self.output_format == JSON_LINES

    def _write(self, text: str) -> None:
        self.stream.write(text + "\n")

    def record(self, record: Dict) -> None:
        self._write(json.dumps(_plain(record), sort_keys=True, ensure_ascii=False))

    def line(self, text: str = "") -> None:
        """Free text; suppressed in json-lines mode"""
        if not self.json:
            self._write(text)

    def fields(self, kind: str, values: Dict[str, Any]) -> None:
        """'key: value' lines, or one record tagged with its kind"""
        if self.json:
            self.record({'kind': kind, **values})
            return
        for key, value in values.items():
            if isinstance(value, (list, tuple)):
                value = ", ".join(str(v) for v in value) if value else "-"
            self._write(f"{key}: {value}")

    def lines(self, kind: str, items: Iterable[str]) -> None:
        items = list(items)
        if self.json:
            self.record({'kind': kind, 'lines': items})
            return
        for item in items:
            self._write(item)

    def status_label(self, status: str) -> str:
        label = status.upper()
        if self.color:
            return f"{COLORS.get(status, '')}{label}{RESET}"
        return label

    def report(self, report: VerificationReport) -> None:
        """One line (or record) per check, then an overall status"""
        if self.json:
            for check in report.checks:
                self.record({'kind': 'check', 'subject': report.subject, **check.to_record()})
            self.record({'kind': 'summary', 'subject': report.subject, 'status': report.status,
                         **report.summary()})
            return
        self._write(f"{report.subject}")
        for check in report.checks:
            optional = "" if check.required else " (informational)"
            detail = f": {check.detail}" if check.detail else ""
            self._write(f"  {check.name}: {self.status_label(check.status)}{optional}{detail}")
        self._write(f"status: {self.status_label(report.status)}")

    def notes(self, notes: List[str]) -> None:
        for note in notes:
            if self.json:
                self.record({'kind': 'note', 'note': note})
            else:
                self._write(f"note: {note}")

    @staticmethod
    def adjacency_frame(g: Graph) -> pd.DataFrame:
        a = square_adjacency(g)
        return pd.DataFrame([[int(x) for x in row] for row in a.tolist()], index=list(g.vertices),
                            columns=list(g.vertices))

    def adjacency(self, g: Graph) -> None:
        frame = self.adjacency_frame(g)
        if self.json:
            self.record({'kind': 'adjacency', 'vertices': list(g.vertices), 'matrix': frame.values.tolist()})
            return
        self._write("adjacency:")
        for row in frame.to_string().splitlines():
            self._write(f"  {row}")

    def error(self, code: str, message: str, stream: Optional[TextIO] = None) -> None:
        """Diagnostics go to stderr in every format"""
        (stream or sys.stderr).write(f"error[{code}]: {message}\n")
