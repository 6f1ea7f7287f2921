"""
Line-record tokenizer shared by the diagram, group and quandle formats.

All three formats are line oriented: one record per line, whitespace
separated tokens, '#' starting a comment. A colon after a row header
("row 3:", "2:") is treated as a separator. Records remember the line and
column of every token so parse errors can point at the offending input.
"""

import re
from dataclasses import dataclass, field
from typing import List, Optional

from .exceptions import MalformedRecordError

COMMENT_CHARACTER = "#"
_TOKEN_RE = re.compile(r"[^\s:]+")


# Record Dataclass
@dataclass
class Record:
    """
    One non-empty line of input split into tokens.

    The record kind (first token) counts as field 0, so for
    "X + 1 2 3" the sign is field 1 and the over arc is field 2.
    """

    kind: str
    fields: List[str]
    line_number: int
    columns: List[int] = field(default_factory=list)
    raw_text: str = ""

    def get_field(self, index: int, default: str = "") -> str:
        """
        Safely retrieve a field by index.

        Args:
            index: 0-based field index (the kind is field 0)
            default: Value to return if the field doesn't exist

        Returns:
            Field text or default
        """
        if index < 0 or index >= len(self.fields):
            return default
        return self.fields[index] or default

    def column_of(self, index: int) -> Optional[int]:
        if 0 <= index < len(self.columns):
            return self.columns[index]
        return None

    def get_int(self, index: int, name: str) -> int:
        """
        Read field `index` as a (possibly signed) integer.

        Raises:
            MalformedRecordError: If the field is missing or not an integer
        """
        text = self.get_field(index)
        if not text:
            raise MalformedRecordError(
                self.kind,
                f"missing {name}",
                line_number=self.line_number,
                column=self.column_of(len(self.fields) - 1),
            )
        try:
            return int(text)
        except ValueError:
            raise MalformedRecordError(
                self.kind,
                f"expected integer {name}, got '{text}'",
                line_number=self.line_number,
                column=self.column_of(index),
            )

    def expect_length(self, count: int) -> None:
        """Require exactly `count` fields including the kind."""
        if len(self.fields) != count:
            column = self.column_of(count) if len(self.fields) > count else None
            raise MalformedRecordError(
                self.kind,
                f"expected {count - 1} values, got {len(self.fields) - 1}",
                line_number=self.line_number,
                column=column,
            )


# Record Tokenizer
class RecordTokenizer:
    """Splits text into Records, dropping comments and blank lines."""

    def __init__(self, comment_character: str = COMMENT_CHARACTER):
        self.comment_character = comment_character

    def normalize_line_endings(self, text: str) -> str:
        return text.replace("\r\n", "\n").replace("\r", "\n")

    def tokenize(self, text: str) -> List[Record]:
        """
        Tokenize a whole document.

        Args:
            text: Raw document text

        Returns:
            List of Records in input order
        """
        records = []
        for line_number, line in enumerate(
            self.normalize_line_endings(text).split("\n"), start=1
        ):
            content = line.split(self.comment_character, 1)[0]
            matches = list(_TOKEN_RE.finditer(content))
            if not matches:
                continue
            records.append(
                Record(
                    kind=matches[0].group(),
                    fields=[m.group() for m in matches],
                    line_number=line_number,
                    columns=[m.start() + 1 for m in matches],
                    raw_text=line,
                )
            )
        return records


def tokenize(text: str) -> List[Record]:
    """Convenience wrapper around RecordTokenizer."""
    return RecordTokenizer().tokenize(text)
