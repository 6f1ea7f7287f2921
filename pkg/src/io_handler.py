"""
File I/O for diagrams, groups, quandles and reports.

Handles reading the line formats from disk, resolving `catalog:<name>`
references, and writing JSON lines.
"""

import json
import logging
from functools import partial
from pathlib import Path
from typing import Iterable, Optional, TextIO, Union

from .catalog import get_entry
from .exceptions import DescriptorError, FileReadError
from .groups import FiniteGroup, parse_group_descriptor, parse_group_text
from .models import Diagram
from .parser import DiagramParser
from .quandles import GFamily, family_from_descriptor
from .representations import parse_general_linear_descriptor

LOG = logging.getLogger(__name__)

# Records are ASCII tokens; other bytes can only sit in '#' comments.
# latin-1 decodes every byte, so it goes last.
FALLBACK_ENCODINGS = ["cp1252", "latin-1"]
CATALOG_PREFIX = "catalog:"


def _line_of(data: bytes, offset: int) -> int:
    return data.count(b"\n", 0, offset) + 1


# Read Text File
def read_text_file(filepath: Union[str, Path], kind: str = "diagram") -> str:
    """
    Read a diagram, group or quandle file from disk.

    UTF-8 (with or without a byte order mark) is expected. Files saved by
    editors in a legacy code page still load: the undecodable line is
    logged and the file is decoded as cp1252, or latin-1 as a last resort.

    Args:
        filepath: Path to the file
        kind: What the file holds, used in error messages

    Returns:
        File content as string

    Raises:
        FileReadError: If the file is missing, unreadable or holds no records
    """
    filepath = Path(filepath)

    if not filepath.exists():
        raise FileReadError(str(filepath), "file does not exist", kind)

    if not filepath.is_file():
        raise FileReadError(str(filepath), "path is not a file", kind)

    try:
        data = filepath.read_bytes()
    except OSError as e:
        raise FileReadError(str(filepath), e.strerror or str(e), kind)

    if not data.strip():
        raise FileReadError(str(filepath), "file is empty", kind)

    try:
        return data.decode("utf-8-sig")
    except UnicodeDecodeError as e:
        line = _line_of(data, e.start)
        bad_byte = data[e.start]

    for encoding in FALLBACK_ENCODINGS:
        try:
            text = data.decode(encoding)
        except UnicodeDecodeError:
            continue
        LOG.warning(
            "%s: byte 0x%02x on line %d is not UTF-8, read the %s file as %s",
            filepath, bad_byte, line, kind, encoding,
        )
        return text

    raise FileReadError(str(filepath), f"line {line} is not UTF-8", kind)


def _catalog_entry(reference: str):
    try:
        return get_entry(reference[len(CATALOG_PREFIX):])
    except KeyError as e:
        raise FileReadError(reference, str(e.args[0]), "diagram")


# Load Diagram
def load_diagram(source: Union[str, Path], strict: bool = True) -> Diagram:
    """
    Load a diagram from a file or from the catalog.

    Args:
        source: File path, or `catalog:<name>`
        strict: Raise on structural violations

    Returns:
        The diagram, named after the catalog entry or the file stem

    Raises:
        FileReadError: If the file (or catalog entry) cannot be found
        MalformedRecordError: If a line cannot be read
        DiagramValidationError: If the diagram is invalid (strict mode)
    """
    text = str(source)
    if text.startswith(CATALOG_PREFIX):
        return _catalog_entry(text).diagram()
    path = Path(source)
    result = DiagramParser(strict_mode=strict).parse(read_text_file(path), name=path.stem)
    for warning in result.warnings:
        LOG.warning("%s: %s", path, warning)
    return result.diagram


def load_diagram_with_warnings(source: Union[str, Path]):
    """Lenient load returning the ParseResult, for validation reports."""
    text = str(source)
    if text.startswith(CATALOG_PREFIX):
        entry = _catalog_entry(text)
        return DiagramParser(strict_mode=False).parse(entry.payload_text(), name=entry.name)
    path = Path(source)
    return DiagramParser(strict_mode=False).parse(read_text_file(path), name=path.stem)


# Load Group
def load_group(descriptor: str) -> FiniteGroup:
    """
    A group from a descriptor (z<k>, s<n>, trivial, gl(d,F)) or a group file.

    Raises:
        DescriptorError: If the text is neither a descriptor nor a file
    """
    text = descriptor.strip()
    if text.lower().startswith("gl("):
        return parse_general_linear_descriptor(text)[0]
    path = Path(text)
    if path.is_file():
        return parse_group_text(read_text_file(path, kind="group"), name=path.stem)
    return parse_group_descriptor(text)


# Load Family
def load_family(descriptor: str, group: Optional[FiniteGroup] = None) -> GFamily:
    """
    A G-family from its descriptor; zk(<file>) reads the quandle file.

    Raises:
        DescriptorError: If the family does not live over `group`
    """
    family = family_from_descriptor(descriptor, read_text=partial(read_text_file, kind="quandle"))
    if group is not None and family.group != group:
        raise DescriptorError(
            descriptor,
            f"family is defined over {family.group.name} (order {family.group.order}), "
            f"not {group.name} (order {group.order})",
        )
    return family


# Write JSON Lines
def write_json_lines(records: Iterable[dict], stream: TextIO) -> int:
    """
    Write one JSON object per line.

    Returns:
        Number of records written
    """
    count = 0
    for record in records:
        stream.write(json.dumps(record, sort_keys=False))
        stream.write("\n")
        count += 1
    return count


def write_json_file(records: Iterable[dict], filepath: Union[str, Path]) -> int:
    with open(filepath, "w", encoding="utf-8") as f:
        return write_json_lines(records, f)
