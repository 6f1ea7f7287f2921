"""
Custom exceptions for hkcolor operations.

Every error derives from HKColorError. Errors raised while reading the
line formats (diagrams, group tables, quandle tables) say which record
kind, field, line and column they refer to, so a message can be traced
back to the offending token of the input file.
"""

from typing import List, Optional


# Base Exception
class HKColorError(Exception):
    """Base exception for all hkcolor errors."""

    def __init__(
        self,
        message: str,
        record: str = None,
        field_index: int = None,
        line_number: int = None,
        column: int = None,
    ):
        self.message = message
        self.record = record
        self.field_index = field_index
        self.line_number = line_number
        self.column = column
        location = self.location()
        super().__init__(f"{message} [{location}]" if location else message)

    def location(self) -> str:
        """`record=X, field=2, line=4, column=7` for the parts that are known."""
        parts = (
            ("record", self.record or None),
            ("field", self.field_index),
            ("line", self.line_number),
            ("column", self.column),
        )
        return ", ".join(f"{key}={value}" for key, value in parts if value is not None)


# Malformed Record Error
class MalformedRecordError(HKColorError):
    """Raised when a line of a text format cannot be understood."""

    def __init__(
        self,
        record: str,
        reason: str,
        line_number: int = None,
        column: int = None,
    ):
        self.reason = reason
        super().__init__(
            f"Malformed {record} record: {reason}",
            record=record,
            line_number=line_number,
            column=column,
        )


# Diagram Validation Error
class DiagramValidationError(HKColorError):
    """Raised when a parsed diagram violates one or more invariants."""

    def __init__(self, violations: List[str]):
        self.violations = list(violations)
        count = len(self.violations)
        noun = "violation" if count == 1 else "violations"
        super().__init__(
            f"Invalid diagram ({count} {noun}): {self.violations[0]}"
        )


# File Read Error
class FileReadError(HKColorError):
    """Raised when a diagram, group or quandle file cannot be read."""

    def __init__(self, filepath: str, reason: str, kind: str = "input"):
        self.filepath = filepath
        self.reason = reason
        self.kind = kind
        super().__init__(f"Cannot read {kind} file '{filepath}': {reason}")


# Config Error
class ConfigError(HKColorError):
    """Raised when an HKCOLOR_* environment variable holds an unusable value."""

    def __init__(self, variable: str, value: str, reason: str):
        self.variable = variable
        self.value = value
        self.reason = reason
        super().__init__(f"Bad setting {variable}={value!r}: {reason}")


# Axiom Violation Error
class AxiomViolationError(HKColorError):
    """Raised when a field, group, quandle, family or representation fails its axioms."""

    def __init__(self, structure: str, axiom: str, counterexample: Optional[tuple] = None):
        self.structure = structure
        self.axiom = axiom
        self.counterexample = counterexample
        message = f"{structure} violates {axiom}"
        if counterexample is not None:
            message = f"{message} at {counterexample}"
        super().__init__(message)


# Descriptor Error
class DescriptorError(HKColorError):
    """Raised when a field, group or family descriptor string is invalid."""

    def __init__(self, descriptor: str, reason: str):
        self.descriptor = descriptor
        self.reason = reason
        super().__init__(f"Invalid descriptor '{descriptor}': {reason}")


# Group Mismatch Error
class GroupMismatchError(HKColorError):
    """Raised when objects built over different groups are combined."""

    def __init__(self, expected: str, actual: str):
        self.expected = expected
        self.actual = actual
        super().__init__(f"Group mismatch: expected {expected}, got {actual}")


# Invalid Flow Error
class InvalidFlowError(HKColorError):
    """Raised when an arc assignment does not satisfy the Wirtinger relations."""

    def __init__(self, reason: str, arc: int = None):
        self.arc = arc
        super().__init__(f"Invalid G-flow: {reason}", field_index=arc)


# Move Not Applicable Error
class MoveNotApplicableError(HKColorError):
    """Raised when a Reidemeister move does not match the diagram at its location."""

    def __init__(self, kind: str, reason: str):
        self.kind = kind
        self.reason = reason
        super().__init__(f"{kind} not applicable: {reason}")


# Brute Force Budget Error
class BruteForceBudgetError(HKColorError):
    """Raised when an exhaustive search exceeds its assignment budget."""

    def __init__(self, budget: int, what: str = "search"):
        self.budget = budget
        self.what = what
        super().__init__(
            f"Brute-force {what} exceeded budget of {budget} assignments "
            "(set HKCOLOR_BRUTE_BUDGET to raise it)"
        )


# Genus Mismatch Error
class GenusMismatchError(HKColorError):
    """Raised when a declared genus disagrees with the diagram."""

    def __init__(self, declared: int, computed: int):
        self.declared = declared
        self.computed = computed
        super().__init__(
            f"Declared genus {declared} does not match diagram genus {computed}"
        )


# Genus Order Error
class GenusOrderError(HKColorError):
    """Raised when a constituent test is given genera in the wrong order."""

    def __init__(self, small: int, large: int, strict: bool = True):
        self.small = small
        self.large = large
        relation = "<" if strict else "<="
        super().__init__(
            f"Constituent test needs g' {relation} g, got g'={small} and g={large}"
        )
