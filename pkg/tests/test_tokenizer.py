"""Unit tests for the line-record tokenizer."""

import pytest

from src.exceptions import MalformedRecordError
from src.tokenizer import Record, RecordTokenizer, tokenize


# Tests for Record Tokenizer
class TestRecordTokenizer:
    """Tests for the record tokenizer."""

    def test_tokenize_simple_diagram(self):
        """Test tokenizing a header and two records."""
        text = "arcs 3\nX - 1 2 3\nV + 1 2 3"

        records = RecordTokenizer().tokenize(text)

        assert len(records) == 3
        assert records[0].kind == "arcs"
        assert records[1].fields == ["X", "-", "1", "2", "3"]
        assert records[2].kind == "V"

    def test_line_numbers_skip_blank_lines(self):
        """Test that line numbers refer to the original text."""
        records = tokenize("arcs 1\n\n\nloop 1")

        assert [r.line_number for r in records] == [1, 4]

    def test_comments_are_dropped(self):
        """Test that '#' starts a comment anywhere on the line."""
        records = tokenize("# a trefoil\narcs 3  # three arcs\n   # only a comment\n")

        assert len(records) == 1
        assert records[0].fields == ["arcs", "3"]

    def test_handles_crlf_endings(self):
        """Test handling of Windows-style line endings."""
        assert len(tokenize("arcs 1\r\nloop 1\r\n")) == 2

    def test_handles_cr_only_endings(self):
        """Test handling of old Mac-style line endings."""
        assert len(tokenize("arcs 1\rloop 1")) == 2

    def test_colon_is_a_separator(self):
        """Test that row headers like 'row 2:' split on the colon."""
        records = tokenize("row 2: 2 0 1\n0:0 1")

        assert records[0].fields == ["row", "2", "2", "0", "1"]
        assert records[1].fields == ["0", "0", "1"]

    def test_columns_are_one_based(self):
        """Test that token columns point into the raw line."""
        record = tokenize("  X + 10 2 3")[0]

        assert record.columns == [3, 5, 7, 10, 12]

    def test_empty_text_returns_empty_list(self):
        """Test that empty input produces no records."""
        assert tokenize("") == []
        assert tokenize("\n  \n# nothing\n") == []


# Tests for Record
class TestRecord:
    """Tests for record field access."""

    def test_get_field_valid_index(self):
        """Test retrieving a field by index."""
        record = tokenize("X + 1 2 3")[0]

        assert record.get_field(0) == "X"
        assert record.get_field(1) == "+"
        assert record.get_field(4) == "3"

    def test_get_field_out_of_range(self):
        """Test that missing fields return the default."""
        record = Record(kind="loop", fields=["loop", "1"], line_number=1)

        assert record.get_field(5) == ""
        assert record.get_field(5, "N/A") == "N/A"
        assert record.get_field(-1, "x") == "x"

    def test_get_int(self):
        """Test integer conversion, including signed values."""
        record = tokenize("arcs -4")[0]

        assert record.get_int(1, "count") == -4

    def test_get_int_rejects_text(self):
        """Test that a non-integer field names the field and column."""
        record = tokenize("arcs three")[0]

        with pytest.raises(MalformedRecordError) as exc:
            record.get_int(1, "arc count")

        assert "expected integer arc count, got 'three'" in str(exc.value)
        assert exc.value.column == 6
        assert exc.value.line_number == 1

    def test_get_int_missing_field(self):
        """Test that a missing field is reported as missing."""
        record = tokenize("loop")[0]

        with pytest.raises(MalformedRecordError) as exc:
            record.get_int(1, "arc")

        assert "missing arc" in str(exc.value)

    def test_expect_length(self):
        """Test that the field count is enforced."""
        record = tokenize("X + 1 2")[0]

        with pytest.raises(MalformedRecordError) as exc:
            record.expect_length(5)

        assert "expected 4 values, got 3" in str(exc.value)
