import pytest

from multiderange.errors import SequenceParseError
from multiderange.sequences import (
    SequenceSlice,
    format_bfile,
    format_plain,
    parse_bfile,
    parse_plain,
    parse_terms_file,
)


class TestSequenceSlice:
    def test_absolute_indexing(self):
        s = SequenceSlice(3, (10, 11, 12))
        assert s.term(3) == 10
        assert s.term(5) == 12
        assert s.end == 6
        assert len(s) == 3

    def test_out_of_range(self):
        s = SequenceSlice(0, (1, 2))
        with pytest.raises(IndexError):
            s.term(2)
        with pytest.raises(IndexError):
            s.term(-1)


class TestBFileFormat:
    def test_format(self):
        s = SequenceSlice(0, (1, 0, 1, 2))
        assert format_bfile(s) == "0 1\n1 0\n2 1\n3 2\n"

    def test_format_nonzero_offset(self):
        s = SequenceSlice(5, (-7, 8))
        assert format_bfile(s) == "5 -7\n6 8\n"

    def test_roundtrip(self):
        s = SequenceSlice(2, (4, -5, 6000000000000000000000000007))
        assert parse_bfile(format_bfile(s)) == s

    def test_parse_skips_comments_and_blanks(self):
        text = "# header\n\n0 1\n1 5\n\n# trailing\n"
        assert parse_bfile(text) == SequenceSlice(0, (1, 5))

    def test_parse_rejects_gap(self):
        with pytest.raises(SequenceParseError):
            parse_bfile("0 1\n2 9\n")

    def test_parse_rejects_garbage(self):
        with pytest.raises(SequenceParseError):
            parse_bfile("0 1\nx y\n")
        with pytest.raises(SequenceParseError):
            parse_bfile("0 1 2\n")
        with pytest.raises(SequenceParseError):
            parse_bfile("# nothing\n")


class TestPlainFormat:
    def test_roundtrip(self):
        s = SequenceSlice(0, (1, 1, 2, 6, 24))
        assert parse_plain(format_plain(s)) == s

    def test_parse_empty_rejected(self):
        with pytest.raises(SequenceParseError):
            parse_plain("\n\n")


class TestAutodetect:
    def test_two_field_lines_mean_bfile(self):
        assert parse_terms_file("7 1\n8 4\n") == SequenceSlice(7, (1, 4))

    def test_single_field_lines_mean_plain(self):
        assert parse_terms_file("1\n4\n9\n") == SequenceSlice(0, (1, 4, 9))

    def test_leading_comment_ignored_for_detection(self):
        assert parse_terms_file("# c\n5 3\n6 1\n") == SequenceSlice(5, (3, 1))

    def test_empty_rejected(self):
        with pytest.raises(SequenceParseError):
            parse_terms_file("")
