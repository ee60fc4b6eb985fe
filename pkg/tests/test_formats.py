import pytest

from argval.errors import FileFormatError
from argval.formats import af_to_text, load_af, load_vaf, parse_af, parse_vaf, vaf_to_text


class TestAF:
    def test_example1_fixture(self, data_dir):
        f = load_af(data_dir / "example1.af")
        assert f.nodes == ("A", "B", "C", "D") or list(f.nodes) == ["A", "B", "C", "D"]
        assert len(f.attacks) == 5

    def test_empty(self):
        f = parse_af("")
        assert len(f.nodes) == 0

    @pytest.mark.parametrize(
        "text, line",
        [
            ("att(a,b).\n", 1),
            ("arg(a).\narg(a).\n", 2),
            ("arg(a).\nfoo(a).\n", 2),
            ("arg(a)\n", 1),
            ("arg(a).\narg(b).\natt(a,b).\natt(a,b).\n", 4),
        ],
    )
    def test_errors_carry_line(self, text, line):
        with pytest.raises(FileFormatError) as e:
            parse_af(text)
        assert e.value.line == line

    def test_comments(self):
        assert parse_af("% nothing\narg(a). % trailing\n").nodes == parse_af("arg(a).").nodes

    def test_round_trip(self, data_dir):
        f = load_af(data_dir / "example1.af")
        assert parse_af(af_to_text(f)) == f
        assert af_to_text(parse_af(af_to_text(f))) == af_to_text(f)


class TestVAF:
    def test_kb0_fixture(self, data_dir):
        vf = load_vaf(data_dir / "vaf_kb0.vaf")
        assert vf.values == {"y", "w"}
        assert set(vf.audiences) == {"y", "w"}

    @pytest.mark.parametrize("name", ["vaf_kb0.vaf", "vaf_kb1.vaf"])
    def test_round_trip(self, data_dir, name):
        vf = load_vaf(data_dir / name)
        text = vaf_to_text(vf)
        again = parse_vaf(text)
        assert again == vf
        assert vaf_to_text(again) == text

    def test_missing_value(self):
        with pytest.raises(FileFormatError):
            parse_vaf("arg(a).\narg(b).\nval(a,v).\naudience(x, v).\n")

    def test_audience_missing_value(self):
        with pytest.raises(FileFormatError):
            parse_vaf("arg(a).\narg(b).\nval(a,v).\nval(b,u).\naudience(x, v).\n")

    def test_value_for_unknown_argument(self):
        with pytest.raises(FileFormatError):
            parse_vaf("arg(a).\nval(a,v).\nval(b,v).\n")


class TestKnowledgeBases:
    @pytest.mark.parametrize("name", ["kb0.kb", "kb1.kb"])
    def test_round_trip(self, data_dir, name):
        from argval.logic import KnowledgeBase, load_kb

        kb = load_kb(data_dir / name)
        assert KnowledgeBase.from_text(kb.to_text()) == kb
