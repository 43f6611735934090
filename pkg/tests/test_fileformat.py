"""Unit tests for quiver, module and complex files."""

from pathlib import Path

import pytest

from quiver_tilt.exceptions import ParseError
from quiver_tilt.fileformat import (
    ComplexFile,
    QuiverFile,
    load_candidate,
    parse_module_spec,
    parse_module_text,
    parse_relation,
)
from quiver_tilt.modrep import is_isomorphic, interval_module
from quiver_tilt.tilting import ConeStep, ShiftStep, verify_generation

DATA = Path(__file__).resolve().parent.parent / "data"


def body_lines(path: Path) -> list[str]:
    lines = [line.split("#", 1)[0].strip() for line in path.read_text().splitlines()]
    return [line for line in lines if line]


class TestRelations:
    """Tests for relation parsing."""

    def test_word_order(self):
        """Test that the rightmost arrow is applied first."""
        spec = parse_relation("a2*a1")
        assert spec.terms == [(1, ["a1", "a2"])]
        assert spec.display() == "a2*a1"

    def test_coefficients_and_signs(self):
        """Test integer coefficients and subtraction."""
        spec = parse_relation("b*a - 2*d*c")
        assert spec.terms == [(1, ["a", "b"]), (-2, ["c", "d"])]
        assert spec.display() == "b*a - 2*d*c"

    @pytest.mark.parametrize("text", ["a*", "2 a", "a b", "a / b", ""])
    def test_malformed(self, text):
        """Test that malformed relations raise ParseError."""
        with pytest.raises(ParseError):
            parse_relation(text)


class TestQuiverFile:
    """Tests for .quiver files."""

    @pytest.mark.parametrize("name", ["A3", "A3_square", "R", "S"])
    def test_serialize_matches_file(self, name):
        """Test that load, build and serialize reproduce the file body."""
        path = DATA / "quivers" / f"{name}.quiver"
        algebra = QuiverFile.load(path).to_algebra()
        assert QuiverFile.from_algebra(algebra).serialize().splitlines() == body_lines(path)

    def test_loaded_algebras(self):
        """Test the dimensions of the shipped algebras."""
        r = QuiverFile.load(DATA / "quivers" / "R.quiver").to_algebra()
        s = QuiverFile.load(DATA / "quivers" / "S.quiver").to_algebra()
        assert (r.dim, s.dim) == (53, 53)
        assert r.field.name == "F101"
        assert r.name == "R"

    def test_field_override(self, qq):
        """Test building over another field than the file declares."""
        a = QuiverFile.load(DATA / "quivers" / "A3_square.quiver").to_algebra(qq)
        assert a.field == qq
        assert a.dim == 5

    def test_error_carries_line_number(self):
        """Test the line number of an undeclared vertex."""
        text = "field Q\nvertex 1\narrow a: 1 -> 2\n"
        with pytest.raises(ParseError) as info:
            QuiverFile.parse(text)
        assert info.value.line == 3
        assert str(info.value).startswith("line 3:")

    @pytest.mark.parametrize("text", [
        "",
        "vertex 1\n",
        "field Q\n",
        "field Q\nfield F2\nvertex 1\n",
        "field F6\nvertex 1\n",
        "field Q\nvertex 1\nvertex 1\n",
        "field Q\nvertex 1\nvertex 2\narrow a: 1 -> 2\narrow a: 1 -> 2\n",
        "field Q\nvertex 1\nrelation a*b\n",
        "field Q\nnode 1\n",
    ])
    def test_rejected_files(self, text):
        """Test that malformed quiver files raise ParseError."""
        with pytest.raises(ParseError):
            QuiverFile.parse(text)


class TestModuleSpecs:
    """Tests for module specs and module files."""

    @pytest.mark.parametrize("spec,dims", [
        ("P3", (1, 1, 1)),
        ("projective:2", (1, 1, 0)),
        ("S2", (0, 1, 0)),
        ("simple:3", (0, 0, 1)),
        ("I2-3", (0, 1, 1)),
        ("interval:1:2", (1, 1, 0)),
    ])
    def test_short_specs(self, a3, spec, dims):
        """Test the accepted spellings of a module."""
        assert parse_module_spec(a3, spec).dims == dims

    def test_unknown_spec(self, a3):
        """Test that an unrecognized spec raises ParseError."""
        with pytest.raises(ParseError):
            parse_module_spec(a3, "Q3")

    def test_unknown_vertex(self, a3):
        """Test that a bad vertex surfaces as ParseError."""
        with pytest.raises(ParseError):
            parse_module_spec(a3, "P7")

    def test_interval_file(self, r_alg):
        """Test the hand-written interval [2, 5]."""
        m = parse_module_spec(r_alg, str(DATA / "modules" / "interval_2_5.module"))
        assert is_isomorphic(m, interval_module(r_alg, 2, 5))

    def test_sum_file(self, r_alg):
        """Test a module file listing two summands."""
        m = parse_module_spec(r_alg, str(DATA / "modules" / "p3_plus_s7.module"))
        assert m.dims == (1, 1, 1, 0, 0, 0, 1, 0, 0, 0)

    def test_bad_matrix(self, a3):
        """Test that matrix entries must be integers."""
        with pytest.raises(ParseError):
            parse_module_text(a3, "dim 1 1\ndim 2 1\nmatrix a1 x\n")

    def test_empty_module_file(self, a3):
        """Test that a file with only comments is rejected."""
        with pytest.raises(ParseError):
            parse_module_text(a3, "# nothing here\n")


class TestComplexFile:
    """Tests for .complex files."""

    def test_paper_file_matches_builtin(self, r_alg):
        """Test that the shipped file and the builtin complex agree term by term."""
        from_file = load_candidate(r_alg, str(DATA / "complexes" / "paper_T.complex"))
        builtin = load_candidate(r_alg, "builtin:paper")
        assert from_file.labels == builtin.labels
        for label in builtin.labels:
            assert from_file.summand(label) == builtin.summand(label)

    def test_witness_grammar(self, r_alg):
        """Test label, shift and cone witnesses."""
        t = load_candidate(r_alg, str(DATA / "complexes" / "paper_T.complex"))
        recipes = {w.vertex: w.recipe for w in t.witnesses}
        assert isinstance(recipes["2"], ConeStep)
        assert isinstance(recipes["9"], ShiftStep)
        assert verify_generation(t, search_depth=0).witnesses["5"] == "cone(T_5 -> T_1)"

    def test_serialize(self):
        """Test that serialize drops comments and keeps every summand."""
        path = DATA / "complexes" / "p1_shift.complex"
        assert ComplexFile.load(path).serialize().splitlines() == body_lines(path)

    def test_unknown_witness_summand(self, a3):
        """Test that witnesses must name declared summands."""
        parsed = ComplexFile.parse("summand a: P1 @0\nwitness 1: b[1]\n")
        with pytest.raises(ParseError):
            parsed.build(a3)

    def test_missing_path(self, a3):
        """Test that a differential needs a path between the tops."""
        parsed = ComplexFile.parse("summand a: P3 -> P1 @0\n")
        with pytest.raises(ParseError):
            parsed.build(a3)

    @pytest.mark.parametrize("text", [
        "",
        "summand a: P1\n",
        "summand a: P1 @0\nsummand a: P2 @0\n",
    ])
    def test_rejected_files(self, text):
        """Test that malformed complex files raise ParseError."""
        with pytest.raises(ParseError):
            ComplexFile.parse(text)

    def test_unknown_builtin(self, a3):
        """Test that unknown builtin names raise ParseError."""
        with pytest.raises(ParseError):
            load_candidate(a3, "builtin:mystery")
