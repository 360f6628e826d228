"""Tests for the problem-file parser, printer and command reports."""

import json

import pytest

from dsl import Report, SpecError, parse_spec, print_spec, specs_equal, with_rep
from linalg.field import RationalField
from monic.conditions import is_monic
from representations.constructions import tensor_pv
from representations.rep import reps_equal
from tests.builders import make_worked_lambda, make_worked_rep, read_instance

HEADER = """
field 101;
algebra A { vertex a; arrow x: a -> a; rel x.x; }
"""


class TestParser:
    def setup_method(self):
        self.spec = parse_spec(read_instance("ex224.mono"))

    def test_worked_file(self):
        spec = self.spec
        assert spec.field.p == 101
        assert spec.quiver.vertices == (1, 2, 3, 4)
        assert len(spec.bound.ideal.generators) == 2
        assert set(spec.modules) == {"A", "k"}
        assert set(spec.reps) == {"X", "N"}

    def test_parsed_rep_matches_hand_built_one(self):
        x = self.spec.rep("X")
        assert x.dim_vector == {1: 2, 2: 3, 3: 2, 4: 1}
        assert reps_equal(x, make_worked_rep(make_worked_lambda()))
        assert is_monic(x)
        assert not is_monic(self.spec.rep("N"))

    def test_unknown_names(self):
        with pytest.raises(SpecError, match="no rep named"):
            self.spec.rep("Q")
        with pytest.raises(SpecError, match="no module named"):
            self.spec.module("M")
        with pytest.raises(SpecError):
            self.spec.vertex("9")
        assert self.spec.vertex("3") == 3

    def test_broken_relation(self):
        with pytest.raises(SpecError, match="b1.g"):
            parse_spec(read_instance("ex224_broken.mono"))

    def test_empty_file(self):
        with pytest.raises(SpecError, match="missing field section") as info:
            parse_spec("")
        assert info.value.line == 1

    def test_field_must_come_first(self):
        with pytest.raises(SpecError, match="missing field section"):
            parse_spec("algebra A { vertex a; }\nfield 101;")

    def test_unknown_field(self):
        with pytest.raises(SpecError, match="unknown field"):
            parse_spec("field banana;")

    def test_short_relation_is_not_admissible(self):
        text = HEADER + "quiver Q {\n    vertices 2;\n    arrow b: 2 -> 1;\n    rel b;\n}\n"
        with pytest.raises(SpecError, match="relation b") as info:
            parse_spec(text)
        assert info.value.line == 7

    def test_syntax_error_has_position(self):
        with pytest.raises(SpecError) as info:
            parse_spec("field 101;\nalgebra A { vertex a }")
        assert info.value.line == 2

    def test_matrix_shape_checked(self):
        text = HEADER + "quiver Q { vertices 1; }\nmodule M { dims = [2]; maps = {x = [[0]]}; }\n"
        with pytest.raises(SpecError, match="expected 2x2"):
            parse_spec(text)

    def test_inline_module_and_fractions(self):
        text = (HEADER + "quiver Q { vertices 2; arrow b: 2 -> 1; }\n"
                "rep Y { at 2: module dims = [1]; at 1: module dims = [1]; map b = [[1/2]]; }\n")
        y = parse_spec(text).rep("Y")
        assert y.dim_vector == {1: 1, 2: 1}
        assert not y.arrows["b"].is_zero()

    def test_field_override(self):
        spec = parse_spec(read_instance("ex224.mono"), field_override="rational")
        assert isinstance(spec.field, RationalField)
        assert is_monic(spec.rep("X"))


class TestPrinter:
    def setup_method(self):
        self.spec = parse_spec(read_instance("ex224.mono"))

    def test_print_then_parse(self):
        again = parse_spec(print_spec(self.spec))
        assert specs_equal(self.spec, again)

    def test_with_rep(self):
        m = self.spec.module("A")
        t = tensor_pv(self.spec.lam, m, 3, name="T")
        bigger = with_rep(self.spec, t, "T")
        assert "T" not in self.spec.reps
        again = parse_spec(print_spec(bigger))
        assert again.rep("T").dim_vector == {1: 4, 2: 4, 3: 2, 4: 0}
        assert not specs_equal(self.spec, again)

    def test_every_instance_survives_printing(self):
        for name in ("ex224.mono", "a2_path.mono", "semisimple.mono", "semisimple_a2.mono"):
            spec = parse_spec(read_instance(name))
            assert specs_equal(spec, parse_spec(print_spec(spec))), name


class TestReport:
    def test_json_layout(self):
        report = Report("validate", "abc", "valid", per_vertex={"1": {"dim": 2}})
        d = json.loads(report.to_json())
        assert set(d) == {"schema_version", "command", "input", "verdict", "per_vertex", "per_arrow",
                          "witnesses", "details", "seed", "depth", "elapsed_ms"}
        assert d["input"] == {"sha256": "abc"}

    def test_text_layout(self):
        report = Report("check-gp", "abc", "NotGP", seed=3, body=["  not monic"])
        text = report.render("text")
        assert text.splitlines()[0] == "check-gp: NotGP"
        assert "seed=3" in text

    def test_unknown_verdict(self):
        with pytest.raises(ValueError):
            Report("validate", "abc", "maybe")
