"""End-to-end tests of the command-line runner."""

import json

import main
from config import EXIT_INPUT_ERROR, EXIT_INTERNAL, EXIT_NEGATIVE, EXIT_OK
from dsl import read_spec
from monic.conditions import TheoremViolation
from main import run
from tests.builders import instance

EX224 = instance("ex224.mono")


def run_json(capsys, *argv) -> tuple[int, dict]:
    code = run(["--report", "json", *argv])
    return code, json.loads(capsys.readouterr().out)


class TestValidate:
    def test_worked_file_is_valid(self, capsys):
        code, report = run_json(capsys, "validate", EX224)
        assert code == EXIT_OK
        assert report["verdict"] == "valid"
        assert report["details"]["quiver"]["nonzero_paths"] == 11
        assert report["details"]["reps"] == ["X", "N"]
        assert report["per_vertex"]["2"]["rep_dims"]["X"] == 3

    def test_broken_file(self, capsys):
        assert run(["validate", instance("ex224_broken.mono")]) == EXIT_INPUT_ERROR
        assert "b1.g" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert run(["validate", str(tmp_path / "nope.mono")]) == EXIT_INPUT_ERROR

    def test_field_override(self, capsys):
        code, report = run_json(capsys, "--field", "rational", "validate", EX224)
        assert code == EXIT_OK
        assert report["details"]["field"] == "Q"


class TestChecks:
    def test_monic_rep(self, capsys):
        code, report = run_json(capsys, "check-monic", EX224, "--rep", "X")
        assert code == EXIT_OK
        assert report["verdict"] == "monic"
        assert report["details"]["kernel_image_identities"]["ok"] is True

    def test_non_monic_rep(self, capsys):
        code, report = run_json(capsys, "check-monic", EX224, "--rep", "N")
        assert code == EXIT_NEGATIVE
        assert report["verdict"] == "not-monic"
        assert report["per_vertex"]["2"]["ok"] is False

    def test_unknown_rep(self):
        assert run(["check-monic", EX224, "--rep", "Z"]) == EXIT_INPUT_ERROR

    def test_gp_rep(self, capsys):
        code, report = run_json(capsys, "check-gp", EX224, "--rep", "X", "--mode", "selfinjective",
                                "--skip-direct")
        assert code == EXIT_OK
        assert report["verdict"] == "GP"
        assert report["per_vertex"]["3"]["quotient_dim"] == 1
        assert report["details"]["triangular_split"]["coker_dims"] == {"1": 2, "2": 2, "3": 1}

    def test_monic_but_not_gp(self, capsys):
        code, report = run_json(capsys, "check-gp", instance("a2_path.mono"), "--rep", "X")
        assert code == EXIT_NEGATIVE
        assert report["verdict"] == "NotGP"

    def test_text_report(self, capsys):
        assert run(["check-gp", instance("a2_path.mono"), "--rep", "Y", "--mode", "bounded"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("check-gp: GP")

    def test_gp_rep_reports_images_and_quotient_identity(self, capsys):
        code, report = run_json(capsys, "check-gp", EX224, "--rep", "X", "--mode", "selfinjective",
                                "--skip-direct")
        assert code == EXIT_OK
        images = report["details"]["images"]
        assert len(images) == 7
        assert set(images.values()) == {"GP"}
        rows = report["details"]["quotient_identity"]
        assert [r["vertex"] for r in rows] == ["1", "2", "3"]
        assert all(r["dims_agree"] and r["verdicts_agree"] for r in rows)

    def test_failed_image_check_exits_internal(self, monkeypatch, capsys):
        def broken(x, config, decision=None):
            raise TheoremViolation("images are not GP", {"paths": ["g"]})

        monkeypatch.setattr(main, "check_image_gp", broken)
        code = run(["check-gp", EX224, "--rep", "X", "--mode", "selfinjective", "--skip-direct"])
        assert code == EXIT_INTERNAL
        err = capsys.readouterr().err
        assert "images are not GP" in err
        assert '"paths": ["g"]' in err

    def test_failed_quotient_identity_exits_internal(self, monkeypatch):
        def broken(split, config=None):
            raise TheoremViolation("quotient identity fails at vertex 2", {"vertex": "2"})

        monkeypatch.setattr(main, "quotient_identity_report", broken)
        code = run(["check-gp", EX224, "--rep", "X", "--mode", "selfinjective", "--skip-direct"])
        assert code == EXIT_INTERNAL


class TestConstruct:
    def test_tensor_is_written_and_parses(self, capsys, tmp_path):
        out = tmp_path / "t.mono"
        code, report = run_json(capsys, "construct", "tensor", EX224, "--module", "A", "--vertex", "3",
                                "-o", str(out))
        assert code == EXIT_OK
        assert report["details"]["dims"] == {"1": 4, "2": 4, "3": 2, "4": 0}
        spec = read_spec(str(out))
        assert spec.rep("A_P3").dim_vector == {1: 4, 2: 4, 3: 2, 4: 0}
        assert set(spec.reps) == {"X", "N", "A_P3"}

    def test_existing_name_rejected(self, tmp_path):
        out = tmp_path / "t.mono"
        assert run(["construct", "tensor", EX224, "--module", "A", "--vertex", "3", "-o", str(out),
                    "--name", "X"]) == EXIT_INPUT_ERROR
        assert not out.exists()


class TestSuiteCommand:
    def test_small_suite(self, capsys):
        code, report = run_json(capsys, "suite", instance("semisimple.mono"), "--kind", "thm23",
                                "--samples", "2", "--seed", "3")
        assert code == EXIT_OK
        assert report["verdict"] == "pass"
        assert report["details"]["thm23"]["samples"] == 2

    def test_corollary_suite_counts_monic_samples(self, capsys):
        code, report = run_json(capsys, "suite", instance("semisimple_a2.mono"), "--kind", "corollary",
                                "--samples", "4", "--seed", "3")
        assert code == EXIT_OK
        corollary = report["details"]["corollary"]
        assert corollary["per_kind"]["projective-monic"]["pass"] == 2
        assert corollary["monic_samples"] >= 2
