"""Tests for samplers, extensions and the property suites."""

import numpy as np
import pandas as pd
import pytest

import lab.corollaries
import lab.properties
from algebra.homological import OracleConfig
from algebra.modules import projective
from config import SUITE_SAMPLES
from dsl import read_spec
from lab import (
    ClosureSuiteConfig, CocycleSpace, CorollaryConfig, SuiteReport, adjunction_suite, closure_check,
    corollary_suite, injective_object, injective_suite, merge_reports, monic_samples, random_mixed_rep,
    random_monic_rep, run_samples, run_suite, sample_epimorphism, sample_extension, spawn_rngs,
    tensor_gp_rows, thm23_suite, transport,
)
from monic.conditions import TheoremViolation, is_monic
from monic.gorenstein import is_gp
from representations.constructions import tensor_pv
from representations.rep import is_exact, validate_rep
from tests.builders import (
    instance, make_a2_quiver, make_dual_numbers, make_ground_field_algebra, make_lambda, make_point_quiver,
    regular_dual_numbers, simple_dual_numbers,
)

SEMISIMPLE_INSTANCES = ["semisimple.mono", "semisimple_a2.mono"]


def make_small_lambda():
    """k[x]/x² ⊗ k(2 -> 1): small enough for quick suites, not semisimple."""
    return make_lambda(make_dual_numbers(), make_a2_quiver())


def make_point_lambda():
    return make_lambda(make_dual_numbers(), make_point_quiver())


class TestSampling:
    def setup_method(self):
        self.lam = make_small_lambda()

    def test_spawned_generators_are_reproducible(self):
        a = [r.integers(0, 1000) for r in spawn_rngs(5, 3)]
        b = [r.integers(0, 1000) for r in spawn_rngs(5, 3)]
        assert a == b

    def test_monic_samples_are_monic(self):
        rng = np.random.default_rng(1)
        for _ in range(5):
            x = random_monic_rep(self.lam, rng)
            validate_rep(x)
            assert is_monic(x)

    def test_transport_keeps_dims_and_monicity(self):
        rng = np.random.default_rng(2)
        x = tensor_pv(self.lam, regular_dual_numbers(self.lam), 2)
        y = transport(x, rng)
        validate_rep(y)
        assert y.dim_vector == x.dim_vector
        assert is_monic(y)

    def test_mixed_samples_are_valid(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            validate_rep(random_mixed_rep(self.lam, rng, 2))

    def test_epimorphism_sample_is_onto(self):
        rng = np.random.default_rng(4)
        for _ in range(3):
            z = random_monic_rep(self.lam, rng, name="Z")
            epi = sample_epimorphism(z, rng)
            assert epi.map.is_valid()
            assert epi.map.is_surjective()

    def test_counit_fallback(self):
        rng = np.random.default_rng(5)
        z = tensor_pv(self.lam, regular_dual_numbers(self.lam), 2, name="Z")
        # k ⊗ P(1) is too small to map onto Z
        epi = sample_epimorphism(z, rng, extra=tensor_pv(self.lam, simple_dual_numbers(self.lam), 1))
        assert epi.via_cover
        assert epi.map.is_surjective()


class TestExtensions:
    def setup_method(self):
        self.lam = make_point_lambda()
        self.k = tensor_pv(self.lam, simple_dual_numbers(self.lam), 1, name="k")

    def test_cocycle_space_dimension(self):
        space = CocycleSpace(self.k, self.k)
        assert space.size == 1
        assert space.cocycles().shape[1] == 1

    def test_non_split_extension_of_k_by_k_is_a(self):
        sample = None
        for seed in range(10):
            sample = sample_extension(self.k, self.k, seed=seed, cross_check=True)
            if not sample.split:
                break
        assert sample.ext_dim == 1
        assert not sample.split
        assert is_exact(sample.seq)
        y = sample.seq.middle.branches[1]
        assert y.dim_vector == (2,)
        assert self.lam.field.rank(y.maps["x"]) == 1

    def test_forced_split_extension(self):
        sample = sample_extension(self.k, self.k, seed=0, split=True)
        assert sample.split
        assert self.lam.field.rank(sample.seq.middle.branches[1].maps["x"]) == 0

    def test_extension_of_monic_reps_is_monic(self):
        lam = make_small_lambda()
        rng = np.random.default_rng(9)
        x, z = random_monic_rep(lam, rng, name="X"), random_monic_rep(lam, rng, name="Z")
        sample = sample_extension(x, z, rng)
        assert is_exact(sample.seq)
        assert is_monic(sample.seq.middle)


class TestSuiteReports:
    def test_rows_and_summary(self):
        rows = [{"kind": "a", "index": 0, "outcome": "pass", "detail": ""},
                {"kind": "a", "index": 1, "outcome": "unknown", "detail": ""},
                {"kind": "b", "index": 0, "outcome": "fail", "detail": "bad"}]
        report = SuiteReport.from_rows("demo", rows, seed=3)
        assert isinstance(report.rows, pd.DataFrame)
        assert report.failures == 1
        assert not report.ok
        assert report.count("unknown", kind="a") == 1
        assert report.unknown_rate("a") == 0.5
        summary = report.summary()
        assert summary.loc["a", "pass"] == 1 and summary.loc["b", "fail"] == 1
        d = report.to_dict()
        assert d["samples"] == 3
        assert d["per_kind"]["b"]["fail"] == 1
        assert "FAIL b #0: bad" in report.to_text()

    def test_empty_report(self):
        report = SuiteReport.from_rows("empty", [], seed=0)
        assert report.ok
        assert report.summary().empty
        assert report.unknown_rate() == 0.0

    def test_merge(self):
        a = SuiteReport.from_rows("s", [{"kind": "a", "index": 0, "outcome": "pass", "detail": ""}], 0, 5.0)
        b = SuiteReport.from_rows("s", [], 0, 2.0)
        merged = merge_reports("s", [a, b], 0)
        assert len(merged.rows) == 1
        assert merged.elapsed_ms == 7.0

    def test_run_samples_records_failures(self):
        def task(rng):
            if rng.random() < 2:
                raise TheoremViolation("always", {"why": "test"})
            return "pass", ""

        witnesses = []
        rows = run_samples("t", task, 3, seed=0, abort=False, witnesses=witnesses)
        assert [r["outcome"] for r in rows] == ["fail"] * 3
        assert witnesses[0] == {"kind": "t", "index": 0, "why": "test"}
        with pytest.raises(TheoremViolation) as info:
            run_samples("t", task, 3, seed=0, abort=True)
        assert info.value.witness["kind"] == "t"

    def test_threads_keep_sample_order(self):
        def task(rng):
            return "pass", str(int(rng.integers(0, 10 ** 6)))

        serial = run_samples("t", task, 6, seed=4)
        threaded = run_samples("t", task, 6, seed=4, jobs=3)
        assert serial == threaded


class TestSuites:
    def setup_method(self):
        self.lam = make_small_lambda()

    def test_closure_suite(self):
        counts = {"extension": 3, "kernel-of-epi": 2, "summand": 3, "projective-containment": 1}
        report = closure_check(self.lam, ClosureSuiteConfig(counts, seed=1, max_dim=2))
        assert report.ok
        # One containment row per P_A(u) ⊗ P(v)
        assert report.count("pass", kind="projective-containment") == 2
        assert report.count("pass", kind="extension") == 3

    def test_closure_config_validation(self):
        with pytest.raises(ValueError):
            ClosureSuiteConfig(kinds=[])
        with pytest.raises(ValueError):
            ClosureSuiteConfig(kinds=["nope"])
        with pytest.raises(ValueError):
            ClosureSuiteConfig(max_dim=0)

    def test_corollary_suite_self_injective(self):
        report = corollary_suite(self.lam, CorollaryConfig(samples=2, seed=2, max_dim=2))
        assert report.ok
        kinds = set(report.rows["kind"])
        assert {"agreement", "monic-iff-gp", "tensor-gp"} <= kinds
        assert "projective" not in kinds

    def test_corollary_suite_semisimple(self):
        lam = make_lambda(make_ground_field_algebra(), make_a2_quiver())
        report = corollary_suite(lam, CorollaryConfig(samples=3, seed=3, max_dim=2))
        assert report.ok
        assert {"projective", "projective-monic"} <= set(report.rows["kind"])
        assert report.count("pass", kind="projective-monic") == 2
        assert report.count("pass", kind="projective") == 1
        assert monic_samples(report) >= 2

    def test_corollary_config_validation(self):
        with pytest.raises(ValueError):
            CorollaryConfig(samples=-1)

    def test_thm23_suite(self):
        report = thm23_suite(self.lam, samples=3, seed=4)
        assert report.ok
        assert len(report.rows) == 3
        assert all("images_gp=" in d for d in report.rows["detail"])

    def test_thm23_suite_runs_image_and_quotient_checks(self, monkeypatch):
        calls = []

        def broken(split, config=None):
            calls.append(config)
            raise TheoremViolation("quotient identity fails", {"vertex": "1"})

        monkeypatch.setattr(lab.properties, "quotient_identity_report", broken)
        oracle = OracleConfig("selfinjective")
        report = thm23_suite(self.lam, samples=2, seed=4, abort=False, oracle=oracle)
        assert report.failures == 2
        assert calls == [oracle, oracle]
        assert report.witnesses[0]["vertex"] == "1"

    def test_adjunction_suite(self):
        report = adjunction_suite(self.lam, samples=4, seed=5, max_dim=2)
        assert report.ok

    def test_injective_suite(self):
        j = injective_object(self.lam)
        assert j.dim_vector == {1: 2, 2: 0}
        report = injective_suite(self.lam, samples=2, seed=6)
        assert report.ok

    def test_run_suite_dispatch(self):
        report = run_suite("thm23", self.lam, samples=2, seed=7)
        assert report.suite == "thm23"
        assert len(report.rows) == 2
        with pytest.raises(ValueError):
            run_suite("everything", self.lam)

    def test_threaded_suite_matches_serial(self):
        serial = thm23_suite(self.lam, samples=4, seed=8)
        threaded = thm23_suite(self.lam, samples=4, seed=8, jobs=2)
        assert serial.rows.equals(threaded.rows)


class TestCorollaryInstances:
    @pytest.mark.parametrize("name", SEMISIMPLE_INSTANCES)
    def test_monic_half_is_guaranteed(self, name):
        lam = read_spec(instance(name)).lam
        report = corollary_suite(lam, CorollaryConfig(samples=4, seed=3, max_dim=2))
        assert report.ok
        assert report.count("pass", kind="projective-monic") == 2
        assert monic_samples(report) >= 2

    def test_tensor_rows_cover_non_gp_modules(self):
        lam = read_spec(instance("a2_path.mono")).lam
        rows = tensor_gp_rows(lam, CorollaryConfig(seed=1))
        # simples, projectives and three random modules, at both vertices
        assert len(rows) == 14
        assert all(r["outcome"] == "pass" for r in rows)
        details = [r["detail"] for r in rows]
        assert "S(2)⊗P(1): NotGP / NotGP" in details
        assert "S(2)⊗P(2): NotGP / NotGP" in details
        assert "S(1)⊗P(2): GP / GP" in details

    def test_tensor_mismatch_is_reported(self, monkeypatch):
        lam = read_spec(instance("a2_path.mono")).lam
        cfg = CorollaryConfig(seed=1, abort=False)
        good = is_gp(tensor_pv(lam, projective(lam.base, lam.field, 1), 1), cfg.oracle)
        assert good.is_gp
        monkeypatch.setattr(lab.corollaries, "is_gp", lambda x, config: good)
        witnesses = []
        rows = tensor_gp_rows(lam, cfg, witnesses)
        failed = [r for r in rows if r["outcome"] == "fail"]
        assert len(failed) >= 2
        assert "S(2)" in {w["module"] for w in witnesses}
        with pytest.raises(TheoremViolation):
            tensor_gp_rows(lam, CorollaryConfig(seed=1))


@pytest.mark.slow
class TestAcceptanceScale:
    def test_agreement_unknown_rate(self):
        for lam in (make_small_lambda(), read_spec(instance("a2_path.mono")).lam):
            report = corollary_suite(lam, CorollaryConfig(samples=SUITE_SAMPLES["corollary"], max_dim=2))
            assert report.ok
            assert report.count("pass", kind="agreement") + report.count("unknown", kind="agreement") == 200
            assert report.unknown_rate("agreement") < 0.05

    @pytest.mark.parametrize("name", SEMISIMPLE_INSTANCES)
    def test_hundred_monic_reps_per_semisimple_instance(self, name):
        lam = read_spec(instance(name)).lam
        report = corollary_suite(lam, CorollaryConfig(samples=SUITE_SAMPLES["corollary"], max_dim=2))
        assert report.ok
        assert report.count("pass", kind="projective-monic") == 100
        assert monic_samples(report) >= 100

    def test_hundred_adjunction_samples(self):
        report = adjunction_suite(make_small_lambda(), samples=SUITE_SAMPLES["adjunction"], max_dim=2)
        assert report.ok
        assert report.count("pass") == 100

    def test_fifty_injective_lifts(self):
        report = injective_suite(make_small_lambda(), samples=SUITE_SAMPLES["injective-lift"])
        assert report.ok
        assert report.count("pass") == 50

    def test_hundred_thm23_samples(self):
        report = thm23_suite(make_small_lambda(), samples=SUITE_SAMPLES["thm23"])
        assert report.ok
        assert len(report.rows) == 100
