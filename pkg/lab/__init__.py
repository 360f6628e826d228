"""Property-test suites over sampled representations."""

from algebra.homological import OracleConfig
from config import CLOSURE_KINDS, DEFAULT_SEED, GP_DEPTH, MAX_BRANCH_DIM, SUITE_KINDS, SUITE_SAMPLES
from lab.closure import ClosureSuiteConfig, CocycleSpace, ExtensionSample, closure_check, sample_extension
from lab.corollaries import CorollaryConfig, corollary_suite, monic_samples, tensor_gp_rows
from lab.injectives import injective_lift_test, injective_object, injective_suite, lift
from lab.properties import adjunction_suite, thm23_suite
from lab.reports import SuiteReport, merge_reports, run_samples
from lab.sampling import (
    EpiSample, random_mixed_rep, random_monic_rep, random_morphism, sample_epimorphism, spawn_rngs,
    transport,
)
from representations.rep import LambdaAlgebra


def run_suite(kind: str, lam: LambdaAlgebra, samples: int | None = None, seed: int = DEFAULT_SEED,
              jobs: int = 1, abort: bool = True, depth: int = GP_DEPTH, mode: str = "auto",
              max_dim: int = MAX_BRANCH_DIM) -> SuiteReport:
    """Runs one suite kind over Λ.

    `samples` overrides the per-kind default sample counts; None keeps them.
    """
    if kind not in SUITE_KINDS:
        raise ValueError(f"unknown suite kind {kind!r}; expected one of {SUITE_KINDS}")
    if kind == "closure":
        counts = {k: SUITE_SAMPLES[k] if samples is None or k == "projective-containment" else samples
                  for k in CLOSURE_KINDS}
        return closure_check(lam, ClosureSuiteConfig(counts, seed, max_dim, jobs=jobs, abort=abort))
    if kind == "corollary":
        n = SUITE_SAMPLES["corollary"] if samples is None else samples
        return corollary_suite(lam, CorollaryConfig(n, seed, max_dim, depth, mode, jobs, abort))
    if kind == "thm23":
        n = SUITE_SAMPLES["thm23"] if samples is None else samples
        return thm23_suite(lam, n, seed, jobs, abort, oracle=OracleConfig(mode, depth, seed=seed))
    if kind == "adjunction":
        n = SUITE_SAMPLES["adjunction"] if samples is None else samples
        return adjunction_suite(lam, n, seed, jobs, abort, max_dim)
    n = SUITE_SAMPLES["injective-lift"] if samples is None else samples
    return injective_suite(lam, n, seed, jobs, abort)
