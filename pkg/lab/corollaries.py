"""Corollary suites: what GP(Λ) looks like for semisimple and self-injective A,
tensor products of GP modules, and agreement of the three GP deciders."""

from dataclasses import dataclass

import numpy as np

from algebra.homological import OracleConfig, Verdict, is_self_injective
from algebra.modules import indecomposable_projectives, random_module, simple_modules
from config import (
    DEFAULT_SEED, GP_DEPTH, MAX_BRANCH_DIM, MONIC_SAMPLE_SHARE, SUITE_SAMPLES, TENSOR_RANDOM_MODULES,
)
from lab.reports import SuiteReport, Timer, merge_reports, run_samples
from lab.sampling import random_mixed_rep, random_monic_rep
from monic.conditions import TheoremViolation, is_monic
from monic.gorenstein import is_gp
from monic.triangular import inductive_verify
from representations.constructions import tensor_pv
from representations.rep import LambdaAlgebra, rep_payload
from representations.resolution import direct_gp_check, is_projective_rep


@dataclass
class CorollaryConfig:
    samples: int = SUITE_SAMPLES["corollary"]
    seed: int = DEFAULT_SEED
    max_dim: int = MAX_BRANCH_DIM
    depth: int = GP_DEPTH
    mode: str = "auto"
    jobs: int = 1
    abort: bool = True

    def __post_init__(self):
        if self.samples < 0:
            raise ValueError("sample count must be non-negative")
        if self.max_dim < 1:
            raise ValueError("dimension cap must be positive")

    @property
    def oracle(self) -> OracleConfig:
        return OracleConfig(self.mode, self.depth, seed=self.seed)


def projective_task(lam: LambdaAlgebra, cfg: CorollaryConfig, monic_only: bool = False):
    """Semisimple A: a rep is monic exactly when it is projective over Λ.

    With `monic_only` every sample comes from the monic sampler.
    """
    def task(rng):
        if monic_only:
            x = random_monic_rep(lam, rng, name="X")
        else:
            x = random_mixed_rep(lam, rng, cfg.max_dim, name="X")
        monic, proj = is_monic(x), is_projective_rep(x)
        if monic != proj:
            raise TheoremViolation(f"over semisimple {lam.base.name}: monic={monic}, projective={proj}",
                                   {"x": rep_payload(x)})
        return "pass", f"monic={monic}"
    return task


def projective_monic_task(lam: LambdaAlgebra, cfg: CorollaryConfig):
    return projective_task(lam, cfg, monic_only=True)


def monic_gp_task(lam: LambdaAlgebra, cfg: CorollaryConfig):
    """Self-injective A: monic exactly when GP by the Λ-module oracle."""
    def task(rng):
        x = random_mixed_rep(lam, rng, cfg.max_dim, name="X")
        monic = is_monic(x)
        direct = direct_gp_check(x, cfg.depth, seed=cfg.seed)
        if direct.is_unknown:
            return "unknown", f"monic={monic} direct={direct.label()}"
        if monic != direct.is_gp:
            raise TheoremViolation(f"over self-injective {lam.base.name}: monic={monic}, "
                                   f"direct oracle {direct.label()}",
                                   {"x": rep_payload(x), "direct": direct.to_dict()})
        return "pass", f"monic={monic}"
    return task


def agreement_task(lam: LambdaAlgebra, cfg: CorollaryConfig):
    def task(rng):
        x = random_mixed_rep(lam, rng, cfg.max_dim, name="X")
        report = inductive_verify(x, cfg.oracle, direct=True)
        if not report.decided:
            return "unknown", "no decider reached a verdict"
        return "pass", f"verdict={report.decided[0].value} deciders={len(report.decided)}"
    return task


def tensor_candidates(lam: LambdaAlgebra, seed: int, extra: int = TENSOR_RANDOM_MODULES) -> list:
    """Simple and indecomposable projective A-modules, then `extra` random ones."""
    f = lam.field
    out = simple_modules(lam.base, f) + indecomposable_projectives(lam.base, f)
    rng = np.random.default_rng(seed)
    out += [random_module(lam.base, f, rng, 2).renamed(f"M{j}") for j in range(extra)]
    return out


def tensor_gp_rows(lam: LambdaAlgebra, cfg: CorollaryConfig,
                   witnesses: list[dict] | None = None) -> list[dict]:
    """M ⊗ P(v) is GP over Λ exactly when M is GP over A, for every candidate M and vertex v."""
    oracle = cfg.oracle
    rows = []
    for m in tensor_candidates(lam, cfg.seed):
        base = oracle.check(m)
        for v in lam.quiver.vertices:
            t = tensor_pv(lam, m, v)
            decision = is_gp(t, oracle)
            detail = f"{m.name}⊗P({v}): {base.label()} / {decision.status.value}"
            if base.is_unknown or decision.status is Verdict.UNKNOWN:
                outcome = "unknown"
            elif base.is_gp == decision.is_gp:
                outcome = "pass"
            else:
                witness = {"module": m.name, "vertex": str(v), "module_verdict": base.to_dict(),
                           "decision": decision.to_dict()}
                if cfg.abort:
                    raise TheoremViolation(f"{m.name} is {base.label()} but {m.name}⊗P({v}) is "
                                           f"{decision.status.value}", witness)
                if witnesses is not None:
                    witnesses.append({"kind": "tensor-gp", "index": len(rows), **witness})
                outcome = "fail"
            rows.append({"kind": "tensor-gp", "index": len(rows), "outcome": outcome, "detail": detail})
    return rows


def corollary_suite(lam: LambdaAlgebra, cfg: CorollaryConfig | None = None) -> SuiteReport:
    """Decider agreement on every algebra; monic ⇔ projective when A is
    semisimple; monic ⇔ GP when A is self-injective; GP tensor products.

    For semisimple A a share of the samples comes from the monic sampler alone
    (kind "projective-monic"), so monic reps are guaranteed to be covered.
    """
    cfg = cfg or CorollaryConfig()
    base = lam.base
    plan = [("agreement", agreement_task, cfg.samples)]
    if base.is_semisimple():
        monic = round(cfg.samples * MONIC_SAMPLE_SHARE)
        plan += [("projective-monic", projective_monic_task, monic),
                 ("projective", projective_task, cfg.samples - monic)]
    elif is_self_injective(base, lam.field):
        plan.append(("monic-iff-gp", monic_gp_task, cfg.samples))
    reports, witnesses = [], []
    for offset, (kind, make, count) in enumerate(plan):
        with Timer() as timer:
            rows = run_samples(kind, make(lam, cfg), count, cfg.seed + offset, cfg.jobs,
                               cfg.abort, witnesses)
        reports.append(SuiteReport.from_rows("corollary", rows, cfg.seed, timer.elapsed_ms))
    with Timer() as timer:
        rows = tensor_gp_rows(lam, cfg, witnesses)
    reports.append(SuiteReport.from_rows("corollary", rows, cfg.seed, timer.elapsed_ms))
    merged = merge_reports("corollary", reports, cfg.seed)
    merged.witnesses = witnesses
    return merged


def monic_samples(report: SuiteReport) -> int:
    """Sampled reps that were monic, over the kinds that record it."""
    rows = report.rows[report.rows["kind"].isin(["projective-monic", "projective", "monic-iff-gp"])]
    return int(rows["detail"].str.contains("monic=True", regex=False).sum())
