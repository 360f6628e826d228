"""Lifting tests for the injective objects N ⊗ P(v) of the monic category."""

import numpy as np

from algebra.homological import is_self_injective
from algebra.modules import dual_module, projective
from config import DEFAULT_SEED, SUITE_SAMPLES
from lab.closure import sample_extension
from lab.reports import SuiteReport, Timer, merge_reports, run_samples
from lab.sampling import random_monic_rep, random_morphism
from monic.conditions import TheoremViolation
from quiver.paths import Vertex
from representations.constructions import hom_basis, tensor_pv
from representations.resolution import flatten_morphism
from representations.rep import LambdaAlgebra, LambdaMorphism, LambdaRep, rep_payload


def injective_object(lam: LambdaAlgebra, v: Vertex | None = None) -> LambdaRep:
    """D(A) ⊗ P(v); the sink (label 1) by default."""
    if v is None:
        v = lam.quiver.by_label()[0]
    return tensor_pv(lam, dual_module(lam.base, lam.field), v, name=f"D(A)⊗P({v})")


def lift(h: LambdaMorphism, inclusion: LambdaMorphism, j: LambdaRep) -> LambdaMorphism | None:
    """Some u: Y -> J with u ∘ inclusion = h, or None."""
    f = j.algebra.field
    target = flatten_morphism(h)
    if f.is_zero(target):
        return inclusion.target.zero_morphism(j)
    basis = hom_basis(inclusion.target, j)
    if not basis:
        return None
    cols = [flatten_morphism(u.compose(inclusion)) for u in basis]
    coeffs = f.solve(f.hstack(cols, target.shape[0]), target)
    if coeffs is None:
        return None
    blocks = {v: g.scaled(coeffs[0, 0]) for v, g in basis[0].blocks.items()}
    for u, c in zip(basis[1:], coeffs[1:, 0]):
        blocks = {v: blocks[v] + u.blocks[v].scaled(c) for v in blocks}
    return LambdaMorphism(inclusion.target, j, blocks)


def lift_task(j: LambdaRep, kind: str):
    lam = j.algebra

    def task(rng: np.random.Generator):
        x = random_monic_rep(lam, rng, name="X")
        z = random_monic_rep(lam, rng, name="Z")
        s = sample_extension(x, z, rng)
        h = random_morphism(x, j, rng)
        u = lift(h, s.seq.f, j)
        if u is None:
            raise TheoremViolation(f"{j.name}: a map X -> J does not extend along a monic extension",
                                   {"kind": kind, "x": rep_payload(x), "z": rep_payload(z),
                                    "j": rep_payload(j)})
        return "pass", f"split={s.split} h_zero={h.is_zero()}"
    return task


def injective_lift_test(j: LambdaRep, samples: int = SUITE_SAMPLES["injective-lift"],
                        seed: int = DEFAULT_SEED, jobs: int = 1, abort: bool = True,
                        kind: str = "injective-lift") -> SuiteReport:
    """For sampled exact 0 -> X -> Y -> Z -> 0 of monic reps and maps h: X -> J,
    checks that h factors through X -> Y."""
    witnesses: list[dict] = []
    with Timer() as timer:
        rows = run_samples(kind, lift_task(j, kind), samples, seed, jobs, abort, witnesses)
    return SuiteReport.from_rows("injective", rows, seed, timer.elapsed_ms, witnesses)


def frobenius_check(lam: LambdaAlgebra, samples: int = 5, seed: int = DEFAULT_SEED,
                    jobs: int = 1, abort: bool = True) -> SuiteReport | None:
    """With A self-injective the projectives P_A(u) ⊗ P(v) must pass the lifting test too."""
    if not is_self_injective(lam.base, lam.field):
        return None
    reports = []
    for k, u in enumerate(lam.base.vertices):
        for i, v in enumerate(lam.quiver.vertices):
            j = tensor_pv(lam, projective(lam.base, lam.field, u), v)
            reports.append(injective_lift_test(j, samples, seed + 97 * k + i, jobs, abort,
                                               kind=f"projective-lift P({u})⊗P({v})"))
    return merge_reports("injective", reports, seed)


def injective_suite(lam: LambdaAlgebra, samples: int = SUITE_SAMPLES["injective-lift"],
                    seed: int = DEFAULT_SEED, jobs: int = 1, abort: bool = True) -> SuiteReport:
    reports = [injective_lift_test(injective_object(lam), samples, seed, jobs, abort)]
    frob = frobenius_check(lam, max(1, samples // 10), seed, jobs, abort)
    if frob is not None:
        reports.append(frob)
    return merge_reports("injective", reports, seed)
