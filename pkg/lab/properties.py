"""Property suites for the kernel/image identities of monic reps and for the
adjunction Hom_Λ(M ⊗ P(v), X) ≅ Hom_A(M, X_v)."""

import numpy as np

from algebra.homological import OracleConfig
from algebra.modules import combine, hom_dim as module_hom_dim, hom_space, random_module
from config import DEFAULT_SEED, MAX_BRANCH_DIM, SUITE_SAMPLES
from lab.reports import SuiteReport, Timer, run_samples
from lab.sampling import random_mixed_rep, random_monic_rep
from monic.conditions import TheoremViolation, is_monic, verify_thm23
from monic.gorenstein import check_image_gp
from monic.triangular import coker_phi, quotient_identity_report, triangular_split
from representations.constructions import adjunction_map, hom_dim, tensor_pv, tensor_slots
from representations.rep import LambdaAlgebra, rep_payload


def thm23_task(lam: LambdaAlgebra, all_paths: bool = False, oracle: OracleConfig | None = None):
    splittable = len(lam.quiver.vertices) >= 2
    oracle = oracle or OracleConfig()

    def task(rng: np.random.Generator):
        x = random_monic_rep(lam, rng, name="X")
        report = verify_thm23(x, strict=True, all_paths=all_paths)
        detail = f"paths={report.paths_checked}"
        images = check_image_gp(x, oracle)
        detail += f" images_gp={sum(v.is_gp for v in images.values())}/{len(images)}"
        if splittable:
            split = triangular_split(x)
            if not split.phi_injective:
                raise TheoremViolation(f"φ is not injective for monic {x.name}", {"x": rep_payload(x)})
            c = coker_phi(split)
            if not is_monic(c):
                raise TheoremViolation(f"Coker φ of monic {x.name} is not monic",
                                       {"x": rep_payload(x), "coker": rep_payload(c)})
            quotient_identity_report(split, oracle)
            detail += f" m={sum(split.m_vector.values())}"
        return "pass", detail
    return task


def thm23_suite(lam: LambdaAlgebra, samples: int = SUITE_SAMPLES["thm23"], seed: int = DEFAULT_SEED,
                jobs: int = 1, abort: bool = True, all_paths: bool = False,
                oracle: OracleConfig | None = None) -> SuiteReport:
    """Kernel/image identities on sampled monic reps, plus injectivity of φ and
    monicity of Coker φ at the source vertex.

    Each sample also runs the image check (Im X_p is GP once every quotient is)
    and the quotient identity for Coker φ, both under `oracle`.
    """
    witnesses: list[dict] = []
    with Timer() as timer:
        rows = run_samples("thm23", thm23_task(lam, all_paths, oracle), samples, seed, jobs, abort, witnesses)
    return SuiteReport.from_rows("thm23", rows, seed, timer.elapsed_ms, witnesses)


def adjunction_task(lam: LambdaAlgebra, max_dim: int):
    f = lam.field
    vertices = list(lam.quiver.vertices)

    def task(rng: np.random.Generator):
        v = vertices[int(rng.integers(0, len(vertices)))]
        m = random_module(lam.base, f, rng, 2)
        x = random_mixed_rep(lam, rng, max_dim, name="X")
        t = tensor_pv(lam, m, v)
        left, right = hom_dim(t, x), module_hom_dim(m, x.branches[v])
        if left != right:
            raise TheoremViolation(f"dim Hom(M⊗P({v}), X) = {left} but dim Hom(M, X_{v}) = {right}",
                                   {"vertex": str(v), "x": rep_payload(x), "tensor": rep_payload(t)})
        basis = hom_space(m, x.branches[v])
        if not basis:
            return "pass", f"hom_dim=0 vertex={v}"
        g = combine(basis, f.random(rng, (len(basis),)))
        h = adjunction_map(lam, m, v, x, g, tensor=t)
        problem = h.first_violation()
        slot = next(k for k, p in enumerate(tensor_slots(lam, v)[v]) if p.is_trivial)
        for u in lam.base.vertices:
            d = m.dims[u]
            if problem is None and not f.equal(h.blocks[v].blocks[u][:, slot * d:(slot + 1) * d], g.blocks[u]):
                problem = f"e_{v} slot at base vertex {u} differs from g"
        if problem is not None:
            raise TheoremViolation(f"adjoint of g: M -> X_{v}: {problem}",
                                   {"vertex": str(v), "x": rep_payload(x), "tensor": rep_payload(t)})
        return "pass", f"hom_dim={left} vertex={v}"
    return task


def adjunction_suite(lam: LambdaAlgebra, samples: int = SUITE_SAMPLES["adjunction"],
                     seed: int = DEFAULT_SEED, jobs: int = 1, abort: bool = True,
                     max_dim: int = MAX_BRANCH_DIM) -> SuiteReport:
    witnesses: list[dict] = []
    with Timer() as timer:
        rows = run_samples("adjunction", adjunction_task(lam, max_dim), samples, seed, jobs, abort, witnesses)
    return SuiteReport.from_rows("adjunction", rows, seed, timer.elapsed_ms, witnesses)
