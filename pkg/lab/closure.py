"""Extensions of representations and the resolving-closure suite for monic reps.

An extension 0 -> X -> Y -> Z -> 0 is realised on Y_i = X_i ⊕ Z_i with every
arrow of A ⊗ kQ/I acting by an upper triangular matrix [[X_β, C_β], [0, Z_β]].
The relations of the algebra are linear in the off-diagonal blocks C, so the
cocycles form a kernel; the coboundaries C_β = X_β T - T Z_β are the split
ones, and the quotient is Ext^1(Z, X).
"""

from dataclasses import dataclass, field

import numpy as np

from algebra.homological import ext_dim
from algebra.modules import Module, ModuleMap, projective
from config import CLOSURE_KINDS, DEFAULT_SEED, MAX_BRANCH_DIM, SUITE_SAMPLES
from lab.reports import SuiteReport, Timer, merge_reports, run_samples
from lab.sampling import random_mixed_rep, random_monic_rep, sample_epimorphism, transport
from linalg.field import Matrix
from monic.conditions import TheoremViolation, check_monic, is_monic
from representations.constructions import kernel, tensor_pv
from representations.rep import (
    LambdaMorphism, LambdaRep, ShortExactSeq, direct_sum, is_exact, rep_payload,
)
from representations.resolution import ext_dims_lambda


class CocycleSpace:
    """Off-diagonal blocks C_β for Ext^1(Z, X), flattened in arrow order."""

    def __init__(self, x: LambdaRep, z: LambdaRep):
        self.x, self.z = x, z
        self.mx, self.mz = x.to_module(), z.to_module()
        self.algebra = self.mx.algebra
        self.field = x.algebra.field
        self.offsets, total = {}, 0
        for a in self.algebra.arrows:
            self.offsets[a.name] = total
            total += self.mx.dims[a.target] * self.mz.dims[a.source]
        self.size = total

    def blocks(self, vec: Matrix) -> dict:
        out = {}
        for a in self.algebra.arrows:
            rows, cols = self.mx.dims[a.target], self.mz.dims[a.source]
            start = self.offsets[a.name]
            out[a.name] = vec[start:start + rows * cols].reshape(rows, cols)
        return out

    def middle(self, vec: Matrix, name: str = "Y") -> Module:
        f = self.field
        dims = {v: self.mx.dims[v] + self.mz.dims[v] for v in self.algebra.vertices}
        maps = {}
        for a, c in self.blocks(vec).items():
            top = f.hstack([self.mx.maps[a], c], self.mx.dims[self.algebra.arrow(a).target])
            bottom = f.hstack([f.zeros(self.mz.dims[self.algebra.arrow(a).target], self.mx.maps[a].shape[1]),
                               self.mz.maps[a]], self.mz.dims[self.algebra.arrow(a).target])
            maps[a] = f.vstack([top, bottom], dims[self.algebra.arrow(a).source])
        return Module(self.algebra, f, dims, maps, name)

    def residual(self, vec: Matrix) -> Matrix:
        """Off-diagonal parts of every relation evaluated on the middle term."""
        f = self.field
        y = self.middle(vec)
        parts = []
        for b, arrow, c in self.algebra.relations:
            s = self.algebra.basis[b].source
            t = self.algebra.arrow(arrow).target
            lhs = f.matmul(y.maps[arrow], y.action(b))
            if c is not None:
                lhs = f.sub(lhs, y.action(c))
            parts.append(lhs[:self.mx.dims[t], self.mx.dims[s]:].reshape(-1, 1))
        return f.vstack(parts, 1)

    def cocycles(self) -> Matrix:
        """Basis of the cocycle space, as columns."""
        f = self.field
        if self.size == 0:
            return f.zeros(0, 0)
        cols = []
        for j in range(self.size):
            e = f.zeros(self.size, 1).reshape(-1)
            e[j] = f.scalar(1)
            cols.append(self.residual(e))
        system = f.hstack(cols, cols[0].shape[0])
        return f.kernel(system)

    def coboundaries(self) -> Matrix:
        """Columns C(T) for T running over unit matrices T_v: Z_v -> X_v."""
        f = self.field
        cols = []
        for v in self.algebra.vertices:
            dx, dz = self.mx.dims[v], self.mz.dims[v]
            for r in range(dx):
                for s in range(dz):
                    t = f.zeros(dx, dz)
                    t[r, s] = f.scalar(1)
                    vec = f.zeros(self.size, 1).reshape(-1)
                    for a in self.algebra.arrows:
                        rows, cols_ = self.mx.dims[a.target], self.mz.dims[a.source]
                        block = f.zeros(rows, cols_)
                        if a.source == v:
                            block = f.add(block, f.matmul(self.mx.maps[a.name], t))
                        if a.target == v:
                            block = f.sub(block, f.matmul(t, self.mz.maps[a.name]))
                        start = self.offsets[a.name]
                        vec[start:start + rows * cols_] = block.reshape(-1)
                    cols.append(vec.reshape(-1, 1))
        return f.hstack(cols, self.size)


@dataclass(eq=False)
class ExtensionSample:
    seq: ShortExactSeq
    ext_dim: int
    split: bool


def sample_extension(x: LambdaRep, z: LambdaRep, rng: np.random.Generator | None = None,
                     seed: int = DEFAULT_SEED, split: bool = False,
                     cross_check: bool = False) -> ExtensionSample:
    """A random extension of Z by X; `split=True` forces the zero class.

    dim Ext^1(Z, X) is compared with the minimal resolution of Z as a Λ-module
    and, with `cross_check`, with the counit resolution.
    """
    rng = rng if rng is not None else np.random.default_rng(seed)
    space = CocycleSpace(x, z)
    f = space.field
    basis = space.cocycles()
    bounds = space.coboundaries()
    dim = basis.shape[1] - f.rank(bounds) if space.size else 0
    expected = ext_dim(space.mz, space.mx, 1) if not (space.mz.is_zero() or space.mx.is_zero()) else 0
    if dim != expected:
        raise TheoremViolation(f"Ext^1 from cocycles is {dim}, from the resolution {expected}",
                               {"x": rep_payload(x), "z": rep_payload(z)})
    if cross_check:
        other = ext_dims_lambda(z, x, 1)[0]
        if other != dim:
            raise TheoremViolation(f"Ext^1 from cocycles is {dim}, from the counit resolution {other}",
                                   {"x": rep_payload(x), "z": rep_payload(z)})
    if split or basis.shape[1] == 0:
        vec = f.zeros(space.size, 1).reshape(-1)
    else:
        vec = f.matmul(basis, f.random(rng, (basis.shape[1], 1))).reshape(-1)
    is_split = bool(f.is_zero(vec)) or f.solve(bounds, vec) is not None
    ymod = space.middle(vec, name=f"E({z.name},{x.name})")
    y = LambdaRep.from_module(x.algebra, ymod, ymod.name)
    inc, proj = {}, {}
    for v in space.algebra.vertices:
        dx, dz = space.mx.dims[v], space.mz.dims[v]
        inc[v] = f.vstack([f.eye(dx), f.zeros(dz, dx)], dx)
        proj[v] = f.hstack([f.zeros(dz, dx), f.eye(dz)], dz)
    fmap = LambdaMorphism.from_module_map(x, y, ModuleMap(space.mx, ymod, inc))
    gmap = LambdaMorphism.from_module_map(y, z, ModuleMap(ymod, space.mz, proj))
    seq = ShortExactSeq(fmap, gmap)
    if not is_exact(seq):
        raise TheoremViolation("sampled extension is not exact", {"x": rep_payload(x), "z": rep_payload(z)})
    return ExtensionSample(seq, dim, is_split)


@dataclass
class ClosureSuiteConfig:
    samples: dict[str, int] = field(default_factory=lambda: {k: SUITE_SAMPLES[k] for k in CLOSURE_KINDS})
    seed: int = DEFAULT_SEED
    max_dim: int = MAX_BRANCH_DIM
    kinds: list[str] = field(default_factory=lambda: list(CLOSURE_KINDS))
    jobs: int = 1
    abort: bool = True

    def __post_init__(self):
        if not self.kinds:
            raise ValueError("closure suite needs at least one kind")
        unknown = set(self.kinds) - set(CLOSURE_KINDS)
        if unknown:
            raise ValueError(f"unknown closure kinds {sorted(unknown)}; expected {CLOSURE_KINDS}")
        if self.max_dim < 1:
            raise ValueError("dimension cap must be positive")
        if any(n < 0 for n in self.samples.values()):
            raise ValueError("sample counts must be non-negative")


def _violation(what: str, **reps: LambdaRep) -> TheoremViolation:
    return TheoremViolation(what, {name: rep_payload(r) for name, r in reps.items()})


def extension_task(lam, cfg: ClosureSuiteConfig):
    def task(rng):
        x = random_monic_rep(lam, rng, name="X")
        z = random_monic_rep(lam, rng, name="Z")
        s = sample_extension(x, z, rng)
        if not is_monic(s.seq.middle):
            raise _violation("extension of monic reps is not monic", x=x, z=z, y=s.seq.middle)
        return "pass", f"ext_dim={s.ext_dim} split={s.split}"
    return task


def kernel_task(lam, cfg: ClosureSuiteConfig):
    def task(rng):
        z = random_monic_rep(lam, rng, name="Z")
        epi = sample_epimorphism(z, rng)
        if not epi.map.is_surjective():
            return "skipped", "no epimorphism"
        k, _ = kernel(epi.map)
        for v in lam.quiver.vertices:
            if k.branches[v].total_dim != epi.source.branches[v].total_dim - z.branches[v].total_dim:
                raise _violation(f"kernel dimension at {v} breaks rank-nullity", y=epi.source, z=z)
        if not is_monic(k):
            raise _violation("kernel of an epimorphism of monic reps is not monic",
                             y=epi.source, z=z, kernel=k)
        return "pass", f"via_cover={epi.via_cover}"
    return task


def summand_task(lam, cfg: ClosureSuiteConfig):
    def task(rng):
        x = random_mixed_rep(lam, rng, cfg.max_dim, name="X")
        y = random_mixed_rep(lam, rng, cfg.max_dim, name="Y")
        total = transport(direct_sum(x, y), rng, name="X⊕Y")
        whole, left, right = is_monic(total), is_monic(x), is_monic(y)
        if whole != (left and right):
            raise _violation(f"monic(X⊕Y)={whole} but monic(X)={left}, monic(Y)={right}", x=x, y=y)
        return "pass", f"monic={whole}"
    return task


def projective_rows(lam) -> list[dict]:
    rows = []
    for u in lam.base.vertices:
        for v in lam.quiver.vertices:
            t = tensor_pv(lam, projective(lam.base, lam.field, u), v)
            report = check_monic(t)
            if not report.overall:
                raise _violation(f"projective P({u})⊗P({v}) is not monic: {report.failures()}", projective=t)
            rows.append({"kind": "projective-containment", "index": len(rows), "outcome": "pass",
                         "detail": f"P({u})⊗P({v})"})
    return rows


def closure_check(lam, cfg: ClosureSuiteConfig | None = None) -> SuiteReport:
    """Monic reps contain the projectives and are closed under extensions,
    kernels of epimorphisms and direct summands."""
    cfg = cfg or ClosureSuiteConfig()
    tasks = {"extension": extension_task, "kernel-of-epi": kernel_task, "summand": summand_task}
    reports, witnesses = [], []
    for offset, kind in enumerate(cfg.kinds):
        with Timer() as timer:
            if kind == "projective-containment":
                rows = projective_rows(lam)
            else:
                rows = run_samples(kind, tasks[kind](lam, cfg), cfg.samples.get(kind, SUITE_SAMPLES[kind]),
                                   cfg.seed + offset, cfg.jobs, cfg.abort, witnesses)
        reports.append(SuiteReport.from_rows("closure", rows, cfg.seed, timer.elapsed_ms))
    merged = merge_reports("closure", reports, cfg.seed)
    merged.witnesses = witnesses
    return merged
