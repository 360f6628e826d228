"""Constructions on representations: M ⊗ P(v), Hom, kernels and cokernels, random samples."""

import numpy as np

from algebra.modules import (
    Module, ModuleMap, direct_sum as direct_sum_modules, hom_dim as module_hom_dim, hom_space,
    quotient, random_module, random_module_map,
)
from config import DEFAULT_SEED, MAX_BRANCH_DIM
from linalg.subspace import Subspace, image_space
from quiver.paths import Path, Vertex
from representations.rep import (
    LambdaAlgebra, LambdaMorphism, LambdaRep, RepresentationError, direct_sum, path_map, validate_rep,
    zero_rep,
)


def tensor_slots(lam: LambdaAlgebra, v: Vertex) -> dict[Vertex, list[Path]]:
    """Nonzero paths from v, e_v included, grouped by target: the basis of P(v)."""
    slots: dict[Vertex, list[Path]] = {i: [] for i in lam.quiver.vertices}
    for p in lam.bound.nonzero_from(v):
        slots[p.target].append(p)
    return slots


def tensor_pv(lam: LambdaAlgebra, m: Module, v: Vertex, name: str = "") -> LambdaRep:
    """M ⊗ P(v): branch i is M^{c_i}, one copy per nonzero path v -> i.

    Copies are ordered slot-major; X_α moves the copy of p to the copy of αp
    (or kills it when αp lies in I).
    """
    f = lam.field
    slots = tensor_slots(lam, v)
    branches = {}
    for i, paths in slots.items():
        branches[i] = direct_sum_modules([m] * len(paths), name=f"{m.name}^{len(paths)}") if paths \
            else lam.zero_branch()
    arrows = {}
    for a in lam.quiver.arrows:
        src, dst = slots[a.source], slots[a.target]
        index = {p: k for k, p in enumerate(dst)}
        shift = f.zeros(len(dst), len(src))
        for k, p in enumerate(src):
            q = lam.quiver.extend(p, a)
            if q in index:
                shift[index[q], k] = f.scalar(1)
        blocks = {u: f.kron(shift, f.eye(m.dims[u])) for u in lam.base.vertices}
        arrows[a.name] = ModuleMap(branches[a.source], branches[a.target], blocks)
    return LambdaRep(lam, branches, arrows, name or f"{m.name or 'M'}⊗P({v})")


def adjunction_map(lam: LambdaAlgebra, m: Module, v: Vertex, x: LambdaRep, g: ModuleMap,
                   tensor: LambdaRep | None = None) -> LambdaMorphism:
    """The morphism M ⊗ P(v) -> X corresponding to g: M -> X_v; slot p goes by X_p g."""
    f = lam.field
    tensor = tensor or tensor_pv(lam, m, v)
    slots = tensor_slots(lam, v)
    blocks = {}
    for i, paths in slots.items():
        target = x.branches[i]
        cols = {u: [] for u in lam.base.vertices}
        for p in paths:
            image = path_map(x, p).compose(g)
            for u in lam.base.vertices:
                cols[u].append(image.blocks[u])
        blocks[i] = ModuleMap(tensor.branches[i], target,
                              {u: f.hstack(cols[u], target.dims[u]) for u in lam.base.vertices})
    return LambdaMorphism(tensor, x, blocks)


def hom_basis(x: LambdaRep, y: LambdaRep) -> list[LambdaMorphism]:
    mx, my = x.to_module(), y.to_module()
    return [LambdaMorphism.from_module_map(x, y, g) for g in hom_space(mx, my)]


def hom_dim(x: LambdaRep, y: LambdaRep) -> int:
    """Dimension of the space of morphisms X -> Y."""
    return module_hom_dim(x.to_module(), y.to_module())


def kernel(g: LambdaMorphism) -> tuple[LambdaRep, LambdaMorphism]:
    lam = g.source.algebra
    k, inc = g.to_module_map().kernel()
    rep = LambdaRep.from_module(lam, k, "ker")
    return rep, LambdaMorphism.from_module_map(rep, g.source, inc)


def image(g: LambdaMorphism) -> tuple[LambdaRep, LambdaMorphism]:
    lam = g.source.algebra
    im, inc = g.to_module_map().image()
    rep = LambdaRep.from_module(lam, im, "im")
    return rep, LambdaMorphism.from_module_map(rep, g.target, inc)


def cokernel(g: LambdaMorphism) -> tuple[LambdaRep, LambdaMorphism]:
    lam = g.source.algebra
    c, proj = g.to_module_map().cokernel()
    rep = LambdaRep.from_module(lam, c, "coker")
    return rep, LambdaMorphism.from_module_map(g.target, rep, proj)


def quotient_rep(x: LambdaRep, spaces: dict[Vertex, dict[Vertex, Subspace]],
                 name: str = "") -> tuple[LambdaRep, LambdaMorphism]:
    """X / S for subspaces S[i][u] ⊆ (X_i)_u stable under all arrows of Λ."""
    lam = x.algebra
    m = x.to_module()
    flat = {(u, v): spaces[v][u] for (u, v) in lam.tensor.vertices}
    q, proj, _ = quotient(m, flat, name)
    rep = LambdaRep.from_module(lam, q, name)
    return rep, LambdaMorphism.from_module_map(x, rep, proj)


def morphism_from_sum(sources: list[LambdaMorphism], source: LambdaRep) -> LambdaMorphism:
    """[g_1 ... g_k]: ⊕ S_j -> X, with `source` the direct sum of the S_j."""
    lam = source.algebra
    f = lam.field
    target = sources[0].target
    blocks = {}
    for i in lam.quiver.vertices:
        blocks[i] = ModuleMap(source.branches[i], target.branches[i], {
            u: f.hstack([g.blocks[i].blocks[u] for g in sources], target.branches[i].dims[u])
            for u in lam.base.vertices})
    return LambdaMorphism(source, target, blocks)


def direct_sum_all(reps: list[LambdaRep], lam: LambdaAlgebra, name: str = "") -> LambdaRep:
    if not reps:
        return zero_rep(lam, name or "0")
    out = reps[0]
    for r in reps[1:]:
        out = direct_sum(out, r)
    return LambdaRep(lam, out.branches, out.arrows, name or out.name)


def random_rep(lam: LambdaAlgebra, max_dim: int = MAX_BRANCH_DIM,
               rng: np.random.Generator | None = None, seed: int = DEFAULT_SEED,
               name: str = "X") -> LambdaRep:
    """A random representation with every (X_i)_u of dimension <= max_dim.

    Branches are random A-modules. Arrows are drawn in order of decreasing
    source label, so when X_α is drawn every relation ending in α is linear in
    it: X_α must vanish on the images of the already-drawn prefixes.
    """
    rng = rng if rng is not None else np.random.default_rng(seed)
    f = lam.field
    q = lam.quiver
    branches = {v: random_module(lam.base, f, rng, max_dim).renamed(f"{name}_{v}") for v in q.vertices}
    drawn: dict[str, ModuleMap] = {}
    for a in sorted(q.arrows, key=lambda a: (-q.label(a.source), q.position(a.source))):
        src, dst = branches[a.source], branches[a.target]
        killed = {u: [] for u in lam.base.vertices}
        for rho in lam.bound.ideal.generators:
            if rho.last_arrow != a.name:
                continue
            prefix = branches[rho.source].identity()
            for b in rho.arrows[:-1]:
                prefix = drawn[b].compose(prefix)
            for u in lam.base.vertices:
                killed[u].append(prefix.blocks[u])
        spaces = {u: image_space(f, f.hstack(killed[u], src.dims[u])) for u in lam.base.vertices}
        quo, proj, _ = quotient(src, spaces)
        maps = hom_space(quo, dst)
        g = random_module_map(maps, rng)
        drawn[a.name] = g.compose(proj) if g is not None else src.zero_map(dst)
    rep = LambdaRep(lam, branches, drawn, name)
    try:
        return validate_rep(rep)
    except RepresentationError as exc:
        raise RepresentationError(f"random_rep produced an invalid sample: {exc}") from exc
