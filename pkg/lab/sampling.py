"""Seeded samplers for the property suites: monic reps, mixed reps, epimorphisms."""

import warnings
from dataclasses import dataclass

import numpy as np

from algebra.modules import ModuleMap, conjugate, random_module
from config import EPI_SAMPLE_ATTEMPTS, MAX_BRANCH_DIM, MONIC_SAMPLE_SHARE, MONIC_SUMMANDS
from representations.constructions import (
    direct_sum_all, hom_basis, morphism_from_sum, random_rep, tensor_pv,
)
from representations.rep import LambdaAlgebra, LambdaMorphism, LambdaRep, direct_sum
from representations.resolution import counit_cover


def spawn_rngs(seed: int, count: int) -> list[np.random.Generator]:
    """One independent generator per sample, fixed by the master seed."""
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(count)]


def transport(x: LambdaRep, rng: np.random.Generator, name: str = "") -> LambdaRep:
    """An isomorphic copy of x under random invertible changes of basis in every branch."""
    lam = x.algebra
    f = lam.field
    branches, isos = {}, {}
    for v, b in x.branches.items():
        changes = {u: f.random_invertible(rng, d) for u, d in b.dims.items()}
        branches[v], isos[v] = conjugate(b, changes, name=b.name)
    arrows = {}
    for a in lam.quiver.arrows:
        g = x.arrows[a.name]
        blocks = {u: f.chain(isos[a.target].blocks[u], g.blocks[u], f.inverse(isos[a.source].blocks[u]))
                  for u in lam.base.vertices}
        arrows[a.name] = ModuleMap(branches[a.source], branches[a.target], blocks)
    return LambdaRep(lam, branches, arrows, name or x.name)


def random_monic_rep(lam: LambdaAlgebra, rng: np.random.Generator, summands: int = MONIC_SUMMANDS,
                     max_dim: int = 2, name: str = "X") -> LambdaRep:
    """⊕_j M_j ⊗ P(v_j) for random A-modules M_j, moved to a random basis.

    Each M ⊗ P(v) is monic and monic reps are closed under sums and
    isomorphism, so the result is monic.
    """
    vertices = list(lam.quiver.vertices)
    count = int(rng.integers(1, summands + 1))
    parts = []
    for _ in range(count):
        v = vertices[int(rng.integers(0, len(vertices)))]
        m = random_module(lam.base, lam.field, rng, max_dim)
        parts.append(tensor_pv(lam, m, v))
    return transport(direct_sum_all(parts, lam), rng, name)


def random_mixed_rep(lam: LambdaAlgebra, rng: np.random.Generator, max_dim: int = MAX_BRANCH_DIM,
                     monic_share: float = MONIC_SAMPLE_SHARE, name: str = "X") -> LambdaRep:
    """A monic sample with probability `monic_share`, otherwise an unconstrained one.

    Unconstrained reps with small branches are rarely monic, so the mix keeps
    both outcomes represented in a suite.
    """
    if rng.random() < monic_share:
        return random_monic_rep(lam, rng, name=name)
    return random_rep(lam, max_dim, rng=rng, name=name)


@dataclass(eq=False)
class EpiSample:
    source: LambdaRep
    map: LambdaMorphism
    via_cover: bool


def _combine(x: LambdaRep, y: LambdaRep, basis: list[LambdaMorphism], coeffs) -> LambdaMorphism:
    blocks = {v: g.scaled(coeffs[0]) for v, g in basis[0].blocks.items()}
    for h, c in zip(basis[1:], coeffs[1:]):
        blocks = {v: blocks[v] + h.blocks[v].scaled(c) for v in blocks}
    return LambdaMorphism(x, y, blocks)


def random_morphism(x: LambdaRep, y: LambdaRep, rng: np.random.Generator) -> LambdaMorphism:
    """A random linear combination of a basis of Hom(X, Y)."""
    basis = hom_basis(x, y)
    if not basis:
        return x.zero_morphism(y)
    return _combine(x, y, basis, x.algebra.field.random(rng, (len(basis),)))


def sample_epimorphism(z: LambdaRep, rng: np.random.Generator, extra: LambdaRep | None = None,
                       attempts: int = EPI_SAMPLE_ATTEMPTS) -> EpiSample:
    """A surjection onto Z from a monic representation.

    First tries random morphisms extra -> Z. When none of `attempts` is onto,
    falls back to [h, c ε]: extra ⊕ P -> Z with P the counit cover of Z, which
    is onto because ε is.
    """
    lam = z.algebra
    f = lam.field
    extra = extra if extra is not None else random_monic_rep(lam, rng, name="E")
    basis = hom_basis(extra, z)
    h = extra.zero_morphism(z)
    for _ in range(attempts if basis else 0):
        h = _combine(extra, z, basis, f.random(rng, (len(basis),)))
        if h.is_surjective():
            return EpiSample(extra, h, False)
    cover = counit_cover(z)
    y = direct_sum(extra, cover.projective, name=f"{extra.name}⊕P")
    c = f.scalar(int(rng.integers(1, 1 << 16)))
    if c == 0:
        c = f.scalar(1)
    scaled = LambdaMorphism(cover.projective, z, {v: g.scaled(c) for v, g in cover.map.blocks.items()})
    g = morphism_from_sum([h, scaled], y)
    if not g.is_surjective():
        warnings.warn(f"counit cover of {z.name} is not onto; epimorphism sample is degenerate")
    return EpiSample(y, g, True)
