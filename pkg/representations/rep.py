"""Representations of a bound quiver (Q, I) over a base algebra A.

These are the modules over Λ = A ⊗ kQ/I: an A-module X_i at each vertex i of Q
and an A-map X_α: X_{s(α)} -> X_{e(α)} per arrow, with X_ρ = 0 on every
relation ρ. Hom, kernels and cokernels go through `to_module`, which flattens
a representation to a module over the tensor algebra.
"""

from dataclasses import dataclass, field

from algebra.modules import Module, ModuleMap, direct_sum as direct_sum_modules
from algebra.presentation import FiniteAlgebra, MonomialAlgebra, TensorAlgebra
from linalg.field import Field
from quiver.paths import BoundQuiver, Path, Vertex


class RepresentationError(ValueError):
    """A representation breaks a relation, a commutation square or a shape constraint."""


class LambdaAlgebra:
    """Λ = A ⊗ kQ/I, kept as its two factors plus the flattened tensor algebra."""

    def __init__(self, base: FiniteAlgebra, bound: BoundQuiver, field: Field, name: str = "Λ"):
        self.base = base
        self.bound = bound
        self.field = field
        self.name = name
        self.quiver = bound.quiver
        self.path_algebra = MonomialAlgebra(bound.quiver, bound.ideal, name=bound.quiver.name)
        self.tensor = TensorAlgebra(base, self.path_algebra, name=f"{base.name}⊗{self.path_algebra.name}")

    def __repr__(self) -> str:
        return f"LambdaAlgebra({self.base.name} ⊗ {self.bound!r}, {self.field.name})"

    def restrict(self, bound: BoundQuiver, name: str | None = None) -> "LambdaAlgebra":
        return LambdaAlgebra(self.base, bound, self.field, name or f"{self.name}'")

    def zero_branch(self) -> Module:
        return Module(self.base, self.field, {u: 0 for u in self.base.vertices}, {}, "0")


@dataclass(eq=False)
class LambdaRep:
    algebra: LambdaAlgebra
    branches: dict[Vertex, Module]
    arrows: dict[str, ModuleMap] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        lam = self.algebra
        self.branches = dict(self.branches)
        self.arrows = dict(self.arrows)
        for v in lam.quiver.vertices:
            if v not in self.branches:
                self.branches[v] = lam.zero_branch()
        for a in lam.quiver.arrows:
            if a.name not in self.arrows:
                self.arrows[a.name] = self.branches[a.source].zero_map(self.branches[a.target])
        extra = set(self.arrows) - {a.name for a in lam.quiver.arrows}
        if extra:
            raise RepresentationError(f"rep {self.name}: maps for unknown arrows {sorted(extra)}")

    def __repr__(self) -> str:
        return f"LambdaRep({self.name or '?'}, dims={self.dim_vector})"

    def branch(self, v: Vertex) -> Module:
        return self.branches[v]

    @property
    def dim_vector(self) -> dict[Vertex, int]:
        """k-dimension of each branch."""
        return {v: self.branches[v].total_dim for v in self.algebra.quiver.vertices}

    @property
    def total_dim(self) -> int:
        return sum(self.dim_vector.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_map(self, p: Path) -> ModuleMap:
        return path_map(self, p)

    def to_module(self) -> Module:
        """The same data as a module over A ⊗ kQ/I."""
        lam = self.algebra
        dims = {(u, v): self.branches[v].dims[u] for (u, v) in lam.tensor.vertices}
        maps = {}
        for a in lam.tensor.arrows:
            kind, name = lam.tensor.arrow_kind(a.name)
            u, v = a.source
            if kind == "first":
                maps[a.name] = self.branches[v].maps[name]
            else:
                maps[a.name] = self.arrows[name].blocks[u]
        return Module(lam.tensor, lam.field, dims, maps, self.name)

    @classmethod
    def from_module(cls, lam: LambdaAlgebra, m: Module, name: str = "") -> "LambdaRep":
        base = lam.base
        branches = {}
        for v in lam.quiver.vertices:
            dims = {u: m.dims[(u, v)] for u in base.vertices}
            maps = {x.name: m.maps[(x.name, v)] for x in base.arrows}
            branches[v] = Module(base, lam.field, dims, maps, f"{name}_{v}")
        arrows = {}
        for a in lam.quiver.arrows:
            blocks = {u: m.maps[(u, a.name)] for u in base.vertices}
            arrows[a.name] = ModuleMap(branches[a.source], branches[a.target], blocks)
        return cls(lam, branches, arrows, name or m.name)

    def restrict(self, lam: LambdaAlgebra, name: str | None = None) -> "LambdaRep":
        """Branches and arrows of the subquiver of `lam`."""
        q = lam.quiver
        return LambdaRep(lam, {v: self.branches[v] for v in q.vertices},
                         {a.name: self.arrows[a.name] for a in q.arrows}, name or f"{self.name}'")

    def identity(self) -> "LambdaMorphism":
        return LambdaMorphism(self, self, {v: b.identity() for v, b in self.branches.items()})

    def zero_morphism(self, target: "LambdaRep") -> "LambdaMorphism":
        return LambdaMorphism(self, target, {v: b.zero_map(target.branches[v])
                                             for v, b in self.branches.items()})


def path_map(x: LambdaRep, p: Path) -> ModuleMap:
    """X_p = X_{α_l} ∘ ... ∘ X_{α_1}; the identity of X_v for e_v."""
    out = x.branches[p.source].identity()
    for a in p.arrows:
        out = x.arrows[a].compose(out)
    return out


def validate_rep(x: LambdaRep) -> LambdaRep:
    """Checks branch modules, A-linearity of each X_α and X_ρ = 0; returns x."""
    lam = x.algebra
    for v, b in x.branches.items():
        if b.algebra is not lam.base:
            raise RepresentationError(f"rep {x.name}: branch {v} lives over another algebra")
        problem = b.first_violation()
        if problem:
            raise RepresentationError(f"rep {x.name}: branch {v}: {problem}")
    for a in lam.quiver.arrows:
        g = x.arrows[a.name]
        if g.source.dims != x.branches[a.source].dims or g.target.dims != x.branches[a.target].dims:
            raise RepresentationError(f"rep {x.name}: map {a.name} has the wrong shape")
        if not g.is_valid():
            raise RepresentationError(f"rep {x.name}: map {a.name} is not an A-map "
                                      f"(a commutation square fails)")
    for rho in lam.bound.ideal.generators:
        if not path_map(x, rho).is_zero():
            raise RepresentationError(f"rep {x.name}: relation {rho} is violated (X_{rho} != 0)")
    return x


@dataclass(eq=False)
class LambdaMorphism:
    """A family of A-maps f_i: X_i -> Y_i with Y_α f_j = f_i X_α for α: j -> i."""

    source: LambdaRep
    target: LambdaRep
    blocks: dict[Vertex, ModuleMap]

    def first_violation(self) -> str | None:
        for v, g in self.blocks.items():
            if not g.is_valid():
                return f"component at {v} is not an A-map"
        f = self.source.algebra.field
        for a in self.source.algebra.quiver.arrows:
            lhs = self.target.arrows[a.name].compose(self.blocks[a.source])
            rhs = self.blocks[a.target].compose(self.source.arrows[a.name])
            for u in lhs.blocks:
                if not f.equal(lhs.blocks[u], rhs.blocks[u]):
                    return f"square at arrow {a.name} does not commute"
        return None

    def is_valid(self) -> bool:
        return self.first_violation() is None

    def compose(self, inner: "LambdaMorphism") -> "LambdaMorphism":
        return LambdaMorphism(inner.source, self.target,
                              {v: self.blocks[v].compose(inner.blocks[v]) for v in self.blocks})

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.blocks.values())

    def is_injective(self) -> bool:
        return all(g.is_injective() for g in self.blocks.values())

    def is_surjective(self) -> bool:
        return all(g.is_surjective() for g in self.blocks.values())

    def to_module_map(self, source: Module | None = None, target: Module | None = None) -> ModuleMap:
        source = source or self.source.to_module()
        target = target or self.target.to_module()
        blocks = {(u, v): self.blocks[v].blocks[u] for (u, v) in source.algebra.vertices}
        return ModuleMap(source, target, blocks)

    @classmethod
    def from_module_map(cls, x: LambdaRep, y: LambdaRep, g: ModuleMap) -> "LambdaMorphism":
        base = x.algebra.base
        blocks = {v: ModuleMap(x.branches[v], y.branches[v], {u: g.blocks[(u, v)] for u in base.vertices})
                  for v in x.algebra.quiver.vertices}
        return cls(x, y, blocks)


@dataclass(eq=False)
class ShortExactSeq:
    """0 -> X --f--> Y --g--> Z -> 0, exact at every branch."""

    f: LambdaMorphism
    g: LambdaMorphism

    @property
    def left(self) -> LambdaRep:
        return self.f.source

    @property
    def middle(self) -> LambdaRep:
        return self.f.target

    @property
    def right(self) -> LambdaRep:
        return self.g.target

    def is_exact(self) -> bool:
        return is_exact(self)


def is_exact(seq: ShortExactSeq) -> bool:
    """Per branch: f injective, g surjective, g f = 0 and dim Y_i = rank f_i + rank g_i."""
    if seq.f.target is not seq.g.source:
        return False
    for v in seq.middle.algebra.quiver.vertices:
        fv, gv = seq.f.blocks[v], seq.g.blocks[v]
        if not (fv.is_injective() and gv.is_surjective()):
            return False
        if not gv.compose(fv).is_zero():
            return False
        if fv.rank() + gv.rank() != seq.middle.branches[v].total_dim:
            return False
    return True


def direct_sum(x: LambdaRep, y: LambdaRep, name: str = "") -> LambdaRep:
    lam = x.algebra
    branches = {v: direct_sum_modules([x.branches[v], y.branches[v]]) for v in lam.quiver.vertices}
    f = lam.field
    arrows = {}
    for a in lam.quiver.arrows:
        gx, gy = x.arrows[a.name], y.arrows[a.name]
        arrows[a.name] = ModuleMap(branches[a.source], branches[a.target],
                                   {u: f.block_diag([gx.blocks[u], gy.blocks[u]]) for u in lam.base.vertices})
    return LambdaRep(lam, branches, arrows, name or f"{x.name}⊕{y.name}")


def zero_rep(lam: LambdaAlgebra, name: str = "0") -> LambdaRep:
    return LambdaRep(lam, {}, {}, name)


def reps_equal(x: LambdaRep, y: LambdaRep) -> bool:
    """Same branch modules and same arrow matrices, entry by entry."""
    lam = x.algebra
    f = lam.field
    for v in lam.quiver.vertices:
        bx, by = x.branches[v], y.branches[v]
        if bx.dims != by.dims:
            return False
        if any(not f.equal(bx.maps[a], by.maps[a]) for a in bx.maps):
            return False
    for a in lam.quiver.arrows:
        gx, gy = x.arrows[a.name], y.arrows[a.name]
        if any(not f.equal(gx.blocks[u], gy.blocks[u]) for u in lam.base.vertices):
            return False
    return True


def rep_payload(x: LambdaRep) -> dict:
    """Plain-data form of a representation, for witnesses in reports."""
    lam = x.algebra
    f = lam.field
    branches = {}
    for v in lam.quiver.vertices:
        b = x.branches[v]
        branches[str(v)] = {"dims": list(b.dim_vector),
                            "maps": {str(a): f.to_lists(m) for a, m in b.maps.items()}}
    arrows = {a.name: {str(u): f.to_lists(x.arrows[a.name].blocks[u]) for u in lam.base.vertices}
              for a in lam.quiver.arrows}
    return {"name": x.name, "branches": branches, "arrows": arrows}
