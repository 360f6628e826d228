"""Modules over a FiniteAlgebra, module maps, and the standard constructions.

A module is a representation of the algebra's quiver: a vector space per
vertex and a matrix per arrow (target dim x source dim), acting on columns.
"""

from dataclasses import dataclass, field
from typing import Hashable

import numpy as np

from algebra.presentation import FiniteAlgebra
from linalg.field import Field, Matrix
from linalg.subspace import Subspace, image_space, kernel_basis, quotient_with_projection
from quiver.paths import Vertex


class ModuleError(ValueError):
    """Inconsistent module or module-map data."""


@dataclass(eq=False)
class Module:
    algebra: FiniteAlgebra
    field: Field
    dims: dict[Vertex, int]
    maps: dict[Hashable, Matrix] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        known = set(self.algebra.vertices)
        for v in self.dims:
            if v not in known:
                raise ModuleError(f"module {self.name}: unknown vertex {v!r}")
        self.dims = {v: int(self.dims.get(v, 0)) for v in self.algebra.vertices}
        maps = {}
        for a in self.algebra.arrows:
            shape = (self.dims[a.target], self.dims[a.source])
            m = self.maps.get(a.name)
            if m is None:
                m = self.field.zeros(*shape)
            elif m.shape != shape:
                raise ModuleError(
                    f"module {self.name}: arrow {a.name!r} has matrix shape {m.shape}, expected {shape}")
            maps[a.name] = m
        unknown = set(self.maps) - set(maps)
        if unknown:
            raise ModuleError(f"module {self.name}: matrices for unknown arrows {sorted(map(str, unknown))}")
        self.maps = maps
        self._actions: dict[int, Matrix] = {}

    def __repr__(self) -> str:
        return f"Module({self.name or '?'}, dims={self.dim_vector})"

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.algebra.vertices)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def offsets(self) -> dict[Vertex, int]:
        out, k = {}, 0
        for v in self.algebra.vertices:
            out[v] = k
            k += self.dims[v]
        return out

    def action(self, b: int) -> Matrix:
        """Matrix of the basis element b: M_{s(b)} -> M_{t(b)}."""
        if b not in self._actions:
            e = self.algebra.basis[b]
            if not e.word:
                self._actions[b] = self.field.eye(self.dims[e.source])
            else:
                arrow, rest = self.algebra.decompose(b)
                self._actions[b] = self.field.matmul(self.maps[arrow], self.action(rest))
        return self._actions[b]

    def word_matrix(self, source: Vertex, word) -> Matrix:
        out = self.field.eye(self.dims[source])
        for a in word:
            out = self.field.matmul(self.maps[a], out)
        return out

    def first_violation(self) -> str | None:
        """Description of the first relation the arrow matrices break, or None."""
        f = self.field
        for b, arrow, c in self.algebra.relations:
            lhs = f.matmul(self.maps[arrow], self.action(b))
            if c is None:
                if not f.is_zero(lhs):
                    return (f"relation {arrow}·{self.algebra.element_label(b)} = 0 fails "
                            f"in module {self.name or '?'}")
            elif not f.equal(lhs, self.action(c)):
                return (f"relation {arrow}·{self.algebra.element_label(b)} = "
                        f"{self.algebra.element_label(c)} fails in module {self.name or '?'}")
        return None

    def is_valid(self) -> bool:
        return self.first_violation() is None

    def validate(self) -> "Module":
        problem = self.first_violation()
        if problem:
            raise ModuleError(problem)
        return self

    def identity(self) -> "ModuleMap":
        return ModuleMap(self, self, {v: self.field.eye(d) for v, d in self.dims.items()})

    def zero_map(self, target: "Module") -> "ModuleMap":
        return ModuleMap(self, target, {v: self.field.zeros(target.dims[v], self.dims[v])
                                        for v in self.algebra.vertices})

    def renamed(self, name: str) -> "Module":
        return Module(self.algebra, self.field, dict(self.dims), dict(self.maps), name)


@dataclass(eq=False)
class ModuleMap:
    source: Module
    target: Module
    blocks: dict[Vertex, Matrix]

    def __post_init__(self):
        f = self.source.field
        blocks = {}
        for v in self.source.algebra.vertices:
            shape = (self.target.dims[v], self.source.dims[v])
            m = self.blocks.get(v)
            if m is None:
                m = f.zeros(*shape)
            elif m.shape != shape:
                raise ModuleError(f"map block at {v!r} has shape {m.shape}, expected {shape}")
            blocks[v] = m
        self.blocks = blocks

    @property
    def field(self) -> Field:
        return self.source.field

    def is_valid(self) -> bool:
        """Commutes with every arrow."""
        f = self.field
        for a in self.source.algebra.arrows:
            lhs = f.matmul(self.target.maps[a.name], self.blocks[a.source])
            rhs = f.matmul(self.blocks[a.target], self.source.maps[a.name])
            if not f.equal(lhs, rhs):
                return False
        return True

    def compose(self, inner: "ModuleMap") -> "ModuleMap":
        """self ∘ inner."""
        return ModuleMap(inner.source, self.target,
                         {v: self.field.matmul(self.blocks[v], inner.blocks[v]) for v in self.blocks})

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target,
                         {v: self.field.add(self.blocks[v], other.blocks[v]) for v in self.blocks})

    def scaled(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target,
                         {v: self.field.scale(c, self.blocks[v]) for v in self.blocks})

    def is_zero(self) -> bool:
        return all(self.field.is_zero(m) for m in self.blocks.values())

    def rank(self) -> int:
        return sum(self.field.rank(m) for m in self.blocks.values())

    def is_injective(self) -> bool:
        return self.rank() == self.source.total_dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.total_dim

    def is_isomorphism(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def matrix(self) -> Matrix:
        return self.field.block_diag([self.blocks[v] for v in self.source.algebra.vertices])

    def kernel(self) -> tuple[Module, "ModuleMap"]:
        spaces = {v: kernel_basis(self.field, m) for v, m in self.blocks.items()}
        return submodule(self.source, spaces, name="ker")

    def image(self) -> tuple[Module, "ModuleMap"]:
        spaces = {v: image_space(self.field, m) for v, m in self.blocks.items()}
        return submodule(self.target, spaces, name="im")

    def cokernel(self) -> tuple[Module, "ModuleMap"]:
        spaces = {v: image_space(self.field, m) for v, m in self.blocks.items()}
        quo, proj, _ = quotient(self.target, spaces, name="coker")
        return quo, proj


def submodule(m: Module, spaces: dict[Vertex, Subspace], name: str = "") -> tuple[Module, ModuleMap]:
    """Module on the given (arrow-stable) subspaces, with its inclusion.

    Coordinates are read off at the pivot rows of each echelon basis.
    """
    f = m.field
    maps = {}
    for a in m.algebra.arrows:
        s, t = spaces[a.source], spaces[a.target]
        moved = f.matmul(m.maps[a.name], s.columns)
        maps[a.name] = moved[list(t.pivots), :] if t.dim else f.zeros(0, s.dim)
    sub = Module(m.algebra, f, {v: spaces[v].dim for v in m.algebra.vertices}, maps, name)
    inclusion = ModuleMap(sub, m, {v: spaces[v].columns for v in m.algebra.vertices})
    return sub, inclusion


def quotient(m: Module, spaces: dict[Vertex, Subspace], name: str = "") -> tuple[Module, ModuleMap, dict]:
    """M / S for an arrow-stable family of subspaces; returns the projection and sections."""
    f = m.field
    quots = {v: quotient_with_projection(f, m.dims[v], spaces[v]) for v in m.algebra.vertices}
    maps = {a.name: f.chain(quots[a.target].projection, m.maps[a.name], quots[a.source].section)
            for a in m.algebra.arrows}
    quo = Module(m.algebra, f, {v: q.dim for v, q in quots.items()}, maps, name)
    projection = ModuleMap(m, quo, {v: q.projection for v, q in quots.items()})
    return quo, projection, {v: q.section for v, q in quots.items()}


def direct_sum(modules: list[Module], name: str = "") -> Module:
    if not modules:
        raise ModuleError("direct sum of no modules needs an algebra; use zero_module")
    first = modules[0]
    f = first.field
    dims = {v: sum(m.dims[v] for m in modules) for v in first.algebra.vertices}
    maps = {a.name: f.block_diag([m.maps[a.name] for m in modules]) for a in first.algebra.arrows}
    return Module(first.algebra, f, dims, maps, name)


def direct_sum_maps(maps: list[ModuleMap]) -> ModuleMap:
    source = direct_sum([g.source for g in maps])
    target = direct_sum([g.target for g in maps])
    f = source.field
    return ModuleMap(source, target, {v: f.block_diag([g.blocks[v] for g in maps])
                                      for v in source.algebra.vertices})


def zero_module(algebra: FiniteAlgebra, f: Field, name: str = "0") -> Module:
    return Module(algebra, f, {v: 0 for v in algebra.vertices}, {}, name)


def hom_system(m: Module, n: Module) -> tuple[Matrix, dict[Vertex, int]]:
    """Linear system whose kernel is Hom(M, N).

    The unknown f_v (N_v x M_v) is stored row-major at offset[v]; each arrow
    β: s -> t contributes N(β) f_s - f_t M(β) = 0.
    """
    f = m.field
    offsets, total = {}, 0
    for v in m.algebra.vertices:
        offsets[v] = total
        total += n.dims[v] * m.dims[v]
    blocks = []
    for a in m.algebra.arrows:
        s, t = a.source, a.target
        rows = n.dims[t] * m.dims[s]
        if rows == 0:
            continue
        block = f.zeros(rows, total)
        left = f.kron(n.maps[a.name], f.eye(m.dims[s]))
        right = f.kron(f.eye(n.dims[t]), m.maps[a.name].T)
        ls, rt = offsets[s], offsets[t]
        block[:, ls:ls + left.shape[1]] = f.add(block[:, ls:ls + left.shape[1]], left)
        block[:, rt:rt + right.shape[1]] = f.sub(block[:, rt:rt + right.shape[1]], right)
        blocks.append(block)
    return f.vstack(blocks, total), offsets


def _unpack(m: Module, n: Module, vec: Matrix, offsets: dict[Vertex, int]) -> ModuleMap:
    blocks = {}
    for v in m.algebra.vertices:
        size = n.dims[v] * m.dims[v]
        blocks[v] = vec[offsets[v]:offsets[v] + size].reshape(n.dims[v], m.dims[v])
    return ModuleMap(m, n, blocks)


def hom_space(m: Module, n: Module) -> list[ModuleMap]:
    """A basis of Hom_A(M, N)."""
    system, offsets = hom_system(m, n)
    if system.shape[1] == 0:
        return []
    null = m.field.kernel(system)
    return [_unpack(m, n, null[:, j], offsets) for j in range(null.shape[1])]


def hom_dim(m: Module, n: Module) -> int:
    system, _ = hom_system(m, n)
    return system.shape[1] - m.field.rank(system)


def combine(maps: list[ModuleMap], coeffs) -> ModuleMap:
    out = maps[0].scaled(coeffs[0])
    for g, c in zip(maps[1:], coeffs[1:]):
        out = out + g.scaled(c)
    return out


# ── Free and projective modules ───────────────────────────────────────────────

@dataclass(eq=False)
class FreeModule:
    """⊕_g A e_{x_g}: basis (g, b) for each generator g and basis element b starting at x_g."""

    module: Module
    generators: list[Vertex]
    basis_at: dict[Vertex, list[tuple[int, int]]]

    def __post_init__(self):
        self.position = {}
        for v, elems in self.basis_at.items():
            for row, gb in enumerate(elems):
                self.position[gb] = (v, row)

    def generator_vector(self, g: int) -> Matrix:
        """The element e_{x_g} of generator g, as a vector at x_g."""
        f = self.module.field
        x = self.generators[g]
        vec = f.zeros(self.module.dims[x], 1)
        _, row = self.position[(g, self.module.algebra.idempotent(x))]
        vec[row, 0] = f.scalar(1)
        return vec

    def map_to(self, target: Module, images: list[Matrix]) -> ModuleMap:
        """The module map sending generator g to images[g] ∈ target_{x_g}."""
        f = target.field
        algebra = self.module.algebra
        blocks = {}
        for v in algebra.vertices:
            cols = []
            for g, b in self.basis_at[v]:
                cols.append(f.matmul(target.action(b), images[g].reshape(-1, 1)))
            blocks[v] = f.hstack(cols, target.dims[v])
        return ModuleMap(self.module, target, blocks)

    def coefficients(self, vertex: Vertex, vec: Matrix) -> dict[tuple[int, int], object]:
        """Nonzero coordinates of an element at `vertex`, keyed by (g, b)."""
        flat = vec.reshape(-1)
        return {gb: flat[row] for row, gb in enumerate(self.basis_at[vertex]) if flat[row] != 0}


def free_module(algebra: FiniteAlgebra, f: Field, generators: list[Vertex], name: str = "") -> FreeModule:
    basis_at: dict[Vertex, list[tuple[int, int]]] = {v: [] for v in algebra.vertices}
    for g, x in enumerate(generators):
        for b in algebra.basis_from(x):
            basis_at[algebra.basis[b].target].append((g, b))
    index = {v: {gb: row for row, gb in enumerate(elems)} for v, elems in basis_at.items()}
    maps = {}
    for a in algebra.arrows:
        m = f.zeros(len(basis_at[a.target]), len(basis_at[a.source]))
        for col, (g, b) in enumerate(basis_at[a.source]):
            c = algebra.left(a.name, b)
            if c is not None:
                m[index[a.target][(g, c)], col] = f.scalar(1)
        maps[a.name] = m
    module = Module(algebra, f, {v: len(e) for v, e in basis_at.items()}, maps, name)
    return FreeModule(module, list(generators), basis_at)


def projective(algebra: FiniteAlgebra, f: Field, v: Vertex) -> Module:
    """P(v) = A e_v, with basis the basis elements starting at v."""
    return free_module(algebra, f, [v], name=f"P({v})").module


def indecomposable_projectives(algebra: FiniteAlgebra, f: Field) -> list[Module]:
    return [projective(algebra, f, v) for v in algebra.vertices]


def regular_module(algebra: FiniteAlgebra, f: Field) -> Module:
    return free_module(algebra, f, list(algebra.vertices), name=algebra.name).module


def dual_injective(algebra: FiniteAlgebra, f: Field, v: Vertex) -> Module:
    """D(e_v A): dual basis b* for b ending at v, with b* sitting at s(b).

    An arrow β sends b* to the sum of b'* over the b' with b'·β = b.
    """
    elems = algebra.basis_into(v)
    at: dict[Vertex, list[int]] = {u: [] for u in algebra.vertices}
    for b in elems:
        at[algebra.basis[b].source].append(b)
    index = {u: {b: row for row, b in enumerate(bs)} for u, bs in at.items()}
    maps = {}
    for a in algebra.arrows:
        m = f.zeros(len(at[a.target]), len(at[a.source]))
        for row, b2 in enumerate(at[a.target]):
            c = algebra.right(b2, a.name)
            if c is not None and c in index[a.source]:
                m[row, index[a.source][c]] = f.scalar(1)
        maps[a.name] = m
    return Module(algebra, f, {u: len(bs) for u, bs in at.items()}, maps, f"I({v})")


def dual_injectives(algebra: FiniteAlgebra, f: Field) -> list[Module]:
    return [dual_injective(algebra, f, v) for v in algebra.vertices]


def dual_module(algebra: FiniteAlgebra, f: Field) -> Module:
    """D(A_A) as a left module."""
    return direct_sum(dual_injectives(algebra, f), name=f"D({algebra.name})")


def simple_module(algebra: FiniteAlgebra, f: Field, v: Vertex) -> Module:
    return Module(algebra, f, {u: int(u == v) for u in algebra.vertices}, {}, f"S({v})")


def simple_modules(algebra: FiniteAlgebra, f: Field) -> list[Module]:
    return [simple_module(algebra, f, v) for v in algebra.vertices]


def random_module_map(maps: list[ModuleMap], rng: np.random.Generator) -> ModuleMap | None:
    if not maps:
        return None
    f = maps[0].field
    coeffs = f.random(rng, (len(maps),))
    return combine(maps, list(coeffs))


def generated_submodule(m: Module, elements: list[tuple[Vertex, Matrix]]) -> dict[Vertex, Subspace]:
    """Per-vertex subspaces of the submodule generated by (vertex, vector) pairs."""
    f = m.field
    cols: dict[Vertex, list[Matrix]] = {v: [] for v in m.algebra.vertices}
    for x, vec in elements:
        vec = vec.reshape(-1, 1)
        for b in m.algebra.basis_from(x):
            cols[m.algebra.basis[b].target].append(f.matmul(m.action(b), vec))
    return {v: Subspace.span(f, f.hstack(cs, m.dims[v])) for v, cs in cols.items()}


def conjugate(m: Module, changes: dict[Vertex, Matrix], name: str = "") -> tuple[Module, ModuleMap]:
    """The module with maps T_t M(β) T_s^{-1}, and the isomorphism T: M -> that module."""
    f = m.field
    inverses = {v: f.inverse(t) for v, t in changes.items()}
    maps = {a.name: f.chain(changes[a.target], m.maps[a.name], inverses[a.source])
            for a in m.algebra.arrows}
    out = Module(m.algebra, f, dict(m.dims), maps, name or m.name)
    return out, ModuleMap(m, out, dict(changes))


def random_module(algebra: FiniteAlgebra, f: Field, rng: np.random.Generator, max_dim: int,
                  max_generators: int = 2, attempts: int = 100) -> Module:
    """A random module with every M_v of dimension <= max_dim.

    Built as F / N for a free module F on random generators and the submodule N
    generated by random elements, then moved to a random basis.
    """
    vertices = list(algebra.vertices)
    for _ in range(attempts):
        count = int(rng.integers(0, max_generators + 1))
        gens = [vertices[int(rng.integers(0, len(vertices)))] for _ in range(count)]
        free = free_module(algebra, f, gens)
        fm = free.module
        relations = []
        for _ in range(int(rng.integers(0, count + 1))):
            v = vertices[int(rng.integers(0, len(vertices)))]
            if fm.dims[v]:
                relations.append((v, f.random(rng, (fm.dims[v],))))
        spaces = generated_submodule(fm, relations)
        quo, _, _ = quotient(fm, spaces)
        if all(d <= max_dim for d in quo.dims.values()):
            changes = {v: f.random_invertible(rng, d) for v, d in quo.dims.items()}
            out, _ = conjugate(quo, changes, name="M")
            return out
    return zero_module(algebra, f, "M")
