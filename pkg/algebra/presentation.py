"""Finite-dimensional algebras with a multiplicative path basis.

Three presentations share one interface: monomial bound-quiver algebras kQ/I,
tensor products of two such algebras (A ⊗ kQ/I is the algebra Λ whose modules
are the representations of (Q, I) over A), and opposite algebras.

Every basis element b has a source vertex, a target vertex and a word: a
sequence of arrows in traversal order whose product is b. Products of basis
elements are again basis elements or zero, so the algebra is described by the
two tables

    left(β, b)  = β·b  (b first, then β)
    right(b, β) = b·β  (β first, then b)
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Hashable

from config import PATH_LENGTH_CAP
from quiver.paths import AdmissibilityError, Arrow, MonomialIdeal, Quiver, Vertex, \
    enumerate_nonzero_paths


class InfiniteDimensionError(AdmissibilityError):
    """A nonzero path exceeded the length cap: kQ/I is not finite-dimensional."""


@dataclass(frozen=True)
class BasisElement:
    source: Vertex
    target: Vertex
    word: tuple[Hashable, ...]

    @property
    def length(self) -> int:
        return len(self.word)


class FiniteAlgebra:
    """Interface shared by all algebras; subclasses fill `basis` and the two tables."""

    name: str
    vertices: tuple[Vertex, ...]
    arrows: tuple[Arrow, ...]
    basis: list[BasisElement]

    def left(self, arrow: Hashable, b: int) -> int | None:
        raise NotImplementedError

    def right(self, b: int, arrow: Hashable) -> int | None:
        raise NotImplementedError

    def opposite(self) -> "FiniteAlgebra":
        if "_opposite" not in self.__dict__:
            self._opposite = OppositeAlgebra(self)
        return self._opposite

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name}, dim={self.dim})"

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def arrow_map(self) -> dict[Hashable, Arrow]:
        return {a.name: a for a in self.arrows}

    def arrow(self, name: Hashable) -> Arrow:
        return self.arrow_map[name]

    @cached_property
    def _idempotents(self) -> dict[Vertex, int]:
        return {e.source: i for i, e in enumerate(self.basis) if e.length == 0}

    def idempotent(self, v: Vertex) -> int:
        return self._idempotents[v]

    @cached_property
    def _from(self) -> dict[Vertex, list[int]]:
        out: dict[Vertex, list[int]] = {v: [] for v in self.vertices}
        for i, e in enumerate(self.basis):
            out[e.source].append(i)
        return out

    @cached_property
    def _into(self) -> dict[Vertex, list[int]]:
        out: dict[Vertex, list[int]] = {v: [] for v in self.vertices}
        for i, e in enumerate(self.basis):
            out[e.target].append(i)
        return out

    def basis_from(self, v: Vertex) -> list[int]:
        """Basis elements starting at v: the basis of the projective A e_v."""
        return self._from[v]

    def basis_into(self, v: Vertex) -> list[int]:
        """Basis elements ending at v: the basis of the right projective e_v A."""
        return self._into[v]

    def evaluate(self, source: Vertex, word) -> int | None:
        """Basis index of the product of `word` (traversal order) starting at source."""
        b = self.idempotent(source)
        for a in word:
            b = self.left(a, b)
            if b is None:
                return None
        return b

    def multiply(self, x: int, y: int) -> int | None:
        """x·y: first y, then x."""
        if self.basis[y].target != self.basis[x].source:
            return None
        b = y
        for a in self.basis[x].word:
            b = self.left(a, b)
            if b is None:
                return None
        return b

    def decompose(self, b: int) -> tuple[Hashable, int]:
        """(β, b') with b = β·b', taken from the last letter of b's word."""
        e = self.basis[b]
        if not e.word:
            raise ValueError(f"basis element {b} is an idempotent")
        return e.word[-1], self.evaluate(e.source, e.word[:-1])

    @cached_property
    def relations(self) -> list[tuple[int, Hashable, int | None]]:
        """Pairs (b, β, β·b) where β·b is not just the word of b followed by β.

        A representation of the arrows defines a module exactly when each of
        these holds for the arrow matrices.
        """
        out = []
        for b, e in enumerate(self.basis):
            for a in self.arrows:
                if a.source != e.target:
                    continue
                c = self.left(a.name, b)
                if c is None or self.basis[c].word != e.word + (a.name,):
                    out.append((b, a.name, c))
        return out

    def is_semisimple(self) -> bool:
        """The radical is spanned by the arrows, so this is "no arrows"."""
        return not self.arrows

    def element_label(self, b: int) -> str:
        e = self.basis[b]
        if not e.word:
            return f"e{e.source}"
        return ".".join(str(a) for a in reversed(e.word))


class MonomialAlgebra(FiniteAlgebra):
    """kQ/I for a finite quiver (cycles allowed) and a monomial ideal I.

    The basis is the set of nonzero paths in deterministic order.
    """

    def __init__(self, quiver: Quiver, ideal: MonomialIdeal | None = None,
                 name: str | None = None, length_cap: int = PATH_LENGTH_CAP):
        self.quiver = quiver
        self.ideal = ideal if ideal is not None else MonomialIdeal(quiver)
        self.name = name or quiver.name
        self.vertices = quiver.vertices
        self.arrows = quiver.arrows
        paths = enumerate_nonzero_paths(quiver, self.ideal, length_cap=length_cap)
        longest = max(p.length for p in paths)
        if longest > length_cap:
            raise InfiniteDimensionError(
                f"algebra {self.name}: nonzero paths longer than {length_cap}; "
                f"no power of the arrow ideal lies in the relations")
        self.paths = paths
        self.basis = [BasisElement(p.source, p.target, p.arrows) for p in paths]
        self._index = {(p.source, p.arrows): i for i, p in enumerate(paths)}

    def left(self, arrow, b):
        e = self.basis[b]
        return self._index.get((e.source, e.word + (arrow,)))

    def right(self, b, arrow):
        e = self.basis[b]
        a = self.quiver.arrow(arrow)
        if a.target != e.source:
            return None
        return self._index.get((a.source, (arrow,) + e.word))


def build_algebra(quiver: Quiver, ideal: MonomialIdeal | None = None,
                  name: str | None = None) -> MonomialAlgebra:
    """The base algebra kQ/I; rejects infinite-dimensional presentations."""
    return MonomialAlgebra(quiver, ideal, name=name)


BaseAlgebra = MonomialAlgebra


class TensorAlgebra(FiniteAlgebra):
    """first ⊗ second over k.

    Vertices are pairs (u, v). The arrow (x, v) is the arrow x of `first`
    sitting at the vertex v of `second`; the arrow (u, α) is α of `second`
    at u. Basis elements are pairs (i, j); their word runs the `first` part
    first, then the `second` part.
    """

    def __init__(self, first: FiniteAlgebra, second: FiniteAlgebra, name: str | None = None):
        self.first = first
        self.second = second
        self.name = name or f"{first.name}⊗{second.name}"
        self.vertices = tuple((u, v) for v in second.vertices for u in first.vertices)
        arrows = []
        self._kind: dict[Hashable, tuple[str, Hashable]] = {}
        for v in second.vertices:
            for x in first.arrows:
                arrows.append(Arrow((x.name, v), (x.source, v), (x.target, v)))
                self._kind[(x.name, v)] = ("first", x.name)
        for u in first.vertices:
            for alpha in second.arrows:
                name_ = (u, alpha.name)
                if name_ in self._kind:
                    raise AdmissibilityError(
                        f"arrow name clash in {self.name}: {name_!r} is used by both factors")
                arrows.append(Arrow(name_, (u, alpha.source), (u, alpha.target)))
                self._kind[name_] = ("second", alpha.name)
        self.arrows = tuple(arrows)
        self.basis = []
        self._index: dict[tuple[int, int], int] = {}
        for j, ej in enumerate(second.basis):
            for i, ei in enumerate(first.basis):
                word = tuple((x, ej.source) for x in ei.word) + tuple((ei.target, a) for a in ej.word)
                self._index[(i, j)] = len(self.basis)
                self.basis.append(BasisElement((ei.source, ej.source), (ei.target, ej.target), word))
        self._pairs = {k: ij for ij, k in self._index.items()}

    def pair(self, b: int) -> tuple[int, int]:
        return self._pairs[b]

    def index(self, i: int, j: int) -> int:
        return self._index[(i, j)]

    def left(self, arrow, b):
        kind, name_ = self._kind[arrow]
        i, j = self._pairs[b]
        if kind == "first":
            if self.arrow(arrow).source != self.basis[b].target:
                return None
            i2 = self.first.left(name_, i)
            return None if i2 is None else self._index[(i2, j)]
        if self.arrow(arrow).source != self.basis[b].target:
            return None
        j2 = self.second.left(name_, j)
        return None if j2 is None else self._index[(i, j2)]

    def right(self, b, arrow):
        kind, name_ = self._kind[arrow]
        i, j = self._pairs[b]
        if self.arrow(arrow).target != self.basis[b].source:
            return None
        if kind == "first":
            i2 = self.first.right(i, name_)
            return None if i2 is None else self._index[(i2, j)]
        j2 = self.second.right(j, name_)
        return None if j2 is None else self._index[(i, j2)]

    def arrow_kind(self, arrow) -> tuple[str, Hashable]:
        return self._kind[arrow]


class OppositeAlgebra(FiniteAlgebra):
    """A^op: same basis, arrows reversed, words read backwards."""

    def __init__(self, base: FiniteAlgebra):
        self.base = base
        self.name = f"{base.name}^op"
        self.vertices = base.vertices
        self.arrows = tuple(Arrow(a.name, a.target, a.source) for a in base.arrows)
        self.basis = [BasisElement(e.target, e.source, tuple(reversed(e.word))) for e in base.basis]

    def left(self, arrow, b):
        return self.base.right(b, arrow)

    def right(self, b, arrow):
        return self.base.left(arrow, b)

    def opposite(self) -> FiniteAlgebra:
        return self.base
