"""Finite quivers, monomial ideals and the path combinatorics built on them.

Paths are stored in traversal order: `arrows[0]` is applied first. Written
form composes right to left, so the path that runs g then b1 prints as
``b1.g``.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import networkx as nx

from config import PATH_LENGTH_CAP

Vertex = Hashable


class QuiverError(ValueError):
    """Malformed quiver or path."""


class AdmissibilityError(QuiverError):
    """Relation set that is not an honest minimal set of monomial generators."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: Vertex
    target: Vertex


@dataclass(frozen=True)
class Path:
    """A path of the quiver; a length-0 path carries its vertex."""

    arrows: tuple[str, ...]
    source: Vertex
    target: Vertex

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    @property
    def last_arrow(self) -> str:
        if not self.arrows:
            raise QuiverError(f"trivial path e_{self.source} has no last arrow")
        return self.arrows[-1]

    def written(self) -> str:
        if not self.arrows:
            return f"e{self.source}"
        return ".".join(reversed(self.arrows))

    def __str__(self) -> str:
        return self.written()

    def contains(self, word: tuple[str, ...]) -> bool:
        """True iff `word` occurs as a contiguous subpath."""
        n, k = len(self.arrows), len(word)
        return any(self.arrows[i:i + k] == word for i in range(n - k + 1))

    def subpaths(self) -> list[tuple[str, ...]]:
        n = len(self.arrows)
        return [self.arrows[i:j] for i in range(n) for j in range(i + 1, n + 1)]


class Quiver:
    """A finite quiver with named arrows.

    With `acyclic=True` the quiver must have no oriented cycle and every vertex
    gets a label in 1..n with label(j) > label(i) for each arrow j -> i. Integer
    vertices 1..n that already satisfy this keep their own numbers; otherwise a
    topological sort (sinks first, ties by input order) assigns them.
    """

    def __init__(self, vertices: Sequence[Vertex], arrows: Iterable[Arrow | tuple],
                 acyclic: bool = True, name: str = "Q"):
        self.name = name
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError(f"quiver {name}: duplicate vertex names")
        if not self.vertices:
            raise QuiverError(f"quiver {name}: no vertices")
        self.arrows = tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in arrows)
        self._by_name: dict[str, Arrow] = {}
        known = set(self.vertices)
        for a in self.arrows:
            if a.name in self._by_name:
                raise QuiverError(f"quiver {name}: duplicate arrow id {a.name!r}")
            for end in (a.source, a.target):
                if end not in known:
                    raise QuiverError(f"quiver {name}: arrow {a.name!r} uses unknown vertex {end!r}")
            self._by_name[a.name] = a
        self.acyclic = acyclic
        self._position = {v: i for i, v in enumerate(self.vertices)}
        self.graph = nx.MultiDiGraph()
        self.graph.add_nodes_from(self.vertices)
        self.graph.add_edges_from((a.source, a.target, a.name) for a in self.arrows)
        self.labels: dict[Vertex, int] = self._compute_labels() if acyclic else {}

    def __repr__(self) -> str:
        return f"Quiver({self.name}, vertices={list(self.vertices)}, arrows={[a.name for a in self.arrows]})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.vertices == other.vertices and self.arrows == other.arrows and self.acyclic == other.acyclic

    def __hash__(self) -> int:
        return hash((self.vertices, self.arrows, self.acyclic))

    # --- labeling ---

    def _compute_labels(self) -> dict[Vertex, int]:
        try:
            cycle = nx.find_cycle(self.graph)
        except nx.NetworkXNoCycle:
            cycle = []
        if cycle:
            through = [edge[0] for edge in cycle]
            raise QuiverError(f"quiver {self.name} has an oriented cycle through {through}")
        n = len(self.vertices)
        if set(self.vertices) == set(range(1, n + 1)) and all(
                a.source > a.target for a in self.arrows):
            return {v: v for v in self.vertices}
        # sinks first: topological order of the reversed quiver, ties by input order
        order = nx.lexicographical_topological_sort(self.graph.reverse(copy=False),
                                                    key=self._position.__getitem__)
        return {v: i for i, v in enumerate(order, start=1)}

    def label(self, v: Vertex) -> int:
        return self.labels[v]

    def by_label(self) -> list[Vertex]:
        """Vertices in increasing label order (sink side first)."""
        return sorted(self.vertices, key=self.labels.__getitem__)

    @property
    def source_vertex(self) -> Vertex:
        """The vertex carrying the largest label."""
        return max(self.vertices, key=self.labels.__getitem__)

    def position(self, v: Vertex) -> int:
        return self._position[v]

    # --- arrows ---

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise QuiverError(f"quiver {self.name} has no arrow {name!r}") from None

    def has_arrow(self, name: str) -> bool:
        return name in self._by_name

    def arrows_into(self, v: Vertex) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def arrows_from(self, v: Vertex) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def arrows_between(self, j: Vertex, i: Vertex) -> list[Arrow]:
        return [a for a in self.arrows if a.source == j and a.target == i]

    def is_source(self, v: Vertex) -> bool:
        return not self.arrows_into(v)

    def is_sink(self, v: Vertex) -> bool:
        return not self.arrows_from(v)

    # --- paths ---

    def trivial(self, v: Vertex) -> Path:
        if v not in self._position:
            raise QuiverError(f"quiver {self.name} has no vertex {v!r}")
        return Path((), v, v)

    def path(self, arrows: Sequence[str]) -> Path:
        """Path from arrow names in traversal order."""
        arrows = tuple(arrows)
        if not arrows:
            raise QuiverError("use trivial(v) for a length-0 path")
        first = self.arrow(arrows[0])
        current = first.target
        for name in arrows[1:]:
            a = self.arrow(name)
            if a.source != current:
                raise QuiverError(f"arrows {arrows} are not composable at {name!r}")
            current = a.target
        return Path(arrows, first.source, current)

    def parse_path(self, text: str) -> Path:
        """Path from its written form ``a.b2.g`` (composition right to left)."""
        names = [s.strip() for s in text.split(".") if s.strip()]
        return self.path(list(reversed(names)))

    def compose(self, p: Path, q: Path) -> Path:
        """The product pq: first q, then p."""
        if q.target != p.source:
            raise QuiverError(f"cannot compose {p} after {q}: {q.target!r} != {p.source!r}")
        if q.is_trivial:
            return p
        if p.is_trivial:
            return q
        return Path(q.arrows + p.arrows, q.source, p.target)

    def extend(self, p: Path, arrow: Arrow) -> Path:
        """The path arrow * p."""
        if arrow.source != p.target:
            raise QuiverError(f"arrow {arrow.name!r} does not start where {p} ends")
        return Path(p.arrows + (arrow.name,), p.source, arrow.target)

    def all_paths_into(self, v: Vertex) -> list[Path]:
        """Every path of length >= 1 ending at v, ignoring relations (acyclic only)."""
        self._require_acyclic("all_paths_into")
        out = []
        frontier = [Path((a.name,), a.source, a.target) for a in self.arrows_into(v)]
        while frontier:
            out.extend(frontier)
            frontier = [Path((a.name,) + q.arrows, a.source, v)
                        for q in frontier for a in self.arrows_into(q.source)]
        return sorted(out, key=self.sort_key)

    def all_paths(self) -> list[Path]:
        """Every path of the quiver including trivial ones (acyclic only)."""
        self._require_acyclic("all_paths")
        out = [self.trivial(v) for v in self.vertices]
        for v in self.vertices:
            out.extend(self.all_paths_into(v))
        return sorted(out, key=self.sort_key)

    def longest_incoming(self, v: Vertex) -> int:
        """Maximal length of a path (zero or not) ending at v; 0 at a source."""
        self._require_acyclic("longest_incoming")
        upstream = nx.ancestors(self.graph, v) | {v}
        # every vertex here reaches v, so the longest path of the subgraph ends at v
        return nx.dag_longest_path_length(nx.DiGraph(self.graph.subgraph(upstream)))

    def sort_key(self, p: Path) -> tuple:
        return (p.length, p.arrows, self._position[p.source])

    def delete_vertex(self, v: Vertex, name: str | None = None) -> "Quiver":
        """Full subquiver on the other vertices; labels are kept as they were."""
        if v not in self._position:
            raise QuiverError(f"quiver {self.name} has no vertex {v!r}")
        if len(self.vertices) == 1:
            raise QuiverError(f"cannot delete the only vertex of {self.name}")
        kept = [u for u in self.vertices if u != v]
        arrows = [a for a in self.arrows if a.source != v and a.target != v]
        sub = Quiver(kept, arrows, acyclic=self.acyclic, name=name or f"{self.name}'")
        if self.acyclic:
            sub.labels = {u: self.labels[u] for u in kept}
        return sub

    def opposite(self, name: str | None = None) -> "Quiver":
        arrows = [Arrow(a.name, a.target, a.source) for a in self.arrows]
        return Quiver(self.vertices, arrows, acyclic=self.acyclic, name=name or f"{self.name}^op")

    def _require_acyclic(self, what: str) -> None:
        if not self.acyclic:
            raise QuiverError(f"{what} needs an acyclic quiver; {self.name} may have cycles")


@dataclass(frozen=True)
class MonomialIdeal:
    """Ideal generated by a minimal set of paths of length >= 2."""

    quiver: Quiver
    generators: tuple[Path, ...] = field(default_factory=tuple)

    def __post_init__(self):
        words = [g.arrows for g in self.generators]
        for g in self.generators:
            if g.length < 2:
                raise AdmissibilityError(
                    f"relation {g} has length {g.length}; monomial relations need length >= 2")
            self.quiver.path(g.arrows)
        for i, g in enumerate(self.generators):
            for j, h in enumerate(self.generators):
                if i != j and h.contains(words[i]):
                    raise AdmissibilityError(
                        f"relations are not minimal: {g} is a subpath of {h}")

    @classmethod
    def from_written(cls, quiver: Quiver, relations: Iterable[str]) -> "MonomialIdeal":
        return cls(quiver, tuple(quiver.parse_path(r) for r in relations))

    @classmethod
    def from_words(cls, quiver: Quiver, words: Iterable[Sequence[str]]) -> "MonomialIdeal":
        return cls(quiver, tuple(quiver.path(w) for w in words))

    def restrict(self, sub: Quiver) -> "MonomialIdeal":
        """Generators that live entirely inside the subquiver."""
        kept = tuple(g for g in self.generators if all(sub.has_arrow(a) for a in g.arrows))
        return MonomialIdeal(sub, kept)

    def opposite(self, quiver_op: Quiver) -> "MonomialIdeal":
        return MonomialIdeal(quiver_op, tuple(quiver_op.path(tuple(reversed(g.arrows)))
                                              for g in self.generators))

    def contains(self, p: Path) -> bool:
        return in_ideal(p, self)


def in_ideal(p: Path, ideal: MonomialIdeal) -> bool:
    """True iff some generator occurs in p as a contiguous subpath."""
    return any(p.contains(g.arrows) for g in ideal.generators)


def _ends_in_generator(word: tuple[str, ...], ideal: MonomialIdeal) -> bool:
    return any(len(word) >= g.length and word[-g.length:] == g.arrows for g in ideal.generators)


def enumerate_nonzero_paths(q: Quiver, ideal: MonomialIdeal,
                            length_cap: int | None = None) -> list[Path]:
    """All paths not in the ideal, trivial paths included, sorted by (length, arrows).

    With `length_cap` the growth stops one step past the cap, so a caller can
    detect an infinite-dimensional algebra by looking at the longest path.
    """
    if length_cap is None and not q.acyclic:
        length_cap = PATH_LENGTH_CAP
    paths = [q.trivial(v) for v in q.vertices]
    frontier = list(paths)
    while frontier:
        grown = []
        for p in frontier:
            for a in q.arrows_from(p.target):
                word = p.arrows + (a.name,)
                if not _ends_in_generator(word, ideal):
                    grown.append(Path(word, p.source, a.target))
        paths.extend(grown)
        if length_cap is not None and grown and grown[0].length > length_cap:
            break
        frontier = grown
    return sorted(paths, key=q.sort_key)


class BoundQuiver:
    """An acyclic quiver together with a monomial ideal."""

    def __init__(self, quiver: Quiver, ideal: MonomialIdeal | None = None):
        if not quiver.acyclic:
            raise QuiverError(f"bound quiver {quiver.name} must be acyclic")
        self.quiver = quiver
        self.ideal = ideal if ideal is not None else MonomialIdeal(quiver)
        if self.ideal.quiver is not quiver and self.ideal.quiver != quiver:
            raise QuiverError("ideal belongs to a different quiver")

    def __repr__(self) -> str:
        rels = ", ".join(str(g) for g in self.ideal.generators)
        return f"BoundQuiver({self.quiver.name}, I=<{rels}>)"

    @cached_property
    def nonzero_paths(self) -> list[Path]:
        return enumerate_nonzero_paths(self.quiver, self.ideal)

    @cached_property
    def _nonzero_set(self) -> frozenset[Path]:
        return frozenset(self.nonzero_paths)

    def is_nonzero(self, p: Path) -> bool:
        return p in self._nonzero_set

    def in_ideal(self, p: Path) -> bool:
        return in_ideal(p, self.ideal)

    def nonzero_into(self, v: Vertex) -> list[Path]:
        """Nonzero paths of length >= 1 ending at v."""
        return [p for p in self.nonzero_paths if p.length >= 1 and p.target == v]

    def nonzero_from(self, v: Vertex, include_trivial: bool = True) -> list[Path]:
        return [p for p in self.nonzero_paths
                if p.source == v and (include_trivial or p.length >= 1)]

    def paths_between(self, j: Vertex, i: Vertex) -> list[Path]:
        """Nonzero paths of length >= 1 from j to i."""
        if j == i:
            raise QuiverError("paths_between needs distinct vertices")
        return [p for p in self.nonzero_paths if p.length >= 1 and p.source == j and p.target == i]

    def _require_nonzero(self, p: Path, what: str) -> None:
        if p.length < 1:
            raise QuiverError(f"{what} needs a path of length >= 1, got {p}")
        if self.in_ideal(p):
            raise QuiverError(f"{what}: path {p} lies in the ideal")

    def k_set(self, p: Path) -> list[Path]:
        """Nonzero q of length >= 1 ending at s(p) with pq in the ideal."""
        self._require_nonzero(p, "k_set")
        return [q for q in self.nonzero_into(p.source)
                if self.in_ideal(self.quiver.compose(p, q))]

    def b_sets(self, p: Path, all_paths: bool = False) -> tuple[list[str], list[str]]:
        """The arrow sets (B1, B2) splitting Ker X_p.

        B1 holds arrows b into s(p) with pb in the ideal. B2 holds arrows b
        into s(p) with pb nonzero but pq in the ideal for some q whose last
        arrow is b. By default q ranges over nonzero paths; `all_paths=True`
        lets q range over every path into s(p).
        """
        self._require_nonzero(p, "b_sets")
        candidates = self.quiver.all_paths_into(p.source) if all_paths else self.nonzero_into(p.source)
        b1, b2 = [], []
        for a in self.quiver.arrows_into(p.source):
            if self.in_ideal(self.quiver.compose(p, Path((a.name,), a.source, a.target))):
                b1.append(a.name)
            elif any(q.last_arrow == a.name and self.in_ideal(self.quiver.compose(p, q))
                     for q in candidates):
                b2.append(a.name)
        return b1, b2

    def incoming_depth(self, p: Path) -> int:
        """Maximal length of any path (zero or not) into s(p)."""
        return self.quiver.longest_incoming(p.source)

    def delete_source(self) -> tuple["BoundQuiver", Vertex]:
        """Bound quiver with the top-label vertex n removed, and n itself.

        The kept relations are exactly those not starting at n.
        """
        n = self.quiver.source_vertex
        sub = self.quiver.delete_vertex(n)
        return BoundQuiver(sub, self.ideal.restrict(sub)), n

    def opposite(self) -> "BoundQuiver":
        op = self.quiver.opposite()
        return BoundQuiver(op, self.ideal.opposite(op))
