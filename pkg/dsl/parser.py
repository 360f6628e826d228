"""Parsing .mono files into algebras, modules and representations.

Every error carries the line and column of the item it is about.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from lark import Token, Tree
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from algebra.modules import Module, ModuleError, ModuleMap, direct_sum as direct_sum_modules
from algebra.presentation import MonomialAlgebra, build_algebra
from dsl.grammar import mono_parser
from linalg.field import Field, FieldError, Matrix, make_field
from quiver.paths import BoundQuiver, MonomialIdeal, Quiver, QuiverError, Vertex
from representations.rep import LambdaAlgebra, LambdaRep, RepresentationError, validate_rep


class SpecError(ValueError):
    """Syntax or semantic error in a problem file."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None and line > 0 else ""
        super().__init__(where + message)


@dataclass(eq=False)
class SpecFile:
    field: Field
    algebra_name: str
    base: MonomialAlgebra
    quiver_name: str
    bound: BoundQuiver
    lam: LambdaAlgebra
    modules: dict[str, Module] = field(default_factory=dict)
    reps: dict[str, LambdaRep] = field(default_factory=dict)
    text: str = ""

    @property
    def quiver(self) -> Quiver:
        return self.bound.quiver

    def rep(self, name: str) -> LambdaRep:
        if name not in self.reps:
            raise SpecError(f"no rep named {name!r}; defined: {', '.join(self.reps) or 'none'}")
        return self.reps[name]

    def module(self, name: str) -> Module:
        if name not in self.modules:
            raise SpecError(f"no module named {name!r}; defined: {', '.join(self.modules) or 'none'}")
        return self.modules[name]

    def vertex(self, text: str) -> Vertex:
        """A vertex of Q from its command-line spelling."""
        for v in self.quiver.vertices:
            if str(v) == text:
                return v
        raise SpecError(f"quiver {self.quiver_name} has no vertex {text!r}")


def _where(node) -> tuple[int | None, int | None]:
    if isinstance(node, Token):
        return node.line, node.column
    meta = getattr(node, "meta", None)
    if meta is None or getattr(meta, "empty", True):
        return None, None
    return meta.line, meta.column


def _fail(node, message: str) -> SpecError:
    return SpecError(message, *_where(node))


def _vertex(node: Tree) -> Vertex:
    (tok,) = node.children
    return int(tok) if tok.type == "INT" else str(tok)


def _present(children) -> list:
    return [c for c in children if c is not None]


def _number(node: Tree):
    num, den = node.children[0], node.children[1] if len(node.children) > 1 else None
    if den is None:
        return int(num)
    if int(den) == 0:
        raise _fail(node, "zero denominator")
    return Fraction(int(num), int(den))


def _matrix(f: Field, node: Tree, rows: int, cols: int, what: str) -> Matrix:
    data = [[_number(n) for n in _present(row.children)] for row in _present(node.children)]
    if len(data) != rows or any(len(r) != cols for r in data):
        got = f"{len(data)}x{len(data[0]) if data else 0}"
        raise _fail(node, f"{what}: matrix is {got}, expected {rows}x{cols}")
    if rows == 0 or cols == 0:
        return f.zeros(rows, cols)
    try:
        return f.array(data)
    except FieldError as exc:
        raise _fail(node, f"{what}: {exc}") from None


@dataclass
class _Graph:
    name: str
    vertices: list[Vertex] = field(default_factory=list)
    arrows: list[tuple[str, Vertex, Vertex]] = field(default_factory=list)
    relations: list[tuple[Tree, str]] = field(default_factory=list)


def _graph(block: Tree) -> _Graph:
    """Collects vertex, arrow and relation items; checks names before building."""
    name, *items = block.children
    g = _Graph(str(name))
    seen_arrows: set[str] = set()
    for item in items:
        if item.data == "vertex_decl":
            for node in item.children:
                v = _vertex(node)
                if v in g.vertices:
                    raise _fail(node, f"{g.name}: vertex {v} declared twice")
                g.vertices.append(v)
        elif item.data == "vertex_count":
            for v in range(1, int(item.children[0]) + 1):
                if v in g.vertices:
                    raise _fail(item, f"{g.name}: vertex {v} declared twice")
                g.vertices.append(v)
        elif item.data == "arrow_decl":
            arrow, s, t = item.children
            if str(arrow) in seen_arrows:
                raise _fail(arrow, f"{g.name}: arrow {arrow} declared twice")
            for end in (s, t):
                if _vertex(end) not in g.vertices:
                    raise _fail(end, f"{g.name}: arrow {arrow} uses undeclared vertex {_vertex(end)}")
            seen_arrows.add(str(arrow))
            g.arrows.append((str(arrow), _vertex(s), _vertex(t)))
        else:
            (path,) = item.children
            for tok in path.children:
                if str(tok) not in seen_arrows:
                    raise _fail(tok, f"{g.name}: relation uses undefined arrow {tok}")
            g.relations.append((item, ".".join(str(t) for t in path.children)))
    return g


def _build_quiver(g: _Graph, acyclic: bool, block: Tree) -> tuple[Quiver, MonomialIdeal]:
    try:
        q = Quiver(g.vertices, g.arrows, acyclic=acyclic, name=g.name)
    except QuiverError as exc:
        raise _fail(block, str(exc)) from None
    paths = []
    for node, written in g.relations:
        try:
            path = q.parse_path(written)
            MonomialIdeal(q, (path,))
            paths.append(path)
        except QuiverError as exc:
            raise _fail(node, f"{g.name}: relation {written}: {exc}") from None
    try:
        ideal = MonomialIdeal(q, tuple(paths))
    except QuiverError as exc:
        node = g.relations[0][0] if g.relations else block
        raise _fail(node, f"{g.name}: {exc}") from None
    return q, ideal


class _Builder:
    def __init__(self, field_override: Field | None):
        self.field_override = field_override
        self.field: Field | None = None
        self.algebra: tuple[str, MonomialAlgebra] | None = None
        self.quiver: tuple[str, BoundQuiver] | None = None
        self.lam: LambdaAlgebra | None = None
        self.modules: dict[str, Module] = {}
        self.reps: dict[str, LambdaRep] = {}

    # --- sections ---

    def field_stmt(self, node: Tree):
        if self.field is not None:
            raise _fail(node, "field declared twice")
        if self.algebra or self.quiver or self.modules or self.reps:
            raise _fail(node, "the field section must come first")
        (tok,) = node.children
        value = str(tok)
        if tok.type != "INT" and value.lower() not in ("rational", "q"):
            raise _fail(tok, f"unknown field {value!r}; expected a prime or 'rational'")
        try:
            declared = make_field(value)
        except FieldError as exc:
            raise _fail(tok, str(exc)) from None
        self.field = self.field_override or declared

    def _need_field(self, node):
        if self.field is None:
            raise _fail(node, "missing field section")

    def algebra_block(self, node: Tree):
        self._need_field(node)
        if self.algebra is not None:
            raise _fail(node, "algebra declared twice")
        g = _graph(node)
        if not g.vertices:
            raise _fail(node, f"algebra {g.name} has no vertices")
        q, ideal = _build_quiver(g, False, node)
        try:
            self.algebra = (g.name, build_algebra(q, ideal, name=g.name))
        except QuiverError as exc:
            raise _fail(node, str(exc)) from None

    def quiver_block(self, node: Tree):
        self._need_field(node)
        if self.quiver is not None:
            raise _fail(node, "quiver declared twice")
        g = _graph(node)
        if not g.vertices:
            raise _fail(node, f"quiver {g.name} has no vertices")
        q, ideal = _build_quiver(g, True, node)
        self.quiver = (g.name, BoundQuiver(q, ideal))

    def _need_algebra(self, node) -> MonomialAlgebra:
        if self.algebra is None:
            raise _fail(node, "missing algebra section before this item")
        return self.algebra[1]

    def _need_lambda(self, node) -> LambdaAlgebra:
        base = self._need_algebra(node)
        if self.quiver is None:
            raise _fail(node, "missing quiver section before this item")
        if self.lam is None:
            self.lam = LambdaAlgebra(base, self.quiver[1], self.field)
        return self.lam

    # --- modules ---

    def _module(self, fields: list[Tree], name: str, node) -> Module:
        base = self._need_algebra(node)
        dims_nodes = [n for n in fields if n.data == "dims_field"]
        maps_nodes = [n for n in fields if n.data == "maps_field"]
        if len(dims_nodes) != 1 or len(maps_nodes) > 1:
            raise _fail(node, f"module {name}: needs one dims entry and at most one maps entry")
        (vector,) = dims_nodes[0].children
        values = [int(t) for t in _present(vector.children)]
        if len(values) != len(base.vertices):
            raise _fail(vector, f"module {name}: {len(values)} dimensions for "
                                f"{len(base.vertices)} vertices of {base.name}")
        dims = dict(zip(base.vertices, values))
        maps = {}
        if maps_nodes:
            (mapping,) = maps_nodes[0].children
            for entry in _present(mapping.children):
                arrow, matrix = entry.children
                if not base.quiver.has_arrow(str(arrow)):
                    raise _fail(arrow, f"module {name}: undefined arrow {arrow} of {base.name}")
                if str(arrow) in maps:
                    raise _fail(arrow, f"module {name}: arrow {arrow} given twice")
                a = base.arrow(str(arrow))
                maps[a.name] = _matrix(self.field, matrix, dims[a.target], dims[a.source],
                                       f"module {name}, arrow {arrow}")
        try:
            m = Module(base, self.field, dims, maps, name)
        except ModuleError as exc:
            raise _fail(node, str(exc)) from None
        problem = m.first_violation()
        if problem:
            raise _fail(node, f"module {name}: {problem}")
        return m

    def module_block(self, node: Tree):
        name, *fields = node.children
        if str(name) in self.modules:
            raise _fail(name, f"module {name} declared twice")
        self.modules[str(name)] = self._module(fields, str(name), node)

    # --- representations ---

    def _branch(self, node: Tree, rep: str, v: Vertex) -> Module:
        if node.data == "inline_module":
            return self._module(node.children, f"{rep}_{v}", node)
        parts = []
        for tok in node.children:
            if str(tok) not in self.modules:
                raise _fail(tok, f"rep {rep}: undefined module {tok}")
            parts.append(self.modules[str(tok)])
        if len(parts) == 1:
            return parts[0]
        return direct_sum_modules(parts, name="⊕".join(str(t) for t in node.children))

    def _arrow_map(self, node: Tree, lam: LambdaAlgebra, rep: str, source: Module, target: Module) -> ModuleMap:
        """Splits a k-matrix on the concatenated A-vertex components into A-vertex blocks."""
        arrow, matrix = node.children
        f = self.field
        full = _matrix(f, matrix, target.total_dim, source.total_dim, f"rep {rep}, map {arrow}")
        blocks, r0, c0 = {}, 0, 0
        for u in lam.base.vertices:
            r1, c1 = r0 + target.dims[u], c0 + source.dims[u]
            rows = full[r0:r1]
            blocks[u] = rows[:, c0:c1]
            if not f.is_zero(np.hstack([rows[:, :c0], rows[:, c1:]])):
                raise _fail(matrix, f"rep {rep}, map {arrow}: entries mix components at "
                                    f"different vertices of {lam.base.name}")
            r0, c0 = r1, c1
        return ModuleMap(source, target, blocks)

    def rep_block(self, node: Tree):
        lam = self._need_lambda(node)
        name, *items = node.children
        rep = str(name)
        if rep in self.reps:
            raise _fail(name, f"rep {rep} declared twice")
        branches: dict[Vertex, Module] = {}
        map_items = []
        for item in items:
            if item.data == "branch_item":
                vnode, branch = item.children
                v = _vertex(vnode)
                if v not in lam.quiver.vertices:
                    raise _fail(vnode, f"rep {rep}: vertex {v} is not in quiver {self.quiver[0]}")
                if v in branches:
                    raise _fail(vnode, f"rep {rep}: branch at {v} given twice")
                branches[v] = self._branch(branch, rep, v)
            else:
                map_items.append(item)
        for v in lam.quiver.vertices:
            branches.setdefault(v, lam.zero_branch())
        arrows = {}
        for item in map_items:
            arrow = item.children[0]
            if not lam.quiver.has_arrow(str(arrow)):
                raise _fail(arrow, f"rep {rep}: undefined arrow {arrow} of {self.quiver[0]}")
            if str(arrow) in arrows:
                raise _fail(arrow, f"rep {rep}: map {arrow} given twice")
            a = lam.quiver.arrow(str(arrow))
            arrows[a.name] = self._arrow_map(item, lam, rep, branches[a.source], branches[a.target])
        try:
            x = validate_rep(LambdaRep(lam, branches, arrows, rep))
        except (RepresentationError, ModuleError) as exc:
            raise _fail(node, str(exc)) from None
        self.reps[rep] = x

    def finish(self, text: str) -> SpecFile:
        if self.field is None:
            raise SpecError("missing field section", 1, 1)
        if self.algebra is None:
            raise SpecError("missing algebra section")
        if self.quiver is None:
            raise SpecError("missing quiver section")
        lam = self.lam or LambdaAlgebra(self.algebra[1], self.quiver[1], self.field)
        return SpecFile(self.field, self.algebra[0], self.algebra[1], self.quiver[0], self.quiver[1],
                        lam, self.modules, self.reps, text)


def _syntax_error(exc: UnexpectedInput) -> SpecError:
    if isinstance(exc, UnexpectedEOF):
        return SpecError(f"unexpected end of file; expected one of {sorted(exc.expected)}")
    if isinstance(exc, UnexpectedToken):
        expected = sorted(exc.accepts or exc.expected)
        return SpecError(f"unexpected {exc.token!s:.20}; expected one of {expected}", exc.line, exc.column)
    if isinstance(exc, UnexpectedCharacters):
        return SpecError(f"unexpected character {exc.char!r}", exc.line, exc.column)
    return SpecError(str(exc), getattr(exc, "line", None), getattr(exc, "column", None))


def parse_spec(text: str, field_override: int | str | Field | None = None) -> SpecFile:
    """Parses a problem file; `field_override` replaces the declared field."""
    try:
        tree = mono_parser.parse(text)
    except UnexpectedInput as exc:
        raise _syntax_error(exc) from None
    override = field_override if isinstance(field_override, Field) or field_override is None \
        else make_field(field_override)
    builder = _Builder(override)
    for statement in tree.children:
        if statement.data != "field_stmt" and builder.field is None:
            raise _fail(statement, "missing field section")
        getattr(builder, statement.data)(statement)
    return builder.finish(text)


def read_spec(path: str, field_override: int | str | Field | None = None) -> SpecFile:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read(), field_override)
