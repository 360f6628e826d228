"""The monic conditions (m1), (m2) and the kernel/image identities they imply.

Every subspace here lives in the total k-space of a branch: the A-vertex
components of X_i concatenated in vertex order. Images and kernels of A-maps
are graded by A-vertex, so directness and equality over the total space agree
with the vertex-by-vertex statements.
"""

from dataclasses import dataclass, field

from linalg.subspace import Subspace, image_space, kernel_basis, sum_is_direct, sum_of
from quiver.paths import Path, Vertex
from representations.rep import LambdaRep, path_map


class TheoremViolation(AssertionError):
    """A proven statement failed on computed data; the code is wrong somewhere."""

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


def _vector(f, v) -> list:
    return [f.export(c) for c in v]


def image_of(x: LambdaRep, p: Path) -> Subspace:
    """Im X_p inside X_{e(p)}."""
    g = path_map(x, p)
    return image_space(x.algebra.field, g.matrix())


def kernel_of(x: LambdaRep, p: Path) -> Subspace:
    g = path_map(x, p)
    return kernel_basis(x.algebra.field, g.matrix())


def incoming_images(x: LambdaRep, v: Vertex) -> list[Subspace]:
    q = x.algebra.quiver
    return [image_of(x, q.path([a.name])) for a in q.arrows_into(v)]


def incoming_image_sum(x: LambdaRep, v: Vertex) -> Subspace:
    """Σ_{α into v} Im X_α."""
    return sum_of(x.algebra.field, incoming_images(x, v), x.branches[v].total_dim)


# ── (m1) and (m2) ─────────────────────────────────────────────────────────────

@dataclass
class VertexCheck:
    vertex: Vertex
    ok: bool
    witness: list | None = None

    def to_dict(self) -> dict:
        return {"ok": self.ok, "witness": self.witness}


@dataclass
class ArrowCheck:
    arrow: str
    ok: bool
    kernel_dim: int
    image_sum_dim: int
    witness: list | None = None

    def to_dict(self) -> dict:
        return {"ok": self.ok, "kernel_dim": self.kernel_dim, "image_sum_dim": self.image_sum_dim,
                "witness": self.witness}


@dataclass
class MonicReport:
    per_vertex: dict[Vertex, VertexCheck] = field(default_factory=dict)
    per_arrow: dict[str, ArrowCheck] = field(default_factory=dict)

    @property
    def m1(self) -> bool:
        return all(c.ok for c in self.per_vertex.values())

    @property
    def m2(self) -> bool:
        return all(c.ok for c in self.per_arrow.values())

    @property
    def overall(self) -> bool:
        return self.m1 and self.m2

    def __bool__(self) -> bool:
        return self.overall

    def failures(self) -> list[str]:
        out = [f"(m1) fails at vertex {v}" for v, c in self.per_vertex.items() if not c.ok]
        out += [f"(m2) fails at arrow {a}" for a, c in self.per_arrow.items() if not c.ok]
        return out

    def to_dict(self) -> dict:
        return {"monic": self.overall,
                "per_vertex": {str(v): c.to_dict() for v, c in self.per_vertex.items()},
                "per_arrow": {a: c.to_dict() for a, c in self.per_arrow.items()}}


def check_m1(x: LambdaRep) -> dict[Vertex, VertexCheck]:
    """Σ_{α into i} Im X_α is direct, vertex by vertex.

    A failing vertex carries one vector per incoming arrow: elements of the
    images, at least two of them nonzero, adding up to zero.
    """
    out = {}
    for v in x.algebra.quiver.vertices:
        check = sum_is_direct(incoming_images(x, v))
        witness = [_vector(x.algebra.field, w) for w in check.witness] if check.witness is not None else None
        out[v] = VertexCheck(v, check.direct, witness)
    return out


def check_m2(x: LambdaRep) -> dict[str, ArrowCheck]:
    """Ker X_α = Σ_{q ∈ K_α} Im X_q for every arrow (an empty sum is 0)."""
    lam = x.algebra
    f = lam.field
    out = {}
    for a in lam.quiver.arrows:
        alpha = lam.quiver.path([a.name])
        ker = kernel_of(x, alpha)
        ims = sum_of(f, [image_of(x, q) for q in lam.bound.k_set(alpha)], x.branches[a.source].total_dim)
        ok = ker == ims
        witness = None
        if not ok:
            outside = ims.vector_outside(ker)
            witness = _vector(f, outside) if outside is not None else None
        out[a.name] = ArrowCheck(a.name, ok, ker.dim, ims.dim, witness)
    return out


def check_monic(x: LambdaRep) -> MonicReport:
    return MonicReport(check_m1(x), check_m2(x))


def is_monic(x: LambdaRep) -> bool:
    return check_monic(x).overall


# ── Kernel and image identities of monic representations ─────────────────────

@dataclass
class Thm23Report:
    """Outcome of the three path identities over every nonzero path p of length >= 1."""

    paths_checked: int = 0
    failures: list[dict] = field(default_factory=list)
    incoming_depth: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def first_failure(self) -> dict | None:
        return self.failures[0] if self.failures else None

    def to_dict(self) -> dict:
        return {"ok": self.ok, "paths_checked": self.paths_checked, "failures": self.failures,
                "incoming_depth": self.incoming_depth}


def _pushed_kernel(x: LambdaRep, p: Path, beta: str) -> Subspace:
    """X_β(Ker X_{pβ}) inside X_{s(p)}."""
    q = x.algebra.quiver
    b = q.path([beta])
    ker = kernel_of(x, q.compose(p, b))
    return ker.image(path_map(x, b).matrix())


def verify_thm23(x: LambdaRep, strict: bool = False, all_paths: bool = False) -> Thm23Report:
    """For every nonzero path p of length >= 1 checks

    * Ker X_p = Σ_{q ∈ K_p} Im X_q;
    * Ker X_p = (⊕_{β ∈ B1} Im X_β) ⊕ (⊕_{β ∈ B2} X_β(Ker X_{pβ})), the sum being direct;
    * for vertices j != i, Σ_{q: j -> i} Im X_q is direct.

    These hold for every monic representation. With `strict` the first failure
    raises TheoremViolation.
    """
    lam = x.algebra
    f = lam.field
    bound, q = lam.bound, lam.quiver
    report = Thm23Report()
    for p in bound.nonzero_paths:
        if p.is_trivial:
            continue
        report.paths_checked += 1
        report.incoming_depth[p.written()] = bound.incoming_depth(p)
        ambient = x.branches[p.source].total_dim
        ker = kernel_of(x, p)
        ims = sum_of(f, [image_of(x, k) for k in bound.k_set(p)], ambient)
        if ker != ims:
            report.failures.append({"clause": 1, "path": p.written(),
                                    "kernel_dim": ker.dim, "image_sum_dim": ims.dim})
        b1, b2 = bound.b_sets(p, all_paths=all_paths)
        parts = [image_of(x, q.path([b])) for b in b1] + [_pushed_kernel(x, p, b) for b in b2]
        direct = sum_is_direct(parts)
        total = sum_of(f, parts, ambient)
        if not direct or total != ker:
            report.failures.append({"clause": 2, "path": p.written(), "B1": b1, "B2": b2,
                                    "direct": direct.direct, "kernel_dim": ker.dim, "sum_dim": total.dim})
    for j in q.vertices:
        for i in q.vertices:
            if i == j:
                continue
            paths = bound.paths_between(j, i)
            if len(paths) < 2:
                continue
            if not sum_is_direct([image_of(x, r) for r in paths]):
                report.failures.append({"clause": 3, "from": str(j), "to": str(i),
                                        "paths": [r.written() for r in paths]})
    if strict and report.failures:
        raise TheoremViolation(f"kernel/image identity fails on monic {x.name}: {report.failures[0]}",
                               {"failure": report.failures[0]})
    return report
