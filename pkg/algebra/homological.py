"""Projective resolutions, Ext, the transpose, isomorphism testing and the GP oracle.

Ext^i(M, N) comes from the complex Hom(P_•, N) of a projective resolution
P_• -> M. With P_i = ⊕_g A e_{x_g}, Hom(P_i, N) = ⊕_g N_{x_g}, and the
differential has block (g, g') = Σ c·N(b) over the terms c·(g', b) of d(g).
"""

import threading
import warnings
import weakref
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from algebra.modules import (
    FreeModule, Module, ModuleMap, dual_module, free_module, hom_space, random_module_map,
    regular_module,
)
from algebra.presentation import FiniteAlgebra
from config import DEFAULT_SEED, GP_DEPTH, GP_MODES, ISO_TRIALS
from linalg.field import Field, Matrix
from linalg.subspace import Subspace, quotient_with_projection
from quiver.paths import Vertex


class OracleModeError(ValueError):
    """The requested oracle mode does not fit the algebra."""


# ── Covers and resolutions ────────────────────────────────────────────────────

@dataclass(eq=False)
class ProjectiveCover:
    free: FreeModule
    map: ModuleMap
    images: list[Matrix]

    @property
    def generators(self) -> list[Vertex]:
        return self.free.generators


def top_complement(m: Module, v: Vertex) -> Matrix:
    """Columns spanning a complement of rad(M)_v = Σ Im M(β) over arrows into v."""
    f = m.field
    d = m.dims[v]
    incoming = [m.maps[a.name] for a in m.algebra.arrows if a.target == v]
    rad = Subspace.span(f, f.hstack(incoming, d))
    return quotient_with_projection(f, d, rad).section


def projective_cover(m: Module, minimal: bool = True) -> ProjectiveCover:
    """Surjection from a free module onto M.

    Minimal covers take one generator per top basis vector; non-minimal ones
    take every basis vector of every M_v.
    """
    f = m.field
    gens: list[Vertex] = []
    images: list[Matrix] = []
    for v in m.algebra.vertices:
        if m.dims[v] == 0:
            continue
        top = top_complement(m, v) if minimal else f.eye(m.dims[v])
        for j in range(top.shape[1]):
            gens.append(v)
            images.append(top[:, j])
    free = free_module(m.algebra, f, gens, name=f"P[{m.name}]")
    return ProjectiveCover(free, free.map_to(m, images), images)


@dataclass(eq=False)
class Resolution:
    """P_n -> ... -> P_0 -> M with syzygies Ω_i = ker(P_{i-1} -> Ω_{i-1})."""

    module: Module
    covers: list[ProjectiveCover] = field(default_factory=list)
    syzygies: list[Module] = field(default_factory=list)
    inclusions: list[ModuleMap | None] = field(default_factory=list)
    minimal: bool = True

    @property
    def terminated(self) -> bool:
        return self.syzygies[-1].is_zero()

    @property
    def length(self) -> int:
        """Number of nonzero projective terms computed."""
        return len(self.covers)

    def generators(self, i: int) -> list[Vertex]:
        return self.covers[i].generators if i < len(self.covers) else []

    def differential(self, i: int) -> list[dict]:
        """For i >= 1: coordinates of d(g) in P_{i-1}, one dict per generator g of P_i."""
        if i < 1 or i >= len(self.covers):
            return []
        f = self.module.field
        cover, below = self.covers[i], self.covers[i - 1]
        inclusion = self.inclusions[i]
        out = []
        for g, x in enumerate(cover.generators):
            vec = f.matmul(inclusion.blocks[x], cover.images[g].reshape(-1, 1))
            out.append(below.free.coefficients(x, vec))
        return out


def projective_resolution(m: Module, length: int, minimal: bool = True) -> Resolution:
    """Covers P_0..P_length (fewer when a syzygy vanishes)."""
    res = Resolution(m, syzygies=[m], inclusions=[None], minimal=minimal)
    for _ in range(length + 1):
        omega = res.syzygies[-1]
        if omega.is_zero():
            break
        cover = projective_cover(omega, minimal)
        kernel, inclusion = cover.map.kernel()
        res.covers.append(cover)
        res.syzygies.append(kernel.renamed(f"Ω{len(res.covers)}({m.name})"))
        res.inclusions.append(inclusion)
    return res


def projective_dimension(m: Module, cap: int) -> int | None:
    """pd M if the minimal resolution stops within `cap` steps."""
    if m.is_zero():
        return 0
    res = projective_resolution(m, cap)
    return res.length - 1 if res.terminated else None


# ── Ext ───────────────────────────────────────────────────────────────────────

def coboundary(res: Resolution, n: Module, i: int) -> Matrix:
    """δ^i: Hom(P_{i-1}, N) -> Hom(P_i, N) for i >= 1."""
    f = n.field
    rows_g = res.generators(i)
    cols_g = res.generators(i - 1)
    row_off = np.cumsum([0] + [n.dims[x] for x in rows_g])
    col_off = np.cumsum([0] + [n.dims[x] for x in cols_g])
    out = f.zeros(int(row_off[-1]), int(col_off[-1]))
    for g, coeffs in enumerate(res.differential(i)):
        for (gp, b), c in coeffs.items():
            r0, c0 = int(row_off[g]), int(col_off[gp])
            block = out[r0:r0 + n.dims[rows_g[g]], c0:c0 + n.dims[cols_g[gp]]]
            out[r0:r0 + block.shape[0], c0:c0 + block.shape[1]] = f.add(block, f.scale(c, n.action(b)))
    return out


def ext_dims(res: Resolution, n: Module, upto: int) -> list[int]:
    """[dim Ext^1(M, N), ..., dim Ext^upto(M, N)]."""
    if not res.terminated and res.length < upto + 2:
        raise ValueError(f"resolution of length {res.length} is too short for Ext^{upto}")
    f = n.field
    ranks: dict[int, int] = {}

    def rank(i: int) -> int:
        if i not in ranks:
            ranks[i] = f.rank(coboundary(res, n, i)) if i < res.length else 0
        return ranks[i]

    out = []
    for i in range(1, upto + 1):
        if i >= res.length:
            out.append(0)
            continue
        hom_i = sum(n.dims[x] for x in res.generators(i))
        out.append(hom_i - rank(i + 1) - rank(i))
    return out


def ext_dim(m: Module, n: Module, i: int, minimal: bool = True) -> int:
    if i < 1:
        raise ValueError("Ext degree must be >= 1")
    res = projective_resolution(m, i + 1, minimal=minimal)
    return ext_dims(res, n, i)[-1]


# ── Transpose ─────────────────────────────────────────────────────────────────

def transpose(m: Module) -> Module:
    """Tr M over the opposite algebra: coker of P_0* -> P_1* for a minimal presentation.

    The functional g'* of P_0* maps to Σ c·(g, b) in P_1* for each term
    c·(g', b) of d(g).
    """
    f = m.field
    op = m.algebra.opposite()
    res = projective_resolution(m, 1)
    gens0, gens1 = res.generators(0), res.generators(1)
    dual0 = free_module(op, f, gens0)
    dual1 = free_module(op, f, gens1)
    images = [f.zeros(dual1.module.dims[x], 1) for x in gens0]
    for g, coeffs in enumerate(res.differential(1)):
        for (gp, b), c in coeffs.items():
            _, row = dual1.position[(g, b)]
            images[gp][row, 0] = f.scalar(images[gp][row, 0] + c)
    d_star = dual0.map_to(dual1.module, images)
    tr, _ = d_star.cokernel()
    return tr.renamed(f"Tr({m.name})")


# ── Isomorphism ───────────────────────────────────────────────────────────────

@dataclass
class Isomorphism:
    """Outcome of a randomized isomorphism search; `found` is certain, its absence is not."""

    found: bool
    trials: int
    witness: ModuleMap | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.found


def is_isomorphic(m: Module, n: Module, trials: int = ISO_TRIALS,
                  rng: np.random.Generator | None = None, seed: int = DEFAULT_SEED) -> Isomorphism:
    if m.dims != n.dims:
        return Isomorphism(False, 0, reason="dimension vectors differ")
    if m.is_zero():
        return Isomorphism(True, 0, m.zero_map(n))
    rng = rng if rng is not None else np.random.default_rng(seed)
    basis = hom_space(m, n)
    if not basis:
        return Isomorphism(False, 0, reason="no nonzero homomorphisms")
    for t in range(1, trials + 1):
        g = random_module_map(basis, rng)
        if g.is_isomorphism():
            return Isomorphism(True, t, g)
    return Isomorphism(False, trials, reason=f"probably not: no invertible map in {trials} trials")


# ── Algebra-level properties (cached per algebra and field) ───────────────────

_CACHE: "weakref.WeakKeyDictionary[FiniteAlgebra, dict]" = weakref.WeakKeyDictionary()
# Reentrant: computing one entry may read others (self-injectivity needs the regular module)
_CACHE_LOCK = threading.RLock()


def _cached(algebra: FiniteAlgebra, key, compute):
    """Per-algebra memo shared by suite worker threads; each entry is computed once."""
    with _CACHE_LOCK:
        store = _CACHE.setdefault(algebra, {})
        if key not in store:
            store[key] = compute()
        return store[key]


def regular(algebra: FiniteAlgebra, f: Field) -> Module:
    return _cached(algebra, ("regular", f.name), lambda: regular_module(algebra, f))


def is_semisimple(algebra: FiniteAlgebra) -> bool:
    return algebra.is_semisimple()


def is_self_injective(algebra: FiniteAlgebra, f: Field, trials: int = ISO_TRIALS,
                      seed: int = DEFAULT_SEED) -> bool:
    """A ≅ D(A) as left modules (a found isomorphism is certain)."""
    return _cached(algebra, ("selfinjective", f.name), lambda: bool(
        is_isomorphic(regular(algebra, f), dual_module(algebra, f), trials, seed=seed)))


def gorenstein_dimension(algebra: FiniteAlgebra, f: Field, cap: int = GP_DEPTH) -> int | None:
    """max(inj.dim _A A, inj.dim A_A) when both resolutions stop within `cap` steps.

    inj.dim A_A is pd of D(A_A) over A; inj.dim _A A is pd of D(_A A) over A^op.
    """
    def compute():
        left = projective_dimension(dual_module(algebra, f), cap)
        if left is None:
            return None
        right = projective_dimension(dual_module(algebra.opposite(), f), cap)
        return None if right is None else max(left, right)

    return _cached(algebra, ("gorenstein", f.name, cap), compute)


# ── GP oracle ─────────────────────────────────────────────────────────────────

class Verdict(str, Enum):
    GP = "GP"
    NOT_GP = "NotGP"
    UNKNOWN = "Unknown"


@dataclass
class GPVerdict:
    status: Verdict
    witness: dict = field(default_factory=dict)
    depth: int | None = None

    @property
    def is_gp(self) -> bool:
        return self.status is Verdict.GP

    @property
    def is_not_gp(self) -> bool:
        return self.status is Verdict.NOT_GP

    @property
    def is_unknown(self) -> bool:
        return self.status is Verdict.UNKNOWN

    def label(self) -> str:
        if self.is_unknown:
            return f"UnknownAtDepth({self.depth})"
        return self.status.value

    def to_dict(self) -> dict:
        return {"status": self.status.value, "depth": self.depth, "witness": self.witness}


def conjunction(verdicts: list[GPVerdict]) -> Verdict:
    """NotGP if any is NotGP, else Unknown if any is Unknown, else GP."""
    statuses = {v.status for v in verdicts}
    if Verdict.NOT_GP in statuses:
        return Verdict.NOT_GP
    if Verdict.UNKNOWN in statuses:
        return Verdict.UNKNOWN
    return Verdict.GP


@dataclass
class OracleConfig:
    mode: str = "auto"
    depth: int = GP_DEPTH
    trials: int = ISO_TRIALS
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.mode not in GP_MODES:
            raise OracleModeError(f"unknown oracle mode {self.mode!r}; expected one of {GP_MODES}")
        if self.depth < 1:
            raise OracleModeError("oracle depth must be >= 1")

    def check(self, m: Module) -> GPVerdict:
        return gp_check(m, self.mode, self.depth, self.trials, self.seed)


def resolve_mode(algebra: FiniteAlgebra, f: Field, trials: int = ISO_TRIALS,
                 seed: int = DEFAULT_SEED) -> str:
    if is_semisimple(algebra):
        return "semisimple"
    if is_self_injective(algebra, f, trials, seed):
        return "selfinjective"
    return "bounded"


def gp_check(m: Module, mode: str = "auto", depth: int = GP_DEPTH, trials: int = ISO_TRIALS,
             seed: int = DEFAULT_SEED) -> GPVerdict:
    """Three-valued Gorenstein-projectivity test over m.algebra."""
    if mode not in GP_MODES:
        raise OracleModeError(f"unknown oracle mode {mode!r}")
    algebra, f = m.algebra, m.field
    if mode == "auto":
        mode = resolve_mode(algebra, f, trials, seed)
    if mode == "semisimple":
        if not is_semisimple(algebra):
            raise OracleModeError(f"semisimple mode on {algebra.name}, which has arrows")
        return GPVerdict(Verdict.GP, {"mode": "semisimple"})
    if mode == "selfinjective":
        if not is_self_injective(algebra, f, trials, seed):
            raise OracleModeError(f"selfinjective mode on {algebra.name}, which is not self-injective "
                                  f"(no isomorphism A ≅ D(A) found)")
        return GPVerdict(Verdict.GP, {"mode": "selfinjective"})
    if depth < 1:
        raise OracleModeError("bounded mode needs depth >= 1")
    return _bounded_check(m, depth, trials, np.random.default_rng(seed))


def _bounded_check(m: Module, depth: int, trials: int, rng: np.random.Generator) -> GPVerdict:
    algebra, f = m.algebra, m.field
    if m.is_zero():
        return GPVerdict(Verdict.GP, {"mode": "bounded", "certificate": "zero module"}, depth)
    gdim = gorenstein_dimension(algebra, f, depth)
    reach = depth if gdim is None else min(depth, gdim)
    res = projective_resolution(m, reach + 1)
    for i, d in enumerate(ext_dims(res, regular(algebra, f), reach), start=1):
        if d:
            return GPVerdict(Verdict.NOT_GP, {"mode": "bounded", "side": "module",
                                              "degree": i, "ext_dim": d}, depth)
    return certify_gp(m, depth, trials, rng, res)


def certify_gp(m: Module, depth: int, trials: int, rng: np.random.Generator,
               res: Resolution | None = None) -> GPVerdict:
    """Finish a bounded check once Ext^i(M, A) is known to vanish up to the reach.

    The reach is min(depth, Gorenstein dimension) when the algebra is Gorenstein
    within `depth`, and `depth` otherwise.
    """
    algebra, f = m.algebra, m.field
    gdim = gorenstein_dimension(algebra, f, depth)
    if gdim is not None:
        # Gorenstein algebra: GP(A) = ⊥A, and Ext^i(-, A) vanishes beyond gdim
        return GPVerdict(Verdict.GP, {"mode": "bounded", "certificate": "gorenstein",
                                      "gorenstein_dim": gdim}, depth)
    tr = transpose(m)
    op = algebra.opposite()
    res_tr = projective_resolution(tr, depth + 1)
    for i, d in enumerate(ext_dims(res_tr, regular(op, f), depth), start=1):
        if d:
            return GPVerdict(Verdict.NOT_GP, {"mode": "bounded", "side": "transpose",
                                              "degree": i, "ext_dim": d}, depth)
    if res is None:
        res = projective_resolution(m, depth + 1)
    left = _certificate(res, depth, trials, rng)
    right = _certificate(res_tr, depth, trials, rng)
    if left and right:
        return GPVerdict(Verdict.GP, {"mode": "bounded", "module": left, "transpose": right}, depth)
    warnings.warn(f"GP oracle undecided for {m.name or 'module'} over {algebra.name} at depth {depth}")
    return GPVerdict(Verdict.UNKNOWN, {"mode": "bounded", "module": left, "transpose": right}, depth)


def _certificate(res: Resolution, depth: int, trials: int, rng: np.random.Generator) -> dict | None:
    """Why Ext^{>depth} vanishes too: a finite resolution or repeating syzygies."""
    if res.terminated:
        return {"kind": "finite resolution", "length": res.length}
    syz = res.syzygies
    for j in range(1, min(depth, len(syz) - 1) + 1):
        for i in range(j):
            if syz[i].dims == syz[j].dims and is_isomorphic(syz[i], syz[j], trials, rng=rng):
                return {"kind": "periodic syzygies", "from": i, "to": j}
    return None
