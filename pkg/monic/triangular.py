"""Splitting a representation at the source vertex, and the recursive GP verifier.

Deleting the vertex n with the largest label writes Λ as a triangular matrix
algebra over Λ' = A ⊗ kQ'/I' and A. A representation X becomes the triple
(X', X_n, φ) with φ_i = (X_{p_1}, ..., X_{p_{m_i}}) over the nonzero paths
p: n -> i. X is Gorenstein-projective exactly when X_n is, φ is injective and
Coker φ is Gorenstein-projective over Λ', which gives a recursion on |Q_0|.
"""

from dataclasses import dataclass, field

from algebra.homological import GPVerdict, OracleConfig, Verdict, conjunction
from algebra.modules import Module, ModuleMap
from linalg.subspace import sum_is_direct
from monic.conditions import TheoremViolation, image_of
from monic.gorenstein import incoming_quotient, is_gp
from quiver.paths import Path, QuiverError, Vertex
from representations.constructions import adjunction_map, cokernel, tensor_pv, tensor_slots
from representations.rep import LambdaAlgebra, LambdaMorphism, LambdaRep, path_map, validate_rep
from representations.resolution import direct_gp_check


@dataclass(eq=False)
class TriangularSplit:
    source: LambdaRep
    algebra: LambdaAlgebra
    n: Vertex
    x_prime: LambdaRep
    x_n: Module
    phi: LambdaMorphism
    paths: dict[Vertex, list[Path]]
    phi_injective: bool
    criterion: bool

    @property
    def m_vector(self) -> dict[Vertex, int]:
        """m_i = number of nonzero paths n -> i, for each vertex i of Q'."""
        return {i: len(self.paths[i]) for i in self.algebra.quiver.vertices}

    def reassemble(self) -> LambdaRep:
        """X rebuilt from (X', X_n, φ): an arrow α: n -> i is the α-slot of φ_i."""
        lam = self.source.algebra
        branches = dict(self.x_prime.branches)
        branches[self.n] = self.x_n
        arrows = dict(self.x_prime.arrows)
        for a in lam.quiver.arrows_from(self.n):
            slot = self.paths[a.target].index(Path((a.name,), self.n, a.target))
            blocks = {}
            for u in lam.base.vertices:
                d = self.x_n.dims[u]
                blocks[u] = self.phi.blocks[a.target].blocks[u][:, slot * d:(slot + 1) * d]
            arrows[a.name] = ModuleMap(self.x_n, branches[a.target], blocks)
        return LambdaRep(lam, branches, arrows, self.source.name)

    def to_dict(self) -> dict:
        return {"deleted_vertex": str(self.n),
                "m_vector": {str(i): m for i, m in self.m_vector.items()},
                "phi_injective": self.phi_injective}


def triangular_split(x: LambdaRep) -> TriangularSplit:
    """(X', X_n, φ) at the source vertex n.

    φ is injective exactly when, for each i, the images Im X_p over p: n -> i
    form a direct sum and every such X_p is injective; the two computations
    must agree.
    """
    lam = x.algebra
    if len(lam.quiver.vertices) < 2:
        raise QuiverError("triangular_split needs a quiver with at least two vertices")
    bound_prime, n = lam.bound.delete_source()
    lam_prime = lam.restrict(bound_prime, name=f"{lam.name}'")
    x_n = x.branches[n]
    x_prime = x.restrict(lam_prime)
    tensor = tensor_pv(lam, x_n, n)
    counit = adjunction_map(lam, x_n, n, x, x_n.identity(), tensor=tensor)
    source = tensor.restrict(lam_prime, name=f"M⊗{x.name}_{n}")
    phi = LambdaMorphism(source, x_prime, {i: counit.blocks[i] for i in lam_prime.quiver.vertices})
    slots = tensor_slots(lam, n)
    paths = {i: slots[i] for i in lam_prime.quiver.vertices}

    phi_injective = phi.is_injective()
    criterion = True
    for i, ps in paths.items():
        if not ps:
            continue
        if not all(path_map(x, p).is_injective() for p in ps):
            criterion = False
        elif not sum_is_direct([image_of(x, p) for p in ps]):
            criterion = False
    if phi_injective != criterion:
        raise TheoremViolation(f"injectivity of φ for {x.name}: direct={phi_injective}, "
                               f"path criterion={criterion}")
    return TriangularSplit(x, lam_prime, n, x_prime, x_n, phi, paths, phi_injective, criterion)


def coker_phi(split: TriangularSplit) -> LambdaRep:
    """Coker φ over Λ': branch i is X_i / ⊕_{p: n -> i} Im X_p."""
    if not split.phi_injective:
        raise ValueError(f"φ is not injective for {split.source.name}; Coker φ is not taken")
    rep, _ = cokernel(split.phi)
    rep.name = f"Coker φ({split.source.name})"
    return validate_rep(rep)


def quotient_identity_report(split: TriangularSplit, config: OracleConfig | None = None) -> list[dict]:
    """For each vertex i of Q', compares (X_i / ⊕ Im X_p) / Σ Im X̃_α with X_i / Σ Im X_α.

    The two are isomorphic; their dimensions (and GP verdicts, when an oracle
    config is given) must agree.
    """
    x = split.source
    c = coker_phi(split)
    out = []
    for i in split.algebra.quiver.vertices:
        lhs = incoming_quotient(c, i)
        rhs = incoming_quotient(x, i)
        row = {"vertex": str(i), "lhs_dim": lhs.total_dim, "rhs_dim": rhs.total_dim,
               "dims_agree": lhs.dims == rhs.dims}
        if config is not None:
            lv, rv = config.check(lhs), config.check(rhs)
            row["lhs"], row["rhs"] = lv.label(), rv.label()
            row["verdicts_agree"] = lv.status == rv.status or Verdict.UNKNOWN in (lv.status, rv.status)
        out.append(row)
        if not row["dims_agree"] or not row.get("verdicts_agree", True):
            raise TheoremViolation(f"quotient identity fails at vertex {i} for {x.name}", row)
    return out


# ── Recursive verdict and three-way cross-check ──────────────────────────────

@dataclass
class RecursionStep:
    vertex: Vertex
    branch: str
    phi_injective: bool | None


def recursive_verdict(x: LambdaRep, config: OracleConfig,
                      trace: list[RecursionStep] | None = None) -> Verdict:
    """GP over Λ via X_n ∈ GP(A), φ injective and Coker φ ∈ GP(Λ'), down to one vertex."""
    trace = trace if trace is not None else []
    lam = x.algebra
    if len(lam.quiver.vertices) == 1:
        (v,) = lam.quiver.vertices
        verdict = config.check(x.branches[v])
        trace.append(RecursionStep(v, verdict.label(), None))
        return verdict.status
    split = triangular_split(x)
    top = config.check(split.x_n)
    trace.append(RecursionStep(split.n, top.label(), split.phi_injective))
    if not split.phi_injective:
        return Verdict.NOT_GP
    rest = recursive_verdict(coker_phi(split), config, trace)
    return conjunction([top, GPVerdict(rest)])


@dataclass
class InductiveReport:
    theorem: Verdict
    recursive: Verdict
    direct: Verdict | None
    trace: list[RecursionStep] = field(default_factory=list)
    direct_witness: dict = field(default_factory=dict)

    @property
    def decided(self) -> list[Verdict]:
        return [v for v in (self.theorem, self.recursive, self.direct)
                if v is not None and v is not Verdict.UNKNOWN]

    @property
    def agree(self) -> bool:
        return len(set(self.decided)) <= 1

    def to_dict(self) -> dict:
        return {"theorem": self.theorem.value, "recursive": self.recursive.value,
                "direct": self.direct.value if self.direct is not None else None,
                "agree": self.agree,
                "trace": [{"vertex": str(s.vertex), "branch": s.branch, "phi_injective": s.phi_injective}
                          for s in self.trace]}


def inductive_verify(x: LambdaRep, config: OracleConfig, direct: bool = True) -> InductiveReport:
    """Compares the monic-and-(G) verdict, the recursive verdict and, unless
    `direct` is off, the bounded Ext oracle run on X as a Λ-module.

    Any disagreement between decided verdicts raises TheoremViolation.
    """
    theorem = is_gp(x, config).status
    trace: list[RecursionStep] = []
    recursive = recursive_verdict(x, config, trace)
    report = InductiveReport(theorem, recursive, None, trace)
    if direct:
        verdict = direct_gp_check(x, config.depth, config.trials, config.seed)
        report.direct = verdict.status
        report.direct_witness = verdict.witness
    if not report.agree:
        raise TheoremViolation(f"GP deciders disagree on {x.name}", report.to_dict())
    return report
