"""Condition (G) and the Gorenstein-projectivity decision for representations.

X is Gorenstein-projective over Λ exactly when it is monic and every X_i and
every X_i / Σ_α Im X_α is Gorenstein-projective over A. Monicity is decided
exactly; only the A-side oracle can leave a verdict open.
"""

from dataclasses import dataclass, field

from algebra.homological import GPVerdict, OracleConfig, Verdict, conjunction
from algebra.modules import Module, quotient
from linalg.subspace import image_space, sum_of
from monic.conditions import MonicReport, TheoremViolation, check_monic
from quiver.paths import Vertex
from representations.rep import LambdaRep, path_map


def incoming_quotient(x: LambdaRep, v: Vertex) -> Module:
    """X_v / Σ_{α into v} Im X_α as an A-module."""
    lam = x.algebra
    f = lam.field
    branch = x.branches[v]
    spaces = {}
    for u in lam.base.vertices:
        images = [image_space(f, x.arrows[a.name].blocks[u]) for a in lam.quiver.arrows_into(v)]
        spaces[u] = sum_of(f, images, branch.dims[u])
    quo, _, _ = quotient(branch, spaces, name=f"{x.name}_{v}/rad")
    return quo


def path_image(x: LambdaRep, p) -> Module:
    """Im X_p as an A-submodule of X_{e(p)}."""
    im, _ = path_map(x, p).image()
    return im.renamed(f"Im {x.name}_{p.written()}")


@dataclass
class GDecision:
    branches: dict[Vertex, GPVerdict] = field(default_factory=dict)
    quotients: dict[Vertex, GPVerdict] = field(default_factory=dict)
    quotient_dims: dict[Vertex, int] = field(default_factory=dict)

    @property
    def status(self) -> Verdict:
        return conjunction(list(self.branches.values()) + list(self.quotients.values()))

    @property
    def reduced_status(self) -> Verdict:
        """The verdict from the quotients alone."""
        return conjunction(list(self.quotients.values()))

    def to_dict(self) -> dict:
        return {"status": self.status.value, "reduced_status": self.reduced_status.value,
                "per_vertex": {str(v): {"branch": self.branches[v].label(),
                                        "quotient": self.quotients[v].label(),
                                        "quotient_dim": self.quotient_dims[v]}
                               for v in self.branches}}


def condition_g(x: LambdaRep, config: OracleConfig, monic: bool | None = None) -> GDecision:
    """Runs the A-oracle on every branch and every incoming quotient.

    On monic input, GP quotients force GP branches; a GP reduced verdict next to
    a NotGP full one raises TheoremViolation.
    """
    decision = GDecision()
    for v in x.algebra.quiver.vertices:
        quo = incoming_quotient(x, v)
        decision.branches[v] = config.check(x.branches[v])
        decision.quotients[v] = config.check(quo)
        decision.quotient_dims[v] = quo.total_dim
    if monic is None:
        monic = check_monic(x).overall
    if monic and decision.reduced_status is Verdict.GP and decision.status is Verdict.NOT_GP:
        raise TheoremViolation(f"monic {x.name}: every quotient is GP but some branch is not",
                               {"condition_g": decision.to_dict()})
    return decision


@dataclass
class GPDecision:
    status: Verdict
    monic: MonicReport
    g: GDecision
    reasons: list[str] = field(default_factory=list)
    depth: int | None = None

    @property
    def is_gp(self) -> bool:
        return self.status is Verdict.GP

    def label(self) -> str:
        if self.status is Verdict.UNKNOWN:
            return f"UnknownAtDepth({self.depth})"
        return self.status.value

    def to_dict(self) -> dict:
        return {"verdict": self.label(), "reasons": self.reasons,
                "monic": self.monic.to_dict(), "condition_g": self.g.to_dict()}


def is_gp(x: LambdaRep, config: OracleConfig) -> GPDecision:
    """Monic and (G). Both reasons are listed when both fail."""
    monic = check_monic(x)
    g = condition_g(x, config, monic=monic.overall)
    reasons = []
    if not monic.overall:
        reasons.append("not monic: " + "; ".join(monic.failures()))
    if g.status is Verdict.NOT_GP:
        failing = [str(v) for v in g.branches
                   if g.branches[v].is_not_gp or g.quotients[v].is_not_gp]
        reasons.append(f"condition (G) fails at vertices {', '.join(failing)}")
    if not monic.overall:
        status = Verdict.NOT_GP
    else:
        status = g.status
    if status is Verdict.UNKNOWN:
        reasons.append(f"A-oracle undecided at depth {config.depth}")
    return GPDecision(status, monic, g, reasons, config.depth)


def image_gp_report(x: LambdaRep, config: OracleConfig) -> dict[str, GPVerdict]:
    """GP verdict of Im X_p for every nonzero path p of length >= 1."""
    return {p.written(): config.check(path_image(x, p))
            for p in x.algebra.bound.nonzero_paths if not p.is_trivial}


def check_image_gp(x: LambdaRep, config: OracleConfig, decision: GPDecision | None = None) -> dict[str, GPVerdict]:
    """For monic X whose quotients are all GP, every Im X_p must be GP too."""
    decision = decision or is_gp(x, config)
    report = image_gp_report(x, config)
    if decision.monic.overall and decision.g.reduced_status is Verdict.GP:
        bad = [p for p, v in report.items() if v.is_not_gp]
        if bad:
            raise TheoremViolation(f"monic {x.name} with GP quotients has non-GP images at {bad}",
                                   {"paths": bad})
    return report

