"""Small algebras, bound quivers and representations shared by the tests."""

import os

from algebra.modules import Module, ModuleMap, direct_sum
from algebra.presentation import build_algebra
from linalg.field import make_field
from quiver.paths import BoundQuiver, MonomialIdeal, Quiver
from representations.rep import LambdaAlgebra, LambdaRep

INSTANCES = os.path.join(os.path.dirname(__file__), "..", "instances")


def instance(name: str) -> str:
    return os.path.join(INSTANCES, name)


def read_instance(name: str) -> str:
    with open(instance(name), encoding="utf-8") as fh:
        return fh.read()


# ── Base algebras ────────────────────────────────────────────────────────────

def make_dual_numbers():
    """k[x]/x²: self-injective, not semisimple."""
    q = Quiver(["a"], [("x", "a", "a")], acyclic=False, name="A")
    return build_algebra(q, MonomialIdeal.from_written(q, ["x.x"]), name="A")


def make_a2_algebra():
    """Path algebra of 2 -> 1: hereditary, not self-injective."""
    q = Quiver([1, 2], [("c", 2, 1)], name="A2")
    return build_algebra(q, name="A2")


def make_ground_field_algebra():
    q = Quiver(["a"], [], acyclic=False, name="k")
    return build_algebra(q, name="k")


def make_module(algebra, f, dims: list[int], maps: dict | None = None, name: str = "") -> Module:
    return Module(algebra, f, dict(zip(algebra.vertices, dims)),
                  {a: f.array(m) for a, m in (maps or {}).items()}, name)


# ── Bound quivers ────────────────────────────────────────────────────────────

def make_worked_bound_quiver() -> BoundQuiver:
    """4 -g-> 3 =b1,b2=> 2 -a-> 1 with relations b1.g and a.b2.g."""
    q = Quiver([1, 2, 3, 4], [("g", 4, 3), ("b1", 3, 2), ("b2", 3, 2), ("a", 2, 1)], name="Q")
    return BoundQuiver(q, MonomialIdeal.from_written(q, ["b1.g", "a.b2.g"]))


def make_a2_quiver() -> BoundQuiver:
    q = Quiver([1, 2], [("b", 2, 1)], name="Q2")
    return BoundQuiver(q)


def make_point_quiver() -> BoundQuiver:
    return BoundQuiver(Quiver([1], [], name="Q1"))


def make_lambda(base, bound: BoundQuiver, prime: int = 101) -> LambdaAlgebra:
    return LambdaAlgebra(base, bound, make_field(prime))


# ── The worked representation over k[x]/x² ⊗ kQ/I ────────────────────────────

def make_worked_lambda() -> LambdaAlgebra:
    return make_lambda(make_dual_numbers(), make_worked_bound_quiver())


def regular_dual_numbers(lam: LambdaAlgebra) -> Module:
    """A as a module over itself: basis (1, x), x acting by [[0,0],[1,0]]."""
    return make_module(lam.base, lam.field, [2], {"x": [[0, 0], [1, 0]]}, "A")


def simple_dual_numbers(lam: LambdaAlgebra) -> Module:
    return make_module(lam.base, lam.field, [1], {"x": [[0]]}, "k")


def _arrow(f, src: Module, dst: Module, matrix: list) -> ModuleMap:
    return ModuleMap(src, dst, {"a": f.array(matrix)})


def make_worked_rep(lam: LambdaAlgebra, broken: bool = False) -> LambdaRep:
    """X_4 = k, X_3 = A, X_2 = A ⊕ k, X_1 = k ⊕ k.

    With `broken` the map at b1 no longer vanishes on the image of g, so the
    relation b1.g fails.
    """
    f = lam.field
    a_mod, k_mod = regular_dual_numbers(lam), simple_dual_numbers(lam)
    branches = {
        4: k_mod,
        3: a_mod,
        2: direct_sum([a_mod, k_mod], name="A+k"),
        1: direct_sum([k_mod, k_mod], name="k+k"),
    }
    b1 = [[1, 0], [0, 1], [0, 0]] if broken else [[0, 0], [0, 0], [1, 0]]
    arrows = {
        "g": _arrow(f, branches[4], branches[3], [[0], [1]]),
        "b1": _arrow(f, branches[3], branches[2], b1),
        "b2": _arrow(f, branches[3], branches[2], [[1, 0], [0, 1], [1, 0]]),
        "a": _arrow(f, branches[2], branches[1], [[1, 0, 0], [0, 0, 1]]),
    }
    return LambdaRep(lam, branches, arrows, "X")


def make_non_monic_rep(lam: LambdaAlgebra) -> LambdaRep:
    """k at 3 and at 2 with both b1 and b2 the identity: Im b1 and Im b2 collide."""
    f = lam.field
    k_mod = simple_dual_numbers(lam)
    branches = {3: k_mod, 2: k_mod}
    arrows = {"b1": _arrow(f, k_mod, k_mod, [[1]]), "b2": _arrow(f, k_mod, k_mod, [[1]])}
    return LambdaRep(lam, branches, arrows, "N")
