"""Tests for representations over A ⊗ kQ/I and the tensor construction."""

import numpy as np
import pytest

from algebra.homological import ext_dim, regular
from algebra.modules import ModuleMap, hom_space, random_module_map
from representations.constructions import (
    adjunction_map, cokernel, hom_basis, hom_dim, image, kernel, random_rep, tensor_pv, tensor_slots,
)
from representations.rep import (
    LambdaMorphism, LambdaRep, RepresentationError, direct_sum, reps_equal, validate_rep, zero_rep,
)
from representations.resolution import (
    counit_cover, direct_gp_check, ext_dims_lambda, is_projective_rep, projective_resolution_lambda,
    regular_rep,
)
from tests.builders import (
    make_a2_quiver, make_dual_numbers, make_lambda, make_non_monic_rep, make_point_quiver,
    make_worked_lambda, make_worked_rep, regular_dual_numbers, simple_dual_numbers,
)


class TestLambdaRep:
    def setup_method(self):
        self.lam = make_worked_lambda()
        self.x = make_worked_rep(self.lam)

    def test_worked_rep_is_valid(self):
        assert validate_rep(self.x) is self.x
        assert self.x.dim_vector == {1: 2, 2: 3, 3: 2, 4: 1}
        assert self.x.total_dim == 8

    def test_broken_relation_detected(self):
        broken = make_worked_rep(self.lam, broken=True)
        with pytest.raises(RepresentationError, match="b1.g"):
            validate_rep(broken)

    def test_non_linear_arrow_detected(self):
        f = self.lam.field
        a_mod, k_mod = regular_dual_numbers(self.lam), simple_dual_numbers(self.lam)
        # k -> A sending 1 to the generator 1 of A does not commute with x
        bad = LambdaRep(self.lam, {4: k_mod, 3: a_mod},
                        {"g": ModuleMap(k_mod, a_mod, {"a": f.array([[1], [0]])})}, "bad")
        with pytest.raises(RepresentationError, match="not an A-map"):
            validate_rep(bad)

    def test_unknown_arrow_rejected(self):
        with pytest.raises(RepresentationError):
            LambdaRep(self.lam, {}, {"zz": None}, "bad")

    def test_missing_branches_default_to_zero(self):
        z = zero_rep(self.lam)
        assert z.is_zero()
        assert validate_rep(z).dim_vector == {1: 0, 2: 0, 3: 0, 4: 0}

    def test_module_round_trip(self):
        m = self.x.to_module()
        assert m.total_dim == 8
        back = LambdaRep.from_module(self.lam, m, "X")
        assert reps_equal(back, self.x)

    def test_path_map(self):
        q = self.lam.quiver
        xp = self.x.path_map(q.parse_path("b2.g"))
        assert xp.rank() == 1
        assert self.x.path_map(q.parse_path("a.b2.g")).is_zero()
        assert self.x.path_map(q.trivial(2)).is_isomorphism()

    def test_direct_sum(self):
        s = direct_sum(self.x, self.x)
        assert s.dim_vector == {1: 4, 2: 6, 3: 4, 4: 2}
        validate_rep(s)


class TestMorphisms:
    def setup_method(self):
        self.lam = make_worked_lambda()
        self.x = make_worked_rep(self.lam)

    def test_identity_is_valid_and_bijective(self):
        ident = self.x.identity()
        assert ident.is_valid()
        assert ident.is_injective() and ident.is_surjective()

    def test_hom_basis_consists_of_morphisms(self):
        basis = hom_basis(self.x, self.x)
        assert len(basis) == hom_dim(self.x, self.x)
        assert all(g.is_valid() for g in basis)

    def test_kernel_image_cokernel_of_identity(self):
        ident = self.x.identity()
        k, inc = kernel(ident)
        assert k.is_zero()
        im, _ = image(ident)
        assert im.dim_vector == self.x.dim_vector
        c, proj = cokernel(ident)
        assert c.is_zero()
        assert proj.is_valid()

    def test_cokernel_of_zero_map_is_target(self):
        zero = zero_rep(self.lam).zero_morphism(self.x)
        c, proj = cokernel(zero)
        assert c.dim_vector == self.x.dim_vector
        validate_rep(c)

    def test_square_failure_reported(self):
        ident = self.x.identity()
        blocks = dict(ident.blocks)
        blocks[3] = ident.blocks[3].scaled(2)
        bent = LambdaMorphism(self.x, self.x, blocks)
        assert bent.first_violation() is not None
        assert not bent.is_valid()


class TestTensor:
    def setup_method(self):
        self.lam = make_worked_lambda()
        self.x = make_worked_rep(self.lam)
        self.a_mod = regular_dual_numbers(self.lam)
        self.k_mod = simple_dual_numbers(self.lam)

    def test_slots_follow_nonzero_paths(self):
        slots = tensor_slots(self.lam, 3)
        assert {i: len(ps) for i, ps in slots.items()} == {1: 2, 2: 2, 3: 1, 4: 0}

    def test_tensor_dims(self):
        t = tensor_pv(self.lam, self.a_mod, 3)
        assert t.dim_vector == {1: 4, 2: 4, 3: 2, 4: 0}
        validate_rep(t)

    def test_tensor_is_monic_shaped(self):
        t = tensor_pv(self.lam, self.k_mod, 4)
        assert t.dim_vector == {1: 0, 2: 1, 3: 1, 4: 1}
        validate_rep(t)
        assert t.arrows["g"].is_injective()
        assert t.arrows["b1"].is_zero()

    def test_adjunction_dimension(self):
        t = tensor_pv(self.lam, self.a_mod, 1)
        assert hom_dim(t, self.x) == 2
        for v in self.lam.quiver.vertices:
            t = tensor_pv(self.lam, self.a_mod, v)
            assert hom_dim(t, self.x) == self.x.branches[v].total_dim

    def test_adjunction_map_is_a_morphism(self):
        rng = np.random.default_rng(7)
        g = random_module_map(hom_space(self.a_mod, self.x.branches[2]), rng)
        phi = adjunction_map(self.lam, self.a_mod, 2, self.x, g)
        assert phi.is_valid()
        # The e_2 slot of φ at vertex 2 is g itself
        slot = phi.blocks[2].blocks["a"][:, :2]
        assert self.lam.field.equal(slot, g.blocks["a"])


class TestProjectivesOverLambda:
    def setup_method(self):
        self.lam = make_worked_lambda()
        self.x = make_worked_rep(self.lam)

    def test_counit_cover_is_onto(self):
        cover = counit_cover(self.x)
        assert cover.map.is_valid()
        assert cover.map.is_surjective()
        assert len(cover.summands) == 4

    def test_projective_detection(self):
        a_mod, k_mod = regular_dual_numbers(self.lam), simple_dual_numbers(self.lam)
        assert is_projective_rep(tensor_pv(self.lam, a_mod, 2))
        assert not is_projective_rep(tensor_pv(self.lam, k_mod, 2))
        assert not is_projective_rep(self.x)
        assert is_projective_rep(zero_rep(self.lam))

    def test_resolution_steps_compose_to_zero(self):
        steps = projective_resolution_lambda(self.x, 2)
        assert steps[0][1].is_surjective()
        for (_, outer), (_, inner) in zip(steps, steps[1:]):
            assert outer.compose(inner).is_zero()
        with pytest.raises(ValueError):
            projective_resolution_lambda(self.x, 0)

    def test_ext_over_one_vertex(self):
        lam = make_lambda(make_dual_numbers(), make_point_quiver())
        k = tensor_pv(lam, simple_dual_numbers(lam), 1, name="k")
        assert ext_dims_lambda(k, k, 2) == [1, 1]

    def test_counit_and_minimal_resolutions_agree(self):
        lam_module = regular(self.lam.tensor, self.lam.field)
        lam_rep = regular_rep(self.lam)
        assert lam_rep.to_module().dims == lam_module.dims
        for x in (self.x, make_non_monic_rep(self.lam)):
            m = x.to_module()
            minimal = [ext_dim(m, lam_module, i) for i in (1, 2)]
            assert ext_dims_lambda(x, lam_rep, 2) == minimal, x.name

    def test_direct_oracle_uses_counit_resolution(self):
        gp = direct_gp_check(self.x)
        assert gp.is_gp
        assert gp.witness["resolution"] == "counit"
        not_gp = direct_gp_check(make_non_monic_rep(self.lam))
        assert not_gp.is_not_gp
        assert not_gp.witness["side"] == "module"
        assert direct_gp_check(zero_rep(self.lam)).is_gp


class TestRandomReps:
    def test_random_reps_are_valid(self):
        lam = make_worked_lambda()
        rng = np.random.default_rng(11)
        for _ in range(5):
            x = random_rep(lam, 2, rng=rng)
            validate_rep(x)
            assert all(b.total_dim <= 2 for b in x.branches.values())

    def test_random_reps_over_a2(self):
        lam = make_lambda(make_dual_numbers(), make_a2_quiver())
        for seed in range(5):
            validate_rep(random_rep(lam, 3, seed=seed))
