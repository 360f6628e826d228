"""Finite-dimensional algebras with a path basis, their modules, and the GP oracle."""

from algebra.presentation import (
    BaseAlgebra, FiniteAlgebra, InfiniteDimensionError, MonomialAlgebra, OppositeAlgebra,
    TensorAlgebra, build_algebra,
)
from algebra.modules import (
    FreeModule, Module, ModuleError, ModuleMap, direct_sum, dual_injectives, dual_module,
    free_module, hom_dim, hom_space, indecomposable_projectives, projective, quotient,
    regular_module, simple_module, simple_modules, submodule, zero_module,
)
from algebra.homological import (
    GPVerdict, Isomorphism, OracleConfig, OracleModeError, Verdict, ext_dim, gp_check,
    is_isomorphic, is_self_injective, is_semisimple, projective_cover, projective_resolution,
    transpose,
)
