"""Exact computations with strictly unital A-infinity algebras, their curved
bar constructions, representations and first-order deformations."""

from .ainfinity import (
    AInfinityMorphism,
    AInfinityStructure,
    BarConstruction,
    MFamily,
    check_morphism,
    check_stasheff,
    dg_structure,
    m_nu_convert,
    pushforward,
)
from .cochains import Cochain, CurvatureMap, Functional, gerst_bracket, gerst_product
from .comodules import (
    CofreeComodule,
    ComoduleCoderivation,
    MatrixFactorization,
    check_curved_comodule,
    check_dg_comodule,
    comodule_morphism_check,
    matrix_factorization,
)
from .core import GradedMap, GradedModule, QQ, ZZ, parse_ring
from .deformations import (
    FirstOrderDeformation,
    first_order_check,
    gauge_action,
    is_coboundary,
    su_first_order_check,
    theta_build,
)
from .representations import (
    AdjointFamily,
    RepMorphismFamily,
    ShamashSystem,
    check_rep_morphism,
    check_representation,
    check_su_representation,
    shamash_convert,
    star_compose,
)
from .unital import (
    SplitUnitAlgebra,
    SplitUnitModule,
    check_curved_coalgebra,
    curved_bar,
    koszul_build,
    mc_check_su,
    su_morphism_check,
)

__all__ = [
    "AdjointFamily",
    "AInfinityMorphism",
    "AInfinityStructure",
    "BarConstruction",
    "check_curved_coalgebra",
    "check_curved_comodule",
    "check_dg_comodule",
    "check_morphism",
    "check_rep_morphism",
    "check_representation",
    "check_stasheff",
    "check_su_representation",
    "Cochain",
    "CofreeComodule",
    "comodule_morphism_check",
    "ComoduleCoderivation",
    "CurvatureMap",
    "curved_bar",
    "dg_structure",
    "first_order_check",
    "FirstOrderDeformation",
    "Functional",
    "gauge_action",
    "gerst_bracket",
    "gerst_product",
    "GradedMap",
    "GradedModule",
    "is_coboundary",
    "koszul_build",
    "m_nu_convert",
    "matrix_factorization",
    "MatrixFactorization",
    "mc_check_su",
    "MFamily",
    "parse_ring",
    "pushforward",
    "QQ",
    "RepMorphismFamily",
    "shamash_convert",
    "ShamashSystem",
    "SplitUnitAlgebra",
    "SplitUnitModule",
    "star_compose",
    "su_first_order_check",
    "su_morphism_check",
    "theta_build",
    "ZZ",
]
