"""Exact constructions and checks for A-hypergeometric rank-jump families."""

from .errors import (
    DimensionError,
    GradingError,
    HgfamError,
    InternalError,
    RankError,
    ResourceLimitError,
)
from .families import (
    FamilyInstance,
    GlueColumn,
    base_matrices,
    decompose_d,
    hat_family,
    hat_family_homogenized,
    make_instance,
    product_family,
    repeated_family,
)
from .lattice import (
    IntegerMatrix,
    SmithDecomposition,
    direct_sum,
    homogenize,
    is_homogeneous_configuration,
    kernel_basis,
    lattice_index,
    smith_normal_form,
)
from .polytope import ConfigPolytope, contains_point, normalized_volume, polytopes_equal, volume_dfact
from .semigroup import GradedSemigroup, is_hole, positive_grading, semigroup_member, semigroups_equal
from .system import (
    EulerOperator,
    HypergeometricSystem,
    PredictedStats,
    assemble_system,
    box_operator,
    euler_operators,
    predicted_stats,
    render_system,
    split_check,
)
from .toric import Binomial, MonomialOrder, buchberger, ideals_equal, reduce, saturate, toric_generators
from .verify import VerificationReport, ratio_table, verify

__version__ = "0.1.0"
