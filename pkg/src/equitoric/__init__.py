"""Exact classification of torus-equivariant principal bundles with an
abelian structure group on smooth toric varieties."""

from .lattice import (
    Character,
    LatticeError,
    Vector,
    complete_to_basis,
    det,
    dual_basis,
    hermite_normal_form,
    invariant_factors,
    pairing,
    smith_normal_form,
    solve_dual,
)
from .fan import (
    Cone,
    Fan,
    FanError,
    NotAFanError,
    StabilizerSplitting,
    cone_contains,
    dual_contains,
    fan_validity,
    intersect,
    is_complete,
    is_smooth,
    perp_contains,
    stabilizer_splitting,
)
from .bundle import (
    BlockStructure,
    BundleData,
    BundleError,
    Classification,
    ExtensionError,
    RayValues,
    TransitionCocycle,
    check_extension,
    classify,
    from_ray_values,
    induced_on_face,
    inverse,
    is_isomorphic,
    tensor,
    to_ray_values,
    transition_cocycle,
    trivial,
    verify_cocycle,
)
from .laurent import LaurentError, LaurentMatrix, LaurentPoly
from .rep import (
    JointSplit,
    LimitExtensionVerdict,
    RepError,
    WeightDecomposition,
    collect_weights,
    joint_split,
    monomial_limit_extension,
    split,
    split_to_bundle,
    triangular_rigidity_check,
    verify_homomorphism,
)
from .report import CheckReport

__version__ = "0.1.0"
