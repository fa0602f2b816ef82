"""Bell correlation polytopes: exact facet enumeration, symmetry
classification, and quantum violation bounds for small scenarios."""

from .errors import (
    BellPolyError,
    CapExceeded,
    DimensionLimit,
    DimensionMismatch,
    InternalInvariantError,
    LimitExceeded,
    NonFinite,
    RepresentationMismatch,
)
from .geometry import (
    AffineHull,
    FacetStatus,
    MembershipCertificate,
    PolytopeDescription,
    Verdict,
    affine_hull,
    classical_bound,
    enumerate_facets,
    is_facet,
    is_valid,
    membership,
)
from .inequality import Inequality
from .quantum import (
    BellValue,
    QuantumModel,
    bell_operator,
    ghz_state,
    ghz_value,
    ppt_check,
    quantum_value_seesaw,
    rationalize,
    rationalize_behavior,
)
from .scenario import (
    Behavior,
    DeterministicStrategy,
    Representation,
    Scenario,
    enumerate_strategies,
    enumerate_vertices,
    strategy_to_behavior,
)
from .symmetry import (
    InequalityClass,
    Relabeling,
    apply,
    canonical_form,
    classify,
    group_order,
    relabeling_group,
)
from .wernerwolf import (
    SignVector,
    inverse_parity_transform,
    membership_threshold,
    parity_transform,
    ww_enumerate,
    ww_inequality,
    ww_membership,
)

__version__ = "0.1.0"

__all__ = [
    "AffineHull",
    "Behavior",
    "BellPolyError",
    "BellValue",
    "CapExceeded",
    "DeterministicStrategy",
    "DimensionLimit",
    "DimensionMismatch",
    "FacetStatus",
    "Inequality",
    "InequalityClass",
    "InternalInvariantError",
    "LimitExceeded",
    "MembershipCertificate",
    "NonFinite",
    "PolytopeDescription",
    "QuantumModel",
    "Relabeling",
    "Representation",
    "RepresentationMismatch",
    "Scenario",
    "SignVector",
    "Verdict",
    "affine_hull",
    "apply",
    "bell_operator",
    "canonical_form",
    "classical_bound",
    "classify",
    "enumerate_facets",
    "enumerate_strategies",
    "enumerate_vertices",
    "ghz_state",
    "ghz_value",
    "group_order",
    "inverse_parity_transform",
    "is_facet",
    "is_valid",
    "membership",
    "membership_threshold",
    "parity_transform",
    "ppt_check",
    "quantum_value_seesaw",
    "rationalize",
    "rationalize_behavior",
    "relabeling_group",
    "strategy_to_behavior",
    "ww_enumerate",
    "ww_inequality",
    "ww_membership",
]
