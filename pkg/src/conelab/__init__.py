"""Exact arithmetic for matrix realizations of homogeneous convex cones."""

from conelab.backend import backend_name
from conelab.core import (
    BlockPartition,
    ConditionReport,
    ConeElement,
    GroupElement,
    LdlResult,
    PairingReport,
    VCollection,
    VerificationReport,
    block_from_coords,
    cone_element,
    dual_pairing_positive,
    element_is_zero,
    embed,
    embed_group,
    group_compose,
    group_element,
    group_identity,
    identity_element,
    inner_product_V,
    inner_product_space,
    is_member,
    ldl_decompose,
    project,
    project_group,
    rho_act,
    verify_v_conditions,
)
from conelab.degrees import (
    DimTable,
    SigmaMatrix,
    SigmaTraceStep,
    character_exponents,
    degrees_from_sigma,
    dual_degrees_rank3,
    rank3_table,
    sigma_from_dims,
)
from conelab.doubling import DEFAULT_RANK_CAP, double, iterate_construction, rank_cap
from conelab.errors import (
    ClosureViolationError,
    InconsistentDimsError,
    NotInSpaceError,
    SerializationError,
    StructureError,
)
from conelab.poly import Poly
from conelab.rank3 import (
    Classification,
    CompositionFamily,
    CompositionReport,
    CouplingDecomposition,
    DualRank3Element,
    InvarianceReport,
    InvariantList,
    LRReport,
    Rank3Element,
    build_rank3_cone,
    build_rank3_dual,
    bundled_family_3_5_7,
    classify_degrees,
    closed_form_invariants,
    composition_family,
    consistency_LR,
    coupling,
    coupling_decomposition_check,
    defect_witness,
    det_rank3_closed,
    det_rank3_dual_closed,
    dual_action_defect,
    dual_from_cone_element,
    dual_rank3_element,
    dual_to_cone_element,
    embed_rank3,
    embed_rank3_dual,
    from_cone_element,
    hurwitz_radon_number,
    identity_rank3,
    identity_rank3_dual,
    rank3_element,
    relative_invariance_check,
    to_cone_element,
    transposed_action_defect,
    verify_composition,
)
from conelab.sampling import RationalSampler

__version__ = "0.1.0"

__all__ = [
    "BlockPartition",
    "Classification",
    "ClosureViolationError",
    "CompositionFamily",
    "CompositionReport",
    "ConditionReport",
    "ConeElement",
    "CouplingDecomposition",
    "DEFAULT_RANK_CAP",
    "DimTable",
    "DualRank3Element",
    "GroupElement",
    "InconsistentDimsError",
    "InvarianceReport",
    "InvariantList",
    "LRReport",
    "LdlResult",
    "NotInSpaceError",
    "PairingReport",
    "Poly",
    "Rank3Element",
    "RationalSampler",
    "SerializationError",
    "SigmaMatrix",
    "SigmaTraceStep",
    "StructureError",
    "VCollection",
    "VerificationReport",
    "backend_name",
    "block_from_coords",
    "build_rank3_cone",
    "build_rank3_dual",
    "bundled_family_3_5_7",
    "character_exponents",
    "classify_degrees",
    "closed_form_invariants",
    "composition_family",
    "cone_element",
    "consistency_LR",
    "coupling",
    "coupling_decomposition_check",
    "defect_witness",
    "degrees_from_sigma",
    "det_rank3_closed",
    "det_rank3_dual_closed",
    "double",
    "dual_action_defect",
    "dual_degrees_rank3",
    "dual_from_cone_element",
    "dual_pairing_positive",
    "dual_rank3_element",
    "dual_to_cone_element",
    "element_is_zero",
    "embed",
    "embed_group",
    "embed_rank3",
    "embed_rank3_dual",
    "from_cone_element",
    "group_compose",
    "group_element",
    "group_identity",
    "hurwitz_radon_number",
    "identity_element",
    "identity_rank3",
    "identity_rank3_dual",
    "inner_product_V",
    "inner_product_space",
    "is_member",
    "iterate_construction",
    "ldl_decompose",
    "project",
    "project_group",
    "rank3_element",
    "rank3_table",
    "rank_cap",
    "relative_invariance_check",
    "rho_act",
    "sigma_from_dims",
    "to_cone_element",
    "transposed_action_defect",
    "verify_composition",
    "verify_v_conditions",
]
