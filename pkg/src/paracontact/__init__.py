"""Exact eleven-class decomposition of almost paracontact structures at a point."""

from .classifier import (
    ClassificationReport,
    DimensionAudit,
    characterization_check,
    classify,
    dimension_audit,
    identity_residuals,
    label_for,
)
from .documents import ParsedInput, parse_input, serialize_report, tensor_document
from .errors import (
    DegeneracyError,
    DimensionError,
    GroupElementError,
    InadmissibleError,
    NotInSubspaceError,
    OperatorConstraintError,
    ParacontactError,
    SchemaError,
    StructureError,
    VanishingClassError,
)
from .ftensor import (
    FTensor,
    OperatorFamily,
    admissible_projection,
    assemble_from_operators,
    extract_operators,
    group_action,
    inner_product,
    is_admissible,
    one_forms,
    operator_family,
    tensor,
    zero_tensor,
)
from .projectors import ComponentDecomposition, decompose, m3_constant, m3_refine, w1_split
from .samples import ExampleParams, example, parse_params, random_admissible, random_pure
from .structure import (
    GroupElement,
    StructureSpace,
    build_phi_basis,
    make_group_element,
    make_structure,
    random_group_element,
    standard_structure,
    validate_structure,
)

__version__ = "0.1.0"
