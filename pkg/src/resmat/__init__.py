"""Sparse-resultant matrices from combinatorial mixed subdivisions.

Box (n-zonotope) and multihomogeneous systems share one engine: closed-form
half-open interval arithmetic classifies every lattice point into a cell of
a fixed mixed subdivision, the greedy reduction selects the small row set,
and the quotient of two determinants is validated by randomized
specialization over a prime field.
"""

from .errors import (
    BadShape,
    NonPositiveBound,
    NotClosed,
    NotPrime,
    OrderingViolated,
    PointOutOfRange,
    ResmatError,
    SingularGenerators,
    SpecInvalid,
    SpecParse,
    UnsupportedFormat,
)
from .greedy import (
    cell_table,
    check_no_escape,
    greedy_closure,
    greedy_type_functions,
    is_greedy,
    predicted_size_zonotope,
)
from .matrix import (
    SymbolicMatrix,
    build_matrix,
    export_matrix,
    principal_submatrix,
)
from .multihomo import (
    Embedding,
    cell_table_multi,
    check_no_escape_multi,
    column_support_multi,
    embed,
    greedy_closure_multi,
    in_lattice_multi,
    is_valid_group_typefn,
    lattice_points_multi,
    predicted_size_multihomo,
    row_content_multi,
    type_function_multi,
    zono_coords,
)
from .oracles import (
    DEFAULT_PRIME,
    QuotientReport,
    draw_coefficients,
    ff_det,
    mixed_volume,
    permanent,
    specialize,
    sylvester_resultant,
    verify_quotient,
)
from .subdivision import (
    cell_points,
    column_support,
    is_mixed,
    lattice_points,
    reflect_point,
    row_content_of,
    type_function_of,
)
from .systems import (
    CoeffRef,
    MultiHomoSystem,
    RowContent,
    ZonotopeSystem,
    normalize_zonotope,
    type_vector_of,
    validate_multihomo,
    validate_zonotope,
)

__version__ = "0.1.0"

__all__ = [
    "BadShape",
    "CoeffRef",
    "DEFAULT_PRIME",
    "Embedding",
    "MultiHomoSystem",
    "NonPositiveBound",
    "NotClosed",
    "NotPrime",
    "OrderingViolated",
    "PointOutOfRange",
    "QuotientReport",
    "ResmatError",
    "RowContent",
    "SingularGenerators",
    "SpecInvalid",
    "SpecParse",
    "SymbolicMatrix",
    "UnsupportedFormat",
    "ZonotopeSystem",
    "build_matrix",
    "cell_points",
    "cell_table",
    "cell_table_multi",
    "check_no_escape",
    "check_no_escape_multi",
    "column_support",
    "column_support_multi",
    "draw_coefficients",
    "embed",
    "export_matrix",
    "ff_det",
    "greedy_closure",
    "greedy_closure_multi",
    "greedy_type_functions",
    "in_lattice_multi",
    "is_greedy",
    "is_mixed",
    "is_valid_group_typefn",
    "lattice_points",
    "lattice_points_multi",
    "mixed_volume",
    "normalize_zonotope",
    "permanent",
    "predicted_size_multihomo",
    "predicted_size_zonotope",
    "principal_submatrix",
    "reflect_point",
    "row_content_of",
    "specialize",
    "sylvester_resultant",
    "type_function_multi",
    "type_function_of",
    "type_vector_of",
    "validate_multihomo",
    "validate_zonotope",
    "verify_quotient",
    "zono_coords",
]
