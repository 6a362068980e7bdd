"""Exact critical-weight computations for Casimir quantizations of AHS-structures."""

__version__ = "0.1.0"

from .charalg import (
    FormalCharacter,
    IrrepDecomposition,
    decompose,
    exterior_power_character,
    irreducible_character,
    symmetric_power_character,
    tensor_character,
)
from .errors import (
    AhsQuantError,
    ConfigurationError,
    DisplayParseError,
    DomainError,
    NoUniqueCriticalWeight,
    NotACharacterError,
)
from .grading import (
    GradedSetup,
    branch_to_levels,
    build_graded_setup,
    density_shift,
    format_display,
    level_of_label,
    parse_display,
)
from .quant import (
    QuantReport,
    casimir_difference,
    casimir_eigenvalue,
    coarse_candidates,
    critical_delta,
    critical_report,
    dominance_threshold,
    gamma_value,
    gamma_zero_deltas,
    match_g_components,
    prop35_set,
    refine_candidates,
    symbol_components,
)
from .rootsys import (
    RootSystem,
    build_root_system,
    dual_involution,
    inner_product,
    is_dominant,
    weyl_dimension,
)
