"""Exact-arithmetic weak-exceptionality verdicts for quotient singularities
by finite matrix groups over cyclotomic fields."""

from .cyclotomic import (
    Cyclotomic,
    cyclotomic_polynomial,
    format_cyclotomic,
    parse_cyclotomic,
    root_of_unity,
    totient,
)
from .groups import (
    ConjugacyClass,
    FiniteMatrixGroup,
    GroupElement,
    central_scalars,
    closure,
    commutator_subgroup,
    conjugacy_classes,
    contains_diagonal_torus,
    contains_reflections,
    eigenvalue_multiplicities,
    is_reflection,
    power_map,
)
from .characters import (
    CharacterTable,
    ClassFunction,
    SemiInvariantProfile,
    central_obstruction,
    char_inner,
    constituent_multiplicities,
    dixon_table,
    dual_character,
    isotypic_basis,
    isotypic_projector,
    linear_characters,
    monomial_basis,
    natural_character,
    semiinvariant_count,
    semiinvariant_profile,
    subrep_dimension_reachable,
    subrep_dimension_realization,
    sym_power_character,
    sym_power_matrix,
)
from .constructions import (
    DuValFork,
    NoetherData,
    PadicInstance,
    SubvarietyBounds,
    SurfaceBookkeeping,
    ThreefoldBookkeeping,
    diagonal_group,
    heisenberg,
    lct_duval,
    lct_upper_bound,
    noether_rank,
    padic_check,
    subvariety_bounds,
    surface_candidates_p4,
    threefold_survivor_p5,
)
from .verdict import (
    INCONCLUSIVE,
    NOT_WEAKLY_EXCEPTIONAL,
    REFLECTIONS_PRESENT,
    WEAKLY_EXCEPTIONAL,
    ConditionResult,
    VerdictReport,
    check_diagonal,
    check_dim2_3,
    check_dim4,
    check_dim5,
    check_dim6,
    check_heisenberg,
    verdict,
)
from .specio import (
    GroupSpec,
    TableSpec,
    emit_group_spec,
    emit_report,
    emit_table_spec,
    fixture_path,
    group_spec_from_generators,
    parse_group_spec,
    parse_table_spec,
    run_pipeline,
    table_from_spec,
    table_spec_from_table,
)

__version__ = "0.1.0"
