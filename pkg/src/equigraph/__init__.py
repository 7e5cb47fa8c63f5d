"""equigraph: construction and verification of equal-energy graph pairs.

From any two connected graphs with the same vertex and edge counts, the
recipes in :mod:`equigraph.constructions` derive pairs of non-cospectral
graphs whose Laplacian (or signless-Laplacian) energies coincide for every
large enough padding parameter p.  Everything a recipe claims is checked
against direct eigendecomposition by :mod:`equigraph.verify`.
"""

from .composition import (
    RuleOutcome,
    cross_check,
    rule_cartesian,
    rule_complement,
    rule_join,
    rule_kn_minus,
    rule_kronecker,
    rule_union,
)
from .constructions import (
    ClosedForm,
    Precondition,
    Recipe,
    check_precondition,
    closed_form_energy,
    construct,
    join_pairs,
    minimal_p,
    multi_join,
    recipe_description,
    recipe_kind,
    sequence,
)
from .eigen import eigenvalues, group_eigenvalues, jacobi_eigenvalues
from .errors import (
    ConditionUnsatisfiable,
    Disconnected,
    EdgeListFormatError,
    EmptyGraph,
    EquigraphError,
    KindMismatch,
    LengthMismatch,
    MismatchedPair,
    NoClosedForm,
    NoConvergence,
    NotEquienergeticInput,
    NotLaplacian,
    OrderMismatch,
    PreconditionFailed,
    SubgraphTooLarge,
    TooFewPairs,
    TooFewVertices,
)
from .graphs import (
    Graph,
    cartesian_product,
    complement,
    complete_bipartite_graph,
    complete_graph,
    component_count,
    cycle_graph,
    empty_graph,
    format_edge_list,
    from_edges,
    is_bipartite,
    is_connected,
    join,
    kn_minus_edges,
    kronecker_product,
    parse_edge_list,
    path_graph,
    read_edge_list,
    union,
    write_edge_list,
)
from .spectra import (
    EnergyReport,
    MatrixKind,
    Spectrum,
    algebraic_connectivity,
    are_cospectral,
    average_degree,
    energy,
    energy_report,
    laplacian_energy,
    laplacian_matrix,
    laplacian_spectrum,
    signless_laplacian_energy,
    signless_laplacian_matrix,
    signless_laplacian_spectrum,
    spectrum,
    zero_multiplicity,
)
from .verify import (
    AuditReport,
    DiscrepancyRecord,
    VerificationReport,
    audit_rules,
    tree_pair_product_energies,
    verify_pair,
    verify_recipe,
)

__version__ = "0.1.0"
