"""Exact toolkit: list-chromatic lower bounds vs. clique-minor freeness.

Builds small instances of a clique-sum construction whose list chromatic
number provably exceeds its Hadwiger number, and verifies every claim with
exact solvers: clique-minor containment, list colorability, and the
side conditions of the random gadget.
"""

from .choose import (
    chromatic_number,
    clique_extension_feasible,
    find_list_coloring,
    is_k_choosable,
    list_chromatic_number,
    parse_lists,
    render_lists,
)
from .construct import (
    AssembledInstance,
    Certificate,
    ConstructionParams,
    assemble,
    certify,
    choose_epsilon_prime,
    derive_n,
    make_construction_params,
    replay_certificate,
    verify_unlistcolorable,
)
from .errors import (
    BudgetError,
    Error,
    ExactnessRangeError,
    ExhaustionError,
    InputError,
    IntegrityError,
    ParseError,
    WorkLimitError,
)
from .gadget import (
    BipartitionedGraph,
    GadgetParams,
    PropertyReport,
    check_cliques_and_nondegree,
    check_covering_property,
    gadget_from_sample,
    generate_verified_gadget,
    sample_bipartite,
)
from .graphs import (
    Graph,
    complement,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    graph_from_edges,
    induced_subgraph,
    is_clique,
    is_connected,
    mask_of,
    parse_graph,
    petersen_graph,
    render_graph,
    to_dot,
    vertices_of,
)
from .minor import (
    MinorModel,
    clique_sum,
    find_kt_minor,
    hadwiger_number,
    verify_minor_model,
)
from .montecarlo import MonteCarloReport, monte_carlo

__version__ = "0.1.0"
