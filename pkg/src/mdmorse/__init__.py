"""Multidimensional discrete Morse theory on simplicial complexes.

The public surface re-exports the most used names; the submodules hold the
rest.
"""

from .complex import (
    SimplicialComplex,
    build_complex,
    closure,
    elementary_collapse,
    exit_set,
    is_subcomplex,
    simplex,
)
from .components import (
    component_decomposition,
    component_graph,
    component_inequalities,
    critical_components,
    is_acyclic_mdm,
)
from .dynamics import (
    FlowGraph,
    MorseDecomposition,
    basic_sets,
    chain_recurrent_set,
    coarsen,
    connecting_set,
    connects,
    finest_decomposition,
    flow_of,
    has_full_solution_through,
    is_acyclic_flow,
    is_invariant,
    is_isolated_invariant,
    is_morse_decomposition,
    morse_set,
)
from .errors import *  # noqa: F401,F403
from .field import (
    DiscreteVectorField,
    build_field,
    cancel_critical_pair,
    closed_vpath,
    is_acyclic_field,
)
from .homology import betti, betti_pair, conley_index
from .mdm import (
    MdmFunction,
    combine_component_gradients,
    critical_points,
    field_to_mdm,
    gradient,
    in_q_box,
    sublevel,
    validate_mdm,
    vleq,
    vlt,
)
from .morse import (
    CollapseSequence,
    MorseReport,
    collapse_to,
    extended_decomposition,
    morse_report_decomposition,
    morse_report_points,
    replay,
    sublevel_collapse,
)

__version__ = "0.1.0"
