"""Total coloring and total matching bound toolkit.

Lower bounds for the total chromatic number (assignment LP and a
set-covering master solved by column generation), upper bounds for the
maximum total matching (cutting planes over vertex-clique, congruent-2k3
cycle, and even-clique inequalities), and a small-scale exact polytope
laboratory that verifies which of those inequalities are facets.
"""

from .errors import (
    CutLoopError,
    FixtureMissingError,
    GraphFormatError,
    InvalidElementError,
    InvalidParameterError,
    InvalidPointError,
    IterationLimitError,
    NodeLimitExceededError,
    SizeLimitError,
    SolverError,
    TotmatchError,
)
from .graph import (
    Element,
    ElementSet,
    Graph,
    elements_adjacent,
    load_dimacs,
    load_graph6,
    maximal_cliques,
    named_graph,
    random_cubic,
    random_gnp,
    save_dimacs,
    save_graph6,
    total_graph,
)
from .matching import (
    TotalMatching,
    WeightVector,
    basic_lp_bound,
    basic_lp_solution,
    enumerate_maximal_total_matchings,
    extend_to_maximal,
    greedy_maximal,
    is_total_matching,
    load_weights,
    matching_number,
    mwtmp_bruteforce,
    mwtmp_exact,
    perfect_total_matching,
    stable_set_number,
    total_matching_number,
)
from .mp import ModelSpec, Solution, solve_lp, solve_mip, write_lp_file
from .separation import (
    CutInequality,
    even_clique_cut,
    floor_2k3,
    odd_clique_cut,
    separate_cycle_mip,
    separate_cycle_sp,
    separate_even_clique,
    separate_vertex_clique,
)
from .cutloop import CutLoopConfig, CutLoopReport, run_cut_loop
from .coloring import (
    assignment_lp,
    assignment_mip,
    covering_colgen,
    covering_exact_small,
    greedy_total_coloring,
    round_to_coloring,
)
from .polytope import (
    FacetCheck,
    LinearInequality,
    check_inequality,
    enumerate_total_matchings,
    polytope_dimension,
)

__version__ = "0.1.0"
