"""Total-coloring lower bounds: the assignment model and the set-covering
master over maximal total matchings solved by column generation.

The covering master has one row per vertex and per edge; its columns are
maximal total matchings priced by the maximum weighted total matching
problem on the row duals. A priced value above 1 is a violated dual row,
i.e. a negative-reduced-cost column.
"""

from __future__ import annotations

import warnings

from .errors import InvalidParameterError, IterationLimitError, SolverError
from .graph import Graph
from .matching import (
    TotalMatching,
    WeightVector,
    enumerate_maximal_total_matchings,
    extend_to_maximal,
    mwtmp_exact,
)
from . import mp

PRICING_TOL = 1e-6
COLGEN_ITER_LIMIT = 10_000


# ---------------------------------------------------------------------------
# Assignment model


def _assignment_spec(g: Graph, k_count: int) -> mp.ModelSpec:
    """Binary assignment model: x[v,k], y[e,k], z[k]; one color per element,
    plus the star and edge-triple rows that force each class to be a total
    matching while linking the z usage indicators."""
    n, m, K = g.n, g.m, k_count
    spec = mp.ModelSpec(name=f"assignment({g.name or 'graph'},k={K})", sense="min")

    def xi(v, k):
        return v * K + k

    def yi(e, k):
        return n * K + e * K + k

    def zi(k):
        return (n + m) * K + k

    for v in range(n):
        for k in range(K):
            spec.add_variable(f"x{v}_{k}", 0, 1, True)
    for e in range(m):
        for k in range(K):
            spec.add_variable(f"y{e}_{k}", 0, 1, True)
    for k in range(K):
        spec.add_variable(f"z{k}", 0, 1, True, obj=1.0)
    for v in range(n):
        spec.add_constraint({xi(v, k): 1.0 for k in range(K)}, mp.EQ, 1.0)
    for e in range(m):
        spec.add_constraint({yi(e, k): 1.0 for k in range(K)}, mp.EQ, 1.0)
    for v in range(n):
        for k in range(K):
            coeffs = {xi(v, k): 1.0, zi(k): -1.0}
            for e in g.incident[v]:
                coeffs[yi(e, k)] = 1.0
            spec.add_constraint(coeffs, mp.LE, 0.0)
    for e, (u, v) in enumerate(g.edges):
        for k in range(K):
            spec.add_constraint(
                {xi(u, k): 1.0, xi(v, k): 1.0, yi(e, k): 1.0, zi(k): -1.0},
                mp.LE,
                0.0,
            )
    spec._layout = (xi, yi, zi)  # reused by the MIP solution reader
    return spec


def default_color_count(g: Graph) -> int:
    """Delta+2 colors: the Vizing-Behzad range covers every instance here."""
    return g.max_degree() + 2


def assignment_lp(g: Graph, k_count=None) -> float:
    """LP relaxation value of the assignment model (equals Delta+1 here)."""
    k = default_color_count(g) if k_count is None else k_count
    if k < g.max_degree() + 1:
        raise InvalidParameterError("need at least Delta+1 colors")
    return mp.solve_lp(_assignment_spec(g, k)).objective


def _precolor_bounds(g: Graph, spec: mp.ModelSpec, k_count: int):
    """Pin a max-degree vertex and its incident edges to distinct colors.

    Those Delta+1 elements are pairwise adjacent, so every total coloring
    uses distinct colors on them and can be renamed to this assignment;
    fixing variable bounds removes the color symmetry without touching
    any row of the model.
    """
    if g.n == 0:
        return
    xi, yi, _zi = spec._layout
    v_star = max(range(g.n), key=g.degree)
    fixed = [("x", v_star)] + [("e", e) for e in g.incident[v_star]]
    for color, (kind, idx) in enumerate(fixed):
        if color >= k_count:
            break
        j = xi(idx, color) if kind == "x" else yi(idx, color)
        spec.lb[j] = 1.0
        for k in range(k_count):
            if k != color:
                jj = xi(idx, k) if kind == "x" else yi(idx, k)
                spec.ub[jj] = 0.0


def assignment_mip(g: Graph, k_count=None, precolor=True, time_limit=None):
    """Exact chi_T by the assignment MIP.

    Returns (chi_T, colors) where colors is a list over elements (vertex
    block then edge block) of 0-based color ids forming a proper total
    coloring, or (None, None) when the model is infeasible (k too small).
    """
    k = default_color_count(g) if k_count is None else k_count
    if k < g.max_degree() + 1:
        raise InvalidParameterError("need at least Delta+1 colors")
    spec = _assignment_spec(g, k)
    if precolor:
        _precolor_bounds(g, spec, k)
    sol = mp.solve_mip(spec, time_limit=time_limit)
    if sol.status == mp.INFEASIBLE:
        return None, None
    xi, yi, _zi = spec._layout
    colors = []
    for v in range(g.n):
        colors.append(next(c for c in range(k) if sol.x[xi(v, c)] > 0.5))
    for e in range(g.m):
        colors.append(next(c for c in range(k) if sol.x[yi(e, c)] > 0.5))
    check_total_coloring(g, colors)
    return int(round(sol.objective)), colors


def check_total_coloring(g: Graph, colors):
    """Raise unless colors (over elements) is a proper total coloring."""
    if len(colors) != g.num_elements:
        raise InvalidParameterError("coloring vector has the wrong length")
    masks = g.element_adjacency_masks()
    for i in range(g.num_elements):
        mi = masks[i] >> (i + 1)
        j = i + 1
        while mi:
            if mi & 1 and colors[i] == colors[j]:
                raise InvalidParameterError(
                    f"elements {i} and {j} are adjacent but share color {colors[i]}"
                )
            mi >>= 1
            j += 1


def greedy_total_coloring(g: Graph):
    """First-fit proper total coloring over elements in id order.

    Returns the color classes as element-index lists; each class is a
    total matching and at most 2*Delta+1 classes are used.
    """
    masks = g.element_adjacency_masks()
    classes = []
    class_masks = []
    for el in range(g.num_elements):
        for ci, cm in enumerate(class_masks):
            if not cm & masks[el]:
                classes[ci].append(el)
                class_masks[ci] |= 1 << el
                break
        else:
            classes.append([el])
            class_masks.append(1 << el)
    return classes


# ---------------------------------------------------------------------------
# Covering master and column generation


class CoveringMaster:
    """Restricted set-covering (or partitioning) master over total-matching
    columns, with unit objective cost per column."""

    def __init__(self, g: Graph, mode="covering"):
        if mode not in ("covering", "partitioning"):
            raise InvalidParameterError(f"unknown master mode {mode!r}")
        self.graph = g
        self.mode = mode
        self.columns = []
        self._masks = set()
        self.spec = mp.ModelSpec(name=f"master({g.name or 'graph'})", sense="min")
        rel = mp.GE if mode == "covering" else mp.EQ
        for i in range(g.num_elements):
            self.spec.add_constraint({}, rel, 1.0, name=f"cover{i}")

    def has_column(self, tm: TotalMatching) -> bool:
        return tm.mask in self._masks

    def add_column(self, tm: TotalMatching):
        if tm.mask in self._masks:
            raise InvalidParameterError("duplicate column")
        entries = {}
        mask = tm.mask
        i = 0
        while mask:
            if mask & 1:
                entries[i] = 1.0
            mask >>= 1
            i += 1
        self.spec.add_column(f"l{len(self.columns)}", obj=1.0, entries=entries)
        self.columns.append(tm)
        self._masks.add(tm.mask)

    def solve_lp(self):
        """(value, duals over elements) of the restricted master LP."""
        sol = mp.solve_lp(self.spec)
        if sol.status != mp.OPTIMAL:
            raise SolverError(f"master LP ended with status {sol.status}")
        duals = list(sol.duals)
        if self.mode == "covering":
            duals = [max(0.0, d) for d in duals]  # covering duals are >= 0
        return sol.objective, duals

    def solve_ip(self):
        """(value, selected columns) of the restricted covering IP."""
        ip = mp.ModelSpec(name="master-ip", sense="min")
        rel = mp.GE if self.mode == "covering" else mp.EQ
        for j, tm in enumerate(self.columns):
            ip.add_variable(f"l{j}", 0, 1, True, obj=1.0)
        for i in range(self.graph.num_elements):
            coeffs = {
                j: 1.0
                for j, tm in enumerate(self.columns)
                if (tm.mask >> i) & 1
            }
            ip.add_constraint(coeffs, rel, 1.0)
        sol = mp.solve_mip(ip)
        if sol.status != mp.OPTIMAL:
            return None, None
        chosen = [self.columns[j] for j in range(len(self.columns)) if sol.x[j] > 0.5]
        return int(round(sol.objective)), chosen


def initial_columns(g: Graph):
    """Greedy coloring classes, each extended to a maximal total matching."""
    cols = []
    seen = set()
    for cls in greedy_total_coloring(g):
        mask = 0
        for el in cls:
            mask |= 1 << el
        tm = extend_to_maximal(g, TotalMatching.from_mask(g, mask))
        if tm.mask not in seen:
            seen.add(tm.mask)
            cols.append(tm)
    return cols


def covering_colgen(g: Graph, max_iterations=COLGEN_ITER_LIMIT):
    """Column generation on the covering LP.

    Returns (value, iterations, master). Each iteration solves the
    restricted LP, prices on the duals, and adds the maximalized optimal
    column while its value exceeds 1; at termination the LP value is the
    full covering relaxation bound.
    """
    master = CoveringMaster(g, mode="covering")
    for tm in initial_columns(g):
        master.add_column(tm)
    iterations = 0
    perturbed = False
    value = None
    while True:
        if iterations >= max_iterations:
            raise IterationLimitError(
                f"column generation hit {max_iterations} iterations",
                best_bound=value,
            )
        iterations += 1
        value, duals = master.solve_lp()
        w = WeightVector(g, duals[: g.n], duals[g.n:])
        priced, tm = mwtmp_exact(g, w)
        if priced <= 1.0 + PRICING_TOL:
            return value, iterations, master
        tm = extend_to_maximal(g, tm)
        if master.has_column(tm):
            # degenerate stall: nudge the duals once, then give up loudly
            if perturbed:
                warnings.warn(
                    "column generation stalled on a duplicate column; "
                    "returning the current restricted bound"
                )
                return value, iterations, master
            perturbed = True
            w = WeightVector(
                g, [d + 1e-9 for d in duals[: g.n]], [d + 1e-9 for d in duals[g.n:]]
            )
            _, tm = mwtmp_exact(g, w)
            tm = extend_to_maximal(g, tm)
            if master.has_column(tm):
                warnings.warn(
                    "column generation stalled on a duplicate column; "
                    "returning the current restricted bound"
                )
                return value, iterations, master
        master.add_column(tm)


def covering_exact_small(g: Graph, mode="covering") -> float:
    """Full covering or partitioning LP; n+m <= 20 only. The column-
    generation oracle and the covering = partitioning identity check.

    Covering uses the maximal total matchings (dominated columns change
    nothing under >=). Partitioning must run over all total matchings:
    the equality rows can be unsatisfiable over maximal columns alone
    (a star's forced edge columns double-cover the leaves), while with
    the subset-closed family every covering solution shrinks to a
    partition of the same cost, which is what makes the two values equal.
    """
    master = CoveringMaster(g, mode=mode)
    if mode == "covering":
        for tm in enumerate_maximal_total_matchings(g):
            master.add_column(tm)
    else:
        from .polytope import enumerate_total_matchings

        for mask in enumerate_total_matchings(g):
            if mask:
                master.add_column(TotalMatching.from_mask(g, mask))
    value, _ = master.solve_lp()
    return value


def round_to_coloring(g: Graph, columns):
    """Proper total coloring from a column pool: restricted covering IP,
    then every multiply-covered element keeps only its first class.

    Returns (color count, classes as element-index lists); an upper bound
    on chi_T, exact only when it matches a lower bound.
    """
    master = CoveringMaster(g, mode="covering")
    for tm in columns:
        if not master.has_column(tm):
            master.add_column(tm)
    count, chosen = master.solve_ip()
    if count is None:
        raise InvalidParameterError("column pool does not cover all elements")
    taken = 0
    classes = []
    for tm in chosen:
        cls = []
        mask = tm.mask & ~taken
        i = 0
        while mask:
            if mask & 1:
                cls.append(i)
            mask >>= 1
            i += 1
        taken |= tm.mask
        if cls:
            classes.append(cls)
    colors = [None] * g.num_elements
    for ci, cls in enumerate(classes):
        for el in cls:
            colors[el] = ci
    check_total_coloring(g, colors)
    return len(classes), classes


def write_coloring(path: str, g: Graph, colors):
    """Coloring file: `v <id> <color>` then `e <id> <color>` lines."""
    with open(path, "w") as f:
        for v in range(g.n):
            f.write(f"v {v} {colors[v]}\n")
        for e in range(g.m):
            f.write(f"e {e} {colors[g.n + e]}\n")
