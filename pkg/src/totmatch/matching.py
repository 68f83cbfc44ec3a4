"""Total matchings: recognition, exact and brute-force optimization,
perfect total matchings, greedy maximal extension, and the basic LP bound.

A total matching is a set of pairwise independent elements (no two
adjacent vertices, no two incident edges, no edge with one of its
endpoints). Its feasible region is described by one row per vertex
(x_v + sum of incident y_e <= 1) and one row per edge
(x_u + x_w + y_e <= 1); those two families plus the [0,1] box are the
"basic" system used throughout.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidElementError, SizeLimitError
from .graph import ElementSet, Graph
from . import mp

BRUTE_FORCE_CAP = 24
ENUM_MAXIMAL_CAP = 20
EPS = 1e-6


class TotalMatching:
    """An ElementSet whose members are pairwise independent."""

    def __init__(self, graph: Graph, elements: ElementSet):
        if elements.graph is not graph:
            raise InvalidElementError("element set belongs to a different graph")
        if not is_total_matching(graph, elements):
            raise InvalidElementError("element set is not a total matching")
        self.graph = graph
        self.elements = elements

    @classmethod
    def from_mask(cls, graph: Graph, mask: int) -> "TotalMatching":
        return cls(graph, ElementSet.from_mask(graph, mask))

    @property
    def mask(self) -> int:
        return self.elements.mask

    def vertices(self):
        return self.elements.vertices()

    def edge_ids(self):
        return self.elements.edge_ids()

    def covers_all_vertices(self) -> bool:
        g = self.graph
        covered = set(self.vertices())
        for e in self.edge_ids():
            covered.update(g.endpoints(e))
        return len(covered) == g.n

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return isinstance(other, TotalMatching) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"<TotalMatching v={self.vertices()} e={self.edge_ids()}>"


class WeightVector:
    """Per-vertex and per-edge weights; rationals or floats both fine."""

    def __init__(self, graph: Graph, vertex_weights, edge_weights):
        vw, ew = list(vertex_weights), list(edge_weights)
        if len(vw) != graph.n or len(ew) != graph.m:
            raise InvalidElementError("weight vector sized for a different graph")
        self.graph = graph
        self.vertex = vw
        self.edge = ew

    @classmethod
    def unit(cls, graph: Graph) -> "WeightVector":
        return cls(graph, [1] * graph.n, [1] * graph.m)

    def weight_of_mask(self, mask: int):
        g = self.graph
        total = 0
        for v in range(g.n):
            if (mask >> v) & 1:
                total += self.vertex[v]
        for e in range(g.m):
            if (mask >> (g.n + e)) & 1:
                total += self.edge[e]
        return total

    def as_floats(self):
        return [float(w) for w in self.vertex], [float(w) for w in self.edge]


def load_weights(path: str, graph: Graph) -> WeightVector:
    """Weight file: lines `v <id> <weight>` / `e <id> <weight>`; missing
    entries default to 1. Weights are kept as exact rationals."""
    vw = [Fraction(1)] * graph.n
    ew = [Fraction(1)] * graph.m
    with open(path) as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3 or parts[0] not in ("v", "e"):
                raise InvalidElementError(f"bad weight line {lineno}: {line!r}")
            idx, w = int(parts[1]), Fraction(parts[2])
            if parts[0] == "v":
                if not 0 <= idx < graph.n:
                    raise InvalidElementError(f"line {lineno}: vertex {idx} out of range")
                vw[idx] = w
            else:
                if not 0 <= idx < graph.m:
                    raise InvalidElementError(f"line {lineno}: edge {idx} out of range")
                ew[idx] = w
    return WeightVector(graph, vw, ew)


def is_total_matching(g: Graph, s: ElementSet) -> bool:
    """True iff every pair of members is independent."""
    if s.graph is not g:
        raise InvalidElementError("element set sized for a different graph")
    masks = g.element_adjacency_masks()
    mask = s.mask
    rest = mask
    while rest:
        low = rest & -rest
        i = low.bit_length() - 1
        if masks[i] & mask:
            return False
        rest ^= low
    return True


def _basic_model(g: Graph, w: WeightVector, integer: bool) -> mp.ModelSpec:
    vw, ew = w.as_floats()
    spec = mp.ModelSpec(name=f"mwtmp({g.name or 'graph'})", sense="max")
    for v in range(g.n):
        spec.add_variable(f"x{v}", lb=0, ub=1, integer=integer, obj=vw[v])
    for e in range(g.m):
        spec.add_variable(f"y{e}", lb=0, ub=1, integer=integer, obj=ew[e])
    for v in range(g.n):
        coeffs = {v: 1.0}
        for e in g.incident[v]:
            coeffs[g.n + e] = 1.0
        spec.add_constraint(coeffs, mp.LE, 1.0, name=f"star{v}")
    for e, (u, v) in enumerate(g.edges):
        spec.add_constraint({u: 1.0, v: 1.0, g.n + e: 1.0}, mp.LE, 1.0, name=f"edge{e}")
    return spec


def mwtmp_exact(g: Graph, w: WeightVector):
    """Maximum weighted total matching by integer programming.

    Returns (optimal value, TotalMatching attaining it).
    """
    sol = mp.solve_mip(_basic_model(g, w, integer=True))
    mask = 0
    for i in range(g.num_elements):
        if sol.x[i] > 0.5:
            mask |= 1 << i
    tm = TotalMatching.from_mask(g, mask)
    return sol.objective, tm


def mwtmp_bruteforce(g: Graph, w: WeightVector):
    """Exhaustive backtracking oracle for graphs with n+m <= 24.

    Negative-weight elements are never forced in, so the optimum over all
    total matchings equals the optimum over independent subsets of the
    nonnegative support; we search all subsets anyway for simplicity.
    """
    ne = g.num_elements
    if ne > BRUTE_FORCE_CAP:
        raise SizeLimitError(f"brute force capped at n+m <= {BRUTE_FORCE_CAP}, got {ne}")
    masks = g.element_adjacency_masks()
    weights = list(w.vertex) + list(w.edge)
    best_val = 0
    best_mask = 0

    def rec(i, chosen, forbidden, val):
        nonlocal best_val, best_mask
        if val > best_val:
            best_val, best_mask = val, chosen
        for j in range(i, ne):
            bit = 1 << j
            if forbidden & bit:
                continue
            rec(j + 1, chosen | bit, forbidden | masks[j] | bit, val + weights[j])

    rec(0, 0, 0, 0)
    return best_val, TotalMatching.from_mask(g, best_mask)


def extend_to_maximal(g: Graph, t: TotalMatching, order=None) -> TotalMatching:
    """Add elements in the given order (default: vertices then edges by id)
    until nothing fits."""
    masks = g.element_adjacency_masks()
    mask = t.mask
    forbidden = 0
    for i in range(g.num_elements):
        if (mask >> i) & 1:
            forbidden |= masks[i]
    for i in order if order is not None else range(g.num_elements):
        bit = 1 << i
        if mask & bit or forbidden & bit:
            continue
        mask |= bit
        forbidden |= masks[i]
    return TotalMatching.from_mask(g, mask)


def greedy_maximal(g: Graph, order=None) -> TotalMatching:
    """Greedy maximal total matching scanning elements in the given order."""
    return extend_to_maximal(g, TotalMatching.from_mask(g, 0), order=order)


def enumerate_maximal_total_matchings(g: Graph):
    """All inclusion-maximal total matchings (n+m <= 20), each once."""
    ne = g.num_elements
    if ne > ENUM_MAXIMAL_CAP:
        raise SizeLimitError(
            f"maximal enumeration capped at n+m <= {ENUM_MAXIMAL_CAP}, got {ne}"
        )
    masks = g.element_adjacency_masks()
    full = (1 << ne) - 1
    result = []

    def rec(i, chosen, blocked):
        if i == ne:
            if (chosen | blocked) == full:
                result.append(TotalMatching.from_mask(g, chosen))
            return
        bit = 1 << i
        if not blocked & bit:
            rec(i + 1, chosen | bit, blocked | masks[i])
        rec(i + 1, chosen, blocked)

    # blocked holds only adjacency-forbidden bits, so the leaf test
    # "every element chosen or blocked" is exactly inclusion-maximality
    rec(0, 0, 0)
    return result


def perfect_total_matching(g: Graph) -> TotalMatching:
    """Total matching covering every vertex: a maximum matching plus the
    vertices it leaves uncovered (those are pairwise independent)."""
    spec = mp.ModelSpec(name="max-matching", sense="max")
    for e in range(g.m):
        spec.add_variable(f"y{e}", lb=0, ub=1, integer=True, obj=1.0)
    for v in range(g.n):
        if g.incident[v]:
            spec.add_constraint({e: 1.0 for e in g.incident[v]}, mp.LE, 1.0)
    sol = mp.solve_mip(spec)
    mask = 0
    covered = set()
    for e in range(g.m):
        if sol.x[e] > 0.5:
            mask |= 1 << (g.n + e)
            covered.update(g.endpoints(e))
    for v in range(g.n):
        if v not in covered:
            mask |= 1 << v
    return TotalMatching.from_mask(g, mask)


def basic_lp_bound(g: Graph, w: WeightVector) -> float:
    """Optimum of the LP relaxation of the total-matching system."""
    return mp.solve_lp(_basic_model(g, w, integer=False)).objective


def basic_lp_solution(g: Graph, w: WeightVector):
    """(value, fractional point over elements) of the basic LP optimum."""
    sol = mp.solve_lp(_basic_model(g, w, integer=False))
    return sol.objective, [float(v) for v in sol.x]


def matching_number(g: Graph) -> int:
    """nu(G): maximum matching size, by integer programming."""
    spec = mp.ModelSpec(name="matching-number", sense="max")
    for e in range(g.m):
        spec.add_variable(f"y{e}", lb=0, ub=1, integer=True, obj=1.0)
    for v in range(g.n):
        if g.incident[v]:
            spec.add_constraint({e: 1.0 for e in g.incident[v]}, mp.LE, 1.0)
    return int(round(mp.solve_mip(spec).objective))


def stable_set_number(g: Graph) -> int:
    """alpha(G): maximum stable set size, by integer programming."""
    spec = mp.ModelSpec(name="stable-set-number", sense="max")
    for v in range(g.n):
        spec.add_variable(f"x{v}", lb=0, ub=1, integer=True, obj=1.0)
    for (u, v) in g.edges:
        spec.add_constraint({u: 1.0, v: 1.0}, mp.LE, 1.0)
    return int(round(mp.solve_mip(spec).objective))


def total_matching_number(g: Graph) -> int:
    """nu_T(G): maximum total matching size."""
    val, _ = mwtmp_exact(g, WeightVector.unit(g))
    return int(round(val))
