"""Exact separation of vertex-clique, congruent-2k3 cycle, and even-clique
inequalities against a fractional point over the elements of a graph.

The cycle family has two routes: an exact MIP built on a single-source
flow model (authoritative), and a shortest-path heuristic on a layered
3-copy digraph that is fast but optimizes a shifted cost, so it is used
as a first attempt with the MIP as fallback. Both only ever emit cuts
whose actual violation exceeds the threshold.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidParameterError, InvalidPointError, SolverError
from .graph import Graph
from . import mp

VIOLATION_TOL = 1e-6

VERTEX_CLIQUE = "vertex-clique"
CYCLE_2K3 = "cycle-2k3"
EVEN_CLIQUE = "even-clique"
ODD_CLIQUE = "odd-clique"

FAMILIES = (VERTEX_CLIQUE, CYCLE_2K3, EVEN_CLIQUE, ODD_CLIQUE)


def floor_2k3(k: int) -> int:
    return (2 * k) // 3


@dataclass(frozen=True)
class CutInequality:
    """0/1-coefficient valid inequality coeffs . z <= rhs over elements.

    The support determines the coefficients: 1 on support_vertices in the
    vertex block and on support_edges in the edge block, 0 elsewhere.
    """

    family: str
    rhs: int
    support_vertices: tuple
    support_edges: tuple
    n: int
    m: int

    def coeffs(self):
        c = [0] * (self.n + self.m)
        for v in self.support_vertices:
            c[v] = 1
        for e in self.support_edges:
            c[self.n + e] = 1
        return c

    def lhs(self, point):
        total = 0
        for v in self.support_vertices:
            total += point[v]
        for e in self.support_edges:
            total += point[self.n + e]
        return total

    def violation(self, point):
        return self.lhs(point) - self.rhs

    def support_size(self):
        return len(self.support_vertices) + len(self.support_edges)

    def sort_key(self, point):
        """Most violated first; ties to smaller then lexicographic support."""
        return (
            -self.violation(point),
            self.support_size(),
            self.support_vertices,
            self.support_edges,
        )

    def serialize(self) -> str:
        vs = " ".join(str(v) for v in self.support_vertices)
        es = " ".join(str(e) for e in self.support_edges)
        return f"{self.family} {self.rhs} [{vs} | {es}]"

    @classmethod
    def parse(cls, line: str, g: Graph) -> "CutInequality":
        head, _, bracket = line.partition("[")
        parts = head.split()
        if len(parts) != 2 or parts[0] not in FAMILIES or not bracket.endswith("]"):
            raise InvalidParameterError(f"bad cut line {line!r}")
        vs_part, _, es_part = bracket[:-1].partition("|")
        vs = tuple(sorted(int(t) for t in vs_part.split()))
        es = tuple(sorted(int(t) for t in es_part.split()))
        return cls(parts[0], int(parts[1]), vs, es, g.n, g.m)


def _clique_cut(g: Graph, vertices) -> CutInequality:
    vs = tuple(sorted(vertices))
    return CutInequality(VERTEX_CLIQUE, 1, vs, (), g.n, g.m)


def _cycle_cut(g: Graph, vertices, edges) -> CutInequality:
    k = len(vertices)
    return CutInequality(
        CYCLE_2K3, floor_2k3(k), tuple(sorted(vertices)), tuple(sorted(edges)), g.n, g.m
    )


def _internal_edges(g: Graph, vertices):
    vs = set(vertices)
    return tuple(
        e for e, (u, v) in enumerate(g.edges) if u in vs and v in vs
    )


def odd_clique_cut(g: Graph, clique_vertices) -> CutInequality:
    """Constructor for the odd-clique inequality (valid, never separated):
    sum over the clique's vertices and internal edges <= (h+1)/2."""
    vs = sorted(set(clique_vertices))
    h = len(vs)
    if h % 2 == 0:
        raise InvalidParameterError("odd_clique_cut needs a clique of odd order")
    for i, u in enumerate(vs):
        for v in vs[i + 1:]:
            if not g.has_edge(u, v):
                raise InvalidParameterError(f"vertices {u},{v} not adjacent: not a clique")
    return CutInequality(
        ODD_CLIQUE, (h + 1) // 2, tuple(vs), _internal_edges(g, vs), g.n, g.m
    )


def even_clique_cut(g: Graph, clique_vertices) -> CutInequality:
    vs = sorted(set(clique_vertices))
    h = len(vs)
    if h % 2:
        raise InvalidParameterError("even_clique_cut needs a clique of even order")
    for i, u in enumerate(vs):
        for v in vs[i + 1:]:
            if not g.has_edge(u, v):
                raise InvalidParameterError(f"vertices {u},{v} not adjacent: not a clique")
    return CutInequality(
        EVEN_CLIQUE, h // 2, tuple(vs), _internal_edges(g, vs), g.n, g.m
    )


# ---------------------------------------------------------------------------
# Vertex-clique separation


def separate_vertex_clique(g: Graph, point, tol=VIOLATION_TOL):
    """Most violated clique inequality sum_{v in K} x_v <= 1, if any.

    Maximizes the point's vertex weight over cliques by MIP (pairwise
    exclusion on non-edges), then posts the greedily maximalized clique.
    """
    if g.n == 0:
        return None
    spec = mp.ModelSpec(name="clique-sep", sense="max")
    for v in range(g.n):
        spec.add_variable(f"x{v}", lb=0, ub=1, integer=True, obj=float(point[v]))
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if not g.has_edge(u, v):
                spec.add_constraint({u: 1.0, v: 1.0}, mp.LE, 1.0)
    sol = mp.solve_mip(spec)
    if sol.objective <= 1.0 + tol:
        return None
    clique = [v for v in range(g.n) if sol.x[v] > 0.5]
    members = set(clique)
    for v in range(g.n):  # maximalize, lowest id first
        if v not in members and all(g.has_edge(v, u) for u in members):
            members.add(v)
    return _clique_cut(g, members)


# ---------------------------------------------------------------------------
# Congruent-2k3 cycle separation, exact MIP route


def separate_cycle_mip(g: Graph, point, tol=VIOLATION_TOL):
    """Most violated congruent-2k3 cycle inequality by the flow MIP.

    Selects a simple cycle of length k with k mod 3 in {1, 2} maximizing
    (point weight of the cycle) - floor(2k/3), written as 2z + t - 1 with
    k = 3z + t, t in {1, 2}. Degree-2 rows force a union of cycles and a
    single-source flow with big-M = n forces one connected cycle.
    """
    n, m = g.n, g.m
    if m == 0:
        return None
    arcs = []
    for e, (u, v) in enumerate(g.edges):
        arcs.append((u, v, e))
        arcs.append((v, u, e))
    spec = mp.ModelSpec(name="cycle-sep", sense="max")
    xs = [spec.add_variable(f"x{v}", 0, 1, True, obj=float(point[v])) for v in range(n)]
    ys = [
        spec.add_variable(f"y{e}", 0, 1, True, obj=float(point[n + e]))
        for e in range(m)
    ]
    fs = [spec.add_variable(f"f{a}", 0, None, False) for a in range(len(arcs))]
    ss = [spec.add_variable(f"s{v}", 0, 1, True) for v in range(n)]
    us = [spec.add_variable(f"u{v}", 0, n, True) for v in range(n)]
    z = spec.add_variable("z", 0, n // 3 + 1, True, obj=-2.0)
    t = spec.add_variable("t", 1, 2, True, obj=-1.0)
    for v in range(n):
        coeffs = {ys[e]: 1.0 for e in g.incident[v]}
        coeffs[xs[v]] = -2.0
        spec.add_constraint(coeffs, mp.EQ, 0.0, name=f"deg{v}")
    card = {xs[v]: 1.0 for v in range(n)}
    card[z] = -3.0
    card[t] = -1.0
    spec.add_constraint(card, mp.EQ, 0.0, name="card")
    out_arcs = [[] for _ in range(n)]
    in_arcs = [[] for _ in range(n)]
    for a, (i, j, _e) in enumerate(arcs):
        out_arcs[i].append(a)
        in_arcs[j].append(a)
    for i in range(n):
        coeffs = {xs[i]: 1.0, us[i]: -1.0}
        for a in out_arcs[i]:
            coeffs[fs[a]] = coeffs.get(fs[a], 0.0) + 1.0
        for a in in_arcs[i]:
            coeffs[fs[a]] = coeffs.get(fs[a], 0.0) - 1.0
        spec.add_constraint(coeffs, mp.EQ, 0.0, name=f"flow{i}")
    spec.add_constraint({ss[i]: 1.0 for i in range(n)}, mp.EQ, 1.0, name="source")
    for i in range(n):
        spec.add_constraint({us[i]: 1.0, ss[i]: -float(n)}, mp.LE, 0.0)
    for a, (_i, _j, e) in enumerate(arcs):
        spec.add_constraint({fs[a]: 1.0, ys[e]: -float(n)}, mp.LE, 0.0)
    sol = mp.solve_mip(spec)
    if sol.status == mp.INFEASIBLE:
        return None  # no cycle of length != 0 mod 3 exists at all
    if sol.status != mp.OPTIMAL:
        raise SolverError(f"cycle separation ended with status {sol.status}")
    violation = sol.objective + 1.0  # objective carries -(2z + t) and misses the +1
    if violation <= tol:
        return None
    vertices = [v for v in range(n) if sol.x[xs[v]] > 0.5]
    edges = [e for e in range(m) if sol.x[ys[e]] > 0.5]
    cut = _cycle_cut(g, vertices, edges)
    _check_cycle_support(g, cut)
    return cut


def _check_cycle_support(g: Graph, cut: CutInequality):
    vs, es = set(cut.support_vertices), list(cut.support_edges)
    k = len(vs)
    if k % 3 == 0 or len(es) != k or k < 4:
        raise SolverError(f"cycle support is not a congruent cycle: {cut.serialize()}")
    deg = {v: 0 for v in vs}
    for e in es:
        u, v = g.endpoints(e)
        if u not in vs or v not in vs:
            raise SolverError("cycle support edge leaves the vertex set")
        deg[u] += 1
        deg[v] += 1
    if any(d != 2 for d in deg.values()):
        raise SolverError("cycle support is not 2-regular")
    # connectivity: walk from any vertex along support edges
    inc = {v: [] for v in vs}
    for e in es:
        u, v = g.endpoints(e)
        inc[u].append(v)
        inc[v].append(u)
    start = next(iter(vs))
    seen = {start}
    stack = [start]
    while stack:
        for w in inc[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if seen != vs:
        raise SolverError("cycle support is disconnected")


# ---------------------------------------------------------------------------
# Congruent-2k3 cycle separation, shortest-path route


def _sp_candidates(g: Graph, point, tol):
    """Ranked violated simple-cycle candidates from the 2n shortest-path runs.

    Layered digraph: three copies v_0, v_1, v_2 per vertex; each edge
    {u, v} contributes arcs (u_i, v_{i+1 mod 3}) in both directions with
    cost 2/3 - point[u] - point[edge] + 1 (tail vertex + edge). A path
    v_0 -> v_c closes a walk of length k = c mod 3, and candidates must
    satisfy l(P) - |P| < 2/3 (class 1) or < 4/3 (class 2) before the
    actual violation is checked. Because a path never reuses the edge it
    just arrived on, the search state is (copy node, incoming edge); the
    projection can still revisit vertices, and such walks are discarded.
    """
    n, m = g.n, g.m
    if m == 0:
        return []
    arc_cost = [0.0] * (2 * m)  # 2e = u->v direction, 2e+1 = v->u
    for e, (u, v) in enumerate(g.edges):
        cost_u = 2.0 / 3.0 - float(point[u]) - float(point[n + e]) + 1.0
        cost_v = 2.0 / 3.0 - float(point[v]) - float(point[n + e]) + 1.0
        if cost_u < -1e-9 or cost_v < -1e-9:
            raise InvalidPointError(
                "negative arc cost: point is not feasible for the basic system"
            )
        arc_cost[2 * e] = max(cost_u, 0.0)
        arc_cost[2 * e + 1] = max(cost_v, 0.0)
    candidates = {}
    for v in range(n):
        best = _sp_from_source(g, v, arc_cost)
        for cls, threshold in ((1, 2.0 / 3.0), (2, 4.0 / 3.0)):
            found = best.get(cls)
            if found is None:
                continue
            d, path_vertices, path_edges = found
            k = len(path_edges)
            if d - k >= threshold + 1e-9:
                continue
            if len(set(path_vertices)) != k or len(set(path_edges)) != k or k < 4:
                continue  # projection is not a simple cycle
            cut = _cycle_cut(g, path_vertices, path_edges)
            viol = cut.violation(point)
            if viol > tol:
                candidates[(cut.support_vertices, cut.support_edges)] = cut
    return sorted(candidates.values(), key=lambda c: c.sort_key(point))


def _sp_from_source(g, v, arc_cost):
    """Shortest walks v_0 -> v_1 and v_0 -> v_2 in the layered graph,
    never reusing the edge just traversed. Returns {class: (dist,
    projected vertex list, edge list)} for the classes reached."""
    n = g.n
    # state: (vertex, copy 0..2, incoming edge id; -1 at the source)
    dist = {(v, 0, -1): 0.0}
    pred = {}
    pq = [(0.0, v, 0, -1)]
    best = {}
    settled_target = {1: None, 2: None}
    while pq:
        d, node, copy, in_edge = heapq.heappop(pq)
        state = (node, copy, in_edge)
        if d > dist.get(state, float("inf")) + 1e-15:
            continue
        if node == v and copy in (1, 2) and settled_target[copy] is None:
            settled_target[copy] = state
            if settled_target[1] is not None and settled_target[2] is not None:
                break
        for e in g.incident[node]:
            if e == in_edge:
                continue
            a, b = g.edges[e]
            nxt = b if node == a else a
            cost = arc_cost[2 * e] if node == a else arc_cost[2 * e + 1]
            nstate = (nxt, (copy + 1) % 3, e)
            nd = d + cost
            if nd < dist.get(nstate, float("inf")) - 1e-15:
                dist[nstate] = nd
                pred[nstate] = state
                heapq.heappush(pq, (nd, nxt, (copy + 1) % 3, e))
    source = (v, 0, -1)
    for cls in (1, 2):
        state = settled_target[cls]
        if state is None:
            continue
        vertices, edges = [], []
        cur = state
        while cur != source:
            prv = pred.get(cur)
            if prv is None:
                break
            vertices.append(cur[0])
            edges.append(cur[2])
            cur = prv
        if cur == source:
            best[cls] = (dist[state], vertices, edges)
    return best



def separate_cycle_sp(g: Graph, point, tol=VIOLATION_TOL):
    """Shortest-path heuristic for the cycle family.

    Runs the 2n shortest-path searches and returns the most violated
    simple cycle found (ties to smaller then lexicographic support), or
    None. Only actually-violated cycles are emitted, so a None from the
    exact MIP implies a None here.
    """
    cands = _sp_candidates(g, point, tol)
    return cands[0] if cands else None


def separate_cycle_sp_candidates(g: Graph, point, tol=VIOLATION_TOL, limit=None):
    """All distinct violated candidates from the SP route, ranked."""
    cands = _sp_candidates(g, point, tol)
    return cands if limit is None else cands[:limit]


# ---------------------------------------------------------------------------
# Even-clique separation


def separate_even_clique(g: Graph, point, tol=VIOLATION_TOL):
    """Most violated even-clique inequality via the edge-weighted clique MIP.

    Chooses a clique (non-edge exclusion rows), forces even order 2z, and
    links y_e = x_u * x_v through the standard 3-row linearization; the
    objective point-weight minus z is the violation.
    """
    n, m = g.n, g.m
    if n == 0:
        return None
    spec = mp.ModelSpec(name="even-clique-sep", sense="max")
    xs = [spec.add_variable(f"x{v}", 0, 1, True, obj=float(point[v])) for v in range(n)]
    ys = [
        spec.add_variable(f"y{e}", 0, 1, True, obj=float(point[n + e]))
        for e in range(m)
    ]
    z = spec.add_variable("z", 0, n // 2, True, obj=-1.0)
    for u in range(n):
        for v in range(u + 1, n):
            if not g.has_edge(u, v):
                spec.add_constraint({xs[u]: 1.0, xs[v]: 1.0}, mp.LE, 1.0)
    card = {xs[v]: 1.0 for v in range(n)}
    card[z] = -2.0
    spec.add_constraint(card, mp.EQ, 0.0, name="even-card")
    for e, (u, v) in enumerate(g.edges):
        spec.add_constraint({ys[e]: 1.0, xs[u]: -1.0}, mp.LE, 0.0)
        spec.add_constraint({ys[e]: 1.0, xs[v]: -1.0}, mp.LE, 0.0)
        spec.add_constraint({xs[u]: 1.0, xs[v]: 1.0, ys[e]: -1.0}, mp.LE, 1.0)
    sol = mp.solve_mip(spec)
    if sol.objective <= tol:
        return None
    vertices = [v for v in range(n) if sol.x[xs[v]] > 0.5]
    return even_clique_cut(g, vertices)
