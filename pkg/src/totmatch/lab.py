"""The facet battery: fixed witnesses for every polyhedral claim the
toolkit can verify at small scale, plus a few informational verdicts.

Each entry pins a graph, an inequality, and an expected verdict
("facet", "valid-not-facet", or None when the outcome is only recorded).
The battery is what `totmatch facets` runs and what the acceptance suite
asserts on.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, named_graph, random_gnp
from .polytope import (
    FacetCheck,
    check_inequality,
    edge_inequality,
    nonnegativity,
    polytope_dimension,
    star_inequality,
)
from .separation import CutInequality, even_clique_cut, odd_clique_cut, _cycle_cut
from . import separation


def _path(k):
    return Graph(k, [(i, i + 1) for i in range(k - 1)], name=f"path({k})")


def _vertex_clique_cut(g, vertices):
    return CutInequality(
        separation.VERTEX_CLIQUE, 1, tuple(sorted(vertices)), (), g.n, g.m
    )


def _full_cycle_cut(g):
    """Cycle cut whose support is the whole graph (for standalone C_k)."""
    return _cycle_cut(g, range(g.n), range(g.m))


def _triangle_host5():
    """Maximal K3 {0,1,2} inside a 5-vertex graph."""
    return Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)], name="k3-host5")


def _c4_host6():
    """Induced C4 on {0,1,2,3} inside a 6-vertex graph (no chords)."""
    return Graph(
        6, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (4, 5), (2, 5)], name="c4-host6"
    )


def _k4_host6():
    """K4 on {0,1,2,3} inside a 6-vertex graph."""
    k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    return Graph(6, k4 + [(0, 4), (4, 5)], name="k4-host6")


def dimension_graphs():
    """20 graphs with n+m <= 14 for the full-dimensionality check."""
    graphs = [
        named_graph("complete(1)"),
        named_graph("complete(2)"),
        named_graph("complete(3)"),
        named_graph("complete(4)"),
        _path(3),
        _path(4),
        _path(5),
        named_graph("cycle(4)"),
        named_graph("cycle(5)"),
        named_graph("cycle(6)"),
        named_graph("cycle(7)"),
        named_graph("star(3)"),
        named_graph("star(4)"),
        named_graph("star(5)"),
        named_graph("wheel(4)"),
        _triangle_host5(),
    ]
    for seed in range(4):
        graphs.append(random_gnp(5, 0.4, seed))
    assert len(graphs) == 20
    return graphs


@dataclass
class BatteryEntry:
    label: str
    graph: Graph
    inequality: object
    expect: str  # "facet", "valid-not-facet", or "" (informational)
    check: FacetCheck = None

    @property
    def passed(self):
        if self.expect == "facet":
            return self.check.is_facet
        if self.expect == "valid-not-facet":
            return self.check.valid and not self.check.is_facet
        return True


def battery_entries():
    entries = []

    def add(label, g, ineq, expect):
        entries.append(BatteryEntry(label, g, ineq, expect))

    # basic system rows: edge and nonnegativity rows are always facets;
    # the star row at a degree-1 vertex is dominated by the edge row of
    # its single edge (the other endpoint extends the star clique in the
    # total graph), so only deg != 1 star rows are facets
    for g in (named_graph("complete(3)"), named_graph("cycle(5)"), _path(4),
              named_graph("complete(4)"), named_graph("star(4)"),
              random_gnp(5, 0.5, 1)):
        for v in range(g.n):
            expect = "facet" if g.degree(v) != 1 else "valid-not-facet"
            add(f"{g.name}: star row at v{v}", g, star_inequality(g, v), expect)
        for e in range(g.m):
            add(f"{g.name}: edge row at e{e}", g, edge_inequality(g, e), "facet")
        for i in range(g.num_elements):
            add(f"{g.name}: nonneg z{i}", g, nonnegativity(g, i), "facet")

    # maximal vertex-clique inequalities: facets for order >= 3; an order-2
    # clique's inequality is the edge row plus -y_e <= 0, hence dominated
    host = _triangle_host5()
    add("k3-host5: clique {0,1,2}", host, _vertex_clique_cut(host, [0, 1, 2]), "facet")
    k4p = Graph(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4)],
                name="k4-pendant")
    add("k4-pendant: clique {0,1,2,3}", k4p, _vertex_clique_cut(k4p, range(4)),
        "facet")
    c5 = named_graph("cycle(5)")
    for (u, v) in c5.edges:
        add(f"cycle(5): clique edge {{{u},{v}}}", c5, _vertex_clique_cut(c5, [u, v]),
            "valid-not-facet")
    k5 = named_graph("complete(5)")
    add("complete(5): clique on all 5", k5, _vertex_clique_cut(k5, range(5)), "facet")
    # K4 inside K5 is not maximal, so its vertex-clique cut is dominated
    add("complete(5): clique on K4 subset", k5, _vertex_clique_cut(k5, range(4)),
        "valid-not-facet")

    # congruent cycle cuts: facet for k = 4, 5, 7, 8 on the cycle itself
    for k in (4, 5, 7, 8):
        g = named_graph(f"cycle({k})")
        add(f"cycle({k}): cycle cut rhs {2 * k // 3}", g, _full_cycle_cut(g), "facet")
    # k = 0 mod 3: no claim either way, verdict recorded only
    for k in (6, 9):
        g = named_graph(f"cycle({k})")
        add(f"cycle({k}): cycle cut (informational)", g, _full_cycle_cut(g), "")
    host = _c4_host6()
    add("c4-host6: embedded C4 cut", host,
        _cycle_cut(host, [0, 1, 2, 3], [0, 1, 2, 3]), "facet")

    # even-clique cuts
    k4 = named_graph("complete(4)")
    add("complete(4): even-clique rhs 2", k4, even_clique_cut(k4, range(4)), "facet")
    k6 = named_graph("complete(6)")
    add("complete(6): even-clique rhs 3", k6, even_clique_cut(k6, range(6)), "facet")
    host = _k4_host6()
    add("k4-host6: embedded even-clique K4", host,
        even_clique_cut(host, [0, 1, 2, 3]), "facet")
    add("complete(5): even-clique K4 subset", k5,
        even_clique_cut(k5, range(4)), "facet")

    # odd-clique: valid but dominated by the K6 even-clique extension
    add("complete(5): odd-clique rhs 3", k5, odd_clique_cut(k5, range(5)),
        "valid-not-facet")
    return entries


def run_battery():
    """Run every check; returns (entries, dimension results, all_passed)."""
    entries = battery_entries()
    for entry in entries:
        entry.check = check_inequality(entry.graph, entry.inequality)
    dims = []
    ok = all(e.passed for e in entries)
    for g in dimension_graphs():
        d = polytope_dimension(g)
        good = d == g.num_elements
        dims.append((g, d, good))
        ok = ok and good
    return entries, dims, ok
