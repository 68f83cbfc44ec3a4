"""Shared naive oracles, deliberately independent of the package's
bitmask/backtracking code paths: everything here works on raw edge lists
with itertools-style subset filtering."""

from itertools import combinations

import pytest

from totmatch import Graph, random_gnp


def naive_adjacent(g: Graph, i: int, j: int) -> bool:
    """Element adjacency recomputed from first principles; i, j are dense
    element indices (vertex block then edge block)."""
    if i == j:
        return False
    n = g.n

    def kind(idx):
        return ("v", idx) if idx < n else ("e", idx - n)

    (ka, a), (kb, b) = kind(i), kind(j)
    if ka == "v" and kb == "v":
        return (min(a, b), max(a, b)) in set(g.edges)
    if ka == "e" and kb == "e":
        return bool(set(g.edges[a]) & set(g.edges[b]))
    if ka == "v":
        return a in g.edges[b]
    return b in g.edges[a]


def naive_is_total_matching(g: Graph, subset) -> bool:
    return all(
        not naive_adjacent(g, i, j) for i, j in combinations(subset, 2)
    )


def naive_total_matchings(g: Graph):
    """Every total matching as a frozenset of element indices (2^(n+m) scan)."""
    ne = g.num_elements
    assert ne <= 18, "naive enumeration oracle is for tiny graphs"
    out = []
    for r in range(ne + 1):
        for subset in combinations(range(ne), r):
            if naive_is_total_matching(g, subset):
                out.append(frozenset(subset))
    return out


def naive_maximal_total_matchings(g: Graph):
    all_tm = naive_total_matchings(g)
    as_set = set(all_tm)
    out = []
    for tm in all_tm:
        extendable = any(
            (tm | {extra}) in as_set
            for extra in range(g.num_elements)
            if extra not in tm
        )
        if not extendable:
            out.append(tm)
    return out


def naive_max_weight(g: Graph, weights):
    """Max total weight over all total matchings; weights over elements."""
    return max(sum(weights[i] for i in tm) for tm in naive_total_matchings(g))


def naive_stable_set_count(g: Graph) -> int:
    """Number of independent vertex sets (all sizes), subset scan."""
    assert g.n <= 18
    edges = set(g.edges)
    count = 0
    for r in range(g.n + 1):
        for subset in combinations(range(g.n), r):
            if all((u, v) not in edges for u, v in combinations(subset, 2)):
                count += 1
    return count


def small_random_graphs(count, max_n, p_values=(0.3, 0.5), seed_base=0):
    graphs = []
    seed = seed_base
    while len(graphs) < count:
        for p in p_values:
            if len(graphs) >= count:
                break
            n = 3 + (seed % (max_n - 2))
            graphs.append(random_gnp(n, p, seed))
            seed += 1
    return graphs


@pytest.fixture
def c5():
    from totmatch import named_graph

    return named_graph("cycle(5)")
