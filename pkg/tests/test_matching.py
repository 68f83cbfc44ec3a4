import random
from fractions import Fraction

import pytest

import totmatch as t
from totmatch import Element, ElementSet, Graph, TotalMatching, WeightVector
from totmatch.errors import InvalidElementError, SizeLimitError

from conftest import (
    naive_max_weight,
    naive_maximal_total_matchings,
    small_random_graphs,
)


def eset(g, vertices=(), edges=()):
    els = [Element.vertex(v) for v in vertices] + [Element.edge(e) for e in edges]
    return ElementSet.from_elements(g, els)


class TestRecognition:
    def test_c5_examples(self, c5):
        assert t.is_total_matching(c5, eset(c5, [0], [2]))  # v0 + edge {2,3}
        assert not t.is_total_matching(c5, eset(c5, [0], [0]))  # v0 + edge {0,1}

    def test_k5_figure_example(self):
        k5 = t.named_graph("complete(5)")
        s = eset(k5, [4], [k5.edge_index[(0, 1)], k5.edge_index[(2, 3)]])
        assert t.is_total_matching(k5, s)

    def test_size_mismatch(self, c5):
        other = t.named_graph("cycle(4)")
        with pytest.raises(InvalidElementError):
            t.is_total_matching(c5, eset(other, [0]))

    def test_total_matching_type_validates(self, c5):
        with pytest.raises(InvalidElementError):
            TotalMatching(c5, eset(c5, [0, 1]))


class TestMwtmpExact:
    def test_c5_unit(self, c5):
        val, tm = t.mwtmp_exact(c5, WeightVector.unit(c5))
        assert val == pytest.approx(3.0, abs=1e-6)
        assert len(tm) == 3

    def test_k12_unit(self):
        k12 = t.named_graph("complete(12)")
        val, _ = t.mwtmp_exact(k12, WeightVector.unit(k12))
        assert val == pytest.approx(6.0, abs=1e-6)

    def test_zero_weights(self, c5):
        w = WeightVector(c5, [0] * 5, [0] * 5)
        val, _ = t.mwtmp_exact(c5, w)
        assert val == pytest.approx(0.0, abs=1e-9)


class TestBruteForce:
    def test_small_examples(self):
        p3 = Graph(3, [(0, 1), (1, 2)])
        assert t.mwtmp_bruteforce(p3, WeightVector.unit(p3))[0] == 2
        k3 = t.named_graph("complete(3)")
        assert t.mwtmp_bruteforce(k3, WeightVector.unit(k3))[0] == 2
        k1 = t.named_graph("complete(1)")
        assert t.mwtmp_bruteforce(k1, WeightVector.unit(k1))[0] == 1

    def test_size_cap(self):
        g = t.random_gnp(20, 0.3, seed=1)
        with pytest.raises(SizeLimitError):
            t.mwtmp_bruteforce(g, WeightVector.unit(g))

    def test_agrees_with_naive_oracle(self):
        for g in small_random_graphs(6, 5, seed_base=100):
            weights = [Fraction(k % 5 + 1, 3) for k in range(g.num_elements)]
            w = WeightVector(g, weights[: g.n], weights[g.n:])
            val, tm = t.mwtmp_bruteforce(g, w)
            assert val == naive_max_weight(g, weights)
            assert w.weight_of_mask(tm.mask) == val

    def test_exact_matches_bruteforce_sample(self):
        rng = random.Random(5)
        for g in small_random_graphs(12, 6, seed_base=200):
            for trial in range(3):
                if trial == 0:
                    w = WeightVector.unit(g)
                else:
                    w = WeightVector(
                        g,
                        [Fraction(rng.randint(0, 6), 3) for _ in range(g.n)],
                        [Fraction(rng.randint(0, 6), 3) for _ in range(g.m)],
                    )
                exact, _ = t.mwtmp_exact(g, w)
                brute, _ = t.mwtmp_bruteforce(g, w)
                assert exact == pytest.approx(float(brute), abs=1e-6)


class TestClosedForms:
    @pytest.mark.parametrize("k", range(3, 8))
    def test_cycles(self, k):
        g = t.named_graph(f"cycle({k})")
        assert t.total_matching_number(g) == (2 * k) // 3

    @pytest.mark.parametrize("h", range(2, 7))
    def test_cliques(self, h):
        g = t.named_graph(f"complete({h})")
        assert t.total_matching_number(g) == (h + 1) // 2


class TestPerfectTotalMatching:
    def test_c4_perfect_matching(self):
        c4 = t.named_graph("cycle(4)")
        tm = t.perfect_total_matching(c4)
        assert len(tm) == 2 and not tm.vertices()
        assert tm.covers_all_vertices()

    def test_k3_edge_plus_vertex(self):
        k3 = t.named_graph("complete(3)")
        tm = t.perfect_total_matching(k3)
        assert len(tm.edge_ids()) == 1 and len(tm.vertices()) == 1
        assert tm.covers_all_vertices()

    def test_star_leaves(self):
        g = t.named_graph("star(4)")
        tm = t.perfect_total_matching(g)
        assert len(tm.edge_ids()) == 1 and len(tm.vertices()) == 3
        assert tm.covers_all_vertices()

    def test_property_on_randoms(self):
        for g in small_random_graphs(10, 7, seed_base=300):
            tm = t.perfect_total_matching(g)
            assert t.is_total_matching(g, tm.elements)
            assert tm.covers_all_vertices()


class TestGreedyAndMaximal:
    def test_c5_default_order(self, c5):
        tm = t.greedy_maximal(c5)
        assert tm.vertices() == [0, 2] and tm.edge_ids() == [3]

    def test_maximal_is_fixpoint(self):
        for g in small_random_graphs(6, 6, seed_base=400):
            tm = t.greedy_maximal(g)
            assert t.extend_to_maximal(g, tm) == tm

    def test_k4_from_v0(self):
        k4 = t.named_graph("complete(4)")
        start = TotalMatching(k4, eset(k4, [0]))
        tm = t.extend_to_maximal(k4, start)
        assert tm.vertices() == [0]
        [e] = tm.edge_ids()
        assert 0 not in k4.endpoints(e)

    def test_custom_order(self, c5):
        backwards = list(range(c5.num_elements))[::-1]
        tm = t.greedy_maximal(c5, order=backwards)
        assert t.is_total_matching(c5, tm.elements)
        assert t.extend_to_maximal(c5, tm) == tm


class TestEnumerateMaximal:
    def test_counts(self):
        k3 = t.named_graph("complete(3)")
        assert len(t.enumerate_maximal_total_matchings(k3)) == 3
        k2 = t.named_graph("complete(2)")
        tms = t.enumerate_maximal_total_matchings(k2)
        assert len(tms) == 3  # {u}, {v}, {e}: all three singletons
        assert all(len(tm) == 1 for tm in tms)
        k1 = t.named_graph("complete(1)")
        tms = t.enumerate_maximal_total_matchings(k1)
        assert len(tms) == 1 and tms[0].vertices() == [0]

    def test_matches_naive(self):
        for g in small_random_graphs(6, 5, seed_base=500):
            got = {
                frozenset(
                    tm.vertices() + [g.n + e for e in tm.edge_ids()]
                )
                for tm in t.enumerate_maximal_total_matchings(g)
            }
            assert got == set(naive_maximal_total_matchings(g))

    def test_size_cap(self):
        g = t.random_gnp(18, 0.3, seed=2)
        with pytest.raises(SizeLimitError):
            t.enumerate_maximal_total_matchings(g)


class TestBasicLP:
    def test_c5_third_point(self, c5):
        assert t.basic_lp_bound(c5, WeightVector.unit(c5)) == pytest.approx(
            10.0 / 3.0, abs=1e-6
        )

    def test_relaxation_dominates(self):
        for g in small_random_graphs(6, 6, seed_base=600):
            w = WeightVector.unit(g)
            lp = t.basic_lp_bound(g, w)
            ip, _ = t.mwtmp_exact(g, w)
            assert lp >= ip - 1e-6

    def test_solution_point_in_box(self, c5):
        val, point = t.basic_lp_solution(c5, WeightVector.unit(c5))
        assert len(point) == 10
        assert all(-1e-9 <= x <= 1 + 1e-9 for x in point)


class TestWeightFiles:
    def test_defaults_and_parsing(self, tmp_path, c5):
        path = tmp_path / "w.txt"
        path.write_text("# comment\nv 0 2/3\ne 4 5\n")
        w = t.load_weights(str(path), c5)
        assert w.vertex[0] == Fraction(2, 3)
        assert w.vertex[1] == 1 and w.edge[0] == 1
        assert w.edge[4] == 5

    def test_bad_lines(self, tmp_path, c5):
        path = tmp_path / "w.txt"
        path.write_text("x 0 1\n")
        with pytest.raises(InvalidElementError):
            t.load_weights(str(path), c5)
        path.write_text("v 9 1\n")
        with pytest.raises(InvalidElementError):
            t.load_weights(str(path), c5)
