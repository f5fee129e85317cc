import collections
import itertools

import pytest

import schemelab as sl
from schemelab.ratmat import RationalMatrix

from conftest import PETERSEN_EDGES


def bfs_distances(neighbor_sets, start):
    dist = {start: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for y in neighbor_sets[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        frontier = nxt
    return dist


class TestPetersenGraph:
    def test_edge_set_matches_oracle(self):
        g = sl.petersen_graph()
        built = sorted((g.labels[a], g.labels[b]) for a, b in g.edges)
        oracle = sorted(tuple(sorted(e)) for e in PETERSEN_EDGES)
        assert built == oracle

    def test_label_order(self):
        g = sl.petersen_graph()
        assert g.labels == ("0", "1", "2", "3", "4",
                            "0'", "1'", "2'", "3'", "4'")

    def test_adjacency_matrix(self, petersen):
        g = sl.petersen_graph()
        adj = g.adjacency()
        assert adj.is_symmetric()
        assert all(sum(row) == 3 for row in adj.rows)
        assert adj == petersen.relations[1]


class TestVerifyAxioms:
    def test_complete_graph_scheme(self):
        i4 = RationalMatrix.identity(4)
        rest = RationalMatrix.ones(4) - i4
        report = sl.verify_axioms([i4, rest])
        assert report.ok
        assert report.scheme.d == 1
        assert report.scheme.valencies == (1, 3)

    def test_petersen_distance_matrices(self, petersen):
        # rebuild distance matrices from scratch by BFS and compare schemes
        g = sl.petersen_graph()
        mats = []
        for i in range(3):
            rows = []
            for x in range(10):
                dist = bfs_distances(g.neighbor_sets, x)
                rows.append([int(dist[y] == i) for y in range(10)])
            mats.append(RationalMatrix(rows))
        report = sl.verify_axioms(mats, labels=g.labels)
        assert report.ok and report.scheme.d == 2
        assert report.scheme == petersen

    def test_non_binary_fails_axiom_2(self):
        i4 = RationalMatrix.identity(4)
        bad = RationalMatrix.ones(4) - 2 * i4
        report = sl.verify_axioms([i4, bad])
        assert not report.ok and report.axiom == 2

    def test_empty_relation_rejected(self):
        i4 = RationalMatrix.identity(4)
        report = sl.verify_axioms([i4, RationalMatrix.zeros(4),
                                   RationalMatrix.ones(4) - i4])
        assert not report.ok and report.axiom == 2
        assert "empty" in report.detail

    def test_wrong_identity_fails_axiom_1(self):
        j2 = RationalMatrix.ones(2)
        report = sl.verify_axioms([j2 - RationalMatrix.identity(2),
                                   RationalMatrix.identity(2)])
        assert not report.ok and report.axiom == 1

    def test_asymmetric_fails_axiom_3(self):
        i2 = RationalMatrix.identity(2)
        up = RationalMatrix([[0, 1], [0, 0]])
        low = RationalMatrix([[0, 0], [1, 0]])
        report = sl.verify_axioms([i2, up, low])
        assert not report.ok and report.axiom == 3

    def test_closure_failure_names_triple(self):
        # path 0-1-2: distance matrices of a non-distance-regular graph
        a0 = RationalMatrix.identity(3)
        a1 = RationalMatrix([[0, 1, 0], [1, 0, 1], [0, 1, 0]])
        a2 = RationalMatrix([[0, 0, 1], [0, 0, 0], [1, 0, 0]])
        report = sl.verify_axioms([a0, a1, a2])
        assert not report.ok and report.axiom == 4
        assert report.witness[:3] == (1, 1, 0)

    def test_mixed_dimensions_raise(self):
        with pytest.raises(sl.InputError):
            sl.verify_axioms([RationalMatrix.identity(2),
                              RationalMatrix.identity(3)])

    def test_non_square_raises(self):
        with pytest.raises(sl.InputError):
            sl.verify_axioms([RationalMatrix.ones(2, 3)])

    def test_label_count_mismatch(self):
        with pytest.raises(sl.InputError):
            sl.verify_axioms([RationalMatrix.identity(2)], labels=["a"])


class TestFromDistanceRegularGraph:
    def test_path_rejected(self):
        g = sl.LabeledGraph.from_edge_labels([("a", "b"), ("b", "c")])
        with pytest.raises(sl.NotDistanceRegularError) as err:
            sl.from_distance_regular_graph(g)
        assert err.value.triple is not None

    def test_disconnected_rejected(self):
        g = sl.LabeledGraph.from_edge_labels([("a", "b"), ("c", "d")])
        with pytest.raises(sl.InputError):
            sl.from_distance_regular_graph(g)

    def test_size_cap(self):
        g = sl.petersen_graph()
        with pytest.raises(sl.InputError):
            sl.from_distance_regular_graph(g, max_vertices=5)

    def test_k4(self, k4):
        assert (k4.v, k4.d) == (4, 1)
        assert k4.valencies == (1, 3)


class TestNamedSchemes:
    def test_petersen(self, petersen):
        assert (petersen.v, petersen.d) == (10, 2)
        assert petersen.valencies == (1, 3, 6)

    def test_hamming(self, hamming32):
        assert (hamming32.v, hamming32.d) == (8, 3)
        assert hamming32.valencies == (1, 3, 3, 1)

    def test_johnson(self, johnson42, johnson52):
        assert (johnson42.v, johnson42.d) == (6, 2)
        assert (johnson52.v, johnson52.d) == (10, 2)
        assert johnson52.valencies == (1, 6, 3)

    def test_cycle(self, cycle5):
        assert cycle5.valencies == (1, 2, 2)

    def test_bad_family(self):
        with pytest.raises(sl.InputError):
            sl.named_scheme("grassmann", 4, 2)

    def test_bad_params(self):
        with pytest.raises(sl.InputError):
            sl.named_scheme("hamming", 3)
        with pytest.raises(sl.InputError):
            sl.named_scheme("johnson", 4, 3)
        with pytest.raises(sl.InputError):
            sl.named_scheme("cycle", 2)
        with pytest.raises(sl.InputError):
            sl.named_scheme("hamming", 3, 1)

    def test_size_cap(self):
        with pytest.raises(sl.InputError):
            sl.named_scheme("hamming", 10, 2, max_vertices=512)


class TestSchemeStructure:
    def test_relations_partition_and_valencies(self, exact_catalog):
        for s in exact_catalog:
            total = s.relations[0]
            for a in s.relations[1:]:
                total = total + a
            assert total == RationalMatrix.ones(s.v)
            assert sum(s.valencies) == s.v
            for i, a in enumerate(s.relations):
                for row in a.rows:
                    assert sum(row) == s.valencies[i]

    def test_intersection_identity(self, exact_catalog):
        for s in exact_catalog:
            p = sl.intersection_numbers(s)
            for i in range(s.d + 1):
                for j in range(s.d + 1):
                    combo = RationalMatrix.zeros(s.v)
                    for k in range(s.d + 1):
                        combo = combo + p[i][j][k] * s.relations[k]
                    assert s.relations[i] @ s.relations[j] == combo

    def test_double_counting(self, exact_catalog):
        # v_k p_ij^k = v_i p_kj^i in a symmetric scheme
        for s in exact_catalog:
            for i, j, k in itertools.product(range(s.d + 1), repeat=3):
                assert s.valencies[k] * s.p(i, j, k) == \
                    s.valencies[i] * s.p(k, j, i)

    def test_specific_intersection_numbers(self, petersen, cycle5, exact_catalog):
        for s in exact_catalog:
            assert s.p(0, 0, 0) == 1
        assert petersen.p(1, 1, 1) == 0  # triangle-free
        assert cycle5.p(1, 1, 2) == 1

    def test_vertex_lookup(self, petersen):
        assert petersen.vertex("0'") == 5
        with pytest.raises(sl.InputError):
            petersen.vertex("nope")

    def test_relation_of_table(self, petersen):
        counts = collections.Counter(
            petersen.relation_of[0][y] for y in range(10))
        assert counts == {0: 1, 1: 3, 2: 6}
