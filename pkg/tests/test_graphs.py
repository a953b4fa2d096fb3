"""Tests for graphs: predicates, treks, canonical forms, enumeration."""

import itertools
import json
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lyapid.catalog import (
    complete_dag,
    fan_in_two_cycle,
    many_parents_two_cycle,
    three_cycle,
    two_cycle,
    two_cycle_out_edge,
    two_cycle_two_sinks,
    two_cycle_two_sources,
)
from lyapid.graphs import (
    DiGraph,
    EnumPolicy,
    canonical_form,
    enumerate_candidates,
    graph_from_json,
    graph_to_json,
    has_trek,
    is_dag,
    is_simple,
    necessary_criterion,
    no_trek_pairs,
    relabel,
    subgraph,
)


def _random_digraph(rng, p, density=0.3) -> DiGraph:
    edges = {
        (i, j)
        for i in range(1, p + 1)
        for j in range(1, p + 1)
        if i != j and rng.random() < density
    }
    return DiGraph(p, frozenset(edges))


class TestDiGraph:
    def test_self_loops_auto_inserted(self):
        g = DiGraph(3, frozenset({(1, 2)}))
        assert (1, 1) in g.edges and (2, 2) in g.edges and (3, 3) in g.edges
        assert g.num_edges == 4

    def test_edge_count_includes_self_loops(self):
        assert three_cycle().num_edges == 6

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            DiGraph(2, frozenset({(1, 3)}))

    def test_edge_index_is_vec_order(self):
        g = three_cycle()
        index = g.edge_index()
        assert index == sorted(index)
        # position (i-1)*p + (j-1) is increasing along the index
        positions = [(i - 1) * g.p + (j - 1) for (i, j) in index]
        assert positions == sorted(positions)

    def test_non_edges_complement(self):
        g = two_cycle_out_edge()
        assert set(g.non_edges()) == {(1, 3), (3, 1), (3, 2)}


class TestPredicates:
    def test_three_cycle_simple(self):
        assert is_simple(three_cycle())

    def test_two_cycle_not_simple(self):
        assert not is_simple(two_cycle())

    def test_self_loops_only_simple(self):
        assert is_simple(DiGraph(4))

    def test_complete_dag_is_dag(self):
        assert is_dag(complete_dag(3))

    def test_three_cycle_not_dag(self):
        assert not is_dag(three_cycle())

    def test_self_loops_only_dag(self):
        assert is_dag(DiGraph(3))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 5), st.data())
    def test_dag_implies_simple(self, p, data):
        edges = data.draw(
            st.sets(
                st.tuples(st.integers(1, p), st.integers(1, p)).filter(
                    lambda e: e[0] != e[1]
                ),
                max_size=p * (p - 1),
            )
        )
        g = DiGraph(p, frozenset(edges))
        if is_dag(g):
            assert is_simple(g)


class TestTreks:
    def test_fan_in_no_treks_to_outsider(self):
        g = fan_in_two_cycle()
        assert not has_trek(g, 2, 4)
        assert not has_trek(g, 3, 4)
        assert has_trek(g, 1, 4)

    def test_trivial_trek_to_self(self):
        g = DiGraph(3)
        for i in range(1, 4):
            assert has_trek(g, i, i)

    def test_two_sources_no_trek_between_sources(self):
        assert not has_trek(two_cycle_two_sources(), 1, 4)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 5), st.data())
    def test_symmetry(self, p, data):
        edges = data.draw(
            st.sets(
                st.tuples(st.integers(1, p), st.integers(1, p)).filter(
                    lambda e: e[0] != e[1]
                ),
                max_size=p * (p - 1),
            )
        )
        g = DiGraph(p, frozenset(edges))
        for i in range(1, p + 1):
            for j in range(1, p + 1):
                assert has_trek(g, i, j) == has_trek(g, j, i)

    def test_rooted_dag_all_pairs_trekked(self):
        rng = random.Random(7)
        for _ in range(20):
            p = rng.randint(2, 5)
            # every node > 1 gets a parent among lower-numbered nodes
            edges = {(rng.randint(1, j - 1), j) for j in range(2, p + 1)}
            g = DiGraph(p, frozenset(edges))
            assert is_dag(g)
            for i in range(1, p + 1):
                for j in range(1, p + 1):
                    assert has_trek(g, i, j)

    def test_no_trek_pair_counts(self):
        assert no_trek_pairs(fan_in_two_cycle()) == 2
        complete_simple = complete_dag(4)
        assert no_trek_pairs(complete_simple) == 0
        for p in (4, 5, 6):
            g = many_parents_two_cycle(p)
            assert no_trek_pairs(g) == math.comb(p - 1, 2) - 1

    def test_necessary_criterion_cases(self):
        # 2p+1 edges against a trek-adjusted bound of 2p
        for p in (4, 5, 6):
            assert not necessary_criterion(many_parents_two_cycle(p))
        # 10 edges, all pairs trek-connected: bound met with equality
        assert necessary_criterion(two_cycle_two_sinks())
        # 9 edges against a bound of 8
        assert not necessary_criterion(fan_in_two_cycle())
        assert not necessary_criterion(two_cycle_two_sources())


class TestCanonicalForm:
    def test_orbit_invariance(self):
        rng = random.Random(13)
        g = two_cycle_two_sinks()
        base = canonical_form(g)
        for _ in range(50):
            perm_values = list(range(1, 5))
            rng.shuffle(perm_values)
            perm = {i + 1: perm_values[i] for i in range(4)}
            assert canonical_form(relabel(g, perm)) == base

    def test_isomorphic_two_cycle_attachments(self):
        # 2-cycle {1,2} + 2->3 vs + 1->3: swapping nodes 1 and 2 maps one
        # onto the other, so the canonical forms agree.  Brute-force orbit
        # check as the independent oracle.
        g1 = DiGraph(3, frozenset({(1, 2), (2, 1), (2, 3)}))
        g2 = DiGraph(3, frozenset({(1, 2), (2, 1), (1, 3)}))
        orbit1 = {
            frozenset(
                (perm[i - 1], perm[j - 1]) for (i, j) in g1.offdiag_edges
            )
            for perm in itertools.permutations([1, 2, 3])
        }
        assert g2.offdiag_edges in orbit1
        assert canonical_form(g1) == canonical_form(g2)

    def test_non_isomorphic_attachments_differ(self):
        outgoing = DiGraph(3, frozenset({(1, 2), (2, 1), (2, 3)}))
        incoming = DiGraph(3, frozenset({(1, 2), (2, 1), (3, 2)}))
        assert canonical_form(outgoing) != canonical_form(incoming)

    def test_self_loops_only_fixed_point(self):
        g = DiGraph(4)
        assert canonical_form(g) == g

    def test_relabel_requires_bijection(self):
        with pytest.raises(ValueError):
            relabel(DiGraph(2), {1: 1, 2: 1})


class TestSubgraph:
    def test_remove_all_offdiagonal(self):
        g = three_cycle()
        loops = {(i, i) for i in range(1, 4)}
        assert subgraph(g, loops) == DiGraph(3)

    def test_removing_return_edge_gives_fan_in(self):
        g1 = DiGraph(
            4, frozenset({(2, 3), (3, 2), (2, 1), (3, 1), (4, 1), (1, 4)})
        )
        kept = g1.edges - {(1, 4)}
        assert subgraph(g1, kept) == fan_in_two_cycle()

    def test_idempotent_on_full_edge_set(self):
        g = two_cycle_out_edge()
        assert subgraph(g, g.edges) == g

    def test_rejects_self_loop_removal(self):
        g = DiGraph(2)
        with pytest.raises(ValueError):
            subgraph(g, {(1, 1)})

    def test_rejects_non_subset(self):
        with pytest.raises(ValueError):
            subgraph(DiGraph(2), {(1, 2), (1, 1), (2, 2)})


def _brute_force_classes(p, max_edges, connectivity):
    """Independent orbit enumeration oracle (tiny p only)."""
    pairs = [(i, j) for i in range(1, p + 1) for j in range(1, p + 1) if i != j]
    seen = set()
    classes = []
    for r in range(len(pairs) + 1):
        for combo in itertools.combinations(pairs, r):
            edges = frozenset(combo)
            g = DiGraph(p, edges)
            if g.num_edges > max_edges or is_simple(g):
                continue
            if connectivity == "weakly-connected":
                adj = {v: set() for v in range(1, p + 1)}
                for (i, j) in edges:
                    adj[i].add(j)
                    adj[j].add(i)
                stack, comp = [1], {1}
                while stack:
                    u = stack.pop()
                    for v in adj[u]:
                        if v not in comp:
                            comp.add(v)
                            stack.append(v)
                if len(comp) < p:
                    continue
            canon = canonical_form(g)
            if canon.edges not in seen:
                seen.add(canon.edges)
                classes.append(canon)
    return classes


class TestEnumeration:
    def test_p3_default_count(self):
        graphs = list(enumerate_candidates(3))
        assert len(graphs) == 2

    def test_p3_matches_brute_force(self):
        ours = {g.edges for g in enumerate_candidates(3)}
        oracle = {g.edges for g in _brute_force_classes(3, 6, "weakly-connected")}
        assert ours == oracle

    def test_p3_unrestricted_has_three_classes(self):
        graphs = list(
            enumerate_candidates(3, EnumPolicy(max_edges=6, connectivity="none"))
        )
        assert len(graphs) == 3
        oracle = {g.edges for g in _brute_force_classes(3, 6, "none")}
        assert {g.edges for g in graphs} == oracle

    def test_p4_default_count(self):
        assert sum(1 for _ in enumerate_candidates(4)) == 80

    def test_p4_no_isolated_count(self):
        # the other connectivity variant adds the two disconnected classes
        policy = EnumPolicy(connectivity="no-isolated-nodes")
        assert sum(1 for _ in enumerate_candidates(4, policy)) == 82

    def test_p4_matches_brute_force(self):
        ours = {g.edges for g in enumerate_candidates(4)}
        oracle = {g.edges for g in _brute_force_classes(4, 10, "weakly-connected")}
        assert ours == oracle

    def test_pairwise_non_isomorphic(self):
        graphs = list(enumerate_candidates(4))
        canons = {canonical_form(g).edges for g in graphs}
        assert len(canons) == len(graphs)

    def test_output_graphs_are_canonical(self):
        for g in enumerate_candidates(3, EnumPolicy(connectivity="none")):
            assert canonical_form(g) == g

    def test_every_candidate_nonsimple_and_bounded(self):
        for g in enumerate_candidates(4):
            assert not is_simple(g)
            assert g.num_edges <= 10

    def test_rejects_out_of_range_p(self):
        with pytest.raises(ValueError):
            list(enumerate_candidates(6))
        with pytest.raises(ValueError):
            list(enumerate_candidates(1))

    def test_p2_is_empty(self):
        # the only non-simple 2-node graph has 4 > 3 edges
        assert list(enumerate_candidates(2)) == []

    def test_simple_graphs_respect_dimension_bound(self):
        rng = random.Random(19)
        for _ in range(100):
            p = rng.randint(2, 5)
            g = _random_digraph(rng, p)
            if is_simple(g):
                assert g.num_edges <= p * (p + 1) // 2


class TestJsonFormat:
    def test_roundtrip(self):
        g = two_cycle_out_edge()
        assert graph_from_json(graph_to_json(g)) == g

    def test_self_loops_optional_on_input(self):
        g = graph_from_json({"p": 3, "edges": [[1, 2], [2, 1]]})
        assert g == two_cycle(3)

    def test_output_includes_self_loops(self):
        data = graph_to_json(DiGraph(2))
        assert [1, 1] in data["edges"] and [2, 2] in data["edges"]

    def test_parse_string(self):
        g = graph_from_json(json.dumps({"p": 2, "edges": [[1, 2]]}))
        assert (1, 2) in g.edges

    def test_reject_malformed(self):
        with pytest.raises(ValueError):
            graph_from_json({"edges": []})
        with pytest.raises(ValueError):
            graph_from_json({"p": 2, "edges": [[1]]})
        with pytest.raises(ValueError):
            graph_from_json({"p": 2, "edges": [[1, 5]]})
