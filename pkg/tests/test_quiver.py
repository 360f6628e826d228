"""Tests for quivers, monomial ideals and bound quivers."""

import pytest

from algebra.presentation import InfiniteDimensionError, build_algebra
from quiver.paths import AdmissibilityError, BoundQuiver, MonomialIdeal, Path, Quiver, QuiverError
from tests.builders import make_worked_bound_quiver


class TestQuiver:
    def test_labels_keep_numbering_when_arrows_descend(self):
        q = make_worked_bound_quiver().quiver
        assert q.labels == {1: 1, 2: 2, 3: 3, 4: 4}
        assert q.source_vertex == 4

    def test_topological_labels_for_named_vertices(self):
        q = Quiver(["top", "mid", "low"], [("s", "top", "mid"), ("t", "mid", "low")])
        assert q.label("low") == 1
        assert q.label("top") == 3
        assert q.by_label() == ["low", "mid", "top"]

    def test_oriented_cycle_rejected(self):
        with pytest.raises(QuiverError, match="oriented cycle"):
            Quiver([1, 2], [("s", 1, 2), ("t", 2, 1)])

    def test_duplicates_and_dangling_arrows(self):
        with pytest.raises(QuiverError):
            Quiver([1, 1], [])
        with pytest.raises(QuiverError):
            Quiver([1, 2], [("s", 2, 1), ("s", 2, 1)])
        with pytest.raises(QuiverError):
            Quiver([1, 2], [("s", 3, 1)])

    def test_written_form_composes_right_to_left(self):
        q = make_worked_bound_quiver().quiver
        p = q.parse_path("a.b2.g")
        assert p.arrows == ("g", "b2", "a")
        assert (p.source, p.target) == (4, 1)
        assert p.written() == "a.b2.g"

    def test_non_composable_path(self):
        q = make_worked_bound_quiver().quiver
        with pytest.raises(QuiverError):
            q.parse_path("g.a")

    def test_longest_incoming(self):
        q = make_worked_bound_quiver().quiver
        assert q.longest_incoming(4) == 0
        assert q.longest_incoming(2) == 2
        assert q.longest_incoming(1) == 3

    def test_longest_incoming_ignores_shortcuts(self):
        q = Quiver([1, 2, 3, 4], [("d", 4, 1), ("s", 4, 3), ("t", 3, 2), ("u1", 2, 1), ("u2", 2, 1)])
        assert q.longest_incoming(1) == 3
        assert q.longest_incoming(3) == 1

    def test_graph_keeps_parallel_arrows(self):
        q = make_worked_bound_quiver().quiver
        assert q.graph.number_of_edges() == 4
        assert q.graph.number_of_edges(3, 2) == 2

    def test_loop_is_an_oriented_cycle(self):
        with pytest.raises(QuiverError, match="oriented cycle"):
            Quiver(["a"], [("x", "a", "a")])
        assert Quiver(["a"], [("x", "a", "a")], acyclic=False).labels == {}

    def test_label_ties_follow_input_order(self):
        q = Quiver(["b", "a", "c"], [("s", "c", "a")])
        assert q.labels == {"b": 1, "a": 2, "c": 3}
        assert q.source_vertex == "c"


class TestMonomialIdeal:
    def test_short_relation_rejected(self):
        q = Quiver([1, 2], [("b", 2, 1)])
        with pytest.raises(AdmissibilityError):
            MonomialIdeal.from_written(q, ["b"])

    def test_non_minimal_relations_rejected(self):
        q = make_worked_bound_quiver().quiver
        with pytest.raises(AdmissibilityError, match="not minimal"):
            MonomialIdeal.from_written(q, ["b1.g", "a.b1.g"])

    def test_membership_by_subpath(self):
        bq = make_worked_bound_quiver()
        q = bq.quiver
        assert bq.in_ideal(q.parse_path("a.b1.g"))
        assert not bq.in_ideal(q.parse_path("a.b1"))

    def test_loop_without_nilpotent_relation_is_infinite(self):
        q = Quiver(["a"], [("x", "a", "a")], acyclic=False)
        with pytest.raises(InfiniteDimensionError):
            build_algebra(q)

    def test_bound_quiver_needs_acyclic_quiver(self):
        q = Quiver(["a"], [("x", "a", "a")], acyclic=False)
        with pytest.raises(QuiverError):
            BoundQuiver(q, MonomialIdeal.from_written(q, ["x.x"]))


class TestBoundQuiver:
    def setup_method(self):
        self.bq = make_worked_bound_quiver()
        self.q = self.bq.quiver

    def test_nonzero_paths(self):
        written = [p.written() for p in self.bq.nonzero_paths]
        assert len(written) == 11
        assert "b2.g" in written and "a.b1" in written and "a.b2" in written
        assert "b1.g" not in written and "a.b2.g" not in written

    def test_nonzero_from_source(self):
        targets = sorted(p.target for p in self.bq.nonzero_from(4))
        # e4, g and b2.g
        assert targets == [2, 3, 4]

    def test_k_set(self):
        assert [p.written() for p in self.bq.k_set(self.q.parse_path("a"))] == ["b2.g"]
        assert [p.written() for p in self.bq.k_set(self.q.parse_path("b1"))] == ["g"]
        assert self.bq.k_set(self.q.parse_path("g")) == []

    def test_k_set_rejects_zero_paths(self):
        with pytest.raises(QuiverError):
            self.bq.k_set(self.q.parse_path("b1.g"))
        with pytest.raises(QuiverError):
            self.bq.k_set(Path((), 2, 2))

    def test_b_sets(self):
        a = self.q.parse_path("a")
        assert self.bq.b_sets(a) == ([], ["b2"])
        assert self.bq.b_sets(self.q.parse_path("b1")) == (["g"], [])
        assert self.bq.b_sets(self.q.parse_path("b2")) == ([], [])

    def test_b_sets_over_all_paths(self):
        # a.b1.g is zero through b1.g, so b1 joins B2 once zero paths count
        a = self.q.parse_path("a")
        assert self.bq.b_sets(a, all_paths=True) == ([], ["b1", "b2"])

    def test_delete_source(self):
        sub, n = self.bq.delete_source()
        assert n == 4
        assert sub.quiver.vertices == (1, 2, 3)
        assert sub.ideal.generators == ()
        assert len(sub.nonzero_paths) == 3 + 3 + 2

    def test_paths_between(self):
        assert [p.written() for p in self.bq.paths_between(3, 1)] == ["a.b1", "a.b2"]
        with pytest.raises(QuiverError):
            self.bq.paths_between(2, 2)

    def test_opposite_reverses_relations(self):
        op = self.bq.opposite()
        assert len(op.nonzero_paths) == 11
        assert op.in_ideal(op.quiver.path(["b1", "g"]))
