"""Event clustering, fuzzy reinforcement, global concepts, and retrieval."""

import random

import pytest

from renforge import ClusterNet, InvalidParameterError, NotFoundError

FIG3_EVENTS = [("c0", "c1", "c2"), ("c1", "c2", "c3"), ("c2", "c3", "c4")]


class TestPresentEvent:
    def test_exact_repeat_reinforces(self):
        net = ClusterNet()
        first = net.present_event({"c1", "c2", "c3"})
        second = net.present_event({"c1", "c2", "c3"})
        assert first.created == 0
        assert second.created is None
        assert net.hidden[0].weight == 2.0

    def test_duplicate_labels_collapse(self):
        net = ClusterNet()
        net.present_event(["x", "x", "y"])
        assert net.hidden[0].inputs == frozenset({"x", "y"})

    def test_fuzzy_reinforces_nested_subset_only(self):
        net = ClusterNet()
        net.present_event({"c2", "c3"})
        net.present_event({"c1", "c5"})
        report = net.present_event({"c1", "c2", "c3"}, fuzzy=True)
        assert net.hidden[0].weight == 2.0   # contained in the presentation
        assert net.hidden[1].weight == 1.0   # c5 is outside it
        assert report.reinforced == (0,)
        assert report.created == 2

    def test_exact_mode_does_not_touch_subsets(self):
        net = ClusterNet()
        net.present_event({"c2", "c3"})
        net.present_event({"c1", "c2", "c3"})
        assert net.hidden[0].weight == 1.0

    def test_three_overlapping_events_form_one_global(self):
        net = ClusterNet()
        for event in FIG3_EVENTS:
            net.present_event(event)
        assert len(net.hidden) == 3
        assert len(net.global_concepts) == 1
        assert net.global_concepts[0].members == (0, 1, 2)

    def test_disjoint_events_form_separate_globals(self):
        net = ClusterNet()
        net.present_event({"a", "b"})
        net.present_event({"x", "y"})
        assert len(net.global_concepts) == 2

    def test_new_bases_recorded(self):
        net = ClusterNet()
        report = net.present_event({"b", "a"})
        assert report.new_bases == ("a", "b")
        assert net.present_event({"a", "c"}).new_bases == ("c",)

    def test_empty_event_rejected(self):
        with pytest.raises(InvalidParameterError):
            ClusterNet().present_event(set())

    def test_decay_lowers_untouched_nodes(self):
        net = ClusterNet(decay=0.25)
        net.present_event({"a"})
        net.present_event({"b"})
        assert net.hidden[0].weight == 0.75
        net.present_event({"a"})
        assert net.hidden[0].weight == 1.75
        assert net.hidden[1].weight == 0.75


class TestRetrieve:
    def test_recipe_query_returns_feature_sets(self):
        net = ClusterNet()
        for event in FIG3_EVENTS:
            net.present_event(event)
        assert net.retrieve(0) == [(frozenset(e), 1.0) for e in FIG3_EVENTS]

    def test_weight_orders_before_creation_order(self):
        net = ClusterNet()
        net.present_event({"a", "b"})
        net.present_event({"b", "c"})
        net.present_event({"b", "c"})
        assert net.retrieve(0) == [(frozenset({"b", "c"}), 2.0),
                                   (frozenset({"a", "b"}), 1.0)]

    def test_singleton_global(self):
        net = ClusterNet()
        net.present_event({"solo"})
        assert net.retrieve(0) == [(frozenset({"solo"}), 1.0)]

    def test_unknown_global(self):
        with pytest.raises(NotFoundError):
            ClusterNet().retrieve(3)

    def test_decayed_then_pruned_node_disappears(self):
        net = ClusterNet(decay=1.0)
        net.present_event({"x1", "x2"})
        net.present_event({"x2", "y"})     # first node decays to zero
        assert net.hidden[0].weight == 0.0
        assert net.prune(0.0) == [0]
        assert net.retrieve(0) == [(frozenset({"x2", "y"}), 1.0)]


class TestPrune:
    def test_nothing_above_threshold_removed(self):
        net = ClusterNet()
        net.present_event({"a"})
        assert net.prune(0.5) == []
        assert len(net.hidden) == 1

    def test_dead_node_removed_isolated_survivor_stays_grouped(self):
        net = ClusterNet()
        net.present_event({"c0", "c1"})
        net.present_event({"c1", "c2"})
        net.present_event({"c3", "c4"})
        net.hidden[2].weight = 0.0
        assert net.prune(0.0) == [2]
        assert len(net.global_concepts) == 1
        assert net.global_concepts[0].members == (0, 1)
        assert "c4" in net.base_concepts   # bases are retained

    def test_removing_bridge_splits_global(self):
        net = ClusterNet()
        net.present_event({"a", "b"})
        net.present_event({"b", "c"})
        net.present_event({"c", "d"})
        assert len(net.global_concepts) == 1
        net.hidden[1].weight = 0.0
        net.prune(0.0)
        assert len(net.global_concepts) == 2
        assert [g.members for g in net.global_concepts] == [(0,), (2,)]

    def test_negative_threshold_rejected(self):
        with pytest.raises(InvalidParameterError):
            ClusterNet().prune(-1)


def brute_force_components(net):
    """Oracle: repeated pairwise merging until the overlap closure is stable."""
    groups = [{hid} for hid in sorted(net.hidden)]
    changed = True
    while changed:
        changed = False
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                overlap = any(net.hidden[a].inputs & net.hidden[b].inputs
                              for a in groups[i] for b in groups[j])
                if overlap:
                    groups[i] |= groups[j]
                    del groups[j]
                    changed = True
                    break
            if changed:
                break
    return sorted(tuple(sorted(g)) for g in groups)


class TestProperties:
    def test_partition_matches_brute_force_closure(self):
        rng = random.Random(21)
        pool = [f"c{i}" for i in range(9)]
        for _ in range(100):
            net = ClusterNet()
            for _ in range(rng.randint(1, 8)):
                net.present_event(rng.sample(pool, rng.randint(1, 4)))
            computed = sorted(g.members for g in net.global_concepts)
            assert computed == brute_force_components(net)
            members = [hid for g in net.global_concepts for hid in g.members]
            assert sorted(members) == sorted(net.hidden)   # a true partition

    def test_fuzzy_reinforcement_iff_subset(self):
        rng = random.Random(22)
        pool = [f"c{i}" for i in range(8)]
        for _ in range(200):
            net = ClusterNet()
            for _ in range(rng.randint(0, 5)):
                net.present_event(rng.sample(pool, rng.randint(1, 4)))
            before = {hid: node.weight for hid, node in net.hidden.items()}
            event = frozenset(rng.sample(pool, rng.randint(1, 5)))
            net.present_event(event, fuzzy=True)
            for hid, old in before.items():
                assert (net.hidden[hid].weight > old) == (net.hidden[hid].inputs <= event)

    def test_weights_never_decrease_without_decay(self):
        rng = random.Random(23)
        pool = [f"c{i}" for i in range(6)]
        net = ClusterNet()
        floor = {}
        for _ in range(60):
            net.present_event(rng.sample(pool, rng.randint(1, 3)),
                              fuzzy=rng.random() < 0.5)
            for hid, node in net.hidden.items():
                assert node.weight >= floor.get(hid, 0.0)
                floor[hid] = node.weight

    def test_retrieval_order_is_deterministic(self):
        def build():
            net = ClusterNet()
            net.present_event({"a", "b"})
            net.present_event({"b", "c"})
            net.present_event({"a", "b"})
            return net.retrieve(0)
        assert build() == build()


class TestIngestEvents:
    def test_tsv_stream(self):
        net = ClusterNet()
        lines = ["0\tc0,c1,c2", "1\tc1,c2,c3", "2.5\tc2, c3 ,c4", ""]
        reports = net.ingest_events(lines)
        assert len(reports) == 3
        assert len(net.hidden) == 3
        assert net.hidden[2].inputs == frozenset({"c2", "c3", "c4"})

    def test_times_must_strictly_increase(self):
        with pytest.raises(InvalidParameterError):
            ClusterNet().ingest_events(["1\ta,b", "1\tb,c"])

    def test_missing_tab_rejected(self):
        with pytest.raises(InvalidParameterError):
            ClusterNet().ingest_events(["0 a,b"])

    def test_bad_time_rejected(self):
        with pytest.raises(InvalidParameterError):
            ClusterNet().ingest_events(["soon\ta,b"])

    def test_file_round_trip(self, tmp_path):
        path = tmp_path / "events.tsv"
        path.write_text("0\ta,b\n1\tb,c\n", encoding="utf-8")
        net = ClusterNet()
        net.ingest_events_file(path)
        assert len(net.hidden) == 2


class TestSerialization:
    def test_round_trip_is_stable(self):
        net = ClusterNet(decay=0.1)
        for event in FIG3_EVENTS:
            net.present_event(event, fuzzy=True)
        text = net.to_json()
        restored = ClusterNet.from_json(text)
        assert restored.to_json() == text
        assert restored.retrieve(0) == net.retrieve(0)

    def test_restored_net_keeps_learning(self):
        net = ClusterNet()
        net.present_event({"a", "b"})
        restored = ClusterNet.from_json(net.to_json())
        report = restored.present_event({"c"})
        assert report.created == 1
