#!/usr/bin/env python3
"""Symbolic event clustering: exact hidden nodes, fuzzy feedback, retrieval.

Concepts presented together at one moment form a hidden node; overlapping
hidden nodes group transitively into a global concept.  Trained forward,
the net is queried backward: ask for the global concept and get back the
feature sets that built it, like asking for the ingredients of a recipe.
"""

from renforge import ClusterNet

print("=== three overlapping presentations ===")
net = ClusterNet()
for moment, event in enumerate([{"c0", "c1", "c2"},
                                {"c1", "c2", "c3"},
                                {"c2", "c3", "c4"}]):
    report = net.present_event(event)
    print(f"  t{moment}: {sorted(event)} -> hidden node {report.created}")
print(f"  hidden nodes: {len(net.hidden)}, global concepts: "
      f"{len(net.global_concepts)} (they all overlap)")

print()
print("=== reverse retrieval: the recipe query ===")
for inputs, weight in net.retrieve(0):
    print(f"  weight {weight}: {sorted(inputs)}")

print()
print("=== only the exact presentation reinforces... ===")
before = net.hidden[1].weight
net.present_event({"c1", "c2", "c3"})
print(f"  exact repeat of t1: weight {before} -> {net.hidden[1].weight}")

print()
print("=== ...unless feedback is fuzzy, which also rewards nested clusters ===")
fuzzy_net = ClusterNet()
fuzzy_net.present_event({"c2", "c3"})
fuzzy_net.present_event({"c1", "c5"})
fuzzy_net.present_event({"c1", "c2", "c3"}, fuzzy=True)
print(f"  presented {{c1,c2,c3}} fuzzily:")
print(f"    {{c2,c3}} (nested inside it)  weight {fuzzy_net.hidden[0].weight}")
print(f"    {{c1,c5}} (c5 is outside it)  weight {fuzzy_net.hidden[1].weight}")

print()
print("=== weak nodes decay and die ===")
dying = ClusterNet(decay=0.5)
dying.present_event({"x", "y"})
dying.present_event({"y", "z"})
dying.present_event({"y", "z"})
print(f"  weights after two unrelated events: "
      f"{[node.weight for node in dying.hidden.values()]}")
removed = dying.prune(0.0)
print(f"  pruned at threshold 0: removed {removed}, "
      f"{len(dying.hidden)} node(s) remain")
