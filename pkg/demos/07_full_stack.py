#!/usr/bin/env python3
"""The three levels working together on one tiny corpus.

Bottom: a corpus becomes counted concept trees (static knowledge).
Middle: each observed sequence is also presented as a timed event, so the
        cluster net groups them into global concepts (dynamic knowledge).
Top:    the tree graph is searched by resonance from its bases, stopping
        at terminal concepts.

The same composition is available as the packaged scenario
``renforge run`` with scenario "fig6_stack".
"""

from renforge import ClusterNet, ConceptForest, resonate, tokenize
from renforge.harness import network_from_forest

corpus = ["black cat sat mat", "black cat drank milk",
          "drank milk", "drank milk"]

print("=== level 1: corpus -> concept trees ===")
forest = ConceptForest()
forest.ingest_lines(corpus)
print(f"  {len(forest.trees)} trees, {len(forest.links)} dynamic link(s)")
for index, root in enumerate(forest.trees):
    terminals = [n.label for n in forest.terminal_nodes(index)]
    print(f"  tree {index}: base {root.label!r}, terminals {terminals}")

print()
print("=== level 2: the same observations as timed events ===")
cluster = ClusterNet()
for line in corpus:
    cluster.present_event(tokenize(line))
print(f"  {len(cluster.hidden)} hidden nodes in "
      f"{len(cluster.global_concepts)} global concept(s)")
print("  asking the global concept for its feature sets:")
for inputs, weight in cluster.retrieve(0):
    print(f"    weight {weight}: {sorted(inputs)}")

print()
print("=== level 3: resonance search over the tree graph ===")
net, labels, roots = network_from_forest(forest)
report = resonate(net, roots)
print(f"  seeds: {[labels[n] for n in roots]}")
print(f"  terminals hit: {sorted(labels[n] for n in report.terminals_hit)}")
print("  recognized path edges:")
for pre, post in sorted(report.recognized_path):
    print(f"    {labels[pre]} -> {labels[post]} "
          f"(resonance {report.resonance[(pre, post)]})")
print()
print("  Static trees store the knowledge, event clusters name what")
print("  happened, and resonance recognises the route a query excites.")
