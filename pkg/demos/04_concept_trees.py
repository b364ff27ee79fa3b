#!/usr/bin/env python3
"""Counted concept trees: heavy branches migrate to new bases.

A child node may never count higher than its parent.  When use pushes a
branch over its parent, the branch becomes the base of its own tree and a
dynamic link keeps the old path searchable.  Frequent concepts therefore
drift to tree bases, where queries can index them directly.
"""

from renforge import ConceptForest, tokenize


def show(forest):
    def render(node, depth):
        print("    " + "  " * depth + f"{node.label}({node.count})")
        for child in node.children:
            render(child, depth + 1)
    for index, root in enumerate(forest.trees):
        print(f"  tree {index}:")
        render(root, 0)
    for link in forest.links:
        print(f"  link {link.label}: {link.from_node.label} -> {link.to_root.label}")


forest = ConceptForest()
print("=== insert 'black cat sat mat' and 'black cat drank milk' ===")
forest.insert_sequence(tokenize("black cat sat mat"))
forest.insert_sequence(tokenize("black cat drank milk"))
show(forest)

print()
print("=== 'drank milk' twice more: the branch outgrows its parent ===")
forest.insert_sequence(tokenize("drank milk"))
forest.insert_sequence(tokenize("drank milk"))
show(forest)

print()
print("=== searching ===")
for query in ("black cat drank milk", "drank milk", "milk"):
    paths = forest.search(tokenize(query))
    if not paths:
        print(f"  {query!r}: no entry point (only bases are indexed)")
        continue
    for path in paths:
        route = " | ".join(f"tree{ti}:{'-'.join(labels)}"
                           for ti, labels in path.segments)
        print(f"  {query!r}: {route}  (links crossed: {path.links_crossed}, "
              f"complete: {path.complete})")

print()
print("=== terminal concepts (search endpoints) ===")
for index in range(len(forest.trees)):
    labels = [n.label for n in forest.terminal_nodes(index)]
    print(f"  tree {index}: {labels}")
