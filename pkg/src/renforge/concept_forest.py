"""Counted concept trees with base-splitting and dynamic cross-tree links.

A child may never count higher than its parent.  When repeated use pushes a
branch above its parent, the branch is detached and becomes the base of a
new tree, with a dynamic link preserving the original path.  Heavily used
concepts therefore migrate to tree bases, where searches can index them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import InvalidParameterError, NotFoundError

LINK_LABEL = "M"


def tokenize(text: str) -> list[str]:
    """Whitespace-split, lowercased token sequence."""
    return text.lower().split()


class ConceptNode:
    __slots__ = ("label", "count", "children", "parent")

    def __init__(self, label: str, count: int = 0, parent: "ConceptNode | None" = None):
        self.label = label
        self.count = count
        self.children: list[ConceptNode] = []
        self.parent = parent

    def __repr__(self):
        return f"ConceptNode({self.label!r}, count={self.count})"


class DynamicLink:
    """Cross-tree edge from a node to the root of another tree."""

    __slots__ = ("from_node", "to_root", "label")

    def __init__(self, from_node: ConceptNode, to_root: ConceptNode,
                 label: str = LINK_LABEL):
        self.from_node = from_node
        self.to_root = to_root
        self.label = label


@dataclass(frozen=True)
class SplitEvent:
    label: str
    from_tree: int
    new_tree: int


@dataclass(frozen=True)
class SearchPath:
    """One maximal match: (tree index, labels) segments, links between them."""

    segments: tuple[tuple[int, tuple[str, ...]], ...]
    links_crossed: int
    tokens_matched: int
    complete: bool


def _level_order(root: ConceptNode):
    queue = [root]
    while queue:
        node = queue.pop(0)
        yield node
        queue.extend(node.children)


def _preorder(root: ConceptNode):
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


class ConceptForest:
    """Ordered collection of counted trees plus their dynamic links."""

    def __init__(self):
        self.trees: list[ConceptNode] = []
        self.links: list[DynamicLink] = []
        self.base_index: dict[str, list[ConceptNode]] = {}

    # -- mutation ----------------------------------------------------------

    def insert_sequence(self, tokens) -> "ConceptForest":
        """Insert one token sequence, then restore the count rule.

        The attachment point is the first root matching the head token; if
        none, the first non-root node matching it (scanned tree by tree,
        root-down); otherwise a new root.  Counts along the matched path
        increase by one and missing suffix nodes are created with count 1.
        """
        toks = list(tokens)
        if not toks:
            raise InvalidParameterError("token sequence is empty")
        node = self._attachment_point(toks[0])
        if node is None:
            node = ConceptNode(toks[0])
            self.trees.append(node)
        node.count += 1
        for tok in toks[1:]:
            child = next((c for c in node.children if c.label == tok), None)
            if child is None:
                child = ConceptNode(tok, parent=node)
                node.children.append(child)
            child.count += 1
            node = child
        self.split_if_violates()
        return self

    def _attachment_point(self, label: str) -> ConceptNode | None:
        for root in self.trees:
            if root.label == label:
                return root
        for root in self.trees:
            for node in _level_order(root):
                if node is not root and node.label == label:
                    return node
        return None

    def split_if_violates(self) -> list[SplitEvent]:
        """Detach every over-counted branch into a new linked base tree.

        Scans root-down, lowest tree index first, and repeats until the
        count rule holds forest-wide.  Applying it twice equals once.
        """
        events: list[SplitEvent] = []
        while True:
            found = None
            for tree_index, root in enumerate(self.trees):
                for node in _level_order(root):
                    if node.parent is not None and node.count > node.parent.count:
                        found = (tree_index, node)
                        break
                if found:
                    break
            if found is None:
                break
            tree_index, node = found
            parent = node.parent
            parent.children.remove(node)
            node.parent = None
            self.trees.append(node)
            self.links.append(DynamicLink(parent, node))
            events.append(SplitEvent(node.label, tree_index, len(self.trees) - 1))
        self._rebuild_index()
        return events

    def ingest_corpus(self, path) -> int:
        """Insert one whitespace-tokenized sequence per non-empty line."""
        with open(path, "r", encoding="utf-8") as handle:
            return self.ingest_lines(handle)

    def ingest_lines(self, lines) -> int:
        inserted = 0
        for line in lines:
            toks = tokenize(line)
            if toks:
                self.insert_sequence(toks)
                inserted += 1
        return inserted

    # -- queries -----------------------------------------------------------

    def search(self, query) -> list[SearchPath]:
        """All maximal matches for the query, entered through matching roots.

        Descent follows child labels; at any node a dynamic link may be
        crossed when the linked root matches the next token.  A path that
        consumes every token is complete.
        """
        q = list(query)
        if not q:
            raise InvalidParameterError("query is empty")
        results: list[SearchPath] = []
        for root in self.base_index.get(q[0], []):
            tree_index = self.tree_index_of(root)
            self._explore(root, q, 1, [(tree_index, [root.label])], results)
        return results

    def _explore(self, node, q, qi, segments, results):
        extended = False
        if qi < len(q):
            for child in node.children:
                if child.label == q[qi]:
                    extended = True
                    grown = [(ti, list(labels)) for ti, labels in segments]
                    grown[-1][1].append(child.label)
                    self._explore(child, q, qi + 1, grown, results)
            for link in self.links_from(node):
                if link.to_root.label == q[qi]:
                    extended = True
                    grown = [(ti, list(labels)) for ti, labels in segments]
                    grown.append((self.tree_index_of(link.to_root), [link.to_root.label]))
                    self._explore(link.to_root, q, qi + 1, grown, results)
        if not extended:
            results.append(SearchPath(
                segments=tuple((ti, tuple(labels)) for ti, labels in segments),
                links_crossed=len(segments) - 1,
                tokens_matched=qi,
                complete=qi == len(q),
            ))

    def terminal_nodes(self, tree_index: int) -> list[ConceptNode]:
        """Leaves of one tree: no children and no outgoing links."""
        if not 0 <= tree_index < len(self.trees):
            raise NotFoundError(f"no tree {tree_index}")
        linked = {id(link.from_node) for link in self.links}
        return [node for node in _preorder(self.trees[tree_index])
                if not node.children and id(node) not in linked]

    def links_from(self, node: ConceptNode) -> list[DynamicLink]:
        return [link for link in self.links if link.from_node is node]

    def tree_index_of(self, root: ConceptNode) -> int:
        for index, tree in enumerate(self.trees):
            if tree is root:
                return index
        raise NotFoundError(f"node {root.label!r} is not a tree root")

    def count_rule_holds(self) -> bool:
        return all(child.count <= node.count
                   for root in self.trees
                   for node in _preorder(root)
                   for child in node.children)

    def node_count(self) -> int:
        return sum(1 for root in self.trees for _ in _preorder(root))

    def _rebuild_index(self):
        index: dict[str, list[ConceptNode]] = {}
        for root in self.trees:
            index.setdefault(root.label, []).append(root)
        self.base_index = index

    # -- serialization -------------------------------------------------------

    def _node_path(self, node: ConceptNode) -> list[int]:
        path = []
        while node.parent is not None:
            path.append(node.parent.children.index(node))
            node = node.parent
        path.reverse()
        return path

    def _tree_of(self, node: ConceptNode) -> int:
        while node.parent is not None:
            node = node.parent
        return self.tree_index_of(node)

    def to_json(self) -> str:
        def node_doc(node):
            return {"label": node.label, "count": node.count,
                    "children": [node_doc(c) for c in node.children]}

        link_docs = sorted(
            ({"from_tree": self._tree_of(link.from_node),
              "from_path": self._node_path(link.from_node),
              "to_tree": self.tree_index_of(link.to_root),
              "label": link.label}
             for link in self.links),
            key=lambda d: (d["from_tree"], d["from_path"], d["to_tree"]))
        return json.dumps({"trees": [node_doc(r) for r in self.trees],
                           "links": link_docs})

    @classmethod
    def from_json(cls, text: str) -> "ConceptForest":
        doc = json.loads(text)
        forest = cls()

        def build(entry, parent):
            node = ConceptNode(entry["label"], entry["count"], parent)
            node.children = [build(c, node) for c in entry["children"]]
            return node

        forest.trees = [build(entry, None) for entry in doc["trees"]]
        for link_doc in doc["links"]:
            node = forest.trees[link_doc["from_tree"]]
            for index in link_doc["from_path"]:
                node = node.children[index]
            forest.links.append(DynamicLink(node, forest.trees[link_doc["to_tree"]],
                                            link_doc["label"]))
        forest._rebuild_index()
        return forest
