"""Time-stamped event clustering into hidden nodes and global concepts.

Each distinct concept set presented as an event becomes its own hidden
node; only the exact same presentation reinforces it again, unless fuzzy
feedback is on, in which case nested sub-clusters of the presented set are
reinforced too.  Hidden nodes whose input sets overlap are grouped
transitively into global concepts, which can be queried in the reverse
direction to retrieve the original feature sets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import InvalidParameterError, NotFoundError


@dataclass
class HiddenNode:
    """An exact event cluster; its input set is immutable after creation."""

    id: int
    inputs: frozenset[str]
    weight: float
    created_at: int


@dataclass(frozen=True)
class GlobalConcept:
    id: int
    members: tuple[int, ...]


@dataclass(frozen=True)
class EventReport:
    index: int
    created: int | None
    reinforced: tuple[int, ...]
    decayed: tuple[int, ...]
    new_bases: tuple[str, ...]


class ClusterNet:
    """Base concepts, hidden event nodes, and overlap-closure global concepts."""

    def __init__(self, decay: float = 0.0):
        if decay < 0:
            raise InvalidParameterError(f"decay must be non-negative, got {decay}")
        self.decay = decay
        self.base_concepts: set[str] = set()
        self.hidden: dict[int, HiddenNode] = {}
        self.global_concepts: list[GlobalConcept] = []
        self.event_count = 0
        self._next_hidden_id = 0

    # -- training ------------------------------------------------------------

    def present_event(self, concepts, fuzzy: bool = False) -> EventReport:
        """Present one event; duplicate labels collapse to a set.

        An exact-matching hidden node is reinforced, otherwise a new one is
        created with weight 1.  With fuzzy feedback every strict subset of
        the presentation is reinforced as well.  Non-reinforced nodes decay
        by the configured amount (default none).
        """
        concept_set = frozenset(concepts)
        if not concept_set:
            raise InvalidParameterError("event concept set is empty")
        new_bases = tuple(sorted(concept_set - self.base_concepts))
        self.base_concepts |= concept_set

        reinforced: list[int] = []
        created = None
        exact = next((h for h in self.hidden.values() if h.inputs == concept_set), None)
        if exact is not None:
            exact.weight += 1.0
            reinforced.append(exact.id)
        else:
            created = self._next_hidden_id
            self._next_hidden_id += 1
            self.hidden[created] = HiddenNode(created, concept_set, 1.0,
                                              self.event_count)
        if fuzzy:
            for node in self.hidden.values():
                if node.id != created and node.inputs < concept_set:
                    node.weight += 1.0
                    reinforced.append(node.id)

        decayed: list[int] = []
        if self.decay > 0:
            touched = set(reinforced)
            if created is not None:
                touched.add(created)
            for node in self.hidden.values():
                if node.id not in touched:
                    node.weight = max(0.0, node.weight - self.decay)
                    decayed.append(node.id)

        self.event_count += 1
        self._recompute_globals()
        return EventReport(self.event_count - 1, created,
                           tuple(sorted(reinforced)), tuple(sorted(decayed)),
                           new_bases)

    def ingest_events(self, lines, fuzzy: bool = False) -> list[EventReport]:
        """Parse ``time<TAB>label,label,...`` lines; times strictly increase."""
        reports = []
        last_time = None
        for line_number, raw in enumerate(lines, 1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            time_part, sep, label_part = line.partition("\t")
            if not sep:
                raise InvalidParameterError(
                    f"line {line_number}: expected time<TAB>labels")
            try:
                moment = float(time_part)
            except ValueError:
                raise InvalidParameterError(
                    f"line {line_number}: bad time {time_part!r}") from None
            if last_time is not None and moment <= last_time:
                raise InvalidParameterError(
                    f"line {line_number}: times must be strictly increasing")
            last_time = moment
            labels = [part.strip() for part in label_part.split(",") if part.strip()]
            reports.append(self.present_event(labels, fuzzy=fuzzy))
        return reports

    def ingest_events_file(self, path, fuzzy: bool = False) -> list[EventReport]:
        with open(path, "r", encoding="utf-8") as handle:
            return self.ingest_events(handle, fuzzy=fuzzy)

    # -- queries ---------------------------------------------------------------

    def retrieve(self, global_concept_id: int) -> list[tuple[frozenset[str], float]]:
        """Member feature sets of one global concept, strongest first.

        Ordered by descending weight, ties by creation order; this is the
        reverse-direction query that recovers what was clustered.
        """
        concept = next((g for g in self.global_concepts
                        if g.id == global_concept_id), None)
        if concept is None:
            raise NotFoundError(f"unknown global concept {global_concept_id}")
        members = sorted((self.hidden[h] for h in concept.members),
                         key=lambda node: (-node.weight, node.created_at))
        return [(node.inputs, node.weight) for node in members]

    def prune(self, threshold: float) -> list[int]:
        """Remove hidden nodes with weight <= threshold; bases remain."""
        if threshold < 0:
            raise InvalidParameterError(f"threshold must be >= 0, got {threshold}")
        removed = sorted(h.id for h in self.hidden.values() if h.weight <= threshold)
        for hid in removed:
            del self.hidden[hid]
        self._recompute_globals()
        return removed

    def _recompute_globals(self):
        by_label: dict[str, list[int]] = {}
        for node in self.hidden.values():
            for label in node.inputs:
                by_label.setdefault(label, []).append(node.id)
        seen: set[int] = set()
        components: list[tuple[int, ...]] = []
        for hid in sorted(self.hidden):
            if hid in seen:
                continue
            component = {hid}
            seen.add(hid)
            queue = [hid]
            while queue:
                current = queue.pop()
                for label in self.hidden[current].inputs:
                    for other in by_label[label]:
                        if other not in seen:
                            seen.add(other)
                            component.add(other)
                            queue.append(other)
            components.append(tuple(sorted(component)))
        components.sort(key=lambda c: c[0])
        self.global_concepts = [GlobalConcept(i, members)
                                for i, members in enumerate(components)]

    # -- serialization -----------------------------------------------------------

    def to_json(self) -> str:
        doc = {
            "decay": self.decay,
            "event_count": self.event_count,
            "base_concepts": sorted(self.base_concepts),
            "hidden_nodes": [{"id": h.id, "inputs": sorted(h.inputs),
                              "weight": h.weight, "created_at": h.created_at}
                             for h in (self.hidden[i] for i in sorted(self.hidden))],
            "global_concepts": [{"id": g.id, "members": list(g.members)}
                                for g in self.global_concepts],
        }
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text: str) -> "ClusterNet":
        doc = json.loads(text)
        net = cls(decay=doc["decay"])
        net.event_count = doc["event_count"]
        net.base_concepts = set(doc["base_concepts"])
        for entry in doc["hidden_nodes"]:
            net.hidden[entry["id"]] = HiddenNode(entry["id"],
                                                 frozenset(entry["inputs"]),
                                                 entry["weight"],
                                                 entry["created_at"])
        net._next_hidden_id = max(net.hidden, default=-1) + 1
        net._recompute_globals()
        return net
