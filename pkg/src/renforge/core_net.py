"""Binary threshold-neuron graphs and the synchronous discrete-time firing engine.

Neurons are all-or-nothing units: the output strength is exactly 1 when a
neuron fires and 0 otherwise.  Graded behaviour enters only through synapse
open fractions, edge multiplicity, and layered wiring, never through the
unit itself.  All neurons update simultaneously from the previous tick's
outputs, so "firing at the same time" is well defined.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from .errors import DuplicateEdgeError, InvalidParameterError, NotFoundError

# Real-valued input sums are compared to thresholds with this slack to
# absorb fraction arithmetic.
FIRING_TOLERANCE = 1e-9

DEFAULT_REFRACTORY_TICKS = 1
DEFAULT_HISTORY_LIMIT = 256


def fires(threshold: float, input_sum: float) -> int:
    """Stepwise activation: 1 when the summed input reaches the threshold.

    Raises InvalidParameterError for a non-positive threshold.
    """
    if threshold <= 0:
        raise InvalidParameterError(f"threshold must be positive, got {threshold}")
    return 1 if input_sum >= threshold - FIRING_TOLERANCE else 0


@dataclass
class Neuron:
    id: int
    threshold: float
    refractory_remaining: int = 0
    last_fired: int | None = None


@dataclass
class Synapse:
    """Directed connection carrying forward signal and backward rejection.

    ``multiplicity`` represents parallel unit connections on the same
    (pre, post) pair; a weight-w link is w unit inputs bundled together.
    """

    id: int
    pre: int
    post: int
    open_fraction: float
    distance: int
    multiplicity: int = 1

    @property
    def delivery(self) -> float:
        """Signal handed to the target when the source fires."""
        return self.open_fraction * self.multiplicity


@dataclass(frozen=True)
class FiringRecord:
    """Outcome of one synchronous tick.

    ``sources`` holds every id that acted as a signal source this tick
    (fired last tick or was externally driven); downstream bookkeeping
    uses it to tell which synapses carried signal.
    """

    tick: int
    fired: frozenset[int]
    input_sums: dict[int, float]
    rejections: dict[int, float]
    sources: frozenset[int]


class Network:
    """Directed threshold-unit graph with synchronous tick semantics.

    Externally driven ids act as firing sources for the current tick only;
    neurons that fire enter a refractory period of ``refractory_ticks``
    during which they cannot fire and their blocked input is discarded.
    An instance is single-threaded during simulation and shares no state
    with other instances.
    """

    def __init__(self, rng_seed: int = 0,
                 refractory_ticks: int = DEFAULT_REFRACTORY_TICKS,
                 history_limit: int = DEFAULT_HISTORY_LIMIT):
        if refractory_ticks < 0:
            raise InvalidParameterError("refractory_ticks must be >= 0")
        if history_limit < 1:
            raise InvalidParameterError("history_limit must be >= 1")
        self.rng_seed = rng_seed
        self.refractory_ticks = refractory_ticks
        self.neurons: dict[int, Neuron] = {}
        self.synapses: dict[int, Synapse] = {}
        self.tick = 0
        self.history: deque[FiringRecord] = deque(maxlen=history_limit)
        self._edges: dict[tuple[int, int], int] = {}
        self._incoming: dict[int, list[int]] = {}
        self._outgoing: dict[int, list[int]] = {}
        self._last_fired: frozenset[int] = frozenset()

    # -- construction -----------------------------------------------------

    def add_neuron(self, threshold: float) -> int:
        """Add a neuron; ids are dense integers assigned in creation order."""
        if threshold <= 0:
            raise InvalidParameterError(f"threshold must be positive, got {threshold}")
        nid = len(self.neurons)
        self.neurons[nid] = Neuron(id=nid, threshold=float(threshold))
        return nid

    def add_synapse(self, pre: int, post: int, open_fraction: float = 1.0,
                    distance: int = 1, multiplicity: int = 1) -> int:
        """Add a directed synapse; returns its dense integer id."""
        if pre not in self.neurons:
            raise NotFoundError(f"unknown neuron id {pre}")
        if post not in self.neurons:
            raise NotFoundError(f"unknown neuron id {post}")
        if pre == post:
            raise InvalidParameterError("self-loops are not allowed")
        if not 0.0 <= open_fraction <= 1.0:
            raise InvalidParameterError(
                f"open_fraction must lie in [0, 1], got {open_fraction}")
        if not isinstance(distance, int) or distance < 1:
            raise InvalidParameterError(f"distance must be an integer >= 1, got {distance}")
        if not isinstance(multiplicity, int) or multiplicity < 1:
            raise InvalidParameterError(
                f"multiplicity must be an integer >= 1, got {multiplicity}")
        if (pre, post) in self._edges:
            raise DuplicateEdgeError(f"synapse {pre}->{post} already exists")
        sid = len(self.synapses)
        self.synapses[sid] = Synapse(id=sid, pre=pre, post=post,
                                     open_fraction=float(open_fraction),
                                     distance=distance, multiplicity=multiplicity)
        self._edges[(pre, post)] = sid
        self._incoming.setdefault(post, []).append(sid)
        self._outgoing.setdefault(pre, []).append(sid)
        return sid

    # -- queries ----------------------------------------------------------

    def incoming(self, neuron_id: int) -> list[Synapse]:
        return [self.synapses[s] for s in self._incoming.get(neuron_id, ())]

    def outgoing(self, neuron_id: int) -> list[Synapse]:
        return [self.synapses[s] for s in self._outgoing.get(neuron_id, ())]

    def synapse_between(self, pre: int, post: int) -> Synapse | None:
        sid = self._edges.get((pre, post))
        return None if sid is None else self.synapses[sid]

    def open_input_count(self, neuron_id: int) -> int:
        """Number of open direct unit inputs (multiplicity counted)."""
        return sum(s.multiplicity for s in self.incoming(neuron_id)
                   if s.open_fraction > 0.0)

    # -- simulation -------------------------------------------------------

    def step(self, external_inputs=()) -> FiringRecord:
        """Advance one synchronous tick.

        Each neuron's input sum is the open-fraction-weighted signal over
        incoming synapses whose source fired last tick or is externally
        driven this tick.  Fired neurons enter the refractory period; the
        per-input excess of every fired neuron is recorded as its rejection.
        """
        externals = frozenset(external_inputs)
        for nid in externals:
            if nid not in self.neurons:
                raise NotFoundError(f"unknown neuron id {nid}")
        sources = self._last_fired | externals

        input_sums: dict[int, float] = {}
        for nid in sorted(self.neurons):
            total = 0.0
            for sid in self._incoming.get(nid, ()):
                syn = self.synapses[sid]
                if syn.pre in sources:
                    total += syn.delivery
            input_sums[nid] = total

        fired = set()
        for nid in sorted(self.neurons):
            neuron = self.neurons[nid]
            if neuron.refractory_remaining > 0:
                continue
            if fires(neuron.threshold, input_sums[nid]):
                fired.add(nid)

        rejections: dict[int, float] = {}
        for nid in sorted(fired):
            open_inputs = self.open_input_count(nid)
            if open_inputs >= 1:
                rejections[nid] = (input_sums[nid] - self.neurons[nid].threshold) / open_inputs

        for nid, neuron in self.neurons.items():
            if nid in fired:
                neuron.refractory_remaining = self.refractory_ticks
                neuron.last_fired = self.tick
            elif neuron.refractory_remaining > 0:
                neuron.refractory_remaining -= 1

        record = FiringRecord(tick=self.tick, fired=frozenset(fired),
                              input_sums=input_sums, rejections=rejections,
                              sources=sources)
        self.tick += 1
        self._last_fired = record.fired
        self.history.append(record)
        return record

    def reset_dynamics(self) -> None:
        """Clear firing state (tick, history, refractory) but keep topology."""
        self.tick = 0
        self.history.clear()
        self._last_fired = frozenset()
        for neuron in self.neurons.values():
            neuron.refractory_remaining = 0
            neuron.last_fired = None

    # -- serialization ----------------------------------------------------

    def to_json(self) -> str:
        """Canonical JSON form; re-serialization round-trips bit-exactly."""
        neurons = [{"id": n.id, "threshold": n.threshold,
                    "refractory": n.refractory_remaining}
                   for n in (self.neurons[i] for i in sorted(self.neurons))]
        synapses = [{"pre": s.pre, "post": s.post,
                     "open_fraction": s.open_fraction, "distance": s.distance,
                     "multiplicity": s.multiplicity}
                    for s in (self.synapses[i] for i in sorted(self.synapses))]
        return json.dumps({"neurons": neurons, "synapses": synapses})

    @classmethod
    def from_json(cls, text: str, **kwargs) -> "Network":
        doc = json.loads(text)
        net = cls(**kwargs)
        for entry in doc["neurons"]:
            nid = net.add_neuron(entry["threshold"])
            if nid != entry["id"]:
                raise InvalidParameterError(
                    f"neuron ids must be dense and ascending, got {entry['id']}")
            net.neurons[nid].refractory_remaining = entry["refractory"]
        for entry in doc["synapses"]:
            net.add_synapse(entry["pre"], entry["post"], entry["open_fraction"],
                            entry["distance"], entry["multiplicity"])
        return net
