"""Refined units: intermediary layers that give a binary neuron graded inputs.

Partitioning a main neuron's inputs into groups, each feeding one
intermediary neuron, makes every original input count for only a fraction
of a unit signal.  The binary operation of each neuron is unchanged; the
wiring alone produces the analogue behaviour.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core_net import Network
from .errors import InvalidParameterError, InvalidSpecError, NotFoundError


@dataclass(frozen=True)
class RefinedSpec:
    """Construction parameters for a refined unit.

    Inputs are partitioned into consecutive groups of ``group_size``; each
    group feeds one intermediary requiring ``group_threshold`` of its
    members.  With ``layers`` > 1 the intermediaries are grouped again the
    same way.  The final layer feeds the main neuron, which requires
    ``main_threshold`` of it.
    """

    input_count: int
    group_size: int
    group_threshold: int
    main_threshold: int
    layers: int = 1

    def __post_init__(self):
        for name in ("input_count", "group_size", "group_threshold",
                     "main_threshold", "layers"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise InvalidSpecError(f"{name} must be a positive integer, got {value}")
        if self.group_threshold > self.group_size:
            raise InvalidSpecError(
                f"group_threshold {self.group_threshold} exceeds group_size {self.group_size}")
        if self.main_threshold > self.final_unit_count():
            raise InvalidSpecError(
                f"main_threshold {self.main_threshold} exceeds the "
                f"{self.final_unit_count()} units of the last layer")

    def unit_counts(self) -> list[int]:
        """Unit count per level, inputs first, last layer last."""
        counts = [self.input_count]
        for _ in range(self.layers):
            counts.append(math.ceil(counts[-1] / self.group_size))
        return counts

    def final_unit_count(self) -> int:
        return self.unit_counts()[-1]

    def to_doc(self) -> dict:
        return {"input_count": self.input_count, "group_size": self.group_size,
                "group_threshold": self.group_threshold,
                "main_threshold": self.main_threshold, "layers": self.layers}

    @classmethod
    def from_doc(cls, doc: dict) -> "RefinedSpec":
        return cls(**doc)


def _group_sizes(count: int, group_size: int) -> list[int]:
    sizes = [group_size] * (count // group_size)
    if count % group_size:
        sizes.append(count % group_size)
    return sizes


def _group_threshold(spec: RefinedSpec, size: int) -> int:
    # The remainder group cannot demand more members than it has.
    return min(spec.group_threshold, size)


def build_refined(network: Network, spec: RefinedSpec,
                  input_threshold: float = 1.0):
    """Wire a refined unit into ``network``.

    Returns (main neuron id, input neuron ids, intermediary ids).  Grouping
    is by input ordering (consecutive ids) so construction is deterministic.
    """
    input_ids = [network.add_neuron(input_threshold) for _ in range(spec.input_count)]
    current = list(input_ids)
    intermediaries: list[int] = []
    for _ in range(spec.layers):
        next_level = []
        for start in range(0, len(current), spec.group_size):
            group = current[start:start + spec.group_size]
            inter = network.add_neuron(float(_group_threshold(spec, len(group))))
            for src in group:
                network.add_synapse(src, inter, 1.0, 1)
            next_level.append(inter)
        intermediaries.extend(next_level)
        current = next_level
    main = network.add_neuron(float(spec.main_threshold))
    for unit in current:
        network.add_synapse(unit, main, 1.0, 1)
    return main, input_ids, intermediaries


def min_firing_set_size(spec: RefinedSpec) -> int:
    """Minimum number of inputs whose simultaneous firing fires the main neuron.

    Computed by propagating per-unit activation costs up the group tree:
    a unit costs the sum of its cheapest ``threshold`` children, an input
    costs 1.  For uniform one-layer specs this equals
    main_threshold * group_threshold.
    """
    costs = [1] * spec.input_count
    for _ in range(spec.layers):
        next_costs = []
        for start in range(0, len(costs), spec.group_size):
            group = sorted(costs[start:start + spec.group_size])
            next_costs.append(sum(group[:_group_threshold(spec, len(group))]))
        costs = next_costs
    return sum(sorted(costs)[:spec.main_threshold])


def effective_weight(spec: RefinedSpec, layer_path) -> Fraction:
    """Per-input contribution fraction along a path to the main neuron.

    ``layer_path`` lists the intermediary index traversed at each level
    (level 1 first); an empty path is a directly connected input and
    returns 1.  The fraction is 1 over the product of the traversed
    intermediaries' thresholds.
    """
    path = list(layer_path)
    if not path:
        return Fraction(1)
    if len(path) != spec.layers:
        raise NotFoundError(
            f"path must traverse all {spec.layers} layers, got {len(path)}")
    counts = spec.unit_counts()
    weight = Fraction(1)
    for level, index in enumerate(path):
        level_units = counts[level + 1]
        if not 0 <= index < level_units:
            raise NotFoundError(f"no unit {index} at layer {level + 1}")
        if level > 0 and path[level - 1] // spec.group_size != index:
            raise NotFoundError(
                f"unit {path[level - 1]} at layer {level} does not feed "
                f"unit {index} at layer {level + 1}")
        sizes = _group_sizes(counts[level], spec.group_size)
        weight /= _group_threshold(spec, sizes[index])
    return weight


def expand_weighted(network: Network, pre: int, post: int, weight: int) -> int:
    """Record a weighted connection as ``weight`` parallel unit inputs.

    The firing behaviour of the target is exactly that of a weight-w
    weighted unit; returns the synapse id.
    """
    if not isinstance(weight, int) or weight < 1:
        raise InvalidParameterError(f"weight must be an integer >= 1, got {weight}")
    return network.add_synapse(pre, post, open_fraction=1.0, distance=1,
                               multiplicity=weight)
