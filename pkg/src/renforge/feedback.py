"""Excess-input arithmetic, backward repulsion decay, and balance detection.

After a neuron fires it rejects its excess input back down every open
direct synapse: the per-input excess is (input_total - threshold) divided
by the number of open unit inputs.  Travelling backwards, the rejected
signal loses a fixed amount of force per distance segment and is clamped
at zero once forward resistance swallows it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core_net import FiringRecord, Network
from .errors import InvalidParameterError

# A 5-input unit with threshold 4 carries per-input excess exactly 0.2 when
# saturated; that canonical stable unit must count as balanced.
DEFAULT_EPS_BALANCE = 0.2


def total_input(per_synapse_signals) -> float:
    """Sum of the per-synapse forward signals arriving at one neuron."""
    total = 0.0
    for value in per_synapse_signals:
        if value < 0:
            raise InvalidParameterError(f"signals must be non-negative, got {value}")
        total += value
    return total


def average_excess(input_total: float, threshold: float, input_count: int) -> float:
    """Per-input excess carried by each of ``input_count`` direct synapses.

    May be negative when the input is below threshold; callers gate on
    firing before treating the value as a rejection.
    """
    if input_count < 1:
        raise InvalidParameterError(f"input_count must be >= 1, got {input_count}")
    return (input_total - threshold) / input_count


def repulsion_at(excess_per_input: float, distance: int,
                 forward_force_per_segment: float) -> float:
    """Backward repulsion surviving at ``distance`` segments from the neuron.

    Each segment of backward travel meets ``forward_force_per_segment`` of
    opposing force; the result is clamped at zero where the repulsion dies
    out against the resistance.
    """
    if not isinstance(distance, int) or distance < 1:
        raise InvalidParameterError(f"distance must be an integer >= 1, got {distance}")
    if forward_force_per_segment < 0:
        raise InvalidParameterError("forward force must be non-negative")
    return max(0.0, excess_per_input - distance * forward_force_per_segment)


def resistance_profile(force_per_segment, segments: int) -> list:
    """Cumulative opposing force met after 1..segments backward segments."""
    if not isinstance(segments, int) or segments < 1:
        raise InvalidParameterError(f"segments must be an integer >= 1, got {segments}")
    if force_per_segment < 0:
        raise InvalidParameterError("forward force must be non-negative")
    return [force_per_segment * k for k in range(1, segments + 1)]


def is_balanced(network: Network, window: int,
                eps_balance: float = DEFAULT_EPS_BALANCE) -> bool:
    """True when no neuron that fired in the last ``window`` ticks carried
    per-input excess above ``eps_balance``.  Vacuously true with no firing.
    """
    if window < 1:
        raise InvalidParameterError(f"window must be >= 1, got {window}")
    recent = list(network.history)[-min(window, len(network.history)):]
    for record in recent:
        for excess in record.rejections.values():
            if excess > eps_balance:
                return False
    return True


@dataclass(frozen=True)
class ExcessReport:
    """Per-neuron excess bookkeeping for one tick, emitted only on firing."""

    neuron: int
    input_count: int
    input_total: float
    threshold: float
    excess_per_input: float


def excess_reports(network: Network, record: FiringRecord) -> list[ExcessReport]:
    """Excess reports for every neuron that fired in ``record``."""
    reports = []
    for nid in sorted(record.fired):
        if nid not in record.rejections:
            continue
        reports.append(ExcessReport(
            neuron=nid,
            input_count=network.open_input_count(nid),
            input_total=record.input_sums[nid],
            threshold=network.neurons[nid].threshold,
            excess_per_input=record.rejections[nid],
        ))
    return reports


@dataclass(frozen=True)
class RepulsionProfile:
    """Backward repulsion at each segment 1..distance; non-increasing, >= 0."""

    synapse: int | None
    values: tuple[float, ...]
    clamped: bool


def repulsion_profile(excess_per_input: float, distance: int,
                      forward_force_per_segment: float,
                      synapse: int | None = None) -> RepulsionProfile:
    values = tuple(repulsion_at(excess_per_input, d, forward_force_per_segment)
                   for d in range(1, distance + 1))
    clamped = excess_per_input - distance * forward_force_per_segment < 0
    return RepulsionProfile(synapse=synapse, values=values, clamped=clamped)
