"""Self-organising rewiring driven by rejected excess signal.

Over-driven synapses accumulate turbulence each time their target fires
with excess; once the accumulator crosses the bud threshold the synapse
grows a bud.  Buds into the same target whose sources co-fired closely
enough join into a new intermediary neuron, and the original paths close
in proportion to how often they met rejection.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from .core_net import FiringRecord, Network
from .errors import InvalidParameterError
from .feedback import DEFAULT_EPS_BALANCE, is_balanced, repulsion_at

BUD_SPAWNED = "bud_spawned"
NEURONS_JOINED = "neurons_joined"
INTERMEDIARY_CREATED = "intermediary_created"
PATH_CLOSED = "path_closed"
PATH_REDUCED = "path_reduced"

EVENT_KINDS = (BUD_SPAWNED, NEURONS_JOINED, INTERMEDIARY_CREATED,
               PATH_CLOSED, PATH_REDUCED)


@dataclass(frozen=True)
class GrowthConfig:
    """Tunable constants of the growth process.

    The defaults are starting points; the experiment harness sweeps them.
    """

    bud_threshold: float = 3.0        # accumulated turbulence that spawns a bud
    window: int = 8                   # ticks of co-firing/rejection statistics
    cofire_agreement: float = 0.9     # fraction of shared activity to join
    offpattern_decay: float = 0.5     # accumulator multiplier on clean carries
    eps_balance: float = DEFAULT_EPS_BALANCE
    force_per_segment: float = 0.1    # opposing forward force per backward segment
    close_cutoff: float = 0.05        # open fractions below this snap to zero
    threshold_policy: str = "all"     # "all" or "fraction:<f>" of the group size

    def __post_init__(self):
        if self.bud_threshold <= 0:
            raise InvalidParameterError("bud_threshold must be positive")
        if self.window < 1:
            raise InvalidParameterError("window must be >= 1")
        if not 0 < self.cofire_agreement <= 1:
            raise InvalidParameterError("cofire_agreement must lie in (0, 1]")
        if not 0 <= self.offpattern_decay < 1:
            raise InvalidParameterError("offpattern_decay must lie in [0, 1)")
        if self.force_per_segment < 0:
            raise InvalidParameterError("force_per_segment must be non-negative")
        if not self.threshold_policy == "all" and not self.threshold_policy.startswith("fraction:"):
            raise InvalidParameterError(
                f"unknown threshold_policy {self.threshold_policy!r}")

    def intermediary_threshold(self, group_size: int) -> int:
        """Threshold for a new intermediary over ``group_size`` joined inputs.

        The default demands the whole group, so the combined inputs produce
        one unit output again.
        """
        if self.threshold_policy == "all":
            return group_size
        fraction = float(self.threshold_policy.split(":", 1)[1])
        return max(1, min(group_size, math.ceil(fraction * group_size)))

    def to_doc(self) -> dict:
        return {"bud_threshold": self.bud_threshold, "window": self.window,
                "cofire_agreement": self.cofire_agreement,
                "offpattern_decay": self.offpattern_decay,
                "eps_balance": self.eps_balance,
                "force_per_segment": self.force_per_segment,
                "close_cutoff": self.close_cutoff,
                "threshold_policy": self.threshold_policy}

    @classmethod
    def from_doc(cls, doc: dict) -> "GrowthConfig":
        return cls(**doc)


@dataclass(frozen=True)
class GrowthEvent:
    kind: str
    tick: int
    affected: tuple[int, ...]


class _SynapseStats:
    __slots__ = ("accumulator", "carried", "rejected", "budded")

    def __init__(self, window: int):
        self.accumulator = 0.0
        self.carried: deque[bool] = deque(maxlen=window)
        self.rejected: deque[bool] = deque(maxlen=window)
        self.budded = False


class TurbulenceState:
    """Per-synapse turbulence accumulators and sliding activity windows."""

    def __init__(self, config: GrowthConfig | None = None):
        self.config = config or GrowthConfig()
        self.stats: dict[int, _SynapseStats] = {}
        # (target, frozenset of sources) pairs that already own an intermediary
        self.groups_created: set[tuple[int, frozenset[int]]] = set()

    def stats_for(self, synapse_id: int) -> _SynapseStats:
        stats = self.stats.get(synapse_id)
        if stats is None:
            stats = self.stats[synapse_id] = _SynapseStats(self.config.window)
        return stats

    def accumulator(self, synapse_id: int) -> float:
        return self.stats_for(synapse_id).accumulator

    def fired_count(self, synapse_id: int) -> int:
        return sum(1 for c in self.stats_for(synapse_id).carried if c)

    def rejection_count(self, synapse_id: int) -> int:
        return sum(1 for r in self.stats_for(synapse_id).rejected if r)

    def budded_ids(self) -> list[int]:
        return sorted(s for s, st in self.stats.items() if st.budded)

    def total_turbulence(self) -> float:
        return sum(st.accumulator for st in self.stats.values())


def accumulate_turbulence(network: Network, record: FiringRecord,
                          state: TurbulenceState) -> TurbulenceState:
    """Fold one tick's firing outcome into the turbulence bookkeeping.

    Synapses that carried signal into a rejecting target gain the clamped
    backward repulsion; synapses that carried signal when the target did
    not reject decay instead, which keeps frequently useful paths open.
    """
    cfg = state.config
    rejecting = {nid for nid, excess in record.rejections.items()
                 if excess > cfg.eps_balance}
    for sid in sorted(network.synapses):
        syn = network.synapses[sid]
        stats = state.stats_for(sid)
        carried = syn.pre in record.sources and syn.open_fraction > 0.0
        hit_rejection = carried and syn.post in rejecting
        stats.carried.append(carried)
        stats.rejected.append(hit_rejection)
        if hit_rejection:
            stats.accumulator += repulsion_at(record.rejections[syn.post],
                                              syn.distance, cfg.force_per_segment)
        elif carried:
            stats.accumulator *= cfg.offpattern_decay
    return state


def _agreement(a: _SynapseStats, b: _SynapseStats) -> float:
    """Fraction of shared carrying activity over the common recent window."""
    ca, cb = list(a.carried), list(b.carried)
    span = min(len(ca), len(cb))
    if span == 0:
        return 0.0
    ca, cb = ca[-span:], cb[-span:]
    both = sum(1 for x, y in zip(ca, cb) if x and y)
    either = sum(1 for x, y in zip(ca, cb) if x or y)
    return both / either if either else 0.0


def _greedy_groups(ids: list[int], state: TurbulenceState) -> list[list[int]]:
    """Partition budded synapse ids into co-firing groups.

    Every member of a group must meet the agreement criterion pairwise with
    every other member.  Largest group first; ties go to the lowest seed id.
    """
    threshold = state.config.cofire_agreement
    cache: dict[tuple[int, int], bool] = {}

    def agrees(x: int, y: int) -> bool:
        key = (x, y) if x < y else (y, x)
        hit = cache.get(key)
        if hit is None:
            hit = cache[key] = _agreement(state.stats_for(x), state.stats_for(y)) >= threshold
        return hit

    remaining = sorted(ids)
    groups = []
    while True:
        best: list[int] | None = None
        for seed in remaining:
            clique = [seed]
            for other in remaining:
                if other != seed and all(agrees(other, member) for member in clique):
                    clique.append(other)
            if best is None or len(clique) > len(best):
                best = clique
        if best is None or len(best) < 2:
            break
        groups.append(sorted(best))
        chosen = set(best)
        remaining = [i for i in remaining if i not in chosen]
    return groups


def spawn_and_join(network: Network, state: TurbulenceState,
                   tick: int) -> list[GrowthEvent]:
    """Spawn buds on over-pressured synapses and join co-firing buds.

    A joined group of size >= 2 gets one intermediary neuron fed by the
    group's sources, with a unit synapse onward to the shared target.  A
    source group that already produced an intermediary into the same target
    never produces a second one; it is reported as joined again so the
    proportional closure step can keep relieving the path.
    """
    cfg = state.config
    events: list[GrowthEvent] = []
    for sid in sorted(network.synapses):
        stats = state.stats_for(sid)
        if not stats.budded and stats.accumulator >= cfg.bud_threshold:
            stats.budded = True
            events.append(GrowthEvent(BUD_SPAWNED, tick, (sid,)))

    budded_by_target: dict[int, list[int]] = {}
    for sid in sorted(network.synapses):
        if state.stats_for(sid).budded:
            budded_by_target.setdefault(network.synapses[sid].post, []).append(sid)

    for target in sorted(budded_by_target):
        for group in _greedy_groups(budded_by_target[target], state):
            sources = frozenset(network.synapses[sid].pre for sid in group)
            events.append(GrowthEvent(NEURONS_JOINED, tick, tuple(group)))
            key = (target, sources)
            if key not in state.groups_created:
                state.groups_created.add(key)
                threshold = cfg.intermediary_threshold(len(group))
                intermediary = network.add_neuron(float(threshold))
                for src in sorted(sources):
                    network.add_synapse(src, intermediary, 1.0, 1)
                network.add_synapse(intermediary, target, 1.0, 1)
                events.append(GrowthEvent(INTERMEDIARY_CREATED, tick,
                                          (intermediary, target)))
            for sid in group:
                stats = state.stats_for(sid)
                stats.accumulator = 0.0
                stats.budded = False
    return events


def close_paths(network: Network, state: TurbulenceState, joined_group,
                tick: int) -> list[GrowthEvent]:
    """Close the joined originals in proportion to their observed rejection.

    A source that only ever fired into rejection closes completely; one
    that also completed clean transmissions keeps a reduced open fraction.
    Synapses with no carrying evidence in the window are skipped.
    """
    cfg = state.config
    events: list[GrowthEvent] = []
    for sid in sorted(joined_group):
        syn = network.synapses[sid]
        stats = state.stats_for(sid)
        carried = sum(1 for c in stats.carried if c)
        if carried == 0:
            continue
        rejected = sum(1 for r in stats.rejected if r)
        ratio = rejected / carried
        new_fraction = syn.open_fraction * (1.0 - ratio)
        if new_fraction < cfg.close_cutoff:
            syn.open_fraction = 0.0
            events.append(GrowthEvent(PATH_CLOSED, tick, (sid,)))
        else:
            syn.open_fraction = new_fraction
            events.append(GrowthEvent(PATH_REDUCED, tick, (sid,)))
    return events


def growth_tick(network: Network, state: TurbulenceState,
                external_inputs=()) -> tuple[FiringRecord, list[GrowthEvent]]:
    """One engine tick: step, accumulate, join, and close in order."""
    record = network.step(external_inputs)
    accumulate_turbulence(network, record, state)
    events = spawn_and_join(network, state, record.tick)
    closures: list[GrowthEvent] = []
    for event in events:
        if event.kind == NEURONS_JOINED:
            closures.extend(close_paths(network, state, event.affected, record.tick))
    events.extend(closures)
    return record, events


@dataclass
class ConvergenceReport:
    """Outcome of a run-until-balanced experiment.

    ``ticks_to_balance`` counts the ticks before the lasting balanced
    window began: 0 means no firing neuron ever exceeded the excess
    tolerance.  None means balance was not confirmed within max_ticks;
    non-convergence is a report outcome, not an error.
    """

    ticks_to_balance: int | None
    intermediaries_created: int
    final_total_excess: float
    initial_max_excess: float
    final_max_excess: float
    ticks_run: int
    events: tuple[GrowthEvent, ...] = field(default_factory=tuple)

    def to_doc(self) -> dict:
        return {"ticks_to_balance": self.ticks_to_balance,
                "intermediaries_created": self.intermediaries_created,
                "final_total_excess": self.final_total_excess,
                "initial_max_excess": self.initial_max_excess,
                "final_max_excess": self.final_max_excess,
                "ticks_run": self.ticks_run,
                "events_total": len(self.events)}


def _as_schedule(input_schedule):
    """Normalize a schedule to a tick -> ids callable.

    Accepts a callable, a constant id set, or a per-tick sequence of id
    collections (cycled when the run outlasts it).
    """
    if callable(input_schedule):
        return input_schedule
    if isinstance(input_schedule, (set, frozenset)):
        ids = frozenset(input_schedule)
        return lambda tick: ids
    steps = [frozenset(step) for step in input_schedule]
    if not steps:
        return lambda tick: frozenset()
    return lambda tick: steps[tick % len(steps)]


def run_until_balanced(network: Network, input_schedule,
                       config: GrowthConfig | None = None,
                       max_ticks: int = 500, on_tick=None) -> ConvergenceReport:
    """Step the network with growth until balanced or out of ticks.

    The run stops once a full window of ticks has passed with no firing
    neuron above the excess tolerance; confirming balance therefore takes
    at least ``config.window`` ticks.  Fully deterministic given the
    network and schedule.
    """
    if max_ticks < 1:
        raise InvalidParameterError(f"max_ticks must be >= 1, got {max_ticks}")
    cfg = config or GrowthConfig()
    state = TurbulenceState(cfg)
    schedule = _as_schedule(input_schedule)
    events: list[GrowthEvent] = []
    ticks_to_balance = None
    initial_max = 0.0
    ticks_run = 0
    last_excess_tick = -1
    for tick in range(max_ticks):
        record, tick_events = growth_tick(network, state, schedule(tick))
        events.extend(tick_events)
        ticks_run = tick + 1
        if tick == 0:
            initial_max = max(record.rejections.values(), default=0.0)
        if any(excess > cfg.eps_balance for excess in record.rejections.values()):
            last_excess_tick = tick
        balanced = is_balanced(network, cfg.window, cfg.eps_balance)
        if on_tick is not None:
            on_tick(record, state, tick_events, balanced)
        if tick - last_excess_tick >= cfg.window:
            ticks_to_balance = last_excess_tick + 1
            break
    recent = list(network.history)[-min(cfg.window, len(network.history)):]
    final_excesses = [excess for record in recent
                      for excess in record.rejections.values()]
    return ConvergenceReport(
        ticks_to_balance=ticks_to_balance,
        intermediaries_created=sum(1 for e in events
                                   if e.kind == INTERMEDIARY_CREATED),
        final_total_excess=sum(final_excesses),
        initial_max_excess=initial_max,
        final_max_excess=max(final_excesses, default=0.0),
        ticks_run=ticks_run,
        events=tuple(events),
    )
