#!/usr/bin/env python3
"""Self-organising rewiring: buds, joins, and proportional path closure.

Three inputs over-drive one target.  Two of them only ever fire with the
group; the third also completes clean transmissions of its own.  Pressure
buds the over-driven synapses, the co-firing ones join into an
intermediary neuron, and the originals close in proportion to how often
they met rejection, leaving the independent firer a reduced direct path.
"""

from renforge import GrowthConfig, TurbulenceState, growth_tick
from renforge.harness import build_direct_unit

config = GrowthConfig(bud_threshold=5.0, window=20, cofire_agreement=0.9,
                      offpattern_decay=0.5, force_per_segment=0.1)
net, (a, b, c), main = build_direct_unit(3, 1.0)
state = TurbulenceState(config)

print("=== schedule ===")
print("  tick 0 of every 20: input c fires alone (clean transmission)")
print("  even ticks 2..18:   a, b, c fire together (over-driving)")
print()


def schedule(tick):
    phase = tick % 20
    if phase == 0:
        return {c}
    if phase % 2 == 0:
        return {a, b, c}
    return frozenset()


print("=== events ===")
for tick in range(60):
    record, events = growth_tick(net, state, schedule(tick))
    for event in events:
        print(f"  tick {event.tick:>2}: {event.kind:<20} affected={event.affected}")

print()
print("=== end state of the target's original paths ===")
for source, name in ((a, "a (group only)"), (b, "b (group only)"),
                     (c, "c (also fires alone)")):
    syn = net.synapse_between(source, main)
    print(f"  {name:<22} open fraction {syn.open_fraction:.2f}")
intermediary = max(net.neurons)
print(f"  intermediary neuron {intermediary}: threshold "
      f"{net.neurons[intermediary].threshold:.0f}, fed by "
      f"{sorted(s.pre for s in net.incoming(intermediary))}")
open_paths = [s.pre for s in net.incoming(main) if s.open_fraction > 0]
print(f"  target now hears {len(open_paths)} open paths: {sorted(open_paths)}")
print()
print("  The group's combined input now produces one unit signal again, so")
print("  the system is balanced without losing the independent firer.")
