#!/usr/bin/env python3
"""From coarse binary units to refined graded ones.

A single threshold neuron is all-or-nothing.  Wiring its inputs through
intermediary layers leaves every unit binary but makes each original input
worth only a fraction of a unit signal, so the assembly behaves like an
analogue-weighted neuron built from reliable binary parts.
"""

from renforge import (Network, RefinedSpec, build_refined, effective_weight,
                      expand_weighted, min_firing_set_size)

print("=== A direct unit: 5 inputs, threshold 4 ===")
net = Network()
inputs = [net.add_neuron(1.0) for _ in range(5)]
main = net.add_neuron(4.0)
for nid in inputs:
    net.add_synapse(nid, main, 1.0, 1)
for k in (3, 4, 5):
    net.reset_dynamics()
    fired = main in net.step(inputs[:k]).fired
    print(f"  {k} of 5 inputs firing -> main fires: {fired}")

print()
print("=== The problem with many direct inputs ===")
print("  25 direct inputs against threshold 4: any 4 of 25 trigger the unit,")
print("  so the concept it represents barely means anything.")

print()
print("=== Refined wiring: 25 inputs, groups of 5, 4-of-5 everywhere ===")
spec = RefinedSpec(input_count=25, group_size=5, group_threshold=4,
                   main_threshold=4)
net = Network()
main, inputs, intermediaries = build_refined(net, spec)
print(f"  built {len(inputs)} inputs, {len(intermediaries)} intermediaries, 1 main")
print(f"  minimum simultaneous inputs to fire the main: {min_firing_set_size(spec)}")
print(f"  (halfway between 4 and 25, so firing the unit means much more)")

sixteen = [inputs[g * 5 + k] for g in range(4) for k in range(4)]
net.reset_dynamics()
net.step(sixteen)                     # intermediaries fire on this tick
fired = main in net.step(sixteen).fired   # main fires one hop later
print(f"  driving one minimal 16-input set -> main fires: {fired}")

print()
print("=== Each input is now worth a fraction of a signal ===")
print(f"  through one 4-of-5 intermediary: {effective_weight(spec, [0])}")
nested = RefinedSpec(125, 5, 4, 4, layers=2)
print(f"  through two nested 4-of-5 layers: {effective_weight(nested, [7, 1])}")
print(f"  two-layer minimum firing set over 125 inputs: {min_firing_set_size(nested)}")

print()
print("=== Weighted units need no weights, just parallel connections ===")
net = Network()
src = net.add_neuron(1.0)
gate = net.add_neuron(3.0)
expand_weighted(net, src, gate, 3)
record = net.step([src])
print(f"  one weight-3 connection = 3 unit inputs: delivered "
      f"{record.input_sums[gate]}, gate fires: {gate in record.fired}")
