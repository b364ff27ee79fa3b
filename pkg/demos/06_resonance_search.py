#!/usr/bin/env python3
"""Resonance search: colliding forward and reflected waves mark the path.

A forward wave spreads from the seeds; wherever it reaches a terminal (a
node with nowhere further to go) the arrived signal reflects back over the
same channels.  Edges carrying both directions resonate, like the standing
wave on a rope shaken from both ends, and the resonating edges are the
recognized search path.  Branches that never reach a terminal reflect
nothing and stay unrecognized.
"""

from renforge import Network, combine_searches, find_terminals, resonate

print("=== a forked search with one dead-end cycle ===")
net = Network()
names = {}
def node(label):
    nid = net.add_neuron(1.0)
    names[nid] = label
    return nid

seed = node("seed")
left, right = node("left"), node("right")
loop_a, loop_b = node("loop_a"), node("loop_b")
goal = node("goal")
net.add_synapse(seed, left)
net.add_synapse(seed, right)
net.add_synapse(left, loop_a)
net.add_synapse(loop_a, loop_b)
net.add_synapse(loop_b, loop_a)     # the left branch never terminates
net.add_synapse(right, goal)

print(f"  terminals: {sorted(names[n] for n in find_terminals(net))}")
report = resonate(net, {seed})
print("  edge                    forward backward resonance recognized")
for (pre, post), forward in sorted(report.forward_visits.items()):
    backward = report.backward_visits.get((pre, post), 0)
    tag = "yes" if (pre, post) in report.recognized_path else "no"
    print(f"  {names[pre]:>7} -> {names[post]:<9} {forward:>7} {backward:>8} "
          f"{report.resonance[(pre, post)]:>9} {tag:>10}")
print("  only the branch that found the terminal resonates.")

print()
print("=== two searches combining over a shared channel ===")
net = Network()
names = {}
a, b = node("a"), node("b")
shared, answer = node("shared"), node("answer")
net.add_synapse(a, shared)
net.add_synapse(b, shared)
net.add_synapse(shared, answer)
first = resonate(net, {a})
second = resonate(net, {b})
joint = combine_searches(first, second)
edge = (shared, answer)
print(f"  search from a alone: resonance on shared channel = {first.resonance[edge]}")
print(f"  search from b alone: resonance on shared channel = {second.resonance[edge]}")
print(f"  combined:            resonance on shared channel = {joint.resonance[edge]}")
print("  agreeing searches reinforce the channels they share.")
