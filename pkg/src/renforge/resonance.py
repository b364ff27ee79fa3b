"""Standing-wave search: forward activation, terminal reflection, resonance.

A forward wave spreads from the seed nodes along open synapses; wherever it
reaches a terminal (a node with no open outgoing connections) the arrived
signal is reflected back over the already-traversed edges.  Edges carrying
both directions resonate, and the resonating edges mark the recognized
search path.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .core_net import Network
from .errors import InvalidCombinationError, InvalidParameterError, NotFoundError

DEFAULT_MAX_DEPTH = 32


def network_fingerprint(network: Network) -> str:
    """Stable digest of the network snapshot a report was computed over."""
    return hashlib.sha256(network.to_json().encode("utf-8")).hexdigest()


def find_terminals(network: Network) -> frozenset[int]:
    """Nodes with zero open outgoing synapses; cycles have none."""
    return frozenset(nid for nid in network.neurons
                     if not any(s.open_fraction > 0.0 for s in network.outgoing(nid)))


@dataclass(frozen=True)
class ResonanceReport:
    forward_visits: dict
    backward_visits: dict
    resonance: dict
    recognized_path: frozenset
    terminals_hit: frozenset
    seeds: frozenset
    max_depth: int
    network_hash: str


def resonate(network: Network, seeds, max_depth: int = DEFAULT_MAX_DEPTH,
             reflect_refractory: bool = False) -> ResonanceReport:
    """Run one forward/backward search wave from ``seeds``.

    Visit counts are additive wave flows: each seed injects one unit, which
    copies down every open outgoing edge per depth layer, so two flows
    through a shared channel count twice.  The backward pass starts from
    each reflector with the total forward signal that arrived there and
    travels only over forward-visited edges.  With ``reflect_refractory``
    currently refractory neurons also act as reflectors (blocking nodes).
    """
    seed_set = frozenset(seeds)
    if not seed_set:
        raise InvalidParameterError("seeds must be non-empty")
    for nid in seed_set:
        if nid not in network.neurons:
            raise NotFoundError(f"unknown neuron id {nid}")
    if max_depth < 1:
        raise InvalidParameterError(f"max_depth must be >= 1, got {max_depth}")

    reflectors = set(find_terminals(network))
    if reflect_refractory:
        reflectors |= {nid for nid, n in network.neurons.items()
                       if n.refractory_remaining > 0}

    forward: dict[tuple[int, int], int] = {}
    arrivals: dict[int, int] = {}
    activation = {nid: 1 for nid in sorted(seed_set)}
    for nid in sorted(seed_set & reflectors):
        arrivals[nid] = arrivals.get(nid, 0) + 1
    activation = {nid: flow for nid, flow in activation.items()
                  if nid not in reflectors}
    for _ in range(max_depth):
        if not activation:
            break
        next_activation: dict[int, int] = {}
        for nid in sorted(activation):
            flow = activation[nid]
            for syn in network.outgoing(nid):
                if syn.open_fraction <= 0.0:
                    continue
                edge = (nid, syn.post)
                forward[edge] = forward.get(edge, 0) + flow
                next_activation[syn.post] = next_activation.get(syn.post, 0) + flow
        for nid in sorted(next_activation):
            if nid in reflectors:
                arrivals[nid] = arrivals.get(nid, 0) + next_activation[nid]
        activation = {nid: flow for nid, flow in next_activation.items()
                      if nid not in reflectors}

    reverse_index: dict[int, list[tuple[int, int]]] = {}
    for (pre, post) in forward:
        reverse_index.setdefault(post, []).append((pre, post))
    for edges in reverse_index.values():
        edges.sort()

    backward: dict[tuple[int, int], int] = {}
    reflection = {nid: arrivals[nid] for nid in sorted(arrivals)}
    for _ in range(max_depth):
        if not reflection:
            break
        next_reflection: dict[int, int] = {}
        for nid in sorted(reflection):
            flow = reflection[nid]
            for edge in reverse_index.get(nid, ()):
                backward[edge] = backward.get(edge, 0) + flow
                pre = edge[0]
                next_reflection[pre] = next_reflection.get(pre, 0) + flow
        reflection = next_reflection

    resonance = {edge: min(count, backward.get(edge, 0))
                 for edge, count in forward.items()}
    recognized = frozenset(edge for edge, value in resonance.items() if value >= 1)
    return ResonanceReport(
        forward_visits=forward,
        backward_visits=backward,
        resonance=resonance,
        recognized_path=recognized,
        terminals_hit=frozenset(arrivals),
        seeds=seed_set,
        max_depth=max_depth,
        network_hash=network_fingerprint(network),
    )


def combine_searches(report_a: ResonanceReport,
                     report_b: ResonanceReport) -> ResonanceReport:
    """Edgewise sum of two searches over the same network snapshot."""
    if report_a.network_hash != report_b.network_hash:
        raise InvalidCombinationError(
            "reports were computed over different network snapshots")
    forward: dict[tuple[int, int], int] = dict(report_a.forward_visits)
    for edge, count in report_b.forward_visits.items():
        forward[edge] = forward.get(edge, 0) + count
    backward: dict[tuple[int, int], int] = dict(report_a.backward_visits)
    for edge, count in report_b.backward_visits.items():
        backward[edge] = backward.get(edge, 0) + count
    resonance = {edge: min(count, backward.get(edge, 0))
                 for edge, count in forward.items()}
    recognized = frozenset(edge for edge, value in resonance.items() if value >= 1)
    return ResonanceReport(
        forward_visits=forward,
        backward_visits=backward,
        resonance=resonance,
        recognized_path=recognized,
        terminals_hit=report_a.terminals_hit | report_b.terminals_hit,
        seeds=report_a.seeds | report_b.seeds,
        max_depth=max(report_a.max_depth, report_b.max_depth),
        network_hash=report_a.network_hash,
    )


def report_to_json(report: ResonanceReport) -> str:
    edges = [{"pre": pre, "post": post,
              "forward": report.forward_visits[(pre, post)],
              "backward": report.backward_visits.get((pre, post), 0),
              "resonance": report.resonance[(pre, post)],
              "recognized": (pre, post) in report.recognized_path}
             for pre, post in sorted(report.forward_visits)]
    doc = {"seeds": sorted(report.seeds),
           "terminals_hit": sorted(report.terminals_hit),
           "max_depth": report.max_depth,
           "network_hash": report.network_hash,
           "edges": edges}
    return json.dumps(doc)


def report_csv_rows(report: ResonanceReport) -> list[list]:
    """Header plus one row per forward-visited edge, sorted by edge."""
    rows: list[list] = [["pre", "post", "forward", "backward", "resonance"]]
    for pre, post in sorted(report.forward_visits):
        rows.append([pre, post, report.forward_visits[(pre, post)],
                     report.backward_visits.get((pre, post), 0),
                     report.resonance[(pre, post)]])
    return rows
