"""Flip-graph enumeration: breadth-first closure of a triangulation under
edge flips, with the stable node labelling transported along every flip."""

from __future__ import annotations

from collections import deque
from typing import NamedTuple

from .errors import BudgetExceeded, InconsistentLabelling
from .curvequiver import LabelledQuiver, curve_quiver, default_labels
from .toric import Edge, Triangulation, flip, flippable, quad_relation


class FlipNode(NamedTuple):
    triangulation: Triangulation
    labels: dict[int, Edge]


class FlipGraph:
    """Triangulations as nodes (discovery order), flips as edges."""

    def __init__(self, nodes: list[FlipNode], edges: list[tuple[int, int, Edge]]):
        self.nodes = nodes
        self.edges = edges
        self._quivers: dict[int, LabelledQuiver] = {}

    @property
    def seed(self) -> FlipNode:
        return self.nodes[0]

    def __len__(self):
        return len(self.nodes)

    def quiver_at(self, i: int) -> LabelledQuiver:
        if i not in self._quivers:
            node = self.nodes[i]
            self._quivers[i] = curve_quiver(node.triangulation, node.labels)
        return self._quivers[i]

    def neighbours(self, i: int) -> list[tuple[int, Edge]]:
        out = []
        for a, b, e in self.edges:
            if a == i:
                out.append((b, e))
            elif b == i:
                other = self.nodes[b].labels  # edge recorded in a's chart
                out.append((a, self._flipped_in(b, a, e)))
        return out

    def _flipped_in(self, src: int, dst: int, e_src: Edge) -> Edge:
        # the node id is the invariant: look up which edge of dst carries it
        node_id = next(n for n, edge in self.nodes[src].labels.items() if edge == e_src)
        return self.nodes[dst].labels[node_id]


def flippable_edges(t: Triangulation) -> list[Edge]:
    return [e for e in t.interior_edges() if flippable(t, e)]


def flip_graph(t0: Triangulation, budget: int = 10000) -> FlipGraph:
    """Breadth-first closure of t0 under flips, deterministic numbering."""
    seed = FlipNode(t0, default_labels(t0))
    nodes = [seed]
    index = {t0.key(): 0}
    edges: list[tuple[int, int, Edge]] = []
    edge_seen: set[tuple[int, int]] = set()
    queue = deque([0])
    while queue:
        i = queue.popleft()
        node = nodes[i]
        for e in flippable_edges(node.triangulation):
            t2 = flip(node.triangulation, e)
            node_id = next(n for n, edge in node.labels.items() if edge == e)
            inc = node.triangulation.incident(e)
            opp = sorted(set(inc[0]) ^ set(inc[1]))
            new_diag = (opp[0], opp[1])
            labels2 = dict(node.labels)
            labels2[node_id] = new_diag
            key = t2.key()
            if key not in index:
                if len(nodes) >= budget:
                    raise BudgetExceeded(
                        f"flip graph exceeded {budget} nodes",
                        partial=FlipGraph(nodes, edges),
                    )
                index[key] = len(nodes)
                nodes.append(FlipNode(t2, labels2))
                queue.append(index[key])
            else:
                if nodes[index[key]].labels != labels2:
                    raise InconsistentLabelling(
                        f"two flip paths disagree on the labelling of node {index[key]}"
                    )
            j = index[key]
            if (min(i, j), max(i, j)) not in edge_seen:
                edge_seen.add((min(i, j), max(i, j)))
                edges.append((i, j, e))
    return FlipGraph(nodes, edges)
