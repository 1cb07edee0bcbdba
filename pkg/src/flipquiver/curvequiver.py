"""Curve quivers: one node per interior edge, 2-cycles from shared
triangles, loops from the quadrilateral relations."""

from __future__ import annotations

from typing import NamedTuple

from .errors import BoundaryEdge, InvalidTriangulation, UnknownEdge
from .quiver import Arrow, Quiver
from .toric import Edge, Triangulation, quad_relation, triangle_edges, validate


class LabelledQuiver(NamedTuple):
    quiver: Quiver
    labels: dict[int, Edge]          # node id -> interior edge
    triangulation: Triangulation


def default_labels(t: Triangulation) -> dict[int, Edge]:
    return dict(enumerate(t.interior_edges()))


def curve_quiver(t: Triangulation, labels: dict[int, Edge] | None = None) -> LabelledQuiver:
    """Extract the curve quiver of a triangulation.

    Node ids come from the given labelling (or sorted interior-edge order);
    the labelling is what stays stable across flips.
    """
    bad = validate(t)
    if bad:
        raise InvalidTriangulation("triangulation does not validate", violations=bad)
    interior = t.interior_edges()
    if labels is None:
        labels = default_labels(t)
    if sorted(labels.values()) != interior:
        raise InvalidTriangulation("labels do not cover the interior edges")
    node_of = {e: n for n, e in labels.items()}

    pairs: set[tuple[int, int]] = set()
    for tri in sorted(t.triangles):
        onboard = [e for e in triangle_edges(tri) if e in node_of]
        for i in range(len(onboard)):
            for j in range(i + 1, len(onboard)):
                u, v = node_of[onboard[i]], node_of[onboard[j]]
                pairs.add((u, v))
                pairs.add((v, u))
    arrow_pairs = sorted(pairs)
    for n, e in sorted(labels.items()):
        arrow_pairs.extend([(n, n)] * quad_relation(t, e).loops)
    arrow_pairs.sort()
    arrows = [Arrow(i, t_, h) for i, (t_, h) in enumerate(arrow_pairs)]
    return LabelledQuiver(Quiver(labels.keys(), arrows), dict(labels), t)


def node_for_edge(lq: LabelledQuiver, e: Edge) -> int:
    e = tuple(sorted(e))
    for n, edge in lq.labels.items():
        if edge == e:
            return n
    inc = lq.triangulation.incident(e)   # raises UnknownEdge when absent
    if len(inc) == 1:
        raise BoundaryEdge(f"edge {e} lies on the simplex boundary")
    raise UnknownEdge(f"edge {e} carries no node")
