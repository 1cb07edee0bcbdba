"""Junior-simplex lattice geometry for cyclic quotients 1/r(a,b,c).

Points are kept as integer triples scaled by r (so each lattice point of
the height-one slice has coordinate sum r); all predicates are exact.
For a triangle with scaled vertices P,Q,S the normalized lattice area is
|cross((Q-P)_xy, (S-P)_xy)| / r, an integer, and a full triangulation of
the junior simplex has r triangles of area one.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import (
    BoundaryEdge, InvalidGroup, InvalidTriangulation, NotFlippable, UnknownEdge,
)

Point = tuple[int, int, int]
Triangle = tuple[int, int, int]
Edge = tuple[int, int]


class GroupData(NamedTuple):
    a: int
    b: int
    c: int

    @property
    def r(self) -> int:
        return self.a + self.b + self.c

    @staticmethod
    def of(a: int, b: int, c: int) -> "GroupData":
        if min(a, b, c) < 1:
            raise InvalidGroup(f"weights must be positive, got {(a, b, c)}")
        if math.gcd(math.gcd(a, b), c) != 1:
            raise InvalidGroup(f"non-primitive triple {(a, b, c)}: gcd > 1")
        return GroupData(a, b, c)


def junior_points(g: GroupData) -> list[Point]:
    """Corners plus the height-one orbit points, scaled by r.

    The point for group element i is (ia mod r, ib mod r, ic mod r); it is
    junior exactly when those residues sum to r.
    """
    r = g.r
    corners = [(r, 0, 0), (0, r, 0), (0, 0, r)]
    rest = set()
    for i in range(1, r):
        p = (i * g.a % r, i * g.b % r, i * g.c % r)
        if sum(p) == r and p not in corners:
            rest.add(p)
    return corners + sorted(rest)


class Triangulation:
    """A set of triangles over a fixed ordered point list."""

    __slots__ = ("points", "r", "triangles", "_edge_tris")

    def __init__(self, points: Iterable[Point], r: int, triangles: Iterable[Triangle]):
        self.points = tuple(tuple(p) for p in points)
        self.r = int(r)
        self.triangles = frozenset(tuple(sorted(t)) for t in triangles)
        edge_tris: dict[Edge, list[Triangle]] = {}
        for t in sorted(self.triangles):
            for e in triangle_edges(t):
                edge_tris.setdefault(e, []).append(t)
        self._edge_tris = edge_tris

    def key(self) -> tuple:
        return tuple(sorted(self.triangles))

    def edges(self) -> list[Edge]:
        return sorted(self._edge_tris)

    def interior_edges(self) -> list[Edge]:
        return sorted(e for e, ts in self._edge_tris.items() if len(ts) == 2)

    def boundary_edges(self) -> list[Edge]:
        return sorted(e for e, ts in self._edge_tris.items() if len(ts) == 1)

    def incident(self, e: Edge) -> list[Triangle]:
        e = tuple(sorted(e))
        if e not in self._edge_tris:
            raise UnknownEdge(f"{e} is not an edge of the triangulation")
        return self._edge_tris[e]

    def is_interior(self, e: Edge) -> bool:
        return len(self.incident(e)) == 2

    def __repr__(self):
        return f"Triangulation(r={self.r}, triangles={len(self.triangles)})"


def triangle_edges(t: Triangle) -> list[Edge]:
    i, j, k = t
    return [(i, j), (i, k), (j, k)]


def _xy(p: Point) -> tuple[int, int]:
    return (p[0], p[1])


def _cross(o, u, v) -> int:
    return (u[0] - o[0]) * (v[1] - o[1]) - (u[1] - o[1]) * (v[0] - o[0])


def normalized_area(t: Triangulation | None, pts: tuple[Point, Point, Point], r: int) -> int:
    p, q, s = (_xy(x) for x in pts)
    a2 = abs(_cross(p, q, s))
    if a2 % r:
        raise InvalidTriangulation(f"non-lattice triangle {pts}")
    return a2 // r


def _strictly_inside(pt, tri) -> bool:
    """pt strictly inside triangle, both given as integer xy pairs (any common scale)."""
    a, b, c = tri
    d1 = _cross(a, b, pt)
    d2 = _cross(b, c, pt)
    d3 = _cross(c, a, pt)
    return (d1 > 0 and d2 > 0 and d3 > 0) or (d1 < 0 and d2 < 0 and d3 < 0)


def _on_segment(pt, a, b) -> bool:
    if _cross(a, b, pt) != 0:
        return False
    return (min(a[0], b[0]) <= pt[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= pt[1] <= max(a[1], b[1]))


def _proper_cross(a, b, c, d) -> bool:
    d1 = _cross(c, d, a)
    d2 = _cross(c, d, b)
    d3 = _cross(a, b, c)
    d4 = _cross(a, b, d)
    return ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and d1 != 0 and d2 != 0 and d3 != 0 and d4 != 0


def _open_overlap(t1_pts, t2_pts) -> bool:
    a = [_xy(p) for p in t1_pts]
    b = [_xy(p) for p in t2_pts]
    for pt in a:
        if _strictly_inside(pt, b):
            return True
    for pt in b:
        if _strictly_inside(pt, a):
            return True
    for i in range(3):
        for j in range(3):
            if _proper_cross(a[i], a[(i + 1) % 3], b[j], b[(j + 1) % 3]):
                return True
    # containment with all vertices on the boundary: test tripled centroids
    cent_a = (sum(p[0] for p in a), sum(p[1] for p in a))
    cent_b = (sum(p[0] for p in b), sum(p[1] for p in b))
    if _strictly_inside(cent_a, [(3 * x, 3 * y) for x, y in b]):
        return True
    if _strictly_inside(cent_b, [(3 * x, 3 * y) for x, y in a]):
        return True
    return False


def validate(t: Triangulation) -> list[tuple]:
    """All triangulation invariants; empty list when everything holds."""
    out: list[tuple] = []
    n = len(t.points)
    r = t.r
    for p in t.points:
        if len(p) != 3 or min(p) < 0 or sum(p) != r:
            out.append(("BadPoint", p))
    tris = sorted(t.triangles)
    used = set()
    total = 0
    for tri in tris:
        if len(set(tri)) != 3 or max(tri) >= n or min(tri) < 0:
            out.append(("BadIndex", tri))
            continue
        used.update(tri)
        pts = tuple(t.points[i] for i in tri)
        area = normalized_area(t, pts, r)
        if area == 0:
            out.append(("Degenerate", tri))
            continue
        total += area
        if area != 1:
            out.append(("NotUnimodular", tri, area))
    for idx in range(n):
        if idx not in used:
            out.append(("NotFull", idx))
    if len(t.triangles) != r:
        out.append(("WrongCount", len(t.triangles), r))
    if total != r:
        out.append(("AreaMismatch", total, r))
    for e, inc in sorted(t._edge_tris.items()):
        if len(inc) > 2:
            out.append(("OverusedEdge", e))
    for i in range(len(tris)):
        for j in range(i + 1, len(tris)):
            p1 = tuple(t.points[x] for x in tris[i])
            p2 = tuple(t.points[x] for x in tris[j])
            if _open_overlap(p1, p2):
                out.append(("Overlap", tris[i], tris[j]))
    return out


def seed_triangulation(points: list[Point]) -> Triangulation:
    """Deterministic full triangulation by incremental point insertion."""
    r = sum(points[0])
    triangles = {(0, 1, 2)}
    for idx in range(3, len(points)):
        p = _xy(points[idx])
        placed = False
        for tri in sorted(triangles):
            a, b, c = (_xy(points[i]) for i in tri)
            if _strictly_inside(p, (a, b, c)):
                triangles.remove(tri)
                i, j, k = tri
                triangles.update({tuple(sorted((i, j, idx))),
                                  tuple(sorted((j, k, idx))),
                                  tuple(sorted((i, k, idx)))})
                placed = True
                break
        if placed:
            continue
        # on an edge: split every triangle sharing that edge
        for e in sorted({e for tri in triangles for e in triangle_edges(tri)}):
            u, v = e
            if not _on_segment(p, _xy(points[u]), _xy(points[v])):
                continue
            for tri in [tr for tr in triangles if u in tr and v in tr]:
                (w,) = [x for x in tri if x not in e]
                triangles.remove(tri)
                triangles.update({tuple(sorted((u, idx, w))),
                                  tuple(sorted((idx, v, w)))})
            placed = True
            break
        if not placed:
            raise InvalidTriangulation(f"point {points[idx]} not inside the simplex")
    return Triangulation(points, r, triangles)


class QuadRelation(NamedTuple):
    alpha: int
    beta: int

    @property
    def loops(self) -> int:
        return max(self.alpha, self.beta) - 1


def quad_relation(t: Triangulation, e: Edge) -> QuadRelation:
    """The integers (alpha, beta) with v2 + v4 = alpha*v1 + beta*v3, where
    {v1, v3} = e with v1 < v3 in point order and v2, v4 are the opposite
    vertices of the two incident triangles."""
    e = tuple(sorted(e))
    inc = t.incident(e)
    if len(inc) != 2:
        raise BoundaryEdge(f"edge {e} lies on the simplex boundary")
    v1, v3 = (t.points[i] for i in e)
    opp = []
    for tri in inc:
        (w,) = [x for x in tri if x not in e]
        opp.append(t.points[w])
    target = tuple(opp[0][i] + opp[1][i] for i in range(3))
    alpha = beta = None
    for c0, c1 in ((0, 1), (0, 2), (1, 2)):
        det = v1[c0] * v3[c1] - v1[c1] * v3[c0]
        if det == 0:
            continue
        alpha_f = Fraction(target[c0] * v3[c1] - target[c1] * v3[c0], det)
        beta_f = Fraction(v1[c0] * target[c1] - v1[c1] * target[c0], det)
        alpha, beta = alpha_f, beta_f
        break
    if alpha is None or alpha.denominator != 1 or beta.denominator != 1:
        raise InvalidTriangulation(f"no integral quadrilateral relation at {e}")
    alpha, beta = int(alpha), int(beta)
    for i in range(3):
        if alpha * v1[i] + beta * v3[i] != target[i]:
            raise InvalidTriangulation(f"inconsistent quadrilateral relation at {e}")
    if alpha + beta != 2:
        raise InvalidTriangulation(f"relation at {e} violates alpha + beta = 2")
    return QuadRelation(alpha, beta)


def flippable(t: Triangulation, e: Edge) -> bool:
    return quad_relation(t, e) == QuadRelation(1, 1)


def flip(t: Triangulation, e: Edge) -> Triangulation:
    """Exchange the diagonal of the lattice parallelogram around e."""
    e = tuple(sorted(e))
    rel = quad_relation(t, e)
    if rel != QuadRelation(1, 1):
        raise NotFlippable(f"edge {e} has relation {rel}", relation=rel)
    inc = t.incident(e)
    opp = []
    for tri in inc:
        (w,) = [x for x in tri if x not in e]
        opp.append(w)
    v2, v4 = opp
    new = set(t.triangles)
    for tri in inc:
        new.remove(tri)
    new.add(tuple(sorted((v2, v4, e[0]))))
    new.add(tuple(sorted((v2, v4, e[1]))))
    return Triangulation(t.points, t.r, new)
