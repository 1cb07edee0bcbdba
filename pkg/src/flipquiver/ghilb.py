"""The distinguished crepant triangulation (the G-Hilbert scheme fan).

Each torus-fixed point of the distinguished resolution is a monomial
staircase of size r hitting every character of Z/r exactly once; its
chart cone is cut out by the inequalities v(m) >= v(g(m)) over the border
monomials m, where g(m) is the staircase member with the same character.
The full-dimensional cones slice the junior simplex into the unimodular
triangles returned here; the result is validated before it is returned.
"""

from __future__ import annotations

from .errors import InvalidTriangulation, MeetingOfChampions
from .toric import GroupData, Triangulation, junior_points, validate, _xy, _cross

Monomial = tuple[int, int, int]


def _staircases(size: int) -> list[frozenset[Monomial]]:
    """All downward-closed monomial sets in three variables of a given size."""
    level: set[frozenset[Monomial]] = {frozenset({(0, 0, 0)})}
    for _ in range(size - 1):
        nxt: set[frozenset[Monomial]] = set()
        for s in level:
            for m in s:
                for d in range(3):
                    cand = list(m)
                    cand[d] += 1
                    cand = tuple(cand)
                    if cand in s:
                        continue
                    ok = True
                    for dd in range(3):
                        if cand[dd] > 0:
                            below = list(cand)
                            below[dd] -= 1
                            if tuple(below) not in s:
                                ok = False
                                break
                    if ok:
                        nxt.add(s | {cand})
        level = nxt
    return sorted(level, key=sorted)


def _border(s: frozenset[Monomial]) -> list[Monomial]:
    out = set()
    for m in s:
        for d in range(3):
            cand = list(m)
            cand[d] += 1
            cand = tuple(cand)
            if cand not in s:
                out.add(cand)
    return sorted(out)


def craw_reid(g: GroupData) -> Triangulation:
    """Triangulation of the junior simplex for the distinguished resolution."""
    r = g.r
    weights = (g.a, g.b, g.c)
    points = junior_points(g)

    def char(m: Monomial) -> int:
        return (m[0] * weights[0] + m[1] * weights[1] + m[2] * weights[2]) % r

    triangles = set()
    for s in _staircases(r):
        chars = {}
        for m in s:
            ch = char(m)
            if ch in chars:
                break
            chars[ch] = m
        else:
            ineqs = []
            for m in _border(s):
                rep = chars[char(m)]
                ineqs.append(tuple(m[d] - rep[d] for d in range(3)))
            passing = [i for i, p in enumerate(points)
                       if all(sum(p[d] * w[d] for d in range(3)) >= 0 for w in ineqs)]
            if len(passing) != 3:
                continue
            a, b, c = (points[i] for i in passing)
            if _cross(_xy(a), _xy(b), _xy(c)) == 0:
                continue
            triangles.add(tuple(sorted(passing)))

    t = Triangulation(points, r, triangles)
    violations = validate(t)
    if violations:
        raise MeetingOfChampions(
            f"chart cones of 1/{r}{weights} do not assemble into a triangulation: "
            f"{violations[:3]}"
        )
    return t
