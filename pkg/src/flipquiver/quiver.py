"""Quivers, cycles and potentials over exact rational coefficients.

A quiver is a labelled directed multigraph; loops, parallel arrows and
2-cycles are all allowed.  Cycles are stored as tuples of arrow ids in
their canonical rotation (lexicographically least), and a potential is a
finite map from canonical cycles to nonzero rationals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

from .errors import NodeHasLoop, QuiverHasTwoCycles, UnknownArrow, UnknownNode


class Arrow(NamedTuple):
    id: int
    tail: int
    head: int


class Quiver:
    """Immutable directed multigraph with integer node and arrow ids."""

    __slots__ = ("nodes", "arrows", "by_id", "_out", "_in")

    def __init__(self, nodes: Iterable[int], arrows: Iterable[Arrow]):
        self.nodes = frozenset(int(n) for n in nodes)
        arrs = tuple(Arrow(int(a[0]), int(a[1]), int(a[2])) for a in arrows)
        self.arrows = arrs
        by_id = {}
        out = {n: [] for n in self.nodes}
        inn = {n: [] for n in self.nodes}
        for a in arrs:
            if a.tail not in self.nodes or a.head not in self.nodes:
                raise UnknownNode(f"arrow {a} references a node outside {sorted(self.nodes)}")
            if a.id in by_id:
                raise UnknownArrow(f"duplicate arrow id {a.id}")
            by_id[a.id] = a
            out[a.tail].append(a)
            inn[a.head].append(a)
        self.by_id = by_id
        self._out = {n: tuple(v) for n, v in out.items()}
        self._in = {n: tuple(v) for n, v in inn.items()}

    # -- basic queries --------------------------------------------------

    def arrow(self, arrow_id: int) -> Arrow:
        try:
            return self.by_id[arrow_id]
        except KeyError:
            raise UnknownArrow(f"no arrow with id {arrow_id}") from None

    def arrows_out(self, node: int) -> tuple[Arrow, ...]:
        self._check_node(node)
        return self._out[node]

    def arrows_in(self, node: int) -> tuple[Arrow, ...]:
        self._check_node(node)
        return self._in[node]

    def loops_at(self, node: int) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows_out(node) if a.head == node)

    def has_loop(self, node: int) -> bool:
        return bool(self.loops_at(node))

    def has_two_cycle(self) -> bool:
        pairs = {(a.tail, a.head) for a in self.arrows}
        return any(t != h and (h, t) in pairs for t, h in pairs)

    def next_arrow_id(self) -> int:
        return max(self.by_id, default=-1) + 1

    def _check_node(self, node: int) -> None:
        if node not in self.nodes:
            raise UnknownNode(f"no node {node}")

    def __repr__(self):
        return f"Quiver(nodes={sorted(self.nodes)}, arrows={len(self.arrows)})"


def quiver_equal(a: Quiver, b: Quiver) -> bool:
    """Labelled equality: same node set, same multiset of (tail, head) pairs."""
    if a.nodes != b.nodes:
        return False
    return sorted((x.tail, x.head) for x in a.arrows) == sorted((x.tail, x.head) for x in b.arrows)


def quiver_key(q: Quiver) -> tuple:
    """Hashable canonical form under quiver_equal."""
    return (tuple(sorted(q.nodes)), tuple(sorted((a.tail, a.head) for a in q.arrows)))


def degree_profile(q: Quiver) -> tuple[tuple[int, int], ...]:
    """Sorted multiset of (in-degree, out-degree); a loop adds one to both."""
    return tuple(sorted((len(q.arrows_in(n)), len(q.arrows_out(n))) for n in q.nodes))


# -- cycles ----------------------------------------------------------------

def canonical_rotation(word: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically least rotation of a cyclic word of arrow ids."""
    return min(word[i:] + word[:i] for i in range(len(word)))


def is_cycle(q: Quiver, word: tuple[int, ...]) -> bool:
    if not word:
        return False
    arrs = [q.arrow(i) for i in word]
    return all(arrs[i].head == arrs[(i + 1) % len(arrs)].tail for i in range(len(arrs)))


def tail_sequence(q: Quiver, word: tuple[int, ...]) -> tuple[int, ...]:
    """Node sequence visited by a cycle (tail of each arrow in order)."""
    return tuple(q.arrow(i).tail for i in word)


def canonical_node_cycle(nodes: tuple[int, ...]) -> tuple[int, ...]:
    return min(nodes[i:] + nodes[:i] for i in range(len(nodes)))


def cycles_up_to(q: Quiver, max_len: int) -> list[tuple[int, ...]]:
    """All cycles of length <= max_len, one canonical representative per
    rotation class, in deterministic (length, word) order."""
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    found = set()
    ids = sorted(q.by_id)
    for start in ids:
        a0 = q.by_id[start]
        # only walks whose minimal arrow id is the start arrow
        stack = [(a0.head, (start,))]
        while stack:
            node, word = stack.pop()
            if node == a0.tail:
                found.add(canonical_rotation(word))
            if len(word) < max_len:
                for nxt in q.arrows_out(node):
                    if nxt.id >= start:
                        stack.append((nxt.head, word + (nxt.id,)))
    return sorted(found, key=lambda w: (len(w), w))


# -- potentials --------------------------------------------------------------

class Potential:
    """Finite rational combination of cycles, up to rotation of each cycle."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        acc: dict[tuple[int, ...], Fraction] = {}
        for word, coef in (terms or {}).items():
            c = Fraction(coef)
            if c == 0:
                continue
            key = canonical_rotation(tuple(word))
            c += acc.get(key, 0)
            if c == 0:
                acc.pop(key, None)
            else:
                acc[key] = c
        self.terms = acc

    @staticmethod
    def zero() -> "Potential":
        return Potential()

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Potential) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def support(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.terms)

    def add(self, word: tuple[int, ...], coef) -> "Potential":
        merged = dict(self.terms)
        key = canonical_rotation(tuple(word))
        c = merged.get(key, Fraction(0)) + Fraction(coef)
        if c == 0:
            merged.pop(key, None)
        else:
            merged[key] = c
        return Potential(merged)

    def without(self, word: tuple[int, ...]) -> "Potential":
        key = canonical_rotation(tuple(word))
        merged = {w: c for w, c in self.terms.items() if w != key}
        return Potential(merged)

    def max_degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __repr__(self):
        return f"Potential({len(self.terms)} terms)"


class QwP:
    """A quiver together with a potential on it."""

    __slots__ = ("quiver", "potential")

    def __init__(self, quiver: Quiver, potential: Potential | None = None):
        potential = potential or Potential()
        for word in potential.terms:
            if not is_cycle(quiver, word):
                raise UnknownArrow(f"potential term {word} is not a cycle of the quiver")
        self.quiver = quiver
        self.potential = potential

    @property
    def is_reduced(self) -> bool:
        return all(len(w) != 2 for w in self.potential.terms)

    def __repr__(self):
        return f"QwP({self.quiver!r}, {self.potential!r})"


def canonicalize_qwp(p: QwP) -> QwP:
    """Relabel arrows to the canonical ids: sorted by (tail, head), ties by
    old id.  Two quiver_equal QwPs canonicalize onto the same arrow ids."""
    order = sorted(p.quiver.arrows, key=lambda a: (a.tail, a.head, a.id))
    remap = {a.id: i for i, a in enumerate(order)}
    new_arrows = [Arrow(i, a.tail, a.head) for i, a in enumerate(order)]
    new_terms = {tuple(remap[x] for x in w): c for w, c in p.potential.terms.items()}
    return QwP(Quiver(p.quiver.nodes, new_arrows), Potential(new_terms))


def cyclic_derivative(q: Quiver, w: Potential, arrow_id: int) -> dict[tuple[int, ...], Fraction]:
    """Cyclic derivative of a potential in the direction of one arrow.

    Each occurrence of the arrow in a term c*b1...br at position i
    contributes c*b(i+1)...br b1...b(i-1): a path from the arrow's head
    to its tail.  Returns a map path -> coefficient.
    """
    q.arrow(arrow_id)
    out: dict[tuple[int, ...], Fraction] = {}
    for word, coef in w.terms.items():
        for i, a in enumerate(word):
            if a != arrow_id:
                continue
            path = word[i + 1:] + word[:i]
            c = out.get(path, Fraction(0)) + coef
            if c == 0:
                out.pop(path, None)
            else:
                out[path] = c
    return out


# -- Fomin-Zelevinsky mutation ----------------------------------------------

def fz_mutate(q: Quiver, k: int) -> Quiver:
    """Plain quiver mutation at a loopless node of a 2-cycle-free quiver.

    Compose pairs through k, reverse all arrows at k, then cancel the
    maximal number of opposite-arrow pairs among the new arrows.
    """
    if k not in q.nodes:
        raise UnknownNode(f"no node {k}")
    if q.has_two_cycle():
        raise QuiverHasTwoCycles("quiver has a 2-cycle")
    if q.has_loop(k):
        raise NodeHasLoop(f"node {k} has a loop")

    ins = sorted((a for a in q.arrows_in(k)), key=lambda a: a.id)
    outs = sorted((a for a in q.arrows_out(k)), key=lambda a: a.id)
    fresh = q.next_arrow_id()

    kept = [a for a in q.arrows if a.tail != k and a.head != k]
    new = []
    for g in sorted(ins + outs, key=lambda a: a.id):
        new.append(Arrow(fresh, g.head, g.tail))
        fresh += 1
    for alpha in ins:
        for beta in outs:
            new.append(Arrow(fresh, alpha.tail, beta.head))
            fresh += 1

    # cancel 2-cycles created by the new arrows against whatever opposes them
    arrows = kept + new
    changed = True
    while changed:
        changed = False
        for a in sorted(new, key=lambda x: x.id):
            if a not in arrows:
                continue
            opp = sorted((b for b in arrows if b.tail == a.head and b.head == a.tail and b.tail != b.head),
                         key=lambda b: b.id)
            if opp:
                arrows.remove(a)
                arrows.remove(opp[0])
                changed = True
    return Quiver(q.nodes, arrows)
