"""Core quiver, cycle and derivative behaviour."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from flipquiver.errors import NodeHasLoop, QuiverHasTwoCycles
from flipquiver.quiver import (
    Arrow, Potential, Quiver, QwP, canonical_rotation, cycles_up_to,
    cyclic_derivative, degree_profile, fz_mutate, quiver_equal,
)

from corpus import loopless_nodes, random_two_cycle_free_quiver


def test_fz_mutate_five_node_example():
    # star = 0, and a,b,c,d = 1,2,3,4 around it
    q = Quiver(range(5), [
        Arrow(0, 1, 0), Arrow(1, 0, 2), Arrow(2, 0, 4),
        Arrow(3, 3, 0), Arrow(4, 4, 1), Arrow(5, 2, 3),
    ])
    m = fz_mutate(q, 0)
    got = sorted((a.tail, a.head) for a in m.arrows)
    assert got == sorted([(0, 1), (2, 0), (4, 0), (0, 3), (3, 4), (1, 2)])


def test_fz_mutate_single_arrow():
    q = Quiver([0, 1], [Arrow(0, 0, 1)])
    m = fz_mutate(q, 0)
    assert [(a.tail, a.head) for a in m.arrows] == [(1, 0)]


def test_fz_mutate_involution_on_corpus():
    rng = random.Random(20260809)
    checked = 0
    while checked < 50:
        q = random_two_cycle_free_quiver(rng)
        ks = loopless_nodes(q)
        if not ks:
            continue
        k = rng.choice(ks)
        assert quiver_equal(fz_mutate(fz_mutate(q, k), k), q)
        checked += 1


def test_fz_mutate_preconditions():
    q = Quiver([0, 1], [Arrow(0, 0, 1), Arrow(1, 1, 0)])
    with pytest.raises(QuiverHasTwoCycles):
        fz_mutate(q, 0)
    q2 = Quiver([0, 1], [Arrow(0, 0, 0), Arrow(1, 0, 1)])
    with pytest.raises(NodeHasLoop):
        fz_mutate(q2, 0)


def test_quiver_equal_ignores_listing_order_and_ids():
    a = Quiver([0, 1], [Arrow(5, 0, 1), Arrow(9, 1, 0)])
    b = Quiver([0, 1], [Arrow(0, 1, 0), Arrow(1, 0, 1)])
    assert quiver_equal(a, b)
    c = Quiver([0, 1], [Arrow(0, 0, 1), Arrow(1, 0, 1)])
    assert not quiver_equal(b, c)


def test_cycles_up_to_two_cycle():
    q = Quiver([0, 1], [Arrow(0, 0, 1), Arrow(1, 1, 0)])
    assert cycles_up_to(q, 2) == [(0, 1)]


def test_cycles_up_to_loop_powers():
    q = Quiver([0], [Arrow(0, 0, 0)])
    assert cycles_up_to(q, 3) == [(0,), (0, 0), (0, 0, 0)]


def brute_force_cycles(q: Quiver, max_len: int):
    """Independent closed-walk enumeration by breadth-first word growth."""
    words = [((a.id,), a.tail, a.head) for a in q.arrows]
    out = set()
    for _ in range(max_len):
        nxt = []
        for word, start, at in words:
            if at == start:
                out.add(canonical_rotation(word))
            if len(word) < max_len:
                for a in q.arrows:
                    if a.tail == at:
                        nxt.append((word + (a.id,), start, a.head))
        words = nxt
    return sorted(out, key=lambda w: (len(w), w))


def test_cycles_up_to_matches_brute_force_on_corpus():
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randint(1, 5)
        arrows = [Arrow(i, rng.randrange(n), rng.randrange(n))
                  for i in range(rng.randint(1, 10))]
        q = Quiver(range(n), arrows)
        assert cycles_up_to(q, 4) == brute_force_cycles(q, 4)


def test_cyclic_derivative_two_cycle():
    q = Quiver([1, 3], [Arrow(0, 1, 3), Arrow(1, 3, 1)])
    w = Potential({(0, 1): Fraction(1)})
    assert cyclic_derivative(q, w, 1) == {(0,): Fraction(1)}
    # no occurrence -> zero
    q2 = Quiver([0, 1], [Arrow(0, 0, 1), Arrow(1, 1, 0), Arrow(2, 0, 1)])
    w2 = Potential({(0, 1): Fraction(1)})
    assert cyclic_derivative(q2, w2, 2) == {}


def test_cyclic_derivative_loop_squared():
    q = Quiver([0], [Arrow(0, 0, 0)])
    w = Potential({(0, 0): Fraction(1)})
    assert cyclic_derivative(q, w, 0) == {(0,): Fraction(2)}


def test_potential_cancellation_roundtrip():
    w = Potential({(0, 1, 2): Fraction(3, 2)})
    w2 = w.add((1, 2, 0), Fraction(1))       # same rotation class
    assert w2.terms == {(0, 1, 2): Fraction(5, 2)}
    w3 = w2.add((2, 0, 1), Fraction(-5, 2))
    assert not w3
    assert w.add((0, 1, 2), -Fraction(3, 2)) == Potential()


def test_degree_profile():
    two_cycle = Quiver([0, 1], [Arrow(0, 0, 1), Arrow(1, 1, 0)])
    assert degree_profile(two_cycle) == ((1, 1), (1, 1))
    loop = Quiver([0], [Arrow(0, 0, 0)])
    assert degree_profile(loop) == ((1, 1),)


def test_degree_profile_relabelling_invariant():
    rng = random.Random(11)
    for _ in range(20):
        q = random_two_cycle_free_quiver(rng)
        perm = sorted(q.nodes)
        shuffled = list(perm)
        rng.shuffle(shuffled)
        relabel = dict(zip(perm, shuffled))
        q2 = Quiver(q.nodes, [Arrow(a.id, relabel[a.tail], relabel[a.head]) for a in q.arrows])
        assert degree_profile(q) == degree_profile(q2)
