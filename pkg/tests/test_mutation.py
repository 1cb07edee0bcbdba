"""QwP mutation against the published worked example and seeded corpora."""

from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction

import pytest

from flipquiver.errors import NodeHasLoop
from flipquiver.mutation import premutate, qwp_mutate, reduce
from flipquiver.quiver import (
    Arrow, Potential, Quiver, QwP, canonical_node_cycle, quiver_equal,
    tail_sequence,
)

from corpus import loopless_nodes, random_reduced_qwp, random_two_cycle_free_quiver
from paper_data import (
    FINAL_ARROW_PAIRS, FINAL_NODE_SEQS, INTERMEDIATE_NODE_SEQS,
    doubled_five_node_qwp,
)


def node_seqs(p: QwP):
    return [canonical_node_cycle(tail_sequence(p.quiver, w)) for w in p.potential.terms]


def test_premutate_worked_example_intermediate():
    p = doubled_five_node_qwp()
    mid = premutate(p, 0)
    assert len(mid.potential) == 18
    assert sorted(node_seqs(mid)) == INTERMEDIATE_NODE_SEQS


def test_premutate_plain_two_cycle_reverses_only():
    # The lone pair through k closes a 2-cycle; with no potential term
    # traversing it, no loop composite is created and the mutation just
    # reverses the two arrows.
    q = Quiver([0, 1], [Arrow(0, 0, 1), Arrow(1, 1, 0)])
    p = QwP(q, Potential())
    mid = premutate(p, 0)
    got = sorted((a.tail, a.head) for a in mid.quiver.arrows)
    assert got == sorted([(1, 0), (0, 1)])
    assert not mid.potential


def test_premutate_two_cycle_passage_makes_loop_composite():
    # A term travelling 1 -> 0 -> 1 forces the loop composite at 1 and
    # its correction term.
    q = Quiver([0, 1, 2], [Arrow(0, 0, 1), Arrow(1, 1, 0),
                           Arrow(2, 1, 2), Arrow(3, 2, 1)])
    p = QwP(q, Potential({(1, 0, 2, 3): Fraction(1)}))  # 1->0->1->2->1
    mid = premutate(p, 0)
    got = Counter((a.tail, a.head) for a in mid.quiver.arrows)
    assert got[(1, 1)] == 1
    assert len(mid.potential) == 2
    seqs = sorted(node_seqs(mid))
    assert canonical_node_cycle((1, 1, 2)) in seqs       # rewritten term
    assert canonical_node_cycle((1, 0, 1)) in seqs       # correction term


def test_premutate_term_count_identity():
    rng = random.Random(99)
    checked = 0
    while checked < 30:
        q = random_two_cycle_free_quiver(rng)
        ks = loopless_nodes(q)
        if not ks:
            continue
        k = rng.choice(ks)
        p = random_reduced_qwp(rng, quiver=q)
        mid = premutate(p, k)
        expect = len(p.potential) + len(q.arrows_in(k)) * len(q.arrows_out(k))
        assert len(mid.potential) == expect
        checked += 1


def test_qwp_mutate_worked_example_final():
    p = doubled_five_node_qwp()
    out = qwp_mutate(p, 0)
    assert sorted((a.tail, a.head) for a in out.quiver.arrows) == FINAL_ARROW_PAIRS
    assert set(node_seqs(out)) == FINAL_NODE_SEQS
    assert len(out.potential) == 6
    assert out.is_reduced


def test_qwp_mutate_worked_example_involutive_at_quiver_level():
    p = doubled_five_node_qwp()
    once = qwp_mutate(p, 0)
    twice = qwp_mutate(once, 0)
    assert quiver_equal(twice.quiver, p.quiver)


def test_reduce_leaves_reduced_input_unchanged():
    rng = random.Random(3)
    for _ in range(20):
        p = random_reduced_qwp(rng)
        out = reduce(p)
        assert out.potential == p.potential
        assert quiver_equal(out.quiver, p.quiver)


def test_reduce_eliminates_plain_two_cycle_term():
    q = Quiver([0, 1], [Arrow(0, 0, 1), Arrow(1, 1, 0)])
    p = QwP(q, Potential({(0, 1): Fraction(2)}))
    out = reduce(p)
    assert not out.quiver.arrows
    assert not out.potential


def test_mutation_requires_loopless_node():
    q = Quiver([0, 1], [Arrow(0, 0, 0), Arrow(1, 0, 1), Arrow(2, 1, 0)])
    with pytest.raises(NodeHasLoop):
        qwp_mutate(QwP(q, Potential()), 0)
