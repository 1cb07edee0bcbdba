"""Reference data frozen from the published worked examples.

All potentials are recorded as node sequences (the tail of each arrow in
cycle order, canonically rotated); that form is stable across arrow-id
conventions and is how the displayed monomials x_{ij} translate.
"""

from __future__ import annotations

from fractions import Fraction

from flipquiver.quiver import Arrow, Potential, Quiver, QwP, canonical_node_cycle


def doubled_five_node_qwp() -> QwP:
    """The double of the 5-node mutation example with its 6-term potential."""
    # arrow ids: x01:0 x10:1 x02:2 x20:3 x03:4 x30:5 x04:6 x40:7 x14:8 x41:9 x23:10 x32:11
    arrows = [
        Arrow(0, 0, 1), Arrow(1, 1, 0),
        Arrow(2, 0, 2), Arrow(3, 2, 0),
        Arrow(4, 0, 3), Arrow(5, 3, 0),
        Arrow(6, 0, 4), Arrow(7, 4, 0),
        Arrow(8, 1, 4), Arrow(9, 4, 1),
        Arrow(10, 2, 3), Arrow(11, 3, 2),
    ]
    q = Quiver(range(5), arrows)
    one = Fraction(1)
    terms = {
        (0, 8, 7): one,    # x01 x14 x40
        (6, 9, 1): one,    # x04 x41 x10
        (2, 10, 5): one,   # x02 x23 x30
        (4, 11, 3): one,   # x03 x32 x20
        (1, 4, 5, 0): one,  # x10 x03 x30 x01
        (3, 6, 7, 2): one,  # x20 x04 x40 x02
    }
    return QwP(q, Potential(terms))


def node_seq(seq):
    return canonical_node_cycle(tuple(seq))


# Intermediate potential after premutation at node 0 (18 monomials):
# multiset of node sequences (two pairs of parallel-arrow cycles collide).
INTERMEDIATE_NODE_SEQS = sorted(
    [node_seq((1, 4))] * 2
    + [node_seq((2, 3))] * 2
    + [node_seq((1, 3)), node_seq((2, 4))]
    + [node_seq((j, 0, i)) for i in range(1, 5) for j in range(1, 5) if i != j]
)

# Final potential of the worked mutation (6 monomials).
FINAL_NODE_SEQS = {
    node_seq((1, 0, 3, 0)),
    node_seq((2, 0, 4, 0)),
    node_seq((1, 0, 2)),
    node_seq((2, 0, 1)),
    node_seq((3, 0, 4)),
    node_seq((4, 0, 3)),
}

# The mutated quiver: the double of the mutated 5-node quiver.
FINAL_ARROW_PAIRS = sorted([
    (0, 1), (1, 0), (0, 2), (2, 0), (0, 3), (3, 0), (0, 4), (4, 0),
    (3, 4), (4, 3), (1, 2), (2, 1),
])

# Published potential for 1/11(1,2,8), in the application's node numbering.
POTENTIAL_1_2_8_NODE_SEQS = [
    (13, 12, 11, 12),
    (12, 10, 12, 14),
    (13, 10, 12),
    (13, 12, 10),
    (14, 0, 14, 12),
    (13, 12, 13),
    (12, 10, 10),
    (14, 1, 14, 11),
    (14, 0, 1),
    (14, 1, 0),
    (11, 8, 11, 14),
    (11, 9, 11, 12),
    (9, 6, 9, 11, 14, 11),
    (9, 7, 9),
    (9, 6, 7),
    (9, 7, 6),
    (11, 8, 9),
    (11, 9, 9),
    (11, 9, 8),
    (14, 11, 12),
    (12, 11, 14),
]
