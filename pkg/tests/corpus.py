"""Seeded random corpora shared by the property tests."""

from __future__ import annotations

import random

from flipquiver.quiver import Arrow, Potential, Quiver, QwP, cycles_up_to


def random_two_cycle_free_quiver(rng: random.Random, max_nodes=6, max_arrows=10) -> Quiver:
    n = rng.randint(2, max_nodes)
    nodes = list(range(n))
    arrows = []
    used = set()
    for i in range(rng.randint(1, max_arrows)):
        t = rng.choice(nodes)
        h = rng.choice(nodes)
        if t == h or (h, t) in used:
            continue
        used.add((t, h))
        arrows.append(Arrow(len(arrows), t, h))
    return Quiver(nodes, arrows)


def random_multiquiver(rng: random.Random, max_nodes=5, max_arrows=10,
                       allow_loops=True) -> Quiver:
    n = rng.randint(2, max_nodes)
    nodes = list(range(n))
    arrows = []
    for i in range(rng.randint(1, max_arrows)):
        t = rng.choice(nodes)
        h = rng.choice(nodes)
        if t == h and not allow_loops:
            continue
        arrows.append(Arrow(len(arrows), t, h))
    return Quiver(nodes, arrows)


def random_reduced_qwp(rng: random.Random, quiver=None, max_terms=4, max_len=5) -> QwP:
    q = quiver if quiver is not None else random_multiquiver(rng)
    pool = [c for c in cycles_up_to(q, max_len) if len(c) >= 3]
    if not pool:
        return QwP(q, Potential())
    k = rng.randint(0, min(max_terms, len(pool)))
    chosen = rng.sample(pool, k)
    terms = {c: rng.choice([-2, -1, 1, 2]) for c in chosen}
    return QwP(q, Potential(terms))


def loopless_nodes(q: Quiver) -> list[int]:
    return sorted(n for n in q.nodes if not q.has_loop(n))
