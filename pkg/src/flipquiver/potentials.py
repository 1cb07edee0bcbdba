"""Potential-space exploration, the potential-finding heuristic and its
verification against the labelled flip graph.

The search follows the published loop: assign every flip-graph node a
mutation sequence from the base quiver (gated on a unique candidate node
and constructible removal terms), then walk the nodes by sequence length,
diff the actual mutated quiver against the expected curve quiver, add the
degree-3 removal terms for every surplus arrow, and transport the updated
potential back to the base.  A final confirmation replays every sequence
with the finished potential.
"""

from __future__ import annotations

import random
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import (
    BudgetExceeded, MissingArrow, NodeSetMismatch, NonReducible, NotReduced,
)
from .flipgraph import FlipGraph
from .mutation import qwp_mutate
from .quiver import (
    Potential, Quiver, QwP, canonical_rotation, canonicalize_qwp, cycles_up_to,
    degree_profile, quiver_equal, quiver_key,
)


# --------------------------------------------------------------------------
# exchange exploration

@dataclass
class ExchangeGraph:
    states: list[QwP]
    edges: list[tuple[int, int, int]]            # (state, state, mutated node)
    blocked: list[tuple[int, int, str]]          # (state, node, error kind)
    warnings: list[str]
    arrivals: set[tuple]                         # (quiver key, support) pairs seen

    def quivers(self) -> list[Quiver]:
        return [s.quiver for s in self.states]


def exchange_graph(p: QwP, budget: int = 10000) -> ExchangeGraph:
    """Breadth-first mutation closure with states keyed by labelled quiver."""
    if not p.is_reduced:
        raise NotReduced("exchange exploration requires a reduced potential")
    states = [p]
    index = {quiver_key(p.quiver): 0}
    edges: list[tuple[int, int, int]] = []
    edge_seen = set()
    blocked: list[tuple[int, int, str]] = []
    warnings: list[str] = []
    arrivals = {(quiver_key(p.quiver), p.potential.support())}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        state = states[i]
        for k in sorted(n for n in state.quiver.nodes if not state.quiver.has_loop(n)):
            try:
                nxt = qwp_mutate(state, k)
            except NonReducible:
                blocked.append((i, k, "NonReducible"))
                continue
            key = quiver_key(nxt.quiver)
            arrivals.add((key, nxt.potential.support()))
            if key not in index:
                if len(states) >= budget:
                    raise BudgetExceeded(
                        f"exchange graph exceeded {budget} states",
                        partial=ExchangeGraph(states, edges, blocked, warnings, arrivals),
                    )
                index[key] = len(states)
                states.append(nxt)
                queue.append(index[key])
            elif states[index[key]].potential.support() != nxt.potential.support():
                warnings.append(
                    f"state {index[key]} reached with a different potential support "
                    f"(from state {i} at node {k})"
                )
            j = index[key]
            tag = (min(i, j), max(i, j), k)
            if tag not in edge_seen:
                edge_seen.add(tag)
                edges.append((i, j, k))
    return ExchangeGraph(states, edges, blocked, warnings, arrivals)


def quiver_set(p: QwP, budget: int = 10000) -> list[Quiver]:
    return exchange_graph(p, budget).quivers()


def exchange_number(p: QwP, budget: int = 10000) -> int:
    return len(quiver_set(p, budget))


def total_exchange_number(p: QwP, budget: int = 10000) -> int:
    """States distinguished by (quiver, potential support); an approximation
    of counting mutation-equivalent QwPs."""
    return len(exchange_graph(p, budget).arrivals)


# --------------------------------------------------------------------------
# removal terms and candidate mutation nodes

def _arrow_between(q: Quiver, tail: int, head: int, skip: set[int] = frozenset()):
    cands = sorted((a for a in q.arrows if a.tail == tail and a.head == head
                    and a.id not in skip), key=lambda a: a.id)
    if not cands:
        raise MissingArrow(f"no arrow {tail} -> {head}")
    return cands[0]


def edge_removal_terms(q: Quiver, i: int, j: int, k: int) -> set[tuple[int, ...]]:
    """The degree-3 terms a potential must contain for mutation at i to
    remove an arrow from j to k (a loop at j when j == k)."""
    if j == k:
        x_ij = _arrow_between(q, i, j)
        x_ji = _arrow_between(q, j, i)
        loop = _arrow_between(q, j, j)
        return {canonical_rotation((x_ij.id, loop.id, x_ji.id))}
    x_ij = _arrow_between(q, i, j)
    x_jk = _arrow_between(q, j, k)
    x_ki = _arrow_between(q, k, i)
    x_ik = _arrow_between(q, i, k)
    x_kj = _arrow_between(q, k, j)
    x_ji = _arrow_between(q, j, i)
    return {
        canonical_rotation((x_ij.id, x_jk.id, x_ki.id)),
        canonical_rotation((x_ik.id, x_kj.id, x_ji.id)),
    }


def _composite_cancel_term(q: Quiver, i: int, j: int, m: int) -> tuple[int, ...]:
    """Degree-4 term whose image under mutation at i is the quadratic pair
    of composites between j and m, cancelling them when no arrow between
    j and m should survive."""
    x_ji = _arrow_between(q, j, i)
    x_im = _arrow_between(q, i, m)
    x_mi = _arrow_between(q, m, i)
    x_ij = _arrow_between(q, i, j)
    return canonical_rotation((x_ji.id, x_im.id, x_mi.id, x_ij.id))


def _neighbours(q: Quiver, k: int) -> set[int]:
    out = set()
    for a in q.arrows:
        if a.tail == k and a.head != k:
            out.add(a.head)
        if a.head == k and a.tail != k:
            out.add(a.tail)
    return out


def _arrow_pairs(q: Quiver) -> Counter:
    return Counter((a.tail, a.head) for a in q.arrows)


def possible_mutation_nodes(q1: Quiver, q2: Quiver) -> list[int]:
    """Loopless nodes k of q1 at which mutation could turn q1 into q2:
    the arrows at k must be exactly reversed and everything not touching
    the one-arrow neighbourhood of k must agree."""
    if q1.nodes != q2.nodes:
        raise NodeSetMismatch("quivers live on different node sets")
    out = []
    for k in sorted(q1.nodes):
        if q1.has_loop(k) or q2.has_loop(k):
            continue
        at_k_1 = Counter((a.tail, a.head) for a in q1.arrows if k in (a.tail, a.head))
        at_k_2 = Counter((a.tail, a.head) for a in q2.arrows if k in (a.tail, a.head))
        if at_k_2 != Counter((h, t) for t, h in at_k_1.elements()):
            continue
        zone = _neighbours(q1, k) | _neighbours(q2, k)
        def far(q):
            return Counter((a.tail, a.head) for a in q.arrows
                           if k not in (a.tail, a.head)
                           and not (a.tail in zone and a.head in zone))
        if far(q1) != far(q2):
            continue
        out.append(k)
    return out


def can_construct_potential(q_from: Quiver, q_to: Quiver, k: int) -> bool:
    """The removal terms for every arrow that mutation at k must delete
    can be built from arrows present in q_from."""
    surplus = _arrow_pairs(q_from) - _arrow_pairs(q_to)
    done = set()
    for (j, m), count in sorted(surplus.items()):
        key = (j, j) if j == m else (min(j, m), max(j, m))
        if key in done:
            continue
        done.add(key)
        try:
            if j == m:
                loops = [a for a in q_from.arrows if a.tail == j and a.head == j]
                if len(loops) < count:
                    return False
                _arrow_between(q_from, k, j)
                _arrow_between(q_from, j, k)
            elif any(a.tail == j and a.head == m for a in q_from.arrows):
                edge_removal_terms(q_from, k, j, m)
            else:
                _composite_cancel_term(q_from, k, j, m)
        except MissingArrow:
            return False
    return True


# --------------------------------------------------------------------------
# the potential search

@dataclass
class SearchReport:
    status: str                                   # "success" | "failed"
    potential: Optional[Potential] = None
    sequences: dict[int, list[int]] = field(default_factory=dict)
    failure: Optional[dict] = None
    verified: Optional[bool] = None
    minimal: Optional[bool] = None
    witness: Optional[dict] = None
    failing_term: Optional[tuple[int, ...]] = None


def _assign_sequences(fg: FlipGraph):
    quivers = [fg.quiver_at(i).quiver for i in range(len(fg))]
    seqs: dict[int, list[int]] = {0: []}
    parent: dict[int, int] = {0: 0}
    while len(seqs) < len(quivers):
        added = False
        for u in range(len(quivers)):
            if u in seqs:
                continue
            for v in sorted(seqs):
                cands = possible_mutation_nodes(quivers[v], quivers[u])
                if len(cands) == 1 and can_construct_potential(quivers[v], quivers[u], cands[0]):
                    seqs[u] = seqs[v] + [cands[0]]
                    parent[u] = v
                    added = True
                    break
        if not added:
            return None, None
    return seqs, parent


def _loop_count(pairs: Counter, j: int) -> int:
    return pairs.get((j, j), 0)


def _word_has_passage(q: Quiver, word: tuple[int, ...], j: int, i: int) -> bool:
    n = len(word)
    for t in range(n):
        a, b = q.arrow(word[t]), q.arrow(word[(t + 1) % n])
        if a.tail == j and a.head == i and b.tail == i and b.head == j:
            return True
    return False


def _has_passage(p: Potential, q: Quiver, j: int, i: int) -> bool:
    """Does some term traverse j -> i -> j through consecutive arrows?"""
    for word in p.terms:
        n = len(word)
        for t in range(n):
            a, b = q.arrow(word[t]), q.arrow(word[(t + 1) % n])
            if a.tail == j and a.head == i and b.tail == i and b.head == j:
                return True
    return False


def _loop_creator_terms(qwp: QwP, i: int, j: int, witnesses: list[int]) -> list[tuple[int, ...]]:
    """Terms that make mutation at i compose the loop at j: the 4-cycle
    through the j<->i and j<->m two-cycles, one per witness m (the flips
    that later remove the created loop)."""
    x_ji = _arrow_between(qwp.quiver, j, i)
    x_ij = _arrow_between(qwp.quiver, i, j)
    out = []
    for m in witnesses:
        x_jm = _arrow_between(qwp.quiver, j, m)
        x_mj = _arrow_between(qwp.quiver, m, j)
        out.append(canonical_rotation((x_ji.id, x_ij.id, x_jm.id, x_mj.id)))
    return out


def find_potential(fg: FlipGraph, budget: int = 10000, max_sweeps: int = 12,
                   verify: bool = True, minimality: bool = True) -> SearchReport:
    """Heuristic search for the potential whose mutations realize the flips."""
    base = fg.quiver_at(0).quiver
    expected = [fg.quiver_at(i).quiver for i in range(len(fg))]
    expected_pairs = [_arrow_pairs(q) for q in expected]

    adjacency: dict[int, dict[int, int]] = {i: {} for i in range(len(fg))}
    for a, b, e in fg.edges:
        node_id = next(n for n, edge in fg.nodes[a].labels.items() if edge == e)
        adjacency[a][node_id] = b
        adjacency[b][node_id] = a

    seqs, parent = _assign_sequences(fg)
    if seqs is None:
        return SearchReport(status="failed",
                            failure={"reason": "no-candidate",
                                     "detail": "sequence assignment stalled"})

    def witness_ok(state: int, j: int, i: int, m: int) -> bool:
        # the creator 4-cycle doubles as the composite cancellation of the
        # pair {i, m} through j, so flipping j must not leave arrows there
        if j in adjacency[state]:
            w = adjacency[state][j]
            if expected_pairs[w].get((i, m), 0) or expected_pairs[w].get((m, i), 0):
                return False
        return True

    potential = Potential()
    order = sorted(range(len(fg)), key=lambda u: (len(seqs[u]), u))

    def fail(reason, detail, **extra):
        return SearchReport(status="failed", sequences=seqs,
                            failure={"reason": reason, "detail": detail, **extra})

    for _sweep in range(max_sweeps):
        added_any = False
        for u in order:
            if not seqs[u]:
                continue
            seq = seqs[u]
            i = seq[-1]
            qwp = QwP(base, potential)
            try:
                for k in seq[:-1]:
                    qwp = qwp_mutate(qwp, k)
                mutated = qwp_mutate(qwp, i)
            except NonReducible as exc:
                return fail("non-reducible", str(exc), node=u, sequence=seq,
                            quadratic=exc.quadratic, potential_at_failure=exc.potential)
            actual_pairs = _arrow_pairs(mutated.quiver)
            surplus = actual_pairs - expected_pairs[u]
            new_terms: list[tuple[int, ...]] = []
            done = set()
            try:
                for (j, m), count in sorted(surplus.items()):
                    key = (j, j) if j == m else (min(j, m), max(j, m))
                    if key in done:
                        continue
                    done.add(key)
                    if j == m:
                        used: set[int] = set()
                        for _ in range(count):
                            x_ij = _arrow_between(qwp.quiver, i, j)
                            x_ji = _arrow_between(qwp.quiver, j, i)
                            loop = _arrow_between(qwp.quiver, j, j, skip=used)
                            used.add(loop.id)
                            new_terms.append(canonical_rotation((x_ij.id, loop.id, x_ji.id)))
                    elif any(a.tail == j and a.head == m for a in qwp.quiver.arrows):
                        new_terms.extend(sorted(edge_removal_terms(qwp.quiver, i, j, m)))
                    else:
                        new_terms.append(_composite_cancel_term(qwp.quiver, i, j, m))
                # loops the mutation should have composed but did not
                deficit = expected_pairs[u] - actual_pairs
                for (j, m), count in sorted(deficit.items()):
                    if j != m:
                        continue
                    removers = sorted(
                        m_ for m_, v in adjacency[u].items()
                        if m_ != i
                        and _loop_count(expected_pairs[v], j) < _loop_count(expected_pairs[u], j)
                    )
                    if removers:
                        for w in _loop_creator_terms(qwp, i, j, removers):
                            if w not in qwp.potential.terms:
                                new_terms.append(w)
                        continue
                    if _has_passage(qwp.potential, qwp.quiver, j, i) or any(
                            _word_has_passage(qwp.quiver, w, j, i) for w in new_terms):
                        continue
                    cands = sorted(x for x in _neighbours(qwp.quiver, j)
                                   if x != i and witness_ok(parent[u], j, i, x))
                    if not cands:
                        raise MissingArrow(f"no witness two-cycle at node {j}")
                    new_terms.extend(_loop_creator_terms(qwp, i, j, cands[:1]))
            except MissingArrow as exc:
                return fail("no-candidate",
                            f"removal terms unavailable at node {u}: {exc}")
            new_terms = [w for w in new_terms if w not in qwp.potential.terms]
            if not new_terms:
                continue
            updated = qwp.potential
            for word in new_terms:
                if word not in updated.terms:
                    updated = updated.add(word, Fraction(1))
            back = QwP(qwp.quiver, updated)
            try:
                for k in reversed(seq[:-1]):
                    back = qwp_mutate(back, k)
            except NonReducible as exc:
                return fail("non-reducible", f"transport back from node {u}: {exc}",
                            node=u, sequence=seq,
                            quadratic=exc.quadratic, potential_at_failure=exc.potential)
            if not quiver_equal(back.quiver, base):
                return fail("verification-failed",
                            f"transport back from node {u} missed the base quiver")
            potential = canonicalize_qwp(back).potential
            added_any = True
        if not added_any:
            break
    else:
        return fail("no-candidate", f"no fixpoint after {max_sweeps} sweeps")

    # final confirmation: replay every sequence with the finished potential
    reached = set()
    for u in order:
        qwp = QwP(base, potential)
        try:
            for k in seqs[u]:
                qwp = qwp_mutate(qwp, k)
        except NonReducible as exc:
            return SearchReport(
                status="failed", sequences=seqs,
                failure={"reason": "non-reducible",
                         "detail": f"confirmation replay for node {u}: {exc}",
                         "node": u, "sequence": seqs[u],
                         "quadratic": exc.quadratic,
                         "potential_at_failure": exc.potential})
        if not quiver_equal(qwp.quiver, expected[u]):
            return SearchReport(
                status="failed", sequences=seqs,
                failure={"reason": "verification-failed",
                         "detail": f"confirmation replay for node {u} missed its quiver"})
        reached.add(quiver_key(qwp.quiver))
    if reached != {quiver_key(q) for q in expected}:
        return SearchReport(
            status="failed", sequences=seqs,
            failure={"reason": "verification-failed",
                     "detail": "replayed quiver set differs from the expected set"})

    report = SearchReport(status="success", potential=potential, sequences=seqs)
    if verify:
        ok, witness = verify_exchange_graph(QwP(base, potential), fg)
        report.verified = ok
        report.witness = witness
        if ok and minimality:
            minimal, term = minimality_check(QwP(base, potential), fg)
            report.minimal = minimal
            report.failing_term = term
    return report


# --------------------------------------------------------------------------
# verification and minimality

def verify_exchange_graph(p: QwP, fg: FlipGraph):
    """Synchronized walk: mutation at every loopless node of every state
    must be defined and land on the curve quiver across the matching flip.
    Returns (ok, witness)."""
    base_expected = fg.quiver_at(0).quiver
    if not quiver_equal(p.quiver, base_expected):
        return False, {"where": "seed", "detail": "quiver differs from the seed curve quiver"}

    adj: dict[int, dict[int, int]] = {i: {} for i in range(len(fg))}
    for a, b, e in fg.edges:
        node_id = next(n for n, edge in fg.nodes[a].labels.items() if edge == e)
        adj[a][node_id] = b
        adj[b][node_id] = a

    states: dict[int, QwP] = {0: p}
    seen = {0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        state = states[i]
        loopless = sorted(n for n in state.quiver.nodes if not state.quiver.has_loop(n))
        if set(loopless) != set(adj[i]):
            return False, {"where": i,
                           "detail": f"mutable nodes {loopless} != flippable {sorted(adj[i])}"}
        for k in loopless:
            try:
                nxt = qwp_mutate(state, k)
            except NonReducible as exc:
                return False, {"where": i, "node": k,
                               "detail": f"mutation undefined: {exc}"}
            j = adj[i][k]
            if not quiver_equal(nxt.quiver, fg.quiver_at(j).quiver):
                return False, {"where": i, "node": k, "target": j,
                               "detail": "mutated quiver differs from the flipped curve quiver"}
            if j not in seen:
                seen.add(j)
                states[j] = nxt
                queue.append(j)
    return True, None


def minimality_check(p: QwP, fg: FlipGraph):
    """True when removing any single term breaks the verification."""
    for word, _ in p.potential.sorted_terms():
        smaller = QwP(p.quiver, p.potential.without(word))
        ok, _ = verify_exchange_graph(smaller, fg)
        if ok:
            return False, word
    return True, None


# --------------------------------------------------------------------------
# random sampling

@dataclass
class SamplingStats:
    seed: int
    samples: int
    max_terms: int
    max_len: int
    histogram: dict[int, int]
    class_counts: dict[tuple, int]
    budget_overruns: int

    def en_class_table(self) -> dict[int, int]:
        per_en: dict[int, set] = {}
        for key in self.class_counts:
            per_en.setdefault(len(key), set()).add(key)
        return {en: len(v) for en, v in sorted(per_en.items())}


def sample_potentials(q: Quiver, n: int, max_terms: int = 30, max_len: int = 6,
                      seed: int = 0, budget: int = 64) -> SamplingStats:
    """Seeded random potentials and their exchange statistics.

    Terms are distinct cycles of length 3..max_len with coefficients drawn
    uniformly from +-1, +-2, +-3; the term count is uniform in 1..max_terms.
    Samples whose exploration exceeds the budget are recorded and skipped.
    """
    if n < 1:
        raise ValueError("need at least one sample")
    pool = [c for c in cycles_up_to(q, max_len) if len(c) >= 3]
    histogram: dict[int, int] = {}
    class_counts: dict[tuple, int] = {}
    overruns = 0
    coefs = [-3, -2, -1, 1, 2, 3]
    for i in range(n):
        rng = random.Random(f"{seed}:{i}")
        want = rng.randint(1, max_terms)
        words = rng.sample(pool, min(want, len(pool)))
        potential = Potential({w: Fraction(rng.choice(coefs)) for w in words})
        try:
            qs = quiver_set(QwP(q, potential), budget=budget)
        except BudgetExceeded:
            overruns += 1
            continue
        en = len(qs)
        histogram[en] = histogram.get(en, 0) + 1
        key = tuple(sorted(degree_profile(x) for x in qs))
        class_counts[key] = class_counts.get(key, 0) + 1
    return SamplingStats(seed=seed, samples=n, max_terms=max_terms, max_len=max_len,
                         histogram=histogram, class_counts=class_counts,
                         budget_overruns=overruns)
