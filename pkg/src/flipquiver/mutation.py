"""Mutation of quivers with potential: premutation and reduction.

Premutation at a loopless node k reverses the arrows at k, adds a
composite arrow [ab] for pairs a: i->k, b: k->j, rewrites the potential
through the composites and appends a correction 3-cycle b*a*[ab] per
composite.  Composites with i == j would be loops at i; they are created
exactly when some potential term traverses that passage, which is what
makes loop creation and removal at neighbouring nodes work while keeping
mutation of potentials without such passages loop-free.

Reduction repeatedly eliminates a quadratic term c*uv by solving the
relations d/du, d/dv of the potential for v and u and substituting into
the remaining terms; it fails (NonReducible) when every pending quadratic
term has a substitution that mentions one of its own two arrows.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .errors import NodeHasLoop, NonReducible, NotReduced, UnknownNode
from .quiver import Arrow, Potential, Quiver, QwP, canonical_rotation


def _rotate_off_node(q: Quiver, word: tuple[int, ...], k: int) -> tuple[int, ...]:
    """Rotate a cycle so it does not start (hence not end) at node k."""
    for i in range(len(word)):
        if q.arrow(word[i]).tail != k:
            return word[i:] + word[:i]
    raise NodeHasLoop(f"cycle {word} never leaves node {k}")


def _passages(q: Quiver, word: tuple[int, ...], k: int) -> list[tuple[int, int]]:
    """Consecutive arrow pairs (a, b) of the rotated word with head(a) = k."""
    pairs = []
    i = 0
    while i < len(word):
        a = q.arrow(word[i])
        if a.head == k:
            pairs.append((word[i], word[(i + 1) % len(word)]))
            i += 2
        else:
            i += 1
    return pairs


def premutate(p: QwP, k: int) -> QwP:
    """First two steps of QwP mutation at k: the quiver with reversed and
    composite arrows, and the rewritten potential with correction terms."""
    q = p.quiver
    if k not in q.nodes:
        raise UnknownNode(f"no node {k}")
    if q.has_loop(k):
        raise NodeHasLoop(f"node {k} has a loop")
    if not p.is_reduced:
        raise NotReduced("premutation requires a reduced quiver with potential")

    ins = sorted(q.arrows_in(k), key=lambda a: a.id)
    outs = sorted(q.arrows_out(k), key=lambda a: a.id)

    # passages j -> k -> j present in some term force the loop composite
    needed_diagonal: set[tuple[int, int]] = set()
    rotated: list[tuple[tuple[int, ...], Fraction]] = []
    for word, coef in p.potential.sorted_terms():
        w = _rotate_off_node(q, word, k)
        rotated.append((w, coef))
        for a_id, b_id in _passages(q, w, k):
            a, b = q.arrow(a_id), q.arrow(b_id)
            if a.tail == b.head:
                needed_diagonal.add((a_id, b_id))

    fresh = q.next_arrow_id()
    kept = [a for a in q.arrows if a.tail != k and a.head != k]
    new_arrows: list[Arrow] = []
    star: dict[int, int] = {}
    for g in sorted(ins + outs, key=lambda a: a.id):
        star[g.id] = fresh
        new_arrows.append(Arrow(fresh, g.head, g.tail))
        fresh += 1
    composite: dict[tuple[int, int], int] = {}
    for alpha in ins:
        for beta in outs:
            if alpha.tail == beta.head and (alpha.id, beta.id) not in needed_diagonal:
                continue
            composite[(alpha.id, beta.id)] = fresh
            new_arrows.append(Arrow(fresh, alpha.tail, beta.head))
            fresh += 1

    new_quiver = Quiver(q.nodes, kept + new_arrows)

    terms: dict[tuple[int, ...], Fraction] = {}
    for w, coef in rotated:
        out: list[int] = []
        i = 0
        while i < len(w):
            a = q.arrow(w[i])
            if a.head == k:
                out.append(composite[(w[i], w[(i + 1) % len(w)])])
                i += 2
            else:
                out.append(w[i])
                i += 1
        key = canonical_rotation(tuple(out))
        terms[key] = terms.get(key, Fraction(0)) + coef
    for (a_id, b_id), c_id in composite.items():
        word = canonical_rotation((star[b_id], star[a_id], c_id))
        terms[word] = terms.get(word, Fraction(0)) + 1

    return QwP(new_quiver, Potential(terms))


def _substitute(word: tuple[int, ...], coef: Fraction,
                subs: dict[int, list[tuple[tuple[int, ...], Fraction]]]
                ) -> dict[tuple[int, ...], Fraction]:
    """Replace every occurrence of each substituted arrow by its expansion."""
    positions = [i for i, a in enumerate(word) if a in subs]
    if not positions:
        return {word: coef}
    out: dict[tuple[int, ...], Fraction] = {}
    choices = [subs[word[i]] for i in positions]
    for combo in product(*choices):
        parts: list[int] = []
        c = coef
        it = iter(combo)
        for i, a in enumerate(word):
            if a in subs:
                path, pc = next(it)
                parts.extend(path)
                c *= pc
            else:
                parts.append(a)
        if c == 0:
            continue
        key = tuple(parts)
        c += out.get(key, 0)
        if c == 0:
            out.pop(key, None)
        else:
            out[key] = c
    return out


def _derivative_rest(terms: dict[tuple[int, ...], Fraction], skip: tuple[int, ...],
                     arrow_id: int) -> dict[tuple[int, ...], Fraction]:
    out: dict[tuple[int, ...], Fraction] = {}
    for word, coef in terms.items():
        if word == skip:
            continue
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


def reduce(p: QwP) -> QwP:
    """Eliminate quadratic terms until the potential is reduced.

    Each elimination of a term c*uv substitutes u := -(1/c) d/dv(rest) and
    v := -(1/c) d/du(rest) into the other terms and deletes both arrows.
    Raises NonReducible when quadratic terms remain but every candidate's
    substitution mentions u or v itself.
    """
    quiver = p.quiver
    terms = dict(p.potential.terms)

    while True:
        quadratics = sorted((w for w in terms if len(w) == 2))
        if not quadratics:
            break
        eliminated = False
        for quad in quadratics:
            u, v = quad
            coef = terms[quad]
            if u == v:
                rest = _derivative_rest(terms, quad, u)
                # d/du of c*uu itself is 2c*u
                if any(u in path for path in rest):
                    continue
                subs = {u: [(path, -pc / (2 * coef)) for path, pc in rest.items()]}
                dead = {u}
            else:
                rest_v = _derivative_rest(terms, quad, v)
                rest_u = _derivative_rest(terms, quad, u)
                if any(u in path or v in path for path in rest_v):
                    continue
                if any(u in path or v in path for path in rest_u):
                    continue
                subs = {
                    u: [(path, -pc / coef) for path, pc in rest_v.items()],
                    v: [(path, -pc / coef) for path, pc in rest_u.items()],
                }
                dead = {u, v}

            new_terms: dict[tuple[int, ...], Fraction] = {}
            for word, c in terms.items():
                if word == quad:
                    continue
                for nw, nc in _substitute(word, c, subs).items():
                    key = canonical_rotation(nw)
                    total = new_terms.get(key, Fraction(0)) + nc
                    if total == 0:
                        new_terms.pop(key, None)
                    else:
                        new_terms[key] = total
            terms = new_terms
            quiver = Quiver(quiver.nodes, [a for a in quiver.arrows if a.id not in dead])
            eliminated = True
            break
        if not eliminated:
            stuck = quadratics[0]
            raise NonReducible(
                f"quadratic term {stuck} cannot be eliminated",
                quadratic=stuck,
                potential=Potential(terms),
            )

    return QwP(quiver, Potential(terms))


def qwp_mutate(p: QwP, k: int) -> QwP:
    """Mutation of a quiver with potential at a loopless node."""
    return reduce(premutate(p, k))
