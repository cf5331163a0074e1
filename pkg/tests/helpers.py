"""Shared test utilities: brute-force oracles and random generators.

Everything here works directly on raw transitions or raw payload
enumeration, independent of the determinization, squaring, and compile
machinery under test.
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from fractions import Fraction

from bimc.fsa import make_transducer
from bimc.monoid import (
    FreeWords,
    Integers,
    MonoidValue,
    NonNegRationals,
    PairOf,
    solve_right,
)


def all_words(alphabet, max_len):
    """Every input word over alphabet up to max_len, shortest first."""
    for n in range(max_len + 1):
        for w in itertools.product(alphabet, repeat=n):
            yield w


def random_value(rng, m, size=4):
    if isinstance(m, FreeWords):
        k = rng.randint(0, size)
        return MonoidValue(m, "".join(rng.choice(m.alphabet) for _ in range(k)))
    if isinstance(m, NonNegRationals):
        return MonoidValue(m, Fraction(rng.randint(0, 3 * size), rng.randint(1, size)))
    if isinstance(m, Integers):
        return MonoidValue(m, rng.randint(-3 * size, 3 * size))
    if isinstance(m, PairOf):
        return MonoidValue(
            m,
            (random_value(rng, m.left, size).payload, random_value(rng, m.right, size).payload),
        )
    raise TypeError(m)


def candidate_values(m, size=3):
    """A bounded but systematic pool of elements used for brute-force
    equalizer searches."""
    if isinstance(m, FreeWords):
        return [
            MonoidValue(m, "".join(w))
            for n in range(size + 1)
            for w in itertools.product(m.alphabet, repeat=n)
        ]
    if isinstance(m, NonNegRationals):
        pool = {Fraction(k, d) for d in (1, 2, 3) for k in range(0, 3 * size + 1)}
        return [MonoidValue(m, f) for f in sorted(pool)]
    if isinstance(m, Integers):
        return [MonoidValue(m, k) for k in range(-3 * size, 3 * size + 1)]
    if isinstance(m, PairOf):
        return [
            MonoidValue(m, (a.payload, b.payload))
            for a in candidate_values(m.left, max(1, size - 1))
            for b in candidate_values(m.right, max(1, size - 1))
        ]
    raise TypeError(m)


def brute_equalizers(m1, m2, candidates):
    """All (x1, x2) from the pool with m1*x1 == m2*x2."""
    return [(x1, x2) for x1 in candidates for x2 in candidates if m1 * x1 == m2 * x2]


def is_instance_of(mge, equalizer):
    """True when the equalizer factors through the mge on the right."""
    x1, x2 = mge
    k1, k2 = equalizer
    c = solve_right(x1, k1)
    return c is not None and x2 * c == k2


def random_transducer(
    rng,
    max_states=4,
    max_symbols=3,
    allow_eps=False,
    require_eps=False,
    out_symbols=("x", "y"),
    max_out_len=2,
):
    n = rng.randint(1, max_states)
    sigma = ("a", "b", "c")[: rng.randint(1, max_symbols)]
    monoid = FreeWords(tuple(out_symbols))
    arcs = []
    for _ in range(rng.randint(1, n + 3)):
        src = rng.randrange(n)
        dst = rng.randrange(n)
        if allow_eps and rng.random() < 0.3:
            inp = None
        else:
            inp = rng.choice(sigma)
        out = "".join(rng.choice(out_symbols) for _ in range(rng.randint(0, max_out_len)))
        arcs.append((src, inp, out, dst))
    if require_eps and not any(a[1] is None for a in arcs):
        src, _, out, dst = arcs[rng.randrange(len(arcs))]
        arcs.append((src, None, out, dst))
    initial = set(rng.sample(range(n), rng.randint(1, min(2, n))))
    n_final = rng.choice([0, 1, 1, 1, 2])
    final = set(rng.sample(range(n), min(n_final, n)))
    return make_transducer(sigma, monoid, n, initial, final, arcs)


def random_pseudo_det(rng, max_states=4, max_symbols=2, out_symbols=("x", "y"), max_out_len=2):
    """Random transducer that is deterministic over (symbol, output word)
    pairs: single initial state, distinct outputs per (state, symbol)."""
    n = rng.randint(1, max_states)
    sigma = ("a", "b", "c")[: rng.randint(1, max_symbols)]
    monoid = FreeWords(tuple(out_symbols))
    arcs = []
    for src in range(n):
        for sym in sigma:
            outs = set()
            for _ in range(rng.choice((0, 1, 1, 2))):
                out = "".join(rng.choice(out_symbols) for _ in range(rng.randint(0, max_out_len)))
                if out in outs:
                    continue
                outs.add(out)
                arcs.append((src, sym, out, rng.randrange(n)))
    final = set(rng.sample(range(n), rng.randint(0, min(2, n))))
    return make_transducer(sigma, monoid, n, {rng.randrange(n)}, final, arcs)


def random_bimachine(rng, max_states=4, max_symbols=3, out_symbols=("x", "y")):
    """A structurally valid bimachine with random partial tables."""
    from bimc.bimachine import Bimachine
    from bimc.fsa import Dfa

    sigma = ("a", "b", "c")[: rng.randint(1, max_symbols)]
    monoid = FreeWords(tuple(out_symbols))

    def rand_dfa():
        n = rng.randint(1, max_states)
        delta = {}
        for q in range(n):
            for s in sigma:
                if rng.random() < 0.8:
                    delta[(q, s)] = rng.randrange(n)
        return Dfa(sigma, n, rng.randrange(n), delta)

    left, right = rand_dfa(), rand_dfa()
    psi = {}
    for l in range(left.n_states):
        for s in sigma:
            for r in range(right.n_states):
                if rng.random() < 0.7:
                    psi[(l, s, r)] = random_value(rng, monoid, 2)
    eps = random_value(rng, monoid, 2) if rng.random() < 0.5 else None
    return Bimachine(monoid, sigma, left, right, psi, eps)


def output_table(t, max_len, max_steps=None, node_cap=None, stop_on_conflict=False):
    """Map every input word up to max_len to its set of path outputs,
    walking raw transitions breadth-first.

    Only states that can still reach a final state are explored; every
    prefix of a successful path stays inside that set, so the table is
    unaffected and dead value-growing cycles cannot stall the walk.
    Paths longer than max_steps transitions are cut off; node_cap bounds
    the search frontier for inputs with value-growing cycles.  Returns
    (table, truncated).
    """
    if max_steps is None:
        max_steps = 2 * t.n_states * (max_len + 1)
    unit = t.monoid.unit
    into = defaultdict(set)
    for tr in t.transitions:
        into[tr.dst].add(tr.src)
    alive = set(t.final)
    stack = list(alive)
    while stack:
        for p in into[stack.pop()]:
            if p not in alive:
                alive.add(p)
                stack.append(p)
    eps_from = defaultdict(list)
    sym_from = defaultdict(list)
    for tr in t.transitions:
        if tr.dst not in alive:
            continue
        if tr.inp is None:
            eps_from[tr.src].append((tr.out, tr.dst))
        else:
            sym_from[tr.src].append((tr.inp, tr.out, tr.dst))
    table = defaultdict(set)
    queue = deque()
    seen = set()
    for i in sorted(t.initial & alive):
        node = (i, (), unit)
        seen.add(node)
        queue.append((node, 0))
    truncated = False
    while queue:
        (state, word, out), steps = queue.popleft()
        if state in t.final:
            table[word].add(out)
            if stop_on_conflict and len(table[word]) > 1:
                return dict(table), truncated
        succ = [(word, out * m, dst) for m, dst in eps_from[state]]
        if len(word) < max_len:
            succ += [(word + (sym,), out * m, dst) for sym, m, dst in sym_from[state]]
        for nword, nout, dst in succ:
            node = (dst, nword, nout)
            if node not in seen:
                if steps >= max_steps or (node_cap is not None and len(seen) >= node_cap):
                    truncated = True
                    continue
                seen.add(node)
                queue.append((node, steps + 1))
    return dict(table), truncated


def count_paths(t, word):
    """Number of successful paths consuming exactly word (real-time only)."""
    assert t.real_time
    by_step = defaultdict(list)
    for tr in t.transitions:
        by_step[(tr.src, tr.inp)].append(tr.dst)
    counts = {q: 1 for q in t.initial}
    for sym in word:
        nxt = defaultdict(int)
        for q, c in counts.items():
            for dst in by_step[(q, sym)]:
                nxt[dst] += c
        counts = nxt
    return sum(c for q, c in counts.items() if q in t.final)


def remove_eps_edges(a):
    """Naive unweighted epsilon removal: an a-edge from p to w for every
    generalized path p ->eps* a eps*-> w.  Initial states unchanged."""
    from bimc.fsa import Automaton

    eps_next = defaultdict(set)
    step = defaultdict(set)
    for src, inp, dst in a.edges:
        if inp is None:
            eps_next[src].add(dst)
        else:
            step[(src, inp)].add(dst)
    closure = {}
    for q in range(a.n_states):
        seen = {q}
        stack = [q]
        while stack:
            u = stack.pop()
            for v in eps_next[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        closure[q] = seen
    edges = set()
    for p in range(a.n_states):
        for u in closure[p]:
            for sym in a.alphabet:
                for v in step[(u, sym)]:
                    for w in closure[v]:
                        edges.add((p, sym, w))
    return Automaton(a.alphabet, a.n_states, a.initial, a.final, tuple(sorted(edges)))
