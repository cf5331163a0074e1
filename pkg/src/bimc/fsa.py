"""Finite-state transducers with monoid outputs, plus the unweighted
automaton layer: trimming, reversal, projection, and power-set
determinization (with and without epsilon input moves)."""

from __future__ import annotations

import os
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import NamedTuple

from .monoid import Monoid, MonoidValue


class StateLimitExceeded(RuntimeError):
    """A power-set construction outgrew BIMC_MAX_STATES."""


def _state_cap():
    raw = os.environ.get("BIMC_MAX_STATES")
    return int(raw) if raw else None


def _check_cap(count, what):
    cap = _state_cap()
    if cap is not None and count > cap:
        raise StateLimitExceeded(f"{what} exceeded BIMC_MAX_STATES={cap}")


class Transition(NamedTuple):
    src: int
    inp: str | None  # None is an epsilon input move
    out: MonoidValue
    dst: int


@dataclass(frozen=True)
class Transducer:
    """States are 0..n_states-1; transitions keep their declaration order
    (duplicates dropped), which downstream constructions rely on for
    deterministic tie-breaking."""

    alphabet: tuple[str, ...]
    monoid: Monoid
    n_states: int
    initial: frozenset[int]
    final: frozenset[int]
    transitions: tuple[Transition, ...]

    def __post_init__(self):
        seen = set()
        for sym in self.alphabet:
            if not sym or not isinstance(sym, str) or any(c.isspace() for c in sym):
                raise ValueError(f"bad input symbol {sym!r}")
            if sym in seen:
                raise ValueError(f"duplicate input symbol {sym!r}")
            seen.add(sym)
        for q in self.initial | self.final:
            if not 0 <= q < self.n_states:
                raise ValueError(f"state {q} out of range")
        deduped = []
        have = set()
        for tr in self.transitions:
            if not (0 <= tr.src < self.n_states and 0 <= tr.dst < self.n_states):
                raise ValueError(f"transition endpoint out of range: {tr}")
            if tr.inp is not None and tr.inp not in seen:
                raise ValueError(f"undeclared input symbol {tr.inp!r}")
            if tr.out.monoid != self.monoid:
                raise ValueError(f"output from a different monoid: {tr}")
            if tr not in have:
                have.add(tr)
                deduped.append(tr)
        object.__setattr__(self, "transitions", tuple(deduped))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "final", frozenset(self.final))

    @property
    def real_time(self) -> bool:
        return all(tr.inp is not None for tr in self.transitions)


def make_transducer(alphabet, monoid, n_states, initial, final, arcs) -> Transducer:
    """Convenience constructor wrapping raw output payloads on the fly."""
    transitions = []
    for src, inp, out, dst in arcs:
        if not isinstance(out, MonoidValue):
            out = MonoidValue(monoid, out)
        transitions.append(Transition(src, inp, out, dst))
    return Transducer(
        tuple(alphabet), monoid, n_states, frozenset(initial), frozenset(final), tuple(transitions)
    )


@dataclass(frozen=True)
class Automaton:
    """Unweighted skeleton: edges are (src, symbol-or-None, dst)."""

    alphabet: tuple[str, ...]
    n_states: int
    initial: frozenset[int]
    final: frozenset[int]
    edges: tuple[tuple[int, str | None, int], ...]


@dataclass
class Dfa:
    """Partial deterministic automaton produced by determinization.

    States are indices into subsets (discovery order, start first); the
    subsets record which source states each index stands for, or None
    for machines read back from text.  delta is partial: missing keys
    mean the transition is undefined, there is no sink state.
    """

    alphabet: tuple[str, ...]
    n_states: int
    start: int
    delta: dict
    subsets: tuple[tuple[int, ...], ...] | None = None

    def run(self, word):
        q = self.start
        for sym in word:
            q = self.delta.get((q, sym))
            if q is None:
                return None
        return q


def trim(t: Transducer):
    """Restrict to states both accessible and co-accessible.

    Returns (trimmed, kept) where kept maps new indices to old ones.
    """
    fwd = defaultdict(set)
    bwd = defaultdict(set)
    for tr in t.transitions:
        fwd[tr.src].add(tr.dst)
        bwd[tr.dst].add(tr.src)

    def closure(seeds, adj):
        seen = set(seeds)
        stack = list(seeds)
        while stack:
            q = stack.pop()
            for nxt in adj[q]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return seen

    useful = closure(t.initial, fwd) & closure(t.final, bwd)
    kept = sorted(useful)
    renum = {old: new for new, old in enumerate(kept)}
    arcs = [
        Transition(renum[tr.src], tr.inp, tr.out, renum[tr.dst])
        for tr in t.transitions
        if tr.src in useful and tr.dst in useful
    ]
    trimmed = Transducer(
        t.alphabet,
        t.monoid,
        len(kept),
        frozenset(renum[q] for q in t.initial if q in useful),
        frozenset(renum[q] for q in t.final if q in useful),
        tuple(arcs),
    )
    return trimmed, kept


def e_extend(t: Transducer) -> Transducer:
    """Add a unit epsilon loop at every state (idempotent up to dedup)."""
    loops = [Transition(q, None, t.monoid.unit, q) for q in range(t.n_states)]
    return Transducer(
        t.alphabet, t.monoid, t.n_states, t.initial, t.final, t.transitions + tuple(loops)
    )


def project_input(t: Transducer) -> Automaton:
    """Drop outputs, keeping deduplicated (src, input, dst) edges."""
    edges = []
    have = set()
    for tr in t.transitions:
        e = (tr.src, tr.inp, tr.dst)
        if e not in have:
            have.add(e)
            edges.append(e)
    return Automaton(t.alphabet, t.n_states, t.initial, t.final, tuple(edges))


def reverse(a: Automaton) -> Automaton:
    edges = tuple((dst, inp, src) for src, inp, dst in a.edges)
    return Automaton(a.alphabet, a.n_states, a.final, a.initial, edges)


def _register(subset, index, order, what):
    idx = index.get(subset)
    if idx is None:
        _check_cap(len(order) + 1, what)
        idx = len(order)
        index[subset] = idx
        order.append(subset)
    return idx


def determinize(a: Automaton) -> Dfa:
    """Accessible power-set construction; requires an epsilon-free input."""
    step = defaultdict(set)
    for src, inp, dst in a.edges:
        if inp is None:
            raise ValueError("determinize needs an epsilon-free automaton")
        step[(src, inp)].add(dst)
    start = frozenset(a.initial)
    order = [start]
    index = {start: 0}
    delta = {}
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        src = index[subset]
        for sym in a.alphabet:
            image = set()
            for q in subset:
                image |= step[(q, sym)]
            if not image:
                continue
            image = frozenset(image)
            known = image in index
            dst = _register(image, index, order, "determinize")
            if not known:
                queue.append(image)
            delta[(src, sym)] = dst
    assert len(order) <= 2 ** a.n_states
    return Dfa(a.alphabet, len(order), 0, delta, tuple(tuple(sorted(s)) for s in order))


def determinize_eps(a: Automaton) -> Dfa:
    """Power-set construction where one input symbol may ride along any
    number of epsilon moves: delta(L, a) collects every state reachable
    from L by a generalized path whose input projection is exactly a.
    The start subset is the raw initial set, not its closure."""
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
        closure[q] = frozenset(seen)

    def close(states):
        out = set()
        for q in states:
            out |= closure[q]
        return out

    start = frozenset(a.initial)
    order = [start]
    index = {start: 0}
    delta = {}
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        src = index[subset]
        before = close(subset)
        for sym in a.alphabet:
            mid = set()
            for q in before:
                mid |= step[(q, sym)]
            if not mid:
                continue
            image = frozenset(close(mid))
            known = image in index
            dst = _register(image, index, order, "determinize_eps")
            if not known:
                queue.append(image)
            delta[(src, sym)] = dst
    assert len(order) <= 2 ** a.n_states
    return Dfa(a.alphabet, len(order), 0, delta, tuple(tuple(sorted(s)) for s in order))


def enumerate_outputs(t: Transducer, word, max_path_len=None):
    """All outputs of successful paths reading word, found by a direct
    breadth-first walk over raw transitions.  Paths are cut off after
    max_path_len transitions (default 2*|Q|*(|word|+1)), which is enough
    to see every output of a functional transducer."""
    word = tuple(word)
    if max_path_len is None:
        max_path_len = 2 * t.n_states * (len(word) + 1)
    eps_from = defaultdict(list)
    sym_from = defaultdict(list)
    for tr in t.transitions:
        if tr.inp is None:
            eps_from[tr.src].append((tr.out, tr.dst))
        else:
            sym_from[(tr.src, tr.inp)].append((tr.out, tr.dst))
    outputs = set()
    seen = set()
    queue = deque()
    for i in t.initial:
        node = (i, 0, t.monoid.unit)
        if node not in seen:
            seen.add(node)
            queue.append((node, 0))
    while queue:
        (state, pos, out), steps = queue.popleft()
        if pos == len(word) and state in t.final:
            outputs.add(out)
        if steps >= max_path_len:
            continue
        succ = [(pos, out * m, dst) for m, dst in eps_from[state]]
        if pos < len(word):
            succ += [(pos + 1, out * m, dst) for m, dst in sym_from[(state, word[pos])]]
        for npos, nout, dst in succ:
            node = (dst, npos, nout)
            if node not in seen:
                seen.add(node)
                queue.append((node, steps + 1))
    return outputs
