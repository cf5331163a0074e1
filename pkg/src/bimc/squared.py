"""Squared output automaton and its valuation.

Pairing a transducer with itself erases the input and keeps the two
output components; a state pair is reachable with labels (m1, m2)
exactly when both components can read one common input word producing
m1 and m2.  The valuation condenses, per reachable-and-useful pair, the
accumulated label divergence (rho) and its most general equalizer (nu).
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field

from .fsa import Transducer
from .monoid import Monoid, MonoidValue, eta, format_value


@dataclass
class SquaredAutomaton:
    """Pairs are stored in breadth-first discovery order with the initial
    pairs first; valuation correctness depends on that order."""

    monoid: Monoid
    pairs: tuple[tuple[int, int], ...]
    initial: frozenset[int]
    final: frozenset[int]
    transitions: tuple[tuple[int, MonoidValue, MonoidValue, int], ...]
    index: dict = field(init=False, repr=False)

    def __post_init__(self):
        self.index = {pair: i for i, pair in enumerate(self.pairs)}


def _pair_bfs(t: Transducer, expand):
    """Shared breadth-first pairing skeleton: expand(p1, p2) yields
    (m1, m2, q1, q2) successor moves for the pair (p1, p2)."""
    order = []
    index = {}
    queue = deque()
    for p1 in sorted(t.initial):
        for p2 in sorted(t.initial):
            pair = (p1, p2)
            if pair not in index:
                index[pair] = len(order)
                order.append(pair)
                queue.append(pair)
    initial = frozenset(range(len(order)))
    transitions = []
    seen_arcs = set()
    while queue:
        pair = queue.popleft()
        src = index[pair]
        for m1, m2, q1, q2 in expand(*pair):
            target = (q1, q2)
            dst = index.get(target)
            if dst is None:
                dst = len(order)
                index[target] = dst
                order.append(target)
                queue.append(target)
            arc = (src, m1, m2, dst)
            if arc not in seen_arcs:
                seen_arcs.add(arc)
                transitions.append(arc)
    final = frozenset(
        i for i, (p1, p2) in enumerate(order) if p1 in t.final and p2 in t.final
    )
    return SquaredAutomaton(t.monoid, tuple(order), initial, final, tuple(transitions))


def squared(t: Transducer) -> SquaredAutomaton:
    """Accessible part of the self-pairing of a real-time transducer:
    two component transitions advance together on a shared input symbol."""
    if not t.real_time:
        raise ValueError("squared needs a real-time transducer")
    by_state_sym = defaultdict(list)
    for tr in t.transitions:
        by_state_sym[(tr.src, tr.inp)].append((tr.out, tr.dst))

    def expand(p1, p2):
        for sym in t.alphabet:
            for m1, q1 in by_state_sym[(p1, sym)]:
                for m2, q2 in by_state_sym[(p2, sym)]:
                    yield m1, m2, q1, q2

    return _pair_bfs(t, expand)


def squared_eps(t: Transducer) -> SquaredAutomaton:
    """Self-pairing that keeps epsilon input moves one-sided: besides the
    shared-symbol steps, either component may take an epsilon transition
    alone while the other waits with a unit label."""
    by_state_sym = defaultdict(list)
    eps_from = defaultdict(list)
    for tr in t.transitions:
        if tr.inp is None:
            eps_from[tr.src].append((tr.out, tr.dst))
        else:
            by_state_sym[(tr.src, tr.inp)].append((tr.out, tr.dst))
    unit = t.monoid.unit

    def expand(p1, p2):
        for sym in t.alphabet:
            for m1, q1 in by_state_sym[(p1, sym)]:
                for m2, q2 in by_state_sym[(p2, sym)]:
                    yield m1, m2, q1, q2
        for m2, q2 in eps_from[p2]:
            yield unit, m2, p1, q2
        for m1, q1 in eps_from[p1]:
            yield m1, unit, q1, p2

    return _pair_bfs(t, expand)


def coaccessible(sq: SquaredAutomaton) -> frozenset[int]:
    """Pairs from which some final pair is reachable."""
    into = defaultdict(set)
    for src, _, _, dst in sq.transitions:
        into[dst].add(src)
    seen = set(sq.final)
    stack = list(sq.final)
    while stack:
        q = stack.pop()
        for p in into[q]:
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return frozenset(seen)


@dataclass
class Valuation:
    """rho: accumulated label pair along the first discovered useful path;
    nu: its most general equalizer, or (e, e) when both sides agree.
    Both are defined exactly on the useful (coaccessible) pairs; nu may
    additionally be missing where rho is not equalizable."""

    rho: dict
    nu: dict


def valuation(sq: SquaredAutomaton, useful: frozenset[int]) -> Valuation:
    out_edges = defaultdict(list)
    for src, m1, m2, dst in sq.transitions:
        out_edges[src].append((m1, m2, dst))
    unit = sq.monoid.unit
    rho = {}
    # processing pairs in discovery order guarantees rho(p) is known
    # before any useful p hands its value on
    for i in range(len(sq.pairs)):
        if i not in useful:
            continue
        if i in sq.initial:
            rho[i] = (unit, unit)
        assert i in rho, "useful pair reached before its predecessors"
        x1, x2 = rho[i]
        for m1, m2, dst in out_edges[i]:
            if dst in useful and dst not in rho:
                rho[dst] = (x1 * m1, x2 * m2)
    nu = {}
    for i, (x1, x2) in rho.items():
        if x1 == x2:
            nu[i] = (unit, unit)
        else:
            r = eta(x1, x2)
            if r is not None:
                nu[i] = r
    return Valuation(rho, nu)


def dump_valuation(sq: SquaredAutomaton, val: Valuation) -> str:
    """One line per pair, dashes for undefined entries."""

    def render(entry):
        if entry is None:
            return "-"
        return f"({format_value(entry[0])},{format_value(entry[1])})"

    lines = []
    for i, (p1, p2) in enumerate(sq.pairs):
        lines.append(
            f"(({p1},{p2})) rho={render(val.rho.get(i))} nu={render(val.nu.get(i))}"
        )
    return "\n".join(lines) + ("\n" if lines else "")
