"""Deciding whether a transducer realizes a partial function.

The test trims, gates epsilon behaviour (cycle outputs must be unit,
the empty-input language must hold at most one value), then builds the
squared automaton and checks the valuation: every useful pair must be
equalizable, every useful transition must keep both sides equal after
completion, and final pairs must balance exactly.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass

from .fsa import Transducer, trim
from .monoid import MonoidValue, format_value
from .squared import SquaredAutomaton, Valuation, coaccessible, squared, squared_eps, valuation


@dataclass(frozen=True)
class Witness:
    """Why a transducer is not functional; kind is one of eps-cycle,
    eps-language, unequalizable-pair, transition-mismatch, final-imbalance."""

    kind: str
    detail: str


@dataclass
class FunctionalityVerdict:
    functional: bool
    witness: Witness | None
    trimmed: Transducer
    kept: list[int]
    squared: SquaredAutomaton | None = None
    useful: frozenset[int] | None = None
    valuation: Valuation | None = None
    eps_outputs: frozenset[MonoidValue] = frozenset()

    def __bool__(self):
        return self.functional


def _eps_scc(n_states, eps_edges):
    """Strongly connected components of the epsilon graph (iterative
    Tarjan); returns a component id per state."""
    adj = defaultdict(list)
    for src, _, dst in eps_edges:
        adj[src].append(dst)
    index = {}
    low = {}
    comp = {}
    on_stack = set()
    stack = []
    counter = [0]
    n_comps = [0]
    for root in range(n_states):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                on_stack.add(v)
            advanced = False
            children = adj[v]
            while pi < len(children):
                w = children[pi]
                pi += 1
                if w not in index:
                    work[-1] = (v, pi)
                    work.append((w, 0))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp[w] = n_comps[0]
                    if w == v:
                        break
                n_comps[0] += 1
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comp


def eps_cycle_check(t: Transducer):
    """None when every epsilon cycle multiplies out to the unit; otherwise
    a state witnessing a nonunit cycle.  Expects a trimmed transducer.

    Within one strongly connected epsilon component a single consistent
    labelling exists iff all its cycles are unit: any clash found while
    propagating labels exhibits two cycle values differing by
    cancellation.
    """
    eps_edges = [(tr.src, tr.out, tr.dst) for tr in t.transitions if tr.inp is None]
    if not eps_edges:
        return None
    comp = _eps_scc(t.n_states, eps_edges)
    within = defaultdict(list)
    members = defaultdict(list)
    for src, out, dst in eps_edges:
        if comp.get(src) == comp.get(dst):
            within[src].append((out, dst))
    for q in sorted(comp):
        members[comp[q]].append(q)
    unit = t.monoid.unit
    for states in members.values():
        root = states[0]
        label = {root: unit}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for out, v in within[u]:
                cand = label[u] * out
                if v not in label:
                    label[v] = cand
                    queue.append(v)
                elif label[v] != cand:
                    return v
    return None


def eps_language(t: Transducer) -> frozenset[MonoidValue]:
    """All outputs over successful epsilon-input paths.  Finite only when
    eps_cycle_check passed, which callers must ensure first."""
    eps_from = defaultdict(list)
    for tr in t.transitions:
        if tr.inp is None:
            eps_from[tr.src].append((tr.out, tr.dst))
    unit = t.monoid.unit
    seen = {(q, unit) for q in t.initial}
    queue = deque(seen)
    outputs = set()
    while queue:
        q, value = queue.popleft()
        if q in t.final:
            outputs.add(value)
        for out, dst in eps_from[q]:
            node = (dst, value * out)
            if node not in seen:
                seen.add(node)
                queue.append(node)
    return frozenset(outputs)


def test_functionality(t: Transducer) -> FunctionalityVerdict:
    """Decide functionality; the verdict keeps the trimmed transducer,
    squared automaton, and valuation for reuse by the compiler."""
    trimmed, kept = trim(t)

    def reject(kind, detail, **extras):
        return FunctionalityVerdict(False, Witness(kind, detail), trimmed, kept, **extras)

    bad = eps_cycle_check(trimmed)
    if bad is not None:
        return reject(
            "eps-cycle",
            f"state {kept[bad]} lies on an epsilon cycle with nonunit output",
        )
    eps_outs = eps_language(trimmed)
    if len(eps_outs) > 1:
        shown = ", ".join(sorted(format_value(v) for v in eps_outs))
        return reject(
            "eps-language",
            f"empty input maps to {len(eps_outs)} distinct outputs: {shown}",
            eps_outputs=eps_outs,
        )

    sq = squared(trimmed) if trimmed.real_time else squared_eps(trimmed)
    useful = coaccessible(sq)
    val = valuation(sq, useful)
    extras = dict(squared=sq, useful=useful, valuation=val, eps_outputs=eps_outs)

    for i in range(len(sq.pairs)):
        if i in useful and i not in val.nu:
            p1, p2 = sq.pairs[i]
            x1, x2 = val.rho[i]
            return reject(
                "unequalizable-pair",
                f"pair ({kept[p1]},{kept[p2]}) accumulates "
                f"({format_value(x1)},{format_value(x2)}) which no suffix can equalize",
                **extras,
            )
    for src, m1, m2, dst in sq.transitions:
        if src in useful and dst in useful:
            x1, x2 = val.rho[src]
            y1, y2 = val.nu[dst]
            if x1 * m1 * y1 != x2 * m2 * y2:
                p1, p2 = sq.pairs[src]
                q1, q2 = sq.pairs[dst]
                return reject(
                    "transition-mismatch",
                    f"step ({kept[p1]},{kept[p2]}) -> ({kept[q1]},{kept[q2]}) with labels "
                    f"({format_value(m1)},{format_value(m2)}) breaks output agreement",
                    **extras,
                )
    unit = trimmed.monoid.unit
    for f in sq.final:
        if val.nu.get(f) != (unit, unit):
            p1, p2 = sq.pairs[f]
            x1, x2 = val.rho[f]
            return reject(
                "final-imbalance",
                f"final pair ({kept[p1]},{kept[p2]}) ends with unequal outputs "
                f"({format_value(x1)},{format_value(x2)})",
                **extras,
            )
    return FunctionalityVerdict(True, None, trimmed, kept, **extras)
