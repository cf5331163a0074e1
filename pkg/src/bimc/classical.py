"""The baseline bimachine construction for word-output transducers.

Starting from a transducer that is deterministic over the paired
alphabet of (input symbol, output word), the input is first expanded
into an unambiguous transducer: each expanded state carries one guessed
state of the successful path plus the set of alternative states that
must all fail for the guess to be right.  Determinizing the expansion
forward and backward then yields a bimachine whose output map reads the
unique surviving transition's word directly.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass

from .bimachine import Bimachine
from .fsa import (
    Transducer,
    Transition,
    _check_cap,
    determinize,
    project_input,
    reverse,
    trim,
)
from .monoid import DescriptorMismatch, FreeWords


def check_pseudo_deterministic(t: Transducer) -> bool:
    """True when t is a deterministic automaton over (symbol, output word)
    pairs: a single initial state and at most one target per labeled move.
    Output-nondeterminism (same source and symbol, different words) is
    allowed; that is what the expansion resolves."""
    if not isinstance(t.monoid, FreeWords):
        raise DescriptorMismatch("the baseline construction needs free word outputs")
    if not t.real_time or len(t.initial) != 1:
        return False
    target = {}
    for tr in t.transitions:
        key = (tr.src, tr.inp, tr.out)
        if target.setdefault(key, tr.dst) != tr.dst:
            return False
    return True


@dataclass(frozen=True)
class ExpandedTransducer:
    """The unambiguous expansion: state i of transducer stands for the
    (guessed state, failing alternatives) pair pairs[i]."""

    transducer: Transducer
    pairs: tuple[tuple[int, frozenset[int]], ...]

    def __post_init__(self):
        assert len(self.pairs) == self.transducer.n_states
        for p, neg in self.pairs:
            assert p not in neg, "a guess must not be its own alternative"


def unambiguous_expand(t: Transducer) -> ExpandedTransducer:
    """Resolve output-nondeterminism by guessing the successful path.

    From (p, N) every transition (p, a, v, p') spawns (p', N') where N'
    collects the a-successors of N plus the targets of lexicographically
    smaller outputs from p; the move is dropped when the target itself
    lands in N'.  Finals are guesses that reached a final state while
    every alternative missed.  The result is trimmed.
    """
    if not check_pseudo_deterministic(t):
        raise ValueError("input must be deterministic over (symbol, output word) pairs")
    lex = t.monoid.lex_key
    by_src = defaultdict(list)
    for tr in t.transitions:
        by_src[tr.src].append(tr)
    start = (next(iter(t.initial)), frozenset())
    index = {start: 0}
    pairs = [start]
    arcs = []
    queue = deque([start])
    while queue:
        node = queue.popleft()
        p, neg_set = node
        src = index[node]
        for tr in by_src[p]:
            neg = set()
            for q in neg_set:
                for tq in by_src[q]:
                    if tq.inp == tr.inp:
                        neg.add(tq.dst)
            for tp in by_src[p]:
                if tp.inp == tr.inp and lex(tp.out.payload) < lex(tr.out.payload):
                    neg.add(tp.dst)
            if tr.dst in neg:
                continue
            succ = (tr.dst, frozenset(neg))
            if succ not in index:
                index[succ] = len(pairs)
                pairs.append(succ)
                _check_cap(len(pairs), "unambiguous expansion")
                queue.append(succ)
            arcs.append(Transition(src, tr.inp, tr.out, index[succ]))
    finals = frozenset(
        i for i, (p, neg) in enumerate(pairs) if p in t.final and not (neg & t.final)
    )
    expanded = Transducer(
        t.alphabet, t.monoid, len(pairs), frozenset({0}), finals, tuple(arcs)
    )
    trimmed, kept = trim(expanded)
    return ExpandedTransducer(trimmed, tuple(pairs[old] for old in kept))


def classical_compile(t: Transducer) -> Bimachine:
    """Expand, determinize both directions, and read the output map off
    the expansion: by unambiguity exactly one transition survives between
    any reachable set and co-reachable set, and its word is the entry."""
    tt = unambiguous_expand(t).transducer
    underlying = project_input(tt)
    left = determinize(underlying)
    right = determinize(reverse(underlying))
    by_move = defaultdict(list)
    for tr in tt.transitions:
        by_move[(tr.src, tr.inp)].append(tr)
    psi = {}
    for li in range(left.n_states):
        L = set(left.subsets[li])
        for a in tt.alphabet:
            for ri in range(right.n_states):
                ri2 = right.delta.get((ri, a))
                if ri2 is None:
                    continue
                S = L & set(right.subsets[ri2])
                if not S:
                    continue
                li2 = left.delta[(li, a)]
                S2 = set(left.subsets[li2]) & set(right.subsets[ri])
                v = None
                for p in sorted(S):
                    for tr in by_move[(p, a)]:
                        if tr.dst in S2:
                            assert v is None or v == tr.out, "expansion left two choices"
                            v = tr.out
                assert v is not None, "no transition between intersection sets"
                psi[(li, a, ri)] = v
    eps_out = tt.monoid.unit if (tt.initial & tt.final) else None
    return Bimachine(tt.monoid, tt.alphabet, left, right, psi, eps_out)
