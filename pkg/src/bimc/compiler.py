"""Compiles functional transducers into bimachines.

The construction determinizes the underlying automaton twice (forward
and reversed), then fills the positional output map: for every subset
of states that is simultaneously reachable and co-reachable, a most
general equalizer chain assigns each member state its accumulated
delay, and each output entry is the unique value balancing those delays
across one transition.  Everything downstream of the functionality
verdict is deterministic, so equal inputs give identical bimachines.
"""

from __future__ import annotations

from collections import defaultdict, deque

from .bimachine import Bimachine
from .fsa import Transducer, determinize, determinize_eps, project_input, reverse
from .functionality import FunctionalityVerdict, test_functionality
from .monoid import AccumulationFailure, Monoid, gamma_n, solve_right


class CompileError(Exception):
    """The construction could not complete on this input."""


class NotFunctionalError(CompileError):
    """Raised when the input transducer fails the functionality test;
    carries the verdict with its witness."""

    def __init__(self, verdict: FunctionalityVerdict):
        self.verdict = verdict
        w = verdict.witness
        super().__init__(f"transducer is not functional ({w.kind}: {w.detail})")


def set_mge(S, nu, monoid: Monoid) -> dict:
    """The delay function of one intersection set.

    S is enumerated in ascending state order; nu maps ordered state
    pairs to their recorded equalizers, and accumulating the chain of
    equalizers between consecutive members gives one value per state.
    A missing or non-accumulating entry means the transducer was not
    functional after all.
    """
    states = sorted(S)
    chain = []
    for p, q in zip(states, states[1:]):
        v = nu.get((p, q))
        if v is None:
            raise CompileError(f"no equalizer recorded for the simultaneous pair ({p}, {q})")
        chain.append(v)
    try:
        values = gamma_n(chain, monoid)
    except AccumulationFailure as exc:
        raise CompileError(f"equalizer chain for {states} does not accumulate") from exc
    return dict(zip(states, values))


def _eps_values_from(t: Transducer):
    """state -> [(destination, emitted value)] over pure ε paths, in
    discovery order, starting with (state, e) itself."""
    step = defaultdict(list)
    for tr in t.transitions:
        if tr.inp is None:
            step[tr.src].append((tr.out, tr.dst))
    reach = {}
    for q in range(t.n_states):
        items = [(q, t.monoid.unit)]
        seen = {items[0]}
        queue = deque(items)
        while queue:
            p, v = queue.popleft()
            for m, dst in step[p]:
                node = (dst, v * m)
                if node not in seen:
                    seen.add(node)
                    items.append(node)
                    queue.append(node)
        reach[q] = items
    return reach


def _eps_values_into(t: Transducer):
    """state -> [(source, emitted value)] over pure ε paths ending at the
    state, values composed source-to-state."""
    step = defaultdict(list)
    for tr in t.transitions:
        if tr.inp is None:
            step[tr.dst].append((tr.out, tr.src))
    reach = {}
    for q in range(t.n_states):
        items = [(q, t.monoid.unit)]
        seen = {items[0]}
        queue = deque(items)
        while queue:
            p, v = queue.popleft()
            for m, src in step[p]:
                node = (src, m * v)
                if node not in seen:
                    seen.add(node)
                    items.append(node)
                    queue.append(node)
        reach[q] = items
    return reach


def generalized_transitions(t: Transducer):
    """Every single-symbol step of t including surrounding ε movement.

    Returns (src, sym, value, dst) tuples: for a real-time transducer
    exactly its transition list, otherwise one entry per path shaped
    ε*·sym·ε* with the ε outputs folded into the value.  Enumeration
    order is declaration order of the symbol transition, then discovery
    order of the ε extensions.  Requires every ε-cycle to be output-free
    (which the functionality test guarantees), otherwise the expansion
    would not be finite.
    """
    if t.real_time:
        return [(tr.src, tr.inp, tr.out, tr.dst) for tr in t.transitions]
    into = _eps_values_into(t)
    outof = _eps_values_from(t)
    gen = []
    seen = set()
    for tr in t.transitions:
        if tr.inp is None:
            continue
        for p, v1 in into[tr.src]:
            for q, v2 in outof[tr.dst]:
                g = (p, tr.inp, v1 * tr.out * v2, q)
                if g not in seen:
                    seen.add(g)
                    gen.append(g)
    return gen


def output_value(li, a, ri, left, right, delta, phi, verify=False):
    """The output entry for (left subset li, symbol a, right subset ri).

    Returns None when no state is simultaneously reachable here and able
    to finish the word (the entry stays undefined).  Otherwise solves
    delay(p) ∘ c = value ∘ delay(p') on the first transition of delta
    connecting the two intersection sets; with verify every such
    transition is checked to give the same c.
    """
    ri2 = right.delta.get((ri, a))
    if ri2 is None:
        return None
    S = tuple(sorted(set(left.subsets[li]) & set(right.subsets[ri2])))
    if not S:
        return None
    li2 = left.delta.get((li, a))
    assert li2 is not None, "reachable states must have somewhere to go"
    S2 = tuple(sorted(set(left.subsets[li2]) & set(right.subsets[ri])))
    phi_s, phi_s2 = phi[S], phi[S2]
    members, members2 = set(S), set(S2)
    c = None
    for p, sym, m, q in delta:
        if sym != a or p not in members or q not in members2:
            continue
        cand = solve_right(phi_s[p], m * phi_s2[q])
        if cand is None:
            raise CompileError(
                f"delay equation for transition ({p}, {sym!r}, {q}) has no solution"
            )
        if c is None:
            c = cand
            if not verify:
                break
        elif cand != c:
            raise CompileError(
                f"output entry ({li}, {a!r}, {ri}) is not well defined: "
                f"transition ({p}, {sym!r}, {q}) solves to {cand!r}, expected {c!r}"
            )
    if c is None:
        raise CompileError(f"no transition connects {S} to {S2} on {a!r}")
    return c


def compile(t: Transducer, verdict: FunctionalityVerdict | None = None, verify=True):
    """Build the equivalent bimachine for a functional transducer.

    Reuses the squared automaton and valuation already computed by the
    functionality test (running it first when no verdict is passed).
    With verify the well-definedness of every output entry is asserted
    across all transitions rather than trusted.
    """
    if verdict is None:
        verdict = test_functionality(t)
    if not verdict.functional:
        raise NotFunctionalError(verdict)
    tt = verdict.trimmed
    underlying = project_input(tt)
    if tt.real_time:
        left = determinize(underlying)
        right = determinize(reverse(underlying))
    else:
        left = determinize_eps(underlying)
        right = determinize_eps(reverse(underlying))
    sq, val = verdict.squared, verdict.valuation
    nu = {sq.pairs[i]: v for i, v in val.nu.items()}
    phi = {}
    for L in left.subsets:
        for R in right.subsets:
            S = tuple(sorted(set(L) & set(R)))
            if S and S not in phi:
                phi[S] = set_mge(S, nu, tt.monoid)
    delta = generalized_transitions(tt)
    psi = {}
    for li in range(left.n_states):
        for a in tt.alphabet:
            for ri in range(right.n_states):
                c = output_value(li, a, ri, left, right, delta, phi, verify=verify)
                if c is not None:
                    psi[(li, a, ri)] = c
    eps_out = next(iter(verdict.eps_outputs), None)
    return Bimachine(tt.monoid, tt.alphabet, left, right, psi, eps_out)
