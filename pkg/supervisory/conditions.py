import logging
from collections import deque
from dataclasses import replace
from typing import Iterable

from .automata import (Generator, NondetAutomaton, determinize,
                       difference_witness, lang_equal, prefix_closure, trim)
from .exceptions import AlphabetMismatchError, NotPrefixClosedError
from .projections import ProjectionSpec
from .verdicts import ConditionVerdict

logger = logging.getLogger(__name__)


def _require_source(spec: ProjectionSpec, lang: Generator):
    if lang.alphabet != spec.source:
        raise AlphabetMismatchError(
            f"language alphabet {sorted(lang.alphabet)} differs from projection source {sorted(spec.source)}")


def _require_prefix_closed(lang: Generator) -> Generator:
    part = trim(lang)
    if not lang_equal(part, prefix_closure(part)):
        raise NotPrefixClosedError("condition is only defined for prefix-closed languages")
    return part


class _ProjectedFutures:
    """Projected marked futures of single states and of observer estimates of one generator."""

    def __init__(self, g: Generator, spec: ProjectionSpec):
        self.nfa = NondetAutomaton.relabel(g, spec.target)
        self._cache: dict[frozenset, Generator] = {}

    def closure(self, states: Iterable[int]) -> frozenset[int]:
        return self.nfa.silent_closure(states)

    def step(self, estimate: frozenset[int], event: str) -> frozenset[int]:
        reached = set()
        for state in estimate:
            reached.update(self.nfa.transitions.get((state, event), ()))
        return self.closure(reached)

    def future(self, states: frozenset[int]) -> Generator:
        cached = self._cache.get(states)
        if cached is None:
            cached = determinize(replace(self.nfa, initial=states))
            self._cache[states] = cached
        return cached


def is_observer(spec: ProjectionSpec, lang: Generator) -> ConditionVerdict:
    """
    P is an L-observer for L = L_m(lang): whenever s ∈ L̄ and P(s)v ∈ P(L), some
    su ∈ L has P(su) = P(s)v. The witness is s (`word`) with the unreachable
    observation t = P(s)v (`other`).
    """
    _require_source(spec, lang)
    g = trim(lang)
    if g.initial is None or spec.is_identity:
        return ConditionVerdict.passed('observer')
    futures = _ProjectedFutures(g, spec)
    start = (g.initial, futures.closure([g.initial]))
    parents: dict = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        state, estimate = node
        missing = difference_witness(futures.future(estimate), futures.future(frozenset([state])))
        if missing is not None:
            word = _unwind(parents, node)
            return ConditionVerdict.failed('observer', word, other=spec.apply(word) + missing)
        for event, dst in g.successors(state):
            nxt = (dst, futures.step(estimate, event) if event in spec.target else estimate)
            if nxt not in parents:
                parents[nxt] = (node, event)
                queue.append(nxt)
    return ConditionVerdict.passed('observer')


def _unwind(parents: dict, node):
    word = []
    while parents[node] is not None:
        node, event = parents[node]
        word.append(event)
    return tuple(reversed(word))


def is_occ(spec: ProjectionSpec, lang: Generator, uncontrollable: Iterable[str]) -> ConditionVerdict:
    """
    Output control consistency of the prefix-closed L(lang): along every segment
    between consecutive target events, an uncontrollable closing target event
    forces every interior event to be uncontrollable. The witness is the word up
    to the closing event, which is reported as `event`.
    """
    _require_source(spec, lang)
    g = _require_prefix_closed(lang)
    uncontrollable = frozenset(uncontrollable)
    if g.initial is None:
        return ConditionVerdict.passed('occ')
    start = (g.initial, False)
    parents: dict = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        state, dirty = node
        for event, dst in g.successors(state):
            if event in spec.target:
                if dirty and event in uncontrollable:
                    return ConditionVerdict.failed('occ', _unwind(parents, node), event)
                nxt = (dst, False)
            else:
                nxt = (dst, dirty or event not in uncontrollable)
            if nxt not in parents:
                parents[nxt] = (node, event)
                queue.append(nxt)
    return ConditionVerdict.passed('occ')


def _reachable_targets(g: Generator, state: int, spec: ProjectionSpec, allowed) -> set[str]:
    """Target events enabled after some path of non-target events accepted by `allowed`."""
    seen = {state}
    stack = [state]
    found = set()
    while stack:
        current = stack.pop()
        for event, dst in g.successors(current):
            if event in spec.target:
                found.add(event)
            elif allowed(event) and dst not in seen:
                seen.add(dst)
                stack.append(dst)
    return found


def is_lcc(spec: ProjectionSpec, lang: Generator, uncontrollable: Iterable[str]) -> ConditionVerdict:
    """
    Local control consistency of the prefix-closed L(lang): whenever an
    uncontrollable target event σ can follow s after non-target events, it can
    also follow s after uncontrollable non-target events only. Witness (s, σ).
    """
    _require_source(spec, lang)
    g = _require_prefix_closed(lang)
    uncontrollable = frozenset(uncontrollable)
    if g.initial is None:
        return ConditionVerdict.passed('lcc')
    watched = spec.target & uncontrollable
    parents: dict = {g.initial: None}
    queue = deque([g.initial])
    while queue:
        state = queue.popleft()
        anyhow = _reachable_targets(g, state, spec, lambda event: True) & watched
        if anyhow:
            quietly = _reachable_targets(g, state, spec, lambda event: event in uncontrollable)
            blocked = g.table.order(anyhow - quietly)
            if blocked:
                return ConditionVerdict.failed('lcc', _unwind(parents, state), blocked[0])
        for event, dst in g.successors(state):
            if dst not in parents:
                parents[dst] = (state, event)
                queue.append(dst)
    return ConditionVerdict.passed('lcc')
