import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .automata import (UNDEFINED, Generator, accessible_mask,
                       blocking_witness, coaccessible_mask,
                       difference_witness, generated,
                       intersection, prefix_closure, restrict, sync_product,
                       trim)
from .events import Word
from .exceptions import AlphabetMismatchError, SynthesisInvariantError
from .projections import ProjectionSpec, lift, project
from .verdicts import ConditionVerdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ControlContext:
    """Controlled generator (G, Σc, Q): plant over Σ, Σu, and observation Q: Σ* → Σo*."""
    plant: Generator
    uncontrollable: frozenset[str]
    observation: ProjectionSpec

    def __post_init__(self):
        object.__setattr__(self, 'uncontrollable', frozenset(self.uncontrollable))
        if not self.uncontrollable <= self.plant.alphabet:
            raise AlphabetMismatchError(
                f"uncontrollable events {sorted(self.uncontrollable - self.plant.alphabet)} are not plant events")
        if self.observation.source != self.plant.alphabet:
            raise AlphabetMismatchError("observation source must be the plant alphabet")

    @classmethod
    def from_table(cls, plant: Generator, observed: Optional[Iterable[str]] = None) -> 'ControlContext':
        """Σu from the event table; Σo from the table flags unless `observed` is given."""
        sigma = plant.alphabet
        target = plant.table.observable(sigma) if observed is None else frozenset(observed) & sigma
        return cls(plant, plant.table.uncontrollable(sigma), ProjectionSpec(sigma, target))

    @classmethod
    def fully_observed(cls, plant: Generator, uncontrollable: Iterable[str]) -> 'ControlContext':
        return cls(plant, frozenset(uncontrollable), ProjectionSpec(plant.alphabet, plant.alphabet))

    @property
    def sigma(self) -> frozenset[str]:
        return self.plant.alphabet

    @property
    def controllable(self) -> frozenset[str]:
        return self.sigma - self.uncontrollable


def _require_plant_alphabet(k: Generator, ctx: ControlContext):
    if k.alphabet != ctx.sigma:
        raise AlphabetMismatchError(
            f"specification alphabet {sorted(k.alphabet)} differs from plant alphabet {sorted(ctx.sigma)}")


def is_controllable(k: Generator, ctx: ControlContext) -> ConditionVerdict:
    """K̄Σu ∩ L ⊆ K̄, decided on the product of K̄ and the plant."""
    _require_plant_alphabet(k, ctx)
    closure = prefix_closure(k)
    plant = ctx.plant
    if closure.initial is None or plant.initial is None:
        return ConditionVerdict.passed('controllable')
    uncontrollable = [event for event in plant.events if event in ctx.uncontrollable]
    start = (closure.initial, plant.initial)
    parents: dict = {start: None}
    queue = deque([start])
    while queue:
        qk, qp = queue.popleft()
        for event in plant.events:
            dp = plant.step(qp, event)
            if dp == UNDEFINED:
                continue
            dk = closure.step(qk, event)
            if dk == UNDEFINED:
                if event in uncontrollable:
                    return ConditionVerdict.failed('controllable', _unwind(parents, (qk, qp)), event)
                continue
            nxt = (dk, dp)
            if nxt not in parents:
                parents[nxt] = ((qk, qp), event)
                queue.append(nxt)
    return ConditionVerdict.passed('controllable')


def _unwind(parents: dict, node) -> Word:
    word = []
    while parents[node] is not None:
        node, event = parents[node]
        word.append(event)
    return tuple(reversed(word))


class _SupervisorGraph:
    """
    Deterministic product Z of the specification recognizer (completed with an
    escape state for words leaving K̄), the plant, and, under partial
    observation, the observer estimate. Every state of Z carries its plant
    state, and all Z-states sharing an estimate form one observation class, so
    controllability and normality both become conditions on sets of states.
    """
    ESCAPE = -1

    def __init__(self, k: Generator, ctx: ControlContext, track_observation: bool):
        self.spec = trim(k)
        self.ctx = ctx
        self.plant = ctx.plant
        self.events = self.plant.events
        self.observed = ctx.observation.target
        self.track_observation = track_observation and not ctx.observation.is_identity
        self._estimates: dict[frozenset, int] = {}
        self._closures: dict[frozenset, frozenset] = {}
        self.nodes: list[tuple[int, int, int]] = []
        self.delta: list[list[int]] = []
        self._explore()

    def _spec_step(self, qk: int, event: str) -> int:
        if qk == self.ESCAPE:
            return self.ESCAPE
        dst = self.spec.step(qk, event)
        return self.ESCAPE if dst == UNDEFINED else dst

    def _silent_closure(self, concrete: frozenset) -> frozenset:
        cached = self._closures.get(concrete)
        if cached is not None:
            return cached
        closure = set(concrete)
        stack = list(concrete)
        while stack:
            qk, qp = stack.pop()
            for event in self.events:
                if event in self.observed:
                    continue
                dp = self.plant.step(qp, event)
                if dp == UNDEFINED:
                    continue
                nxt = (self._spec_step(qk, event), dp)
                if nxt not in closure:
                    closure.add(nxt)
                    stack.append(nxt)
        result = frozenset(closure)
        self._closures[concrete] = result
        return result

    def _estimate_id(self, estimate: frozenset) -> int:
        if estimate not in self._estimates:
            self._estimates[estimate] = len(self._estimates)
        return self._estimates[estimate]

    def _observe(self, estimate: frozenset, event: str) -> frozenset:
        moved = set()
        for qk, qp in estimate:
            dp = self.plant.step(qp, event)
            if dp != UNDEFINED:
                moved.add((self._spec_step(qk, event), dp))
        return self._silent_closure(frozenset(moved))

    def _explore(self):
        if self.plant.initial is None:
            return
        qk0 = self.ESCAPE if self.spec.initial is None else self.spec.initial
        concrete0 = (qk0, self.plant.initial)
        estimates = {}
        if self.track_observation:
            estimate0 = self._silent_closure(frozenset([concrete0]))
            start = (qk0, self.plant.initial, self._estimate_id(estimate0))
            estimates[start[2]] = estimate0
        else:
            start = (qk0, self.plant.initial, 0)
        index = {start: 0}
        self.nodes.append(start)
        queue = deque([start])
        while queue:
            node = queue.popleft()
            qk, qp, oid = node
            row = []
            for event in self.events:
                dp = self.plant.step(qp, event)
                if dp == UNDEFINED:
                    row.append(UNDEFINED)
                    continue
                noid = oid
                if self.track_observation and event in self.observed:
                    estimate = self._observe(estimates[oid], event)
                    noid = self._estimate_id(estimate)
                    estimates[noid] = estimate
                nxt = (self._spec_step(qk, event), dp, noid)
                if nxt not in index:
                    index[nxt] = len(self.nodes)
                    self.nodes.append(nxt)
                    queue.append(nxt)
                row.append(index[nxt])
            self.delta.append(row)
        logger.debug("supervisor graph: %d states, %d observation classes", len(self.nodes), max(1, len(self._estimates)))

    def generator(self) -> Generator:
        marked = [qk != self.ESCAPE and self.spec.marked[qk] and self.plant.marked[qp]
                  for qk, qp, _oid in self.nodes]
        labels = [f"{qk}|{qp}|{oid}" for qk, qp, oid in self.nodes]
        delta = np.array(self.delta, dtype=np.int64).reshape(len(self.nodes), len(self.events))
        initial = 0 if self.nodes else None
        return Generator(self.plant.table, self.events, delta, initial, np.array(marked, dtype=bool), labels)


def _supremal(k: Generator, ctx: ControlContext, controllable: bool, normal: bool) -> Generator:
    _require_plant_alphabet(k, ctx)
    graph = _SupervisorGraph(k, ctx, track_observation=normal)
    z = graph.generator()
    if z.initial is None:
        return Generator.empty(k.table, k.events)
    alive = np.array([qk != graph.ESCAPE for qk, _qp, _oid in graph.nodes], dtype=bool)
    uncontrollable_columns = [j for j, event in enumerate(z.events) if event in ctx.uncontrollable]
    classes: dict[int, list[int]] = {}
    if graph.track_observation:
        for state, (_qk, _qp, oid) in enumerate(graph.nodes):
            classes.setdefault(oid, []).append(state)
    passes = 0
    while True:
        passes += 1
        alive &= accessible_mask(z, alive) & coaccessible_mask(z, alive)
        removed = np.zeros_like(alive)
        if controllable:
            for column in uncontrollable_columns:
                targets = z.delta[:, column]
                escapes = (targets != UNDEFINED) & ~alive[np.where(targets == UNDEFINED, 0, targets)]
                removed |= alive & escapes
        if normal:
            for members in classes.values():
                inside = alive[members]
                if inside.any() and not inside.all():
                    removed[members] |= inside
        if not removed.any():
            break
        logger.debug("supremal pass %d removed %d states", passes, int(removed.sum()))
        alive &= ~removed
    result = trim(restrict(z, alive))
    logger.debug("supremal sublanguage after %d passes: %d states", passes, result.n_states)
    return result


def sup_c(k: Generator, ctx: ControlContext) -> Generator:
    """Supremal controllable sublanguage of L_m(k) ∩ L_m(plant) with respect to L(plant) and Σu."""
    result = _supremal(k, ctx, controllable=True, normal=False)
    _self_check(result, ctx, controllable=True, normal=False)
    return result


def sup_n(k: Generator, ctx: ControlContext) -> Generator:
    """Supremal sublanguage of L_m(k) ∩ L_m(plant) whose closure is normal with respect to L(plant) and Q."""
    result = _supremal(k, ctx, controllable=False, normal=True)
    _self_check(result, ctx, controllable=False, normal=True)
    return result


def sup_cn(k: Generator, ctx: ControlContext) -> Generator:
    """Supremal controllable and normal sublanguage."""
    result = _supremal(k, ctx, controllable=True, normal=True)
    _self_check(result, ctx, controllable=True, normal=True)
    return result


def _self_check(result: Generator, ctx: ControlContext, controllable: bool, normal: bool):
    if controllable and not is_controllable(result, ctx):
        raise SynthesisInvariantError("supremal sublanguage is not controllable")
    if normal and not is_normal(result, ctx):
        raise SynthesisInvariantError("supremal sublanguage is not normal")


def is_observable(k: Generator, ctx: ControlContext,
                  controllable_set: Optional[Iterable[str]] = None) -> ConditionVerdict:
    """
    Observability of K̄ with respect to L(plant), Σc and Q, decided on pairs of
    observation-equivalent words. The witness is (s, s', σ) with Q(s) = Q(s'),
    sσ ∈ K̄ and s'σ ∈ L ∖ K̄; `word` is s, `other` is s'.
    """
    _require_plant_alphabet(k, ctx)
    controllable_set = ctx.controllable if controllable_set is None else frozenset(controllable_set)
    closure = prefix_closure(k)
    plant = ctx.plant
    if closure.initial is None or plant.initial is None:
        return ConditionVerdict.passed('observable')
    observed = ctx.observation.target
    checked = [event for event in plant.events if event in controllable_set]
    start = (closure.initial, closure.initial, plant.initial)
    parents: dict = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        q1, q2, qp = node
        for event in checked:
            if (closure.step(q1, event) != UNDEFINED and plant.step(qp, event) != UNDEFINED
                    and closure.step(q2, event) == UNDEFINED):
                s, s_other = _unwind_pair(parents, node)
                return ConditionVerdict.failed('observable', s, event, s_other)
        for event in plant.events:
            d1 = closure.step(q1, event)
            d2 = closure.step(q2, event)
            dp = plant.step(qp, event)
            moves = []
            if event in observed:
                if d1 != UNDEFINED and d2 != UNDEFINED and dp != UNDEFINED:
                    moves.append(((d1, d2, dp), (event, event)))
            else:
                if d1 != UNDEFINED:
                    moves.append(((d1, q2, qp), (event, None)))
                if d2 != UNDEFINED and dp != UNDEFINED:
                    moves.append(((q1, d2, dp), (None, event)))
            for nxt, labels in moves:
                if nxt not in parents:
                    parents[nxt] = (node, labels)
                    queue.append(nxt)
    return ConditionVerdict.passed('observable')


def _unwind_pair(parents: dict, node) -> tuple[Word, Word]:
    first, second = [], []
    while parents[node] is not None:
        node, (a, b) = parents[node]
        if a is not None:
            first.append(a)
        if b is not None:
            second.append(b)
    return tuple(reversed(first)), tuple(reversed(second))


def normal_closure(k: Generator, ctx: ControlContext) -> Generator:
    """P⁻¹P(K̄) ∩ L(plant), all states marked."""
    closure = prefix_closure(k)
    observed = lift(project(closure, ctx.observation), ctx.sigma)
    return intersection(observed, generated(ctx.plant))


def is_normal(k: Generator, ctx: ControlContext) -> ConditionVerdict:
    """K̄ = P⁻¹P(K̄) ∩ L(plant); the witness is the shortest word in the symmetric difference."""
    _require_plant_alphabet(k, ctx)
    closure = prefix_closure(k)
    candidate = normal_closure(k, ctx)
    witness = difference_witness(candidate, closure)
    if witness is None:
        witness = difference_witness(closure, candidate)
    if witness is None:
        return ConditionVerdict.passed('normal')
    return ConditionVerdict.failed('normal', witness)


def is_lm_closed(k: Generator, plant: Generator) -> ConditionVerdict:
    """K = K̄ ∩ L_m(plant)."""
    if k.alphabet != plant.alphabet:
        raise AlphabetMismatchError("specification and plant alphabets differ")
    bounded = intersection(prefix_closure(k), plant)
    witness = difference_witness(bounded, k)
    if witness is None:
        witness = difference_witness(k, bounded)
    if witness is None:
        return ConditionVerdict.passed('lm_closed')
    return ConditionVerdict.failed('lm_closed', witness)


def nonconflicting(g1: Generator, g2: Generator) -> ConditionVerdict:
    """closure(L1 ∥ L2) = closure(L1) ∥ closure(L2): the product of trim recognizers is nonblocking."""
    product = sync_product(trim(g1), trim(g2))
    witness = blocking_witness(product)
    if witness is None:
        return ConditionVerdict.passed('nonconflicting')
    return ConditionVerdict.failed('nonconflicting', witness)
