import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional

import numpy as np

from .events import EventTable, Word
from .exceptions import (AlphabetMismatchError, NondeterminismError,
                         UnknownEventError)

logger = logging.getLogger(__name__)

UNDEFINED = -1
SILENT = None


@dataclass(frozen=True, eq=False)
class Generator:
    """
    Deterministic generator G = (Q, Σ, f, q0, Qm) with dense integer states.

    `delta[q, j]` is the successor of state q under `events[j]`, or UNDEFINED.
    The empty language is the generator with zero states and no initial state.
    """
    table: EventTable
    events: tuple[str, ...]
    delta: np.ndarray
    initial: Optional[int]
    marked: np.ndarray
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        events = tuple(self.events)
        if self.table.order(events) != events:
            raise UnknownEventError(f"alphabet {events} is not in event-table order")
        delta = np.array(self.delta, dtype=np.int64)
        if delta.ndim != 2:
            delta = delta.reshape(-1, len(events))
        if delta.shape[1] != len(events):
            raise ValueError("transition table does not match the alphabet")
        marked = np.array(self.marked, dtype=bool).reshape(-1)
        n_states = delta.shape[0]
        if marked.shape[0] != n_states:
            raise ValueError("marked vector does not match the number of states")
        if (self.initial is None) != (n_states == 0):
            raise ValueError("a generator has an initial state iff it has states")
        if self.initial is not None and not 0 <= self.initial < n_states:
            raise ValueError(f"initial state {self.initial} out of range")
        if delta.size and (delta.max() >= n_states or delta.min() < UNDEFINED):
            raise ValueError("transition target out of range")
        delta.setflags(write=False)
        marked.setflags(write=False)
        object.__setattr__(self, 'events', events)
        object.__setattr__(self, 'delta', delta)
        object.__setattr__(self, 'marked', marked)
        object.__setattr__(self, 'labels', tuple(self.labels))

    @classmethod
    def build(cls, table: EventTable, events: Iterable[str], n_states: int,
              transitions: Iterable[tuple[int, str, int]], initial: Optional[int],
              marked: Iterable[int] = (), labels: Iterable[str] = ()) -> 'Generator':
        events = table.order(events)
        index = {event: j for j, event in enumerate(events)}
        delta = np.full((n_states, len(events)), UNDEFINED, dtype=np.int64)
        for src, event, dst in transitions:
            if event not in index:
                raise UnknownEventError(f"event {event!r} is not in the alphabet {events}")
            if not (0 <= src < n_states and 0 <= dst < n_states):
                raise ValueError(f"transition ({src}, {event}, {dst}) out of range")
            current = delta[src, index[event]]
            if current != UNDEFINED and current != dst:
                raise NondeterminismError(f"state {src} has two successors under {event!r}")
            delta[src, index[event]] = dst
        marks = np.zeros(n_states, dtype=bool)
        marks[list(marked)] = True
        return cls(table, events, delta, initial, marks, tuple(labels))

    @classmethod
    def empty(cls, table: EventTable, events: Iterable[str]) -> 'Generator':
        events = table.order(events)
        return cls(table, events, np.zeros((0, len(events)), dtype=np.int64), None, np.zeros(0, dtype=bool))

    @classmethod
    def from_words(cls, table: EventTable, events: Iterable[str], words: Iterable[Word],
                   closed: bool = False) -> 'Generator':
        """Trie recognizer of a finite language; `closed` marks every prefix."""
        words = list(words)
        if not words:
            return cls.empty(table, events)
        transitions: dict[tuple[int, str], int] = {}
        marked = set()
        n_states = 1
        for word in words:
            state = 0
            for event in word:
                if (state, event) not in transitions:
                    transitions[(state, event)] = n_states
                    n_states += 1
                state = transitions[(state, event)]
                if closed:
                    marked.add(state)
            marked.add(state)
        if closed:
            marked.add(0)
        return cls.build(table, events, n_states, [(s, e, d) for (s, e), d in transitions.items()], 0, marked)

    @property
    def n_states(self) -> int:
        return self.delta.shape[0]

    @property
    def is_empty(self) -> bool:
        return self.initial is None

    @cached_property
    def alphabet(self) -> frozenset[str]:
        return frozenset(self.events)

    @cached_property
    def event_index(self) -> dict[str, int]:
        return {event: j for j, event in enumerate(self.events)}

    def label(self, state: int) -> str:
        return self.labels[state] if self.labels else str(state)

    def step(self, state: int, event: str) -> int:
        column = self.event_index.get(event)
        if column is None or state == UNDEFINED:
            return UNDEFINED
        return int(self.delta[state, column])

    def successors(self, state: int) -> Iterator[tuple[str, int]]:
        for column, dst in enumerate(self.delta[state]):
            if dst != UNDEFINED:
                yield self.events[column], int(dst)

    def transitions(self) -> Iterator[tuple[int, str, int]]:
        for state in range(self.n_states):
            for event, dst in self.successors(state):
                yield state, event, dst

    def with_marked(self, marked: np.ndarray) -> 'Generator':
        return Generator(self.table, self.events, self.delta, self.initial, marked, self.labels)

    def __repr__(self):
        return f"Generator(events={list(self.events)}, states={self.n_states}, marked={int(self.marked.sum())})"


@dataclass(frozen=True)
class NondetAutomaton:
    """Intermediate automaton of projection and lifting; SILENT labels are never alphabet members."""
    table: EventTable
    events: tuple[str, ...]
    n_states: int
    transitions: dict[tuple[int, Optional[str]], frozenset[int]] = field(default_factory=dict)
    initial: frozenset[int] = frozenset()
    marked: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, 'events', self.table.order(self.events))
        allowed = set(self.events)
        for (_state, event) in self.transitions:
            if event is not SILENT and event not in allowed:
                raise UnknownEventError(f"event {event!r} is not in the alphabet {self.events}")

    @classmethod
    def relabel(cls, g: Generator, keep: Iterable[str]) -> 'NondetAutomaton':
        """Copy of g where events outside `keep` become silent moves."""
        keep = frozenset(keep)
        transitions: dict[tuple[int, Optional[str]], set[int]] = {}
        for src, event, dst in g.transitions():
            label = event if event in keep else SILENT
            transitions.setdefault((src, label), set()).add(dst)
        initial = frozenset() if g.initial is None else frozenset([g.initial])
        return cls(g.table, g.table.order(keep), g.n_states,
                   {key: frozenset(value) for key, value in transitions.items()},
                   initial, frozenset(int(q) for q in np.flatnonzero(g.marked)))

    def silent_closure(self, states: Iterable[int]) -> frozenset[int]:
        closure = set(states)
        stack = list(closure)
        while stack:
            state = stack.pop()
            for nxt in self.transitions.get((state, SILENT), ()):
                if nxt not in closure:
                    closure.add(nxt)
                    stack.append(nxt)
        return frozenset(closure)


def determinize(n: NondetAutomaton) -> Generator:
    if not n.initial:
        return Generator.empty(n.table, n.events)
    start = n.silent_closure(n.initial)
    index = {start: 0}
    subsets = [start]
    transitions = []
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        for event in n.events:
            reached = set()
            for state in subset:
                reached.update(n.transitions.get((state, event), ()))
            if not reached:
                continue
            nxt = n.silent_closure(reached)
            if nxt not in index:
                index[nxt] = len(subsets)
                subsets.append(nxt)
                queue.append(nxt)
            transitions.append((index[subset], event, index[nxt]))
    marked = [i for i, subset in enumerate(subsets) if subset & n.marked]
    labels = ['{' + ','.join(str(q) for q in sorted(subset)) + '}' for subset in subsets]
    logger.debug("determinized %d states into %d subsets", n.n_states, len(subsets))
    return Generator.build(n.table, n.events, len(subsets), transitions, 0, marked, labels)


def accessible_mask(g: Generator, within: Optional[np.ndarray] = None) -> np.ndarray:
    mask = np.zeros(g.n_states, dtype=bool)
    if g.initial is None or (within is not None and not within[g.initial]):
        return mask
    mask[g.initial] = True
    queue = deque([g.initial])
    while queue:
        state = queue.popleft()
        for dst in g.delta[state]:
            if dst != UNDEFINED and not mask[dst] and (within is None or within[dst]):
                mask[dst] = True
                queue.append(int(dst))
    return mask


def coaccessible_mask(g: Generator, within: Optional[np.ndarray] = None) -> np.ndarray:
    predecessors: list[list[int]] = [[] for _ in range(g.n_states)]
    for src, _event, dst in g.transitions():
        predecessors[dst].append(src)
    targets = g.marked if within is None else g.marked & within
    mask = targets.copy()
    queue = deque(int(q) for q in np.flatnonzero(mask))
    while queue:
        state = queue.popleft()
        for src in predecessors[state]:
            if not mask[src] and (within is None or within[src]):
                mask[src] = True
                queue.append(src)
    return mask


def restrict(g: Generator, keep: np.ndarray) -> Generator:
    """Sub-generator on the kept states, renumbered in their original order."""
    keep = np.asarray(keep, dtype=bool)
    if g.initial is None or not keep[g.initial]:
        return Generator.empty(g.table, g.events)
    renumber = np.full(g.n_states, UNDEFINED, dtype=np.int64)
    renumber[keep] = np.arange(int(keep.sum()))
    rows = g.delta[keep]
    targets = renumber[np.where(rows == UNDEFINED, 0, rows)]
    delta = np.where(rows == UNDEFINED, UNDEFINED, targets)
    labels = tuple(label for label, kept in zip(g.labels, keep) if kept) if g.labels else ()
    return Generator(g.table, g.events, delta, int(renumber[g.initial]), g.marked[keep], labels)


def trim(g: Generator) -> Generator:
    return restrict(g, accessible_mask(g) & coaccessible_mask(g))


def accessible(g: Generator) -> Generator:
    return restrict(g, accessible_mask(g))


def generated(g: Generator) -> Generator:
    """L(G) as a marked language: accessible part with every state marked."""
    part = accessible(g)
    return part.with_marked(np.ones(part.n_states, dtype=bool))


def prefix_closure(g: Generator) -> Generator:
    part = trim(g)
    return part.with_marked(np.ones(part.n_states, dtype=bool))


def is_nonblocking(g: Generator) -> bool:
    return not np.any(accessible_mask(g) & ~coaccessible_mask(g))


def blocking_witness(g: Generator) -> Optional[Word]:
    """Shortest word leading to a reachable state from which no marked state is reachable."""
    coaccessible = coaccessible_mask(g)
    return _shortest_path(g, lambda state: not coaccessible[state])


def _shortest_path(g: Generator, goal) -> Optional[Word]:
    if g.initial is None:
        return None
    parents: dict[int, Optional[tuple[int, str]]] = {g.initial: None}
    queue = deque([g.initial])
    while queue:
        state = queue.popleft()
        if goal(state):
            return _unwind(parents, state)
        for event, dst in g.successors(state):
            if dst not in parents:
                parents[dst] = (state, event)
                queue.append(dst)
    return None


def _unwind(parents: dict, node) -> Word:
    word = []
    while parents[node] is not None:
        node, event = parents[node]
        word.append(event)
    return tuple(reversed(word))


def _synchronize(g1: Generator, g2: Generator) -> tuple[Generator, list[tuple[int, int]]]:
    table = g1.table.merged(g2.table)
    events = table.order(g1.alphabet | g2.alphabet)
    if g1.initial is None or g2.initial is None:
        return Generator.empty(table, events), []
    columns1 = [g1.event_index.get(event, UNDEFINED) for event in events]
    columns2 = [g2.event_index.get(event, UNDEFINED) for event in events]
    start = (g1.initial, g2.initial)
    index = {start: 0}
    pairs = [start]
    rows = []
    queue = deque([start])
    while queue:
        q1, q2 = queue.popleft()
        row = []
        for c1, c2 in zip(columns1, columns2):
            d1 = int(g1.delta[q1, c1]) if c1 != UNDEFINED else q1
            d2 = int(g2.delta[q2, c2]) if c2 != UNDEFINED else q2
            if d1 == UNDEFINED or d2 == UNDEFINED:
                row.append(UNDEFINED)
                continue
            nxt = (d1, d2)
            if nxt not in index:
                index[nxt] = len(pairs)
                pairs.append(nxt)
                queue.append(nxt)
            row.append(index[nxt])
        rows.append(row)
    marked = np.array([g1.marked[a] and g2.marked[b] for a, b in pairs], dtype=bool)
    labels = tuple(f"({g1.label(a)},{g2.label(b)})" for a, b in pairs)
    return Generator(table, events, np.array(rows, dtype=np.int64), 0, marked, labels), pairs


def sync_product(g1: Generator, g2: Generator) -> Generator:
    """Synchronous product: shared events synchronize, private events interleave."""
    return _synchronize(g1, g2)[0]


def intersection(g1: Generator, g2: Generator) -> Generator:
    _require_same_alphabet(g1, g2)
    return sync_product(g1, g2)


def _require_same_alphabet(g1: Generator, g2: Generator):
    if g1.alphabet != g2.alphabet:
        raise AlphabetMismatchError(
            f"alphabets differ: {sorted(g1.alphabet ^ g2.alphabet)} occur in only one operand")


class _Completed:
    """A generator completed with a non-accepting sink, for language comparisons."""

    def __init__(self, g: Generator, events: tuple[str, ...], generated: bool):
        self.g = g
        self.sink = g.n_states
        self.columns = [g.event_index[event] for event in events]
        self.start = self.sink if g.initial is None else g.initial
        self.generated = generated

    def accepts(self, state: int) -> bool:
        if state == self.sink:
            return False
        return True if self.generated else bool(self.g.marked[state])

    def step(self, state: int, position: int) -> int:
        if state == self.sink:
            return self.sink
        dst = int(self.g.delta[state, self.columns[position]])
        return self.sink if dst == UNDEFINED else dst


def lang_equal(g1: Generator, g2: Generator, generated: bool = False) -> bool:
    """Exact equality of L_m (or L when `generated`) by union-find bisimulation."""
    _require_same_alphabet(g1, g2)
    events = g1.events
    a = _Completed(g1, events, generated)
    b = _Completed(g2, events, generated)
    offset = a.sink + 1
    parent = list(range(offset + b.sink + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parent[find(a.start)] = find(offset + b.start)
    stack = [(a.start, b.start)]
    while stack:
        p, q = stack.pop()
        if a.accepts(p) != b.accepts(q):
            return False
        for position in range(len(events)):
            np_, nq = a.step(p, position), b.step(q, position)
            rp, rq = find(np_), find(offset + nq)
            if rp != rq:
                parent[rp] = rq
                stack.append((np_, nq))
    return True


def difference_witness(g1: Generator, g2: Generator, generated: bool = False) -> Optional[Word]:
    """Shortest word of L_m(g1) not in L_m(g2) (L variants when `generated`), or None."""
    _require_same_alphabet(g1, g2)
    events = g1.events
    a = _Completed(g1, events, generated)
    b = _Completed(g2, events, generated)
    if g1.initial is None:
        return None
    useful = np.ones(g1.n_states, dtype=bool) if generated else coaccessible_mask(g1)
    start = (a.start, b.start)
    parents: dict[tuple[int, int], Optional[tuple[tuple[int, int], str]]] = {start: None}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        if a.accepts(p) and not b.accepts(q):
            return _unwind(parents, (p, q))
        for position, event in enumerate(events):
            np_ = a.step(p, position)
            if np_ == a.sink or not useful[np_]:
                continue
            nxt = (np_, b.step(q, position))
            if nxt not in parents:
                parents[nxt] = ((p, q), event)
                queue.append(nxt)
    return None


def lang_includes(g1: Generator, g2: Generator, generated: bool = False) -> bool:
    """True iff the language of g1 includes the language of g2."""
    return difference_witness(g2, g1, generated) is None


def run(g: Generator, word: Iterable[str]) -> int:
    state = UNDEFINED if g.initial is None else g.initial
    for event in word:
        if state == UNDEFINED:
            break
        state = g.step(state, event)
    return state


def generates(g: Generator, word: Iterable[str]) -> bool:
    return run(g, word) != UNDEFINED


def accepts(g: Generator, word: Iterable[str]) -> bool:
    state = run(g, word)
    return state != UNDEFINED and bool(g.marked[state])


def enumerate_words(g: Generator, n: int, generated: bool = False) -> list[Word]:
    """All words of L_m(g) (or L(g)) of length at most n, in event-table lexicographic order."""
    if n < 0:
        raise ValueError("length bound must be non-negative")
    if g.initial is None:
        return []
    useful = np.ones(g.n_states, dtype=bool) if generated else coaccessible_mask(g)
    words: list[Word] = []
    stack: list[tuple[int, Word]] = [(g.initial, ())]
    while stack:
        state, prefix = stack.pop()
        if not useful[state]:
            continue
        if generated or g.marked[state]:
            words.append(prefix)
        if len(prefix) < n:
            # reversed so the first event in table order is popped first
            stack.extend((dst, prefix + (event,)) for event, dst in reversed(list(g.successors(state))))
    return words
