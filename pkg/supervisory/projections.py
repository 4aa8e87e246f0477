import logging
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .automata import (Generator, NondetAutomaton, determinize,
                       difference_witness, prefix_closure, sync_product)
from .events import Word
from .exceptions import AlphabetMismatchError, ProjectionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProjectionSpec:
    """Natural projection P: source* → target*, erasing events outside target."""
    source: frozenset[str]
    target: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, 'source', frozenset(self.source))
        object.__setattr__(self, 'target', frozenset(self.target))
        if not self.target <= self.source:
            raise ProjectionError(f"target events {sorted(self.target - self.source)} are not in the source alphabet")

    @property
    def is_identity(self) -> bool:
        return self.source == self.target

    def apply(self, word: Iterable[str]) -> Word:
        return tuple(event for event in word if event in self.target)


def project(g: Generator, spec: ProjectionSpec) -> Generator:
    if g.alphabet != spec.source:
        raise AlphabetMismatchError(
            f"generator alphabet {sorted(g.alphabet)} differs from projection source {sorted(spec.source)}")
    if spec.is_identity:
        return g
    return determinize(NondetAutomaton.relabel(g, spec.target))


def lift(g: Generator, bigger: Iterable[str]) -> Generator:
    """Inverse projection: self-loop every new event at every state."""
    bigger = frozenset(bigger)
    if not g.alphabet <= bigger:
        raise AlphabetMismatchError(f"events {sorted(g.alphabet - bigger)} are missing from the lifted alphabet")
    events = g.table.order(bigger)
    if events == g.events:
        return g
    if g.initial is None:
        return Generator.empty(g.table, events)
    delta = np.empty((g.n_states, len(events)), dtype=np.int64)
    loops = np.arange(g.n_states)
    for column, event in enumerate(events):
        delta[:, column] = g.delta[:, g.event_index[event]] if event in g.alphabet else loops
    return Generator(g.table, events, delta, g.initial, g.marked, g.labels)


@dataclass(frozen=True)
class DecompositionVerdict:
    holds: bool
    counterexample: Optional[Word] = None

    def __bool__(self):
        return self.holds


def _check_cd_alphabets(k: Generator, s1: frozenset[str], s2: frozenset[str], sk: frozenset[str]):
    if k.alphabet != s1 | s2:
        raise AlphabetMismatchError("the specification alphabet must be the union of both subsystem alphabets")
    if not s1 & s2 <= sk:
        raise AlphabetMismatchError(f"shared events {sorted((s1 & s2) - sk)} are missing from the coordinator alphabet")
    if not sk <= s1 | s2:
        raise AlphabetMismatchError(f"coordinator events {sorted(sk - (s1 | s2))} belong to no subsystem")


def check_cd(k: Generator, s1: Iterable[str], s2: Iterable[str], sk: Iterable[str]) -> DecompositionVerdict:
    """Conditional decomposability K = P_{1+k}(K) ∥ P_{2+k}(K); only ⊇ can fail."""
    s1, s2, sk = frozenset(s1), frozenset(s2), frozenset(sk)
    _check_cd_alphabets(k, s1, s2, sk)
    sigma = s1 | s2
    composed = sync_product(project(k, ProjectionSpec(sigma, s1 | sk)),
                            project(k, ProjectionSpec(sigma, s2 | sk)))
    counterexample = difference_witness(composed, k)
    return DecompositionVerdict(counterexample is None, counterexample)


def is_decomposable(k: Generator, s1, s2, sk) -> bool:
    """Both K and its prefix closure are conditionally decomposable."""
    return bool(check_cd(k, s1, s2, sk)) and bool(check_cd(prefix_closure(k), s1, s2, sk))


def _cd_counterexample(k: Generator, s1, s2, sk) -> Optional[Word]:
    for language in (k, prefix_closure(k)):
        verdict = check_cd(language, s1, s2, sk)
        if not verdict:
            return verdict.counterexample
    return None


def extend_sigma_k(k: Generator, s1: Iterable[str], s2: Iterable[str], sk0: Iterable[str]) -> frozenset[str]:
    """
    Greedy coordinator-alphabet extension until K and its prefix closure are
    both decomposable. Candidates are ranked controllable first, then by
    event-table order. Each step takes the first candidate that completes the
    extension on its own; failing that, it adds the first candidate occurring in
    the current counterexample.
    """
    s1, s2, sk = frozenset(s1), frozenset(s2), frozenset(sk0)
    _check_cd_alphabets(k, s1, s2, sk)
    table = k.table
    counterexample = _cd_counterexample(k, s1, s2, sk)
    while counterexample is not None:
        candidates = sorted(table.order((s1 | s2) - sk), key=lambda event: not table[event].controllable)
        chosen = next((event for event in candidates if is_decomposable(k, s1, s2, sk | {event})), None)
        if chosen is None:
            chosen = next((event for event in candidates if event in counterexample), candidates[0])
        sk = sk | {chosen}
        logger.debug("coordinator alphabet extended with %s", chosen)
        counterexample = _cd_counterexample(k, s1, s2, sk)
    return sk
