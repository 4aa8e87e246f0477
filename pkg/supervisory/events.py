from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .exceptions import EventConflictError, UnknownEventError

Word = tuple[str, ...]


@dataclass(frozen=True)
class Event:
    name: str
    controllable: bool = True
    observable: bool = True


class EventTable:
    """
    Registry of events with their controllability and observability flags.

    Registration order is the canonical event order: every alphabet, iteration,
    witness search and printed output follows it.
    """

    def __init__(self, events: Iterable[Event] = ()):
        self._events: dict[str, Event] = {}
        for event in events:
            self.register(event.name, event.controllable, event.observable)

    def register(self, name: str, controllable: bool = True, observable: bool = True) -> Event:
        if not name or any(ch.isspace() for ch in name) or name.startswith('#'):
            raise UnknownEventError(f"invalid event name {name!r}")
        event = Event(name, controllable, observable)
        existing = self._events.get(name)
        if existing is None:
            self._events[name] = event
            return event
        if existing != event:
            raise EventConflictError(f"event {name!r} already registered with different flags")
        return existing

    def __contains__(self, name: object) -> bool:
        return name in self._events

    def __iter__(self) -> Iterator[Event]:
        return iter(self._events.values())

    def __len__(self) -> int:
        return len(self._events)

    def __getitem__(self, name: str) -> Event:
        try:
            return self._events[name]
        except KeyError:
            raise UnknownEventError(f"unknown event {name!r}") from None

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self._events)

    def order(self, names: Iterable[str]) -> tuple[str, ...]:
        wanted = set(names)
        unknown = wanted - self._events.keys()
        if unknown:
            raise UnknownEventError(f"unknown events {sorted(unknown)}")
        return tuple(name for name in self._events if name in wanted)

    def uncontrollable(self, names: Optional[Iterable[str]] = None) -> frozenset[str]:
        scope = self._events.keys() if names is None else set(names)
        return frozenset(n for n in scope if not self[n].controllable)

    def controllable(self, names: Optional[Iterable[str]] = None) -> frozenset[str]:
        scope = self._events.keys() if names is None else set(names)
        return frozenset(n for n in scope if self[n].controllable)

    def observable(self, names: Optional[Iterable[str]] = None) -> frozenset[str]:
        scope = self._events.keys() if names is None else set(names)
        return frozenset(n for n in scope if self[n].observable)

    def merged(self, other: 'EventTable') -> 'EventTable':
        if other is self:
            return self
        table = EventTable(self)
        for event in other:
            table.register(event.name, event.controllable, event.observable)
        return table

    def __repr__(self):
        return f"EventTable({list(self._events)})"


def format_word(word: Word, epsilon: str = 'ε') -> str:
    return ' '.join(word) if word else epsilon


def parse_word(text: str) -> Word:
    text = text.strip()
    if text in ('', 'ε', 'eps'):
        return ()
    return tuple(text.replace(',', ' ').split())
