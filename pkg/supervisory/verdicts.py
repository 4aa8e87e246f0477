from dataclasses import dataclass, replace
from typing import Iterable, Optional

from .events import Word, format_word


@dataclass(frozen=True)
class ConditionVerdict:
    """
    Outcome of a decision procedure. When the condition fails, `word` (and,
    depending on the condition, `event` and `other`) replay the violation.
    """
    holds: bool
    name: str = ''
    word: Optional[Word] = None
    event: Optional[str] = None
    other: Optional[Word] = None
    level: Optional[str] = None

    def __post_init__(self):
        if self.holds and self.word is not None:
            raise ValueError("a holding verdict carries no witness")
        if not self.holds and self.word is None:
            raise ValueError("a failing verdict needs a witness word")

    def __bool__(self):
        return self.holds

    @classmethod
    def passed(cls, name: str = '', level: Optional[str] = None) -> 'ConditionVerdict':
        return cls(True, name, level=level)

    @classmethod
    def failed(cls, name: str, word: Word, event: Optional[str] = None,
               other: Optional[Word] = None, level: Optional[str] = None) -> 'ConditionVerdict':
        return cls(False, name, tuple(word), event, None if other is None else tuple(other), level)

    def tagged(self, name: Optional[str] = None, level: Optional[str] = None) -> 'ConditionVerdict':
        return replace(self, name=self.name if name is None else name, level=self.level if level is None else level)

    @property
    def witness(self) -> Optional[dict]:
        if self.holds:
            return None
        witness = {'word': list(self.word)}
        if self.event is not None:
            witness['event'] = self.event
        if self.other is not None:
            witness['other'] = list(self.other)
        return witness

    def describe(self) -> str:
        if self.holds:
            return 'holds'
        parts = [f"word={format_word(self.word)}"]
        if self.other is not None:
            parts.append(f"other={format_word(self.other)}")
        if self.event is not None:
            parts.append(f"event={self.event}")
        return ', '.join(parts)


@dataclass(frozen=True)
class LevelVerdict:
    """A three-part conditional property evaluated at levels k, 1+k and 2+k."""
    name: str
    items: tuple[ConditionVerdict, ...]

    def __post_init__(self):
        object.__setattr__(self, 'items', tuple(self.items))

    @property
    def holds(self) -> bool:
        return all(item.holds for item in self.items)

    def __bool__(self):
        return self.holds

    @property
    def failing(self) -> Optional[ConditionVerdict]:
        return next((item for item in self.items if not item.holds), None)

    @property
    def level(self) -> Optional[str]:
        failing = self.failing
        return None if failing is None else failing.level

    def __iter__(self):
        return iter(self.items)


def combine(name: str, verdicts: Iterable[ConditionVerdict]) -> ConditionVerdict:
    """First failing verdict renamed to `name`, or a pass."""
    for verdict in verdicts:
        if not verdict.holds:
            return verdict.tagged(name=name)
    return ConditionVerdict.passed(name)
