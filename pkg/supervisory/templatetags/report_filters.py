from django import template

from supervisory.automata import enumerate_words
from supervisory.config import EPSILON
from supervisory.events import format_word

register = template.Library()


@register.filter(name='word')
def word(value) -> str:
    """
    Render a word as space-separated event names, ε when empty.
    """
    return format_word(tuple(value), EPSILON)


@register.filter(name='outcome')
def outcome(verdict) -> str:
    return 'holds' if verdict else 'FAILS'


@register.filter(name='level_tag')
def level_tag(verdict) -> str:
    return f"[{verdict.level}]" if verdict.level else ''


@register.simple_tag
def language_sample(generator, length: int, limit: int) -> str:
    """Marked words up to `length`, at most `limit` of them, in set notation."""
    words = enumerate_words(generator, int(length))
    if not words:
        return '∅'
    shown = ', '.join(format_word(w, EPSILON) for w in words[:int(limit)])
    more = ', …' if len(words) > int(limit) else ''
    return '{' + shown + more + '}'
