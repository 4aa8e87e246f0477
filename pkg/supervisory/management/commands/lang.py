from django.core.management.base import BaseCommand

from supervisory.automata import difference_witness, enumerate_words
from supervisory.events import EventTable, format_word
from supervisory.exceptions import FormatError
from supervisory.formats import read_generator
from supervisory.mixins import ReportCommandMixin
from supervisory.reports import render
from supervisory.verdicts import ConditionVerdict


class Command(ReportCommandMixin, BaseCommand):
    help = "Compare or enumerate generator languages: equal A B, includes A B, enumerate A."

    def add_arguments(self, parser):
        parser.add_argument('operation', choices=['equal', 'includes', 'enumerate'])
        parser.add_argument('generators', nargs='+', help="generator files")
        parser.add_argument('--length', type=int, default=4, help="length bound for enumerate")
        parser.add_argument('--generated', action='store_true', help="use generated instead of marked languages")
        super().add_arguments(parser)

    def run(self, options):
        table = EventTable()
        operation, paths = options['operation'], options['generators']
        expected = 1 if operation == 'enumerate' else 2
        if len(paths) != expected:
            raise FormatError(f"{operation} takes {expected} generator file(s)")
        generators = [read_generator(path, table).generator for path in paths]
        generated = options['generated']
        if operation == 'enumerate':
            words = enumerate_words(generators[0], options['length'], generated)
            if options['format'] == 'machine':
                return render('enumerate', [], 'machine', extra={'words': [list(w) for w in words]}), True
            return ''.join(format_word(w) + '\n' for w in words), True
        first, second = generators
        verdicts = [_inclusion('includes', first, second, generated)]
        if operation == 'equal':
            verdicts.append(_inclusion('included', second, first, generated))
        return render(operation, verdicts, options['format']), all(verdicts)


def _inclusion(name, bigger, smaller, generated) -> ConditionVerdict:
    """L(bigger) ⊇ L(smaller), witnessed by a word of `smaller` missing from `bigger`."""
    witness = difference_witness(smaller, bigger, generated)
    return ConditionVerdict.passed(name) if witness is None else ConditionVerdict.failed(name, witness)
