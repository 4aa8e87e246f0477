import tempfile
from pathlib import Path

from django.test import SimpleTestCase, override_settings

from supervisory.automata import enumerate_words
from supervisory.events import EventTable
from supervisory.exceptions import FormatError
from supervisory.formats import (load_problem, parse_generator,
                                 parse_manifest, print_generator,
                                 read_generator)
from supervisory.forms import ManifestForm

from .strategies import FIXTURES

SAMPLE = """\
# a then b, with b uncontrollable and unobservable
EVENTS
a c o
b u uo
STATES 3
INITIAL 0
MARKED 2
TRANSITIONS
0 a 1
1 b 2
"""


class ParseGeneratorTest(SimpleTestCase):
    def assertFormatError(self, text, line, column, fragment):
        with self.assertRaises(FormatError) as caught:
            parse_generator(text)
        self.assertEqual((caught.exception.line, caught.exception.column), (line, column))
        self.assertIn(fragment, caught.exception.message)

    def test_sample(self):
        parsed = parse_generator(SAMPLE)
        self.assertEqual(parsed.table.uncontrollable(), frozenset({'b'}))
        self.assertEqual(parsed.table.observable(), frozenset({'a'}))
        self.assertEqual(enumerate_words(parsed.generator, 3), [('a', 'b')])

    def test_shared_table_collects_events(self):
        table = EventTable()
        parse_generator(SAMPLE, table)
        parse_generator("EVENTS\nc c o\nSTATES 1\nINITIAL 0\nMARKED 0\nTRANSITIONS\n0 c 0\n", table)
        self.assertEqual(table.names, ('a', 'b', 'c'))

    def test_flag_conflict_across_files(self):
        table = EventTable()
        parse_generator(SAMPLE, table)
        with self.assertRaises(FormatError):
            parse_generator("EVENTS\na u o\nSTATES 1\nINITIAL 0\nMARKED\nTRANSITIONS\n", table)

    def test_canonical_print(self):
        parsed = parse_generator(SAMPLE)
        self.assertEqual(print_generator(parsed.generator),
                         "EVENTS\na c o\nb u uo\nSTATES 3\nINITIAL 0\nMARKED 2\nTRANSITIONS\n0 a 1\n1 b 2\n")

    def test_empty_generator_prints_without_initial(self):
        parsed = parse_generator("EVENTS\na c o\nSTATES 0\nMARKED\nTRANSITIONS\n")
        self.assertTrue(parsed.generator.is_empty)
        self.assertEqual(print_generator(parsed.generator), "EVENTS\na c o\nSTATES 0\nMARKED\nTRANSITIONS\n")

    def test_unknown_event(self):
        self.assertFormatError(SAMPLE + "0 z 1\n", 11, 3, "unknown event 'z'")

    def test_conflicting_transition_names_earlier_line(self):
        self.assertFormatError(SAMPLE + "0 a 2\n", 11, 3, "(line 9)")

    def test_bad_flag(self):
        self.assertFormatError("EVENTS\na x o\n", 2, 3, "controllability flag")

    def test_state_out_of_range(self):
        self.assertFormatError("EVENTS\na c o\nSTATES 2\nINITIAL 0\nMARKED 5\n", 5, 8, "out of range")

    def test_missing_initial_points_at_states(self):
        self.assertFormatError("EVENTS\na c o\nSTATES 2\nMARKED 1\nTRANSITIONS\n", 3, 1, "missing INITIAL")

    def test_non_integer(self):
        self.assertFormatError("EVENTS\na c o\nSTATES two\n", 3, 8, "integer")

    def test_read_generator_prefixes_file_name(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'broken.gen'
            path.write_text("EVENTS\na q o\n", encoding='utf-8')
            with self.assertRaises(FormatError) as caught:
                read_generator(path)
        self.assertTrue(caught.exception.message.startswith('broken.gen: '))
        self.assertEqual(caught.exception.line, 2)

    def test_non_utf8_file_is_a_format_error(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'latin.gen'
            path.write_bytes("# caf\u00e9\nEVENTS\na c o\nSTATES 1\nINITIAL 0\n".encode('latin-1'))
            with self.assertRaises(FormatError) as caught:
                read_generator(path)
        self.assertIn('latin.gen is not UTF-8', str(caught.exception))


class ManifestTest(SimpleTestCase):
    def test_parse_manifest(self):
        self.assertEqual(parse_manifest("# comment\ng1 = a.gen\n\nsigma_k=a,b\n"), {'g1': 'a.gen', 'sigma_k': 'a,b'})
        with self.assertRaises(FormatError):
            parse_manifest("g1=a\ng1=b\n")
        with self.assertRaises(FormatError):
            parse_manifest("g1\n")

    def test_form_resolves_files(self):
        data = {'g1': 'g1.gen', 'g2': 'g2.gen', 'spec': 'spec.gen', 'sigma_k': 'a,b'}
        form = ManifestForm(data, base_dir=FIXTURES / 'example2')
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data['sigma_k'], frozenset({'a', 'b'}))
        self.assertIsNone(form.cleaned_data['coordinator'])
        self.assertEqual(form.cleaned_data['g1'], FIXTURES / 'example2' / 'g1.gen')

    @override_settings(SUPERVISORY_OBSERVATION='full')
    def test_observation_default_comes_from_settings(self):
        data = {'g1': 'g1.gen', 'g2': 'g2.gen', 'spec': 'spec.gen', 'sigma_k': 'a b'}
        form = ManifestForm(data, base_dir=FIXTURES / 'example2')
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data['observation'], 'full')

    def test_form_errors(self):
        data = {'g1': 'missing.gen', 'g2': 'g2.gen', 'spec': 'spec.gen', 'sigma_k': 'a,a', 'extra': '1'}
        form = ManifestForm(data, base_dir=FIXTURES / 'example2')
        self.assertFalse(form.is_valid())
        self.assertIn('g1', form.errors)
        self.assertIn('sigma_k', form.errors)
        self.assertIn('__all__', form.errors)

    def test_load_problem(self):
        files = load_problem(FIXTURES / 'example2' / 'example2.prob')
        self.assertEqual(files.table.names, ('c1', 'b', 'a', 'c2', 'u2'))
        self.assertEqual(files.sigma_k, frozenset({'a', 'b'}))
        self.assertIsNone(files.gk)
        self.assertIsNone(files.observed)

    def test_load_problem_reports_unknown_sigma_k_events(self):
        with tempfile.TemporaryDirectory() as directory:
            manifest = Path(directory) / 'bad.prob'
            source = FIXTURES / 'example2'
            manifest.write_text(f"g1={source / 'g1.gen'}\ng2={source / 'g2.gen'}\n"
                                f"spec={source / 'spec.gen'}\nsigma_k=a,b,zz\n", encoding='utf-8')
            with self.assertRaises(FormatError) as caught:
                load_problem(manifest)
        self.assertIn('zz', str(caught.exception))
