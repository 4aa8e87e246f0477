from contextlib import redirect_stderr, redirect_stdout
from io import StringIO
from pathlib import Path
from tempfile import TemporaryDirectory

from django.test import SimpleTestCase

from supervisory.cli import run_cli

from .test_synthesis_commands import EXAMPLE_ONE, EXAMPLE_TWO


class RunCliTest(SimpleTestCase):
    def run_verb(self, *argv):
        out, err = StringIO(), StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = run_cli(list(argv))
        return code, out.getvalue(), err.getvalue()

    def test_unknown_verb(self):
        code, _out, err = self.run_verb('synthesize')
        self.assertEqual(code, 2)
        self.assertTrue(err.startswith('usage: coordctl'))

    def test_exit_codes(self):
        self.assertEqual(self.run_verb('supcc', '--problem', str(EXAMPLE_ONE), '-v', '0')[0], 0)
        self.assertEqual(self.run_verb('supcc', '--problem', str(EXAMPLE_TWO), '-v', '0')[0], 1)
        self.assertEqual(self.run_verb('check-cd', '--problem', 'missing.prob', '-v', '0')[0], 2)

    def test_undecodable_manifest_is_an_input_error(self):
        with TemporaryDirectory() as directory:
            manifest = Path(directory) / 'latin.prob'
            manifest.write_bytes("# régime\ng1=g1.gen\n".encode('latin-1'))
            code, _out, err = self.run_verb('supcc', '--problem', str(manifest), '-v', '0')
        self.assertEqual(code, 2)
        self.assertIn('not UTF-8', err)
