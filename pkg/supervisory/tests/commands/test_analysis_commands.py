import json

from supervisory.tests.strategies import FIXTURES

from .test_synthesis_commands import EXAMPLE_ONE, BaseCommandTest

GENERATORS = FIXTURES / 'example1'


class CheckCdCommandTest(BaseCommandTest):
    def test_decomposable_problem(self):
        payload = json.loads(self.call('check_cd', problem=str(EXAMPLE_ONE), format='machine'))
        self.assertEqual([v['name'] for v in payload['verdicts']], ['decomposable', 'closure_decomposable'])
        self.assertTrue(all(v['holds'] for v in payload['verdicts']))
        self.assertEqual(payload['sigma_k'], ['a1', 'c', 'u', 'a2'])


class ExtendSigmaKCommandTest(BaseCommandTest):
    def test_nothing_to_add(self):
        self.assertEqual(self.call('extend_sigma_k', problem=str(EXAMPLE_ONE)), "sigma_k=a1,c,u,a2\nadded nothing\n")

    def test_machine_format(self):
        payload = json.loads(self.call('extend_sigma_k', problem=str(EXAMPLE_ONE), format='machine'))
        self.assertEqual(payload['added'], [])
        self.assertEqual(payload['sigma_k'], payload['initial'])


class CoordinatorCommandTest(BaseCommandTest):
    def test_coordinator_alphabet(self):
        payload = json.loads(self.call('coordinator', problem=str(EXAMPLE_ONE), format='machine'))
        self.assertEqual(payload['coordinator']['events'], ['a1', 'c', 'u', 'a2'])


class CheckConditionsCommandTest(BaseCommandTest):
    def test_reports_failing_level(self):
        payload = json.loads(self.call_failing('check_conditions', problem=str(EXAMPLE_ONE), format='machine'))
        failing = [(v['name'], v['level']) for v in payload['verdicts'] if not v['holds']]
        self.assertIn(('conditionally_controllable', '1+k'), failing)
        holding = {v['name'] for v in payload['verdicts'] if v['holds']}
        self.assertIn('coordinator_inclusion', holding)


class VerifyCommandTest(BaseCommandTest):
    def test_synthesized_supervisors(self):
        payload = json.loads(self.call('verify', problem=str(EXAMPLE_ONE), format='machine'))
        self.assertIn('closed_loop_equals_target', [v['name'] for v in payload['verdicts']])

    def test_partial_supervisor_files(self):
        self.call_failing('verify', problem=str(EXAMPLE_ONE), sk=str(GENERATORS / 'g1.gen'), returncode=2)


class LangCommandTest(BaseCommandTest):
    def test_enumerate(self):
        text = self.call('lang', 'enumerate', str(GENERATORS / 'g1.gen'), length=2)
        self.assertEqual(text, "ε\na1\na1 u1\nc\nc u\n")

    def test_equal(self):
        payload = json.loads(self.call('lang', 'equal', str(GENERATORS / 'g1.gen'), str(GENERATORS / 'g1.gen'),
                                       format='machine'))
        self.assertEqual([v['name'] for v in payload['verdicts']], ['includes', 'included'])

    def test_wrong_arity(self):
        self.call_failing('lang', 'equal', str(GENERATORS / 'g1.gen'), returncode=2)
