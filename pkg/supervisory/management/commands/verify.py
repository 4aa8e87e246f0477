from django.core.management.base import BaseCommand

from supervisory.coordination import synth_supcc, verify_closed_loop
from supervisory.exceptions import FormatError
from supervisory.formats import read_generator
from supervisory.mixins import ProblemCommandMixin
from supervisory.reports import render


class Command(ProblemCommandMixin, BaseCommand):
    help = (
        "Verify the closed loop of three supervisors against a target language. "
        "Without supervisor files the supcc levels are used and the target defaults to their composition."
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--sk', help="coordinator supervisor over Σk")
        parser.add_argument('--s1', help="supervisor over Σ1 ∪ Σk")
        parser.add_argument('--s2', help="supervisor over Σ2 ∪ Σk")
        parser.add_argument('--target', help="target language over Σ1 ∪ Σ2 (K by default)")

    def run_problem(self, files, options):
        problem = files.problem()
        paths = [options.get(name) for name in ('sk', 's1', 's2')]
        target = read_generator(options['target'], files.table).generator if options.get('target') else None
        if any(paths):
            if not all(paths):
                raise FormatError("--sk, --s1 and --s2 must be given together")
            sk, s1, s2 = (read_generator(path, files.table).generator for path in paths)
        else:
            report = synth_supcc(problem)
            sk, s1, s2 = report.sup_k, report.sup_1k, report.sup_2k
            target = report.candidate if target is None else target
        loop = verify_closed_loop(problem, s1, s2, sk, target)
        text = render('closed loop', list(loop.verdicts) + list(loop.closedness), options['format'],
                      languages=[('loop_k', loop.loop_k), ('loop_1', loop.loop_1), ('loop_2', loop.loop_2)])
        return text, loop.holds
