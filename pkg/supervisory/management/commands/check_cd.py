from django.core.management.base import BaseCommand

from supervisory.automata import prefix_closure
from supervisory.mixins import ProblemCommandMixin
from supervisory.projections import check_cd
from supervisory.reports import render
from supervisory.verdicts import ConditionVerdict


class Command(ProblemCommandMixin, BaseCommand):
    help = "Check that K and its prefix closure are conditionally decomposable."

    def run_problem(self, files, options):
        s1, s2 = files.g1.alphabet, files.g2.alphabet
        verdicts = []
        for name, language in (('decomposable', files.spec), ('closure_decomposable', prefix_closure(files.spec))):
            result = check_cd(language, s1, s2, files.sigma_k)
            verdicts.append(ConditionVerdict.passed(name) if result
                            else ConditionVerdict.failed(name, result.counterexample))
        text = render('conditional decomposability', verdicts, options['format'],
                      extra={'sigma_k': list(files.table.order(files.sigma_k))})
        return text, all(verdicts)
