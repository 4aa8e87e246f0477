from django.core.management.base import BaseCommand

from supervisory.mixins import ProblemCommandMixin
from supervisory.projections import extend_sigma_k, is_decomposable
from supervisory.reports import render
from supervisory.verdicts import ConditionVerdict


class Command(ProblemCommandMixin, BaseCommand):
    help = "Greedily extend the coordinator alphabet until K and its closure are conditionally decomposable."

    def run_problem(self, files, options):
        s1, s2 = files.g1.alphabet, files.g2.alphabet
        extended = extend_sigma_k(files.spec, s1, s2, files.sigma_k)
        order = files.table.order
        holds = is_decomposable(files.spec, s1, s2, extended)
        verdict = ConditionVerdict.passed('decomposable') if holds else ConditionVerdict.failed('decomposable', ())
        if options['format'] == 'machine':
            text = render('coordinator alphabet', [verdict], 'machine', extra={
                'sigma_k': list(order(extended)),
                'initial': list(order(files.sigma_k)),
                'added': list(order(extended - files.sigma_k)),
            })
        else:
            added = ','.join(order(extended - files.sigma_k)) or 'nothing'
            text = f"sigma_k={','.join(order(extended))}\nadded {added}\n"
        return text, holds
