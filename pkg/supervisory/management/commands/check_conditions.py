from django.core.management.base import BaseCommand

from supervisory.config import LEVELS
from supervisory.coordination import (coordinator_inclusion, is_cond_closed,
                                      is_cond_controllable, is_cond_normal,
                                      is_cond_observable, structural_verdicts)
from supervisory.mixins import ProblemCommandMixin
from supervisory.reports import render
from supervisory.synthesis import nonconflicting


class Command(ProblemCommandMixin, BaseCommand):
    help = "Evaluate the conditional properties of K and the structural conditions of both subsystems."

    def run_problem(self, files, options):
        problem = files.problem()
        verdicts = []
        for check in (is_cond_controllable, is_cond_closed, is_cond_observable, is_cond_normal):
            verdicts.extend(check(problem))
        verdicts.append(coordinator_inclusion(problem))
        verdicts.extend(structural_verdicts(problem, 1) + structural_verdicts(problem, 2))
        local_1, local_2 = (problem.restricted(problem.spec, level) for level in LEVELS[1:])
        verdicts.append(nonconflicting(local_1, local_2))
        text = render('conditions', verdicts, options['format'])
        return text, all(verdicts)
