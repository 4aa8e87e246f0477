from django.core.management.base import BaseCommand

from supervisory.coordination import synth_supcc
from supervisory.mixins import ProblemCommandMixin
from supervisory.reports import emit_report


class Command(ProblemCommandMixin, BaseCommand):
    help = "Synthesize the supremal conditionally controllable sublanguage of the specification."

    def run_problem(self, files, options):
        report = synth_supcc(files.problem())
        return emit_report(report, options['format']), report.result is not None
