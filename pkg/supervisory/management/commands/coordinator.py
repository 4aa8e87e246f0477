import json

from django.core.management.base import BaseCommand
from django.core.serializers.json import DjangoJSONEncoder

from supervisory.coordination import build_coordinator
from supervisory.formats import print_generator
from supervisory.mixins import ProblemCommandMixin
from supervisory.reports import generator_payload


class Command(ProblemCommandMixin, BaseCommand):
    help = "Print the coordinator Pk(G1) ∥ Pk(G2) in the generator format."

    def run_problem(self, files, options):
        gk = build_coordinator(files.g1, files.g2, files.sigma_k)
        if options['format'] == 'machine':
            return json.dumps({'coordinator': generator_payload(gk)}, cls=DjangoJSONEncoder, indent=2), True
        return print_generator(gk), True
