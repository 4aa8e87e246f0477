import logging
from pathlib import Path

from django.core.management.base import CommandError

from .config import REPORT_FORMATS
from .exceptions import SupervisoryError
from .formats import ProblemFiles, load_problem

VERBOSITY_LEVELS = {0: logging.ERROR, 1: logging.WARNING, 2: logging.DEBUG, 3: logging.DEBUG}

EXIT_STATUS = (
    "exit status: 0 when the checked property holds or the result is justified; "
    "1 when it fails or the result is withheld; "
    "2 on input errors and on problems that violate their preconditions, such as a "
    "specification outside G1 || G2 || Gk or one that is not conditionally decomposable "
    "over the given coordinator alphabet (check-cd reports the latter with status 1)"
)


class ReportCommandMixin:
    """
    Shared surface of the report-producing commands: `--format`, `--report`,
    logging verbosity and the exit-code contract (0 holds, 1 fails, 2 error).
    Subclasses implement `run(options)` returning (report text, holds).
    """
    requires_system_checks = []

    def create_parser(self, prog_name, subcommand, **kwargs):
        kwargs.setdefault('epilog', EXIT_STATUS)
        return super().create_parser(prog_name, subcommand, **kwargs)

    def add_arguments(self, parser):
        parser.add_argument('--format', choices=REPORT_FORMATS, default='human')
        parser.add_argument('--report', help="write the report to this file instead of the output stream")

    def handle(self, *args, **options):
        logging.getLogger('supervisory').setLevel(VERBOSITY_LEVELS.get(options['verbosity'], logging.DEBUG))
        try:
            text, holds = self.run(options)
        except SupervisoryError as exc:
            raise CommandError(str(exc), returncode=2) from exc
        if options.get('report'):
            try:
                Path(options['report']).write_text(text, encoding='utf-8')
            except OSError as exc:
                raise CommandError(f"cannot write report: {exc.strerror}", returncode=2) from exc
        else:
            self.stdout.write(text, ending='' if text.endswith('\n') else '\n') # type: ignore
        if not holds:
            raise CommandError("condition does not hold", returncode=1)

    def run(self, options) -> tuple[str, bool]:
        raise NotImplementedError


class ProblemCommandMixin(ReportCommandMixin):
    def add_arguments(self, parser):
        parser.add_argument('--problem', required=True, help="problem manifest")
        super().add_arguments(parser)

    def run(self, options) -> tuple[str, bool]:
        return self.run_problem(load_problem(options['problem']), options)

    def run_problem(self, files: ProblemFiles, options) -> tuple[str, bool]:
        raise NotImplementedError
