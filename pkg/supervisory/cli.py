"""Entry point of the `coordctl` console script."""
import os
import sys
from typing import Optional, Sequence

VERBS = {
    'check-cd': 'check_cd',
    'extend-sigma-k': 'extend_sigma_k',
    'coordinator': 'coordinator',
    'supcc': 'supcc',
    'supccn': 'supccn',
    'check-conditions': 'check_conditions',
    'verify': 'verify',
    'lang': 'lang',
}

USAGE = "usage: coordctl {" + ','.join(VERBS) + "} [options]\n"


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    """Run one verb and return its exit code: 0 holds, 1 fails or withheld, 2 usage or input error."""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'coordination_control.settings')
    import django
    from django.core.management import load_command_class

    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in VERBS:
        sys.stderr.write(USAGE)
        return 2
    django.setup()
    name = VERBS[argv[0]]
    command = load_command_class('supervisory', name)
    try:
        command.run_from_argv(['coordctl', name, *argv[1:]])
    except SystemExit as exc:
        if exc.code is None:
            return 0
        return exc.code if isinstance(exc.code, int) else 2
    return 0


def main():
    sys.exit(run_cli())


if __name__ == '__main__':
    main()
