import json
import logging
from typing import Any, Iterable, Optional, Sequence

from django.conf import settings
from django.core.serializers.json import DjangoJSONEncoder
from django.template.loader import render_to_string

from . import config
from .automata import Generator
from .coordination import SynthesisReport
from .verdicts import ConditionVerdict

logger = logging.getLogger(__name__)

LANGUAGE_LABELS = {'sup_k': 'supervisor k', 'sup_1k': 'supervisor 1+k', 'sup_2k': 'supervisor 2+k',
                   'candidate': 'composed candidate', 'result': 'result'}


def generator_payload(g: Optional[Generator]) -> Optional[dict]:
    if g is None:
        return None
    return {
        'events': list(g.events),
        'states': g.n_states,
        'initial': g.initial,
        'marked': [q for q in range(g.n_states) if g.marked[q]],
        'transitions': [[src, event, dst] for src, event, dst in g.transitions()],
    }


def verdict_payload(verdict: ConditionVerdict) -> dict:
    return {'name': verdict.name, 'holds': verdict.holds, 'witness': verdict.witness, 'level': verdict.level}


def render(title: str, verdicts: Iterable[ConditionVerdict], mode: str,
           languages: Sequence[tuple[str, Optional[Generator]]] = (), routes: Optional[dict[str, bool]] = None,
           result_kind: Optional[str] = None, justified_by: Sequence[str] = (),
           extra: Optional[dict[str, Any]] = None) -> str:
    """Human text through the report template, or one JSON document."""
    verdicts = list(verdicts)
    if mode not in config.REPORT_FORMATS:
        raise ValueError(f"unknown report format {mode!r}")
    if mode == 'machine':
        payload: dict[str, Any] = {'title': title}
        payload.update(extra or {})
        if languages:
            payload['languages'] = {name: generator_payload(g) for name, g in languages}
        payload['verdicts'] = [verdict_payload(v) for v in verdicts]
        if routes is not None:
            payload['routes'] = routes
        if result_kind is not None:
            payload['result_kind'] = result_kind
            payload['justified_by'] = list(justified_by)
        return json.dumps(payload, cls=DjangoJSONEncoder, indent=2, ensure_ascii=False)

    shown = [(LANGUAGE_LABELS.get(name, name), g) for name, g in languages if g is not None]
    names = [label for label, _g in shown] + [v.name for v in verdicts] + list(routes or ())
    context = {
        'title': title,
        'languages': shown,
        'verdicts': verdicts,
        'routes': list((routes or {}).items()),
        'result_kind': result_kind,
        'justified_by': justified_by,
        'width': max((len(name) for name in names), default=0),
        'word_length': getattr(settings, 'SUPERVISORY_REPORT_WORD_LENGTH', config.REPORT_WORD_LENGTH),
        'word_limit': getattr(settings, 'SUPERVISORY_REPORT_WORD_LIMIT', config.REPORT_WORD_LIMIT),
    }
    return render_to_string('supervisory/report.txt', context)


def emit_report(report: SynthesisReport, mode: str) -> str:
    logger.info("%s report: %s", report.mode, report.result_kind)
    languages = [*report.supervisors.items(), ('candidate', report.candidate), ('result', report.result)]
    return render(report.mode, report.verdicts, mode, languages, report.routes,
                  report.result_kind, report.justified_by, extra={'mode': report.mode})
