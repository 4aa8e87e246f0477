import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional

from .automata import Generator
from .coordination import CoordinationProblem
from .events import EventTable
from .exceptions import EventConflictError, FormatError, UnknownEventError
from .forms import ManifestForm

logger = logging.getLogger(__name__)

KEYWORDS = ('EVENTS', 'STATES', 'INITIAL', 'MARKED', 'TRANSITIONS')
CONTROL_FLAGS = {'c': True, 'u': False}
OBSERVATION_FLAGS = {'o': True, 'uo': False}
TOKEN = re.compile(r'\S+')


@dataclass(frozen=True)
class GeneratorFile:
    table: EventTable
    generator: Generator


def _tokens(text: str) -> Iterator[tuple[int, list[tuple[int, str]]]]:
    """Non-empty lines as (line number, [(column, token), ...]) with comments removed."""
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0]
        tokens = [(match.start() + 1, match.group()) for match in TOKEN.finditer(line)]
        if tokens:
            yield number, tokens


def _integer(token: tuple[int, str], line: int, what: str) -> int:
    column, text = token
    try:
        value = int(text)
    except ValueError:
        raise FormatError(f"{what} must be an integer, got {text!r}", line, column) from None
    if value < 0:
        raise FormatError(f"{what} must be non-negative", line, column)
    return value


def parse_generator(text: str, table: Optional[EventTable] = None) -> GeneratorFile:
    """
    Parse the line-oriented generator format. Events declared in the EVENTS
    section are registered in `table` (a fresh table when omitted) and form the
    generator's alphabet.
    """
    table = EventTable() if table is None else table
    section = None
    events: list[str] = []
    n_states: Optional[int] = None
    states_line = 0
    initial: Optional[int] = None
    marked: list[int] = []
    transitions: dict[tuple[int, str], tuple[int, int]] = {}

    def state_id(token, line):
        value = _integer(token, line, 'state id')
        if n_states is None:
            raise FormatError("STATES must precede state references", line, token[0])
        if value >= n_states:
            raise FormatError(f"state {value} out of range 0..{n_states - 1}", line, token[0])
        return value

    for line, tokens in _tokens(text):
        keyword = tokens[0][1]
        if keyword in KEYWORDS:
            section = keyword
            arguments = tokens[1:]
            if keyword in ('EVENTS', 'TRANSITIONS') and arguments:
                raise FormatError(f"{keyword} takes no arguments", line, arguments[0][0])
            if keyword == 'STATES':
                if len(arguments) != 1:
                    raise FormatError("STATES takes exactly one count", line, tokens[0][0])
                n_states = _integer(arguments[0], line, 'state count')
                states_line = line
            elif keyword == 'INITIAL':
                if len(arguments) != 1:
                    raise FormatError("INITIAL takes exactly one state id", line, tokens[0][0])
                initial = state_id(arguments[0], line)
            elif keyword == 'MARKED':
                marked.extend(state_id(token, line) for token in arguments)
            continue
        if section == 'EVENTS':
            if len(tokens) != 3:
                raise FormatError("event lines read `name c|u o|uo`", line, tokens[0][0])
            (column, name), control, observation = tokens
            if control[1] not in CONTROL_FLAGS:
                raise FormatError(f"controllability flag must be c or u, got {control[1]!r}", line, control[0])
            if observation[1] not in OBSERVATION_FLAGS:
                raise FormatError(f"observability flag must be o or uo, got {observation[1]!r}", line, observation[0])
            try:
                table.register(name, CONTROL_FLAGS[control[1]], OBSERVATION_FLAGS[observation[1]])
            except (EventConflictError, UnknownEventError) as exc:
                raise FormatError(str(exc), line, column) from exc
            if name in events:
                raise FormatError(f"event {name!r} declared twice", line, column)
            events.append(name)
        elif section == 'TRANSITIONS':
            if len(tokens) != 3:
                raise FormatError("transition lines read `src event dst`", line, tokens[0][0])
            src = state_id(tokens[0], line)
            column, event = tokens[1]
            if event not in events:
                raise FormatError(f"unknown event {event!r}", line, column)
            dst = state_id(tokens[2], line)
            previous = transitions.get((src, event))
            if previous is not None and previous[0] != dst:
                raise FormatError(
                    f"state {src} already moves to {previous[0]} under {event!r} (line {previous[1]})", line, column)
            transitions[(src, event)] = (dst, line)
        else:
            raise FormatError(f"unexpected {keyword!r} outside a section", line, tokens[0][0])

    if n_states is None:
        raise FormatError("missing STATES", 0, 0)
    if initial is None and n_states > 0:
        raise FormatError("missing INITIAL", states_line, 1)
    generator = Generator.build(table, events, n_states,
                                [(src, event, dst) for (src, event), (dst, _line) in transitions.items()],
                                initial, marked)
    logger.debug("parsed generator with %d states over %d events", n_states, len(events))
    return GeneratorFile(table, generator)


def print_generator(g: Generator) -> str:
    """Canonical text form: events in table order, transitions sorted by source then event."""
    lines = ['EVENTS']
    for name in g.events:
        event = g.table[name]
        lines.append(f"{name} {'c' if event.controllable else 'u'} {'o' if event.observable else 'uo'}")
    lines.append(f"STATES {g.n_states}")
    if g.initial is not None:
        lines.append(f"INITIAL {g.initial}")
    marked = ' '.join(str(int(q)) for q in range(g.n_states) if g.marked[q])
    lines.append(f"MARKED {marked}".rstrip())
    lines.append('TRANSITIONS')
    lines.extend(f"{src} {event} {dst}" for src, event, dst in g.transitions())
    return '\n'.join(lines) + '\n'


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding='utf-8')
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
    except UnicodeDecodeError as exc:
        raise FormatError(f"{path.name} is not UTF-8 text (byte {exc.start})") from exc


def read_generator(path, table: Optional[EventTable] = None) -> GeneratorFile:
    path = Path(path)
    text = _read_text(path)
    try:
        return parse_generator(text, table)
    except FormatError as exc:
        raise FormatError(f"{path.name}: {exc.message}", exc.line, exc.column) from exc


def parse_manifest(text: str) -> dict[str, str]:
    """`key=value` lines; `#` starts a comment."""
    entries: dict[str, str] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0]
        if not line.strip():
            continue
        column = len(line) - len(line.lstrip()) + 1
        if '=' not in line:
            raise FormatError("manifest lines read `key=value`", number, column)
        key, value = (part.strip() for part in line.split('=', 1))
        if key in entries:
            raise FormatError(f"duplicate key {key!r}", number, column)
        entries[key] = value
    return entries


@dataclass(frozen=True)
class ProblemFiles:
    """Generators of a problem manifest, parsed onto one shared event table."""
    table: EventTable
    g1: Generator
    g2: Generator
    spec: Generator
    sigma_k: frozenset[str]
    gk: Optional[Generator]
    observed: Optional[frozenset[str]]

    def problem(self, validate: bool = True) -> CoordinationProblem:
        return CoordinationProblem(self.g1, self.g2, self.sigma_k, self.spec, self.gk, self.observed, validate)


def load_problem(path) -> ProblemFiles:
    """Read a manifest and the generator files it references, relative to the manifest."""
    path = Path(path)
    text = _read_text(path)
    form = ManifestForm(parse_manifest(text), base_dir=path.parent)
    if not form.is_valid():
        problems = '; '.join(f"{field}: {' '.join(errors)}" for field, errors in form.errors.items())
        raise FormatError(f"{path.name}: {problems}")
    data = form.cleaned_data
    table = EventTable()
    g1 = read_generator(data['g1'], table).generator
    g2 = read_generator(data['g2'], table).generator
    spec = read_generator(data['spec'], table).generator
    gk = read_generator(data['coordinator'], table).generator if data['coordinator'] else None
    unknown = data['sigma_k'] - set(table.names)
    if unknown:
        raise FormatError(f"{path.name}: sigma_k names unknown events {sorted(unknown)}")
    observed = frozenset(table.names) if data['observation'] == 'full' else None
    logger.info("loaded problem %s with %d events", path.name, len(table))
    return ProblemFiles(table, g1, g2, spec, data['sigma_k'], gk, observed)
