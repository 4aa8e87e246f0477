from pathlib import Path

from hypothesis import assume
from hypothesis import strategies as st

from supervisory.automata import (SILENT, Generator, NondetAutomaton,
                                  enumerate_words, sync_product)
from supervisory.coordination import CoordinationProblem
from supervisory.events import EventTable
from supervisory.projections import ProjectionSpec, project

FIXTURES = Path(__file__).resolve().parent.parent / 'fixtures'
EVENT_NAMES = ('a', 'b', 'c', 'd')


def closure_of(table, events, *words) -> Generator:
    """Prefix-closed finite language, every prefix marked."""
    return Generator.from_words(table, events, [tuple(word) for word in words], closed=True)


@st.composite
def event_tables(draw, names=EVENT_NAMES):
    table = EventTable()
    for name in names:
        table.register(name, draw(st.booleans()), draw(st.booleans()))
    return table


@st.composite
def generators(draw, table, events, max_states=6, all_marked=False):
    events = table.order(events)
    n_states = draw(st.integers(1, max_states))
    transitions = []
    for state in range(n_states):
        for event in events:
            target = draw(st.none() | st.integers(0, n_states - 1))
            if target is not None:
                transitions.append((state, event, target))
    marked = [q for q in range(n_states) if all_marked or draw(st.booleans())]
    return Generator.build(table, events, n_states, transitions, 0, marked)


@st.composite
def finite_languages(draw, table, events, max_words=4, max_length=3):
    events = table.order(events)
    word = st.lists(st.sampled_from(events), max_size=max_length).map(tuple)
    words = draw(st.lists(word, max_size=max_words, unique=True))
    return Generator.from_words(table, events, words)


@st.composite
def control_instances(draw, names=EVENT_NAMES[:3]):
    """(table, plant, finite specification) over one alphabet."""
    table = draw(event_tables(names))
    plant = draw(generators(table, names))
    spec = draw(finite_languages(table, names))
    return table, plant, spec


@st.composite
def alphabet_splits(draw, names=EVENT_NAMES):
    """Σ1, Σ2 covering `names` and a coordinator alphabet Σk ⊇ Σ1 ∩ Σ2."""
    membership = {name: draw(st.sampled_from((1, 2, 3))) for name in names}
    sigma1 = frozenset(name for name, side in membership.items() if side & 1)
    sigma2 = frozenset(name for name, side in membership.items() if side & 2)
    assume(sigma1 and sigma2)
    extra = draw(st.sets(st.sampled_from(names)))
    return sigma1, sigma2, (sigma1 & sigma2) | frozenset(extra)


@st.composite
def coordination_problems(draw, max_states=3, max_words=3, max_length=3):
    """
    Random coordination instance. A few marked words S of G1 ∥ G2 are drawn and
    the specification is P_{1+k}(S) ∥ G1 ∥ P_{2+k}(S) ∥ G2: a nonempty finite
    sublanguage of L_m(G1 ∥ G2) that is conditionally decomposable.
    """
    table = draw(event_tables())
    sigma1, sigma2, sigma_k = draw(alphabet_splits(table.names))
    g1 = draw(generators(table, sigma1, max_states))
    g2 = draw(generators(table, sigma2, max_states))
    plant = sync_product(g1, g2)
    marked = enumerate_words(plant, max_length)
    assume(marked)
    chosen = draw(st.lists(st.sampled_from(marked), min_size=1, max_size=max_words, unique=True))
    sample = Generator.from_words(table, sigma1 | sigma2, chosen)
    sides = [sync_product(project(sample, ProjectionSpec(sigma1 | sigma2, sigma_i | sigma_k)), g_i)
             for sigma_i, g_i in ((sigma1, g1), (sigma2, g2))]
    return CoordinationProblem(g1, g2, sigma_k, sync_product(*sides), validate=False)


@st.composite
def nondet_automata(draw, table, events, max_states=4):
    """Nondeterministic automata with silent moves, initial state 0."""
    events = table.order(events)
    n_states = draw(st.integers(1, max_states))
    states = st.frozensets(st.integers(0, n_states - 1), max_size=2)
    transitions = {}
    for state in range(n_states):
        for label in (*events, SILENT):
            targets = draw(states)
            if targets:
                transitions[(state, label)] = targets
    marked = draw(st.frozensets(st.integers(0, n_states - 1)))
    return NondetAutomaton(table, events, n_states, transitions, frozenset([0]), marked)
