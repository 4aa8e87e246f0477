from django.test import SimpleTestCase
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from supervisory.automata import (Generator, accepts, generated, generates,
                                  lang_equal, lang_includes, prefix_closure,
                                  sync_product)
from supervisory.conditions import is_observer
from supervisory.coordination import is_cond_controllable, is_cond_normal
from supervisory.projections import ProjectionSpec, check_cd, project
from supervisory.synthesis import (ControlContext, is_controllable, is_normal,
                                   is_observable, nonconflicting, sup_c, sup_n)

from . import oracles
from .strategies import (EVENT_NAMES, alphabet_splits, control_instances,
                         coordination_problems, event_tables,
                         finite_languages, generators)

LAW_EXAMPLES = 500
ORACLE_EXAMPLES = 200


def _projection(alphabet, target):
    return ProjectionSpec(alphabet, alphabet & target)


class ProjectionLawTest(SimpleTestCase):
    @settings(max_examples=LAW_EXAMPLES)
    @given(st.data())
    def test_projection_distributes_over_product(self, data):
        table = data.draw(event_tables())
        sigma1, sigma2, sigma_k = data.draw(alphabet_splits())
        g1 = data.draw(generators(table, sigma1, max_states=4))
        g2 = data.draw(generators(table, sigma2, max_states=4))
        product = sync_product(g1, g2)
        left = project(product, ProjectionSpec(sigma1 | sigma2, sigma_k))
        right = sync_product(project(g1, _projection(sigma1, sigma_k)), project(g2, _projection(sigma2, sigma_k)))
        self.assertTrue(lang_equal(left, right))

    @settings(max_examples=LAW_EXAMPLES)
    @given(st.data())
    def test_language_inside_product_of_its_projections(self, data):
        table = data.draw(event_tables())
        sigma1, sigma2, _sigma_k = data.draw(alphabet_splits())
        a = data.draw(generators(table, sigma1 | sigma2, max_states=4))
        sigma = sigma1 | sigma2
        bound = sync_product(project(a, ProjectionSpec(sigma, sigma1)), project(a, ProjectionSpec(sigma, sigma2)))
        self.assertTrue(lang_includes(bound, a))

    @settings(max_examples=LAW_EXAMPLES)
    @given(st.data())
    def test_language_inside_product_of_covering_languages(self, data):
        table = data.draw(event_tables())
        sigma1, sigma2, _sigma_k = data.draw(alphabet_splits())
        sigma = sigma1 | sigma2
        l1 = data.draw(generators(table, sigma1, max_states=3))
        l2 = data.draw(generators(table, sigma2, max_states=3))
        covered = [word for word in oracles.all_words(table.order(sigma), 3)
                   if accepts(l1, oracles.observe(word, sigma1)) and accepts(l2, oracles.observe(word, sigma2))]
        chosen = data.draw(st.lists(st.sampled_from(covered), max_size=4)) if covered else []
        a = Generator.from_words(table, sigma, chosen)
        self.assertTrue(lang_includes(sync_product(l1, l2), a))

    @settings(max_examples=LAW_EXAMPLES)
    @given(st.data())
    def test_projection_of_product_inside_product_of_projections(self, data):
        table = data.draw(event_tables())
        sigma1, sigma2, _sigma_k = data.draw(alphabet_splits())
        target = data.draw(st.frozensets(st.sampled_from(EVENT_NAMES)))
        g1 = data.draw(generators(table, sigma1, max_states=3))
        g2 = data.draw(generators(table, sigma2, max_states=3))
        product = sync_product(g1, g2)
        left = project(product, _projection(sigma1 | sigma2, target))
        right = sync_product(project(g1, _projection(sigma1, target)), project(g2, _projection(sigma2, target)))
        self.assertTrue(lang_includes(right, left))
        self.assertTrue(lang_includes(generated(right), generated(left)))

    @settings(max_examples=LAW_EXAMPLES)
    @given(st.data())
    def test_observation_of_coordinator_projection_commutes(self, data):
        table = data.draw(event_tables())
        sigma1, sigma2, sigma_k = data.draw(alphabet_splits())
        sigma, local = sigma1 | sigma2, sigma1 | sigma_k
        observed = table.observable(sigma)
        g = data.draw(generators(table, sigma, max_states=4))
        to_k = ProjectionSpec(sigma, sigma_k & observed)
        stepwise = project(project(project(g, ProjectionSpec(sigma, local)), _projection(local, observed)),
                           _projection(local & observed, sigma_k))
        self.assertTrue(lang_equal(stepwise, project(g, to_k)))
        direct = project(project(g, ProjectionSpec(sigma, sigma_k)), _projection(sigma_k, observed))
        self.assertTrue(lang_equal(direct, stepwise))

    @settings(max_examples=LAW_EXAMPLES)
    @given(st.data())
    def test_observers_compose(self, data):
        table = data.draw(event_tables())
        sigma1, sigma2, sigma_0 = data.draw(alphabet_splits())
        g1 = data.draw(generators(table, sigma1, max_states=3))
        g2 = data.draw(generators(table, sigma2, max_states=3))
        assume(is_observer(_projection(sigma1, sigma_0), g1))
        assume(is_observer(_projection(sigma2, sigma_0), g2))
        product = sync_product(g1, g2)
        self.assertTrue(is_observer(ProjectionSpec(sigma1 | sigma2, sigma_0), product))


class ControlLawTest(SimpleTestCase):
    names = EVENT_NAMES[:3]

    @settings(max_examples=LAW_EXAMPLES)
    @given(st.data())
    def test_controllability_is_transitive(self, data):
        table = data.draw(event_tables(self.names))
        m = data.draw(generators(table, self.names, max_states=4))
        outer = ControlContext.from_table(m)
        middle = sup_c(data.draw(finite_languages(table, self.names)), outer)
        inner = ControlContext.from_table(prefix_closure(middle))
        k = sup_c(data.draw(finite_languages(table, self.names)), inner)
        self.assertTrue(is_controllable(k, outer))

    @settings(max_examples=LAW_EXAMPLES)
    @given(st.data())
    def test_nonconflicting_controllable_languages_compose(self, data):
        table = data.draw(event_tables())
        sigma1, sigma2, _sigma_k = data.draw(alphabet_splits())
        g1 = data.draw(generators(table, sigma1, max_states=3))
        g2 = data.draw(generators(table, sigma2, max_states=3))
        k1 = sup_c(data.draw(finite_languages(table, sigma1)), ControlContext.from_table(generated(g1)))
        k2 = sup_c(data.draw(finite_languages(table, sigma2)), ControlContext.from_table(generated(g2)))
        assume(nonconflicting(k1, k2))
        plant = sync_product(generated(g1), generated(g2))
        self.assertTrue(is_controllable(sync_product(k1, k2), ControlContext.from_table(plant)))

    @settings(max_examples=LAW_EXAMPLES)
    @given(st.data())
    def test_normality_is_transitive(self, data):
        table = data.draw(event_tables(self.names))
        m = data.draw(generators(table, self.names, max_states=4))
        outer = ControlContext.from_table(m)
        middle = sup_n(data.draw(finite_languages(table, self.names)), outer)
        inner = ControlContext.from_table(prefix_closure(middle))
        k = sup_n(data.draw(finite_languages(table, self.names)), inner)
        self.assertTrue(is_normal(k, outer))

    @settings(max_examples=LAW_EXAMPLES)
    @given(st.data())
    def test_nonconflicting_normal_languages_compose(self, data):
        table = data.draw(event_tables())
        sigma1, sigma2, _sigma_k = data.draw(alphabet_splits())
        g1 = data.draw(generators(table, sigma1, max_states=3))
        g2 = data.draw(generators(table, sigma2, max_states=3))
        k1 = sup_n(data.draw(finite_languages(table, sigma1)), ControlContext.from_table(generated(g1)))
        k2 = sup_n(data.draw(finite_languages(table, sigma2)), ControlContext.from_table(generated(g2)))
        assume(nonconflicting(k1, k2))
        plant = sync_product(generated(g1), generated(g2))
        self.assertTrue(is_normal(sync_product(k1, k2), ControlContext.from_table(plant)))


def _sublanguage(p, data) -> Generator:
    words = sorted(oracles.words(p.spec))
    return Generator.from_words(p.table, p.sigma, data.draw(st.sets(st.sampled_from(words))))


def _union(p, a: Generator, b: Generator) -> Generator:
    return Generator.from_words(p.table, p.sigma, oracles.words(a) | oracles.words(b))


class ConditionalUnionTest(SimpleTestCase):
    """Conditional controllability and conditional normality survive unions of sublanguages."""

    @settings(max_examples=ORACLE_EXAMPLES)
    @given(coordination_problems(), st.data())
    def test_conditional_controllability(self, p, data):
        a, b = _sublanguage(p, data), _sublanguage(p, data)
        assume(is_cond_controllable(p, a) and is_cond_controllable(p, b))
        self.assertTrue(is_cond_controllable(p, _union(p, a, b)))

    @settings(max_examples=ORACLE_EXAMPLES)
    @given(coordination_problems(), st.data())
    def test_conditional_normality(self, p, data):
        a, b = _sublanguage(p, data), _sublanguage(p, data)
        assume(is_cond_normal(p, a) and is_cond_normal(p, b))
        self.assertTrue(is_cond_normal(p, _union(p, a, b)))


class WitnessReplayTest(SimpleTestCase):
    """Reported witnesses are replayed word by word against the plain definitions."""

    @settings(max_examples=ORACLE_EXAMPLES)
    @given(control_instances())
    def test_controllability_witness(self, instance):
        _table, plant, spec = instance
        ctx = ControlContext.from_table(plant)
        verdict = is_controllable(spec, ctx)
        closure = oracles.prefixes(oracles.words(spec))
        self.assertEqual(bool(verdict), oracles.controllable(closure, plant, ctx.uncontrollable))
        if not verdict:
            self.assertIn(verdict.word, closure)
            self.assertIn(verdict.event, ctx.uncontrollable)
            self.assertTrue(generates(plant, verdict.word + (verdict.event,)))
            self.assertNotIn(verdict.word + (verdict.event,), closure)

    @settings(max_examples=ORACLE_EXAMPLES)
    @given(control_instances())
    def test_normality_witness(self, instance):
        _table, plant, spec = instance
        ctx = ControlContext.from_table(plant)
        observed = ctx.observation.target
        verdict = is_normal(spec, ctx)
        closure = oracles.prefixes(oracles.words(spec))
        if verdict:
            self.assertTrue(all(generates(plant, word) for word in closure))
            self.assertTrue(oracles.normal(closure, plant, observed))
            return
        word = verdict.word
        if word in closure:
            self.assertFalse(generates(plant, word))
        else:
            self.assertTrue(generates(plant, word))
            self.assertIn(oracles.observe(word, observed), {oracles.observe(s, observed) for s in closure})

    @settings(max_examples=ORACLE_EXAMPLES)
    @given(control_instances())
    def test_observability_witness(self, instance):
        _table, plant, spec = instance
        ctx = ControlContext.from_table(plant)
        observed = ctx.observation.target
        verdict = is_observable(spec, ctx)
        if verdict:
            return
        closure = oracles.prefixes(oracles.words(spec))
        s, other, event = verdict.word, verdict.other, verdict.event
        self.assertEqual(oracles.observe(s, observed), oracles.observe(other, observed))
        self.assertIn(s + (event,), closure)
        self.assertIn(other, closure)
        self.assertTrue(generates(plant, other + (event,)))
        self.assertNotIn(other + (event,), closure)

    @settings(max_examples=ORACLE_EXAMPLES)
    @given(st.data())
    def test_decomposability_counterexample(self, data):
        table = data.draw(event_tables())
        sigma1, sigma2, sigma_k = data.draw(alphabet_splits())
        sigma = sigma1 | sigma2
        k = data.draw(finite_languages(table, sigma))
        verdict = check_cd(k, sigma1, sigma2, sigma_k)
        marked = oracles.words(k)
        if verdict:
            return
        word = verdict.counterexample
        self.assertNotIn(word, marked)
        for side in (sigma1 | sigma_k, sigma2 | sigma_k):
            self.assertIn(oracles.observe(word, side), {oracles.observe(w, side) for w in marked})
