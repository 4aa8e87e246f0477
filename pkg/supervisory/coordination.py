import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

from .automata import (Generator, blocking_witness, difference_witness,
                       generated, intersection, lang_equal, prefix_closure,
                       sync_product)
from .conditions import is_lcc, is_observer, is_occ
from .config import LEVELS, ROUTES
from .exceptions import (AlphabetMismatchError, ProblemValidationError,
                         SynthesisInvariantError)
from .projections import ProjectionSpec, check_cd, lift, project
from .synthesis import (ControlContext, is_controllable, is_lm_closed,
                        is_normal, is_observable, nonconflicting, sup_c,
                        sup_cn)
from .verdicts import ConditionVerdict, LevelVerdict, combine

logger = logging.getLogger(__name__)

LEVEL_K, LEVEL_1K, LEVEL_2K = LEVELS
STRONG_INCLUSION, NONCONFLICTING_INTERSECTION, OBSERVER_CONSISTENCY = ROUTES


@dataclass(frozen=True)
class CoordinationProblem:
    """
    Two subsystems G1 over Σ1 and G2 over Σ2, a coordinator alphabet Σk with
    Σ1∩Σ2 ⊆ Σk ⊆ Σ1∪Σ2, a specification K over Σ1∪Σ2 and the coordinator Gk,
    built as Pk(G1) ∥ Pk(G2) unless supplied.

    `observed` is the set of observable events; None takes the event-table flags.
    """
    g1: Generator
    g2: Generator
    sigma_k: frozenset[str]
    spec: Generator
    gk: Optional[Generator] = None
    observed: Optional[frozenset[str]] = None
    validate: bool = field(default=True, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'sigma_k', frozenset(self.sigma_k))
        if self.observed is not None:
            object.__setattr__(self, 'observed', frozenset(self.observed))
        self._check_alphabets()
        if self.gk is None:
            object.__setattr__(self, 'gk', build_coordinator(self.g1, self.g2, self.sigma_k))
        elif self.gk.alphabet != self.sigma_k:
            raise ProblemValidationError(f"coordinator alphabet {sorted(self.gk.alphabet)} is not Σk")
        if self.validate:
            self._check_language()

    def _check_alphabets(self):
        s1, s2, sk = self.g1.alphabet, self.g2.alphabet, self.sigma_k
        if not s1 & s2 <= sk:
            raise ProblemValidationError(f"shared events {sorted((s1 & s2) - sk)} are missing from Σk")
        if not sk <= s1 | s2:
            raise ProblemValidationError(f"Σk events {sorted(sk - (s1 | s2))} belong to no subsystem")
        if self.spec.alphabet != s1 | s2:
            raise ProblemValidationError("the specification must be over Σ1 ∪ Σ2")

    def _check_language(self):
        plant = sync_product(sync_product(self.g1, self.g2), self.gk)
        outside = difference_witness(self.spec, plant)
        if outside is not None:
            raise ProblemValidationError(f"specification word {list(outside)} is not marked by G1 ∥ G2 ∥ Gk")
        for label, language in (('K', self.spec), ('the prefix closure of K', prefix_closure(self.spec))):
            verdict = check_cd(language, self.sigma1, self.sigma2, self.sigma_k)
            if not verdict:
                raise ProblemValidationError(
                    f"{label} is not conditionally decomposable; counterexample {list(verdict.counterexample)}")

    @property
    def table(self):
        return self.spec.table

    @property
    def sigma1(self) -> frozenset[str]:
        return self.g1.alphabet

    @property
    def sigma2(self) -> frozenset[str]:
        return self.g2.alphabet

    @property
    def sigma(self) -> frozenset[str]:
        return self.sigma1 | self.sigma2

    def subsystem(self, i: int) -> Generator:
        return self.g1 if i == 1 else self.g2

    def level_alphabet(self, level: str) -> frozenset[str]:
        if level == LEVEL_K:
            return self.sigma_k
        return (self.sigma1 if level == LEVEL_1K else self.sigma2) | self.sigma_k

    @cached_property
    def observable(self) -> frozenset[str]:
        if self.observed is None:
            return self.table.observable(self.sigma)
        return self.observed & self.sigma

    @cached_property
    def uncontrollable(self) -> frozenset[str]:
        return self.table.uncontrollable(self.sigma)

    def projection(self, level: str, source: Optional[frozenset[str]] = None) -> ProjectionSpec:
        return ProjectionSpec(self.sigma if source is None else source, self.level_alphabet(level))

    def restricted(self, language: Generator, level: str) -> Generator:
        """P_k, P_{1+k} or P_{2+k} of a language over Σ1 ∪ Σ2."""
        return project(language, self.projection(level))

    def context(self, plant: Generator, partial: bool) -> ControlContext:
        sigma = plant.alphabet
        if not partial:
            return ControlContext.fully_observed(plant, self.uncontrollable & sigma)
        return ControlContext(plant, self.uncontrollable & sigma, ProjectionSpec(sigma, self.observable & sigma))

    def level_plant(self, level: str, coordinator_language: Generator) -> Generator:
        """L(Gk) at level k, L(Gi) ∥ closure(coordinator_language) at the subsystem levels."""
        if level == LEVEL_K:
            return generated(self.gk)
        subsystem = self.g1 if level == LEVEL_1K else self.g2
        return sync_product(generated(subsystem), prefix_closure(coordinator_language))


def build_coordinator(g1: Generator, g2: Generator, sigma_k) -> Generator:
    """Gk = Pk(G1) ∥ Pk(G2)."""
    sigma_k = frozenset(sigma_k)
    s1, s2 = g1.alphabet, g2.alphabet
    if not s1 & s2 <= sigma_k:
        raise AlphabetMismatchError(f"shared events {sorted((s1 & s2) - sigma_k)} are missing from Σk")
    if not sigma_k <= s1 | s2:
        raise AlphabetMismatchError(f"Σk events {sorted(sigma_k - (s1 | s2))} belong to no subsystem")
    gk = sync_product(project(g1, ProjectionSpec(s1, s1 & sigma_k)),
                      project(g2, ProjectionSpec(s2, s2 & sigma_k)))
    logger.debug("coordinator built with %d states over %d events", gk.n_states, len(gk.events))
    return gk


def _three_levels(p: CoordinationProblem, language: Optional[Generator], name: str,
                  check: Callable[[Generator, Generator, str, Generator], ConditionVerdict]) -> LevelVerdict:
    language = p.spec if language is None else language
    if language.alphabet != p.sigma:
        raise AlphabetMismatchError("the checked language must be over Σ1 ∪ Σ2")
    at_k = p.restricted(language, LEVEL_K)
    items = []
    for level in LEVELS:
        local = at_k if level == LEVEL_K else p.restricted(language, level)
        items.append(check(local, p.level_plant(level, at_k), level, at_k).tagged(name, level))
    verdict = LevelVerdict(name, tuple(items))
    logger.info("%s: %s", name, 'holds' if verdict else f"fails at level {verdict.level}")
    return verdict


def is_cond_controllable(p: CoordinationProblem, language: Optional[Generator] = None) -> LevelVerdict:
    return _three_levels(p, language, 'conditionally_controllable',
                         lambda local, plant, level, at_k: is_controllable(local, p.context(plant, False)))


def is_cond_closed(p: CoordinationProblem, language: Optional[Generator] = None) -> LevelVerdict:
    """Pk(K) is L_m(Gk)-closed and P_{i+k}(K) is L_m(Gi) ∥ Pk(K)-closed; vacuous for the empty language."""

    def check(local, _plant, level, at_k):
        if local.is_empty:
            return ConditionVerdict.passed()
        if level == LEVEL_K:
            return is_lm_closed(local, p.gk)
        return is_lm_closed(local, sync_product(p.subsystem(1 if level == LEVEL_1K else 2), at_k))

    return _three_levels(p, language, 'conditionally_closed', check)


def is_cond_observable(p: CoordinationProblem, language: Optional[Generator] = None) -> LevelVerdict:
    return _three_levels(p, language, 'conditionally_observable',
                         lambda local, plant, level, at_k: is_observable(local, p.context(plant, True)))


def is_cond_normal(p: CoordinationProblem, language: Optional[Generator] = None) -> LevelVerdict:
    return _three_levels(p, language, 'conditionally_normal',
                         lambda local, plant, level, at_k: is_normal(local, p.context(plant, True)))


def coordinator_inclusion(p: CoordinationProblem) -> ConditionVerdict:
    """L(Gk) ⊆ Pk(L(G1)) ∥ Pk(L(G2)); the witness is a coordinator word outside the bound."""
    bound = build_coordinator(generated(p.g1), generated(p.g2), p.sigma_k)
    witness = difference_witness(p.gk, bound, generated=True)
    if witness is None:
        return ConditionVerdict.passed('coordinator_inclusion', LEVEL_K)
    return ConditionVerdict.failed('coordinator_inclusion', witness, level=LEVEL_K)


def structural_verdicts(p: CoordinationProblem, i: int) -> tuple[ConditionVerdict, ...]:
    """Observer, OCC and LCC of P^{i+k}_k for the lifted subsystem language (P^{i+k}_i)⁻¹L(Gi)."""
    level = LEVEL_1K if i == 1 else LEVEL_2K
    source = p.level_alphabet(level)
    lifted = lift(generated(p.subsystem(i)), source)
    spec = ProjectionSpec(source, p.sigma_k)
    uncontrollable = p.uncontrollable & source
    return (is_observer(spec, lifted).tagged(f'observer_{i}', level),
            is_occ(spec, lifted, uncontrollable).tagged(f'occ_{i}', level),
            is_lcc(spec, lifted, uncontrollable).tagged(f'lcc_{i}', level))


@dataclass(frozen=True)
class SynthesisReport:
    """
    Languages of the three-level synthesis with every sufficient-condition
    verdict. `result` is present only when a route in `justified_by` held;
    `candidate` is the composed supervisor language either way.
    """
    mode: str
    sup_k: Generator
    sup_1k: Generator
    sup_2k: Generator
    verdicts: tuple[ConditionVerdict, ...]
    routes: dict[str, bool]
    candidate: Generator
    result: Optional[Generator]
    justified_by: tuple[str, ...]

    @property
    def result_kind(self) -> str:
        if self.result is None:
            return 'withheld'
        return 'empty_language' if lang_equal(self.result, _nothing(self.result)) else 'language'

    def verdict(self, name: str) -> ConditionVerdict:
        for verdict in self.verdicts:
            if verdict.name == name:
                return verdict
        raise KeyError(name)

    @property
    def supervisors(self) -> dict[str, Generator]:
        return {'sup_k': self.sup_k, 'sup_1k': self.sup_1k, 'sup_2k': self.sup_2k}


def _nothing(g: Generator) -> Generator:
    return Generator.empty(g.table, g.events)


def _strong_inclusion(p: CoordinationProblem, sup_k: Generator, sup_ik: Generator, i: int) -> ConditionVerdict:
    level = LEVEL_1K if i == 1 else LEVEL_2K
    projected = project(sup_ik, p.projection(LEVEL_K, p.level_alphabet(level)))
    missing = difference_witness(sup_k, projected)
    if missing is None:
        return ConditionVerdict.passed(f'strong_inclusion_{i}', level)
    return ConditionVerdict.failed(f'strong_inclusion_{i}', missing, level=level)


def _synthesize(p: CoordinationProblem, mode: str, partial: bool) -> SynthesisReport:
    supremal = sup_cn if partial else sup_c
    coordinator_plant = p.level_plant(LEVEL_K, p.spec)
    sup_k = supremal(p.restricted(p.spec, LEVEL_K), p.context(coordinator_plant, partial))
    logger.info("%s level k: %d states", mode, sup_k.n_states)
    local = {}
    for i, level in ((1, LEVEL_1K), (2, LEVEL_2K)):
        plant = p.level_plant(level, sup_k)
        local[i] = supremal(p.restricted(p.spec, level), p.context(plant, partial))
        logger.info("%s level %s: %d states", mode, level, local[i].n_states)

    projected = {}
    for i, level in ((1, LEVEL_1K), (2, LEVEL_2K)):
        projected[i] = project(local[i], p.projection(LEVEL_K, p.level_alphabet(level)))
        if difference_witness(projected[i], sup_k) is not None:
            raise SynthesisInvariantError(f"projection of the level-{level} supervisor escapes the coordinator level")

    strong = (_strong_inclusion(p, sup_k, local[1], 1), _strong_inclusion(p, sup_k, local[2], 2))
    joint = nonconflicting(local[1], local[2]).tagged('nonconflicting')
    meet = intersection(projected[1], projected[2])
    coordinator_ctx = p.context(coordinator_plant, partial)
    meet_controllable = is_controllable(meet, coordinator_ctx).tagged('intersection_controllable', LEVEL_K)
    composite = sync_product(coordinator_plant, build_coordinator(generated(p.g1), generated(p.g2), p.sigma_k))
    meet_composite = is_controllable(meet, p.context(composite, partial)).tagged(
        'intersection_controllable_composite', LEVEL_K)
    inclusion = coordinator_inclusion(p)
    structural = structural_verdicts(p, 1) + structural_verdicts(p, 2)
    verdicts = [*strong, joint, meet_controllable, meet_composite, inclusion, *structural]

    consistent = all(
        _find(structural, f'observer_{i}') and (_find(structural, f'occ_{i}') or _find(structural, f'lcc_{i}'))
        for i in (1, 2))
    routes = {STRONG_INCLUSION: all(strong)}
    if partial:
        meet_normal = is_normal(meet, coordinator_ctx).tagged('intersection_normal', LEVEL_K)
        spec_closed = _prefix_closed(p.spec)
        verdicts += [meet_normal, spec_closed]
        routes[NONCONFLICTING_INTERSECTION] = bool(joint and meet_controllable and meet_normal)
        routes[OBSERVER_CONSISTENCY] = bool(spec_closed and inclusion and joint and consistent and meet_normal)
    else:
        routes[NONCONFLICTING_INTERSECTION] = bool(joint and meet_controllable)
        routes[OBSERVER_CONSISTENCY] = bool(inclusion and joint and consistent)

    candidate = sync_product(local[1], local[2])
    justified_by = tuple(route for route, holds in routes.items() if holds)
    if justified_by:
        logger.info("%s result justified by %s", mode, ', '.join(justified_by))
    else:
        logger.warning("%s: no sufficient condition holds; the composed candidate is not claimed supremal", mode)
    return SynthesisReport(mode, sup_k, local[1], local[2], tuple(verdicts), routes, candidate,
                           candidate if justified_by else None, justified_by)


def _find(verdicts, name: str) -> ConditionVerdict:
    return next(verdict for verdict in verdicts if verdict.name == name)


def _prefix_closed(language: Generator) -> ConditionVerdict:
    closure = prefix_closure(language)
    witness = difference_witness(closure, language)
    if witness is None:
        return ConditionVerdict.passed('spec_prefix_closed')
    return ConditionVerdict.failed('spec_prefix_closed', witness)


def synth_supcc(p: CoordinationProblem) -> SynthesisReport:
    """Supremal conditionally controllable sublanguage through the coordinator, subsystem 1 and subsystem 2 levels."""
    return _synthesize(p, 'supcc', partial=False)


def synth_supccn(p: CoordinationProblem) -> SynthesisReport:
    """Supremal conditionally controllable and conditionally normal sublanguage."""
    return _synthesize(p, 'supccn', partial=True)


@dataclass(frozen=True)
class ClosedLoopReport:
    loop_k: Generator
    loop_1: Generator
    loop_2: Generator
    verdicts: tuple[ConditionVerdict, ...]
    closedness: LevelVerdict

    @property
    def holds(self) -> bool:
        return all(self.verdicts)

    def __bool__(self):
        return self.holds


def verify_closed_loop(p: CoordinationProblem, s1: Generator, s2: Generator, sk: Generator,
                       target: Optional[Generator] = None) -> ClosedLoopReport:
    """
    Composes Sk/Gk and Si/[Gi ∥ (Sk/Gk)] and checks each loop against its level:
    L(loop) controllable w.r.t. L(Gk) or L(Gi) ∥ L(Sk/Gk), inclusion in the
    projection of K, nonblocking. The two subsystem loops must compose to
    `target` (K by default).
    """
    if sk.alphabet != p.sigma_k:
        raise AlphabetMismatchError("the coordinator supervisor must be over Σk")
    for i, supervisor in ((1, s1), (2, s2)):
        if supervisor.alphabet != p.level_alphabet(LEVEL_1K if i == 1 else LEVEL_2K):
            raise AlphabetMismatchError(f"supervisor {i} must be over Σ{i} ∪ Σk")
    target = p.spec if target is None else target
    if target.alphabet != p.sigma:
        raise AlphabetMismatchError("the target language must be over Σ1 ∪ Σ2")

    loop_k = sync_product(sk, p.gk)
    loop_1 = sync_product(s1, sync_product(p.g1, loop_k))
    loop_2 = sync_product(s2, sync_product(p.g2, loop_k))
    verdicts = []
    plants = {LEVEL_K: generated(p.gk),
              LEVEL_1K: sync_product(generated(p.g1), generated(loop_k)),
              LEVEL_2K: sync_product(generated(p.g2), generated(loop_k))}
    for level, loop in ((LEVEL_K, loop_k), (LEVEL_1K, loop_1), (LEVEL_2K, loop_2)):
        verdicts.append(is_controllable(generated(loop), p.context(plants[level], False)).tagged(level=level))
        bound = p.restricted(p.spec, level)
        outside = difference_witness(loop, bound)
        verdicts.append(ConditionVerdict.passed('inclusion', level) if outside is None
                        else ConditionVerdict.failed('inclusion', outside, level=level))
        blocked = blocking_witness(loop)
        verdicts.append(ConditionVerdict.passed('nonblocking', level) if blocked is None
                        else ConditionVerdict.failed('nonblocking', blocked, level=level))
    composed = sync_product(loop_1, loop_2)
    verdicts.append(combine('closed_loop_equals_target', (
        _difference_verdict(composed, target), _difference_verdict(target, composed))))
    closedness = is_cond_closed(p, target)
    report = ClosedLoopReport(loop_k, loop_1, loop_2, tuple(verdicts), closedness)
    logger.info("closed loop %s", 'verified' if report else 'violates a requirement')
    return report


def _difference_verdict(g1: Generator, g2: Generator) -> ConditionVerdict:
    witness = difference_witness(g1, g2)
    return ConditionVerdict.passed() if witness is None else ConditionVerdict.failed('', witness)
