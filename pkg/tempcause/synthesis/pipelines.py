# Copyright (c) 2026, Erick W.R. and contributors
# For license information, please see license.txt

"""
Cause synthesis.

Every pipeline builds an automaton over pairs ``(ρ-letter, π-letter)`` with
states ``S × Q``, turns it into a deterministic one, and finally fixes the
second component to the observed trace by running it next to the trace's
lasso. Only pair letters whose second component occurs in the trace are
ever read, so the deterministic stage is explored over those alone.
"""

from tempcause import hooks
from tempcause.automata.alphabet import PairAlphabet, check_same_alphabet
from tempcause.automata.automaton import Acceptance, Automaton, Branching, explore
from tempcause.automata.determinize import (
    breakpoint_ubw_to_dbw,
    determinize_nfw,
    determinize_ufw,
)
from tempcause.automata.emptiness import finite_language_empty, is_empty_buchi
from tempcause.automata.graphs import can_reach_cycle, transition_graph
from tempcause.automata.operations import mark_complete
from tempcause.config import get_settings
from tempcause.exceptions import ClassMismatch, InvariantError, PreconditionError, throw
from tempcause.synthesis.effects import CauseResult, EffectClass, EffectSpec, cause_accepts
from tempcause.system.model import ObservedTrace, is_input_enabled, validate_trace
from tempcause.system.similarity import lower_set_meets, similar_letters
from tempcause.utils import get_attr
from tempcause.utils.logger import logger

log = logger("synthesis")


def _require_class(effect, *classes):
    if effect.effect_class not in classes:
        names = "/".join(c.value for c in classes)
        throw(f"Expected a {names} effect, got {effect.effect_class.value}", ClassMismatch)


def _observed(system, pi):
    if isinstance(pi, ObservedTrace) and pi.run is not None:
        return pi
    return validate_trace(system, pi)


def build_pair_automaton(system, effect, branching, acceptance, letters=None):
    """
    Pair automaton over ``2^I × 2^AP`` with states ``(s, q)`` indexed ``s·|Q| + q``.

    From ``(s, q)`` on ``(c, a)`` it moves to every ``(s', q')`` such that some
    input letter ``x`` similar to ``c`` with respect to ``a`` has
    ``s' ∈ δ(s, x)`` and ``q' = Δ(q, x ∪ l(s'))``.
    """
    spec = system.spec
    check_same_alphabet(spec, effect.spec, "system and effect")
    e = effect.automaton
    nq = e.num_states
    alphabet = PairAlphabet(spec)
    letters = alphabet.letters() if letters is None else sorted(letters)

    delta = []
    for s in range(system.num_states):
        for q in range(nq):
            row = {}
            for c, a in letters:
                targets = set()
                for x in similar_letters(spec, a, c):
                    embedded = spec.embed_inputs(x)
                    for s2 in system.successors(s, x):
                        q2 = e.step(q, embedded | system.labels[s2])
                        targets.add(s2 * nq + q2)
                if targets:
                    row[(c, a)] = frozenset(targets)
            delta.append(row)

    return Automaton(
        alphabet=alphabet,
        num_states=system.num_states * nq,
        initial=frozenset({system.initial * nq + e.initial_state}),
        accepting=frozenset(s * nq + q for s in range(system.num_states) for q in e.accepting),
        delta=tuple(delta),
        branching=branching,
        acceptance=acceptance,
    )


def build_pair_ubw(system, effect, letters=None):
    """Universal Büchi pair automaton accepting ``(ρ, π)`` iff every trace ``σ ≤_π ρ`` satisfies the effect."""
    _require_class(effect, EffectClass.RECURRENCE)
    return build_pair_automaton(system, effect, Branching.UNIVERSAL, Acceptance.BUCHI, letters)


def build_pair_nfw(system, effect, letters=None):
    """NFW accepting pair prefixes extended by a similar trace prefix that is a bad prefix."""
    _require_class(effect, EffectClass.SAFETY)
    return build_pair_automaton(system, effect, Branching.NONDETERMINISTIC, Acceptance.FINITE, letters)


def build_pair_ufw(system, effect, letters=None):
    """UFW accepting pair prefixes all of whose similar trace prefixes are good."""
    _require_class(effect, EffectClass.GUARANTEE)
    return build_pair_automaton(system, effect, Branching.UNIVERSAL, Acceptance.FINITE, letters)


def combine_with_trace(pair, pi):
    """
    Fix the second pair component to ``pi``.

    The result runs ``pair`` next to the lasso of ``pi``: states are
    ``(q, position)`` and the input letter ``c`` is read as ``(c, pi(position))``.
    """
    word = pi.word if isinstance(pi, ObservedTrace) else pi
    alphabet = pair.alphabet.left

    def step(key, c):
        q, p = key
        return [(q2, word.next_position(p)) for q2 in sorted(pair.successors(q, (c, word.letter(p))))]

    result, _ = explore(
        alphabet,
        [(q, 0) for q in sorted(pair.initial)],
        step,
        lambda key: key[0] in pair.accepting,
        pair.branching,
        pair.acceptance,
    )
    return mark_complete(result)


def forced_acceptance_closure(automaton):
    """
    Also accept every state from which all infinite paths reach an accepting state.

    With accepting states removed, such states are exactly those that cannot
    reach a cycle; marking them can expose more, so this repeats until stable.
    """
    if not automaton.is_deterministic or automaton.acceptance is not Acceptance.FINITE:
        throw(f"forced_acceptance_closure expects a DFW, got {automaton.kind}", PreconditionError)
    if not automaton.check_complete():
        throw("forced_acceptance_closure expects a complete DFW", PreconditionError)
    graph = transition_graph(automaton)
    accepting = set(automaton.accepting)
    while True:
        rest = [q for q in graph if q not in accepting]
        forced = set(rest) - can_reach_cycle(graph.subgraph(rest))
        if not forced:
            break
        accepting |= forced
    if len(accepting) == len(automaton.accepting):
        return automaton
    return automaton.with_accepting(accepting)


def _stage_bounds(system, effect, word, power):
    n = system.num_states * effect.automaton.num_states
    return {
        "pair": n,
        "deterministic": power**n,
        "combined": word.span * power**n,
        "cause": word.span * power**n,
    }


def _check_stats(stats, bounds):
    for stage, count in stats.items():
        bound = bounds.get(stage)
        if bound is not None and count > bound:
            raise InvariantError(f"Stage '{stage}' has {count} states, bound is {bound}")
        if stage == "pair" and count != bounds["pair"]:
            raise InvariantError(f"Pair automaton has {count} states, expected {bounds['pair']}")


def _finish(system, trace, effect, cause, stats, bounds, exact_prefixes=True):
    _check_stats(stats, bounds)
    result = CauseResult(
        effect_class=effect.effect_class,
        cause=cause,
        exists=False,
        sat_holds=False,
        stats=stats,
        bounds=bounds,
        exact_prefixes=exact_prefixes,
    )
    result.exists = cause_exists(result)
    result.sat_holds = verify_sat(system, trace, effect, cause)
    log.info(
        "%s cause: %s (exists=%s, sat=%s)",
        effect.effect_class.value,
        ", ".join(f"{k}={v}" for k, v in stats.items()),
        result.exists,
        result.sat_holds,
    )
    return result


def _pair_letters(system, trace):
    return PairAlphabet(system.spec).restricted(trace.word.letters())


def synthesize_recurrence(system, pi, effect):
    """Cause of a recurrence effect as a DBW over ``2^I``."""
    _require_class(effect, EffectClass.RECURRENCE)
    trace = _observed(system, pi)
    letters = _pair_letters(system, trace)

    pair = build_pair_ubw(system, effect, letters)
    log.info("pair UBW: %s states", pair.num_states)
    det = breakpoint_ubw_to_dbw(pair, letters)
    log.info("breakpoint DBW: %s states", det.num_states)
    cause = combine_with_trace(det, trace)

    stats = {"pair": pair.num_states, "deterministic": det.num_states, "cause": cause.num_states}
    return _finish(system, trace, effect, cause, stats, _stage_bounds(system, effect, trace.word, 3))


def synthesize_safety(system, pi, effect):
    """Cause of a safety effect as a DFW accepting exactly its bad prefixes."""
    _require_class(effect, EffectClass.SAFETY)
    if not is_input_enabled(system):
        throw("Safety causes need an input-enabled system", PreconditionError)
    trace = _observed(system, pi)
    letters = _pair_letters(system, trace)

    pair = build_pair_nfw(system, effect, letters)
    log.info("pair NFW: %s states", pair.num_states)
    det = determinize_nfw(pair, letters)
    log.info("subset DFW: %s states", det.num_states)
    combined = combine_with_trace(det, trace)
    cause = forced_acceptance_closure(combined)

    stats = {
        "pair": pair.num_states,
        "deterministic": det.num_states,
        "combined": combined.num_states,
        "cause": cause.num_states,
    }
    return _finish(system, trace, effect, cause, stats, _stage_bounds(system, effect, trace.word, 2))


def synthesize_guarantee(system, pi, effect, exact_prefixes=None):
    """
    Cause of a guarantee effect as a DFW over good prefixes.

    Args:
        exact_prefixes (bool, optional): Apply the forced-acceptance closure so
            that the DFW accepts every good prefix, not only the ones the
            universal construction certifies. Defaults to the active settings.
    """
    _require_class(effect, EffectClass.GUARANTEE)
    if exact_prefixes is None:
        exact_prefixes = get_settings().exact_prefixes
    trace = _observed(system, pi)
    letters = _pair_letters(system, trace)

    pair = build_pair_ufw(system, effect, letters)
    log.info("pair UFW: %s states", pair.num_states)
    det = determinize_ufw(pair, letters)
    log.info("subset DFW: %s states", det.num_states)
    combined = combine_with_trace(det, trace)
    cause = forced_acceptance_closure(combined) if exact_prefixes else combined

    stats = {
        "pair": pair.num_states,
        "deterministic": det.num_states,
        "combined": combined.num_states,
        "cause": cause.num_states,
    }
    bounds = _stage_bounds(system, effect, trace.word, 2)
    return _finish(system, trace, effect, cause, stats, bounds, exact_prefixes)


def verify_sat(system, pi, effect, cause):
    """
    Every trace input-equivalent to ``pi`` satisfies the effect, and ``pi``'s
    own input sequence belongs to the cause.
    """
    word = pi.word if isinstance(pi, ObservedTrace) else pi
    own_inputs = word.map(system.spec.project_inputs)
    if lower_set_meets(system, word, own_inputs, effect.negation_as_buchi()):
        return False
    return cause_accepts(effect.effect_class, cause, own_inputs)


def cause_exists(result):
    """Whether the cause ω-language is nonempty."""
    cause = result.cause
    if result.effect_class is EffectClass.RECURRENCE:
        empty, _ = is_empty_buchi(cause)
        return not empty
    if result.effect_class is EffectClass.SAFETY:
        return cause.initial_state not in cause.accepting
    if result.effect_class is EffectClass.GUARANTEE:
        return not finite_language_empty(cause)
    throw(f"No cause automaton for {result.effect_class.value} effects", ClassMismatch)


def synthesize(system, pi, effect, **kwargs):
    """Run the pipeline registered for the effect's class in ``hooks.cause_synthesizers``."""
    if not isinstance(effect, EffectSpec):
        throw("synthesize expects an EffectSpec", PreconditionError)
    path = hooks.cause_synthesizers.get(effect.effect_class.value)
    if path is None:
        throw(f"No synthesis pipeline for {effect.effect_class.value} effects", ClassMismatch)
    return get_attr(path)(system, pi, effect, **kwargs)
