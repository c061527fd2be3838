# Copyright (c) 2026, Erick W.R. and contributors
# For license information, please see license.txt

"""
Determinization constructions.

Macro-states are frozensets of state indices (pairs of frozensets for the
breakpoint construction) and are explored on the fly, so only reachable
macro-states are materialized. Every construction checks its state bound.
"""

from tempcause.automata.automaton import Acceptance, Branching, explore
from tempcause.automata.operations import mark_complete
from tempcause.exceptions import InvariantError, PreconditionError, throw
from tempcause.utils.logger import logger


def _check_bound(result, bound, name):
    if result.num_states > bound:
        raise InvariantError(f"{name} produced {result.num_states} states, bound is {bound}")


def _post(automaton, macro, letter):
    successors = set()
    for q in macro:
        successors |= automaton.successors(q, letter)
    return frozenset(successors)


def _subset_construction(automaton, is_accepting, letters):
    result, _ = explore(
        automaton.alphabet,
        [frozenset(automaton.initial)],
        lambda macro, letter: [_post(automaton, macro, letter)],
        is_accepting,
        Branching.DETERMINISTIC,
        Acceptance.FINITE,
        letters=letters,
    )
    # Restricted explorations are complete only over the letters they read
    return mark_complete(result) if letters is None else result


def determinize_nfw(automaton, letters=None):
    """
    Subset construction for an NFW.

    Args:
        automaton (Automaton): A finite-word automaton (deterministic or nondeterministic).
        letters (list, optional): Only explore these letters.

    Returns:
        Automaton: A DFW; a macro-state accepts iff it contains an accepting state.
    """
    if automaton.acceptance is not Acceptance.FINITE:
        throw(f"determinize_nfw expects finite acceptance, got {automaton.kind}", PreconditionError)
    if automaton.is_universal:
        throw("determinize_nfw expects existential branching", PreconditionError)
    accepting = automaton.accepting
    result = _subset_construction(automaton, lambda macro: bool(macro & accepting), letters)
    _check_bound(result, 2**automaton.num_states, "determinize_nfw")
    logger("automata").debug("determinize_nfw: %s -> %s states", automaton.num_states, result.num_states)
    return result


def determinize_ufw(automaton, letters=None):
    """
    Subset construction for a UFW.

    A macro-state accepts iff every active branch sits in an accepting state;
    the empty macro-state (every branch died) accepts vacuously.
    """
    if automaton.acceptance is not Acceptance.FINITE:
        throw(f"determinize_ufw expects finite acceptance, got {automaton.kind}", PreconditionError)
    accepting = automaton.accepting
    result = _subset_construction(automaton, lambda macro: macro <= accepting, letters)
    _check_bound(result, 2**automaton.num_states, "determinize_ufw")
    logger("automata").debug("determinize_ufw: %s -> %s states", automaton.num_states, result.num_states)
    return result


def breakpoint_ubw_to_dbw(automaton, letters=None):
    """
    Breakpoint construction turning a UBW into a DBW.

    Macro-states are pairs ``(active, owing)`` with ``owing ⊆ active``.
    ``owing`` holds the branches that have not visited an accepting state
    since the last breakpoint; a macro-state with empty ``owing`` is
    accepting and the next step restarts ``owing`` from the new active set.
    Branches without successors are dropped.
    """
    if automaton.acceptance is not Acceptance.BUCHI or not automaton.is_universal:
        throw(f"breakpoint_ubw_to_dbw expects a UBW, got {automaton.kind}", PreconditionError)
    accepting = automaton.accepting
    active0 = frozenset(automaton.initial)

    def step(key, letter):
        active, owing = key
        active2 = _post(automaton, active, letter)
        if owing:
            owing2 = _post(automaton, owing, letter) - accepting
        else:
            owing2 = active2 - accepting
        return [(active2, owing2)]

    result, _ = explore(
        automaton.alphabet,
        [(active0, active0 - accepting)],
        step,
        lambda key: not key[1],
        Branching.DETERMINISTIC,
        Acceptance.BUCHI,
        letters=letters,
    )
    if letters is None:
        result = mark_complete(result)
    _check_bound(result, 3**automaton.num_states, "breakpoint_ubw_to_dbw")
    logger("automata").debug("breakpoint: %s -> %s states", automaton.num_states, result.num_states)
    return result
