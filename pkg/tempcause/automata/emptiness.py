# Copyright (c) 2026, Erick W.R. and contributors
# For license information, please see license.txt

"""
Emptiness, membership and language equivalence.
"""

from dataclasses import replace

import networkx as nx

from tempcause.automata.alphabet import LassoWord, check_same_alphabet
from tempcause.automata.automaton import Acceptance, Branching, explore
from tempcause.automata.graphs import (
    cyclic_nodes,
    find_lasso,
    path_letters,
    reachable_from,
    transition_graph,
)
from tempcause.automata.operations import Compose, product
from tempcause.exceptions import PreconditionError, throw


def is_empty_buchi(automaton):
    """
    Büchi emptiness by SCC decomposition.

    Returns:
        tuple: ``(empty, witness)``; ``witness`` is a ``LassoWord`` through the
        smallest accepting state lying on a reachable cycle, or ``None``.
    """
    if automaton.acceptance is not Acceptance.BUCHI or automaton.is_universal:
        throw(f"is_empty_buchi expects an NBW or DBW, got {automaton.kind}", PreconditionError)
    graph = transition_graph(automaton)
    reachable = reachable_from(graph, automaton.initial)
    live = sorted(cyclic_nodes(graph.subgraph(reachable)) & automaton.accepting)
    if not live:
        return True, None

    target = live[0]
    stem, loop = find_lasso(graph, automaton.initial, target)
    witness = LassoWord(
        tuple(path_letters(graph, stem + [target])),
        tuple(path_letters(graph, loop + [target])),
    )
    return False, witness


def finite_language_empty(automaton):
    if automaton.acceptance is not Acceptance.FINITE or automaton.is_universal:
        throw(f"finite_language_empty expects an NFW or DFW, got {automaton.kind}", PreconditionError)
    reachable = reachable_from(transition_graph(automaton), automaton.initial)
    return not (reachable & automaton.accepting)


def _run_graph(automaton, word: LassoWord):
    """Runs of ``automaton`` on ``word`` as a graph over ``(state, folded position)``."""
    graph = nx.DiGraph()
    sources = [(q, 0) for q in sorted(automaton.initial)]
    stack = list(sources)
    seen = set(sources)
    graph.add_nodes_from(sources)
    while stack:
        q, p = stack.pop()
        p2 = word.next_position(p)
        for q2 in automaton.successors(q, word.letter(p)):
            node = (q2, p2)
            graph.add_edge((q, p), node)
            if node not in seen:
                seen.add(node)
                stack.append(node)
    return graph


def _has_accepting_cycle(graph, accepting):
    return any(q in accepting for q, _ in cyclic_nodes(graph))


def _has_rejecting_tail(graph, accepting):
    avoid = graph.subgraph([node for node in graph if node[0] not in accepting])
    return bool(cyclic_nodes(avoid))


def membership_lasso(automaton, word: LassoWord):
    """
    Decide ``word ∈ L(automaton)`` for an ω-automaton of any branching mode.

    Universal automata accept iff every infinite run is accepting; runs that
    die are ignored.
    """
    if automaton.acceptance is Acceptance.FINITE:
        throw(f"{automaton.kind} reads finite words, not lassos", PreconditionError)
    graph = _run_graph(automaton, word)
    accepting = automaton.accepting
    buchi = automaton.acceptance is Acceptance.BUCHI
    if automaton.is_universal:
        if buchi:
            return not _has_rejecting_tail(graph, accepting)
        return not _has_accepting_cycle(graph, accepting)
    if buchi:
        return _has_accepting_cycle(graph, accepting)
    return _has_rejecting_tail(graph, accepting)


def accepts_word(automaton, word):
    """Finite-word membership; universal runs that die accept vacuously."""
    if automaton.acceptance is not Acceptance.FINITE:
        throw(f"{automaton.kind} reads lassos, not finite words", PreconditionError)
    current = frozenset(automaton.initial)
    for letter in word:
        nxt = set()
        for q in current:
            nxt |= automaton.successors(q, letter)
        current = frozenset(nxt)
    if automaton.is_universal:
        return current <= automaton.accepting
    return bool(current & automaton.accepting)


def visits_accepting(automaton, word: LassoWord):
    """True iff some finite prefix of ``word`` (ε included) is accepted."""
    if automaton.acceptance is not Acceptance.FINITE or automaton.is_universal:
        throw(f"visits_accepting expects an NFW or DFW, got {automaton.kind}", PreconditionError)
    graph = _run_graph(automaton, word)
    return any(q in automaton.accepting for q, _ in graph.nodes)


def complement_dbw_to_nbw(automaton):
    """
    Complement a complete DBW into an NBW with at most ``2·|Q|`` states.

    Copy 0 follows the DBW; at any step the run may move into copy 1, which
    only contains non-accepting states and is the accepting set of the result.
    """
    if not automaton.is_deterministic or automaton.acceptance is not Acceptance.BUCHI:
        throw(f"complement_dbw_to_nbw expects a DBW, got {automaton.kind}", PreconditionError)
    if not automaton.check_complete():
        throw("complement_dbw_to_nbw expects a complete DBW", PreconditionError)
    accepting = automaton.accepting

    def step(key, letter):
        copy, q = key
        target = automaton.step(q, letter)
        if copy == 0:
            return [(0, target)] + ([(1, target)] if target not in accepting else [])
        return [(1, target)] if target not in accepting else []

    result, _ = explore(
        automaton.alphabet,
        [(0, automaton.initial_state)],
        step,
        lambda key: key[0] == 1,
        Branching.NONDETERMINISTIC,
        Acceptance.BUCHI,
    )
    return result


def _require_complete(automaton, branching, acceptance):
    if automaton.branching is not branching or automaton.acceptance is not acceptance:
        throw(f"Expected a complete deterministic automaton, got {automaton.kind}", PreconditionError)
    if not automaton.check_complete():
        throw(f"Expected a complete {automaton.kind}", PreconditionError)


def equivalent_dbw(a, b):
    """Language equality of two complete DBWs over the same alphabet."""
    for automaton in (a, b):
        _require_complete(automaton, Branching.DETERMINISTIC, Acceptance.BUCHI)
    check_same_alphabet(a.alphabet, b.alphabet)
    for left, right in ((a, b), (b, a)):
        empty, _ = is_empty_buchi(product(left, complement_dbw_to_nbw(right), compose=Compose.BUCHI_AND))
        if not empty:
            return False
    return True


def equivalent_dfw(a, b):
    """Language equality of two complete DFWs, via an XOR product."""
    for automaton in (a, b):
        _require_complete(automaton, Branching.DETERMINISTIC, Acceptance.FINITE)
    check_same_alphabet(a.alphabet, b.alphabet)
    return finite_language_empty(product(a, b, compose=Compose.XOR))


def as_buchi(automaton, accepting=None):
    """The same transition structure read as a Büchi automaton."""
    return replace(
        automaton,
        acceptance=Acceptance.BUCHI,
        accepting=automaton.accepting if accepting is None else frozenset(accepting),
    )
