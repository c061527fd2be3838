# Copyright (c) 2026, Erick W.R. and contributors
# For license information, please see license.txt

"""
Structural operations: completion, complement of DFWs, synchronous products,
absorbing normalization, reachability trimming and relabelling.
"""

from dataclasses import replace
from enum import Enum

from tempcause.automata.alphabet import check_same_alphabet
from tempcause.automata.automaton import Acceptance, Automaton, Branching, explore
from tempcause.automata.graphs import reachable_from, transition_graph
from tempcause.exceptions import PreconditionError, throw


class Compose(Enum):
    AND = "and"
    XOR = "xor"
    BUCHI_AND = "buchi_and"


def mark_complete(automaton):
    return replace(automaton, complete=automaton.check_complete())


def complete(automaton):
    """
    Add a rejecting sink for missing transitions.

    Universal automata are returned unchanged: a missing transition there is
    a branch that dies, which accepts vacuously.
    """
    if automaton.is_universal:
        return automaton
    if automaton.check_complete():
        return replace(automaton, complete=True)

    sink = automaton.num_states
    letters = list(automaton.alphabet.letters())
    delta = []
    for row in automaton.delta:
        new_row = dict(row)
        for letter in letters:
            if not new_row.get(letter):
                new_row[letter] = frozenset({sink})
        delta.append(new_row)
    delta.append({letter: frozenset({sink}) for letter in letters})

    accepting = automaton.accepting
    if automaton.acceptance is Acceptance.COBUCHI:
        # co-Büchi runs staying in F forever are rejected
        accepting = accepting | {sink}
    return replace(
        automaton,
        num_states=sink + 1,
        delta=tuple(delta),
        accepting=accepting,
        complete=True,
    )


def complement_dfw(automaton):
    if not automaton.is_deterministic or automaton.acceptance is not Acceptance.FINITE:
        throw(f"complement_dfw expects a DFW, got {automaton.kind}", PreconditionError)
    if not automaton.check_complete():
        throw("complement_dfw expects a complete DFW", PreconditionError)
    flipped = frozenset(range(automaton.num_states)) - automaton.accepting
    return replace(automaton, accepting=flipped, complete=True)


def _product_branching(a, b):
    if a.is_universal or b.is_universal:
        throw("Products of universal automata are not supported", PreconditionError)
    if a.is_deterministic and b.is_deterministic:
        return Branching.DETERMINISTIC
    return Branching.NONDETERMINISTIC


def product(a, b, sync=None, compose=Compose.AND, prune=True):
    """
    Synchronous product of two automata.

    Args:
        a (Automaton): First factor; the product reads its alphabet.
        b (Automaton): Second factor.
        sync (callable, optional): Maps a letter of ``a`` to the letter ``b``
            reads at the same step. Without it both factors must share an alphabet.
        compose (Compose): Acceptance composition. ``BUCHI_AND`` intersects two
            Büchi conditions with a flag bit; the other modes combine the
            membership of both components in their accepting sets.
        prune (bool): Keep only reachable states.

    Returns:
        Automaton: The product, states ordered by discovery.
    """
    if sync is None:
        check_same_alphabet(a.alphabet, b.alphabet)
    if a.acceptance is not b.acceptance:
        throw(f"Cannot compose {a.kind} with {b.kind}", PreconditionError)
    if compose is Compose.BUCHI_AND and a.acceptance is not Acceptance.BUCHI:
        throw("BUCHI_AND needs two Büchi automata", PreconditionError)

    branching = _product_branching(a, b)
    flagged = compose is Compose.BUCHI_AND
    fa, fb = a.accepting, b.accepting

    def step(key, letter):
        p, q = key[0], key[1]
        targets_b = b.successors(q, letter if sync is None else sync(letter))
        if not targets_b:
            return ()
        flag = 0
        if flagged:
            flag = key[2]
            if flag == 0 and p in fa:
                flag = 1
            elif flag == 1 and q in fb:
                flag = 0
        return [
            (p2, q2, flag) if flagged else (p2, q2)
            for p2 in sorted(a.successors(p, letter))
            for q2 in sorted(targets_b)
        ]

    def is_accepting(key):
        p, q = key[0], key[1]
        in_a, in_b = p in fa, q in fb
        if compose is Compose.BUCHI_AND:
            return key[2] == 1 and in_b
        if compose is Compose.AND:
            return in_a and in_b
        return in_a != in_b

    def key_of(p, q):
        return (p, q, 0) if flagged else (p, q)

    initial = [key_of(p, q) for p in sorted(a.initial) for q in sorted(b.initial)]
    seeds = ()
    if not prune:
        seeds = [
            (p, q, flag) if flagged else (p, q)
            for p in range(a.num_states)
            for q in range(b.num_states)
            for flag in ((0, 1) if flagged else (0,))
        ]
    letters = sorted({letter for row in a.delta for letter in row})
    result, _ = explore(
        a.alphabet,
        initial,
        step,
        is_accepting,
        branching,
        a.acceptance,
        letters=letters,
        seeds=seeds,
    )
    return mark_complete(result) if a.complete and b.complete else result


def trim(automaton):
    """Drop states unreachable from the initial states."""
    keep = reachable_from(transition_graph(automaton), automaton.initial)
    if len(keep) == automaton.num_states:
        return automaton
    order = sorted(keep)
    index = {q: i for i, q in enumerate(order)}
    delta = tuple(
        {
            letter: frozenset(index[t] for t in targets)
            for letter, targets in automaton.delta[q].items()
        }
        for q in order
    )
    return replace(
        automaton,
        num_states=len(order),
        initial=frozenset(index[q] for q in automaton.initial),
        accepting=frozenset(index[q] for q in automaton.accepting if q in index),
        delta=delta,
    )


def make_accepting_absorbing(automaton):
    """Turn every accepting state of a finite-word automaton into a sink."""
    if automaton.acceptance is not Acceptance.FINITE:
        throw("Only prefix automata are normalized to absorbing form", PreconditionError)
    letters = list(automaton.alphabet.letters())
    delta = tuple(
        {letter: frozenset({q}) for letter in letters} if q in automaton.accepting else row
        for q, row in enumerate(automaton.delta)
    )
    return trim(mark_complete(replace(automaton, delta=delta, complete=False)))


def accepting_is_absorbing(automaton):
    return all(
        targets <= automaton.accepting
        for q in automaton.accepting
        for targets in automaton.delta[q].values()
    )


def relabel(automaton, spec):
    """Re-express an automaton over ``spec``, which declares the same propositions in another order."""
    source = automaton.alphabet
    if set(source.aps) != set(spec.aps):
        throw("relabel needs the same propositions", PreconditionError)
    translate = {letter: spec.mask(source.names(letter)) for letter in source.letters()}
    delta = tuple(
        {translate[letter]: targets for letter, targets in row.items()}
        for row in automaton.delta
    )
    return replace(automaton, alphabet=spec, delta=delta)
