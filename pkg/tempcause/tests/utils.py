# Copyright (c) 2026, Erick W.R. and Contributors
# See license.txt

"""Shared helpers for the test suite: fixtures and brute-force reference checks."""

import itertools
import os
import random
from pathlib import Path

from tempcause.automata.automaton import Acceptance, Automaton, Branching
from tempcause.io.formats import parse_automaton, parse_system, parse_trace
from tempcause.system.model import System

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_text(name):
    return (FIXTURES / name).read_text()


def load_system(name):
    return parse_system(fixture_text(name))


def load_automaton(name):
    return parse_automaton(fixture_text(name))


def load_trace(name, alphabet):
    return parse_trace(fixture_text(name), alphabet)


def property_instances(default):
    """Instance count for property tests, overridable with TEMPCAUSE_PROPERTY_INSTANCES."""
    return int(os.environ.get("TEMPCAUSE_PROPERTY_INSTANCES", default))


def rng(seed):
    return random.Random(seed)


def all_words(letters, max_len):
    for length in range(max_len + 1):
        yield from itertools.product(letters, repeat=length)


def brute_finite_accepts(automaton, word):
    """Enumerate every run explicitly; universal runs that die accept vacuously."""
    ends, dead = [], False

    def walk(q, t):
        nonlocal dead
        if t == len(word):
            ends.append(q)
            return
        targets = automaton.successors(q, word[t])
        if not targets:
            dead = True
        for q2 in targets:
            walk(q2, t + 1)

    for q in automaton.initial:
        walk(q, 0)
    if automaton.is_universal:
        return all(q in automaton.accepting for q in ends)
    return any(q in automaton.accepting for q in ends)


def _product_nodes(automaton, word):
    succ = {}
    stack = [(q, 0) for q in automaton.initial]
    while stack:
        node = stack.pop()
        if node in succ:
            continue
        q, p = node
        nxt = {(q2, word.next_position(p)) for q2 in automaton.successors(q, word.letter(p))}
        succ[node] = nxt
        stack.extend(nxt)
    return succ


def _prune_to_cycles(succ, nodes):
    """Largest subset of ``nodes`` in which every node keeps a successor."""
    nodes = set(nodes)
    changed = True
    while changed:
        changed = False
        for node in list(nodes):
            if not succ[node] & nodes:
                nodes.discard(node)
                changed = True
    return nodes


def _fair_nodes(succ, accepting_nodes):
    """Accepting nodes that can revisit the set infinitely often (greatest fixpoint)."""
    z = set(accepting_nodes)
    while True:
        keep = set()
        for node in z:
            seen, stack = set(), list(succ[node])
            while stack:
                n = stack.pop()
                if n in seen:
                    continue
                seen.add(n)
                stack.extend(succ[n])
            if seen & z:
                keep.add(node)
        if keep == z:
            return z
        z = keep


def brute_lasso_accepts(automaton, word):
    """Reference ω-membership by fixpoint iteration over ``(state, position)`` pairs."""
    succ = _product_nodes(automaton, word)
    in_f = {node for node in succ if node[0] in automaton.accepting}
    buchi = automaton.acceptance is Acceptance.BUCHI
    accepting_cycle = bool(_fair_nodes(succ, in_f))
    rejecting_tail = bool(_prune_to_cycles(succ, set(succ) - in_f))
    if automaton.is_universal:
        return not rejecting_tail if buchi else not accepting_cycle
    return accepting_cycle if buchi else rejecting_tail


def one_state(spec, accepting, acceptance):
    row = {letter: frozenset({0}) for letter in spec.letters()}
    return Automaton(
        spec, 1, {0}, {0} if accepting else set(), (row,), Branching.DETERMINISTIC, acceptance, complete=True
    )


def eventually(spec, name):
    """DFW whose accepting sink is entered on the first letter containing ``name``."""
    bit = spec.mask([name])
    delta = (
        {letter: frozenset({1 if letter & bit else 0}) for letter in spec.letters()},
        {letter: frozenset({1}) for letter in spec.letters()},
    )
    return Automaton(spec, 2, {0}, {1}, delta, Branching.DETERMINISTIC, Acceptance.FINITE, complete=True)


def two_step_system(spec):
    """o shows up on the second step whatever the inputs are."""
    o = spec.mask(["o"])
    delta = [{x: frozenset({min(s + 1, 2)}) for x in spec.input_spec().letters()} for s in range(3)]
    return System(spec, 3, 0, tuple(delta), (0, 0, o))
