# Copyright (c) 2026, Erick W.R. and contributors
# For license information, please see license.txt

"""
Reactive systems and their traces.

A trace letter at position ``t`` is the input read at ``t`` together with the
label of the state entered at ``t + 1``; the label of the initial state never
appears.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Tuple

import networkx as nx

from tempcause.automata.alphabet import AlphabetSpec, LassoWord
from tempcause.automata.automaton import Acceptance, Automaton, Branching
from tempcause.automata.graphs import cyclic_nodes, find_lasso, reachable_from
from tempcause.exceptions import InvariantError, NotATrace, throw

EMPTY = frozenset()


@dataclass(frozen=True)
class System:
    """
    ``delta[s]`` maps an input letter (over ``spec.input_spec()``) to the
    successor states of ``s``; ``labels[s]`` is a letter over ``spec`` that
    only sets outputs.
    """

    spec: AlphabetSpec
    num_states: int
    initial: int
    delta: Tuple[Dict[int, FrozenSet[int]], ...]
    labels: Tuple[int, ...]
    names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "delta", tuple(self.delta))
        object.__setattr__(self, "labels", tuple(self.labels))
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))
        if not 0 <= self.initial < self.num_states:
            raise InvariantError("Initial state out of range")
        if len(self.delta) != self.num_states or len(self.labels) != self.num_states:
            raise InvariantError("Every state needs a transition row and a label")
        for label in self.labels:
            if label & ~self.spec.output_mask:
                raise InvariantError("State labels may only set outputs")
        for row in self.delta:
            for targets in row.values():
                if not targets <= set(range(self.num_states)):
                    raise InvariantError("Transition endpoint out of range")

    def successors(self, state, inputs):
        return self.delta[state].get(inputs, EMPTY)

    def state_name(self, state):
        return self.names[state] if self.names else f"s{state}"

    def input_letters(self):
        return self.spec.input_spec().letters()


@dataclass(frozen=True)
class ObservedTrace:
    """A lasso word over ``2^AP`` together with a lasso-shaped run of states producing it."""

    word: LassoWord
    run: Optional[LassoWord] = None

    @property
    def span(self):
        return self.word.span


def is_input_enabled(system):
    """Every state has a successor for every input letter."""
    return all(
        system.delta[s].get(inputs)
        for s in range(system.num_states)
        for inputs in system.input_letters()
    )


def trivial_system(spec):
    """The system whose traces are all words over ``2^AP``: one state per output letter."""
    labels = spec.output_letters()
    everywhere = frozenset(range(len(labels)))
    delta = [{inputs: everywhere for inputs in spec.input_spec().letters()} for _ in labels]
    return System(spec, len(labels), 0, tuple(delta), tuple(labels))


def system_as_safety_automaton(system):
    """NBW over ``2^AP`` with every state accepting, whose language is ``traces(system)``."""
    spec = system.spec
    delta = []
    for s in range(system.num_states):
        row = {}
        for inputs, targets in system.delta[s].items():
            embedded = spec.embed_inputs(inputs)
            for target in targets:
                letter = embedded | system.labels[target]
                row[letter] = row.get(letter, EMPTY) | {target}
        delta.append(row)
    return Automaton(
        alphabet=spec,
        num_states=system.num_states,
        initial=frozenset({system.initial}),
        accepting=frozenset(range(system.num_states)),
        delta=tuple(delta),
        branching=Branching.NONDETERMINISTIC,
        acceptance=Acceptance.BUCHI,
    )


def _trace_graph(system, word):
    spec = system.spec
    graph = nx.DiGraph()
    for s in range(system.num_states):
        for p in range(word.span):
            letter = word.letter(p)
            inputs = spec.project_inputs(letter)
            outputs = letter & spec.output_mask
            graph.add_node((s, p))
            for target in sorted(system.successors(s, inputs)):
                if system.labels[target] == outputs:
                    graph.add_edge((s, p), (target, word.next_position(p)))
    return graph


def validate_trace(system, word):
    """
    Check that ``word`` is a trace of ``system`` and return it with a witnessing run.

    Raises:
        NotATrace: When no infinite run of ``system`` produces ``word``.
    """
    if isinstance(word, ObservedTrace):
        word = word.word
    for letter in word.letters():
        if not 0 <= letter < system.spec.size:
            throw(f"Letter {letter} is not over the system's propositions", NotATrace)
    graph = _trace_graph(system, word)
    start = (system.initial, 0)
    reachable = reachable_from(graph, [start])
    cyclic = sorted(cyclic_nodes(graph.subgraph(reachable)))
    if not cyclic:
        throw("The word is not a trace of the system", NotATrace)
    stem, loop = find_lasso(graph, [start], cyclic[0])
    run = LassoWord(tuple(s for s, _ in stem), tuple(s for s, _ in loop))
    return ObservedTrace(word, run)
