# Copyright (c) 2026, Erick W.R. and contributors
# For license information, please see license.txt

from collections import deque
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, FrozenSet, Optional, Tuple

from tempcause.exceptions import InvariantError, PreconditionError


class Branching(Enum):
    DETERMINISTIC = "deterministic"
    NONDETERMINISTIC = "nondeterministic"
    UNIVERSAL = "universal"


class Acceptance(Enum):
    FINITE = "finite"
    BUCHI = "buchi"
    COBUCHI = "cobuchi"


KINDS = {
    "DFW": (Branching.DETERMINISTIC, Acceptance.FINITE),
    "NFW": (Branching.NONDETERMINISTIC, Acceptance.FINITE),
    "UFW": (Branching.UNIVERSAL, Acceptance.FINITE),
    "DBW": (Branching.DETERMINISTIC, Acceptance.BUCHI),
    "NBW": (Branching.NONDETERMINISTIC, Acceptance.BUCHI),
    "UBW": (Branching.UNIVERSAL, Acceptance.BUCHI),
    "DCW": (Branching.DETERMINISTIC, Acceptance.COBUCHI),
    "NCW": (Branching.NONDETERMINISTIC, Acceptance.COBUCHI),
    "UCW": (Branching.UNIVERSAL, Acceptance.COBUCHI),
}

_TAGS = {value: key for key, value in KINDS.items()}

EMPTY = frozenset()


@dataclass(frozen=True)
class Automaton:
    """
    An immutable automaton over finite or infinite words.

    ``delta[q]`` maps a letter to the frozenset of successors of ``q``; a
    letter missing from the mapping has no successor.
    """

    alphabet: object
    num_states: int
    initial: FrozenSet[int]
    accepting: FrozenSet[int]
    delta: Tuple[Dict[object, FrozenSet[int]], ...]
    branching: Branching = Branching.NONDETERMINISTIC
    acceptance: Acceptance = Acceptance.FINITE
    complete: bool = False

    def __post_init__(self):
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "delta", tuple(self.delta))
        states = range(self.num_states)
        if len(self.delta) != self.num_states:
            raise InvariantError("Transition table does not cover every state")
        if not self.initial <= set(states) or not self.accepting <= set(states):
            raise InvariantError("Initial or accepting state out of range")
        for row in self.delta:
            for successors in row.values():
                if not successors <= set(states):
                    raise InvariantError("Transition endpoint out of range")
                if self.is_deterministic and len(successors) > 1:
                    raise InvariantError("Deterministic automaton with a branching transition")
        if self.is_deterministic and len(self.initial) != 1:
            raise InvariantError("Deterministic automaton needs exactly one initial state")
        if self.complete and not self.check_complete():
            raise InvariantError("Automaton flagged complete has a missing transition")

    @property
    def kind(self):
        return _TAGS[(self.branching, self.acceptance)]

    @property
    def is_deterministic(self):
        return self.branching is Branching.DETERMINISTIC

    @property
    def is_universal(self):
        return self.branching is Branching.UNIVERSAL

    @property
    def initial_state(self):
        if len(self.initial) != 1:
            raise PreconditionError(f"{self.kind} has {len(self.initial)} initial states")
        return next(iter(self.initial))

    def successors(self, state, letter):
        return self.delta[state].get(letter, EMPTY)

    def step(self, state, letter):
        """Unique successor of a deterministic automaton, or None."""
        successors = self.delta[state].get(letter)
        return next(iter(successors)) if successors else None

    def check_complete(self, letters=None):
        letters = self.alphabet.letters() if letters is None else letters
        return all(row.get(letter) for row in self.delta for letter in letters)

    def edges(self):
        """Yield ``(q, letter, q')`` in a deterministic order."""
        for q, row in enumerate(self.delta):
            for letter in sorted(row):
                for target in sorted(row[letter]):
                    yield q, letter, target

    def with_accepting(self, accepting, acceptance: Optional[Acceptance] = None):
        return replace(self, accepting=frozenset(accepting), acceptance=acceptance or self.acceptance)


def explore(
    alphabet,
    initial_keys,
    step,
    is_accepting,
    branching,
    acceptance,
    letters=None,
    seeds=(),
):
    """
    Build an automaton by breadth-first exploration of hashable state keys.

    Args:
        alphabet: Alphabet of the result.
        initial_keys (list): Keys of the initial states, in order.
        step (callable): ``step(key, letter)`` returns an iterable of successor keys.
        is_accepting (callable): ``is_accepting(key)`` for the acceptance set.
        letters (list, optional): Letters to explore. Defaults to every letter of ``alphabet``.
        seeds (list, optional): Extra keys added as states even when unreachable.

    Returns:
        tuple: The automaton and the list of keys indexed by state.
    """
    letters = sorted(alphabet.letters()) if letters is None else sorted(letters)
    index: Dict[object, int] = {}
    keys = []
    queue = deque()

    def visit(key):
        if key not in index:
            index[key] = len(keys)
            keys.append(key)
            queue.append(key)
        return index[key]

    initial = [visit(key) for key in initial_keys]
    for key in seeds:
        visit(key)

    delta = []
    while queue:
        key = queue.popleft()
        row = {}
        for letter in letters:
            targets = frozenset(visit(target) for target in step(key, letter))
            if targets:
                row[letter] = targets
        delta.append(row)

    automaton = Automaton(
        alphabet=alphabet,
        num_states=len(keys),
        initial=frozenset(initial),
        accepting=frozenset(i for i, key in enumerate(keys) if is_accepting(key)),
        delta=tuple(delta),
        branching=branching,
        acceptance=acceptance,
    )
    return automaton, keys
