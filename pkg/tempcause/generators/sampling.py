"""Seeded random instances for property tests and benchmarks."""

from tempcause.automata.alphabet import AlphabetSpec, LassoWord
from tempcause.automata.automaton import Acceptance, Automaton, Branching
from tempcause.automata.operations import make_accepting_absorbing, mark_complete
from tempcause.exceptions import PreconditionError, throw
from tempcause.synthesis.effects import EffectClass, EffectSpec
from tempcause.system.model import System


def random_spec(rng, max_inputs=2, max_outputs=1):
    inputs = [f"i{k}" for k in range(rng.randint(1, max_inputs))]
    outputs = [f"o{k}" for k in range(rng.randint(0, max_outputs))]
    return AlphabetSpec.build(inputs, outputs)


def random_system(rng, spec, max_states=4, input_enabled=True):
    n = rng.randint(1, max_states)
    labels = spec.output_letters()
    delta = []
    for _ in range(n):
        row = {}
        for inputs in spec.input_spec().letters():
            count = rng.randint(1 if input_enabled else 0, 2)
            targets = frozenset(rng.sample(range(n), min(count, n)))
            if targets:
                row[inputs] = targets
        delta.append(row)
    return System(spec, n, 0, tuple(delta), tuple(rng.choice(labels) for _ in range(n)))


def random_trace(rng, system):
    """
    Lasso trace of a memoryless random walk.

    Each state gets one fixed random ``(input, successor)`` choice, so the walk
    closes a loop as soon as it revisits a state.
    """
    spec = system.spec
    choice = {}
    for s in range(system.num_states):
        moves = [(x, t) for x, targets in sorted(system.delta[s].items()) for t in sorted(targets)]
        if moves:
            choice[s] = rng.choice(moves)

    order, letters = [], []
    s = system.initial
    while s not in order:
        if s not in choice:
            throw("Random walk reached a state without successors", PreconditionError)
        order.append(s)
        x, t = choice[s]
        letters.append(spec.embed_inputs(x) | system.labels[t])
        s = t
    start = order.index(s)
    return LassoWord(tuple(letters[:start]), tuple(letters[start:]))


def _random_deterministic(rng, alphabet, max_states, acceptance):
    n = rng.randint(1, max_states)
    delta = tuple(
        {letter: frozenset({rng.randrange(n)}) for letter in alphabet.letters()}
        for _ in range(n)
    )
    accepting = frozenset(q for q in range(n) if rng.random() < 0.5)
    return Automaton(alphabet, n, frozenset({0}), accepting, delta, Branching.DETERMINISTIC, acceptance, complete=True)


def random_dbw(rng, alphabet, max_states=3):
    return _random_deterministic(rng, alphabet, max_states, Acceptance.BUCHI)


def random_dfw(rng, alphabet, max_states=3, absorbing=True):
    automaton = _random_deterministic(rng, alphabet, max_states, Acceptance.FINITE)
    return make_accepting_absorbing(automaton) if absorbing else automaton


def random_automaton(rng, alphabet, max_states, branching, acceptance, density=0.4):
    """Automaton with a single initial state and each transition present with probability ``density``."""
    if branching is Branching.DETERMINISTIC:
        return _random_deterministic(rng, alphabet, max_states, acceptance)
    n = rng.randint(1, max_states)
    delta = []
    for _ in range(n):
        row = {}
        for letter in alphabet.letters():
            targets = frozenset(q for q in range(n) if rng.random() < density)
            if targets:
                row[letter] = targets
        delta.append(row)
    accepting = frozenset(q for q in range(n) if rng.random() < 0.5)
    return mark_complete(Automaton(alphabet, n, frozenset({0}), accepting, tuple(delta), branching, acceptance))


def random_effect(rng, spec, effect_class, max_states=3):
    effect_class = EffectClass(effect_class)
    if effect_class.is_prefix_class:
        return EffectSpec(effect_class, random_dfw(rng, spec, max_states))
    return EffectSpec(effect_class, random_dbw(rng, spec, max_states))
