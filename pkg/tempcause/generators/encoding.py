# Copyright (c) 2026, Erick W.R. and contributors
# For license information, please see license.txt

"""
Reductions from automaton complementation to cause synthesis.

An automaton ``A`` with ``n`` states over ``m`` letters becomes a system with
one state per state of ``A`` plus a sink ``top``. Input bits ``i1..ik``
carry a letter as an incomparable ``⌊k/2⌋``-subset and bits ``j1..jj`` name
the successor state in binary. Observing the all-empty trace, the cause of a
suitable effect, read back through the letter encoding, is the complement of
``L(A)``.
"""

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Optional, Tuple

from tempcause.automata.alphabet import AlphabetSpec, LassoWord, SymbolAlphabet
from tempcause.automata.automaton import Acceptance, Automaton, Branching, explore
from tempcause.automata.operations import mark_complete
from tempcause.config import get_settings
from tempcause.exceptions import PreconditionError, throw
from tempcause.synthesis.effects import EffectClass, EffectSpec
from tempcause.system.model import ObservedTrace, System, validate_trace
from tempcause.utils.logger import logger

log = logger("generators")

END_SYMBOL = "#"


def letter_bit_count(m):
    """Smallest ``k`` with ``C(k, ⌊k/2⌋) ≥ m``; a single letter still gets two bits."""
    k = 0
    while math.comb(k, k // 2) < m:
        k += 1
    return 2 if k == 0 else k


@dataclass(frozen=True)
class EncodingScheme:
    num_letters: int
    num_states: int

    @property
    def k(self):
        return letter_bit_count(self.num_letters)

    @property
    def j_count(self):
        return math.ceil(math.log2(self.num_states)) if self.num_states > 1 else 0

    @cached_property
    def spec(self):
        inputs = [f"i{b + 1}" for b in range(self.k)] + [f"j{b + 1}" for b in range(self.j_count)]
        return AlphabetSpec.build(inputs, ["o"])

    @cached_property
    def enc_letter(self) -> Tuple[frozenset, ...]:
        combos = itertools.combinations(range(self.k), self.k // 2)
        return tuple(frozenset(c) for c in itertools.islice(combos, self.num_letters))

    def letter_mask(self, sigma):
        mask = 0
        for bit in self.enc_letter[sigma]:
            mask |= 1 << bit
        return mask

    def state_mask(self, q):
        return q << self.k

    @property
    def all_state_bits(self):
        return ((1 << self.j_count) - 1) << self.k

    @property
    def all_letter_bits(self):
        return (1 << self.k) - 1

    def decode(self, inputs):
        """``(sigma, q)`` encoded by an input letter, or None for junk."""
        sigma = self._letters_by_mask.get(inputs & self.all_letter_bits)
        q = (inputs & self.all_state_bits) >> self.k
        if sigma is None or q >= self.num_states:
            return None
        return sigma, q

    @cached_property
    def _letters_by_mask(self) -> Dict[int, int]:
        return {self.letter_mask(sigma): sigma for sigma in range(self.num_letters)}

    def encode_letter(self, sigma):
        """Encoded input of one letter: its code plus every state bit."""
        return self.letter_mask(sigma) | self.all_state_bits


@dataclass(frozen=True)
class Decoder:
    """
    How input letters of a generated instance spell words of the original alphabet.

    ``padding`` is set for finite-word families: ``w`` is encoded as the
    letters of ``w`` followed by ``padding^ω``.
    """

    input_spec: AlphabetSpec
    symbols: Tuple[str, ...]
    letters: Tuple[int, ...]
    padding: Optional[int] = None

    @property
    def alphabet(self):
        return SymbolAlphabet(self.symbols)

    def encode(self, word):
        """Encode a finite word (sequence of symbol indices) or a lasso over the symbols."""
        if isinstance(word, LassoWord):
            return word.map(lambda sigma: self.letters[sigma])
        if self.padding is None:
            throw("This family encodes infinite words only", PreconditionError)
        return LassoWord(tuple(self.letters[sigma] for sigma in word), (self.padding,))

    def encode_text(self, text):
        return self.encode([self.symbols.index(ch) for ch in text])


@dataclass
class GeneratedInstance:
    family: str
    system: System
    trace: ObservedTrace
    effect: EffectSpec
    decoder: Decoder
    params: Dict[str, object] = field(default_factory=dict)


def _symbol_names(alphabet):
    if isinstance(alphabet, SymbolAlphabet):
        return alphabet.symbols
    return tuple(alphabet.format_letter(letter) for letter in sorted(alphabet.letters()))


def _check_scale(scheme):
    limit = get_settings().max_encoding_bits
    bits = scheme.k + scheme.j_count
    if bits > limit:
        throw(f"Encoding needs {bits} input bits, the limit is {limit}", PreconditionError)


def _encoded_system(num_states, initial, successors, scheme, labels):
    """
    System with states ``0..n-1`` plus the sink ``top`` (index ``n``).

    ``successors(q, sigma)`` gives the successors of ``q`` on the letter with index ``sigma``.
    """
    n = num_states
    sink = n
    spec = scheme.spec
    delta = []
    for q in range(n):
        row = {}
        for inputs in spec.input_spec().letters():
            decoded = scheme.decode(inputs)
            target = sink
            if decoded is not None:
                sigma, q2 = decoded
                if q2 in successors(q, sigma):
                    target = q2
            row[inputs] = frozenset({target})
        delta.append(row)
    delta.append({inputs: frozenset({sink}) for inputs in spec.input_spec().letters()})
    names = tuple(f"q{q}" for q in range(n)) + ("top",)
    return System(spec, n + 1, initial, tuple(delta), tuple(labels) + (0,), names)


def _recurrence_dbw(spec, when_output):
    """Two-state DBW for "infinitely often o" (``when_output``) or "infinitely often ¬o"."""
    o = spec.bit("o")

    def step(q, letter):
        return [1 if bool(letter & o) == when_output else 0]

    automaton, _ = explore(spec, [0], step, lambda q: q == 1, Branching.DETERMINISTIC, Acceptance.BUCHI, seeds=[1])
    return mark_complete(automaton)


def _empty_trace(system):
    return validate_trace(system, LassoWord((), (0,)))


def gen_complementation_instance(automaton):
    """
    Instance whose cause, decoded, is the complement of an NBW or NCW.

    Co-Büchi inputs label ``Q \\ F`` with ``o`` and use the recurrence effect
    "infinitely often ¬o". Büchi inputs label ``F`` with ``o`` and use the
    persistence effect "eventually always ¬o", which only the oracle checks.
    """
    if automaton.acceptance is Acceptance.FINITE:
        return gen_nfw_instance(automaton)
    if automaton.is_universal:
        throw("Complementation instances need an existential automaton", PreconditionError)
    letters = sorted(automaton.alphabet.letters())
    scheme = EncodingScheme(len(letters), automaton.num_states)
    _check_scale(scheme)
    spec = scheme.spec
    o = spec.bit("o")
    cobuchi = automaton.acceptance is Acceptance.COBUCHI
    labels = [
        o if (q in automaton.accepting) != cobuchi else 0
        for q in range(automaton.num_states)
    ]
    system = _encoded_system(
        automaton.num_states,
        automaton.initial_state,
        lambda q, sigma: automaton.successors(q, letters[sigma]),
        scheme,
        labels,
    )
    if cobuchi:
        effect = EffectSpec(EffectClass.RECURRENCE, _recurrence_dbw(spec, when_output=False))
    else:
        effect = EffectSpec(EffectClass.PERSISTENCE, _recurrence_dbw(spec, when_output=True))
    decoder = Decoder(
        spec.input_spec(),
        _symbol_names(automaton.alphabet),
        tuple(scheme.encode_letter(sigma) for sigma in range(len(letters))),
    )
    log.info("complementation instance: %s states, %s input bits", system.num_states, scheme.k + scheme.j_count)
    return GeneratedInstance(
        "complement-cobuchi" if cobuchi else "complement-buchi",
        system,
        _empty_trace(system),
        effect,
        decoder,
        {"k": scheme.k, "j": scheme.j_count},
    )


def _end_marker_effect(scheme, real_letters, guarantee):
    """
    Three-state prefix DFW reading the label at the first position whose
    letter bits do not encode a real letter.

    Safety: that label carrying ``o`` is a bad prefix. Guarantee: that label
    lacking ``o`` is a good prefix.
    """
    spec = scheme.spec
    o = spec.bit("o")
    codes = {scheme.letter_mask(sigma) for sigma in range(real_letters)}

    def step(q, letter):
        if q != 0:
            return [q]
        if letter & scheme.all_letter_bits in codes:
            return [0]
        return [1 if bool(letter & o) != guarantee else 2]

    automaton, _ = explore(spec, [0], step, lambda q: q == 1, Branching.DETERMINISTIC, Acceptance.FINITE, seeds=[1, 2])
    return mark_complete(automaton)


def gen_nfw_instance(automaton, repr="safety"):
    """
    Instance whose cause, decoded with ``#``-padding, is the complement of an NFW.

    The alphabet gains an end symbol ``#`` on which every state loops, so the
    label read at the first ``#`` is the label of the last state reached.
    """
    if automaton.acceptance is not Acceptance.FINITE or automaton.is_universal:
        throw(f"gen_nfw_instance expects an NFW, got {automaton.kind}", PreconditionError)
    if repr not in ("safety", "guarantee"):
        throw(f"Unknown effect representation '{repr}'", PreconditionError)
    letters = sorted(automaton.alphabet.letters())
    m = len(letters)
    scheme = EncodingScheme(m + 1, automaton.num_states)
    _check_scale(scheme)
    spec = scheme.spec
    o = spec.bit("o")

    labels = [o if q in automaton.accepting else 0 for q in range(automaton.num_states)]

    def successors(q, sigma):
        return frozenset({q}) if sigma == m else automaton.successors(q, letters[sigma])

    system = _encoded_system(automaton.num_states, automaton.initial_state, successors, scheme, labels)
    guarantee = repr == "guarantee"
    effect = EffectSpec(
        EffectClass.GUARANTEE if guarantee else EffectClass.SAFETY,
        _end_marker_effect(scheme, m, guarantee),
    )
    decoder = Decoder(
        spec.input_spec(),
        _symbol_names(automaton.alphabet),
        tuple(scheme.encode_letter(sigma) for sigma in range(m)),
        padding=scheme.encode_letter(m),
    )
    log.info("NFW instance: %s states, %s input bits", system.num_states, scheme.k + scheme.j_count)
    return GeneratedInstance(
        f"nfw-{repr}",
        system,
        _empty_trace(system),
        effect,
        decoder,
        {"k": scheme.k, "j": scheme.j_count, "repr": repr},
    )


def _padding_accepted(effect_class, cause, q, padding):
    """Whether ``padding^ω`` read from ``q`` lies in the cause."""
    seen = set()
    visited_accepting = False
    while q not in seen:
        seen.add(q)
        visited_accepting = visited_accepting or q in cause.accepting
        q = cause.step(q, padding)
    if effect_class is EffectClass.SAFETY:
        return not visited_accepting
    return visited_accepting


def decode_cause(instance, cause):
    """
    Read a cause back over the original alphabet.

    Transitions follow the encoded letters. For finite-word families a state
    accepts iff the cause accepts the padding from it; otherwise the cause's
    own acceptance is kept.
    """
    decoder = instance.decoder
    alphabet = decoder.alphabet
    delta = tuple(
        {sigma: frozenset({cause.step(q, code)}) for sigma, code in enumerate(decoder.letters)}
        for q in range(cause.num_states)
    )
    if decoder.padding is None:
        accepting, acceptance = cause.accepting, cause.acceptance
    else:
        effect_class = instance.effect.effect_class
        accepting = frozenset(
            q for q in range(cause.num_states) if _padding_accepted(effect_class, cause, q, decoder.padding)
        )
        acceptance = Acceptance.FINITE
    return Automaton(
        alphabet=alphabet,
        num_states=cause.num_states,
        initial=cause.initial,
        accepting=accepting,
        delta=delta,
        branching=Branching.DETERMINISTIC,
        acceptance=acceptance,
        complete=True,
    )
