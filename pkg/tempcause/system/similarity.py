# Copyright (c) 2026, Erick W.R. and contributors
# For license information, please see license.txt

"""
The subset similarity relation between input sequences.

``σ ≤_π ρ`` holds when at every position each input on which ``σ`` deviates
from ``π`` is also one on which ``ρ`` deviates. The relation is a conjunction
of per-position constraints, so it is evaluated letter by letter.
"""

from functools import lru_cache

from tempcause.automata.alphabet import AlphabetSpec, LassoWord, align
from tempcause.automata.automaton import Acceptance, Automaton, Branching
from tempcause.automata.emptiness import is_empty_buchi
from tempcause.automata.operations import product
from tempcause.exceptions import PreconditionError, throw
from tempcause.system.model import system_as_safety_automaton


def _submasks(mask):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@lru_cache(maxsize=None)
def similar_letters(spec: AlphabetSpec, obs: int, cand: int):
    """
    Input letters ``c`` with ``obs ∩ cand ⊆ c ⊆ obs ∪ cand`` on the inputs.

    Args:
        spec (AlphabetSpec): Alphabet of ``obs``.
        obs (int): Observed letter over ``spec``.
        cand (int): Candidate input letter over ``spec.input_spec()``.

    Returns:
        frozenset: Input letters over ``spec.input_spec()``.
    """
    observed = spec.project_inputs(obs)
    low, high = observed & cand, observed | cand
    return frozenset(low | sub for sub in _submasks(high & ~low))


def at_least_as_similar(spec, pi: LassoWord, closer: LassoWord, farther: LassoWord):
    """``closer ≤_pi farther`` for input words ``closer`` and ``farther``."""
    pi, closer, farther = align(pi, closer, farther)
    return all(
        closer.letter(t) in similar_letters(spec, pi.letter(t), farther.letter(t))
        for t in range(pi.span)
    )


def envelope_automaton(spec, pi: LassoWord, rho: LassoWord):
    """
    DBW over ``2^AP`` accepting ``{σ : σ ≤_pi rho}``.

    Only inputs are constrained; outputs are free. States are the positions of
    the aligned pair ``(pi, rho)``, so there are ``|stem| + lcm`` of them.
    """
    pi, rho = align(pi, rho)
    outputs = spec.output_letters()
    delta = []
    for p in range(pi.span):
        target = frozenset({pi.next_position(p)})
        row = {}
        for inputs in similar_letters(spec, pi.letter(p), rho.letter(p)):
            embedded = spec.embed_inputs(inputs)
            for out in outputs:
                row[embedded | out] = target
        delta.append(row)
    return Automaton(
        alphabet=spec,
        num_states=pi.span,
        initial=frozenset({0}),
        accepting=frozenset(range(pi.span)),
        delta=tuple(delta),
        branching=Branching.DETERMINISTIC,
        acceptance=Acceptance.BUCHI,
    )


def lower_set_meets(system, pi: LassoWord, rho: LassoWord, language):
    """
    True iff some trace ``σ`` of ``system`` with ``σ ≤_pi rho`` lies in ``language``.

    ``language`` is an NBW or DBW over ``2^AP``; the check is the emptiness of
    the envelope, the system and ``language`` intersected.
    """
    if language.acceptance is not Acceptance.BUCHI:
        throw(f"Expected a Büchi automaton, got {language.kind}", PreconditionError)
    envelope = envelope_automaton(system.spec, pi, rho)
    traces = product(envelope, system_as_safety_automaton(system))
    empty, _ = is_empty_buchi(product(traces, language))
    return not empty


def zip_spec(spec: AlphabetSpec, copies=3):
    """Alphabet of zipped words: every proposition ``p`` becomes ``p^0 .. p^(copies-1)``."""
    inputs, outputs = [], []
    for k in range(copies):
        inputs += [f"{name}^{k}" for name in spec.aps if name in spec.inputs]
        outputs += [f"{name}^{k}" for name in spec.aps if name in spec.outputs]
    return AlphabetSpec.build(inputs, outputs)


def zip3(spec, a: LassoWord, b: LassoWord, c: LassoWord):
    """
    Position-wise disjoint union of three words over ``spec``.

    Returns:
        tuple: ``(zipped_spec, zipped_word)``.
    """
    zipped = zip_spec(spec)
    a, b, c = align(a, b, c)

    def tagged(letter, k):
        return zipped.mask(f"{name}^{k}" for name in spec.names(letter))

    def letter(t):
        return tagged(a.letter(t), 0) | tagged(b.letter(t), 1) | tagged(c.letter(t), 2)

    word = LassoWord(
        tuple(letter(t) for t in range(len(a.stem))),
        tuple(letter(t) for t in range(len(a.stem), a.span)),
    )
    return zipped, word


def unzip(spec, zipped, word: LassoWord, k):
    """Projection of a zipped word onto copy ``k``."""
    suffix = f"^{k}"

    def project(letter):
        return spec.mask(name[: -len(suffix)] for name in zipped.names(letter) if name.endswith(suffix))

    return word.map(project)
