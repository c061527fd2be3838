# Copyright (c) 2026, Erick W.R. and contributors
# For license information, please see license.txt

"""
Block-coverage words over ``{0, 1, #}`` in which every binary block of
length ``n`` occurs at a position divisible by ``n``.

The effect is a union of three events over ``I = {i0, i1, i#, i*}`` and
``O = {o}``:

* a position where no input holds;
* an output that differs from the output ``n`` steps later;
* a block starting at a multiple of ``n``, ending before the first ``i*``,
  whose every position holds a binary digit equal to the output.

Encoded words pad with ``{i*}^ω``; an output sequence that never changes
across ``n`` steps repeats a pattern of length ``n``, and the last event
demands that pattern among the blocks.
"""

import itertools

from tempcause.automata.alphabet import AlphabetSpec, LassoWord
from tempcause.automata.automaton import Acceptance, Branching, explore
from tempcause.automata.operations import mark_complete
from tempcause.config import get_settings
from tempcause.exceptions import PreconditionError, throw
from tempcause.generators.encoding import Decoder, GeneratedInstance
from tempcause.synthesis.effects import EffectClass, EffectSpec
from tempcause.system.model import trivial_system, validate_trace
from tempcause.utils.logger import logger

log = logger("generators")

SYMBOLS = ("0", "1", "#")
LN_SPEC = AlphabetSpec.build(["i0", "i1", "i#", "i*"], ["o"])

_GOOD = "good"
_BAD = "bad"
_SAFE = "safe"


def ln_membership_bruteforce(n, sigma):
    """Whether every binary block of length ``n`` occurs in ``sigma`` at a multiple of ``n``."""
    blocks = {sigma[k : k + n] for k in range(0, len(sigma) - n + 1, n)}
    return all("".join(bits) in blocks for bits in itertools.product("01", repeat=n))


def ln_effect_automaton(n, repr="safety"):
    """
    Prefix DFW for the block-coverage effect.

    ``repr="safety"`` accepts the bad prefixes of the safety variant, where
    reaching ``i*`` before any of the three events is bad.
    ``repr="guarantee"`` accepts the good prefixes of the union of the three
    events. Both variants give the same cause on encoded words. The safety one
    stops at the first ``i*``, which keeps synthesis tractable at n = 3.

    States track the phase inside the current block, the last ``n`` outputs,
    whether the current block still matches, and (guarantee only) whether
    ``i*`` has been seen.
    """
    spec = LN_SPEC
    i0, i1, i_star, o_bit = spec.bit("i0"), spec.bit("i1"), spec.bit("i*"), spec.bit("o")
    safety = repr == "safety"
    done = _BAD if safety else _GOOD
    escape = _SAFE if safety else _GOOD

    def step(key, letter):
        if key in (_GOOD, _BAD, _SAFE):
            return [key]
        phase, hist, ok, dead = key
        o = bool(letter & o_bit)
        if not letter & spec.input_mask:
            return [escape]
        if len(hist) == n and hist[0] != o:
            return [escape]
        hist = (hist + (o,))[-n:]
        if not dead:
            if letter & i_star:
                if safety:
                    return [_BAD]
                return [(0, hist, False, True)]
            digit = bool(letter & i1) if o else bool(letter & i0)
            ok = (ok or phase == 0) and digit
            if ok and phase == n - 1:
                return [escape]
            return [((phase + 1) % n, hist, ok, False)]
        return [(0, hist, False, True)]

    automaton, _ = explore(
        spec,
        [(0, (), False, False)],
        step,
        lambda key: key == done,
        Branching.DETERMINISTIC,
        Acceptance.FINITE,
    )
    return mark_complete(automaton)


def ln_decoder():
    spec = LN_SPEC.input_spec()
    return Decoder(
        spec,
        SYMBOLS,
        tuple(spec.mask([name]) for name in ("i0", "i1", "i#")),
        padding=spec.mask(["i*"]),
    )


def encode_word(sigma):
    """Encoding of a word over ``{0,1,#}`` as an input lasso padded with ``{i*}^ω``."""
    return ln_decoder().encode_text(sigma)


def gen_ln_instance(n, repr="safety"):
    """Trivial system, the all-empty trace and the block-coverage effect in the requested representation."""
    limit = get_settings().ln_max_n
    if not 1 <= n <= limit:
        throw(f"n must lie in 1..{limit}, got {n}", PreconditionError)
    if repr not in ("safety", "guarantee"):
        throw(f"Unknown effect representation '{repr}'", PreconditionError)
    system = trivial_system(LN_SPEC)
    trace = validate_trace(system, LassoWord((), (0,)))
    effect_class = EffectClass.SAFETY if repr == "safety" else EffectClass.GUARANTEE
    effect = EffectSpec(effect_class, ln_effect_automaton(n, repr))
    log.info("block-coverage n=%s: effect has %s states", n, effect.automaton.num_states)
    return GeneratedInstance(f"ln-{repr}", system, trace, effect, ln_decoder(), {"n": n, "repr": repr})
