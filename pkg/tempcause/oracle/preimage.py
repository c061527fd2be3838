# Copyright (c) 2026, Erick W.R. and contributors
# For license information, please see license.txt

"""
Brute-force preimage checks.

These use only envelopes, products and Büchi emptiness, never the
determinization steps of the synthesis pipelines, so they serve as an
independent reference for the synthesized causes.
"""

import itertools

from tempcause.automata.alphabet import LassoWord
from tempcause.exceptions import ValidationError, throw
from tempcause.system.model import ObservedTrace
from tempcause.system.similarity import lower_set_meets


def _word(pi):
    return pi.word if isinstance(pi, ObservedTrace) else pi


def universal_preimage_membership(system, pi, effect, rho):
    """Every trace ``σ`` of ``system`` with ``σ ≤_pi rho`` satisfies the effect."""
    return not lower_set_meets(system, _word(pi), rho, effect.negation_as_buchi())


def existential_preimage_membership(system, pi, effect, rho):
    """Some trace ``σ`` of ``system`` with ``σ ≤_pi rho`` satisfies the effect."""
    return lower_set_meets(system, _word(pi), rho, effect.as_buchi())


def enumerate_lassos(alphabet, stem_max, loop_max):
    """
    Every lasso with ``|stem| ≤ stem_max`` and ``1 ≤ |loop| ≤ loop_max``.

    Shorter stems come first, then shorter loops; letters are in increasing
    order within each length. Words with several lasso spellings appear once
    per spelling.
    """
    if stem_max < 0 or loop_max < 1:
        throw("Lasso bounds need stem_max >= 0 and loop_max >= 1", ValidationError)
    letters = list(alphabet.letters())
    for stem_len in range(stem_max + 1):
        for loop_len in range(1, loop_max + 1):
            for stem in itertools.product(letters, repeat=stem_len):
                for loop in itertools.product(letters, repeat=loop_len):
                    yield LassoWord(stem, loop)
