# Copyright (c) 2026, Erick W.R. and contributors
# For license information, please see license.txt

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict

import pandas as pd

from tempcause.automata.automaton import Acceptance, Automaton
from tempcause.automata.emptiness import (
    as_buchi,
    complement_dbw_to_nbw,
    membership_lasso,
    visits_accepting,
)
from tempcause.automata.operations import accepting_is_absorbing, make_accepting_absorbing
from tempcause.exceptions import ClassMismatch, PreconditionError, throw


class EffectClass(Enum):
    RECURRENCE = "recurrence"
    SAFETY = "safety"
    GUARANTEE = "guarantee"
    # Only the oracle understands persistence effects; the automaton is a DBW
    # for the negated (recurrence) property.
    PERSISTENCE = "persistence"

    @property
    def is_prefix_class(self):
        return self in (EffectClass.SAFETY, EffectClass.GUARANTEE)


@dataclass(frozen=True)
class EffectSpec:
    """
    An effect property and the automaton representing it.

    * recurrence: a complete DBW for the effect.
    * safety: a complete DFW accepting the bad prefixes.
    * guarantee: a complete DFW accepting the good prefixes.
    * persistence: a complete DBW for the negation of the effect.
    """

    effect_class: EffectClass
    automaton: Automaton

    def __post_init__(self):
        effect_class = EffectClass(self.effect_class)
        object.__setattr__(self, "effect_class", effect_class)
        automaton = self.automaton
        expected = Acceptance.FINITE if effect_class.is_prefix_class else Acceptance.BUCHI
        if not automaton.is_deterministic or automaton.acceptance is not expected:
            throw(
                f"A {effect_class.value} effect needs a {'DFW' if expected is Acceptance.FINITE else 'DBW'}, got {automaton.kind}",
                ClassMismatch,
            )
        if not automaton.check_complete():
            throw(f"The {effect_class.value} effect automaton must be complete", PreconditionError)
        if effect_class.is_prefix_class and not accepting_is_absorbing(automaton):
            throw(
                f"The {effect_class.value} prefix automaton must have absorbing accepting states",
                PreconditionError,
            )

    @classmethod
    def load(cls, effect_class, automaton):
        """Build an effect, normalizing prefix automata to absorbing form first."""
        effect_class = EffectClass(effect_class)
        if effect_class.is_prefix_class and automaton.acceptance is Acceptance.FINITE:
            automaton = make_accepting_absorbing(automaton)
        return cls(effect_class, automaton)

    @property
    def spec(self):
        return self.automaton.alphabet

    def as_buchi(self):
        """Büchi automaton for the effect itself."""
        a = self.automaton
        everything = set(range(a.num_states))
        if self.effect_class is EffectClass.RECURRENCE:
            return a
        if self.effect_class is EffectClass.SAFETY:
            return as_buchi(a, everything - a.accepting)
        if self.effect_class is EffectClass.GUARANTEE:
            return as_buchi(a)
        return complement_dbw_to_nbw(a)

    def negation_as_buchi(self):
        """Büchi automaton for the complement of the effect."""
        a = self.automaton
        everything = set(range(a.num_states))
        if self.effect_class is EffectClass.RECURRENCE:
            return complement_dbw_to_nbw(a)
        if self.effect_class is EffectClass.SAFETY:
            # bad prefixes are absorbing, so reaching one means staying there
            return as_buchi(a)
        if self.effect_class is EffectClass.GUARANTEE:
            return as_buchi(a, everything - a.accepting)
        return a

    def complement(self):
        """The negated effect, over the same automaton."""
        swap = {
            EffectClass.RECURRENCE: EffectClass.PERSISTENCE,
            EffectClass.PERSISTENCE: EffectClass.RECURRENCE,
            EffectClass.SAFETY: EffectClass.GUARANTEE,
            EffectClass.GUARANTEE: EffectClass.SAFETY,
        }
        return EffectSpec(swap[self.effect_class], self.automaton)


def cause_accepts(effect_class, cause, rho):
    """Membership of an input lasso in the ω-language a cause automaton stands for."""
    effect_class = EffectClass(effect_class)
    if effect_class is EffectClass.SAFETY:
        return not visits_accepting(cause, rho)
    if effect_class is EffectClass.GUARANTEE:
        return visits_accepting(cause, rho)
    return membership_lasso(cause, rho)


@dataclass
class CauseResult:
    effect_class: EffectClass
    cause: Automaton
    exists: bool
    sat_holds: bool
    stats: Dict[str, int] = field(default_factory=dict)
    bounds: Dict[str, int] = field(default_factory=dict)
    exact_prefixes: bool = True

    def accepts(self, rho):
        return cause_accepts(self.effect_class, self.cause, rho)

    def to_frame(self):
        """Stage sizes next to their theoretical bounds."""
        return pd.DataFrame(
            [
                {"stage": stage, "states": count, "bound": self.bounds.get(stage)}
                for stage, count in self.stats.items()
            ],
            columns=["stage", "states", "bound"],
        )

    def report_lines(self):
        lines = [f"{stage}={count}" for stage, count in self.stats.items()]
        lines.append(f"exists={str(self.exists).lower()}")
        lines.append(f"sat_holds={str(self.sat_holds).lower()}")
        return lines
