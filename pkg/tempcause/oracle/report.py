# Copyright (c) 2026, Erick W.R. and contributors
# For license information, please see license.txt

import itertools
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import pandas as pd

from tempcause.automata.alphabet import LassoWord
from tempcause.automata.emptiness import accepts_word
from tempcause.config import get_settings
from tempcause.exceptions import ClassMismatch, throw
from tempcause.oracle.preimage import (
    enumerate_lassos,
    existential_preimage_membership,
    universal_preimage_membership,
)
from tempcause.synthesis.effects import EffectClass, cause_accepts
from tempcause.system.model import ObservedTrace
from tempcause.system.similarity import at_least_as_similar, similar_letters
from tempcause.utils.concurrent import ThreadPoolExecutorWithContext
from tempcause.utils.logger import logger

log = logger("oracle")


@dataclass
class OracleReport:
    instance_id: str
    stem_max: int
    loop_max: int
    verdicts: List[Tuple[LassoWord, bool, Optional[bool]]] = field(default_factory=list)

    @property
    def checked(self):
        return len(self.verdicts)

    @property
    def disagreements(self):
        return [(rho, oracle, cause) for rho, oracle, cause in self.verdicts if cause is not None and oracle != cause]

    @property
    def agrees(self):
        return not self.disagreements

    def summary(self):
        return f"checked={self.checked} agree={self.checked - len(self.disagreements)}"

    def to_text(self, alphabet):
        """One line per disagreement followed by the summary line."""
        lines = []
        for rho, oracle, cause in self.disagreements:
            lines.append(
                f"disagree {format_lasso(alphabet, rho)} oracle={str(oracle).lower()} cause={str(cause).lower()}"
            )
        lines.append(self.summary())
        return "\n".join(lines) + "\n"

    def to_frame(self, alphabet=None):
        rows = [
            {
                "lasso": format_lasso(alphabet, rho) if alphabet else rho,
                "oracle": oracle,
                "cause": cause,
            }
            for rho, oracle, cause in self.verdicts
        ]
        return pd.DataFrame(rows, columns=["lasso", "oracle", "cause"])


def format_lasso(alphabet, word):
    stem = " ".join(alphabet.format_letter(letter) for letter in word.stem)
    loop = " ".join(alphabet.format_letter(letter) for letter in word.loop)
    return f"{stem} | {loop}".strip()


def _evaluate(system, pi, effect, cause, rho):
    oracle = universal_preimage_membership(system, pi, effect, rho)
    verdict = cause_accepts(effect.effect_class, cause, rho) if cause is not None else None
    return rho, oracle, verdict


def differential_test(system, pi, effect, cause=None, stem_max=3, loop_max=2, instance_id="instance", workers=None):
    """
    Compare a cause automaton against the universal-preimage oracle on every
    enumerated input lasso.

    Args:
        cause (Automaton, optional): Synthesized cause. Without one only the
            oracle verdicts are recorded.
        workers (int, optional): Worker threads; defaults to the active settings.

    Returns:
        OracleReport: Verdicts in enumeration order.
    """
    if cause is not None and effect.effect_class is EffectClass.PERSISTENCE:
        throw("Persistence effects have no cause automaton to compare", ClassMismatch)
    workers = workers or get_settings().workers
    lassos = list(enumerate_lassos(system.spec.input_spec(), stem_max, loop_max))

    def check(rho):
        return _evaluate(system, pi, effect, cause, rho)

    if workers > 1:
        with ThreadPoolExecutorWithContext(max_workers=workers) as executor:
            verdicts = executor.map_ordered(check, lassos)
    else:
        verdicts = [check(rho) for rho in lassos]

    report = OracleReport(instance_id, stem_max, loop_max, verdicts)
    log.info("%s: %s", instance_id, report.summary())
    for rho, oracle, verdict in report.disagreements:
        log.debug("%s: disagreement on %s (oracle=%s, cause=%s)", instance_id, rho, oracle, verdict)
    return report


def downward_closure_violations(system, pi, verdicts, depth=4):
    """
    Pairs ``(ρ, ρ′)`` with ``ρ′ ≤_π ρ`` where ``ρ`` is accepted and ``ρ′`` is not.

    Rejected lassos are bucketed by their first ``depth`` letters, so each
    accepted ``ρ`` is only compared with lassos whose prefix already lies in
    its similarity interval.

    Args:
        verdicts (dict): Lasso to membership verdict.
        depth (int): Prefix length used for bucketing.
    """
    word = pi.word if isinstance(pi, ObservedTrace) else pi
    spec = system.spec
    rejected = {}
    for rho, ok in verdicts.items():
        if not ok:
            rejected.setdefault(rho.prefix(depth), []).append(rho)
    violations = []
    for rho, ok in verdicts.items():
        if not ok:
            continue
        intervals = [sorted(similar_letters(spec, word.letter(t), rho.letter(t))) for t in range(depth)]
        for prefix in itertools.product(*intervals):
            for rho2 in rejected.get(prefix, ()):
                if at_least_as_similar(spec, word, rho2, rho):
                    violations.append((rho, rho2))
    return violations


def duality_violations(system, pi, effect, lassos):
    """Lassos where existential(E) differs from the negated universal check of ¬E."""
    negated = effect.complement()
    violations = []
    for rho in lassos:
        existential = existential_preimage_membership(system, pi, effect, rho)
        if existential == universal_preimage_membership(system, pi, negated, rho):
            violations.append(rho)
    if violations:
        log.warning("duality check failed on %s lassos", len(violations))
    return violations


def compare_prefix_modes(exact, certified, max_len=4):
    """
    Finite input words on which two good-prefix DFWs disagree.

    Used to compare the guarantee pipeline with and without the
    forced-acceptance closure; the result lists ``(word, exact, certified)``.
    """
    letters = list(exact.alphabet.letters())
    differences = []
    for length in range(max_len + 1):
        for word in itertools.product(letters, repeat=length):
            a, b = accepts_word(exact, word), accepts_word(certified, word)
            if a != b:
                differences.append((word, a, b))
    if differences:
        log.info("prefix modes differ on %s words up to length %s", len(differences), max_len)
    return differences
