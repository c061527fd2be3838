# Copyright (c) 2026, Erick W.R. and Contributors
# See license.txt

import unittest

from tempcause.automata.alphabet import AlphabetSpec, LassoWord
from tempcause.exceptions import ClassMismatch, ValidationError
from tempcause.oracle.preimage import (
    enumerate_lassos,
    existential_preimage_membership,
    universal_preimage_membership,
)
from tempcause.oracle.report import (
    compare_prefix_modes,
    differential_test,
    downward_closure_violations,
    duality_violations,
)
from tempcause.synthesis.effects import EffectClass, EffectSpec
from tempcause.synthesis.pipelines import synthesize_guarantee, synthesize_recurrence
from tempcause.tests.utils import eventually, load_automaton, load_system, load_trace, two_step_system


class TestEnumeration(unittest.TestCase):
    """Test cases for lasso enumeration"""

    def test_counts(self):
        """Test the number of lassos for small bounds"""
        spec = AlphabetSpec.build(["i"], [])
        self.assertEqual(len(list(enumerate_lassos(spec, 0, 1))), 2)
        self.assertEqual(len(list(enumerate_lassos(spec, 0, 2))), 6)
        self.assertEqual(len(list(enumerate_lassos(spec, 1, 1))), 6)

    def test_order(self):
        """Test that shorter stems come first"""
        spec = AlphabetSpec.build(["i"], [])
        lassos = list(enumerate_lassos(spec, 1, 1))
        self.assertEqual(lassos[0], LassoWord((), (0,)))
        self.assertEqual(lassos[-1], LassoWord((1,), (1,)))

    def test_bad_bounds(self):
        """Test that an empty loop bound is refused"""
        spec = AlphabetSpec.build(["i"], [])
        with self.assertRaises(ValidationError):
            list(enumerate_lassos(spec, 1, 0))


class TestPreimage(unittest.TestCase):
    """Test cases for the brute-force preimage checks"""

    def setUp(self):
        self.system = load_system("branching_system.txt")
        self.spec = self.system.spec
        self.pi = load_trace("trace_direct.txt", self.spec)
        self.effect = EffectSpec(EffectClass.RECURRENCE, load_automaton("effect_infinitely_often_o.txt"))
        self.i = self.spec.mask(["i"])

    def test_direct_trace(self):
        """Test the universal check on two inputs"""
        i = self.i
        self.assertTrue(universal_preimage_membership(self.system, self.pi, self.effect, LassoWord((i, i), (0,))))
        self.assertFalse(universal_preimage_membership(self.system, self.pi, self.effect, LassoWord((i,), (0,))))

    def test_existential_contains_the_observed_trace(self):
        """Test that the existential check holds whenever the observed trace satisfies the effect"""
        for rho in enumerate_lassos(self.spec.input_spec(), 2, 2):
            self.assertTrue(existential_preimage_membership(self.system, self.pi, self.effect, rho))

    def test_unrolling_keeps_verdicts(self):
        """Test that rewriting a lasso does not change the verdict"""
        for rho in enumerate_lassos(self.spec.input_spec(), 2, 2):
            verdict = universal_preimage_membership(self.system, self.pi, self.effect, rho)
            self.assertEqual(universal_preimage_membership(self.system, self.pi, self.effect, rho.unroll(3)), verdict)
            longer = rho.reshape(len(rho.stem) + 1, 2 * len(rho.loop))
            self.assertEqual(universal_preimage_membership(self.system, self.pi, self.effect, longer), verdict)

    def test_duality(self):
        """Test that existential E is the negated universal check of not E"""
        lassos = list(enumerate_lassos(self.spec.input_spec(), 2, 2))
        effects = [
            self.effect,
            EffectSpec(EffectClass.SAFETY, eventually(self.spec, "o")),
            EffectSpec(EffectClass.GUARANTEE, eventually(self.spec, "o")),
        ]
        for effect in effects:
            self.assertEqual(duality_violations(self.system, self.pi, effect, lassos), [])

    def test_downward_closed(self):
        """Test that inputs closer to the trace inherit acceptance"""
        lassos = list(enumerate_lassos(self.spec.input_spec(), 2, 2))
        verdicts = {rho: universal_preimage_membership(self.system, self.pi, self.effect, rho) for rho in lassos}
        self.assertTrue(any(verdicts.values()))
        self.assertEqual(downward_closure_violations(self.system, self.pi, verdicts), [])

    def test_downward_closure_violation_found(self):
        """Test that rejecting a word closer than an accepted one is reported"""
        i = self.i
        farther, own, unrelated = LassoWord((), (i,)), LassoWord((i, i), (0,)), LassoWord((), (0,))
        verdicts = {farther: True, own: False, unrelated: False}
        self.assertEqual(downward_closure_violations(self.system, self.pi, verdicts), [(farther, own)])
        verdicts[own] = True
        self.assertEqual(downward_closure_violations(self.system, self.pi, verdicts), [])


class TestDifferential(unittest.TestCase):
    """Test cases for differential testing against the oracle"""

    def setUp(self):
        self.system = load_system("branching_system.txt")
        self.spec = self.system.spec
        self.pi = load_trace("trace_direct.txt", self.spec)
        self.effect = EffectSpec(EffectClass.RECURRENCE, load_automaton("effect_infinitely_often_o.txt"))

    def test_synthesized_cause_agrees(self):
        """Test that the synthesized cause agrees on every lasso"""
        cause = synthesize_recurrence(self.system, self.pi, self.effect).cause
        report = differential_test(self.system, self.pi, self.effect, cause)
        self.assertEqual(report.checked, 15 * 6)
        self.assertTrue(report.agrees)
        self.assertEqual(report.summary(), "checked=90 agree=90")
        self.assertEqual(len(report.to_frame(self.spec.input_spec())), 90)

    def test_mutated_cause_disagrees(self):
        """Test that a cause for another trace is caught"""
        wrong = load_automaton("cause_eventually_i_i.txt")
        report = differential_test(self.system, self.pi, self.effect, wrong)
        self.assertFalse(report.agrees)
        i = self.spec.mask(["i"])
        self.assertIn(LassoWord((0, i, i), (0,)), [rho for rho, _, _ in report.disagreements])
        text = report.to_text(self.spec.input_spec())
        self.assertIn("disagree {} {i} {i} | {} oracle=false cause=true", text)

    def test_workers_keep_order(self):
        """Test that threaded evaluation returns the same verdicts"""
        cause = synthesize_recurrence(self.system, self.pi, self.effect).cause
        serial = differential_test(self.system, self.pi, self.effect, cause, stem_max=2, workers=1)
        threaded = differential_test(self.system, self.pi, self.effect, cause, stem_max=2, workers=3)
        self.assertEqual(serial.verdicts, threaded.verdicts)

    def test_oracle_only(self):
        """Test that a run without a cause records oracle verdicts only"""
        report = differential_test(self.system, self.pi, self.effect, stem_max=1, loop_max=1)
        self.assertTrue(report.agrees)
        self.assertTrue(all(cause is None for _, _, cause in report.verdicts))

    def test_persistence_has_no_cause(self):
        """Test that comparing a cause for a persistence effect is refused"""
        with self.assertRaises(ClassMismatch):
            differential_test(self.system, self.pi, self.effect.complement(), self.effect.automaton)


class TestPrefixModes(unittest.TestCase):
    """Test cases for comparing exact and certified good prefixes"""

    def test_inevitable_effect(self):
        """Test that only the exact mode accepts short prefixes of an inevitable effect"""
        spec = AlphabetSpec.build(["i"], ["o"])
        o = spec.mask(["o"])
        system = two_step_system(spec)
        pi = LassoWord((0, o), (o,))
        effect = EffectSpec(EffectClass.GUARANTEE, eventually(spec, "o"))
        exact = synthesize_guarantee(system, pi, effect, exact_prefixes=True).cause
        certified = synthesize_guarantee(system, pi, effect, exact_prefixes=False).cause
        differences = compare_prefix_modes(exact, certified, max_len=3)
        self.assertIn(((), True, False), differences)
        self.assertTrue(all(len(word) < 2 for word, _, _ in differences))
        self.assertEqual(compare_prefix_modes(exact, exact), [])
