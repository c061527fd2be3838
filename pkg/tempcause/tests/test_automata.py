# Copyright (c) 2026, Erick W.R. and Contributors
# See license.txt

import unittest
from dataclasses import replace

from tempcause.automata.alphabet import AlphabetSpec
from tempcause.automata.automaton import Acceptance, Automaton, Branching
from tempcause.automata.determinize import determinize_nfw, determinize_ufw
from tempcause.automata.emptiness import accepts_word, equivalent_dfw
from tempcause.automata.operations import (
    Compose,
    accepting_is_absorbing,
    complement_dfw,
    complete,
    make_accepting_absorbing,
    product,
    relabel,
    trim,
)
from tempcause.exceptions import InvariantError, PreconditionError
from tempcause.generators.sampling import random_automaton, random_dfw
from tempcause.tests.utils import all_words, brute_finite_accepts, rng

A = AlphabetSpec.build(["a"], [])
AB = AlphabetSpec.build(["a", "b"], [])
EVERY = frozenset({0})


def dfw(alphabet, delta, accepting, initial=0):
    return Automaton(
        alphabet,
        len(delta),
        frozenset({initial}),
        frozenset(accepting),
        tuple({letter: frozenset({t}) for letter, t in row.items()} for row in delta),
        Branching.DETERMINISTIC,
        Acceptance.FINITE,
    )


def contains(alphabet, name):
    """Complete DFW for "some letter contains ``name``"."""
    bit = alphabet.bit(name)
    letters = list(alphabet.letters())
    return complete(
        dfw(
            alphabet,
            [{l: (1 if l & bit else 0) for l in letters}, {l: 1 for l in letters}],
            {1},
        )
    )


class TestAutomaton(unittest.TestCase):
    """Test cases for the automaton value type"""

    def test_deterministic_needs_single_initial_state(self):
        """Test the determinism invariants"""
        with self.assertRaises(InvariantError):
            Automaton(A, 2, frozenset({0, 1}), frozenset(), ({}, {}), Branching.DETERMINISTIC)
        with self.assertRaises(InvariantError):
            Automaton(A, 2, frozenset({0}), frozenset(), ({1: frozenset({0, 1})}, {}), Branching.DETERMINISTIC)

    def test_endpoints_in_range(self):
        """Test that transitions to unknown states are rejected"""
        with self.assertRaises(InvariantError):
            Automaton(A, 1, frozenset({0}), frozenset(), ({1: frozenset({3})},))

    def test_kind_tags(self):
        """Test the kind tag of each branching/acceptance combination"""
        a = dfw(A, [{0: 0, 1: 0}], {0})
        self.assertEqual(a.kind, "DFW")
        self.assertEqual(replace(a, acceptance=Acceptance.BUCHI).kind, "DBW")
        self.assertEqual(replace(a, branching=Branching.UNIVERSAL, acceptance=Acceptance.COBUCHI).kind, "UCW")


class TestComplete(unittest.TestCase):
    """Test cases for completion"""

    def test_adds_rejecting_sink(self):
        """Test that a DFW without transitions gains a non-accepting sink"""
        a = dfw(A, [{}], set())
        completed = complete(a)
        self.assertEqual(completed.num_states, 2)
        self.assertTrue(completed.complete)
        self.assertNotIn(1, completed.accepting)
        for word in all_words([0, 1], 6):
            self.assertFalse(accepts_word(completed, word))

    def test_idempotent_on_complete_input(self):
        """Test that a complete automaton is only flagged"""
        a = dfw(A, [{0: 0, 1: 0}], {0})
        self.assertEqual(complete(a), replace(a, complete=True))

    def test_universal_is_unchanged(self):
        """Test that missing universal transitions are left as dying branches"""
        a = Automaton(A, 1, EVERY, EVERY, ({1: EVERY},), Branching.UNIVERSAL)
        self.assertIs(complete(a), a)

    def test_cobuchi_sink_is_rejecting(self):
        """Test that the co-Büchi sink is put in the accepting set so it rejects"""
        a = Automaton(A, 1, EVERY, frozenset(), ({1: EVERY},), Branching.NONDETERMINISTIC, Acceptance.COBUCHI)
        self.assertIn(1, complete(a).accepting)

    def test_random_nfw_language_preserved(self):
        """Test that completion keeps the language of random NFWs"""
        random = rng(1)
        for _ in range(30):
            a = random_automaton(random, A, 4, Branching.NONDETERMINISTIC, Acceptance.FINITE)
            completed = complete(a)
            for word in all_words([0, 1], 6):
                self.assertEqual(accepts_word(completed, word), brute_finite_accepts(a, word))


class TestDeterminizeNfw(unittest.TestCase):
    """Test cases for the NFW subset construction"""

    def test_dfw_input(self):
        """Test that a DFW stays language-equal and grows by at most a sink"""
        a = complete(dfw(A, [{1: 1}, {0: 0}], {1}))
        det = determinize_nfw(a)
        self.assertLessEqual(det.num_states, a.num_states + 1)
        self.assertTrue(equivalent_dfw(a, det))

    def test_ends_with_a(self):
        """Test the two-state NFW for words ending in {a}"""
        a = Automaton(
            A, 2, EVERY, frozenset({1}), ({0: EVERY, 1: frozenset({0, 1})}, {}), Branching.NONDETERMINISTIC
        )
        det = determinize_nfw(a)
        self.assertEqual(det.num_states, 2)
        self.assertTrue(det.complete)
        for word in all_words([0, 1], 6):
            self.assertEqual(accepts_word(det, word), bool(word) and word[-1] == 1)

    def test_random_nfw(self):
        """Test random NFWs against explicit run enumeration"""
        random = rng(2)
        for _ in range(30):
            a = random_automaton(random, A, 4, Branching.NONDETERMINISTIC, Acceptance.FINITE)
            det = determinize_nfw(a)
            self.assertLessEqual(det.num_states, 2**a.num_states)
            for word in all_words([0, 1], 6):
                self.assertEqual(accepts_word(det, word), brute_finite_accepts(a, word))

    def test_rejects_buchi_input(self):
        """Test that ω-automata are refused"""
        a = replace(dfw(A, [{0: 0, 1: 0}], {0}), acceptance=Acceptance.BUCHI)
        with self.assertRaises(PreconditionError):
            determinize_nfw(a)


class TestComplementDfw(unittest.TestCase):
    """Test cases for DFW complementation"""

    def test_involution(self):
        """Test that complementing twice gives the original language"""
        a = contains(A, "a")
        twice = complement_dfw(complement_dfw(a))
        for word in all_words([0, 1], 6):
            self.assertEqual(accepts_word(twice, word), accepts_word(a, word))

    def test_universal_language(self):
        """Test that the complement of everything accepts nothing"""
        a = dfw(A, [{0: 0, 1: 0}], {0})
        empty = complement_dfw(a)
        self.assertFalse(any(accepts_word(empty, word) for word in all_words([0, 1], 6)))

    def test_random_complete_dfw(self):
        """Test that the complement disagrees with the original on every word"""
        random = rng(3)
        for _ in range(30):
            a = random_dfw(random, A, 5, absorbing=False)
            comp = complement_dfw(a)
            for word in all_words([0, 1], 6):
                self.assertNotEqual(accepts_word(comp, word), accepts_word(a, word))

    def test_rejects_incomplete(self):
        """Test that incomplete DFWs are refused"""
        with self.assertRaises(PreconditionError):
            complement_dfw(dfw(A, [{0: 0}], {0}))


class TestDeterminizeUfw(unittest.TestCase):
    """Test cases for the UFW subset construction"""

    def test_single_accepting_state(self):
        """Test a one-state accepting UFW accepts all words"""
        a = Automaton(A, 1, EVERY, EVERY, ({0: EVERY, 1: EVERY},), Branching.UNIVERSAL)
        det = determinize_ufw(a)
        self.assertTrue(all(accepts_word(det, word) for word in all_words([0, 1], 6)))

    def _both(self):
        bit_a, bit_b = AB.bit("a"), AB.bit("b")
        delta = [{}, {}, {}, {}]
        for letter in AB.letters():
            delta[0][letter] = frozenset({1 if letter & bit_a else 0})
            delta[1][letter] = frozenset({1})
            delta[2][letter] = frozenset({3 if letter & bit_b else 2})
            delta[3][letter] = frozenset({3})
        return delta

    def test_conjunction_of_branches(self):
        """Test that two universal branches require both letters"""
        a = Automaton(AB, 4, frozenset({0, 2}), frozenset({1, 3}), tuple(self._both()), Branching.UNIVERSAL)
        det = determinize_ufw(a)
        for word in all_words(list(AB.letters()), 6):
            expected = any(l & 1 for l in word) and any(l & 2 for l in word)
            self.assertEqual(accepts_word(det, word), expected)

    def test_unreachable_rejecting_state(self):
        """Test that an unreachable rejecting state does not matter"""
        delta = self._both() + [{letter: frozenset({4}) for letter in AB.letters()}]
        with_extra = Automaton(AB, 5, frozenset({0, 2}), frozenset({1, 3}), tuple(delta), Branching.UNIVERSAL)
        without = Automaton(AB, 4, frozenset({0, 2}), frozenset({1, 3}), tuple(self._both()), Branching.UNIVERSAL)
        self.assertTrue(equivalent_dfw(determinize_ufw(with_extra), determinize_ufw(without)))

    def test_dead_branches_accept(self):
        """Test that a word killing every branch is accepted"""
        a = Automaton(A, 1, EVERY, frozenset(), ({0: EVERY},), Branching.UNIVERSAL)
        det = determinize_ufw(a)
        self.assertFalse(accepts_word(det, (0, 0)))
        self.assertTrue(accepts_word(det, (0, 1)))


class TestProduct(unittest.TestCase):
    """Test cases for synchronous products"""

    def test_identity_element(self):
        """Test that an all-accepting one-state factor is neutral"""
        random = rng(4)
        unit = dfw(A, [{0: 0, 1: 0}], {0})
        for _ in range(10):
            a = random_dfw(random, A, 4, absorbing=False)
            self.assertTrue(equivalent_dfw(product(a, unit), a))

    def test_intersection(self):
        """Test the conjunction of "contains a" and "contains b" """
        p = product(contains(AB, "a"), contains(AB, "b"))
        for word in all_words(list(AB.letters()), 6):
            expected = any(l & 1 for l in word) and any(l & 2 for l in word)
            self.assertEqual(accepts_word(p, word), expected)

    def test_unpruned_size(self):
        """Test the full product has |a|·|b| states"""
        a, b = contains(AB, "a"), contains(AB, "b")
        self.assertEqual(product(a, b, prune=False).num_states, a.num_states * b.num_states)

    def test_conjunction_never_exceeds_factor(self):
        """Test that the AND product accepts no word a factor rejects"""
        random = rng(5)
        for _ in range(10):
            a, b = random_dfw(random, A, 3, absorbing=False), random_dfw(random, A, 3, absorbing=False)
            p = product(a, b, compose=Compose.AND)
            for word in all_words([0, 1], 5):
                if accepts_word(p, word):
                    self.assertTrue(accepts_word(a, word) and accepts_word(b, word))

    def test_symmetric_difference(self):
        """Test that the XOR product accepts exactly the words one factor accepts"""
        random = rng(6)
        for _ in range(10):
            a, b = random_dfw(random, A, 3, absorbing=False), random_dfw(random, A, 3, absorbing=False)
            p = product(a, b, compose=Compose.XOR)
            for word in all_words([0, 1], 5):
                self.assertEqual(accepts_word(p, word), accepts_word(a, word) != accepts_word(b, word))

    def test_sync_rule(self):
        """Test reading the second factor through a letter map"""
        spec = AlphabetSpec.build(["a"], ["o"])
        inputs_contain_a = contains(A, "a")
        unit = dfw(spec, [{l: 0 for l in spec.letters()}], {0})
        p = product(unit, inputs_contain_a, sync=spec.project_inputs)
        self.assertTrue(accepts_word(p, (spec.mask(["a", "o"]),)))
        self.assertFalse(accepts_word(p, (spec.mask(["o"]),)))

    def test_mismatched_alphabets(self):
        """Test that products need a common alphabet without a sync rule"""
        from tempcause.exceptions import AlphabetMismatch

        with self.assertRaises(AlphabetMismatch):
            product(contains(A, "a"), contains(AB, "a"))


class TestNormalization(unittest.TestCase):
    """Test cases for trimming, absorbing normalization and relabelling"""

    def test_make_accepting_absorbing(self):
        """Test that accepting states become sinks"""
        a = dfw(A, [{0: 1, 1: 0}, {0: 0, 1: 1}], {0})
        normalized = make_accepting_absorbing(a)
        self.assertTrue(accepting_is_absorbing(normalized))
        self.assertTrue(normalized.complete)
        self.assertEqual(normalized.num_states, 1)

    def test_trim(self):
        """Test that unreachable states are removed"""
        a = dfw(A, [{0: 0, 1: 0}, {0: 1, 1: 0}], {1})
        trimmed = trim(a)
        self.assertEqual(trimmed.num_states, 1)
        self.assertEqual(trimmed.accepting, frozenset())

    def test_relabel(self):
        """Test that relabelling reorders letter bits"""
        ba = AlphabetSpec.build(["b", "a"], [])
        a = contains(AB, "a")
        moved = relabel(a, ba)
        self.assertEqual(moved.alphabet, ba)
        self.assertTrue(accepts_word(moved, (ba.mask(["a"]),)))
        self.assertFalse(accepts_word(moved, (ba.mask(["b"]),)))
