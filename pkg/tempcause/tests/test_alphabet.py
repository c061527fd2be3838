# Copyright (c) 2026, Erick W.R. and Contributors
# See license.txt

import unittest

from tempcause.automata.alphabet import AlphabetSpec, LassoWord, PairAlphabet, SymbolAlphabet, align
from tempcause.exceptions import AlphabetMismatch, ParseError, ValidationError


class TestAlphabetSpec(unittest.TestCase):
    """Test cases for proposition alphabets"""

    def setUp(self):
        self.spec = AlphabetSpec(("o", "i", "j"), frozenset({"i", "j"}), frozenset({"o"}))

    def test_rejects_overlapping_inputs_and_outputs(self):
        """Test that a proposition cannot be both input and output"""
        with self.assertRaises(ValidationError):
            AlphabetSpec(("a",), frozenset({"a"}), frozenset({"a"}))

    def test_rejects_duplicate_names(self):
        """Test that duplicate proposition names are rejected"""
        with self.assertRaises(ValidationError):
            AlphabetSpec.build(["a", "a"], [])

    def test_letters_are_bitmasks(self):
        """Test mask/names/format on letters"""
        letter = self.spec.mask(["i", "o"])
        self.assertEqual(letter, 0b011)
        self.assertEqual(self.spec.names(letter), ["o", "i"])
        self.assertEqual(self.spec.format_letter(letter), "{o,i}")
        self.assertEqual(self.spec.parse_letter("{ i , o }"), letter)
        self.assertEqual(self.spec.parse_letter("{}"), 0)

    def test_unknown_proposition(self):
        """Test that parsing an undeclared proposition fails"""
        with self.assertRaises(AlphabetMismatch):
            self.spec.parse_letter("{x}")
        with self.assertRaises(ParseError):
            self.spec.parse_letter("i")

    def test_project_and_embed_inputs(self):
        """Test that projection keeps inputs in declaration order and embedding inverts it"""
        inputs = self.spec.input_spec()
        self.assertEqual(inputs.aps, ("i", "j"))
        full = self.spec.mask(["o", "j"])
        projected = self.spec.project_inputs(full)
        self.assertEqual(inputs.names(projected), ["j"])
        self.assertEqual(self.spec.embed_inputs(projected), self.spec.mask(["j"]))
        for letter in inputs.letters():
            self.assertEqual(self.spec.project_inputs(self.spec.embed_inputs(letter)), letter)

    def test_output_letters(self):
        """Test enumeration of output-only letters"""
        self.assertEqual(self.spec.output_letters(), [0, self.spec.mask(["o"])])
        self.assertEqual(AlphabetSpec.build(["a"], []).output_letters(), [0])

    def test_symbol_and_pair_alphabets(self):
        """Test the plain symbol and pair alphabets"""
        symbols = SymbolAlphabet(("0", "1", "#"))
        self.assertEqual(symbols.parse_letter("#"), 2)
        self.assertEqual(symbols.format_letter(1), "1")
        pairs = PairAlphabet(self.spec)
        self.assertEqual(pairs.size, 4 * 8)
        self.assertEqual(len(pairs.restricted([0, 3])), 8)


class TestLassoWord(unittest.TestCase):
    """Test cases for ultimately periodic words"""

    def test_empty_loop_is_rejected(self):
        """Test that the loop needs at least one letter"""
        with self.assertRaises(ValidationError):
            LassoWord((1,), ())

    def test_letter_and_positions(self):
        """Test indexing into stem and loop"""
        word = LassoWord((5, 6), (1, 2, 3))
        self.assertEqual([word.letter(t) for t in range(8)], [5, 6, 1, 2, 3, 1, 2, 3])
        self.assertEqual(word.next_position(4), 2)
        self.assertEqual(word.next_position(1), 2)
        self.assertEqual(word.prefix(4), (5, 6, 1, 2))

    def test_align_uses_lcm_of_loops(self):
        """Test that aligning loops of lengths 2 and 3 yields loops of length 6"""
        a, b = align(LassoWord((), (0, 1)), LassoWord((7,), (2, 3, 4)))
        self.assertEqual(len(a.loop), 6)
        self.assertEqual(len(b.loop), 6)
        self.assertEqual(len(a.stem), 1)
        for t in range(20):
            self.assertEqual(a.letter(t), t % 2)

    def test_unroll_keeps_the_word(self):
        """Test that unrolling the loop does not change any letter"""
        word = LassoWord((1,), (2, 3))
        doubled = word.unroll()
        self.assertEqual([word.letter(t) for t in range(10)], [doubled.letter(t) for t in range(10)])
