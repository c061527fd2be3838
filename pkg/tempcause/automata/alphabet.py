# Copyright (c) 2026, Erick W.R. and contributors
# For license information, please see license.txt

"""
Alphabets, letters and lasso words.

A letter over an ``AlphabetSpec`` is an ``int`` bitmask: bit ``k`` is set when
``aps[k]`` holds. Letters over a ``SymbolAlphabet`` are symbol indices and
letters over a ``PairAlphabet`` are ``(input_letter, letter)`` tuples.
"""

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Tuple

from tempcause.exceptions import AlphabetMismatch, ParseError, ValidationError, throw

Letter = int


@dataclass(frozen=True)
class AlphabetSpec:
    aps: Tuple[str, ...]
    inputs: frozenset = field(default_factory=frozenset)
    outputs: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "aps", tuple(self.aps))
        object.__setattr__(self, "inputs", frozenset(self.inputs))
        object.__setattr__(self, "outputs", frozenset(self.outputs))
        if any(not name for name in self.aps):
            throw("Atomic proposition names must be nonempty")
        if len(set(self.aps)) != len(self.aps):
            throw(f"Duplicate atomic propositions in {list(self.aps)}")
        if self.inputs & self.outputs:
            throw(f"Propositions declared both input and output: {sorted(self.inputs & self.outputs)}")
        if (self.inputs | self.outputs) != set(self.aps):
            throw("Inputs and outputs must partition the declared propositions")

    @classmethod
    def build(cls, inputs: Sequence[str] = (), outputs: Sequence[str] = ()):
        return cls(tuple(inputs) + tuple(outputs), frozenset(inputs), frozenset(outputs))

    # Letters

    @property
    def size(self):
        return 1 << len(self.aps)

    def letters(self):
        return range(self.size)

    def bit(self, name):
        try:
            return 1 << self.aps.index(name)
        except ValueError:
            raise AlphabetMismatch(f"Unknown atomic proposition '{name}'") from None

    def mask(self, names: Iterable[str]) -> Letter:
        letter = 0
        for name in names:
            letter |= self.bit(name)
        return letter

    def names(self, letter: Letter):
        return [name for k, name in enumerate(self.aps) if letter >> k & 1]

    def format_letter(self, letter: Letter):
        return "{" + ",".join(self.names(letter)) + "}"

    def parse_letter(self, text: str) -> Letter:
        text = text.strip()
        if not (text.startswith("{") and text.endswith("}")):
            raise ParseError(f"Expected a letter like {{a,b}}, got '{text}'")
        body = text[1:-1].strip()
        names = [part.strip() for part in body.split(",")] if body else []
        if any(not name for name in names):
            raise ParseError(f"Malformed letter '{text}'")
        return self.mask(names)

    # Input/output views

    @cached_property
    def input_mask(self) -> Letter:
        return self.mask(self.inputs)

    @cached_property
    def output_mask(self) -> Letter:
        return self.mask(self.outputs)

    def input_spec(self) -> "AlphabetSpec":
        names = tuple(name for name in self.aps if name in self.inputs)
        return AlphabetSpec(names, frozenset(names), frozenset())

    def output_spec(self) -> "AlphabetSpec":
        names = tuple(name for name in self.aps if name in self.outputs)
        return AlphabetSpec(names, frozenset(), frozenset(names))

    @cached_property
    def _input_positions(self):
        return [self.aps.index(name) for name in self.aps if name in self.inputs]

    @cached_property
    def _project_table(self):
        table = []
        for letter in self.letters():
            projected = 0
            for k, position in enumerate(self._input_positions):
                if letter >> position & 1:
                    projected |= 1 << k
            table.append(projected)
        return table

    @cached_property
    def _embed_table(self):
        table = []
        for projected in range(1 << len(self._input_positions)):
            letter = 0
            for k, position in enumerate(self._input_positions):
                if projected >> k & 1:
                    letter |= 1 << position
            table.append(letter)
        return table

    def project_inputs(self, letter: Letter) -> Letter:
        """Project a letter over ``aps`` onto ``input_spec()``."""
        return self._project_table[letter]

    def embed_inputs(self, letter: Letter) -> Letter:
        """Inverse of ``project_inputs``: outputs are left unset."""
        return self._embed_table[letter]

    def output_letters(self):
        """Every letter over ``aps`` that only sets outputs."""
        out = self.output_mask
        sub = out
        letters = []
        while True:
            letters.append(sub)
            if sub == 0:
                break
            sub = (sub - 1) & out
        return sorted(letters)


@dataclass(frozen=True)
class SymbolAlphabet:
    """A plain alphabet of named symbols such as ``("0", "1", "#")``."""

    symbols: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if len(set(self.symbols)) != len(self.symbols) or not all(self.symbols):
            throw(f"Symbols must be unique and nonempty: {list(self.symbols)}")

    @property
    def size(self):
        return len(self.symbols)

    def letters(self):
        return range(len(self.symbols))

    def format_letter(self, letter):
        return self.symbols[letter]

    def parse_letter(self, text):
        text = text.strip()
        try:
            return self.symbols.index(text)
        except ValueError:
            raise AlphabetMismatch(f"Unknown symbol '{text}'") from None


@dataclass(frozen=True)
class PairAlphabet:
    """Pairs ``(c, a)`` with ``c`` over the input alphabet and ``a`` over the full one."""

    spec: AlphabetSpec

    @property
    def left(self):
        return self.spec.input_spec()

    @property
    def size(self):
        return self.left.size * self.spec.size

    def letters(self):
        return list(itertools.product(self.left.letters(), self.spec.letters()))

    def restricted(self, observed: Iterable[Letter]):
        """Pair letters whose second component is one of ``observed``."""
        observed = sorted(set(observed))
        return [(c, a) for c in self.left.letters() for a in observed]

    def format_letter(self, letter):
        c, a = letter
        return f"({self.left.format_letter(c)},{self.spec.format_letter(a)})"


def check_same_alphabet(first, second, what="automata"):
    if first != second:
        raise AlphabetMismatch(f"The {what} are over different alphabets")


@dataclass(frozen=True)
class LassoWord:
    """The ultimately periodic word ``stem · loop^ω``."""

    stem: Tuple = ()
    loop: Tuple = (0,)

    def __post_init__(self):
        object.__setattr__(self, "stem", tuple(self.stem))
        object.__setattr__(self, "loop", tuple(self.loop))
        if not self.loop:
            raise ValidationError("A lasso loop must contain at least one letter")

    @property
    def span(self):
        """Number of distinct positions, ``|stem| + |loop|``."""
        return len(self.stem) + len(self.loop)

    def letter(self, t: int):
        if t < len(self.stem):
            return self.stem[t]
        return self.loop[(t - len(self.stem)) % len(self.loop)]

    def next_position(self, p: int):
        """Successor of a folded position in ``range(span)``."""
        return p + 1 if p + 1 < self.span else len(self.stem)

    def prefix(self, n: int):
        return tuple(self.letter(t) for t in range(n))

    def letters(self):
        return set(self.stem) | set(self.loop)

    def map(self, fn):
        return LassoWord(tuple(map(fn, self.stem)), tuple(map(fn, self.loop)))

    def unroll(self, times: int = 2):
        return LassoWord(self.stem, self.loop * times)

    def reshape(self, stem_len: int, loop_len: int):
        """Same word, written with the given stem length and a loop length multiple of ``|loop|``."""
        if stem_len < len(self.stem) or loop_len % len(self.loop):
            raise ValidationError("Cannot shorten a lasso while reshaping it")
        return LassoWord(
            tuple(self.letter(t) for t in range(stem_len)),
            tuple(self.letter(stem_len + t) for t in range(loop_len)),
        )


def align(*words: LassoWord):
    """Rewrite words over a common stem length and the lcm of their loop lengths."""
    stem_len = max(len(word.stem) for word in words)
    loop_len = math.lcm(*(len(word.loop) for word in words))
    return [word.reshape(stem_len, loop_len) for word in words]
