# Copyright (c) 2026, Erick W.R. and contributors
# For license information, please see license.txt

"""
Line-oriented text formats for systems, traces and automata.

System::

    inputs: i
    outputs: o
    states: s1 s2
    init: s1
    label s2 {o}
    trans s1 {i} s2
    trans s2 * s2

Automaton::

    automaton kind=DBW
    aps: i o
    outputs: o
    states: 2
    init: 0
    acc: 1
    trans 0 {o} 1

Trace: ``{i} {i,o} | {o}``. Lines starting with ``#`` are comments and
``*`` stands for every letter.
"""

import re

from tempcause.automata.alphabet import AlphabetSpec, LassoWord, SymbolAlphabet
from tempcause.automata.automaton import KINDS, Automaton
from tempcause.automata.operations import mark_complete
from tempcause.exceptions import AlphabetMismatch, InvariantError, ParseError, ValidationError
from tempcause.system.model import System

_TOKEN = re.compile(r"\{[^}]*\}|\S+")


def _lines(text):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


def _tokens(line):
    return _TOKEN.findall(line)


def _header(line, key):
    """Value of ``key: value`` or None."""
    if line.startswith(f"{key}:"):
        return line[len(key) + 1 :].strip()
    return None


def _letters(alphabet, token, number):
    if token == "*":
        return list(alphabet.letters())
    try:
        return [alphabet.parse_letter(token)]
    except (AlphabetMismatch, ParseError) as exc:
        raise ParseError(str(exc), number) from None


# Systems


def parse_system(text):
    inputs = outputs = states = init = None
    labels, transitions = {}, []
    for number, line in _lines(text):
        for key in ("inputs", "outputs", "states", "init"):
            value = _header(line, key)
            if value is not None:
                if key == "inputs":
                    inputs = value.split()
                elif key == "outputs":
                    outputs = value.split()
                elif key == "states":
                    states = value.split()
                    if len(set(states)) != len(states):
                        raise ParseError("Duplicate state name", number)
                else:
                    init = value
                break
        else:
            tokens = _tokens(line)
            if tokens[0] == "label" and len(tokens) == 3:
                labels[tokens[1]] = (tokens[2], number)
            elif tokens[0] == "trans" and len(tokens) == 4:
                transitions.append((tokens[1], tokens[2], tokens[3], number))
            else:
                raise ParseError(f"Unexpected line '{line}'", number)

    if not states:
        raise ParseError("The system declares no states")
    if init is None:
        raise ParseError("The system declares no initial state")
    try:
        spec = AlphabetSpec.build(inputs or [], outputs or [])
    except ValidationError as exc:
        raise ParseError(str(exc)) from None
    index = {name: k for k, name in enumerate(states)}

    def state(name, number):
        if name not in index:
            raise ParseError(f"Unknown state '{name}'", number)
        return index[name]

    out_spec = spec.output_spec()
    in_spec = spec.input_spec()
    label_of = [0] * len(states)
    for name, (token, number) in labels.items():
        names = out_spec.names(_letters(out_spec, token, number)[0])
        label_of[state(name, number)] = spec.mask(names)

    delta = [dict() for _ in states]
    for source, token, target, number in transitions:
        s, t = state(source, number), state(target, number)
        for inputs_letter in _letters(in_spec, token, number):
            delta[s][inputs_letter] = delta[s].get(inputs_letter, frozenset()) | {t}

    return System(spec, len(states), state(init, None), tuple(delta), tuple(label_of), tuple(states))


def serialize_system(system):
    spec = system.spec
    in_spec, out_spec = spec.input_spec(), spec.output_spec()
    names = [system.state_name(s) for s in range(system.num_states)]
    lines = [
        f"inputs: {' '.join(in_spec.aps)}".rstrip(),
        f"outputs: {' '.join(out_spec.aps)}".rstrip(),
        f"states: {' '.join(names)}",
        f"init: {names[system.initial]}",
    ]
    for s in range(system.num_states):
        label = out_spec.mask(spec.names(system.labels[s]))
        lines.append(f"label {names[s]} {out_spec.format_letter(label)}")
    for s in range(system.num_states):
        for inputs_letter in sorted(system.delta[s]):
            for t in sorted(system.delta[s][inputs_letter]):
                lines.append(f"trans {names[s]} {in_spec.format_letter(inputs_letter)} {names[t]}")
    return "\n".join(lines) + "\n"


# Traces


def parse_trace(text, alphabet):
    """Parse ``"<stem letters> | <loop letters>"`` over ``alphabet``."""
    lines = [line for _, line in _lines(text)]
    if len(lines) != 1 or lines[0].count("|") != 1:
        raise ParseError("A trace is one line of the form '<stem> | <loop>'", 1)
    stem_text, loop_text = lines[0].split("|")
    try:
        stem = tuple(alphabet.parse_letter(token) for token in _tokens(stem_text))
        loop = tuple(alphabet.parse_letter(token) for token in _tokens(loop_text))
    except (AlphabetMismatch, ParseError) as exc:
        raise ParseError(str(exc), 1) from None
    if not loop:
        raise ParseError("The loop of a trace cannot be empty", 1)
    return LassoWord(stem, loop)


def serialize_trace(word, alphabet):
    stem = " ".join(alphabet.format_letter(letter) for letter in word.stem)
    loop = " ".join(alphabet.format_letter(letter) for letter in word.loop)
    return f"{stem} | {loop}".strip() + "\n"


def parse_word(text, alphabet):
    """Parse a finite word of space-separated letters; empty text is ε."""
    line = text.strip()
    if "\n" in line or "|" in line:
        raise ParseError("A finite word is one line of letters without '|'", 1)
    try:
        return tuple(alphabet.parse_letter(token) for token in _tokens(line))
    except (AlphabetMismatch, ParseError) as exc:
        raise ParseError(str(exc), 1) from None


# Automata


def parse_automaton(text):
    lines = list(_lines(text))
    if not lines:
        raise ParseError("Empty automaton file")
    number, first = lines[0]
    match = re.fullmatch(r"automaton\s+kind=(\w+)", first)
    if not match or match.group(1) not in KINDS:
        raise ParseError("Expected 'automaton kind=<TAG>' with a known tag", number)
    kind = match.group(1)
    branching, acceptance = KINDS[kind]

    aps = inputs = outputs = symbols = None
    num_states = None
    init, acc, transitions = [], [], []
    for number, line in lines[1:]:
        if (value := _header(line, "aps")) is not None:
            aps = value.split()
        elif (value := _header(line, "inputs")) is not None:
            inputs = value.split()
        elif (value := _header(line, "outputs")) is not None:
            outputs = value.split()
        elif (value := _header(line, "symbols")) is not None:
            symbols = value.split()
        elif (value := _header(line, "states")) is not None:
            try:
                num_states = int(value)
            except ValueError:
                raise ParseError("'states:' expects a count", number) from None
        elif (value := _header(line, "init")) is not None:
            init = [(token, number) for token in value.split()]
        elif (value := _header(line, "acc")) is not None:
            acc = [(token, number) for token in value.split()]
        else:
            tokens = _tokens(line)
            if tokens[0] != "trans" or len(tokens) != 4:
                raise ParseError(f"Unexpected line '{line}'", number)
            transitions.append((tokens[1], tokens[2], tokens[3], number))

    if num_states is None or num_states < 1:
        raise ParseError("The automaton declares no states")
    try:
        if symbols is not None:
            alphabet = SymbolAlphabet(tuple(symbols))
        else:
            outputs = outputs or []
            if aps is None:
                aps = (inputs or []) + outputs
            if not set(outputs) <= set(aps):
                raise ParseError("Outputs must be among the declared propositions")
            alphabet = AlphabetSpec(tuple(aps), frozenset(aps) - set(outputs), frozenset(outputs))
    except ValidationError as exc:
        raise ParseError(str(exc)) from None

    def state(token, number):
        try:
            q = int(token)
        except ValueError:
            raise ParseError(f"Bad state '{token}'", number) from None
        if not 0 <= q < num_states:
            raise ParseError(f"State {q} out of range", number)
        return q

    delta = [dict() for _ in range(num_states)]
    for source, token, target, number in transitions:
        q, q2 = state(source, number), state(target, number)
        for letter in _letters(alphabet, token, number):
            delta[q][letter] = delta[q].get(letter, frozenset()) | {q2}
    try:
        automaton = Automaton(
            alphabet=alphabet,
            num_states=num_states,
            initial=frozenset(state(t, n) for t, n in init),
            accepting=frozenset(state(t, n) for t, n in acc),
            delta=tuple(delta),
            branching=branching,
            acceptance=acceptance,
        )
    except InvariantError as exc:
        raise ParseError(f"kind mismatch for {kind}: {exc}") from None
    if not automaton.initial:
        raise ParseError("The automaton declares no initial state")
    return automaton if automaton.is_universal else mark_complete(automaton)


def serialize_automaton(automaton):
    alphabet = automaton.alphabet
    lines = [f"automaton kind={automaton.kind}"]
    if isinstance(alphabet, SymbolAlphabet):
        lines.append(f"symbols: {' '.join(alphabet.symbols)}")
    else:
        lines.append(f"aps: {' '.join(alphabet.aps)}".rstrip())
        if alphabet.outputs:
            lines.append(f"outputs: {' '.join(n for n in alphabet.aps if n in alphabet.outputs)}")
    lines.append(f"states: {automaton.num_states}")
    lines.append(f"init: {' '.join(map(str, sorted(automaton.initial)))}")
    lines.append(f"acc: {' '.join(map(str, sorted(automaton.accepting)))}".rstrip())
    for q, letter, target in automaton.edges():
        lines.append(f"trans {q} {alphabet.format_letter(letter)} {target}")
    return "\n".join(lines) + "\n"
