# Copyright (c) 2026, Erick W.R. and contributors
# For license information, please see license.txt

"""
Instance bundles and decoder sidecars.

``bundle.txt`` names the files of one instance, relative to its own folder::

    system: system.txt
    trace: trace.txt
    effect: effect.txt
    class: recurrence
    decoder: decoder.txt
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from tempcause.automata.alphabet import AlphabetSpec
from tempcause.automata.operations import relabel
from tempcause.exceptions import AlphabetMismatch, ParseError, ValidationError, throw
from tempcause.generators.encoding import Decoder
from tempcause.io.formats import (
    _header,
    _lines,
    _tokens,
    parse_automaton,
    parse_system,
    parse_trace,
    serialize_automaton,
    serialize_system,
    serialize_trace,
)
from tempcause.synthesis.effects import EffectClass, EffectSpec
from tempcause.system.model import validate_trace
from tempcause.utils.logger import logger

log = logger("io")

BUNDLE_FILE = "bundle.txt"


def read_text(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        throw(f"Cannot read {path}: {exc.strerror}", ValidationError)


def load_effect(path, effect_class, spec=None):
    """
    Load an effect automaton, normalize prefix automata to absorbing form and
    align its propositions with ``spec``.
    """
    automaton = parse_automaton(read_text(path))
    if spec is not None and automaton.alphabet != spec:
        alphabet = automaton.alphabet
        if (
            not isinstance(alphabet, AlphabetSpec)
            or alphabet.inputs != spec.inputs
            or alphabet.outputs != spec.outputs
        ):
            throw("The effect and the system declare different propositions", AlphabetMismatch)
        automaton = relabel(automaton, spec)
    return EffectSpec.load(effect_class, automaton)


# Decoder sidecar


def parse_decoder(text):
    inputs = symbols = None
    letters, padding = {}, None
    lines = list(_lines(text))
    if not lines or lines[0][1] != "decoder":
        raise ParseError("A decoder file starts with 'decoder'", 1)
    for number, line in lines[1:]:
        if (value := _header(line, "inputs")) is not None:
            inputs = value.split()
        elif (value := _header(line, "symbols")) is not None:
            symbols = value.split()
        else:
            tokens = _tokens(line)
            if tokens[0] == "letter" and len(tokens) == 3:
                letters[tokens[1]] = (tokens[2], number)
            elif tokens[0] == "padding" and len(tokens) == 2:
                padding = (tokens[1], number)
            else:
                raise ParseError(f"Unexpected line '{line}'", number)
    if inputs is None or symbols is None:
        raise ParseError("A decoder declares 'inputs:' and 'symbols:'")
    spec = AlphabetSpec.build(inputs, [])

    def parse(token, number):
        try:
            return spec.parse_letter(token)
        except (AlphabetMismatch, ParseError) as exc:
            raise ParseError(str(exc), number) from None

    missing = [s for s in symbols if s not in letters]
    if missing:
        raise ParseError(f"No code for symbols {missing}")
    return Decoder(
        spec,
        tuple(symbols),
        tuple(parse(*letters[s]) for s in symbols),
        parse(*padding) if padding else None,
    )


def serialize_decoder(decoder):
    spec = decoder.input_spec
    lines = [
        "decoder",
        f"inputs: {' '.join(spec.aps)}",
        f"symbols: {' '.join(decoder.symbols)}",
    ]
    for symbol, code in zip(decoder.symbols, decoder.letters):
        lines.append(f"letter {symbol} {spec.format_letter(code)}")
    if decoder.padding is not None:
        lines.append(f"padding {spec.format_letter(decoder.padding)}")
    return "\n".join(lines) + "\n"


@dataclass
class InstanceBundle:
    system_path: Path
    trace_path: Path
    effect_path: Path
    effect_class: EffectClass
    decoder_path: Optional[Path] = None

    @classmethod
    def read(cls, path):
        path = Path(path)
        if path.is_dir():
            path = path / BUNDLE_FILE
        base = path.parent
        fields = {}
        for number, line in _lines(read_text(path)):
            key, sep, value = line.partition(":")
            if not sep or key.strip() not in ("system", "trace", "effect", "class", "decoder"):
                raise ParseError(f"Unexpected line '{line}'", number)
            fields[key.strip()] = value.strip()
        for key in ("system", "trace", "effect", "class"):
            if key not in fields:
                raise ParseError(f"The bundle names no '{key}'")
        try:
            effect_class = EffectClass(fields["class"])
        except ValueError:
            raise ParseError(f"Unknown effect class '{fields['class']}'") from None
        return cls(
            base / fields["system"],
            base / fields["trace"],
            base / fields["effect"],
            effect_class,
            base / fields["decoder"] if fields.get("decoder") else None,
        )

    def load(self):
        """
        Parse every file and check that they agree on the propositions.

        Returns:
            tuple: ``(system, trace, effect, decoder)``; ``decoder`` may be None.
        """
        system = parse_system(read_text(self.system_path))
        word = parse_trace(read_text(self.trace_path), system.spec)
        effect = load_effect(self.effect_path, self.effect_class, system.spec)
        decoder = None
        if self.decoder_path is not None:
            decoder = parse_decoder(read_text(self.decoder_path))
            if decoder.input_spec.aps != system.spec.input_spec().aps:
                throw("The decoder and the system declare different inputs", AlphabetMismatch)
        return system, validate_trace(system, word), effect, decoder

    def to_text(self):
        base = self.system_path.parent
        lines = [
            f"system: {self.system_path.relative_to(base)}",
            f"trace: {self.trace_path.relative_to(base)}",
            f"effect: {self.effect_path.relative_to(base)}",
            f"class: {self.effect_class.value}",
        ]
        if self.decoder_path is not None:
            lines.append(f"decoder: {self.decoder_path.relative_to(base)}")
        return "\n".join(lines) + "\n"


def write_instance(instance, out_dir):
    """Write a generated instance as a bundle folder and return the bundle."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    bundle = InstanceBundle(
        out_dir / "system.txt",
        out_dir / "trace.txt",
        out_dir / "effect.txt",
        instance.effect.effect_class,
        out_dir / "decoder.txt",
    )
    spec = instance.system.spec
    bundle.system_path.write_text(serialize_system(instance.system))
    bundle.trace_path.write_text(serialize_trace(instance.trace.word, spec))
    bundle.effect_path.write_text(serialize_automaton(instance.effect.automaton))
    bundle.decoder_path.write_text(serialize_decoder(instance.decoder))
    (out_dir / BUNDLE_FILE).write_text(bundle.to_text())
    log.info("wrote %s instance to %s", instance.family, out_dir)
    return bundle
