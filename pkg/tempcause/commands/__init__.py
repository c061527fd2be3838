# Copyright (c) 2026, Erick W.R. and contributors
# For license information, please see license.txt

"""
Command line interface.

    tempcause synth --class recurrence --system S --trace T --effect E --out C
    tempcause oracle --bundle B --stem-max 3 --loop-max 2 --compare C
    tempcause gen ln --n 2 --out-dir D
    tempcause gen complement --automaton A --acc cobuchi --out-dir D
    tempcause check --automaton C --word "{i} {i} | {i}"
    tempcause check --automaton D --word "0 1" --finite
    tempcause stats --automaton C --bound-context B
    tempcause decode --bundle B --cause C --out D

Failures print one line on stderr and exit with 2 (parse), 3 (precondition)
or 4 (internal invariant).
"""

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

import pandas as pd

from tempcause import __version__, hooks
from tempcause.automata.automaton import Acceptance
from tempcause.automata.emptiness import accepts_word, membership_lasso
from tempcause.config import get_settings, override
from tempcause.exceptions import PreconditionError, TempcauseError, throw
from tempcause.generators.encoding import GeneratedInstance, decode_cause
from tempcause.io.bundle import InstanceBundle, load_effect, read_text, write_instance
from tempcause.io.formats import parse_automaton, parse_system, parse_trace, parse_word, serialize_automaton
from tempcause.oracle.report import differential_test
from tempcause.synthesis.effects import EffectClass, cause_accepts
from tempcause.synthesis.pipelines import synthesize
from tempcause.system.model import validate_trace
from tempcause.utils import get_attr
from tempcause.utils.logger import logger, set_level

log = logger("commands")

CLASSES = [c.value for c in EffectClass if c is not EffectClass.PERSISTENCE]


def _load_instance(args):
    """``(system, trace, effect, decoder)`` from ``--bundle`` or the individual file options."""
    if getattr(args, "bundle", None):
        return InstanceBundle.read(args.bundle).load()
    for option in ("system", "trace", "effect", "effect_class"):
        if not getattr(args, option, None):
            throw(f"--{option.replace('effect_class', 'class')} is required without --bundle", PreconditionError)
    system = parse_system(read_text(args.system))
    word = parse_trace(read_text(args.trace), system.spec)
    effect = load_effect(args.effect, args.effect_class, system.spec)
    return system, validate_trace(system, word), effect, None


def cmd_synth(args):
    system, trace, effect, _ = _load_instance(args)
    kwargs = {}
    if effect.effect_class is EffectClass.GUARANTEE and args.exact_prefixes is not None:
        kwargs["exact_prefixes"] = args.exact_prefixes == "on"
    result = synthesize(system, trace, effect, **kwargs)
    Path(args.out).write_text(serialize_automaton(result.cause))
    print("\n".join(result.report_lines()))
    return 0


def cmd_oracle(args):
    system, trace, effect, _ = _load_instance(args)
    cause = parse_automaton(read_text(args.compare)) if args.compare else None
    report = differential_test(
        system,
        trace,
        effect,
        cause,
        stem_max=args.stem_max,
        loop_max=args.loop_max,
        instance_id=str(args.bundle or args.system),
        workers=args.workers,
    )
    alphabet = system.spec.input_spec()
    if cause is None:
        accepted = sum(1 for _, oracle, _ in report.verdicts if oracle)
        text = f"checked={report.checked}\nin_cause={accepted}\n"
    else:
        text = report.to_text(alphabet)
    if args.out:
        Path(args.out).write_text(text)
    sys.stdout.write(text)
    return 0 if report.agrees else 1


def cmd_gen(args):
    if args.family == "ln":
        instance = get_attr(hooks.instance_generators["ln"])(args.n, args.repr)
    else:
        automaton = parse_automaton(read_text(args.automaton))
        acceptance = Acceptance(args.acc)
        if automaton.acceptance is not acceptance:
            automaton = replace(automaton, acceptance=acceptance)
        if acceptance is Acceptance.FINITE:
            instance = get_attr(hooks.instance_generators["nfw"])(automaton, args.repr)
        else:
            instance = get_attr(hooks.instance_generators["complement"])(automaton)
    bundle = write_instance(instance, args.out_dir)
    print(f"family={instance.family}")
    print(f"system_states={instance.system.num_states}")
    print(f"effect_states={instance.effect.automaton.num_states}")
    print(f"bundle={bundle.system_path.parent / 'bundle.txt'}")
    return 0


def cmd_check(args):
    automaton = parse_automaton(read_text(args.automaton))
    if args.finite:
        verdict = accepts_word(automaton, parse_word(args.word, automaton.alphabet))
        print("accepted" if verdict else "rejected")
        return 0
    word = parse_trace(args.word, automaton.alphabet)
    if automaton.acceptance is Acceptance.FINITE:
        if args.effect_class is None:
            throw("Prefix automata need --class safety or --class guarantee", PreconditionError)
        verdict = cause_accepts(args.effect_class, automaton, word)
    else:
        verdict = membership_lasso(automaton, word)
    print("accepted" if verdict else "rejected")
    return 0


def _bound(effect_class, system_states, effect_states, span):
    power = 3 if effect_class is EffectClass.RECURRENCE else 2
    return span * power ** (system_states * effect_states)


def cmd_stats(args):
    automaton = parse_automaton(read_text(args.automaton))
    rows = [{"quantity": "states", "value": automaton.num_states}]
    rows.append({"quantity": "kind", "value": automaton.kind})
    if args.bound_context:
        system, trace, effect, _ = InstanceBundle.read(args.bound_context).load()
        n = system.num_states * effect.automaton.num_states
        rows += [
            {"quantity": "system_states", "value": system.num_states},
            {"quantity": "effect_states", "value": effect.automaton.num_states},
            {"quantity": "trace_span", "value": trace.span},
            {"quantity": "pair_bound", "value": n},
            {
                "quantity": "bound",
                "value": _bound(effect.effect_class, system.num_states, effect.automaton.num_states, trace.span),
            },
        ]
    frame = pd.DataFrame(rows, columns=["quantity", "value"])
    for row in frame.itertuples(index=False):
        print(f"{row.quantity}={row.value}")
    return 0


def cmd_decode(args):
    system, trace, effect, decoder = InstanceBundle.read(args.bundle).load()
    if decoder is None:
        throw("The bundle has no decoder", PreconditionError)
    cause = parse_automaton(read_text(args.cause))
    instance = GeneratedInstance("bundle", system, trace, effect, decoder)
    decoded = decode_cause(instance, cause)
    Path(args.out).write_text(serialize_automaton(decoded))
    print(f"states={decoded.num_states}")
    return 0


def _instance_options(parser):
    parser.add_argument("--bundle", help="bundle.txt written by 'gen' (replaces the file options)")
    parser.add_argument("--system")
    parser.add_argument("--trace")
    parser.add_argument("--effect")
    parser.add_argument("--class", dest="effect_class", choices=CLASSES)


def get_parser():
    parser = argparse.ArgumentParser(prog="tempcause", description="Temporal cause synthesis")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")
    commands = parser.add_subparsers(dest="command", required=True)

    synth = commands.add_parser("synth", help="synthesize the cause of an effect on a trace")
    _instance_options(synth)
    synth.add_argument("--out", required=True)
    synth.add_argument("--exact-prefixes", choices=["on", "off"])
    synth.set_defaults(func=cmd_synth)

    oracle = commands.add_parser("oracle", help="brute-force cause membership on enumerated lassos")
    _instance_options(oracle)
    oracle.add_argument("--stem-max", type=int, default=3)
    oracle.add_argument("--loop-max", type=int, default=2)
    oracle.add_argument("--compare", help="cause automaton to test against the oracle")
    oracle.add_argument("--workers", type=int)
    oracle.add_argument("--out")
    oracle.set_defaults(func=cmd_oracle)

    gen = commands.add_parser("gen", help="generate a lower-bound instance")
    families = gen.add_subparsers(dest="family", required=True)
    ln = families.add_parser("ln")
    ln.add_argument("--n", type=int, required=True)
    ln.add_argument("--repr", choices=["safety", "guarantee"], default="safety")
    ln.add_argument("--out-dir", required=True)
    complement = families.add_parser("complement")
    complement.add_argument("--automaton", required=True)
    complement.add_argument("--acc", choices=["buchi", "cobuchi", "finite"], required=True)
    complement.add_argument("--repr", choices=["safety", "guarantee"], default="safety")
    complement.add_argument("--out-dir", required=True)
    gen.set_defaults(func=cmd_gen)

    check = commands.add_parser("check", help="membership of a lasso or finite word in an automaton")
    check.add_argument("--automaton", required=True)
    check.add_argument("--word", required=True)
    check.add_argument("--class", dest="effect_class", choices=["safety", "guarantee"])
    check.add_argument("--finite", action="store_true", help="read --word as a finite word of a DFW or NFW")
    check.set_defaults(func=cmd_check)

    stats = commands.add_parser("stats", help="state counts and the theoretical bound")
    stats.add_argument("--automaton", required=True)
    stats.add_argument("--bound-context", help="bundle the automaton was synthesized from")
    stats.set_defaults(func=cmd_stats)

    decode = commands.add_parser("decode", help="read a cause back over the original alphabet")
    decode.add_argument("--bundle", required=True)
    decode.add_argument("--cause", required=True)
    decode.add_argument("--out", required=True)
    decode.set_defaults(func=cmd_decode)
    return parser


def main(argv=None):
    args = get_parser().parse_args(argv)
    if args.verbose:
        set_level(logging.DEBUG)
    try:
        with override(workers=getattr(args, "workers", None) or get_settings().workers):
            return args.func(args)
    except TempcauseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
