"""
Command-line interface: ``python -m src.cli <command> ...``

Commands:
- run MECH PROFILE        print the random matching and per-agent distances
- check PROP MECH PROFILE check one property (``--fuzz CFG`` samples instead)
- fuzz MECH               fuzz every comparison-table property for one mechanism
- repro FIXTURE           recompute a stored worked instance
- gen                     print a random grid profile
- table1                  the mechanism/property comparison matrix

Exit codes: 0 pass, 1 fail, 2 parse or invalid input, 3 unsupported
instance, 4 inconclusive.
"""

import argparse
import json
import logging
import os
import sys

from src.axioms import TABLE1_PROPERTIES, Outcome, Property
from src.chance_divider import ChanceDivider
from src.config import default_jobs, default_seed, log_level
from src.errors import ChanceSplitError, UnsupportedInstanceError
from src.fixtures import FIXTURE_IDS, load_fixture, reproduce_fixture
from src.fuzzing import DISPUTED_CELLS, FuzzConfig, replay_verdict
from src.mechanisms import MECHANISM_TAGS
from src.model import IdealLottery, Permutation, distances, format_rational
from src.profiles import random_profile
from src.serialization import (
    dumps,
    parse_rational,
    read_profile,
    serialize_matching,
    serialize_profile,
    verdict_from_dict,
    verdict_to_dict,
)
from src.utilities import Utils

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3
EXIT_INCONCLUSIVE = 4

_EXIT_CODES = {
    Outcome.PASS: EXIT_PASS,
    Outcome.FAIL: EXIT_FAIL,
    Outcome.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


def exit_code(verdicts):
    """Fail beats Inconclusive beats Pass"""
    results = {v.result for v in verdicts}
    if Outcome.FAIL in results:
        return EXIT_FAIL
    if Outcome.INCONCLUSIVE in results:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def load_profile(source):
    """A profile file, or the profile of a stored fixture given by id"""
    if not os.path.exists(source) and source in FIXTURE_IDS:
        return load_fixture(source).profile
    return read_profile(source)


def parse_lottery(text):
    return IdealLottery(tuple(
        parse_rational(part, f"misreport[{a}]") for a, part in enumerate(text.split(','))
    ))


def _fuzz_config(args, n=3):
    defaults = dict(n=n, seed=args.seed, jobs=args.jobs)
    return FuzzConfig.parse(args.fuzz or '', **defaults)


def _divider(args, cfg=None):
    cfg = cfg or FuzzConfig(seed=args.seed, jobs=args.jobs)
    return ChanceDivider(
        mechanism=args.mechanism,
        alpha=getattr(args, 'alpha', None),
        beta=getattr(args, 'beta', None),
        denominator=cfg.denominator,
        samples=cfg.samples,
        seed=cfg.seed,
        misreport_budget=cfg.misreport_budget,
        jobs=cfg.jobs,
    )


def _print_verdict(verdict, as_json):
    if as_json:
        print(dumps(verdict_to_dict(verdict)))
    else:
        print(Utils.format_verdict(verdict))


def cmd_run(args):
    c = load_profile(args.profile)
    divider = _divider(args)
    if args.json:
        matching = divider.divide(c)
        data = serialize_matching(matching, c.agents, c.objects)
        data['distances'] = [format_rational(d) for d in distances(c, matching)]
        print(dumps(data))
    else:
        print(divider.report(c))
    return EXIT_PASS


def _replay(args):
    with open(args.replay, 'r', encoding='utf-8') as handle:
        recorded = verdict_from_dict(handle.read())
    verdict = replay_verdict(recorded)
    if verdict.result is not recorded.result:
        logger.warning("replayed %s, recorded %s", verdict.result.value, recorded.result.value)
    _print_verdict(verdict, args.json)
    return _EXIT_CODES[verdict.result]


def cmd_check(args):
    if args.replay:
        return _replay(args)
    if args.property is None or args.mechanism is None:
        raise ChanceSplitError("check needs PROPERTY and MECHANISM (or --replay FILE)")
    prop = Property.parse(args.property)

    if args.profile is None:
        cfg = _fuzz_config(args, n=3)
        divider = _divider(args, cfg)
        verdict = divider.fuzz(prop, cfg.n, other=args.other)
    else:
        c = load_profile(args.profile)
        divider = _divider(args, _fuzz_config(args, n=c.n))
        if args.permutation:
            if prop is not Property.ANONYMOUS:
                raise ChanceSplitError("--permutation only applies to anonymity")
            verdict = divider.anonymity(c, Permutation(tuple(int(x) for x in args.permutation.split(','))))
        else:
            misreport = parse_lottery(args.misreport) if args.misreport else None
            verdict = divider.check(prop, c, other=args.other, agent=args.agent, misreport=misreport)
    _print_verdict(verdict, args.json)
    return _EXIT_CODES[verdict.result]


def cmd_fuzz(args):
    cfg = _fuzz_config(args, n=3)
    divider = _divider(args, cfg)
    if args.properties:
        properties = [Property.parse(p) for p in args.properties.split(',')]
    else:
        properties = list(TABLE1_PROPERTIES)
    verdicts = divider.fuzz_all(cfg.n, properties)
    if args.json:
        print(dumps([verdict_to_dict(v) for v in verdicts.values()]))
    else:
        for verdict in verdicts.values():
            print(Utils.format_verdict(verdict))
            print()
    return exit_code(verdicts.values())


def cmd_repro(args):
    report = reproduce_fixture(args.fixture)
    for line in report.lines:
        print(line)
    if report.ok:
        print(f"{args.fixture}: match")
        return EXIT_PASS
    for mismatch in report.mismatches:
        print(f"MISMATCH {mismatch}")
    return EXIT_FAIL


def cmd_gen(args):
    c = random_profile(args.n, args.denominator, args.seed)
    print(dumps(serialize_profile(c)))
    return EXIT_PASS


def cmd_table1(args):
    cfg = _fuzz_config(args, n=3)
    divider = ChanceDivider(
        denominator=cfg.denominator, samples=cfg.samples, seed=cfg.seed,
        misreport_budget=cfg.misreport_budget, jobs=cfg.jobs,
    )
    result = divider.table1(cfg.n)
    if args.json:
        print(dumps({
            'cells': [
                {'mechanism': tag, **verdict_to_dict(verdict)}
                for tag, _, verdict in result.cells
            ],
            'matches_expected': result.matches_expected(),
            'disputed': [
                {'mechanism': tag, 'property': prop.value, 'fixture': DISPUTED_CELLS[(tag, prop)]}
                for tag, prop, _, _ in result.disputed()
            ],
        }))
    else:
        print(Utils.format_table1(result))
    if args.csv:
        Utils.export_to_csv(result.to_frame(), args.csv)
    return EXIT_PASS if result.matches_expected() else EXIT_FAIL


def _add_sequences(parser):
    parser.add_argument('--alpha', help='agent sequence, comma-separated 0-based indices')
    parser.add_argument('--beta', help='object sequence, comma-separated 0-based indices')


def build_parser():
    parser = argparse.ArgumentParser(prog='chance-split', description='Divide chances and test mechanism axioms')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='-v for info, -vv for debug logs')
    parser.add_argument('--seed', type=int, default=None, help='base seed (default: CHANCE_SPLIT_SEED)')
    parser.add_argument('--jobs', type=int, default=None, help='worker processes (default: CHANCE_SPLIT_JOBS)')
    commands = parser.add_subparsers(dest='command', required=True)

    run = commands.add_parser('run', help='run a mechanism on a profile')
    run.add_argument('mechanism', choices=MECHANISM_TAGS)
    run.add_argument('profile', help='profile JSON file or fixture id')
    _add_sequences(run)
    run.add_argument('--json', action='store_true')
    run.set_defaults(handler=cmd_run)

    check = commands.add_parser('check', help='check one property')
    check.add_argument('property', nargs='?', help='sp, pf, rm, nb, ib, ano, ef, we or wnb')
    check.add_argument('mechanism', nargs='?', choices=MECHANISM_TAGS)
    check.add_argument('profile', nargs='?', help='profile JSON file or fixture id; omit to fuzz')
    check.add_argument('--fuzz', help='e.g. n=3,D=6,samples=500,seed=7[,budget=32][,jobs=2]')
    check.add_argument('--other', choices=MECHANISM_TAGS, help='second mechanism for welfare equivalence')
    check.add_argument('--agent', type=int, help='deviating agent (0-based)')
    check.add_argument('--misreport', help='reported lottery, e.g. 1/2,1/4,1/4')
    check.add_argument('--permutation', help='agent relabelling for anonymity, e.g. 1,0,2')
    check.add_argument('--replay', help='verdict JSON file to recompute')
    _add_sequences(check)
    check.add_argument('--json', action='store_true')
    check.set_defaults(handler=cmd_check)

    fuzz = commands.add_parser('fuzz', help='fuzz several properties for one mechanism')
    fuzz.add_argument('mechanism', choices=MECHANISM_TAGS)
    fuzz.add_argument('--properties', help='comma-separated properties (default: all table columns)')
    fuzz.add_argument('--fuzz', help='e.g. n=3,D=6,samples=500,seed=7')
    _add_sequences(fuzz)
    fuzz.add_argument('--json', action='store_true')
    fuzz.set_defaults(handler=cmd_fuzz)

    repro = commands.add_parser('repro', help='reproduce a stored worked instance')
    repro.add_argument('fixture', choices=FIXTURE_IDS)
    repro.set_defaults(handler=cmd_repro)

    gen = commands.add_parser('gen', help='print a random grid profile')
    gen.add_argument('--n', type=int, default=3)
    gen.add_argument('--denominator', '-D', type=int, default=6)
    gen.set_defaults(handler=cmd_gen)

    table1 = commands.add_parser('table1', help='the mechanism/property matrix')
    table1.add_argument('--fuzz', help='e.g. n=3,D=6,samples=500,seed=7')
    table1.add_argument('--csv', help='also export the matrix to this CSV file')
    table1.add_argument('--json', action='store_true')
    table1.set_defaults(handler=cmd_table1)
    return parser


def _configure_logging(verbose):
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = log_level()
    logging.basicConfig(level=level, format='%(asctime)s %(name)s %(levelname)s %(message)s', stream=sys.stderr)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _configure_logging(args.verbose)
        if args.seed is None:
            args.seed = default_seed()
        if args.jobs is None:
            args.jobs = default_jobs()
        return args.handler(args)
    except UnsupportedInstanceError as e:
        print(f"Unsupported: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ChanceSplitError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (OSError, json.JSONDecodeError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
