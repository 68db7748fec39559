#!/usr/bin/env python

# Copyright 2026 The line_match authors
#
# Licensed under the Apache License, Version 2.0 (the "License"); you
# may not use this file except in compliance with the License.  You
# may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
# implied.  See the License for the specific language governing
# permissions and limitations under the License.

"""
line_match CLI
"""

import argparse
from .bench import parse_sizes, render, run_bench
from .config import load_config, log_handler, solver_options
from .files import (
    instance_digest,
    read_instance,
    read_result,
    write_result,
)
from .fuzz import run_campaign
from logbook import Logger
from .model import (
    ConfigError,
    InfeasibleError,
    InstanceError,
    LineMatchError,
    Mode,
    SizeGuardExceededError,
    matching_cost,
    validate_matching,
)
from .ommd import OMMDSolver
from .ommdc import OMMDCSolver
from .oracle import ExhaustiveOracle, FlowOracle
import os
import sys

config_file = '~/.linematch.ini'

log = Logger('linematch')

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_COUNTEREXAMPLE = 3

solvers = {solver.name: solver for solver in
           (OMMDSolver, OMMDCSolver, FlowOracle, ExhaustiveOracle)}


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, '{}: error: {}\n'.format(self.prog, message))


def sizes(text):
    try:
        return parse_sizes(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(
            'must be a positive integer, got {}'.format(text))
    return value


def parse_args(args, config):
    common_parser = ArgumentParser(add_help=False)
    verbosity = common_parser.add_mutually_exclusive_group()
    verbosity.add_argument('--verbose', dest='level', action='store_const',
                           const='INFO', help='Log progress')
    verbosity.add_argument('--debug', dest='level', action='store_const',
                           const='DEBUG', help='Log every solver step')

    mode_parser = ArgumentParser(add_help=False)
    mode_parser.add_argument('--mode', action='store',
                             choices=[mode.value for mode in Mode],
                             help='Default: ommdc if the instance has '
                             'capacities, ommd otherwise')

    parser = ArgumentParser(description='Minimum-cost many-to-many matching '
                            'on the line')
    parser.add_argument('--config', action='store', default=None,
                        help='Config file (default {})'.format(config_file))
    subparsers = parser.add_subparsers()

    solve_parser = subparsers.add_parser(
        'solve', help='Solve an instance file',
        parents=[common_parser, mode_parser])
    solve_parser.add_argument('--input', action='store', required=True)
    solve_parser.add_argument('--output', action='store',
                              help='Result file (default stdout)')
    solve_parser.set_defaults(func=handle_solve)

    verify_parser = subparsers.add_parser(
        'verify', help='Check a result file against its instance',
        parents=[common_parser, mode_parser])
    verify_parser.add_argument('--input', action='store', required=True)
    verify_parser.add_argument('--result', action='store', required=True)
    verify_parser.set_defaults(func=handle_verify)

    oracle_parser = subparsers.add_parser(
        'oracle', help='Solve an instance file exactly',
        parents=[common_parser, mode_parser])
    oracle_parser.add_argument('--input', action='store', required=True)
    oracle_parser.add_argument('--output', action='store',
                               help='Result file (default stdout)')
    oracle_parser.add_argument('--solver', action='store',
                               choices=('oracle', 'exhaustive'),
                               default='oracle')
    oracle_parser.set_defaults(func=handle_oracle)

    fuzz_parser = subparsers.add_parser(
        'fuzz', help='Compare the solver with the oracle on random '
        'instances', parents=[common_parser])
    fuzz_parser.add_argument('--count', action='store', type=int,
                             default=100)
    fuzz_parser.add_argument('--seed', action='store', type=int, default=0)
    fuzz_parser.add_argument('--max-n', action='store', type=int, default=8)
    fuzz_parser.add_argument('--mode', action='store',
                             choices=[mode.value for mode in Mode],
                             default=Mode.OMMD.value)
    fuzz_parser.add_argument('--jobs', action='store', type=positive,
                             default=config['fuzz']['jobs'])
    fuzz_parser.add_argument('--dump-dir', action='store',
                             default=config['fuzz']['dump_dir'],
                             help='Where counterexamples are written '
                             '(default {})'.format(config['fuzz']['dump_dir']))
    fuzz_parser.set_defaults(func=handle_fuzz)

    bench_parser = subparsers.add_parser(
        'bench', help='Time the solver on growing instances',
        parents=[common_parser])
    bench_parser.add_argument('--sizes', action='store', type=sizes,
                              default=[2000, 4000, 8000],
                              help='Comma-separated ascending sizes')
    bench_parser.add_argument('--reps', action='store', type=positive,
                              default=3)
    bench_parser.add_argument('--mode', action='store',
                              choices=[mode.value for mode in Mode],
                              default=Mode.OMMD.value)
    bench_parser.add_argument('--seed', action='store', type=int, default=0)
    bench_parser.set_defaults(func=handle_bench)

    args = parser.parse_args(args)

    if 'func' not in args:
        parser.error("No command specified")

    return args


def config_path(args, default):
    for index, arg in enumerate(args):
        if arg == '--config' and index + 1 < len(args):
            return args[index + 1]
        if arg.startswith('--config='):
            return arg.split('=', 1)[1]
    return default


def doit(args, config_file):
    try:
        config = load_config(os.path.expanduser(config_path(args,
                                                            config_file)))
    except ConfigError as e:
        sys.stderr.write('{}\n'.format(e))
        return EXIT_USAGE
    args = parse_args(args, config)
    try:
        handler = log_handler(config, args.level)
    except ConfigError as e:
        sys.stderr.write('{}\n'.format(e))
        return EXIT_USAGE
    with handler.applicationbound():
        return args.func(args, config)


def fail(status, error):
    sys.stderr.write('{}\n'.format(error))
    return status


def resolve_mode(args, instance, default=None):
    if args.mode:
        return Mode.parse(args.mode)
    if default:
        return Mode.parse(default)
    return Mode.OMMDC if instance.has_caps else Mode.OMMD


def emit(args, instance, matching, mode, solver):
    text = write_result(args.output, instance, matching, mode, solver.name)
    if args.output is None:
        sys.stdout.write(text)
    log.info('{} found {} pairs at cost {}'.format(
        solver.name, len(matching), matching.total_cost))


def handle_solve(args, config):
    try:
        instance = read_instance(args.input)
    except (InstanceError, OSError) as e:
        return fail(EXIT_USAGE, e)
    mode = resolve_mode(args, instance)
    solver = solvers[mode.value](**solver_options(config))
    try:
        matching = solver.solve(instance)
    except InfeasibleError as e:
        return fail(EXIT_INFEASIBLE, e)
    emit(args, instance, matching, mode, solver)
    return EXIT_OK


def handle_oracle(args, config):
    try:
        instance = read_instance(args.input)
    except (InstanceError, OSError) as e:
        return fail(EXIT_USAGE, e)
    mode = resolve_mode(args, instance)
    if args.solver == 'oracle':
        solver = FlowOracle(mode, config['oracle']['guard'])
    else:
        solver = ExhaustiveOracle(mode)
    try:
        matching = solver.solve(instance)
    except SizeGuardExceededError as e:
        return fail(EXIT_USAGE, e)
    except InfeasibleError as e:
        return fail(EXIT_INFEASIBLE, e)
    emit(args, instance, matching, mode, solver)
    return EXIT_OK


def handle_verify(args, config):
    try:
        instance = read_instance(args.input)
        matching, document = read_result(args.result, instance)
    except (LineMatchError, OSError) as e:
        return fail(EXIT_USAGE, e)
    if document.get('mode') not in (None,) + tuple(m.value for m in Mode):
        return fail(EXIT_USAGE, 'Unknown mode {!r} in {}'.format(
            document['mode'], args.result))
    mode = resolve_mode(args, instance, document.get('mode'))

    report = validate_matching(instance, matching, mode)
    if not report.feasible:
        return fail(EXIT_INFEASIBLE, 'Infeasible in mode {}: {}'.format(
            mode.value, report))
    cost = matching_cost(instance, matching)
    if cost != matching.total_cost:
        return fail(EXIT_INFEASIBLE, 'Recorded cost {} != recomputed cost '
                    '{}'.format(matching.total_cost, cost))
    digest = document.get('instance_digest')
    if digest is not None and digest != instance_digest(instance):
        return fail(EXIT_INFEASIBLE, '{} was not computed for {}'.format(
            args.result, args.input))
    print('OK: {} pairs, cost {}, mode {}'.format(len(matching), cost,
                                                  mode.value))
    return EXIT_OK


def handle_fuzz(args, config):
    guard = config['oracle']['guard']
    try:
        report = run_campaign(args.count, args.seed, args.max_n, args.mode,
                              guard=guard, jobs=args.jobs,
                              dump_dir=args.dump_dir,
                              solver_options=solver_options(config))
    except (SizeGuardExceededError, ValueError) as e:
        return fail(EXIT_USAGE, e)
    print(report)
    if report.mismatches:
        first = report.mismatches[0]
        sys.stderr.write(
            'Counterexample: reproduce with --seed {} --count {} --max-n {} '
            '--mode {} (instance #{}); dumped to {}\n'.format(
                args.seed, args.count, args.max_n, args.mode, first.index,
                args.dump_dir))
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


def handle_bench(args, config):
    rows = run_bench(args.sizes, args.reps, args.mode, args.seed,
                     solver_options(config))
    if rows:
        print('size\tmedian_ns\tratio')
        print(render(rows))
    return EXIT_OK


def main():  # pragma: no cover
    sys.exit(doit(sys.argv[1:], config_file))


if __name__ == '__main__':  # pragma: no cover
    main()
