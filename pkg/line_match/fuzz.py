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
Seeded differential testing of the sweep solvers against the exact oracle
"""

from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor
from .files import instance_document, write_instance
from .invariants import (
    accounting_violations,
    check_all,
    monotone_row_violations,
)
import json
from logbook import Logger
from .model import (
    InfeasibleError,
    Instance,
    Mode,
    SizeGuardExceededError,
    validate_instance,
)
from .ommd import OMMDSolver
from .ommdc import OMMDCSolver
from .oracle import oracle_solve
import os
import random

log = Logger('Fuzz')

COORDINATE_RANGE = range(0, 101)
MAX_DEMAND = 3
CAP_SLACK = 2

Outcome = namedtuple('Outcome', ['index', 'matched', 'solver', 'oracle',
                                 'detail'])


class FuzzReport(namedtuple('FuzzReport', ['total', 'outcomes'])):
    __slots__ = ()

    @property
    def mismatches(self):
        return [outcome for outcome in self.outcomes if not outcome.matched]

    @property
    def matched(self):
        return self.total - len(self.mismatches)

    def __str__(self):
        return '{}/{} matched'.format(self.matched, self.total)


def random_instance(rng, max_n, mode=Mode.OMMD):
    """Distinct integer coordinates in [0, 100]; demands in 1..min(3, size
    of the other side); capacities in demand..demand+2 with capacities."""
    if max_n < 2:
        raise ValueError('max_n must be at least 2, got {}'.format(max_n))
    n = rng.randint(2, min(max_n, len(COORDINATE_RANGE)))
    y = rng.randint(1, n - 1)
    z = n - y
    coords = rng.sample(COORDINATE_RANGE, n)
    alpha = [rng.randint(1, min(MAX_DEMAND, z)) for _ in range(y)]
    beta = [rng.randint(1, min(MAX_DEMAND, y)) for _ in range(z)]
    cap_s = cap_t = None
    if Mode.parse(mode).uses_caps:
        cap_s = [rng.randint(d, d + CAP_SLACK) for d in alpha]
        cap_t = [rng.randint(d, d + CAP_SLACK) for d in beta]
    return Instance(coords[:y], coords[y:], alpha, beta, cap_s, cap_t)


def generate_instances(count, seed, max_n, mode=Mode.OMMD):
    rng = random.Random(seed)
    return [random_instance(rng, max_n, mode) for _ in range(count)]


def _run(solve):
    try:
        matching = solve()
    except InfeasibleError as e:
        return None, type(e).__name__
    return matching, matching.total_cost


def evaluate(index, raw, mode, guard=None, solver_options=None):
    """Solve one instance with the sweep solver and the oracle and compare
    costs, infeasibility verdicts and output invariants."""
    mode = Mode.parse(mode)
    instance = validate_instance(raw)
    solver = (OMMDCSolver if mode.uses_caps else OMMDSolver)(
        **(solver_options or {}))
    matching, solver_result = _run(lambda: solver.solve(instance))
    _, oracle_result = _run(
        lambda: oracle_solve(instance, mode, guard)[0])

    if solver_result != oracle_result:
        return Outcome(index, False, solver_result, oracle_result,
                       'solver and oracle disagree')
    if matching is not None:
        violations = check_all(instance, matching, mode)
        violations.extend(monotone_row_violations(solver.state))
        violations.extend(accounting_violations(solver.state, matching))
        if violations:
            return Outcome(index, False, solver_result, oracle_result,
                           '; '.join('{} {}: {}'.format(*v)
                                     for v in violations))
    return Outcome(index, True, solver_result, oracle_result, None)


def _evaluate(job):
    index, raw, mode, guard, solver_options = job
    try:
        return evaluate(index, raw, mode, guard, solver_options)
    except Exception as e:
        log.exception('Instance {} failed'.format(index))
        return Outcome(index, False, None, None,
                       '{}: {}'.format(type(e).__name__, e))


def dump_mismatch(dump_dir, seed, instance, outcome):
    os.makedirs(dump_dir, exist_ok=True)
    stem = os.path.join(dump_dir, 'seed{}-{}'.format(seed, outcome.index))
    write_instance(stem + '.json', instance)
    with open(stem + '.txt', 'w') as f:
        f.write('{}\n'.format(json.dumps({
            'solver': str(outcome.solver),
            'oracle': str(outcome.oracle),
            'detail': outcome.detail,
            'instance': instance_document(instance),
        }, sort_keys=True)))
    return stem + '.json'


def run_campaign(count, seed, max_n, mode=Mode.OMMD, guard=None, jobs=1,
                 dump_dir=None, solver_options=None):
    mode = Mode.parse(mode)
    if guard is not None and max_n > guard:
        raise SizeGuardExceededError(
            'max_n {} exceeds the oracle guard {}'.format(max_n, guard))

    instances = generate_instances(count, seed, max_n, mode)
    jobs_list = [(index, instance, mode, guard, solver_options)
                 for index, instance in enumerate(instances)]
    if jobs > 1 and count > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            outcomes = list(executor.map(_evaluate, jobs_list,
                                         chunksize=max(1, count // jobs)))
    else:
        outcomes = [_evaluate(job) for job in jobs_list]

    report = FuzzReport(count, outcomes)
    for outcome in report.mismatches:
        log.warning('Counterexample #{} (seed {}): solver {}, oracle {}: '
                    '{}'.format(outcome.index, seed, outcome.solver,
                                outcome.oracle, outcome.detail))
        if dump_dir:
            dump_mismatch(dump_dir, seed, instances[outcome.index], outcome)
    log.info('Fuzzed {} instances in mode {}: {}'.format(
        count, mode.value, report))
    return report
