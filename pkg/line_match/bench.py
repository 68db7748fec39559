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
Wall-clock scaling of the sweep solvers
"""

from collections import namedtuple
from logbook import Logger
from .model import Instance, Mode
from .ommd import OMMDSolver
from .ommdc import OMMDCSolver
import random
import statistics
import time

log = Logger('Bench')

BenchRow = namedtuple('BenchRow', ['size', 'median_ns', 'ratio'])


def parse_sizes(text):
    """Comma-separated ascending sizes; an empty string is no sizes."""
    sizes = [int(part) for part in text.split(',') if part.strip()]
    for size in sizes:
        if size < 2:
            raise ValueError('Sizes must be at least 2, got {}'.format(size))
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError('Sizes must be ascending: {}'.format(text))
    return sizes


def bench_instance(n, rng, mode=Mode.OMMD):
    """Unit demands on n randomly interleaved points, half of them on each
    side; capacities of 3 with capacities."""
    sides = [True] * (n // 2) + [False] * (n - n // 2)
    rng.shuffle(sides)
    coords = sorted(rng.sample(range(4 * n), n))
    s = [x for x, on_s in zip(coords, sides) if on_s]
    t = [x for x, on_s in zip(coords, sides) if not on_s]
    caps = Mode.parse(mode).uses_caps
    return Instance(s, t, [1] * len(s), [1] * len(t),
                    [3] * len(s) if caps else None,
                    [3] * len(t) if caps else None)


def render(rows):
    lines = []
    for row in rows:
        ratio = '-' if row.ratio is None else '{:.3f}'.format(row.ratio)
        lines.append('{}\t{}\t{}'.format(row.size, row.median_ns, ratio))
    return '\n'.join(lines)


def run_bench(sizes, reps=3, mode=Mode.OMMD, seed=0, solver_options=None):
    mode = Mode.parse(mode)
    solver_class = OMMDCSolver if mode.uses_caps else OMMDSolver
    rng = random.Random(seed)
    rows = []
    for size in sizes:
        instance = bench_instance(size, rng, mode)
        timings = []
        for _ in range(max(1, reps)):
            solver = solver_class(**(solver_options or {}))
            started = time.perf_counter_ns()
            solver.solve(instance)
            timings.append(time.perf_counter_ns() - started)
        median = int(statistics.median(timings))
        ratio = median / rows[-1].median_ns if rows and \
            rows[-1].median_ns else None
        rows.append(BenchRow(size, median, ratio))
        log.info('n={} median {} ns over {} runs'.format(size, median,
                                                          len(timings)))
    return rows
