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
Structural properties every minimum-cost matching has

Each check returns a list of Violation tuples; an empty list means the
property holds. The quadruple checks are exhaustive and meant for small
instances.
"""

import math
from .model import (
    Mode,
    Side,
    Violation,
    min_pair_count,
    validate_matching,
)
from .partition import merged_points


class _Line(object):
    """A matching laid out on the merged line."""

    def __init__(self, instance, matching, mode):
        self.refs = merged_points(instance)
        position = {ref: pos for pos, ref in enumerate(self.refs)}
        self.side = [ref.side for ref in self.refs]
        self.pairs = set()
        degree = [0] * len(self.refs)
        for i, j in matching.pairs:
            p, q = position[(Side.S, i)], position[(Side.T, j)]
            self.pairs.add((min(p, q), max(p, q)))
            degree[p] += 1
            degree[q] += 1
        caps = {side: instance.caps(side, mode) for side in Side}
        self.spare = [degree[pos] < caps[ref.side][ref.index]
                      for pos, ref in enumerate(self.refs)]

    def has(self, p, q):
        return (min(p, q), max(p, q)) in self.pairs

    def describe(self, *positions):
        return ' < '.join(str(self.refs[p]) for p in positions)


def noncrossing_violations(instance, matching):
    """a < b < c < d with a, d on one side, (a, c) and (b, d) matched and
    neither (a, b) nor (c, d) matched."""
    line = _Line(instance, matching, Mode.OMMD)
    violations = []
    for a, c in sorted(line.pairs):
        for b, d in sorted(line.pairs):
            if not a < b < c < d or line.side[a] is not line.side[d]:
                continue
            if not line.has(a, b) and not line.has(c, d):
                violations.append(Violation(
                    'crossing', line.refs[a], line.describe(a, b, c, d)))
    return violations


def long_pair_violations(instance, matching, mode=Mode.OMMD):
    """For a matched (a, d) and a < b < c < d with b on d's side and c on
    a's side, (a, b) or (c, d) is matched. With capacities, only
    quadruples where b and c both have spare capacity are checked."""
    mode = Mode.parse(mode)
    line = _Line(instance, matching, mode)
    violations = []
    for a, d in sorted(line.pairs):
        for b in range(a + 1, d):
            if line.side[b] is not line.side[d] or line.has(a, b):
                continue
            for c in range(b + 1, d):
                if line.side[c] is not line.side[a] or line.has(c, d):
                    continue
                if mode.uses_caps and not (line.spare[b] and line.spare[c]):
                    continue
                violations.append(Violation(
                    'long-pair', line.refs[a], line.describe(a, b, c, d)))
    return violations


def nested_pair_violations(instance, matching, mode=Mode.OMMD):
    """No b' < a < b with b', b on one side, (b', a) matched and (a', b)
    matched for some a' < a on a's side, unless a completing pair is
    present."""
    mode = Mode.parse(mode)
    line = _Line(instance, matching, mode)
    violations = []
    for low, high in sorted(line.pairs):
        # (b', a) = (low, high); look for b > a matched to some a' < a.
        for b, a_prime in ((q, p) for p, q in line.pairs
                           if q > high and p < high and
                           line.side[p] is line.side[high]):
            if a_prime > low:
                complete = line.has(low, a_prime) or line.has(high, b)
            else:
                complete = line.has(a_prime, low) or line.has(high, b)
                if mode.uses_caps and not (line.spare[low] and
                                           line.spare[high]):
                    complete = True
            if not complete:
                violations.append(Violation(
                    'nested-pair', line.refs[high],
                    line.describe(*sorted((low, high, b, a_prime)))))
    return violations


def pair_count_violations(instance, matching):
    required = min_pair_count(instance) if instance.n else 0
    if len(matching) < required:
        return [Violation('pair-count', None, '{} pairs < {}'.format(
            len(matching), required))]
    return []


def monotone_row_violations(state):
    """Cost rows of a sweep that decrease. Every entry adds the cost of a
    cheapest augmenting path, which is never negative."""
    violations = []
    for p, row in sorted(state.cost_table.items()):
        for k in range(1, len(row)):
            if row[k] < row[k - 1]:
                violations.append(Violation(
                    'monotone-row', state.refs[p],
                    'C({}) = {} < C({}) = {}'.format(
                        k, row[k], k - 1, row[k - 1])))
    return violations


def accounting_violations(state, matching):
    """The cost rows of a sweep add up to the cost of its matching."""
    accounted = sum(row[-1] - row[0] for row in state.cost_table.values())
    if math.isclose(accounted, matching.total_cost, rel_tol=1e-9,
                    abs_tol=1e-9):
        return []
    return [Violation('accounting', None,
                      'cost rows add up to {}, the pairs cost {}'.format(
                          accounted, matching.total_cost))]


def check_all(instance, matching, mode=Mode.OMMD):
    mode = Mode.parse(mode)
    violations = list(validate_matching(instance, matching, mode).violations)
    violations.extend(pair_count_violations(instance, matching))
    violations.extend(noncrossing_violations(instance, matching))
    violations.extend(long_pair_violations(instance, matching, mode))
    violations.extend(nested_pair_violations(instance, matching, mode))
    return violations
