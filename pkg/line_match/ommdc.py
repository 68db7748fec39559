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
The block sweep with per-point capacity ceilings

A point at capacity offers no room to the residual search, so every path
the sweep applies respects the capacities by itself. On top of that, Step 1
keeps scanning past the partners of a saturated predecessor, and Step 3
counts the paths that make room at a full point by releasing one of its
partners.
"""

from logbook import Logger
from .model import (
    InfeasibleCapacityError,
    Mode,
    Side,
    check_demand_feasibility,
)
from .ommd import OMMDSolver, step1, step1_scan, step2, step3
from .oracle import FlowNetwork

log = Logger('OMMDCSolver')


class CapacityCursor(object):
    """Remaining capacity Cap(p) - deg(p) of every point of a sweep."""

    def __init__(self, state):
        self.state = state

    def __getitem__(self, p):
        remaining = self.state.cap[p] - self.state.deg(p)
        if remaining < 0:
            raise ValueError('{} is over capacity by {}'.format(
                self.state.refs[p], -remaining))
        return remaining

    def closed(self, p):
        return self[p] == 0


def saturated_scan(state, part, w, i):
    """Step 1's scan set, extended below M(b_i-1, Cap(b_i-1)) when b_i-1
    is at capacity: every point on that partner's side left of it."""
    scanned = step1_scan(state, part, w, i)
    if i == 0:
        return scanned
    previous = state.block(part, w + 1)[i - 1]
    if not CapacityCursor(state).closed(previous):
        return scanned
    lefts = state.left_partners(previous)
    if not lefts:
        return scanned
    smallest = min(lefts)
    side = state.side[smallest]
    log.debug('Step 1: {} is saturated, scanning below {} for {}'.format(
        state.refs[previous], state.refs[smallest],
        state.refs[state.block(part, w + 1)[i]]))
    return lambda p: scanned(p) or (p < smallest and state.side[p] is side)


def step1_capacitated(state, part, w, i):
    return step1(state, part, w, i, scan=saturated_scan)


def step3_capacitated(state, part, w, b):
    cursor = CapacityCursor(state)

    def accept(path):
        if len(path) > 2 and cursor.closed(path[1]):
            state.stats['capacity_releases'] += 1
        return True

    return step3(state, part, w, b, accept=accept)


def degree_bounds_feasible(instance, mode=Mode.OMMDC):
    """Cut condition of the degree-bounded bipartite graph: for every k,
    the k largest demands of one side fit into sum(min(cap, k)) over the
    other side."""
    for side in Side:
        demands = sorted(instance.demands(side), reverse=True)
        caps = sorted(instance.caps(side.other, mode))
        below, small = 0, 0
        total = 0
        for k, demand in enumerate(demands, 1):
            total += demand
            while small < len(caps) and caps[small] < k:
                below += caps[small]
                small += 1
            if total > below + k * (len(caps) - small):
                return False
    return True


def feasibility_flow_check(instance, full_limit=65536):
    if instance.n == 0:
        return True
    for side in Side:
        if max(instance.demands(side), default=0) > instance.size(side.other):
            return False
    if instance.y * instance.z > full_limit:
        return degree_bounds_feasible(instance)
    return FlowNetwork.for_instance(instance, Mode.OMMDC).feasible()


class OMMDCSolver(OMMDSolver):
    name = 'ommdc'
    mode = Mode.OMMDC
    steps = (step1_capacitated, step2, step3_capacitated)

    def check_feasible(self, instance):
        check_demand_feasibility(instance)
        if not feasibility_flow_check(instance, self.flow_check_limit):
            raise InfeasibleCapacityError(
                'No matching meets every demand within the capacities '
                '(cap_s={}, cap_t={})'.format(
                    list(instance.caps(Side.S)), list(instance.caps(Side.T))))


def solve_ommdc(instance, **kwargs):
    matching = OMMDCSolver(**kwargs).solve(instance)
    return matching, matching.total_cost
