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
Exact reference solvers

`oracle_solve` computes a minimum-cost circulation with lower bounds on the
complete bipartite network, handing the lower-bound-free network to
OR-Tools' SimpleMinCostFlow; `exhaustive_solve` enumerates pair subsets
and exists to check the former. Neither shares code with the sweep
solvers.
"""

from .abstract_solver import AbstractSolver
from .config import oracle_guard
from fractions import Fraction
from logbook import Logger
from math import gcd
from .model import (
    InfeasibleCapacityError,
    InfeasibleDemandError,
    LineMatchError,
    Matching,
    Mode,
    Side,
    SizeGuardExceededError,
)
import numpy as np
from ortools.graph.python import min_cost_flow

log = Logger('Oracle')

EXHAUSTIVE_PAIR_LIMIT = 20
INFINITY = float('inf')
# SimpleMinCostFlow works in 64-bit integers.
COST_LIMIT = 2 ** 62


class Arc(object):
    __slots__ = ('tail', 'head', 'lower', 'upper', 'cost', 'flow')

    def __init__(self, tail, head, lower, upper, cost):
        self.tail = tail
        self.head = head
        self.lower = lower
        self.upper = upper
        self.cost = cost
        self.flow = 0

    def __repr__(self):
        return 'Arc({} -> {}, [{}, {}], cost {}, flow {})'.format(
            self.tail, self.head, self.lower, self.upper, self.cost,
            self.flow)


def integer_costs(costs, volume):
    """`costs` scaled by one common factor to exact integers. `volume`
    bounds the total flow, and the scaled total must fit the solver."""
    fractions = [Fraction(cost) for cost in costs]
    scale = 1
    for fraction in fractions:
        scale = scale * fraction.denominator // gcd(scale,
                                                    fraction.denominator)
    scaled = [int(fraction * scale) for fraction in fractions]
    if max(map(abs, scaled), default=0) * max(volume, 1) > COST_LIMIT:
        raise SizeGuardExceededError(
            'Costs scaled by {} overflow the flow solver'.format(scale))
    return scaled


class FlowNetwork(object):
    """A network with lower and upper bounds on its arcs."""

    def __init__(self, nodes):
        self.nodes = nodes
        self.arcs = []
        self.cross = {}

    def add_arc(self, tail, head, lower=0, upper=INFINITY, cost=0):
        if lower > upper:
            raise ValueError('Arc {} -> {} has lower bound {} > upper bound '
                             '{}'.format(tail, head, lower, upper))
        self.arcs.append(Arc(tail, head, lower, upper, cost))
        return len(self.arcs) - 1

    @classmethod
    def for_instance(cls, instance, mode=Mode.OMMD):
        """source -> s_i [alpha_i, cap_i], s_i -> t_j [0, 1] at cost
        |s_i - t_j|, t_j -> sink [beta_j, cap_j], sink -> source."""
        y, z = instance.y, instance.z
        network = cls(y + z + 2)
        network.source, network.sink = y + z, y + z + 1
        s_caps = instance.caps(Side.S, mode)
        t_caps = instance.caps(Side.T, mode)
        for i in range(y):
            network.add_arc(network.source, i, instance.s_demands[i],
                            min(s_caps[i], z))
        for i, x in enumerate(instance.s_coords):
            for j, t in enumerate(instance.t_coords):
                network.cross[(i, j)] = network.add_arc(i, y + j, 0, 1,
                                                        abs(x - t))
        for j in range(z):
            network.add_arc(y + j, network.sink, instance.t_demands[j],
                            min(t_caps[j], y))
        network.add_arc(network.sink, network.source, 0, max(y * z, 1))
        return network

    def _solve(self, priced):
        """Moves the lower bounds into node supplies and solves what is
        left. Returns whether a circulation exists; arc flows are left on
        the arcs."""
        if not self.arcs:
            return True
        finite = sum(arc.upper for arc in self.arcs if arc.upper < INFINITY)
        supplies = [0] * self.nodes
        for arc in self.arcs:
            supplies[arc.tail] -= arc.lower
            supplies[arc.head] += arc.lower
        capacities = [(arc.upper if arc.upper < INFINITY else finite) -
                      arc.lower for arc in self.arcs]
        if priced:
            costs = integer_costs([arc.cost for arc in self.arcs], finite)
        else:
            costs = [0] * len(self.arcs)

        smcf = min_cost_flow.SimpleMinCostFlow()
        smcf.add_arcs_with_capacity_and_unit_cost(
            np.array([arc.tail for arc in self.arcs]),
            np.array([arc.head for arc in self.arcs]),
            np.array(capacities), np.array(costs))
        for node, supply in enumerate(supplies):
            smcf.set_node_supply(node, supply)
        status = smcf.solve()
        if status == smcf.INFEASIBLE:
            return False
        if status != smcf.OPTIMAL:
            raise LineMatchError(
                'Min-cost flow solver failed with status {}'.format(status))
        for k, arc in enumerate(self.arcs):
            arc.flow = arc.lower + smcf.flow(k)
        return True

    def feasible(self):
        return self._solve(priced=False)

    def min_cost_circulation(self):
        """Returns (feasible, cost); arc flows are left on the arcs."""
        if not self._solve(priced=True):
            return False, None
        return True, sum(arc.flow * arc.cost for arc in self.arcs)

    def conservation_violations(self):
        balance = [0] * self.nodes
        violations = []
        for arc in self.arcs:
            if not arc.lower <= arc.flow <= arc.upper:
                violations.append('{} flow outside its bounds'.format(arc))
            balance[arc.head] += arc.flow
            balance[arc.tail] -= arc.flow
        for node, amount in enumerate(balance):
            if amount:
                violations.append('node {} has imbalance {}'.format(
                    node, amount))
        return violations

    def pairs(self):
        return [pair for pair, k in self.cross.items()
                if self.arcs[k].flow == 1]


def _overdemanded(instance):
    for side in Side:
        available = instance.size(side.other)
        if any(demand > available for demand in instance.demands(side)):
            return side, available
    return None


def _infeasible(instance, mode):
    overdemanded = _overdemanded(instance)
    if overdemanded:
        side, available = overdemanded
        return InfeasibleDemandError(
            'A {}-point demands more than the {} points of the other '
            'side'.format(side.value, available))
    if Mode.parse(mode).uses_caps:
        return InfeasibleCapacityError(
            'No matching meets every demand within the capacities')
    return InfeasibleDemandError('No matching meets every demand')


def oracle_solve(instance, mode=Mode.OMMD, guard=None):
    mode = Mode.parse(mode)
    if guard is None:
        guard = oracle_guard()
    if instance.n > guard:
        raise SizeGuardExceededError(
            'The oracle handles at most {} points, got {}'.format(
                guard, instance.n))
    if instance.n == 0:
        return Matching(()), 0
    if _overdemanded(instance):
        raise _infeasible(instance, mode)

    network = FlowNetwork.for_instance(instance, mode)
    feasible, cost = network.min_cost_circulation()
    if not feasible:
        raise _infeasible(instance, mode)
    matching = Matching.from_pairs(instance, network.pairs())
    log.debug('Oracle solved {} points in mode {}: cost {}'.format(
        instance.n, mode.value, matching.total_cost))
    return matching, matching.total_cost


def exhaustive_solve(instance, mode=Mode.OMMD):
    """Branch and bound over the pairs of S x T in lexicographic order.
    Among optimal matchings, the lexicographically smallest pair list
    wins."""
    mode = Mode.parse(mode)
    y, z = instance.y, instance.z
    if y * z > EXHAUSTIVE_PAIR_LIMIT:
        raise SizeGuardExceededError(
            'Exhaustive search handles at most {} candidate pairs, got '
            '{}'.format(EXHAUSTIVE_PAIR_LIMIT, y * z))
    if instance.n == 0:
        return Matching(()), 0

    candidates = [(i, j) for i in range(y) for j in range(z)]
    alpha, beta = instance.s_demands, instance.t_demands
    s_caps, t_caps = instance.caps(Side.S, mode), instance.caps(Side.T, mode)
    s_degree, t_degree = [0] * y, [0] * z
    s_left, t_left = [z] * y, [y] * z
    chosen = []
    best = {}

    def visit(k, cost):
        if best and cost > best['cost']:
            return
        if k == len(candidates):
            if all(d >= a for d, a in zip(s_degree, alpha)) and \
               all(d >= b for d, b in zip(t_degree, beta)):
                key = (cost, tuple(chosen))
                if not best or key < (best['cost'], best['pairs']):
                    best['cost'], best['pairs'] = key
            return
        i, j = candidates[k]
        s_left[i] -= 1
        t_left[j] -= 1
        if s_degree[i] < s_caps[i] and t_degree[j] < t_caps[j]:
            s_degree[i] += 1
            t_degree[j] += 1
            chosen.append((i, j))
            visit(k + 1, cost + abs(instance.s_coords[i] -
                                    instance.t_coords[j]))
            chosen.pop()
            s_degree[i] -= 1
            t_degree[j] -= 1
        if s_degree[i] + s_left[i] >= alpha[i] and \
           t_degree[j] + t_left[j] >= beta[j]:
            visit(k + 1, cost)
        s_left[i] += 1
        t_left[j] += 1

    visit(0, 0)
    if not best:
        raise _infeasible(instance, mode)
    matching = Matching.from_pairs(instance, best['pairs'])
    return matching, matching.total_cost


class FlowOracle(AbstractSolver):
    name = 'oracle'

    def __init__(self, mode=Mode.OMMD, guard=None):
        self.mode = Mode.parse(mode)
        self.guard = guard

    def solve(self, instance):
        return oracle_solve(instance, self.mode, self.guard)[0]


class ExhaustiveOracle(AbstractSolver):
    name = 'exhaustive'

    def __init__(self, mode=Mode.OMMD):
        self.mode = Mode.parse(mode)

    def solve(self, instance):
        return exhaustive_solve(instance, self.mode)[0]
