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
Three-step block sweep for minimum-cost many-to-many matching with demands

The sweep walks consecutive block pairs (A_w, A_w+1) left to right. Every
point b of A_w+1 is served one demand at a time by the cheapest augmenting
path of the residual network (see the residual module). The steps decide
which paths they own:

* Step 1 pairs b with a point of the scan set (A_w for the first point of
  a block, the smaller partners of the previous point otherwise), possibly
  taking that point over from its current partner.
* Step 2 borrows a partner from a surplus point of b's own block, or pairs
  b with a point that already has more partners than it needs.
* Step 3 takes whatever path is cheapest, however long.

Points of the first block, and any demand a step had to leave, are served
by a final pass once the sweep is over.
"""

from .abstract_solver import AbstractSolver
from collections import Counter, defaultdict
from logbook import Logger
from .model import (
    ExhaustedSupplyError,
    InternalNonterminationError,
    Matching,
    Mode,
    PointRef,
    Side,
    check_demand_feasibility,
)
from .partition import partition
from .residual import ResidualPaths

log = Logger('OMMDSolver')


class SolverState(object):
    """Working state of one sweep.

    Points are addressed by their position on the merged line, 0 being the
    leftmost point. `matched_lists[p]` holds p's partners in the order they
    were acquired, so `matched_lists[p][k - 1]` is M(p, k). `cost_table[p]`
    is the row C(p, 0), C(p, 1), ...: each entry adds the cost of the path
    that served p's next demand to the one before.
    `lower[p]` is zero until the sweep reaches p and then follows p's
    degree up to its demand.
    """

    def __init__(self, instance, part, mode=Mode.OMMD):
        self.instance = instance
        self.mode = Mode.parse(mode)
        refs = part.points()
        self.refs = refs
        self.position = {ref: pos for pos, ref in enumerate(refs)}
        self.coord = [instance.coordinate(ref) for ref in refs]
        self.side = [ref.side for ref in refs]
        self.demand = [instance.demands(ref.side)[ref.index] for ref in refs]
        caps = {side: instance.caps(side, self.mode) for side in Side}
        self.cap = [caps[ref.side][ref.index] for ref in refs]

        self.cost_table = {}
        self.matched_lists = [[] for _ in refs]
        self.pairs = {}
        self.lower = [0] * len(refs)
        self.entered = [False] * len(refs)
        self.surplus_lists = defaultdict(list)
        self.stats = Counter()
        self.version = 0
        self.residual = ResidualPaths(self)
        self._cached = None
        self._blocks = {}

    def block(self, part, w):
        try:
            return self._blocks[w]
        except KeyError:
            block = part[w]
            positions = [self.position[PointRef(block.side, index)]
                         for index in block.indices]
            self._blocks[w] = positions
            return positions

    @staticmethod
    def _key(p, q):
        return (p, q) if p < q else (q, p)

    def has_pair(self, p, q):
        return self._key(p, q) in self.pairs

    def deg(self, p):
        return len(self.matched_lists[p])

    def deficient(self, p):
        return self.deg(p) < self.demand[p]

    def surplus(self, p):
        return self.deg(p) > self.demand[p]

    def has_room(self, p):
        return self.deg(p) < self.cap[p]

    def can_release(self, p):
        """Whether p may lose a partner without breaking its lower
        bound."""
        return self.deg(p) > self.lower[p]

    def distance(self, p, q):
        return abs(self.coord[p] - self.coord[q])

    def left_partners(self, p):
        return [q for q in self.matched_lists[p] if q < p]

    def add_pair(self, p, q):
        if self.side[p] is self.side[q]:
            raise ValueError('Cannot pair {} with {}: same side'.format(
                self.refs[p], self.refs[q]))
        if self.has_pair(p, q):
            raise ValueError('Pair {} - {} already present'.format(
                self.refs[p], self.refs[q]))
        for point in (p, q):
            if not self.has_room(point):
                raise ValueError('{} is at capacity {}'.format(
                    self.refs[point], self.cap[point]))
        self.pairs[self._key(p, q)] = None
        self.matched_lists[p].append(q)
        self.matched_lists[q].append(p)
        self.version += 1

    def remove_pair(self, p, q):
        del self.pairs[self._key(p, q)]
        self.matched_lists[p].remove(q)
        self.matched_lists[q].remove(p)
        self.version += 1

    def enter(self, p):
        """The sweep reaches p: its lower bound rises to what it already
        has, at most its demand."""
        self.entered[p] = True
        self.lower[p] = min(self.demand[p], self.deg(p))
        self.open_row(p)

    def open_row(self, p):
        """Start the cost row of p if it has none yet.

        C(b_i, 0) = C(b_i-1, deg(b_i-1)) and C(b_1, 0) = C(a_s, deg(a_s)):
        in both cases the point immediately to the left on the line. Rows
        of points with no row to their left start at zero."""
        if p not in self.cost_table:
            previous = self.cost_table.get(p - 1)
            self.cost_table[p] = [previous[-1] if previous else 0]
        return self.cost_table[p]

    def charge(self, p, increment):
        row = self.open_row(p)
        row.append(row[-1] + increment)

    def shortest_path(self, b):
        """The residual module's cheapest path for b, remembered until the
        matching changes."""
        key = (b, self.version)
        if self._cached is None or self._cached[0] != key:
            self._cached = (key, self.residual.shortest_path(b))
        return self._cached[1]

    def path_cost(self, path):
        return sum(self.distance(p, q) if k % 2 == 0 else
                   -self.distance(p, q)
                   for k, (p, q) in enumerate(zip(path, path[1:])))

    def augment(self, path):
        """Apply a path from shortest_path: b gains a partner and its lower
        bound follows."""
        b = path[0]
        cost = self.path_cost(path)
        hops = list(zip(path, path[1:]))
        for p, q in hops[1::2]:
            self.remove_pair(p, q)
        for p, q in hops[::2]:
            self.add_pair(p, q)
        if self.entered[b]:
            self.lower[b] = min(self.demand[b], self.deg(b))
        self.charge(b, cost)
        self.stats['augmentations'] += 1
        log.debug('{} gains {} along {} points at cost {}'.format(
            self.refs[b], self.refs[path[1]], len(path), cost))
        return cost

    def deficiency(self):
        return sum(max(0, demand - len(partners))
                   for demand, partners in zip(self.demand,
                                               self.matched_lists))

    def index_pairs(self):
        """Pairs as (s_index, t_index), in acquisition order."""
        result = []
        for p, q in self.pairs:
            if self.side[p] is Side.T:
                p, q = q, p
            result.append((self.refs[p].index, self.refs[q].index))
        return result

    def matching(self):
        return Matching.from_pairs(self.instance, self.index_pairs())

    def dump(self):
        return {
            's': list(self.instance.s_coords),
            't': list(self.instance.t_coords),
            'alpha': list(self.instance.s_demands),
            'beta': list(self.instance.t_demands),
            'cap_s': list(self.instance.caps(Side.S, self.mode)),
            'cap_t': list(self.instance.caps(Side.T, self.mode)),
            'pairs': [list(pair) for pair in sorted(self.index_pairs())],
        }


def serve(state, b, accept, label=None):
    """Apply cheapest paths for b while it is deficient and `accept` takes
    them. Returns False when no path is left at all."""
    while state.deficient(b):
        path = state.shortest_path(b)
        if path is None:
            return False
        if not accept(path):
            break
        state.augment(path)
        if label and len(path) > 2:
            state.stats[label] += 1
    return True


def step1_scan(state, part, w, i):
    """Points Step 1 may pair b_i with: A_w for i = 0, otherwise the
    partners of b_i-1 that are smaller than it."""
    if i == 0:
        scan = set(state.block(part, w))
    else:
        scan = set(state.left_partners(state.block(part, w + 1)[i - 1]))
    return scan.__contains__


def step1(state, part, w, i, scan=step1_scan):
    block = state.block(part, w + 1)
    b = block[i]
    state.enter(b)
    state.stats['step1'] += 1
    scanned = scan(state, part, w, i)
    serve(state, b, lambda path: len(path) <= 3 and scanned(path[1]),
          'swaps')
    return state


def step2(state, part, w, b):
    state.stats['step2'] += 1
    surplus = state.surplus_lists[w + 1]
    surplus[:] = [p for p in surplus if state.surplus(p)]
    donors = set(surplus)

    def borrowed(path):
        if len(path) == 3:
            return path[2] in donors
        return len(path) == 2 and state.surplus(path[1])

    serve(state, b, borrowed, 'transfers')
    surplus[:] = [p for p in surplus if state.surplus(p)]
    return state


def step3(state, part, w, b, accept=None):
    state.stats['step3'] += 1
    if not serve(state, b, accept or (lambda path: True), 'releases'):
        state.stats['exhausted'] += 1
        raise ExhaustedSupplyError(
            '{} still needs {} partners and no augmenting path reaches it '
            '(block {})'.format(state.refs[b], state.demand[b] -
                                state.deg(b), w + 1))
    return state


def sweep(state, part, steps=(step1, step2, step3)):
    """One pass over the block pairs (A_w, A_w+1), w = 0, 1, ..."""
    first, second, third = steps
    state.stats['sweeps'] += 1
    # Points in A_w, A_w-2, ...: the supply on the other side of A_w+1.
    supplies = [0, 0]
    for w in range(len(part) - 1):
        block = state.block(part, w + 1)
        for i in range(len(block)):
            first(state, part, w, i)
        supplies[w % 2] += len(part[w].indices)
        supply = supplies[w % 2]
        for b in block:
            if state.surplus(b):
                state.surplus_lists[w + 1].append(b)
                continue
            if not state.deficient(b):
                continue
            if supply >= state.demand[b]:
                second(state, part, w, b)
            if state.deficient(b):
                try:
                    third(state, part, w, b)
                except ExhaustedSupplyError as e:
                    log.debug('Deferring to the final pass: {}'.format(e))
    return state


def final_pass(state):
    """Serve the points the sweep never reached, and whatever it left."""
    for p in range(len(state.refs)):
        if not state.entered[p]:
            state.enter(p)
        if not state.deficient(p):
            continue
        state.stats['final'] += 1
        if not serve(state, p, lambda path: True):
            raise InternalNonterminationError(
                '{} still needs {} partners after the final pass'.format(
                    state.refs[p], state.demand[p] - state.deg(p)),
                state.dump())
    return state


class OMMDSolver(AbstractSolver):
    name = 'ommd'
    mode = Mode.OMMD
    steps = (step1, step2, step3)

    def __init__(self, flow_check_limit=65536):
        self.flow_check_limit = flow_check_limit
        self.stats = Counter()
        self.state = None

    def check_feasible(self, instance):
        check_demand_feasibility(instance)

    def solve(self, instance):
        self.check_feasible(instance)
        return self.run_main_loop(instance)

    def run_main_loop(self, instance):
        self.stats = Counter()
        self.state = None
        if instance.n == 0:
            return Matching(())

        part = partition(instance)
        state = SolverState(instance, part, self.mode)
        self.state = state
        sweep(state, part, self.steps)
        final_pass(state)
        self.stats.update(state.stats)

        matching = state.matching()
        log.info('Solved {} points in mode {}: {} pairs, cost {} ({})'.format(
            instance.n, self.mode.value, len(matching), matching.total_cost,
            dict(self.stats)))
        return matching


def run_main_loop(instance, **kwargs):
    matching = OMMDSolver(**kwargs).run_main_loop(instance)
    return matching, matching.total_cost


def solve_ommd(instance, **kwargs):
    matching = OMMDSolver(**kwargs).solve(instance)
    return matching, matching.total_cost
