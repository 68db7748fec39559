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
Cheapest augmenting paths in the residual network of a sweep

A matching is a circulation in the degree-bounded network

    H -> s   [lower(s), cap(s)]
    s -> t   [0, 1], cost |s - t|
    t -> H   [lower(t), cap(t)]

where H stands for both the source and the sink. A point's lower bound is
zero until the sweep reaches it and is then raised to its demand one unit
at a time. Each unit is paid for by the cheapest alternating path that
starts at the point: add a pair, drop a pair, add a pair, ... until a point
with room or with a partner to spare absorbs the change. With every lower
bound raised this way the circulation stays optimal, so the sweep ends at
a minimum-cost matching.

Paths are found by Dijkstra on reduced costs. Every point carries a
potential; H's potential is zero throughout. A search from an s-point
follows residual arcs forward and a search from a t-point follows them
backward, so both stay near the point they serve. Candidate pairs are
drawn lazily, nearest reduced cost first, from one range-minimum tree per
side and direction, and only the points a search settles have their
potentials and tree keys rewritten.
"""

from bisect import bisect_left
import heapq
from itertools import count
from logbook import Logger
from .model import Side

log = Logger('Residual')

INFINITY = float('inf')
EMPTY = (INFINITY, -1)

# Heap entry kinds, in the order entries at equal distance are popped.
EXIT, ARRIVE, OFFER = 0, 1, 2

RIGHT, LEFT = 0, 1

# Orientation of the potentials of the far side of a search: a search from
# an s-point reaches t-points and runs forward, one from a t-point runs
# backward.
SIGN = {Side.T: 1, Side.S: -1}


class MinTree(object):
    """Smallest (key, index) over a range of indices, with point updates."""

    def __init__(self, keys):
        size = 1
        while size < len(keys):
            size *= 2
        self.size = size
        self.nodes = [EMPTY] * (2 * size)
        self.nodes[size:size + len(keys)] = [
            (key, i) for i, key in enumerate(keys)]
        for k in range(size - 1, 0, -1):
            self.nodes[k] = min(self.nodes[2 * k], self.nodes[2 * k + 1])

    def update(self, i, key):
        nodes = self.nodes
        k = i + self.size
        nodes[k] = (key, i)
        k >>= 1
        while k:
            left, right = nodes[2 * k], nodes[2 * k + 1]
            nodes[k] = left if left <= right else right
            k >>= 1

    def query(self, lo, hi):
        """Smallest entry with lo <= index < hi; EMPTY when the range is
        empty."""
        nodes = self.nodes
        best = EMPTY
        lo += self.size
        hi += self.size
        while lo < hi:
            if lo & 1:
                if nodes[lo] < best:
                    best = nodes[lo]
                lo += 1
            if hi & 1:
                hi -= 1
                if nodes[hi] < best:
                    best = nodes[hi]
            lo >>= 1
            hi >>= 1
        return best


class ResidualPaths(object):
    """Potentials and candidate trees over the points of a SolverState."""

    def __init__(self, state):
        self.state = state
        self.potential = [0] * len(state.coord)
        self.members = {side: [p for p, s in enumerate(state.side)
                               if s is side] for side in Side}
        self.rank = [0] * len(state.coord)
        self.trees = {}
        for side, members in self.members.items():
            for r, p in enumerate(members):
                self.rank[p] = r
            self.trees[side] = (
                MinTree([self._key(p, RIGHT) for p in members]),
                MinTree([self._key(p, LEFT) for p in members]))

    def _key(self, p, direction):
        """Reduced cost of pairing p with a point on its left (RIGHT tree)
        or right (LEFT tree), up to a term that depends only on that
        point."""
        phi = SIGN[self.state.side[p]] * self.potential[p]
        x = self.state.coord[p]
        return x - phi if direction == RIGHT else -x - phi

    def _refresh(self, p):
        right, left = self.trees[self.state.side[p]]
        r = self.rank[p]
        right.update(r, self._key(p, RIGHT))
        left.update(r, self._key(p, LEFT))

    def _hide(self, p):
        right, left = self.trees[self.state.side[p]]
        r = self.rank[p]
        right.update(r, INFINITY)
        left.update(r, INFINITY)

    def _nearest(self, u, direction):
        """The unsettled non-partner of u on one side of it with the least
        reduced cost, as (reduced cost, point), or None."""
        state = self.state
        other = state.side[u].other
        members = self.members[other]
        tree = self.trees[other][direction]
        cut = bisect_left(members, u)
        lo, hi = (cut, len(members)) if direction == RIGHT else (0, cut)
        partners = sorted(self.rank[q] for q in state.matched_lists[u]
                          if lo <= self.rank[q] < hi)
        best = EMPTY
        start = lo
        for r in partners + [hi]:
            if start < r:
                candidate = tree.query(start, r)
                if candidate < best:
                    best = candidate
            start = r + 1
        key, r = best
        if key == INFINITY:
            return None
        x = state.coord[u]
        offset = -x if direction == RIGHT else x
        reduced = key + offset + SIGN[other] * self.potential[u]
        # Rounding on float coordinates may leave a hair below zero.
        return max(reduced, 0), members[r]

    def shortest_path(self, b):
        """The cheapest alternating path that gives b one more partner, as
        the list of points b, v1, u1, v2, ... it visits, or None when no
        such path exists.

        Pairs (b, v1), (u1, v2), ... are added and pairs (v1, u1), ... are
        dropped. The last point has room for a partner when it is on the
        other side of b and a partner to spare when it is on b's side.
        """
        state = self.state
        sign = SIGN[state.side[b].other]
        potential = self.potential
        tick = count()
        dist, parent = {}, {}
        heap = [(0, ARRIVE, next(tick), b, None)]

        def offer(u, direction):
            nearest = self._nearest(u, direction)
            if nearest is not None:
                reduced, v = nearest
                heapq.heappush(heap, (dist[u] + reduced, OFFER, next(tick),
                                      v, (u, direction)))

        found = None
        while heap:
            d, kind, _, v, via = heapq.heappop(heap)
            if kind == EXIT:
                found = (d, v)
                break
            if kind == OFFER:
                u, direction = via
                if v not in dist:
                    dist[v] = d
                    parent[v] = u
                    self._hide(v)
                    if state.has_room(v):
                        heapq.heappush(heap, (
                            d + max(sign * potential[v], 0), EXIT,
                            next(tick), v, None))
                    for w in state.matched_lists[v]:
                        if w not in dist:
                            reduced = sign * (potential[v] - potential[w]) \
                                - state.distance(v, w)
                            heapq.heappush(heap, (
                                d + max(reduced, 0), ARRIVE, next(tick), w,
                                v))
                offer(u, direction)
                continue
            if v in dist:
                continue
            dist[v] = d
            parent[v] = via
            if v != b and state.can_release(v):
                heapq.heappush(heap, (d + max(sign * potential[v], 0), EXIT,
                                      next(tick), v, None))
            offer(v, RIGHT)
            offer(v, LEFT)

        state.stats['settled'] += len(dist)
        if found is None:
            for v in dist:
                if state.side[v] is not state.side[b]:
                    self._refresh(v)
            log.debug('No augmenting path reaches {} ({} points settled)'
                      .format(state.refs[b], len(dist)))
            return None

        limit, end = found
        for v, d in dist.items():
            if d < limit:
                potential[v] -= sign * (limit - d)
        for v in dist:
            self._refresh(v)

        path = [end]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        path.reverse()
        return path
