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
Instances, matchings and validation shared by every line_match solver
"""

from collections import Counter, namedtuple
from dataclasses import dataclass, field
from enum import Enum
import math
from numbers import Integral, Real

INT64_MIN = -2 ** 63
INT64_MAX = 2 ** 63 - 1


class LineMatchError(Exception):
    pass


class InstanceError(LineMatchError):
    pass


class LengthMismatchError(InstanceError):
    pass


class DuplicateCoordinateError(InstanceError):
    pass


class NonPositiveDemandError(InstanceError):
    pass


class NonPositiveCapacityError(InstanceError):
    pass


class CapBelowDemandError(InstanceError):
    pass


class CoordinateError(InstanceError):
    pass


class EmptyInstanceError(InstanceError):
    pass


class DuplicatePairError(InstanceError):
    pass


class FileFormatError(InstanceError):
    pass


class ConfigError(LineMatchError):
    pass


class IndexOutOfRangeError(LineMatchError, IndexError):
    pass


class InfeasibleError(LineMatchError):
    pass


class InfeasibleDemandError(InfeasibleError):
    pass


class InfeasibleCapacityError(InfeasibleError):
    pass


class SizeGuardExceededError(LineMatchError):
    pass


class ExhaustedSupplyError(LineMatchError):
    pass


class InternalNonterminationError(LineMatchError):
    def __init__(self, message, dump=None):
        super(InternalNonterminationError, self).__init__(message)
        self.dump = dump


class Side(str, Enum):
    S = 's'
    T = 't'

    @property
    def other(self):
        return Side.T if self is Side.S else Side.S


class Mode(str, Enum):
    OMMD = 'ommd'
    OMMDC = 'ommdc'

    @property
    def uses_caps(self):
        return self is Mode.OMMDC

    @classmethod
    def parse(cls, value):
        """Accepts a Mode, its value, or the validation names
        'demand-only' and 'demand-and-capacity'."""
        if isinstance(value, cls):
            return value
        aliases = {'demand-only': cls.OMMD,
                   'demand-and-capacity': cls.OMMDC}
        try:
            return aliases.get(value) or cls(value)
        except ValueError:
            raise ValueError('Unknown mode {!r}'.format(value))


class PointRef(namedtuple('PointRef', ['side', 'index'])):
    __slots__ = ()

    def __str__(self):
        return '{}[{}]'.format(self.side.value, self.index)


@dataclass(frozen=True)
class Instance:
    """Two point sets on the line with demands and optional capacities.

    `s_origin` and `t_origin` record, for each point, its position in the
    document the instance was read from, so that normalization (sorting)
    can be undone when results are written back out.
    """
    s_coords: tuple
    t_coords: tuple
    s_demands: tuple
    t_demands: tuple
    s_caps: tuple = None
    t_caps: tuple = None
    s_origin: tuple = None
    t_origin: tuple = None

    def __post_init__(self):
        for name in ('s_coords', 't_coords', 's_demands', 't_demands',
                     's_caps', 't_caps', 's_origin', 't_origin'):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, tuple(value))
        if self.s_origin is None:
            object.__setattr__(self, 's_origin',
                               tuple(range(len(self.s_coords))))
        if self.t_origin is None:
            object.__setattr__(self, 't_origin',
                               tuple(range(len(self.t_coords))))

    @property
    def y(self):
        return len(self.s_coords)

    @property
    def z(self):
        return len(self.t_coords)

    @property
    def n(self):
        return self.y + self.z

    @property
    def has_caps(self):
        return self.s_caps is not None or self.t_caps is not None

    def coords(self, side):
        return self.s_coords if side is Side.S else self.t_coords

    def demands(self, side):
        return self.s_demands if side is Side.S else self.t_demands

    def size(self, side):
        return self.y if side is Side.S else self.z

    def caps(self, side, mode=Mode.OMMDC):
        """Effective capacities of one side.

        A side without capacities, or any side in demand-only mode, is
        bounded only by the number of distinct partners available."""
        caps = self.s_caps if side is Side.S else self.t_caps
        if caps is None or not Mode.parse(mode).uses_caps:
            return (self.size(side.other),) * self.size(side)
        return caps

    def coordinate(self, ref):
        return self.coords(ref.side)[ref.index]

    def without_caps(self):
        return Instance(self.s_coords, self.t_coords, self.s_demands,
                        self.t_demands, s_origin=self.s_origin,
                        t_origin=self.t_origin)


@dataclass(frozen=True)
class Matching:
    """A duplicate-free set of (s_index, t_index) pairs, kept sorted.

    `total_cost` is None unless the cost is known: use from_pairs or
    matching_cost to compute it. A matching with no pairs costs 0."""
    pairs: tuple
    total_cost: object = None

    def __post_init__(self):
        pairs = tuple(sorted((int(i), int(j)) for i, j in self.pairs))
        for previous, current in zip(pairs, pairs[1:]):
            if previous == current:
                raise DuplicatePairError(
                    'Pair {} appears more than once'.format(current))
        object.__setattr__(self, 'pairs', pairs)
        if not pairs and self.total_cost is None:
            object.__setattr__(self, 'total_cost', 0)

    @classmethod
    def from_pairs(cls, instance, pairs):
        matching = cls(pairs)
        return cls(matching.pairs, matching_cost(instance, matching))

    @property
    def s_degrees(self):
        return Counter(i for i, _ in self.pairs)

    @property
    def t_degrees(self):
        return Counter(j for _, j in self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __contains__(self, pair):
        return tuple(pair) in set(self.pairs)


Violation = namedtuple('Violation', ['kind', 'point', 'detail'])


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = field(default_factory=tuple)

    @property
    def feasible(self):
        return not self.violations

    def __str__(self):
        if self.feasible:
            return 'feasible'
        return '; '.join('{} {}: {}'.format(v.kind, v.point, v.detail)
                         for v in self.violations)


def _check_coordinate(value):
    if isinstance(value, bool) or not isinstance(value, Real):
        raise CoordinateError('Coordinate {!r} is not a number'.format(value))
    if isinstance(value, Integral):
        if not INT64_MIN <= value <= INT64_MAX:
            raise CoordinateError(
                'Coordinate {} is outside the signed 64-bit range'.format(
                    value))
    elif not math.isfinite(value):
        raise CoordinateError('Coordinate {!r} is not finite'.format(value))


def _check_counts(values, what, side, error):
    for index, value in enumerate(values):
        if isinstance(value, bool) or not isinstance(value, Integral) or \
           value <= 0:
            raise error('{} of {} must be a positive integer, got {!r}'.format(
                what, PointRef(side, index), value))


def validate_instance(raw, require_feasible=False):
    """Check `raw` and return it normalized.

    Each side is sorted by coordinate; demands, capacities and origins are
    permuted along with it. With `require_feasible`, the pigeonhole
    conditions of `check_demand_feasibility` are enforced as well."""
    y, z = len(raw.s_coords), len(raw.t_coords)
    lengths = [('s_demands', raw.s_demands, y),
               ('t_demands', raw.t_demands, z),
               ('s_caps', raw.s_caps, y), ('t_caps', raw.t_caps, z)]
    for name, values, expected in lengths:
        if values is not None and len(values) != expected:
            raise LengthMismatchError(
                '{} has {} entries, expected {}'.format(
                    name, len(values), expected))

    for value in raw.s_coords + raw.t_coords:
        _check_coordinate(value)

    seen = {}
    for side in Side:
        for index, value in enumerate(raw.coords(side)):
            ref = PointRef(side, index)
            if value in seen:
                raise DuplicateCoordinateError(
                    'Points {} and {} share coordinate {}; perturb one of '
                    'them symbolically before solving'.format(
                        seen[value], ref, value))
            seen[value] = ref

    for side in Side:
        _check_counts(raw.demands(side), 'Demand', side,
                      NonPositiveDemandError)
        caps = raw.s_caps if side is Side.S else raw.t_caps
        if caps is None:
            continue
        _check_counts(caps, 'Capacity', side, NonPositiveCapacityError)
        for index, (demand, cap) in enumerate(zip(raw.demands(side), caps)):
            if cap < demand:
                raise CapBelowDemandError(
                    'Capacity {} of {} is below its demand {}'.format(
                        cap, PointRef(side, index), demand))

    def permuted(values, order):
        return None if values is None else tuple(values[k] for k in order)

    s_order = sorted(range(y), key=lambda k: raw.s_coords[k])
    t_order = sorted(range(z), key=lambda k: raw.t_coords[k])
    instance = Instance(
        permuted(raw.s_coords, s_order), permuted(raw.t_coords, t_order),
        permuted(raw.s_demands, s_order), permuted(raw.t_demands, t_order),
        permuted(raw.s_caps, s_order), permuted(raw.t_caps, t_order),
        permuted(raw.s_origin, s_order), permuted(raw.t_origin, t_order))

    if require_feasible:
        check_demand_feasibility(instance)
    return instance


def check_demand_feasibility(instance):
    """Raise InfeasibleDemandError unless every demand can be met by
    distinct partners: no point may demand more than the size of the
    opposite side."""
    for side in Side:
        available = instance.size(side.other)
        for index, demand in enumerate(instance.demands(side)):
            if demand > available:
                raise InfeasibleDemandError(
                    '{} demands {} partners but only {} exist'.format(
                        PointRef(side, index), demand, available))


def _distance_sum(distances):
    distances = list(distances)
    if all(isinstance(d, Integral) for d in distances):
        return sum(distances)
    return math.fsum(distances)


def matching_cost(instance, matching):
    pairs = getattr(matching, 'pairs', matching)
    for i, j in pairs:
        if not (0 <= i < instance.y and 0 <= j < instance.z):
            raise IndexOutOfRangeError(
                'Pair ({}, {}) is outside a {}x{} instance'.format(
                    i, j, instance.y, instance.z))
    return _distance_sum(abs(instance.s_coords[i] - instance.t_coords[j])
                         for i, j in pairs)


def validate_matching(instance, matching, mode=Mode.OMMD):
    mode = Mode.parse(mode)
    violations = []
    s_degrees, t_degrees = Counter(), Counter()
    for i, j in matching.pairs:
        if not (0 <= i < instance.y and 0 <= j < instance.z):
            violations.append(Violation('index', (i, j),
                                        'pair index out of range'))
            continue
        s_degrees[i] += 1
        t_degrees[j] += 1

    for side, degrees in ((Side.S, s_degrees), (Side.T, t_degrees)):
        caps = instance.caps(side, mode)
        for index, demand in enumerate(instance.demands(side)):
            degree = degrees[index]
            ref = PointRef(side, index)
            if degree < demand:
                violations.append(Violation(
                    'demand', ref, 'degree {} < demand {}'.format(
                        degree, demand)))
            if mode.uses_caps and degree > caps[index]:
                violations.append(Violation(
                    'capacity', ref, 'degree {} > capacity {}'.format(
                        degree, caps[index])))

    return ValidationReport(tuple(violations))


def min_pair_count(instance):
    return max(sum(instance.s_demands), sum(instance.t_demands))
