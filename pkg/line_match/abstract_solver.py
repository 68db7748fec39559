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
Abstract solver for line_match

Subclass for a specific algorithm.
"""

from abc import ABCMeta, abstractmethod


class AbstractSolver(object, metaclass=ABCMeta):  # pragma: no cover
    name = None
    mode = None

    @abstractmethod
    def __init__(self, *args, **kwargs):
        """Args are tuning knobs specific to the algorithm. Solvers keep no
        state between calls to solve() other than statistics about the most
        recent call."""
        raise NotImplementedError('__init__')

    @abstractmethod
    def solve(self, instance):
        """Return a minimum-cost Matching for a normalized instance, with
        its total_cost filled in and its pairs sorted.

        Should raise InfeasibleDemandError or InfeasibleCapacityError when
        no feasible matching exists in the solver's mode. Must not modify
        `instance`."""
        raise NotImplementedError('solve')
