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
Block partition of the merged point line
"""

from collections import namedtuple
from dataclasses import dataclass
from .model import EmptyInstanceError, IndexOutOfRangeError, PointRef, Side

Block = namedtuple('Block', ['side', 'indices'])


@dataclass(frozen=True)
class BlockPartition:
    """Maximal runs of same-side points, left to right.

    Blocks hold point indices into the instance rather than coordinates."""
    blocks: tuple

    def __len__(self):
        return len(self.blocks)

    def __getitem__(self, w):
        return self.blocks[w]

    def points(self):
        """Every point, in ascending coordinate order."""
        return [PointRef(block.side, index)
                for block in self.blocks for index in block.indices]


def merged_points(instance):
    """All points of the instance as PointRefs in ascending coordinate
    order. The instance must be normalized."""
    s, t = instance.s_coords, instance.t_coords
    points = []
    i = j = 0
    while i < len(s) or j < len(t):
        if j == len(t) or (i < len(s) and s[i] < t[j]):
            points.append(PointRef(Side.S, i))
            i += 1
        else:
            points.append(PointRef(Side.T, j))
            j += 1
    return points


def partition(instance):
    points = merged_points(instance)
    if not points:
        raise EmptyInstanceError('Cannot partition an instance with no points')

    blocks = []
    for ref in points:
        if blocks and blocks[-1][0] is ref.side:
            blocks[-1][1].append(ref.index)
        else:
            blocks.append((ref.side, [ref.index]))
    return BlockPartition(tuple(Block(side, tuple(indices))
                                for side, indices in blocks))


def boundary_point(part, w):
    """The largest point of block w-1, or None for the first block."""
    if not 0 <= w < len(part):
        raise IndexOutOfRangeError(
            'Block {} does not exist in a partition of {} blocks'.format(
                w, len(part)))
    if w == 0:
        return None
    previous = part[w - 1]
    return PointRef(previous.side, previous.indices[-1])
