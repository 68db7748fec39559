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
Instance and result files

Both are JSON documents. Instance files hold the arrays s, t, alpha, beta
and optionally cap_s, cap_t. Result files refer to points by their position
in the instance file, not in the normalized (sorted) instance.
"""

import hashlib
import json
from .model import (
    FileFormatError,
    IndexOutOfRangeError,
    Instance,
    Matching,
    matching_cost,
    validate_instance,
)
from numbers import Integral

instance_fields = ('s', 't', 'alpha', 'beta')
optional_fields = ('cap_s', 'cap_t')


def _dumps(document):
    return json.dumps(document, indent=4, sort_keys=True) + '\n'


def _load(path):
    try:
        with open(path) as f:
            return json.load(f)
    except ValueError as e:
        raise FileFormatError('{} is not valid JSON: {}'.format(path, e))


def instance_from_document(document):
    """The raw (unvalidated) instance described by a parsed document."""
    if not isinstance(document, dict):
        raise FileFormatError('An instance document must be a JSON object')
    missing = [key for key in instance_fields if key not in document]
    if missing:
        raise FileFormatError('Missing field(s) {}'.format(
            ', '.join(missing)))
    unknown = set(document) - set(instance_fields) - set(optional_fields)
    if unknown:
        raise FileFormatError('Unknown field(s) {}'.format(
            ', '.join(sorted(unknown))))
    for key in instance_fields + optional_fields:
        value = document.get(key)
        if value is not None and not isinstance(value, list):
            raise FileFormatError('Field {} must be an array'.format(key))
    given = [key for key in optional_fields if document.get(key) is not None]
    if len(given) == 1:
        raise FileFormatError(
            'Field {} needs {} alongside it'.format(
                given[0], [key for key in optional_fields
                           if key not in given][0]))
    return Instance(document['s'], document['t'], document['alpha'],
                    document['beta'], document.get('cap_s'),
                    document.get('cap_t'))


def read_instance(path):
    return validate_instance(instance_from_document(_load(path)))


def instance_document(instance):
    """The document of `instance` with its points back in file order."""
    def restore(values, origin):
        if values is None:
            return None
        restored = [None] * len(values)
        for value, position in zip(values, origin):
            restored[position] = value
        return restored

    document = {
        's': restore(instance.s_coords, instance.s_origin),
        't': restore(instance.t_coords, instance.t_origin),
        'alpha': restore(instance.s_demands, instance.s_origin),
        'beta': restore(instance.t_demands, instance.t_origin),
    }
    if instance.s_caps is not None:
        document['cap_s'] = restore(instance.s_caps, instance.s_origin)
    if instance.t_caps is not None:
        document['cap_t'] = restore(instance.t_caps, instance.t_origin)
    return document


def write_instance(path, instance):
    with open(path, 'w') as f:
        f.write(_dumps(instance_document(instance)))


def instance_digest(instance):
    """sha256 of the normalized instance, independent of point order in
    the file it came from."""
    canonical = {
        's': list(instance.s_coords),
        't': list(instance.t_coords),
        'alpha': list(instance.s_demands),
        'beta': list(instance.t_demands),
        'cap_s': None if instance.s_caps is None else list(instance.s_caps),
        'cap_t': None if instance.t_caps is None else list(instance.t_caps),
    }
    text = json.dumps(canonical, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


def encode_cost(cost):
    if isinstance(cost, Integral):
        return int(cost)
    return repr(float(cost))


def decode_cost(value):
    if isinstance(value, bool):
        raise FileFormatError('Malformed cost {!r}'.format(value))
    if isinstance(value, Integral):
        return value
    if isinstance(value, str):
        try:
            return float(value)
        except ValueError:
            pass
    raise FileFormatError('Malformed cost {!r}'.format(value))


def result_document(instance, matching, mode, solver):
    cost = matching.total_cost
    if cost is None:
        cost = matching_cost(instance, matching)
    pairs = sorted([instance.s_origin[i], instance.t_origin[j]]
                   for i, j in matching.pairs)
    return {
        'cost': encode_cost(cost),
        'pairs': pairs,
        'mode': getattr(mode, 'value', mode),
        'solver': solver,
        'instance_digest': instance_digest(instance),
    }


def write_result(path, instance, matching, mode, solver):
    text = _dumps(result_document(instance, matching, mode, solver))
    if path is None:
        return text
    with open(path, 'w') as f:
        f.write(text)
    return text


def matching_from_document(instance, document):
    """The pairs of a result document, mapped onto the normalized instance,
    with the recorded cost as total_cost."""
    if not isinstance(document, dict) or 'pairs' not in document or \
       'cost' not in document:
        raise FileFormatError('A result document needs cost and pairs')
    s_index = {origin: i for i, origin in enumerate(instance.s_origin)}
    t_index = {origin: j for j, origin in enumerate(instance.t_origin)}
    pairs = []
    for pair in document['pairs']:
        if not isinstance(pair, list) or len(pair) != 2 or \
           not all(isinstance(x, Integral) and not isinstance(x, bool)
                   for x in pair):
            raise FileFormatError('Malformed pair {!r}'.format(pair))
        i, j = pair
        if i not in s_index or j not in t_index:
            raise IndexOutOfRangeError(
                'Pair {} is outside a {}x{} instance'.format(
                    pair, instance.y, instance.z))
        pairs.append((s_index[i], t_index[j]))
    return Matching(pairs, decode_cost(document['cost']))


def read_result(path, instance):
    document = _load(path)
    return matching_from_document(instance, document), document
