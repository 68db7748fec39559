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

import json
from line_match.files import read_instance
from line_match.fuzz import (
    FuzzReport,
    evaluate,
    generate_instances,
    random_instance,
    run_campaign,
)
from line_match.model import (
    Instance,
    Matching,
    Mode,
    SizeGuardExceededError,
    validate_instance,
)
import os
import pytest
import random
from tempfile import TemporaryDirectory
from unittest import TestCase
from unittest.mock import patch


class GeneratorTests(TestCase):
    def test_deterministic(self):
        self.assertEqual(generate_instances(10, 42, 8),
                         generate_instances(10, 42, 8))
        self.assertNotEqual(generate_instances(10, 42, 8),
                            generate_instances(10, 43, 8))

    def test_shape(self):
        for instance in generate_instances(50, 3, 6, Mode.OMMDC):
            validate_instance(instance)
            self.assertLessEqual(instance.n, 6)
            self.assertGreaterEqual(instance.y, 1)
            self.assertGreaterEqual(instance.z, 1)
            self.assertLessEqual(max(instance.s_demands), instance.z)
            self.assertIsNotNone(instance.s_caps)
        self.assertIsNone(random_instance(random.Random(0), 4).s_caps)

    def test_too_small(self):
        with self.assertRaises(ValueError):
            random_instance(random.Random(0), 1)


class EvaluateTests(TestCase):
    def test_agreement(self):
        outcome = evaluate(0, Instance((1, 5), (2, 3), (1, 1), (1, 1)),
                           'ommd')
        self.assertTrue(outcome.matched)
        self.assertEqual((outcome.solver, outcome.oracle), (3, 3))

    def test_both_infeasible(self):
        outcome = evaluate(
            0, Instance((0, 1, 10), (2,), (1, 1, 1), (1,), None, (2,)),
            'ommdc')
        self.assertTrue(outcome.matched)
        self.assertEqual(outcome.solver, 'InfeasibleCapacityError')

    @patch('line_match.ommd.SolverState.path_cost', return_value=0)
    def test_rows_that_miss_the_cost(self, path_cost):
        outcome = evaluate(0, Instance((1, 5), (2, 3), (1, 1), (1, 1)),
                           'ommd')
        self.assertFalse(outcome.matched)
        self.assertEqual((outcome.solver, outcome.oracle), (3, 3))
        self.assertRegex(outcome.detail, r'^accounting None: cost rows add '
                         r'up to 0, the pairs cost 3$')


class CampaignTests(TestCase):
    def test_all_match(self):
        for mode in Mode:
            report = run_campaign(25, 1, 7, mode)
            self.assertEqual(report.mismatches, [], str(report.mismatches))
            self.assertEqual(str(report), '25/25 matched')

    def test_parallel_matches_serial(self):
        serial = run_campaign(6, 5, 6, jobs=1)
        parallel = run_campaign(6, 5, 6, jobs=2)
        self.assertEqual(serial, parallel)

    def test_guard(self):
        with self.assertRaises(SizeGuardExceededError):
            run_campaign(1, 0, 10, guard=8)

    def test_empty_campaign(self):
        report = run_campaign(0, 0, 8)
        self.assertEqual(report, FuzzReport(0, []))
        self.assertEqual(str(report), '0/0 matched')

    @patch('line_match.fuzz.oracle_solve')
    def test_mismatch_is_dumped(self, oracle_solve):
        oracle_solve.return_value = (Matching(()), 0)
        with TemporaryDirectory() as dump_dir:
            report = run_campaign(2, 7, 5, dump_dir=dump_dir)
            self.assertEqual(len(report.mismatches), 2)
            self.assertEqual(str(report), '0/2 matched')
            self.assertEqual(sorted(os.listdir(dump_dir)),
                             ['seed7-0.json', 'seed7-0.txt',
                              'seed7-1.json', 'seed7-1.txt'])
            instance = read_instance(os.path.join(dump_dir, 'seed7-0.json'))
            self.assertEqual(
                instance, validate_instance(generate_instances(2, 7, 5)[0]))
            with open(os.path.join(dump_dir, 'seed7-0.txt')) as f:
                details = json.loads(f.read())
            self.assertEqual(details['oracle'], '0')
            self.assertEqual(details['detail'], 'solver and oracle disagree')


class FullCampaignTests(TestCase):
    @pytest.mark.slow
    def test_ten_thousand_per_mode(self):
        for mode in Mode:
            report = run_campaign(10000, 2026, 10, mode)
            self.assertEqual(report.mismatches, [], str(report.mismatches))
            self.assertEqual(str(report), '10000/10000 matched')

