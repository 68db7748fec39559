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

from io import StringIO
import json
from line_match import cli
from line_match.model import Matching
import os
import sys
from tempfile import TemporaryDirectory
from unittest import TestCase
from unittest.mock import patch


class CLITestCase(TestCase):
    def setUp(self):
        self.tempdir = TemporaryDirectory()
        self.addCleanup(self.tempdir.cleanup)
        self.config_file = self.path('linematch.ini')
        self.stdout = patch('sys.stdout', StringIO())
        self.stderr = patch('sys.stderr', StringIO())
        self.stdout.start()
        self.stderr.start()
        self.addCleanup(self.stdout.stop)
        self.addCleanup(self.stderr.stop)

    def path(self, name):
        return os.path.join(self.tempdir.name, name)

    def write(self, name, document):
        path = self.path(name)
        with open(path, 'w') as f:
            f.write(document if isinstance(document, str)
                    else json.dumps(document))
        return path

    def read(self, name):
        with open(self.path(name)) as f:
            return f.read()

    def doit(self, *args):
        return cli.doit(args, self.config_file)


class ArgumentTests(CLITestCase):
    def test_no_command(self):
        with self.assertRaises(SystemExit) as cm:
            self.doit()
        self.assertEqual(cm.exception.code, cli.EXIT_USAGE)
        self.assertRegex(sys.stderr.getvalue(), r'No command specified')

    def test_bad_arguments(self):
        for args in (('fuzz', '--jobs', '0'),
                     ('bench', '--sizes', '4,2'),
                     ('solve',),
                     ('solve', '--input', 'x', '--mode', '2d')):
            with self.assertRaises(SystemExit, msg=str(args)) as cm:
                self.doit(*args)
            self.assertEqual(cm.exception.code, cli.EXIT_USAGE)

    def test_parse_args(self):
        config = cli.load_config(self.config_file)
        args = cli.parse_args(('fuzz', '--max-n', '6', '--debug'), config)
        self.assertEqual(args.max_n, 6)
        self.assertEqual(args.count, 100)
        self.assertEqual(args.jobs, 1)
        self.assertEqual(args.level, 'DEBUG')
        self.assertIs(args.func, cli.handle_fuzz)
        args = cli.parse_args(('bench',), config)
        self.assertEqual(args.sizes, [2000, 4000, 8000])

    def test_bad_config(self):
        self.write('linematch.ini', '[oracle]\nguard = lots\n')
        self.assertEqual(self.doit('bench', '--sizes', ''), cli.EXIT_USAGE)
        self.write('linematch.ini', '[logging]\nlevel = chatty\n')
        self.assertEqual(self.doit('bench', '--sizes', ''), cli.EXIT_USAGE)

    def test_config_flag(self):
        other = self.write('other.ini', '[oracle]\nguard = 2\n')
        path = self.write('instance.json', {
            's': [0, 1], 't': [2], 'alpha': [1, 1], 'beta': [2]})
        self.assertEqual(self.doit('--config', other, 'oracle', '--input',
                                   path), cli.EXIT_USAGE)
        self.assertRegex(sys.stderr.getvalue(), r'at most 2 points')


class SolveTests(CLITestCase):
    def setUp(self):
        super(SolveTests, self).setUp()
        # File order s = [5, 1], t = [2, 3]
        self.instance = self.write('instance.json', {
            's': [5, 1], 't': [2, 3], 'alpha': [1, 1], 'beta': [1, 1]})

    def test_solve(self):
        status = self.doit('solve', '--input', self.instance, '--output',
                           self.path('result.json'))
        self.assertEqual(status, cli.EXIT_OK)
        result = json.loads(self.read('result.json'))
        self.assertEqual(result['pairs'], [[0, 1], [1, 0]])
        self.assertEqual(result['cost'], 3)
        self.assertEqual(result['mode'], 'ommd')
        self.assertEqual(result['solver'], 'ommd')
        self.assertEqual(sys.stdout.getvalue(), '')

    def test_unit_pair(self):
        path = self.write('unit.json', {
            's': [0], 't': [1], 'alpha': [1], 'beta': [1]})
        self.assertEqual(self.doit('solve', '--input', path), cli.EXIT_OK)
        result = json.loads(sys.stdout.getvalue())
        self.assertEqual((result['pairs'], result['cost']), ([[0, 0]], 1))

    def test_infeasible_writes_no_result(self):
        path = self.write('infeasible.json', {
            's': [0, 1, 10], 't': [2], 'alpha': [1, 1, 1], 'beta': [1],
            'cap_s': [1, 1, 1], 'cap_t': [2]})
        output = self.path('result.json')
        self.assertEqual(self.doit('solve', '--input', path, '--output',
                                   output), cli.EXIT_INFEASIBLE)
        self.assertFalse(os.path.exists(output))

    def test_one_sided_capacities(self):
        path = self.write('one_sided.json', {
            's': [0, 1], 't': [2], 'alpha': [1, 1], 'beta': [1],
            'cap_t': [2]})
        self.assertEqual(self.doit('solve', '--input', path), cli.EXIT_USAGE)
        self.assertRegex(sys.stderr.getvalue(), r'cap_s')

    def test_length_mismatch(self):
        path = self.write('mismatch.json', {
            's': [0, 1], 't': [2], 'alpha': [1], 'beta': [1]})
        self.assertEqual(self.doit('solve', '--input', path), cli.EXIT_USAGE)

    def test_repeatable(self):
        for name in ('first.json', 'second.json'):
            self.doit('solve', '--input', self.instance, '--output',
                      self.path(name))
        self.assertEqual(self.read('first.json'), self.read('second.json'))

    def test_stdout(self):
        self.assertEqual(self.doit('solve', '--input', self.instance),
                         cli.EXIT_OK)
        self.assertEqual(json.loads(sys.stdout.getvalue())['cost'], 3)

    def test_capacities_select_ommdc(self):
        path = self.write('capped.json', {
            's': [0, 4], 't': [1, 2], 'alpha': [1, 1], 'beta': [1, 1],
            'cap_s': [1, 1], 'cap_t': [1, 1]})
        self.assertEqual(self.doit('solve', '--input', path), cli.EXIT_OK)
        result = json.loads(sys.stdout.getvalue())
        self.assertEqual(result['mode'], 'ommdc')
        self.assertEqual(result['cost'], 3)

    def test_infeasible(self):
        path = self.write('infeasible.json', {
            's': [0, 1, 10], 't': [2], 'alpha': [1, 1, 1], 'beta': [1],
            'cap_s': [1, 1, 1], 'cap_t': [2]})
        self.assertEqual(self.doit('solve', '--input', path),
                         cli.EXIT_INFEASIBLE)
        self.assertRegex(sys.stderr.getvalue(), r'capacities')
        self.assertEqual(self.doit('solve', '--input', path, '--mode',
                                   'ommd'), cli.EXIT_OK)

    def test_demand_infeasible(self):
        path = self.write('infeasible.json', {
            's': [0], 't': [2, 5], 'alpha': [3], 'beta': [1, 1]})
        self.assertEqual(self.doit('solve', '--input', path),
                         cli.EXIT_INFEASIBLE)

    def test_bad_input(self):
        self.assertEqual(self.doit('solve', '--input', self.path('nope')),
                         cli.EXIT_USAGE)
        path = self.write('bad.json', '{"s": [1]}')
        self.assertEqual(self.doit('solve', '--input', path), cli.EXIT_USAGE)
        path = self.write('dup.json', {
            's': [1], 't': [1], 'alpha': [1], 'beta': [1]})
        self.assertEqual(self.doit('solve', '--input', path), cli.EXIT_USAGE)
        self.assertRegex(sys.stderr.getvalue(), r'perturb')

    def test_oracle(self):
        for solver in ('oracle', 'exhaustive'):
            output = self.path('{}.json'.format(solver))
            self.assertEqual(self.doit('oracle', '--input', self.instance,
                                       '--output', output, '--solver',
                                       solver), cli.EXIT_OK)
            result = json.loads(self.read('{}.json'.format(solver)))
            self.assertEqual(result['cost'], 3)
            self.assertEqual(result['solver'], solver)


class VerifyTests(CLITestCase):
    def setUp(self):
        super(VerifyTests, self).setUp()
        self.instance = self.write('instance.json', {
            's': [0], 't': [1, 2], 'alpha': [2], 'beta': [1, 1]})
        self.doit('solve', '--input', self.instance, '--output',
                  self.path('result.json'))
        self.result = json.loads(self.read('result.json'))

    def verify(self, result=None):
        path = self.path('result.json')
        if result is not None:
            path = self.write('tampered.json', result)
        return self.doit('verify', '--input', self.instance, '--result',
                         path)

    def test_ok(self):
        self.assertEqual(self.verify(), cli.EXIT_OK)
        self.assertEqual(sys.stdout.getvalue(),
                         'OK: 2 pairs, cost 3, mode ommd\n')

    def test_tampered_cost(self):
        self.assertEqual(self.verify(dict(self.result, cost=2)),
                         cli.EXIT_INFEASIBLE)
        self.assertRegex(sys.stderr.getvalue(), r'Recorded cost 2')

    def test_missing_pair(self):
        self.assertEqual(
            self.verify(dict(self.result, pairs=[[0, 0]], cost=1)),
            cli.EXIT_INFEASIBLE)

    def test_out_of_range(self):
        self.assertEqual(
            self.verify(dict(self.result, pairs=[[0, 0], [0, 5]])),
            cli.EXIT_USAGE)

    def test_unknown_mode(self):
        self.assertEqual(self.verify(dict(self.result, mode='2d')),
                         cli.EXIT_USAGE)

    def test_other_instance(self):
        self.instance = self.write('other.json', {
            's': [0], 't': [1, 2], 'alpha': [1], 'beta': [1, 1]})
        self.assertEqual(self.verify(), cli.EXIT_INFEASIBLE)
        self.assertRegex(sys.stderr.getvalue(), r'was not computed for')

    def test_capacity_mode(self):
        self.assertEqual(self.verify(dict(self.result, mode=None)),
                         cli.EXIT_OK)
        self.instance = self.write('capped.json', {
            's': [0], 't': [1, 2], 'alpha': [2], 'beta': [1, 1],
            'cap_s': [2], 'cap_t': [1, 1]})
        result = dict(self.result, mode='ommdc', instance_digest=None)
        self.assertEqual(self.verify(result), cli.EXIT_OK)


class FuzzTests(CLITestCase):
    def test_all_match(self):
        self.assertEqual(self.doit('fuzz', '--count', '5', '--max-n', '6'),
                         cli.EXIT_OK)
        self.assertEqual(sys.stdout.getvalue(), '5/5 matched\n')

    def test_guard(self):
        self.assertEqual(self.doit('fuzz', '--max-n', '80'), cli.EXIT_USAGE)
        self.assertRegex(sys.stderr.getvalue(), r'guard')

    def test_no_instances(self):
        self.assertEqual(self.doit('fuzz', '--count', '0'), cli.EXIT_OK)
        self.assertEqual(sys.stdout.getvalue(), '0/0 matched\n')

    @patch('line_match.fuzz.oracle_solve')
    def test_counterexample(self, oracle_solve):
        oracle_solve.return_value = (Matching(()), 0)
        dump_dir = self.path('failures')
        self.assertEqual(self.doit('fuzz', '--count', '2', '--seed', '9',
                                   '--max-n', '5', '--dump-dir', dump_dir),
                         cli.EXIT_COUNTEREXAMPLE)
        self.assertEqual(sys.stdout.getvalue(), '0/2 matched\n')
        self.assertRegex(sys.stderr.getvalue(),
                         r'reproduce with --seed 9 --count 2 --max-n 5')
        self.assertIn('seed9-0.json', os.listdir(dump_dir))


class BenchTests(CLITestCase):
    def test_bench(self):
        self.assertEqual(self.doit('bench', '--sizes', '10,20', '--reps',
                                   '1'), cli.EXIT_OK)
        lines = sys.stdout.getvalue().splitlines()
        self.assertEqual(lines[0], 'size\tmedian_ns\tratio')
        self.assertEqual(len(lines), 3)
        self.assertTrue(lines[1].startswith('10\t'))
        self.assertTrue(lines[1].endswith('\t-'))

    def test_single_size(self):
        self.assertEqual(self.doit('bench', '--sizes', '12', '--reps', '1',
                                   '--mode', 'ommdc'), cli.EXIT_OK)
        lines = sys.stdout.getvalue().splitlines()
        self.assertEqual(len(lines), 2)
        self.assertTrue(lines[1].endswith('\t-'))

    def test_no_sizes(self):
        self.assertEqual(self.doit('bench', '--sizes', ''), cli.EXIT_OK)
        self.assertEqual(sys.stdout.getvalue(), '')
