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

from line_match.config import (
    DEFAULT_ORACLE_GUARD,
    blank_config,
    config_from_environment,
    config_from_ini,
    load_config,
    log_handler,
    oracle_guard,
    solver_options,
)
from line_match.model import ConfigError
import logbook
import os
from tempfile import TemporaryDirectory
from unittest import TestCase


class ConfigTestCase(TestCase):
    def setUp(self):
        self.tempdir = TemporaryDirectory()
        self.addCleanup(self.tempdir.cleanup)

    def ini(self, text):
        path = os.path.join(self.tempdir.name, 'linematch.ini')
        with open(path, 'w') as f:
            f.write(text)
        return path


class IniTests(ConfigTestCase):
    def test_missing_file(self):
        config = config_from_ini(os.path.join(self.tempdir.name, 'nope.ini'))
        self.assertEqual(config, blank_config())

    def test_settings(self):
        path = self.ini('[logging]\n'
                        'file = /tmp/linematch.log\n'
                        'rotate = yes\n'
                        'max_size = 1024\n'
                        'level = debug\n'
                        '[oracle]\n'
                        'guard = 12\n'
                        '[solver]\n'
                        'flow_check_limit = 100\n'
                        '[fuzz]\n'
                        'dump_dir = failures\n'
                        'jobs = 4\n')
        config = config_from_ini(path)
        self.assertEqual(config['logging']['file'], '/tmp/linematch.log')
        self.assertTrue(config['logging']['rotate'])
        self.assertEqual(config['logging']['max_size'], 1024)
        self.assertEqual(config['logging']['backup_count'], 5)
        self.assertEqual(config['logging']['level'], 'debug')
        self.assertEqual(config['oracle']['guard'], 12)
        self.assertEqual(config['fuzz'], {'dump_dir': 'failures', 'jobs': 4})
        self.assertEqual(solver_options(config), {'flow_check_limit': 100})

    def test_malformed_int(self):
        with self.assertRaisesRegex(ConfigError, 'oracle.guard'):
            config_from_ini(self.ini('[oracle]\nguard = lots\n'))

    def test_malformed_bool(self):
        with self.assertRaises(ConfigError):
            config_from_ini(self.ini('[logging]\nrotate = perhaps\n'))

    def test_malformed_file(self):
        with self.assertRaises(ConfigError):
            config_from_ini(self.ini('guard = 12\n'))


class EnvironmentTests(ConfigTestCase):
    def test_oracle_guard(self):
        self.assertEqual(oracle_guard({}), DEFAULT_ORACLE_GUARD)
        self.assertEqual(oracle_guard({'LINEMATCH_ORACLE_GUARD': '8'}), 8)
        for bad in ('eight', '-1'):
            with self.assertRaises(ConfigError):
                oracle_guard({'LINEMATCH_ORACLE_GUARD': bad})

    def test_environment_overrides_ini(self):
        path = self.ini('[oracle]\nguard = 12\n[logging]\nfile = a.log\n')
        config = load_config(path, {'LINEMATCH_ORACLE_GUARD': '30',
                                    'LINEMATCH_LOG_FILE': ''})
        self.assertEqual(config['oracle']['guard'], 30)
        self.assertIsNone(config['logging']['file'])

    def test_empty_environment(self):
        self.assertEqual(config_from_environment(environ={}), blank_config())


class LogHandlerTests(ConfigTestCase):
    def test_stderr(self):
        handler = log_handler(blank_config())
        self.assertIsInstance(handler, logbook.StderrHandler)
        self.assertEqual(handler.level, logbook.WARNING)
        self.assertEqual(log_handler(blank_config(), 'DEBUG').level,
                         logbook.DEBUG)

    def test_file(self):
        config = blank_config()
        config['logging']['file'] = os.path.join(self.tempdir.name, 'lm.log')
        config['logging']['level'] = 'info'
        handler = log_handler(config)
        self.addCleanup(handler.close)
        self.assertIsInstance(handler, logbook.FileHandler)
        self.assertNotIsInstance(handler, logbook.RotatingFileHandler)
        self.assertEqual(handler.level, logbook.INFO)

    def test_rotating_file(self):
        config = blank_config()
        config['logging']['file'] = os.path.join(self.tempdir.name, 'lm.log')
        config['logging']['rotate'] = True
        handler = log_handler(config)
        self.addCleanup(handler.close)
        self.assertIsInstance(handler, logbook.RotatingFileHandler)

    def test_bad_level(self):
        config = blank_config()
        config['logging']['level'] = 'chatty'
        with self.assertRaises(ConfigError):
            log_handler(config)
