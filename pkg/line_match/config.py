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
Configuration from ini files and the environment, and the log handler it
selects
"""

from configparser import ConfigParser, Error as ConfigParserError
import logbook
from .model import ConfigError
import os

DEFAULT_ORACLE_GUARD = 64

int_settings = (
    ('logging', 'max_size'),
    ('logging', 'backup_count'),
    ('oracle', 'guard'),
    ('solver', 'flow_check_limit'),
    ('fuzz', 'jobs'),
)


def blank_config():
    return {
        'logging': {
            'file': None,
            'rotate': False,
            'max_size': 1048576,
            'backup_count': 5,
            'level': 'WARNING',
        },
        'oracle': {
            'guard': DEFAULT_ORACLE_GUARD,
        },
        'solver': {
            'flow_check_limit': 65536,
        },
        'fuzz': {
            'dump_dir': 'fuzz-failures',
            'jobs': 1,
        },
    }


def config_from_ini(path, config=None):
    """Overlay the settings of the ini file at `path`. A missing file
    leaves the configuration unchanged."""
    if config is None:
        config = blank_config()
    parser = ConfigParser()
    try:
        if not parser.read([path]):
            return config
    except ConfigParserError as e:
        raise ConfigError('Malformed config file {}: {}'.format(path, e))

    for section, key in int_settings:
        if not parser.has_option(section, key):
            continue
        try:
            config[section][key] = parser.getint(section, key)
        except ValueError:
            raise ConfigError('Malformed {}.{} {}'.format(
                section, key, parser.get(section, key)))

    try:
        config['logging']['rotate'] = parser.getboolean(
            'logging', 'rotate', fallback=config['logging']['rotate'])
    except ValueError:
        raise ConfigError('Malformed logging.rotate {}'.format(
            parser.get('logging', 'rotate')))

    for section, key in (('logging', 'file'), ('logging', 'level'),
                         ('fuzz', 'dump_dir')):
        if parser.has_option(section, key):
            config[section][key] = parser.get(section, key)

    return config


def oracle_guard(environ=None):
    """The oracle's point-count guard, LINEMATCH_ORACLE_GUARD if set."""
    if environ is None:
        environ = os.environ
    value = environ.get('LINEMATCH_ORACLE_GUARD')
    if value is None:
        return DEFAULT_ORACLE_GUARD
    try:
        guard = int(value)
    except ValueError:
        raise ConfigError('Malformed LINEMATCH_ORACLE_GUARD {}'.format(value))
    if guard < 0:
        raise ConfigError('Malformed LINEMATCH_ORACLE_GUARD {}'.format(value))
    return guard


def config_from_environment(config=None, environ=None):
    if config is None:
        config = blank_config()
    if environ is None:
        environ = os.environ

    if 'LINEMATCH_ORACLE_GUARD' in environ:
        config['oracle']['guard'] = oracle_guard(environ)

    try:
        config['logging']['file'] = environ['LINEMATCH_LOG_FILE'] or None
    except KeyError:
        pass

    return config


def load_config(path, environ=None):
    return config_from_environment(config_from_ini(path), environ)


def solver_options(config):
    return dict(config['solver'])


def log_handler(config, level=None):
    """The single handler a command runs under."""
    level = (level or config['logging']['level']).upper()
    try:
        logbook.lookup_level(level)
    except LookupError:
        raise ConfigError('Malformed logging.level {}'.format(level))

    logfile = config['logging']['file']
    if logfile:
        if config['logging']['rotate']:
            return logbook.RotatingFileHandler(
                logfile, max_size=config['logging']['max_size'],
                backup_count=config['logging']['backup_count'], level=level)
        return logbook.FileHandler(logfile, level=level)
    return logbook.StderrHandler(level=level)
