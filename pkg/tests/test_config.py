import os
from unittest.mock import patch

import pytest
from click.testing import CliRunner

from pellwalls.cli import cli
from pellwalls.configuration import (
    ConfigurationException,
    load_config,
    validate_jobs,
)


def test_explicit_nonexistant(runner):
    result = CliRunner().invoke(
        cli,
        ['report', '--d', '2'],
        env={
            'PELLWALLS_CONFIG': '/nonexistant',
        },
        catch_exceptions=True,
    )
    assert result.exception
    assert "Configuration file /nonexistant does not exist" in result.output


def test_xdg_nonexistant_uses_defaults():
    with patch('xdg.BaseDirectory.xdg_config_dirs', []):
        result = CliRunner().invoke(
            cli,
            ['walls', '--d', '2'],
            catch_exceptions=True,
        )
    assert not result.exception
    # Header plus the default two walls plus the accumulation point.
    assert len(result.output.splitlines()) == 4


def test_xdg_existant(tmpdir, config):
    config.write('[main]\n' 'solutions = 3\n')
    with tmpdir.mkdir('pellwalls').join('pellwalls.conf').open('w') as f:
        with config.open() as c:
            f.write(c.read())

    with patch('xdg.BaseDirectory.xdg_config_dirs', [str(tmpdir)]):
        result = CliRunner().invoke(
            cli,
            ['walls', '--d', '2'],
            catch_exceptions=True,
        )
    assert not result.exception
    assert len(result.output.splitlines()) == 5


def test_defaults(config):
    config.write('[main]\n')
    with patch(
        'pellwalls.configuration.find_config',
        return_value=(str(config)),
    ):
        cfg = load_config()

    assert cfg['main']['solutions'] == 2
    assert cfg['main']['decimal_digits'] == 12
    assert cfg['main']['enumeration_cap'] == 10 ** 6
    assert cfg['main']['certify_bound'] == 10 ** 6
    assert cfg['main']['sweep_certify_bound'] == 1000
    assert cfg['main']['verify_dmax'] == 1000
    assert cfg['main']['jobs'] == 1
    assert cfg['main']['format'] == 'table'


def test_no_file_at_all():
    with patch('pellwalls.configuration.find_config', return_value=None):
        cfg = load_config()

    assert cfg['main']['solutions'] == 2


def test_invalid_digits(config, runner):
    config.write('[main]\n' 'decimal_digits = 0\n')
    result = runner.invoke(cli, ['walls', '--d', '2'])
    assert result.exception
    assert 'Error: Bad decimal_digits setting' in result.output


def test_invalid_format(config):
    config.write("format = 'yaml'\n", 'a')
    with patch(
        'pellwalls.configuration.find_config',
        return_value=(str(config)),
    ), pytest.raises(ConfigurationException) as excinfo:
        load_config()

    assert 'Bad format setting' in str(excinfo.value)


def test_json_format_from_config(config, runner):
    config.write("format = 'json'\n", 'a')
    result = runner.invoke(cli, ['report', '--d', '4'])
    assert not result.exception
    assert result.output.startswith('{')


def test_jobs_zero_means_every_cpu(config):
    config.write('jobs = 0\n', 'a')
    with patch(
        'pellwalls.configuration.find_config',
        return_value=(str(config)),
    ):
        cfg = load_config()

    assert cfg['main']['jobs'] == (os.cpu_count() or 1)


def test_validate_jobs():
    assert validate_jobs('3') == 3
    assert validate_jobs(0) == (os.cpu_count() or 1)
