import os
import sys
from subprocess import PIPE, Popen

import pytest

from pellwalls.cli import cli


@pytest.fixture
def module_env(config):
    root = os.path.join(os.path.dirname(os.path.abspath(__file__)), '..')
    env = os.environ.copy()
    env['PYTHONPATH'] = root
    env['PELLWALLS_CONFIG'] = str(config)
    return env


@pytest.mark.parametrize('args', [
    ['--version'],
    ['report', '--d', '3', '--json'],
])
def test_module_matches_cli(runner, module_env, args):
    cli_result = runner.invoke(cli, args)

    pipe = Popen(
        [sys.executable, '-m', 'pellwalls'] + args,
        stdout=PIPE,
        env=module_env,
    )
    main_output = pipe.communicate()[0]

    assert pipe.returncode == 0
    assert cli_result.output == main_output.decode()
