import os

import pytest
from click.testing import CliRunner
from hypothesis import HealthCheck, settings, Verbosity

from pellwalls.formatters import DefaultFormatter, PorcelainFormatter


@pytest.fixture
def config(tmpdir):
    path = tmpdir.join('config')
    path.write(
        '[main]\n'
        'solutions = 2\n'
        'certify_bound = 10000\n'
        'sweep_certify_bound = 1000\n'
        'verify_dmax = 20\n'
    )
    return path


@pytest.fixture
def runner(config):
    return CliRunner(env={'PELLWALLS_CONFIG': str(config)})


@pytest.fixture
def default_formatter():
    return DefaultFormatter(decimal_digits=12)


@pytest.fixture
def porcelain_formatter():
    return PorcelainFormatter(decimal_digits=12)


settings.register_profile(
    "ci",
    settings(
        max_examples=1000,
        verbosity=Verbosity.verbose,
        suppress_health_check=[HealthCheck.too_slow]
    )
)
settings.register_profile("deterministic", settings(derandomize=True,))

if os.getenv('DETERMINISTIC_TESTS', 'false').lower() == 'true':
    settings.load_profile("deterministic")
elif os.getenv('CI', 'false').lower() == 'true':
    settings.load_profile("ci")
