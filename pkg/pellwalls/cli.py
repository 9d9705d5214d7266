import functools
import sys
from contextlib import contextmanager
from fractions import Fraction

import click
import click_log
from atomicwrites import atomic_write

from pellwalls import crf, exceptions, formatters, verification, walls
from pellwalls.arith import is_perfect_square
from pellwalls.configuration import (
    ConfigurationException,
    load_config,
    validate_jobs,
)
from pellwalls.report import build_report


click_log.basic_config()


@contextmanager
def handle_error():
    try:
        yield
    except exceptions.PellwallsException as e:
        click.echo(e)
        sys.exit(e.EXIT_CODE)


def catch_errors(f):
    @functools.wraps(f)
    def wrapper(*a, **kw):
        with handle_error():
            return f(*a, **kw)

    return wrapper


class RationalType(click.ParamType):
    """Accepts ``3/4``, ``0.75`` or ``1``, kept as an exact fraction."""

    name = 'rational'

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            self.fail('{} is not a rational number.'.format(value), param,
                      ctx)


RATIONAL = RationalType()

with_d_option = click.option(
    '--d',
    'd',
    required=True,
    type=click.IntRange(min=1),
    help='Polarization type (1, d).',
)


def _write_csv(path, text):
    if path:
        with atomic_write(path, overwrite=True) as f:
            f.write(text)
    else:
        click.echo(text, nl=False)


class AppContext:
    def __init__(self):
        self.config = None
        self.formatter_class = None

    @functools.cached_property
    def formatter(self):
        return self.formatter_class(self.config['main']['decimal_digits'])

    @functools.cached_property
    def csv_formatter(self):
        return formatters.DefaultFormatter(
            self.config['main']['decimal_digits']
        )

    def solutions(self, value):
        if value is None:
            return self.config['main']['solutions']
        return value


pass_ctx = click.make_pass_decorator(AppContext)


@click.group()
@click_log.simple_verbosity_option()
@click.option(
    '--config',
    '-c',
    default=None,
    help='The config file to use.',
    envvar='PELLWALLS_CONFIG',
    metavar='PATH',
)
@click.pass_context
@click.version_option(prog_name='pellwalls')
@catch_errors
def cli(click_ctx, config):
    ctx = click_ctx.ensure_object(AppContext)
    try:
        ctx.config = load_config(config)
    except ConfigurationException as e:
        raise click.ClickException(e.args[0])

    if ctx.config['main']['format'] == 'json':
        ctx.formatter_class = formatters.PorcelainFormatter
    else:
        ctx.formatter_class = formatters.DefaultFormatter


@cli.command()
@with_d_option
@click.option(
    '--solutions',
    '-n',
    type=click.IntRange(min=1),
    help='Number of Pell solutions to use for walls and candidates.',
)
@click.option(
    '--json',
    'output_format',
    flag_value='json',
    help='Print the report as JSON.',
)
@click.option(
    '--table',
    'output_format',
    flag_value='table',
    help='Print the report as human readable tables.',
)
@pass_ctx
@catch_errors
def report(ctx, d, solutions, output_format):
    '''
    Show walls, candidate functions and verdicts for D.
    '''
    main = ctx.config['main']
    result = build_report(
        d,
        ctx.solutions(solutions),
        cap=main['enumeration_cap'],
        certify_bound=main['certify_bound'],
    )

    if output_format == 'json':
        formatter = formatters.PorcelainFormatter(main['decimal_digits'])
    elif output_format == 'table':
        formatter = formatters.DefaultFormatter(main['decimal_digits'])
    else:
        formatter = ctx.formatter
    click.echo(formatter.report(result))


@cli.command('walls')
@with_d_option
@click.option(
    '--solutions',
    '-n',
    type=click.IntRange(min=0),
    help='Number of walls to export.',
)
@click.option(
    '--csv',
    'csv_path',
    type=click.Path(dir_okay=False, writable=True),
    help='Write the CSV to this file instead of standard output.',
)
@pass_ctx
@catch_errors
def walls_command(ctx, d, solutions, csv_path):
    '''
    Export the walls of D as CSV, largest first.
    '''
    if is_perfect_square(d):
        raise exceptions.NoPellSolution(d)
    found = walls.enumerate_walls(
        d, ctx.solutions(solutions), ctx.config['main']['certify_bound']
    )
    _write_csv(csv_path, ctx.csv_formatter.walls_csv(d, found))


@cli.command()
@with_d_option
@click.option(
    '--candidate',
    default=0,
    type=click.IntRange(min=0),
    help=(
        'Index of the candidate: 0 is the trivial (or perfect square) '
        'shape, i >= 1 the shape of the i-th Pell solution.'
    ),
)
@click.option(
    '--xmax',
    default='1',
    type=RATIONAL,
    help='Right end of the sampled interval, e.g. 3/4.',
)
@click.option(
    '--samples',
    default=21,
    type=click.IntRange(min=1),
    help='Number of equally spaced sample points, 0 and xmax included.',
)
@click.option(
    '--narrow',
    is_flag=True,
    help='Index the candidates that survive narrowing instead.',
)
@click.option(
    '--solutions',
    '-n',
    type=click.IntRange(min=1),
    help='Number of Pell-shaped candidates to offer.',
)
@click.option(
    '--csv',
    'csv_path',
    type=click.Path(dir_okay=False, writable=True),
    help='Write the CSV to this file instead of standard output.',
)
@pass_ctx
@catch_errors
def plot(ctx, d, candidate, xmax, samples, narrow, solutions, csv_path):
    '''
    Sample h0 and h1 of a candidate for D as CSV.
    '''
    if xmax < 0:
        raise click.BadParameter('must not be negative.', param_hint='--xmax')

    available = crf.candidates(
        d,
        ctx.solutions(solutions),
        apply_char_narrowing=narrow,
        certify_bound=ctx.config['main']['certify_bound'],
    )
    if candidate >= len(available):
        raise click.BadParameter(
            'd={} has {} candidates, valid indices are 0 to {}.'.format(
                d, len(available), len(available) - 1
            ),
            param_hint='--candidate',
        )

    rows = crf.sample(available[candidate], xmax, samples)
    _write_csv(csv_path, ctx.csv_formatter.plot_csv(rows))


@cli.command()
@click.option(
    '--dmax',
    type=click.IntRange(min=1),
    help='Number of non-square values of d to check.',
)
@click.option(
    '--deep',
    is_flag=True,
    help=(
        'Certify every minimal solution with the full certify_bound and '
        'run the floor-sqrt suite over at least 10000 values of d.'
    ),
)
@click.option(
    '--jobs',
    '-j',
    type=click.IntRange(min=0),
    help='Worker processes, 0 for one per CPU.',
)
@pass_ctx
@catch_errors
def verify(ctx, dmax, deep, jobs):
    '''
    Run every consistency suite and print a summary.
    '''
    main = ctx.config['main']
    dmax = dmax or main['verify_dmax']
    jobs = main['jobs'] if jobs is None else validate_jobs(jobs)
    certify_bound = (
        main['certify_bound'] if deep else main['sweep_certify_bound']
    )

    results = verification.verify(
        dmax,
        certify_bound,
        cap=main['enumeration_cap'],
        deep=deep,
        jobs=jobs,
    )
    click.echo(ctx.formatter.verification(results))

    failed = verification.first_failure(results)
    if failed is not None:
        raise exceptions.VerificationFailure(failed.name, failed.failure)
