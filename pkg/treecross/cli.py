# treecross/cli.py
import json

import click

from . import REPORT_FORMAT_VERSION, __version__
from .config import (
    DEFAULT_CONFIG,
    deep_merge,
    global_config_path,
    load_config,
    read_config_file,
    save_global_config,
    validate_config,
)
from .context import RunContext
from .errors import ConfigError, TreeCrossError
from .log import setup_logging

# Import command modules
from .commands import coupling_cmd, kolmogorov_cmd, stats_cmd, trees_cmd


class ReportingGroup(click.Group):
    """Turns library errors into one JSON line on stdout and the mapped exit code."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except TreeCrossError as exc:
            click.echo(json.dumps(exc.to_dict(), separators=(",", ":")))
            ctx.exit(exc.exit_code)


@click.group(cls=ReportingGroup)
@click.option('--verbose', '-v', is_flag=True, help='Enable debug logging on stderr')
@click.option('--quiet', '-q', is_flag=True, help='Only log errors; hide progress')
@click.option('--config', 'config_path', type=click.Path(exists=True, dir_okay=False), default=None,
              help='Extra JSON config layered over the global and project files')
@click.version_option(__version__, prog_name="treecross",
                      message=f"%(prog)s %(version)s (report format {REPORT_FORMAT_VERSION})")
@click.pass_context
def cli(ctx, verbose, quiet, config_path):
    """🌳 treecross — crossings of random labelled trees in convex position"""
    ctx.ensure_object(dict)
    config = load_config(config_path)
    if verbose:
        config['logging']['verbose'] = True
    if quiet:
        config['logging']['quiet'] = True
    setup_logging(config['logging']['verbose'], config['logging']['quiet'])
    ctx.obj['config'] = config
    ctx.obj['run'] = RunContext(config, quiet=config['logging']['quiet'])


# Register commands
cli.add_command(trees_cmd.sample)
cli.add_command(trees_cmd.enumerate_cmd)
cli.add_command(stats_cmd.stats)
cli.add_command(stats_cmd.bound)
cli.add_command(coupling_cmd.coupling_check)
cli.add_command(kolmogorov_cmd.kolmogorov)


def _parse_setting(text):
    key, sep, raw = text.partition("=")
    if not sep or key.count(".") != 1:
        raise ConfigError(f"expected section.key=value, got {text!r}")
    section, name = key.split(".")
    if name not in DEFAULT_CONFIG.get(section, {}):
        raise ConfigError(f"unknown setting {key!r}")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return {section: {name: value}}


@cli.command()
@click.option('--set', 'settings', multiple=True, metavar='SECTION.KEY=VALUE',
              help='Store a value in the global config file')
@click.pass_context
def config(ctx, settings):
    """⚙️ Show the effective configuration, or store values globally"""
    if settings:
        path = global_config_path()
        stored = read_config_file(path) if path.exists() else {}
        for setting in settings:
            stored = deep_merge(stored, _parse_setting(setting))
        validate_config(deep_merge(ctx.obj['config'], stored))
        save_global_config(stored)
        ctx.obj['config'] = deep_merge(ctx.obj['config'], stored)
    click.echo(json.dumps(ctx.obj['config'], indent=2))


if __name__ == '__main__':
    cli(obj={})
