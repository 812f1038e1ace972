# treecross/commands/stats_cmd.py
import click

from ..context import RunConfig
from ..core.exact import exact_moments
from ..core.normal import theoretical_bound
from ..errors import ConfigError
from ..utils.report import INT_LIST, write_csv, write_json_lines

STATS_HEADER = ["n", "mean_num", "mean_den", "var_num", "var_den", "mean_float", "var_float"]


def stats_row(moments):
    return {
        "n": moments.n,
        "mean_num": moments.mean.numerator,
        "mean_den": moments.mean.denominator,
        "var_num": moments.variance.numerator,
        "var_den": moments.variance.denominator,
        "mean_float": float(moments.mean),
        "var_float": float(moments.variance),
    }


@click.command()
@click.option('--n', 'n', type=int, default=None, help='Single vertex count (n >= 4)')
@click.option('--n-list', 'n_list', type=INT_LIST, default=None, help='Comma separated vertex counts')
@click.option('--format', 'fmt', type=click.Choice(['csv', 'json']), default=None)
@click.option('--out', type=click.Path(dir_okay=False), default=None)
@click.pass_context
def stats(ctx, n, n_list, fmt, out):
    """📐 Exact mean and variance of the crossing count"""
    run = ctx.obj['run']
    if (n is None) == (n_list is None):
        raise ConfigError("give exactly one of --n and --n-list")
    ns = (n,) if n is not None else n_list
    cfg = RunConfig(
        "stats", n=n, n_list=n_list or (),
        format=fmt or ctx.obj['config']['run']['format'], out=out,
    )
    # guard every n before anything is written
    moments = [exact_moments(k) for k in ns]

    with run.open_output(out) as stream:
        if cfg.format == "json":
            write_json_lines(stream, cfg.provenance(), (m.to_dict() for m in moments))
        else:
            write_csv(stream, cfg.provenance(), STATS_HEADER, (stats_row(m) for m in moments))


@click.command()
@click.option('--n', 'n', type=int, required=True, help='Vertex count (n >= 5)')
@click.option('--out', type=click.Path(dir_okay=False), default=None)
@click.pass_context
def bound(ctx, n, out):
    """📏 Explicit Kolmogorov bound for the normal approximation"""
    run = ctx.obj['run']
    cfg = RunConfig("bound", n=n, format="json", out=out)
    report = theoretical_bound(n)
    with run.open_output(out) as stream:
        write_json_lines(stream, cfg.provenance(), [report.to_dict()])
