# treecross/commands/kolmogorov_cmd.py
import click
from rich.progress import BarColumn, MofNCompleteColumn, Progress, TextColumn, TimeElapsedColumn

from ..context import RunConfig
from ..core.normal import CENTERINGS, rate_experiment, theoretical_bound
from ..utils.report import INT_LIST, THREADS, write_csv

KOLMOGOROV_HEADER = ["n", "N", "ks_distance", "ks_stderr_proxy", "bound_total", "slope_running"]


@click.command()
@click.option('--n-list', 'n_list', type=INT_LIST, default=None, help='Comma separated n values (each >= 5)')
@click.option('--samples', type=click.IntRange(min=1), default=None, help='Trees per n, defaults to run.samples')
@click.option('--seed', type=click.IntRange(0, 2**64 - 1), default=None)
@click.option('--threads', type=THREADS, default=None, help="Worker processes, or 'auto'")
@click.option('--centering', type=click.Choice(CENTERINGS), default='exact', show_default=True)
@click.option('--out', type=click.Path(dir_okay=False), default=None)
@click.pass_context
def kolmogorov(ctx, n_list, samples, seed, threads, centering, out):
    """📉 Empirical Kolmogorov distance of the standardized crossing count"""
    run = ctx.obj['run']
    config = ctx.obj['config']
    cfg = RunConfig(
        "kolmogorov",
        n_list=n_list or config['kolmogorov']['n_list'],
        samples=samples or config['run']['samples'],
        seed=config['run']['seed'] if seed is None else seed,
        threads=threads or config['run']['threads'],
        format="csv", out=out, extras={"centering": centering},
    )
    # every n must admit the bound (n >= 5) before any sampling starts
    for n in cfg.n_list:
        theoretical_bound(n)

    progress = Progress(
        TextColumn("[bold]kolmogorov"),
        BarColumn(),
        MofNCompleteColumn(),
        TimeElapsedColumn(),
        console=run.console,
        transient=True,
    )
    with progress:
        task = progress.add_task("n", total=len(cfg.n_list))
        rows = rate_experiment(
            cfg.n_list, cfg.samples, cfg.seed, cfg.threads, centering,
            progress=lambda n: progress.advance(task),
        )

    with run.open_output(out) as stream:
        write_csv(stream, cfg.provenance(), KOLMOGOROV_HEADER, rows)
