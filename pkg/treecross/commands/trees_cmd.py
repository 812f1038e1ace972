# treecross/commands/trees_cmd.py
import click

from ..context import RunConfig
from ..core.crossings import count_crossings_fast
from ..core.executor import worker_rng
from ..core.trees import (
    MAX_ENUMERATION_N,
    enumerate_trees,
    format_tree,
    prufer_to_tree,
    sample_prufer,
    tree_to_prufer,
)
from ..errors import GuardViolation
from ..utils.report import provenance_line, write_csv, write_json_lines

TREE_HEADER = ["index", "prufer", "crossings"]


def _rows(trees):
    for i, (code, t) in enumerate(trees):
        yield {
            "index": i,
            "prufer": " ".join(str(x) for x in code.code),
            "crossings": count_crossings_fast(t),
            "edges": [list(e) for e in t.sorted_edges()],
        }


def _emit(cfg, rows, stream):
    if cfg.format == "json":
        write_json_lines(stream, cfg.provenance(), rows)
    else:
        write_csv(stream, cfg.provenance(), TREE_HEADER, rows)


@click.command()
@click.option('--n', 'n', type=int, required=True, help='Number of vertices')
@click.option('--samples', type=click.IntRange(min=1), default=10, show_default=True)
@click.option('--seed', type=click.IntRange(0, 2**64 - 1), default=None, help='Defaults to run.seed')
@click.option('--format', 'fmt', type=click.Choice(['csv', 'json', 'tree']), default=None)
@click.option('--out', type=click.Path(dir_okay=False), default=None)
@click.pass_context
def sample(ctx, n, samples, seed, fmt, out):
    """🌲 Draw uniform random labelled trees"""
    run = ctx.obj['run']
    config = ctx.obj['config']
    if n < 2:
        raise GuardViolation(f"sampling needs n >= 2, got {n}")
    cfg = RunConfig(
        "sample", n=n, samples=samples,
        seed=config['run']['seed'] if seed is None else seed,
        format=fmt or config['run']['format'], out=out,
    )
    rng = worker_rng(cfg.seed, 0)
    trees = []
    for _ in range(samples):
        code = sample_prufer(n, rng)
        trees.append((code, prufer_to_tree(code)))

    with run.open_output(out) as stream:
        if cfg.format == "tree":
            stream.write(provenance_line(cfg.provenance()))
            stream.write("\n".join(format_tree(t) for _, t in trees))
        else:
            _emit(cfg, _rows(trees), stream)


@click.command(name='enumerate')
@click.option('--n', 'n', type=int, required=True, help=f'Number of vertices, at most {MAX_ENUMERATION_N}')
@click.option('--format', 'fmt', type=click.Choice(['csv', 'json']), default=None)
@click.option('--out', type=click.Path(dir_okay=False), default=None)
@click.pass_context
def enumerate_cmd(ctx, n, fmt, out):
    """📜 List every labelled tree with its crossing count"""
    run = ctx.obj['run']
    config = ctx.obj['config']
    if not 2 <= n <= MAX_ENUMERATION_N:
        raise GuardViolation(f"tree enumeration supports 2 <= n <= {MAX_ENUMERATION_N}, got {n}")
    cfg = RunConfig("enumerate", n=n, format=fmt or config['run']['format'], out=out)
    trees = ((tree_to_prufer(t), t) for t in enumerate_trees(n))
    with run.open_output(out) as stream:
        _emit(cfg, _rows(trees), stream)
