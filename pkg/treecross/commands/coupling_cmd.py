# treecross/commands/coupling_cmd.py
import logging
from collections import Counter

import click
import numpy as np

from ..context import RunConfig
from ..core.exact import MAX_ORACLE_N, size_bias_mean
from ..core.executor import run_seeded
from ..core.sizebias import (
    coupling_analysis,
    coupling_batch,
    coupling_bound,
    rejection_law_exact,
    size_bias_law_oracle,
)
from ..errors import CouplingFailure, GuardViolation
from ..utils.report import THREADS, write_json_lines

log = logging.getLogger(__name__)


def empirical_tv(values, n, threads=1):
    """Total variation distance between the sample law of `values` and the size-bias law."""
    oracle = size_bias_law_oracle(n, threads)
    counts = Counter(int(v) for v in values)
    size = len(values)
    support = set(counts) | set(oracle.pmf)
    return sum(abs(counts.get(k, 0) / size - float(oracle.probability(k))) for k in support) / 2


def sampled_report(n, mode, samples, seed, threads, cap):
    rows = np.concatenate(run_seeded(coupling_batch, samples, seed, threads, n, mode, cap))
    x, x_s, retries = rows[:, 0], rows[:, 1], rows[:, 2]
    diffs = np.abs(x_s - x)
    limit = coupling_bound(n)
    violations = int(np.count_nonzero(diffs > limit))
    report = {
        "n": n,
        "mode": mode,
        "samples": samples,
        "tv_distance_to_oracle": empirical_tv(x_s, n, threads) if n <= MAX_ORACLE_N else None,
        "max_abs_diff": int(diffs.max()),
        "bound_4n_minus_3": limit,
        "bound_violations": violations,
        "mean_x_s": float(x_s.mean()),
        "size_bias_mean": float(size_bias_mean(n)),
    }
    if mode == "reject":
        report["mean_retries"] = float(retries.mean())
        if violations:
            log.warning("%d rejection couplings moved X by more than %d; the rejection coupling is not bounded", violations, limit)
    elif violations:
        raise CouplingFailure(f"{violations} constructive couplings exceed |X^s - X| <= {limit} at n={n}")
    return report


def exact_report(n, threads):
    analysis = coupling_analysis(n, threads)
    rejection = rejection_law_exact(n)
    rejection_tv = rejection.tv_distance(size_bias_law_oracle(n, threads))
    return {
        "n": n,
        "mode": "exact",
        "tv_distance_to_oracle": float(analysis.tv_distance),
        "tv_distance_exact": str(analysis.tv_distance),
        "rejection_tv_distance": str(rejection_tv),
        "max_abs_diff": analysis.max_abs_diff,
        "bound_4n_minus_3": coupling_bound(n),
        "bound_violations": 0 if analysis.max_abs_diff <= coupling_bound(n) else 1,
        "psi_squared": str(analysis.psi_squared),
        "psi_squared_tree": str(analysis.psi_squared_tree),
        "mean_x_s": str(analysis.marginal.mean()),
        "size_bias_mean": str(size_bias_mean(n)),
    }


@click.command(name='coupling-check')
@click.option('--n', 'n', type=int, required=True, help='Vertex count (n >= 4; exact mode 4..6)')
@click.option('--mode', type=click.Choice(['construct', 'reject', 'exact']), default=None)
@click.option('--samples', type=click.IntRange(min=1), default=None, help='Defaults to run.samples')
@click.option('--seed', type=click.IntRange(0, 2**64 - 1), default=None, help='Defaults to run.seed')
@click.option('--threads', type=THREADS, default=None, help="Worker processes, or 'auto'")
@click.option('--out', type=click.Path(dir_okay=False), default=None)
@click.pass_context
def coupling_check(ctx, n, mode, samples, seed, threads, out):
    """🔗 Check the size-bias coupling against its exact law and the 4(n-3) bound"""
    run = ctx.obj['run']
    config = ctx.obj['config']
    mode = mode or config['coupling']['mode']
    if n < 4:
        raise GuardViolation(f"couplings need n >= 4, got {n}")
    cfg = RunConfig(
        "coupling-check", n=n,
        samples=None if mode == "exact" else (samples or config['run']['samples']),
        seed=None if mode == "exact" else (config['run']['seed'] if seed is None else seed),
        threads=threads or config['run']['threads'],
        format="json", out=out, extras={"mode": mode},
    )

    with run.status(f"coupling-check n={n} mode={mode}"):
        if mode == "exact":
            report = exact_report(n, cfg.threads)
        else:
            report = sampled_report(n, mode, cfg.samples, cfg.seed, cfg.threads, config['coupling']['reject_cap'])

    with run.open_output(out) as stream:
        write_json_lines(stream, cfg.provenance(), [report])
