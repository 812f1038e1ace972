# treecross/core/executor.py
"""Worker pool and the seed-derivation rule for parallel runs.

Worker k always draws from PCG64 seeded with SeedSequence(seed, spawn_key=(k,)),
and a run of `samples` draws gives worker k a contiguous chunk (the first
`samples % threads` workers take one extra). Results are merged in worker
order, so a (seed, threads) pair always reproduces the same output.
"""
import logging
from multiprocessing import Pool

import numpy as np
import psutil

from ..errors import GuardViolation

log = logging.getLogger(__name__)


def resolve_threads(threads) -> int:
    if threads in (None, "auto"):
        return max(psutil.cpu_count(logical=False) or 1, 1)
    threads = int(threads)
    if threads < 1:
        raise GuardViolation(f"threads must be at least 1, got {threads}")
    return threads


def worker_rng(seed: int, worker: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(int(worker),)))


def split_samples(samples: int, workers: int) -> list:
    base, extra = divmod(int(samples), int(workers))
    return [base + (1 if k < extra else 0) for k in range(workers)]


def run_tasks(fn, tasks, threads=1) -> list:
    """Apply `fn` to every task; results come back in task order."""
    tasks = list(tasks)
    if threads <= 1 or len(tasks) <= 1:
        return [fn(task) for task in tasks]
    processes = min(threads, len(tasks))
    log.debug("fanning %d tasks out over %d processes", len(tasks), processes)
    try:
        with Pool(processes=processes) as pool:
            return pool.map(fn, tasks)
    except OSError as exc:
        log.warning("process pool unavailable (%s); running serially", exc)
        return [fn(task) for task in tasks]


def _seeded_call(task):
    fn, count, seed, worker, args = task
    return fn(count, worker_rng(seed, worker), *args)


def run_seeded(fn, samples, seed, threads=1, *args) -> list:
    """Call fn(count, rng, *args) once per worker and return the partial results.

    `fn` must be a module-level function so worker processes can import it.
    """
    counts = split_samples(samples, threads)
    tasks = [(fn, count, seed, worker, args) for worker, count in enumerate(counts)]
    return run_tasks(_seeded_call, tasks, threads)
