# treecross/context.py
import sys
from dataclasses import dataclass, field
from pathlib import Path

from rich.console import Console

from . import REPORT_FORMAT_VERSION, __version__
from .core.executor import resolve_threads
from .errors import ConfigError, GuardViolation

SUBCOMMANDS = ("sample", "enumerate", "stats", "coupling-check", "kolmogorov", "bound")
FORMATS = ("csv", "json", "tree")


@dataclass
class RunConfig:
    """Effective parameters of one subcommand run, after config layering and flags."""

    subcommand: str
    n: int | None = None
    n_list: tuple = ()
    samples: int | None = None
    seed: int | None = None
    threads: int = 1
    format: str = "csv"
    out: Path | None = None
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ConfigError(f"unknown subcommand {self.subcommand!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"unknown output format {self.format!r}")
        self.threads = resolve_threads(self.threads)
        self.n_list = tuple(self.n_list)
        if self.samples is not None and self.samples < 1:
            raise GuardViolation(f"samples must be positive, got {self.samples}")
        if self.seed is not None and not 0 <= self.seed < 2**64:
            raise GuardViolation(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @property
    def threads_matter(self):
        """Monte Carlo runs are reproducible per (seed, threads); exact ones per seed alone."""
        return self.subcommand == "kolmogorov" or (
            self.subcommand == "coupling-check" and self.extras.get("mode") != "exact"
        )

    def params(self):
        params = {"subcommand": self.subcommand}
        if self.n is not None:
            params["n"] = self.n
        if self.n_list:
            params["n_list"] = list(self.n_list)
        for key in ("samples", "seed"):
            value = getattr(self, key)
            if value is not None:
                params[key] = value
        if self.threads_matter:
            params["threads"] = self.threads
        params["format"] = self.format
        params.update(self.extras)
        return params

    def provenance(self):
        return {
            "tool": "treecross",
            "version": __version__,
            "report_format": REPORT_FORMAT_VERSION,
            "params": self.params(),
        }


class RunContext:
    """What every command finds in ctx.obj['run']: config, stderr console and the output sink."""

    def __init__(self, config, quiet=False):
        self.config = config
        self.quiet = quiet
        self.console = Console(stderr=True, quiet=quiet)

    def open_output(self, out):
        if out is None:
            return _Stdout()
        try:
            Path(out).parent.mkdir(parents=True, exist_ok=True)
            return open(out, 'w', newline='')
        except OSError as exc:
            raise ConfigError(f"cannot write {out}: {exc.strerror}") from exc

    def status(self, message):
        return self.console.status(message, spinner="dots")


class _Stdout:
    def __enter__(self):
        return sys.stdout

    def __exit__(self, *exc):
        sys.stdout.flush()
        return False
