# treecross/config.py
import copy
import json
import os
from pathlib import Path

from .errors import ConfigError

DEFAULT_CONFIG = {
    "run": {
        "seed": 20240601,
        "threads": 1,
        "samples": 100000,
        "format": "csv"
    },
    "kolmogorov": {
        "n_list": [50, 100, 200, 400, 800]
    },
    "coupling": {
        "mode": "construct",
        "reject_cap": 10**7
    },
    "logging": {
        "verbose": False,
        "quiet": False
    }
}

ENV_OVERRIDES = {
    "TREECROSS_SEED": ("run", "seed"),
    "TREECROSS_THREADS": ("run", "threads"),
    "TREECROSS_SAMPLES": ("run", "samples"),
}


def global_config_path():
    return Path.home() / ".treecross" / "config.json"


def project_config_path():
    return Path.cwd() / ".treecross" / "config.json"


def read_config_file(path):
    path = Path(path)
    try:
        with open(path, 'r') as f:
            data = json.load(f)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from exc
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config ({exc.strerror})") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: config must be a JSON object")
    return data


def _env_value(name, raw):
    if name == "TREECROSS_THREADS" and raw.strip().lower() == "auto":
        return "auto"
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{name}={raw!r} is not an integer") from None


def apply_env(config, environ=None):
    environ = os.environ if environ is None else environ
    for name, (section, key) in ENV_OVERRIDES.items():
        if environ.get(name):
            config[section][key] = _env_value(name, environ[name])
    return config


def load_config(extra_path=None, environ=None):
    config = copy.deepcopy(DEFAULT_CONFIG)

    # Global, then project (overrides global), then --config
    for path in (global_config_path(), project_config_path()):
        if path.exists():
            config = deep_merge(config, read_config_file(path))
    if extra_path is not None:
        config = deep_merge(config, read_config_file(extra_path))

    config = apply_env(config, environ)
    validate_config(config)
    return config


def validate_config(config):
    run = config["run"]
    threads = run["threads"]
    if threads != "auto" and (not isinstance(threads, int) or threads < 1):
        raise ConfigError(f"run.threads must be a positive integer or 'auto', got {threads!r}")
    if not isinstance(run["samples"], int) or run["samples"] < 1:
        raise ConfigError(f"run.samples must be a positive integer, got {run['samples']!r}")
    if not isinstance(run["seed"], int) or not 0 <= run["seed"] < 2**64:
        raise ConfigError(f"run.seed must be a 64-bit unsigned integer, got {run['seed']!r}")
    if run["format"] not in ("csv", "json"):
        raise ConfigError(f"run.format must be csv or json, got {run['format']!r}")
    if config["coupling"]["mode"] not in ("construct", "reject", "exact"):
        raise ConfigError(f"coupling.mode must be construct, reject or exact, got {config['coupling']['mode']!r}")
    n_list = config["kolmogorov"]["n_list"]
    if not isinstance(n_list, list) or not all(isinstance(n, int) for n in n_list):
        raise ConfigError("kolmogorov.n_list must be a list of integers")
    return config


def save_global_config(config):
    path = global_config_path()
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w') as f:
        json.dump(config, f, indent=2)


def deep_merge(a, b):
    result = copy.deepcopy(a)
    for key, value in b.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = deep_merge(result[key], value)
        else:
            result[key] = value
    return result
