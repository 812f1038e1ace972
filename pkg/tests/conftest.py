# tests/conftest.py
import numpy as np
import pytest

from treecross.core.trees import LabeledTree


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def crossing_tree():
    """{1,3},{2,4},{1,2} on 4 vertices: exactly one crossing, at (1,2,3,4)."""
    return LabeledTree(4, [(1, 3), (2, 4), (1, 2)])


@pytest.fixture
def isolated_env(tmp_path, monkeypatch):
    """Empty home and working directory, no TREECROSS_* overrides."""
    home = tmp_path / "home"
    work = tmp_path / "work"
    home.mkdir()
    work.mkdir()
    monkeypatch.setenv("HOME", str(home))
    monkeypatch.chdir(work)
    for name in ("TREECROSS_SEED", "TREECROSS_THREADS", "TREECROSS_SAMPLES"):
        monkeypatch.delenv(name, raising=False)
    return tmp_path
