from pathlib import Path

import pytest

from pacheck.cli import default_corpus


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return default_corpus()


@pytest.fixture(autouse=True)
def _positional_default(monkeypatch):
    # tests state their codec explicitly; keep the ambient default fixed
    monkeypatch.delenv("PACHECK_CODEC", raising=False)
