import pytest

from sgbeam.core.config import Settings


def test_defaults(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv("SGBEAM_DEFAULT_DEPTH", raising=False)
    cfg = Settings(_env_file=None)
    assert cfg.DEFAULT_DEPTH == 5
    assert cfg.DEFAULT_ESTIMATOR == "sgrid"
    assert cfg.MAX_BINS_PER_ATTRIBUTE == 4096


def test_prefixed_environment_overrides(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("SGBEAM_DEFAULT_BEAM_WIDTH", "7")
    monkeypatch.setenv("SGBEAM_LOG_FORMAT", "console")
    monkeypatch.setenv("DEFAULT_TOP_K", "99")
    cfg = Settings(_env_file=None)
    assert cfg.DEFAULT_BEAM_WIDTH == 7
    assert cfg.LOG_FORMAT == "console"
    assert cfg.DEFAULT_TOP_K == 10
