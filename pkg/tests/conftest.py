import pytest

from dynwfa import instantiate


@pytest.fixture(autouse=True)
def _plugin_sandbox(tmp_path, monkeypatch):
    # Keep generated plugins out of $HOME; the root is read lazily from the
    # environment so each test gets a private, initially cold cache.
    monkeypatch.setenv("DYNWFA_PLUGINS", str(tmp_path / "plugins"))
    instantiate.reset_stats()
    # failure memos are process-wide, drop them so tests stay independent
    instantiate._FAILED.clear()
