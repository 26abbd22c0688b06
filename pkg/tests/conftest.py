import contextlib
import io
import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

LIMIT_VARS = ("CAPGEOM_GROUP_LIMIT", "CAPGEOM_SEARCH_POINTS", "CAPGEOM_UNION_NODES")


def run_cli(argv: list[str]) -> tuple[int, str]:
    from capgeom.cli import main

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


@pytest.fixture(scope="session")
def verify_runs():
    """Three ``verify-paper --json`` runs at default limits: two serial, one with two workers.

    Shared by the verifier, CLI and acceptance tests so the full report is only
    computed three times per session.
    """
    saved = {k: os.environ.pop(k) for k in LIMIT_VARS if k in os.environ}
    try:
        runs = {
            "serial-1": run_cli(["verify-paper", "--json"]),
            "serial-2": run_cli(["verify-paper", "--json"]),
            "workers-2": run_cli(["verify-paper", "--json", "--workers", "2"]),
        }
    finally:
        os.environ.update(saved)
    return runs


_ACCEPTANCE: dict[str, tuple[str, str, str]] = {}


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        verdict, title, detail = _ACCEPTANCE[n]
        line = f"criterion {n}: {verdict}  {title}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
