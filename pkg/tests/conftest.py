import functools

from hurwitz import DATA
from hurwitz.permgroup import load_group


@functools.lru_cache(maxsize=None)
def bundled(name: str):
    """Bundled group with its class-name overrides, cached across tests."""
    names = DATA / "names" / f"{name}.txt"
    return load_group(DATA / "groups" / f"{name}.txt", names if names.exists() else None)


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
