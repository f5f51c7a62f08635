import time
from contextlib import contextmanager

import pytest

RESULTS = pytest.StashKey[list]()


class Criterion:
    def __init__(self, number: int, title: str):
        self.number = number
        self.title = title
        self.details: list[str] = []
        self.ok = True

    def check(self, ok: bool, detail: str):
        self.details.append(detail)
        self.ok = self.ok and bool(ok)

    def line(self, seconds: float) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} criterion {self.number}: {self.title} [{'; '.join(self.details)}] ({seconds:.1f}s)"


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion; the line is printed now and again in the summary."""

    @contextmanager
    def run(number: int, title: str):
        c = Criterion(number, title)
        start = time.monotonic()
        try:
            yield c
        except Exception as e:
            c.check(False, f"{type(e).__name__}: {e}")
            raise
        finally:
            line = c.line(time.monotonic() - start)
            request.config.stash.setdefault(RESULTS, []).append(line)
            print(line)
        assert c.ok, line

    return run


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(RESULTS, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
