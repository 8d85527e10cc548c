import time

import pytest

ACCEPTANCE_REPORT = []


class Criterion:
    def __init__(self, number, label, budget):
        self.number = number
        self.label = label
        self.budget = budget

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None and elapsed <= self.budget
        ACCEPTANCE_REPORT.append(
            (self.number,
             f"criterion {self.number:02d} {'PASS' if ok else 'FAIL'} "
             f"({elapsed:.2f}s, budget {self.budget:g}s): {self.label}"))
        if exc_type is None and elapsed > self.budget:
            raise AssertionError(
                f"criterion {self.number} exceeded its time budget: "
                f"{elapsed:.2f}s > {self.budget:g}s")
        return False


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_REPORT:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for _, line in sorted(ACCEPTANCE_REPORT):
        terminalreporter.write_line(line)
