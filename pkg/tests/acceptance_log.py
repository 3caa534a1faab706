"""Collects one pass/fail line per acceptance criterion."""

from contextlib import contextmanager

LINES = []


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        LINES.append(f"FAIL  {name}")
        print(f"FAIL  {name}")
        raise
    LINES.append(f"PASS  {name}")
    print(f"PASS  {name}")
