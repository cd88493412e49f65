"""Collects one summary line per acceptance criterion for the terminal report."""

LINES = []


def record(number, title, passed, detail):
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title} -- {detail}"
    LINES.append(line)
    print(line)
    return passed
