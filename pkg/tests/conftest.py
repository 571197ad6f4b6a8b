import math
import os

import pytest

ACCEPTANCE_LINES = []


def comb0(n, k):
    """Zero-extended binomial, independent of the package."""
    return math.comb(n, k) if 0 <= k <= n else 0


def sun_poly_coeffs(n):
    """Coefficients of S_n(q), straight from the defining sum."""
    return [comb0(n, k) * comb0(2 * k, k) * comb0(2 * (n - k), n - k) for k in range(n + 1)]


def naive_product(a, b):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i in range(len(a)):
        for j in range(len(b)):
            out[i + j] += a[i] * b[j]
    return out


def write_csv(path, entries, header=True):
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            fh.write("n,k,value\n")
        for (n, k), v in sorted(entries.items()):
            fh.write(f"{n},{k},{v}\n")
    return os.fspath(path)


@pytest.fixture
def csv_writer(tmp_path):
    counter = iter(range(10**6))

    def _write(entries, header=True):
        return write_csv(tmp_path / f"tri{next(counter)}.csv", entries, header)

    return _write


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
