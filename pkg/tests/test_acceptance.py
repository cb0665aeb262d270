"""Acceptance criteria, one test per criterion.

Each test prints ``criterion <k> <name>: PASS|FAIL`` and the same lines are
repeated in the terminal summary. Run directly (``python3
tests/test_acceptance.py``) for the lines alone.
"""

import time

import pytest

from ifunc.suites import CRITERIA

RESULTS = {}


def _line(k, passed, reports, seconds):
    name = CRITERIA[k][0]
    failed = [r for r in reports if not r.passed]
    detail = f"{len(reports)} checks, {seconds:.1f} s"
    if failed:
        worst = max(failed, key=lambda r: r.rel_error / r.tolerance if r.tolerance else float("inf"))
        detail += f"; {len(failed)} failed, worst {worst.quantity}: {worst.rel_error:.3g} > {worst.tolerance:g}"
    return f"criterion {k:2d} {name}: {'PASS' if passed else 'FAIL'} ({detail})"


def evaluate_criterion(k):
    t0 = time.perf_counter()
    reports = CRITERIA[k][1]()
    passed = bool(reports) and all(r.passed for r in reports)
    line = _line(k, passed, reports, time.perf_counter() - t0)
    RESULTS[k] = line
    return passed, reports, line


@pytest.mark.parametrize("k", sorted(CRITERIA), ids=[f"{k}-{CRITERIA[k][0].replace(' ', '_')}" for k in sorted(CRITERIA)])
def test_criterion(k):
    passed, reports, line = evaluate_criterion(k)
    print(line)
    assert passed, "\n".join(str(r) for r in reports if not r.passed)


if __name__ == "__main__":
    ok = True
    for k in sorted(CRITERIA):
        passed, _, line = evaluate_criterion(k)
        ok &= passed
        print(line, flush=True)
    raise SystemExit(0 if ok else 1)
