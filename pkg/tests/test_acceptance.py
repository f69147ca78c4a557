"""Acceptance criteria, run through the command line.

Each criterion runs its CLI reports in-process under a wall-clock budget
and records one PASS/FAIL line; the lines are printed in the terminal
summary (see conftest) or directly when this file is run as a script.
Criterion 7 replays every report twice in fresh interpreters and compares
the bytes.
"""

import subprocess
import sys
import time

import pytest

from lrhopf.cli import execute

DESK = ("W1", "W2", "AFF")

# (number, title, budget in seconds, [(argv, expected exit code)])
CRITERIA = [
    (1, "PBW graded rank and degree bound", 5.0,
     [(["check", "--suite", "pbw", "--fixture", f, "--level", "5"], 0) for f in DESK]),
    (2, "translation-map identities and beta round trip", 30.0,
     [(["check", "--suite", "schauenburg", "--fixture", f, "--level", "5"], 0) for f in DESK]),
    (3, "complete Hopf algebroid suite and negative control", 60.0,
     [(["check", "--suite", "hopf", "--fixture", f, "--level", "4"], 0) for f in ("W1", "AFF")]
     + [(["check", "--suite", "hopf", "--fixture", "W1", "--level", "2", "--mutate"], 1)]),
    (4, "f(uv) rule on 200 random triples", 20.0,
     [(["check", "--suite", "fuv", "--fixture", f, "--level", "2"], 0) for f in DESK]),
    (5, "zeta compatibilities and K-order", 60.0,
     [(["check", "--suite", "zeta", "--fixture", f, "--level", "2"], 0) for f in DESK]),
    (6, "jets duality", 30.0,
     [(["check", "--suite", "jets", "--fixture", f, "--level", "5"], 0) for f in DESK]),
]

RESULTS: dict[int, str] = {}
REPORTS: dict[tuple, str] = {}


def record(number: int, title: str, passed: bool, detail: str) -> None:
    RESULTS[number] = f"{'PASS' if passed else 'FAIL'} criterion {number}: {title} ({detail})"


def _check_report(argv, expected, out, err, code):
    """Problems with one report, empty when it is as expected."""
    if code != expected:
        return [f"{' '.join(argv)} exited {code}, expected {expected}: {' '.join(err)[:200]}"]
    lines = out[:-1]
    if expected == 0:
        bad = [line for line in lines if not line.startswith("PASS ")]
        return [f"{' '.join(argv)}: {line}" for line in bad]
    # negative control: the antipode identity must fail and name a witness
    if not any(line.startswith("FAIL antipode-limit") and " f=" in line for line in lines):
        return [f"{' '.join(argv)}: no antipode witness"]
    return []


@pytest.mark.parametrize("number, title, budget, runs", CRITERIA, ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(number, title, budget, runs):
    start = time.perf_counter()
    problems = []
    for argv, expected in runs:
        out, err, code = execute(argv)
        REPORTS[tuple(argv)] = "\n".join(out)
        problems.extend(_check_report(argv, expected, out, err, code))
    elapsed = time.perf_counter() - start
    if elapsed >= budget:
        problems.append(f"took {elapsed:.1f}s, budget {budget:.0f}s")
    record(number, title, not problems, f"{elapsed:.2f}s" if not problems else "; ".join(problems))
    assert not problems, problems


def _cli(argv):
    proc = subprocess.run([sys.executable, "-m", "lrhopf", *argv], capture_output=True, check=False)
    return proc.returncode, proc.stdout, proc.stderr


def test_criterion_7_determinism():
    start = time.perf_counter()
    problems = []
    runs = [argv for _, _, _, group in CRITERIA for argv, _ in group]
    for argv in runs:
        first, second = _cli(argv), _cli(argv)
        if first != second:
            problems.append(" ".join(argv))
        elif tuple(argv) in REPORTS and first[1].decode("utf-8").rstrip("\n") != REPORTS[tuple(argv)]:
            problems.append(f"{' '.join(argv)} (differs from the in-process report)")
    elapsed = time.perf_counter() - start
    detail = f"{len(runs)} reports byte-identical, {elapsed:.2f}s" if not problems else "differs: " + ", ".join(problems)
    record(7, "determinism of CLI reports", not problems, detail)
    assert not problems


def acceptance_lines() -> list[str]:
    return [RESULTS[k] for k in sorted(RESULTS)]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
