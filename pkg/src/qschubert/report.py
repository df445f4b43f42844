"""Check results shared by every verification suite."""
from __future__ import annotations

import signal
import threading
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
TIMEOUT = "timeout"
SKIPPED = "skipped"


@dataclass
class CheckResult:
    name: str
    status: str
    certified_degree: int | None = None
    items: int = 0
    failures: list = field(default_factory=list)
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "status": self.status,
            "certified_degree": self.certified_degree,
            "items": self.items,
        }
        if self.failures:
            out["failures"] = self.failures[:20]
            out["failure_count"] = len(self.failures)
        if self.note:
            out["note"] = self.note
        return out


class Deadline:
    """Wall-clock budget; ``None`` seconds means unlimited."""

    def __init__(self, seconds: float | None = None):
        self.end = None if seconds is None else time.monotonic() + seconds

    def expired(self) -> bool:
        return self.end is not None and time.monotonic() > self.end


def tally(name: str, certified_degree, failures: list, items: int, incomplete: bool = False,
          note: str = "") -> CheckResult:
    if failures:
        status = FAIL
    elif incomplete:
        status = TIMEOUT
    else:
        status = PASS
    return CheckResult(name, status, certified_degree, items, failures, note)


def skipped(name: str, reason: str) -> CheckResult:
    return CheckResult(name, SKIPPED, None, 0, [], reason)


class BudgetExceeded(Exception):
    """Raised inside a :func:`time_limit` block when the wall-clock budget runs out."""


@contextmanager
def time_limit(deadline: Deadline | None):
    """Interrupt the block when ``deadline`` passes (SIGALRM; main thread on POSIX only)."""
    usable = (deadline is not None and deadline.end is not None and hasattr(signal, "SIGALRM")
              and threading.current_thread() is threading.main_thread())
    if not usable:
        yield
        return
    remaining = deadline.end - time.monotonic()
    if remaining <= 0:
        raise BudgetExceeded

    def _fire(signum, frame):
        raise BudgetExceeded

    previous = signal.signal(signal.SIGALRM, _fire)
    signal.setitimer(signal.ITIMER_REAL, remaining)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, previous)
