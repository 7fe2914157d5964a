"""Global operation counters.

Algorithms whose asymptotic behaviour is benchmarked bump a named counter at
their dominant comparison sites.  Counters are process-global and explicitly
reset by callers that measure.
"""

from __future__ import annotations

_counts: dict[str, int] = {}


def bump(name: str, amount: int = 1) -> None:
    _counts[name] = _counts.get(name, 0) + amount


def get(name: str) -> int:
    return _counts.get(name, 0)


def reset(name: str | None = None) -> None:
    if name is None:
        _counts.clear()
    else:
        _counts.pop(name, None)


def snapshot() -> dict[str, int]:
    return dict(_counts)
