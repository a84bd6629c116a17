"""Shared sweep helpers and the acceptance-criteria summary hook."""

from __future__ import annotations

from chainsing.invariants import ChainTuple

ACCEPTANCE_LINES: list[str] = []


def record_criterion(name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    line = f"{status}  {name}"
    if detail:
        line += f"  [{detail}]"
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def sweep_tuples(max_entry: int, max_len: int, min_entry: int = 2) -> list[ChainTuple]:
    """All tuples with entries in [min_entry, max_entry] and 1 <= n <= max_len."""
    out: list[ChainTuple] = []

    def build(prefix: tuple[int, ...]) -> None:
        if prefix:
            out.append(ChainTuple(prefix))
        if len(prefix) < max_len:
            for e in range(min_entry, max_entry + 1):
                build(prefix + (e,))

    build(())
    return out


# deterministic spot set with entries up to 6, n <= 3
SPOT_TUPLES: list[ChainTuple] = [
    ChainTuple.of(*t)
    for t in [
        (5,),
        (6,),
        (5, 2),
        (2, 6),
        (5, 6),
        (6, 6),
        (6, 5, 4),
        (5, 6, 6),
        (6, 6, 6),
        (4, 5, 6),
        (6, 2, 5),
        (2, 2, 6),
    ]
]
