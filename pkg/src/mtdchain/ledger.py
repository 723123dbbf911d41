"""Game-ledger CSV ingestion.

A ledger has a header row ``date,team,opponent,result`` followed by one
row per game from one team's point of view; ``result`` is a state label
(``W``, ``D`` or ``L`` for the default state space).
"""

from __future__ import annotations

import csv
import datetime as dt
import logging
from dataclasses import dataclass
from pathlib import Path

from .chain import WDL, Sequence, StateSpace
from .errors import MalformedRow, UnknownTeam

log = logging.getLogger(__name__)

LEDGER_COLUMNS = ("date", "team", "opponent", "result")


@dataclass(frozen=True)
class LedgerRecord:
    date: dt.date
    team: str
    opponent: str
    result: str
    line: int = 0


def is_ledger(path) -> bool:
    """True when the file's first line is the ledger header."""
    with open(path, encoding="utf-8", newline="") as fh:
        first = fh.readline()
    return tuple(c.strip().lower() for c in first.strip().split(",")) == LEDGER_COLUMNS


def read_ledger(path, space: StateSpace = WDL) -> list[LedgerRecord]:
    records = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(c.strip().lower() for c in header) != LEDGER_COLUMNS:
            raise MalformedRow(1, f"expected header {','.join(LEDGER_COLUMNS)}")
        for row in reader:
            line = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 4:
                raise MalformedRow(line, f"expected 4 fields, got {len(row)}")
            date_s, team, opp, result = (c.strip() for c in row)
            try:
                date = dt.date.fromisoformat(date_s)
            except ValueError:
                raise MalformedRow(line, f"bad date {date_s!r}") from None
            if not team:
                raise MalformedRow(line, "empty team")
            if result not in space:
                raise MalformedRow(line, f"result {result!r} not in states {','.join(space.labels)}")
            records.append(LedgerRecord(date, team, opp, result, line))
    return records


def ledger_teams(records) -> list[str]:
    """Teams in order of first appearance."""
    return list(dict.fromkeys(r.team for r in records))


def team_sequence(records, team: str, space: StateSpace = WDL, last: int | None = 100) -> Sequence:
    rows = [r for r in records if r.team == team]
    if not rows:
        raise UnknownTeam(team)
    rows.sort(key=lambda r: r.date)
    for a, b in zip(rows, rows[1:]):
        if a.date == b.date:
            raise MalformedRow(b.line, f"second game for {team} on {b.date.isoformat()}")
    if last is not None:
        if last > len(rows):
            log.warning("%s: asked for the last %d games but only %d are recorded; using all",
                        team, last, len(rows))
        rows = rows[-last:]
    return Sequence(tuple(space.index(r.result) for r in rows), space)


def ingest_ledger(path, team: str, last: int | None = 100, space: StateSpace = WDL) -> Sequence:
    """Date-ordered results for ``team``, truncated to the most recent ``last`` games."""
    return team_sequence(read_ledger(path, space), team, space, last)


def write_ledger(records, path) -> None:
    with open(Path(path), "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(LEDGER_COLUMNS)
        for r in records:
            w.writerow([r.date.isoformat(), r.team, r.opponent, r.result])
