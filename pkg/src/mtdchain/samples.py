"""KBO 2018 standings (as of 2018-08-18) and synthetic ledgers built from them.

The standings are real; the game orders, dates and opponents produced by
``synthetic_ledger`` are not. Only the per-team W/D/L totals match.
"""

from __future__ import annotations

import datetime as dt

import numpy as np

from .chain import WDL, Sequence
from .ledger import LedgerRecord

# team: (games, wins, draws, losses)
KBO_2018 = {
    "Doosan Bears": (113, 73, 0, 40),
    "SK Wyverns": (112, 62, 1, 49),
    "Hanwha Eagles": (114, 62, 0, 52),
    "Nexen Heroes": (118, 61, 0, 57),
    "LG Twins": (116, 56, 1, 59),
    "Samsung Lions": (116, 54, 3, 59),
    "Lotte Giants": (110, 51, 2, 57),
    "KIA Tigers": (110, 51, 0, 59),
    "KT Wiz": (113, 47, 2, 64),
    "NC Dinos": (116, 47, 1, 68),
}

SEASON_START = dt.date(2018, 3, 24)


def shuffled_record(team: str, rng: np.random.Generator) -> Sequence:
    """A random ordering of the team's W/D/L totals."""
    _, w, d, l = KBO_2018[team]
    states = np.array([0] * w + [1] * d + [2] * l)
    rng.shuffle(states)
    return Sequence(tuple(int(s) for s in states), WDL)


def game_dates(n: int, start: dt.date = SEASON_START) -> list[dt.date]:
    """``n`` consecutive playing days, skipping Mondays."""
    out = []
    day = start
    while len(out) < n:
        if day.weekday() != 0:
            out.append(day)
        day += dt.timedelta(days=1)
    return out


def synthetic_ledger(seed: int = 2018) -> list[LedgerRecord]:
    rng = np.random.Generator(np.random.PCG64(seed))
    teams = list(KBO_2018)
    records = []
    for team in teams:
        seq = shuffled_record(team, rng)
        others = [t for t in teams if t != team]
        for date, s in zip(game_dates(len(seq)), seq.labels()):
            opp = others[int(rng.integers(len(others)))]
            records.append(LedgerRecord(date, team, opp, s))
    return records
