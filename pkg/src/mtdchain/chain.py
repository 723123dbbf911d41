"""State spaces, observed sequences and lag-l transition estimates.

Matrices follow the column convention throughout: column ``j`` is the
"from" state, row ``i`` is the "to" state, so a transition matrix is
column-stochastic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import EmptyInput, InvalidStateSpace, LagNotPositive, UnknownLabel

HEADER_RE = re.compile(r"^#\s*states\s*:\s*(.*)$", re.IGNORECASE)

COLUMN_SUM_TOL = 1e-9


def _frozen(a):
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class StateSpace:
    """Ordered alphabet of categorical states."""

    labels: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) < 2:
            raise InvalidStateSpace(f"need at least 2 states, got {len(labels)}")
        if any(not lab or any(c.isspace() or c == "," for c in lab) for lab in labels):
            raise InvalidStateSpace(f"state labels must be non-empty tokens: {labels!r}")
        if len(set(labels)) != len(labels):
            raise InvalidStateSpace(f"duplicate state labels: {labels!r}")
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(labels)})

    @classmethod
    def parse(cls, text: str) -> "StateSpace":
        """Build from ``"W,D,L"`` or ``"W D L"``."""
        return cls(tuple(t for t in re.split(r"[,\s]+", text.strip()) if t))

    @property
    def m(self) -> int:
        return len(self.labels)

    @property
    def single_char(self) -> bool:
        return all(len(lab) == 1 for lab in self.labels)

    def index(self, label: str) -> int:
        return self._index[label]

    def __contains__(self, label) -> bool:
        return label in self._index

    def label(self, i: int) -> str:
        return self.labels[i]


WDL = StateSpace(("W", "D", "L"))


@dataclass(frozen=True)
class Sequence:
    """Time-ordered observations as state indices into ``space``.

    An empty sequence is representable (it is what a zero-step simulation
    produces) but the parsing and estimation entry points reject it.
    """

    states: tuple[int, ...]
    space: StateSpace

    def __post_init__(self):
        states = tuple(int(s) for s in self.states)
        object.__setattr__(self, "states", states)
        m = self.space.m
        for pos, s in enumerate(states):
            if not 0 <= s < m:
                raise UnknownLabel(s, pos + 1)

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Sequence(self.states[item], self.space)
        return self.states[item]

    @property
    def n(self) -> int:
        return len(self.states)

    def labels(self) -> list[str]:
        return [self.space.labels[s] for s in self.states]

    def render(self, compact: bool | None = None) -> str:
        """Labels as text; compact (``"WWLWL"``) when every label is one character."""
        if compact is None:
            compact = self.space.single_char
        return ("" if compact else " ").join(self.labels())


def tokenize(text: str) -> tuple[list[str], StateSpace | None]:
    """Split sequence text into tokens and pull out a ``# states:`` header.

    Other ``#`` lines are comments. Commas count as separators.
    """
    tokens = []
    header = None
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith("#"):
            hit = HEADER_RE.match(stripped)
            if hit and header is None:
                header = StateSpace.parse(hit.group(1))
            continue
        tokens.extend(t for t in re.split(r"[,\s]+", stripped) if t)
    return tokens, header


def parse_sequence(text: str | Iterable[str], space: StateSpace) -> Sequence:
    """Map a token stream onto state indices.

    ``text`` may be a string (whitespace, newline or comma separated) or an
    iterable of tokens. When every label is a single character, a token that
    is not itself a label is read character by character, so ``"WWLWL"`` and
    ``"W W L W L"`` parse identically. Positions in ``UnknownLabel`` are
    1-based over the expanded stream.
    """
    if isinstance(text, str):
        tokens, _ = tokenize(text)
    else:
        tokens = list(text)
    expanded = []
    for tok in tokens:
        if tok not in space and space.single_char and len(tok) > 1:
            expanded.extend(tok)
        else:
            expanded.append(tok)
    if not expanded:
        raise EmptyInput()
    states = []
    for pos, tok in enumerate(expanded, start=1):
        if tok not in space:
            raise UnknownLabel(tok, pos)
        states.append(space.index(tok))
    return Sequence(tuple(states), space)


@dataclass(frozen=True)
class FrequencyMatrix:
    """Lag-``lag`` transition counts; ``counts[j, i]`` counts i -> j."""

    lag: int
    counts: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "counts", _frozen(np.asarray(self.counts, dtype=np.int64)))

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True)
class TransitionMatrix:
    """Estimated lag-``lag`` transition probabilities; ``probs[i, j]`` is P(j -> i)."""

    lag: int
    probs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "probs", _frozen(np.asarray(self.probs, dtype=float)))

    def zero_columns(self) -> np.ndarray:
        return ~self.probs.any(axis=0)

    def is_valid(self, tol: float = COLUMN_SUM_TOL) -> bool:
        p = self.probs
        if (p < 0).any() or (p > 1).any():
            return False
        sums = p.sum(axis=0)
        return bool(np.all((np.abs(sums - 1.0) <= tol) | self.zero_columns()))


@dataclass(frozen=True)
class Distribution:
    probs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "probs", _frozen(np.asarray(self.probs, dtype=float)))

    def __getitem__(self, i):
        return float(self.probs[i])

    def __len__(self):
        return len(self.probs)

    def is_valid(self, tol: float = COLUMN_SUM_TOL) -> bool:
        p = self.probs
        return bool((p >= 0).all() and (p <= 1).all() and abs(p.sum() - 1.0) <= tol)


def count_frequencies(seq: Sequence, lag: int) -> FrequencyMatrix:
    """Count overlapping lag-``lag`` pairs ``(X_t, X_{t+lag})`` over the sequence.

    A lag at or beyond the sequence length yields an all-zero matrix.
    """
    if lag < 1:
        raise LagNotPositive(lag)
    m = seq.space.m
    counts = np.zeros((m, m), dtype=np.int64)
    s = np.asarray(seq.states, dtype=np.int64)
    if lag < len(s):
        np.add.at(counts, (s[lag:], s[:-lag]), 1)
    return FrequencyMatrix(lag, counts)


def normalize(freq: FrequencyMatrix) -> TransitionMatrix:
    """Scale each column of counts to sum to one; empty columns stay zero."""
    counts = freq.counts.astype(float)
    sums = counts.sum(axis=0)
    probs = np.zeros_like(counts)
    nz = sums != 0
    probs[:, nz] = counts[:, nz] / sums[nz]
    return TransitionMatrix(freq.lag, probs)


def empirical_distribution(seq: Sequence) -> Distribution:
    """Occurrence proportion of each state."""
    if len(seq) == 0:
        raise EmptyInput()
    counts = np.bincount(np.asarray(seq.states, dtype=np.int64), minlength=seq.space.m)
    return Distribution(counts / len(seq))
