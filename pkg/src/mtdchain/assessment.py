"""In-sample prediction-accuracy assessment across model orders.

For each repetition a set of evaluation positions is drawn once and
shared by every order k. Each order's model is fitted on the whole
window (evaluated games included), each evaluation game is predicted by
one categorical draw from the model's next-state distribution given the
k true outcomes before it, and accuracy is the fraction of correct draws.
"""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .chain import Sequence
from .errors import ConfigInvalid, WindowTooShort
from .model import MtdModel, fit, inverse_cdf, predict_distribution
from .rng import POSITION_STREAM, derive_rng

REPORT_COLUMNS = ("team", "k", "repetition", "accuracy", "seed")
TRACE_COLUMNS = ("team", "k", "repetition", "position", "predicted", "actual")


@dataclass(frozen=True)
class AssessmentConfig:
    k_values: tuple[int, ...] = tuple(range(1, 14))
    n_eval: int = 10
    window: int = 100
    seed: int = 0
    repetitions: int = 1

    def __post_init__(self):
        ks = tuple(int(k) for k in self.k_values)
        object.__setattr__(self, "k_values", ks)
        if not ks:
            raise ConfigInvalid("k_values must not be empty")
        if min(ks) < 1:
            raise ConfigInvalid("order must be ≥ 1")
        if len(set(ks)) != len(ks):
            raise ConfigInvalid(f"duplicate orders in {ks}")
        if self.n_eval < 1:
            raise ConfigInvalid("n_eval must be ≥ 1")
        if self.repetitions < 1:
            raise ConfigInvalid("repetitions must be ≥ 1")
        if self.seed < 0:
            raise ConfigInvalid("seed must be non-negative")
        if self.window <= max(ks):
            raise ConfigInvalid(f"window {self.window} must exceed the largest order {max(ks)}")
        if self.window - max(ks) < self.n_eval:
            raise ConfigInvalid(
                f"only {self.window - max(ks)} positions have {max(ks)} predecessors; "
                f"cannot pick {self.n_eval} distinct evaluation games"
            )

    @property
    def k_max(self) -> int:
        return max(self.k_values)


@dataclass(frozen=True)
class Prediction:
    repetition: int
    k: int
    position: int  # 0-based index within the window
    predicted: int
    actual: int

    @property
    def correct(self) -> bool:
        return self.predicted == self.actual


@dataclass(frozen=True)
class AssessmentReport:
    team: str
    config: AssessmentConfig
    accuracies: dict  # (k, repetition) -> accuracy
    eval_positions: tuple[tuple[int, ...], ...]
    trace: tuple[Prediction, ...]
    window: Sequence = field(repr=False)

    @property
    def per_k(self) -> dict[int, float]:
        reps = self.config.repetitions
        return {
            k: sum(self.accuracies[k, r] for r in range(reps)) / reps
            for k in self.config.k_values
        }


def eligible_positions(cfg: AssessmentConfig) -> np.ndarray:
    return np.arange(cfg.k_max, cfg.window)


def run_assessment(seq: Sequence, cfg: AssessmentConfig, team: str = "") -> AssessmentReport:
    if len(seq) < cfg.window:
        raise WindowTooShort(len(seq), cfg.window)
    win = seq[len(seq) - cfg.window:]
    states = win.states
    models: dict[int, MtdModel] = {k: fit(win, k) for k in cfg.k_values}
    eligible = eligible_positions(cfg)

    # next-state distribution at every eligible position, per order
    dists = {
        k: np.array([predict_distribution(models[k], states[p - k:p][::-1]).probs for p in eligible])
        for k in cfg.k_values
    }
    actual_all = np.asarray(states)

    accuracies = {}
    positions_by_rep = []
    trace = []
    for rep in range(cfg.repetitions):
        prng = derive_rng(cfg.seed, team, POSITION_STREAM, rep)
        positions = np.sort(prng.choice(eligible, cfg.n_eval, replace=False))
        positions_by_rep.append(tuple(int(p) for p in positions))
        actual = actual_all[positions]
        for k in cfg.k_values:
            # one uniform per evaluation game, in position order
            u = derive_rng(cfg.seed, team, k, rep).random(cfg.n_eval)
            guesses = inverse_cdf(dists[k][positions - cfg.k_max], u)
            trace.extend(
                Prediction(rep, k, int(p), int(g), int(a))
                for p, g, a in zip(positions, guesses, actual)
            )
            accuracies[k, rep] = int((guesses == actual).sum()) / cfg.n_eval

    return AssessmentReport(team, cfg, accuracies, tuple(positions_by_rep), tuple(trace), win)


def assess_teams(sequences: dict, cfg: AssessmentConfig, jobs: int = 1) -> list[AssessmentReport]:
    """Assess several teams; results are independent of ``jobs``."""
    items = list(sequences.items())
    if jobs <= 1:
        return [run_assessment(seq, cfg, team) for team, seq in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda item: run_assessment(item[1], cfg, item[0]), items))


def rank_orders(report) -> list[tuple[int, float]]:
    """Orders by descending accuracy; ties go to the smaller k.

    Accepts a report or a plain ``{k: accuracy}`` mapping.
    """
    per_k = report.per_k if isinstance(report, AssessmentReport) else dict(report)
    if not per_k:
        raise ConfigInvalid("nothing to rank")
    return sorted(per_k.items(), key=lambda kv: (-kv[1], kv[0]))


def write_report_csv(reports, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(REPORT_COLUMNS)
    for rep in reports:
        cfg = rep.config
        for k in cfg.k_values:
            for r in range(cfg.repetitions):
                w.writerow([rep.team, k, r, repr(rep.accuracies[k, r]), cfg.seed])


def write_trace_csv(reports, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(TRACE_COLUMNS)
    for rep in reports:
        space = rep.window.space
        for p in rep.trace:
            w.writerow([rep.team, p.k, p.repetition, p.position,
                        space.label(p.predicted), space.label(p.actual)])
