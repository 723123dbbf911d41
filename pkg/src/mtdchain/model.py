"""Mixture transition distribution (MTD) model of order k.

The next-state distribution given the last ``k`` states is

    P(next = i | x_{n-1}, ..., x_{n-k}) = sum_l lambda_l * Q_l[i, x_{n-l}]

with one column-stochastic matrix ``Q_l`` per lag and non-negative lag
weights summing to one. The matrices are empirical lag-l transition
estimates and the weights minimise the L1 gap between the empirical state
distribution ``x`` and ``sum_l lambda_l Q_l x``, found by linear
programming.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence as _Seq

import numpy as np

from .chain import (
    Distribution,
    Sequence,
    StateSpace,
    TransitionMatrix,
    count_frequencies,
    empirical_distribution,
    normalize,
)
from .errors import (
    HistoryLengthMismatch,
    InvalidOrder,
    LpFailure,
    ModelFormatError,
    NoStationary,
    SequenceTooShort,
    UnknownLabel,
)
from .lp import LinearProgram, solve_lp

FORMAT_TAG = "mtd-model"
FORMAT_VERSION = 1
ORIENTATION = "columns are from-states, rows are to-states"

STATIONARY_TOL = 1e-8


@dataclass(frozen=True)
class MtdModel:
    order: int
    space: StateSpace
    qs: tuple[TransitionMatrix, ...]
    weights: np.ndarray
    stationary_hat: Distribution
    lp_residual: float

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "qs", tuple(self.qs))

    @property
    def lam(self) -> np.ndarray:
        return self.weights

    @property
    def n_parameters(self) -> int:
        return self.order + self.order * self.space.m ** 2

    def mixture(self) -> np.ndarray:
        """``sum_l lambda_l Q_l``."""
        return sum(w * q.probs for w, q in zip(self.weights, self.qs))

    def lag_images(self) -> np.ndarray:
        """The m x k matrix whose column l is ``Q_l @ x_hat``."""
        return lag_images([q.probs for q in self.qs], self.stationary_hat.probs)

    def residual(self, weights=None) -> float:
        """L1 gap ``|x_hat - B @ weights|`` (the fitted weights by default)."""
        w = self.weights if weights is None else np.asarray(weights, dtype=float)
        return l1_gap(self.lag_images(), self.stationary_hat.probs, w)

    def history(self, labels: _Seq[str]) -> tuple[int, ...]:
        """Translate labels (most recent first) into a validated history."""
        out = []
        for pos, lab in enumerate(labels, start=1):
            if lab not in self.space:
                raise UnknownLabel(lab, pos)
            out.append(self.space.index(lab))
        return self._check_history(out)

    def _check_history(self, hist) -> tuple[int, ...]:
        hist = tuple(int(h) for h in hist)
        if len(hist) != self.order:
            raise HistoryLengthMismatch(len(hist), self.order)
        for pos, h in enumerate(hist, start=1):
            if not 0 <= h < self.space.m:
                raise UnknownLabel(h, pos)
        return hist


def lag_images(qs, xhat) -> np.ndarray:
    return np.column_stack([np.asarray(q) @ xhat for q in qs])


def l1_gap(B, xhat, weights) -> float:
    return float(np.abs(xhat - B @ weights).sum())


def weight_lp(qs, xhat) -> LinearProgram:
    """Linear program for the lag weights.

    Variables are ``(lambda_1..lambda_k, w_1..w_m)``::

        minimize  sum_i w_i
        s.t.      w >= x - B @ lambda,  w >= B @ lambda - x,
                  sum_l lambda_l = 1,  lambda, w >= 0

    where column l of ``B`` is ``Q_l @ x``.
    """
    xhat = np.asarray(xhat, dtype=float)
    B = lag_images(qs, xhat)
    m, k = B.shape
    objective = tuple([0.0] * k + [1.0] * m)
    ub = []
    for i in range(m):
        e = np.zeros(m)
        e[i] = 1.0
        # x_i - B_i @ lam <= w_i   ->  -B_i @ lam - w_i <= -x_i
        ub.append((tuple(np.concatenate([-B[i], -e])), -xhat[i]))
        # B_i @ lam - x_i <= w_i   ->   B_i @ lam - w_i <= x_i
        ub.append((tuple(np.concatenate([B[i], -e])), xhat[i]))
    eq = [(tuple([1.0] * k + [0.0] * m), 1.0)]
    return LinearProgram(objective, tuple(eq), tuple(ub))


def fit(seq: Sequence, k: int) -> MtdModel:
    """Fit an order-``k`` model to ``seq``.

    When ``B`` has repeated columns the optimal weights are not unique;
    the simplex pivot rule then picks one optimal vertex deterministically.
    """
    if k < 1:
        raise InvalidOrder(k)
    if len(seq) < k + 1:
        raise SequenceTooShort(len(seq), k)
    qs = tuple(normalize(count_frequencies(seq, lag)) for lag in range(1, k + 1))
    xhat = empirical_distribution(seq)
    sol = solve_lp(weight_lp([q.probs for q in qs], xhat.probs))
    if not sol.ok:
        raise LpFailure(f"weight LP returned {sol.status.value} for order {k}")
    lam = np.clip(sol.x[:k], 0.0, None)
    lam = lam / lam.sum()
    return MtdModel(k, seq.space, qs, lam, xhat, max(sol.objective_value, 0.0))


def predict_distribution(model: MtdModel, hist: _Seq[int]) -> Distribution:
    """Next-state distribution given ``hist`` (most recent state first).

    Lags whose addressed column is empty (the from-state never had an
    l-step successor) contribute nothing, and the remaining mass is
    renormalised. If nothing is left, the empirical distribution is
    returned.
    """
    hist = model._check_history(hist)
    raw = np.zeros(model.space.m)
    for w, q, s in zip(model.weights, model.qs, hist):
        raw += w * q.probs[:, s]
    total = raw.sum()
    if total > 0:
        return Distribution(raw / total)
    return model.stationary_hat


def inverse_cdf(probs, u):
    """Categorical outcomes for uniforms ``u`` in [0, 1); ``probs`` is ``(m,)`` or ``(len(u), m)``.

    Each row is scaled by its total so rows summing slightly off one are
    still handled, and zero-probability states are never returned.
    """
    P = np.atleast_2d(np.asarray(probs, dtype=float))
    u = np.atleast_1d(np.asarray(u, dtype=float))
    cdf = np.cumsum(P, axis=1)
    target = u * cdf[:, -1]
    idx = (cdf <= target[:, None]).sum(axis=1)
    last = P.shape[1] - 1 - np.argmax(P[:, ::-1] > 0, axis=1)
    return np.minimum(idx, last)


def draw_categorical(probs, rng: np.random.Generator) -> int:
    """One categorical draw from a single uniform; same rule as ``inverse_cdf``."""
    p = probs.tolist() if isinstance(probs, np.ndarray) else list(probs)
    cdf = []
    acc = 0.0
    for pi in p:
        acc += pi
        cdf.append(acc)
    target = rng.random() * acc
    idx = next((i for i, c in enumerate(cdf) if c > target), len(p))
    last = max(i for i, pi in enumerate(p) if pi > 0)
    return min(idx, last)


def sample_next(model: MtdModel, hist: _Seq[int], rng: np.random.Generator) -> int:
    return draw_categorical(predict_distribution(model, hist).probs, rng)


def simulate(model: MtdModel, init: _Seq[int], steps: int, rng: np.random.Generator) -> Sequence:
    """Roll the chain forward ``steps`` times from ``init`` (most recent first)."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    hist = list(model._check_history(init))
    out = []
    for _ in range(steps):
        s = sample_next(model, hist, rng)
        out.append(s)
        hist = [s] + hist[:-1]
    return Sequence(tuple(out), model.space)


def stationary_of(M: np.ndarray) -> np.ndarray:
    """Solve ``(I - M) x = 0, sum(x) = 1`` in the least-squares sense.

    The minimum-norm solution is taken, so when the fixed space is
    multi-dimensional the result is deterministic (uniform for ``M = I``).
    """
    M = np.asarray(M, dtype=float)
    m = M.shape[0]
    A = np.vstack([np.eye(m) - M, np.ones((1, m))])
    rhs = np.zeros(m + 1)
    rhs[-1] = 1.0
    x, *_ = np.linalg.lstsq(A, rhs, rcond=None)
    if (x < -STATIONARY_TOL).any():
        raise NoStationary(f"solution has negative entries: {x}")
    x = np.clip(x, 0.0, None)
    x /= x.sum()
    gap = np.abs(M @ x - x).sum()
    if gap > STATIONARY_TOL:
        raise NoStationary(f"no fixed distribution: |Mx - x|_1 = {gap:.3g}")
    return x


def stationary_distribution(model: MtdModel) -> Distribution:
    return Distribution(stationary_of(model.mixture()))


# -- serialisation ---------------------------------------------------------

def to_dict(model: MtdModel) -> dict:
    return {
        "format": FORMAT_TAG,
        "version": FORMAT_VERSION,
        "orientation": ORIENTATION,
        "order": model.order,
        "states": list(model.space.labels),
        "lambda": [float(w) for w in model.weights],
        "transition_matrices": [
            {"lag": q.lag, "columns": [[float(v) for v in col] for col in q.probs.T]}
            for q in model.qs
        ],
        "stationary_hat": [float(v) for v in model.stationary_hat.probs],
        "lp_residual": float(model.lp_residual),
    }


def from_dict(doc: dict) -> MtdModel:
    try:
        if doc.get("format") != FORMAT_TAG:
            raise ModelFormatError(f"not a model document (format={doc.get('format')!r})")
        if doc.get("version") != FORMAT_VERSION:
            raise ModelFormatError(f"unsupported model version {doc.get('version')!r}")
        space = StateSpace(tuple(doc["states"]))
        k = int(doc["order"])
        m = space.m
        lam = np.asarray(doc["lambda"], dtype=float)
        mats = doc["transition_matrices"]
        if k < 1 or lam.shape != (k,) or len(mats) != k:
            raise ModelFormatError(f"order {k} needs {k} weights and {k} matrices")
        qs = []
        for lag, entry in enumerate(mats, start=1):
            cols = np.asarray(entry["columns"], dtype=float)
            if int(entry["lag"]) != lag or cols.shape != (m, m):
                raise ModelFormatError(f"matrix {lag} malformed")
            qs.append(TransitionMatrix(lag, cols.T))
        xhat = np.asarray(doc["stationary_hat"], dtype=float)
        if xhat.shape != (m,):
            raise ModelFormatError("stationary_hat has wrong length")
        return MtdModel(k, space, tuple(qs), lam, Distribution(xhat), float(doc["lp_residual"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ModelFormatError):
            raise
        raise ModelFormatError(f"malformed model document: {exc}") from exc


def save_model(model: MtdModel, path) -> None:
    Path(path).write_text(json.dumps(to_dict(model), indent=2) + "\n", encoding="utf-8")


def load_model(path) -> MtdModel:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{path}: not JSON ({exc})") from exc
    return from_dict(doc)
