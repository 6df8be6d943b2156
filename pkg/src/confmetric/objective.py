"""Training losses and their analytic smooth gradient.

Two objectives are implemented. The base loss sums, over all training
instances, the opposite-class similarity score minus the own-class score,
plus an element-wise L1 penalty on the metric matrix. The ranking variant
adds a pairwise hinge penalty that pushes the score margin of instances the
labeler was more confident about above the margin of instances she was less
confident about, within each class.

The L1 term is not differentiated here; the optimizer handles it through a
proximal step. At exact hinge kinks the subgradient 0 is used.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dataset import Dataset
from .errors import (
    DimensionMismatchError,
    MissingSupervisionError,
    ValidationError,
)
from .metric import _check_metric, similarity_scores

_PAIR_STREAM = 4  # keeps equal seeds from aliasing other RNG consumers


@dataclass(frozen=True)
class ObjectiveConfig:
    lambda1: float = 0.0
    lambda2: float = 0.0
    pair_cap: int | None = None

    def __post_init__(self):
        if self.lambda1 < 0 or self.lambda2 < 0:
            raise ValidationError("regularization weights must be nonnegative")
        if self.pair_cap is not None and self.pair_cap < 1:
            raise ValidationError("pair_cap must be a positive integer")


@dataclass(frozen=True)
class LossBreakdown:
    pushpull: float
    l1: float
    ranking: float

    @property
    def total(self) -> float:
        return self.pushpull + self.l1 + self.ranking


@dataclass(frozen=True)
class RankingPairs:
    """Ordered index pairs (a, b): same class, labeler strictly more
    confident in a's label than in b's."""

    pairs: np.ndarray = field(default_factory=lambda: np.empty((0, 2), dtype=np.int64))

    def __len__(self) -> int:
        return self.pairs.shape[0]


def build_ranking_pairs(labels, confidences, pair_cap=None, seed=0) -> RankingPairs:
    """All (a, b) with equal labels and strictly greater confidence at a.

    Ties produce no pair. If pair_cap is set and exceeded, a uniformly
    random subset of that size is kept, deterministic in the seed.
    """
    if confidences is None:
        raise MissingSupervisionError("ranking pairs require confidence labels")
    labels = np.asarray(labels)
    confidences = np.asarray(confidences, dtype=np.float64)
    if confidences.min() < 0.0 or confidences.max() > 1.0:
        raise ValidationError("confidences must lie in [0, 1]")
    same = labels[:, None] == labels[None, :]
    higher = confidences[:, None] > confidences[None, :]
    a_idx, b_idx = np.nonzero(same & higher)
    pairs = np.column_stack([a_idx, b_idx]).astype(np.int64)
    if pair_cap is not None and pairs.shape[0] > pair_cap:
        rng = np.random.default_rng([seed, _PAIR_STREAM])
        keep = np.sort(rng.choice(pairs.shape[0], size=pair_cap, replace=False))
        pairs = pairs[keep]
    return RankingPairs(pairs)


def margin(L, data: Dataset, i: int) -> float:
    """Own-class similarity score minus opposite-class score for instance i."""
    if not 0 <= i < data.n:
        raise DimensionMismatchError(f"index {i} out of range for n={data.n}")
    S = similarity_scores(L, data)
    yi = data.y[i]
    return float(S[i, yi] - S[i, 1 - yi])


def _margins(S: np.ndarray, y: np.ndarray) -> np.ndarray:
    idx = np.arange(S.shape[0])
    return S[idx, y] - S[idx, 1 - y]


def _check_pairs(pairs: RankingPairs, n: int) -> np.ndarray:
    p = pairs.pairs
    if len(p) and (p.min() < 0 or p.max() >= n):
        raise DimensionMismatchError("ranking pair index out of range")
    return p


def camel_loss(L, data: Dataset, lambda1: float) -> LossBreakdown:
    """Push/pull class-label loss plus element-wise L1 penalty."""
    L = _check_metric(L)
    S = similarity_scores(L, data)
    pushpull = float(-np.sum(_margins(S, data.y)))
    l1 = float(lambda1 * np.abs(L).sum())
    return LossBreakdown(pushpull=pushpull, l1=l1, ranking=0.0)


def camel_cl_loss(
    L, data: Dataset, cfg: ObjectiveConfig, pairs: RankingPairs
) -> LossBreakdown:
    """Class-label loss plus L1 plus the hinge ranking penalty.

    For each pair (a, b) the hinge activates when b's margin exceeds a's,
    i.e. when the model orders the two against the labeler's confidences.
    """
    L = _check_metric(L)
    p = _check_pairs(pairs, data.n)
    S = similarity_scores(L, data)
    marg = _margins(S, data.y)
    pushpull = float(-np.sum(marg))
    l1 = float(cfg.lambda1 * np.abs(L).sum())
    ranking = 0.0
    if cfg.lambda2 > 0 and len(p):
        hinge = np.maximum(0.0, marg[p[:, 1]] - marg[p[:, 0]])
        ranking = float(cfg.lambda2 * hinge.sum())
    return LossBreakdown(pushpull=pushpull, l1=l1, ranking=ranking)


def smooth_gradient(
    L, data: Dataset, cfg: ObjectiveConfig, pairs: RankingPairs
) -> np.ndarray:
    """Gradient of the smooth loss terms (push/pull + ranking) in L.

    The L1 term is excluded; the proximal step owns it. Derivation: each
    kernel value k = exp(-||L d||^2) contributes dk/dL = -2 k L d d^T, and
    every smooth term is a weighted sum of per-instance margins, so the
    gradient collapses to -2 L X^T P X for a graph-Laplacian-like matrix P
    built from the weighted kernel matrix.
    """
    L = _check_metric(L)
    p = _check_pairs(pairs, data.n)
    n = data.n
    S = similarity_scores(L, data)  # validates class counts
    marg = _margins(S, data.y)

    # coefficient of each instance's margin in the smooth loss
    coef = -np.ones(n)
    if cfg.lambda2 > 0 and len(p):
        hinge_arg = marg[p[:, 1]] - marg[p[:, 0]]
        active = p[hinge_arg > 0.0]
        np.subtract.at(coef, active[:, 0], cfg.lambda2)
        np.add.at(coef, active[:, 1], cfg.lambda2)

    from .metric import kernel_matrix

    K = kernel_matrix(L, data.X)
    n0, n1 = data.class_counts()
    counts = np.where(data.y == 1, n1 - 1, n0 - 1).astype(np.float64)
    opp_counts = np.where(data.y == 1, n0, n1).astype(np.float64)
    same = (data.y[:, None] == data.y[None, :]).astype(np.float64)
    np.fill_diagonal(same, 0.0)
    V = same / counts[:, None] - (1.0 - same) / opp_counts[:, None]
    np.fill_diagonal(V, 0.0)
    A = coef[:, None] * V * K

    P = np.diag(A.sum(axis=1) + A.sum(axis=0)) - A - A.T
    return -2.0 * L @ (data.X.T @ P @ data.X)
