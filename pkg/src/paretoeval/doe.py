"""Descriptive statistics over solution sets and runs.

Per-objective summaries (mean/median/best/worst) are the classic way to
report multi-run experiments, but on their own they can invert the verdict
of the dominance relation; :func:`doe_compare` computes them anyway and
raises a flag whenever its verdict contradicts set dominance, so reports can
say so loudly instead of silently misleading.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    DimensionMismatchError,
    Direction,
    EmptySetError,
    Solution,
    SolutionSet,
    set_dominates,
)
from .indicators import IndicatorConfig, canonical_name
from . import indicators as _ind
from .preprocess import build_reference_point, build_reference_set

__all__ = [
    "STATS",
    "ObjectiveStats",
    "DoeComparison",
    "RunCollection",
    "per_objective_stats",
    "doe_compare",
    "scalarize_best",
    "select_representative_run",
]

STATS = ("mean", "median", "best", "worst")


@dataclass(frozen=True)
class ObjectiveStats:
    """Componentwise summary of a set, in natural units and direction."""

    names: tuple[str, ...]
    mean: tuple[float, ...]
    median: tuple[float, ...]
    best: tuple[float, ...]
    worst: tuple[float, ...]


@dataclass(frozen=True)
class DoeComparison:
    """Outcome of a statistic-by-statistic comparison of two sets.

    ``winners`` holds one entry per objective: +1 when the first set's
    statistic is better, -1 when the second's is, 0 on a tie.
    ``misleading_flag`` is True when one set dominates the other as a set
    yet the statistics hand any objective to the dominated side.
    """

    stat: str
    winners: tuple[int, ...]
    first_stats: ObjectiveStats
    second_stats: ObjectiveStats
    misleading_flag: bool


@dataclass(frozen=True)
class RunCollection:
    """All runs of one algorithm on one problem instance."""

    algorithm: str
    runs: tuple[SolutionSet, ...]

    def __post_init__(self) -> None:
        if not self.algorithm:
            raise ValueError("algorithm name must be non-empty")
        runs = tuple(self.runs)
        if not runs:
            raise EmptySetError("a run collection needs at least one run")
        m = runs[0].m
        for r in runs[1:]:
            if r.m != m:
                raise DimensionMismatchError("runs disagree on objective count")
        object.__setattr__(self, "runs", runs)


def per_objective_stats(A: SolutionSet) -> ObjectiveStats:
    """Mean, median, best, and worst per objective, in natural units.

    Best and worst follow each objective's natural direction: for a
    maximized objective the best value is the largest one.
    """
    if not A.solutions:
        raise EmptySetError(f"set {A.name!r} is empty")
    natural = A.natural_values()
    signs = A.signs if A.signs is not None else (1.0,) * A.m
    best = []
    worst = []
    for j, sign in enumerate(signs):
        col = natural[:, j]
        if sign < 0:  # stored negated, natural direction is maximize
            best.append(float(col.max()))
            worst.append(float(col.min()))
        else:
            best.append(float(col.min()))
            worst.append(float(col.max()))
    return ObjectiveStats(
        names=tuple(o.name for o in A.meta),
        mean=tuple(float(v) for v in natural.mean(axis=0)),
        median=tuple(float(v) for v in np.median(natural, axis=0)),
        best=tuple(best),
        worst=tuple(worst),
    )


def _direction_aware_winner(
    first: float, second: float, maximize: bool
) -> int:
    if first == second:
        return 0
    if maximize:
        return 1 if first > second else -1
    return 1 if first < second else -1


def doe_compare(A: SolutionSet, B: SolutionSet, stat: str = "mean") -> DoeComparison:
    """Compare two sets objective by objective on one summary statistic.

    The verdict is purely statistical; when it contradicts the dominance
    relation between the sets (one set dominates, yet the other wins at
    least one objective on the statistic) the result carries
    ``misleading_flag=True``.
    """
    if stat not in STATS:
        raise ValueError(f"unknown statistic {stat!r}")
    if A.m != B.m:
        raise DimensionMismatchError("sets disagree on objective count")
    sa = per_objective_stats(A)
    sb = per_objective_stats(B)
    va = getattr(sa, stat)
    vb = getattr(sb, stat)
    maximized = tuple(o.direction is Direction.MAXIMIZE for o in A.meta)
    # Stats are in natural units; when the set was converted for
    # minimization the original direction is encoded in its signs.
    if A.signs is not None:
        maximized = tuple(s < 0 for s in A.signs)
    winners = tuple(
        _direction_aware_winner(x, y, mx) for x, y, mx in zip(va, vb, maximized)
    )
    misleading = False
    if set_dominates(A, B) and any(w < 0 for w in winners):
        misleading = True
    elif set_dominates(B, A) and any(w > 0 for w in winners):
        misleading = True
    return DoeComparison(
        stat=stat,
        winners=winners,
        first_stats=sa,
        second_stats=sb,
        misleading_flag=misleading,
    )


def scalarize_best(
    A: SolutionSet, weights: Sequence[float]
) -> tuple[Solution, float]:
    """Fittest solution under a weighted sum of the stored objectives.

    Stored orientation is minimization, so the fittest solution minimizes
    sum(w_i * f_i).  Ties keep the first occurrence.  Weights are expected
    to be normalized values over comparable (e.g. normalized) objectives.
    """
    if not A.solutions:
        raise EmptySetError(f"set {A.name!r} is empty")
    w = np.asarray([float(x) for x in weights])
    if w.shape[0] != A.m:
        raise DimensionMismatchError("weights length must match objective count")
    scores = A.values() @ w
    idx = int(np.argmin(scores))
    return A.solutions[idx], float(scores[idx])


def _unary_value(
    name: str,
    run: SolutionSet,
    all_runs: Sequence[SolutionSet],
    config: IndicatorConfig,
) -> float:
    """Evaluate one unary-capable indicator for a run.

    Reference material (reference set or reference point) is derived from
    the union of all runs so every run is judged against the same yardstick.
    """
    key = canonical_name(name)
    if key in ("ci", "c"):
        raise ValueError(f"{name} is a binary indicator; it cannot rank runs")
    if key == "nfs":
        return float(_ind.nfs(run))
    if key == "sp":
        return _ind.spacing(run)
    if key == "unfr":
        return _ind.unfr(run, list(all_runs))
    if key == "grid_diversity":
        values = _ind.grid_diversity(list(all_runs), config.grid_divisions)
        for r, v in zip(all_runs, values):
            if r is run:
                return v
        raise ValueError("run is not part of the collection")
    reference = build_reference_set(list(all_runs))
    if key == "hv":
        point = build_reference_point(
            reference, config.hv_strategy, explicit=config.ref_point
        )
        return _ind.hypervolume(run, point)
    if key == "gd":
        return _ind.gd(run, reference, p=config.gd_p)
    if key == "gd_plus":
        return _ind.gd_plus(run, reference)
    if key == "igd":
        return _ind.igd(run, reference)
    if key == "igd_plus":
        return _ind.igd_plus(run, reference)
    if key == "epsilon":
        return _ind.epsilon_additive(run, reference)
    if key == "spread":
        ordered = sorted(reference.vectors())
        return _ind.spread_delta(run, [ordered[0], ordered[-1]])
    raise ValueError(f"indicator {name!r} cannot be evaluated per run")


def select_representative_run(
    collection: RunCollection,
    indicator: str = "hv",
    config: IndicatorConfig | None = None,
) -> int:
    """Index of the run whose indicator value is closest to the median.

    The median over an even number of runs is the lower-middle value, so the
    selected run always exists in the collection.  Distance ties keep the
    lowest run index.  The choice is invariant to run order up to that tie
    rule.
    """
    config = config or IndicatorConfig()
    values = [
        _unary_value(indicator, run, collection.runs, config)
        for run in collection.runs
    ]
    ordered = sorted(values)
    median = ordered[(len(ordered) - 1) // 2]
    distances = [abs(v - median) for v in values]
    return int(np.argmin(distances))
