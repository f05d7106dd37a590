"""Deflationary source extraction from whitened mixtures.

Each iteration estimates one source direction in phase space (from a
heading cluster, or from the single minimum-change heading), projects the
current data onto it to obtain the source estimate, and subtracts that
rank-one contribution before the next iteration.  The whitening transform
is computed once; velocities, headings, and the acceptance threshold are
re-evaluated on the deflated data every iteration, against that data's own
maximum velocity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .clustering import Cluster, find_cluster, gap_threshold
from .errors import (
    ClusterFormationFailedError,
    DegenerateClusterError,
    DimensionMismatchError,
    NoConsecutivePairError,
    SparseBssError,
    TooFewHeadingsError,
)
from .headings import HeadingSet, compute_headings
from .whitening import gram_schmidt_whiten

#: Averaged cluster directions shorter than this are considered cancelled.
DEGENERATE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class MethodParams:
    """Extraction method and its two tuning knobs.

    ``v_th`` (0 < v_th < 1) sets the velocity acceptance threshold;
    ``alpha`` (0 < alpha <= 1) scales the sorted-gap threshold used by the
    global method.
    """

    method: str = "global"
    v_th: float = 0.4
    alpha: float = 1.0

    def __post_init__(self):
        if self.method not in ("global", "mhc"):
            raise ValueError(f"method must be 'global' or 'mhc', got {self.method!r}")
        if not 0.0 < self.v_th < 1.0:
            raise ValueError(f"v_th must lie in (0, 1), got {self.v_th}")
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")


@dataclass(frozen=True)
class EstimatedDirection:
    """A unit direction in whitened phase space and its evidence count."""

    unit_vector: np.ndarray
    support_size: int


@dataclass(frozen=True)
class IterationDiagnostics:
    """Bookkeeping for one deflation iteration."""

    accepted_count: int
    cluster_size: int
    epsilon: float | None
    member_indices: np.ndarray
    residual_energy: float


@dataclass(frozen=True)
class SeparationResult:
    """All extracted sources, in extraction order.

    ``estimates`` has one row per extracted source; ``directions`` holds
    the corresponding unit vectors in whitened space; ``transform`` is the
    whitening matrix applied to the input mixtures.
    """

    estimates: np.ndarray
    directions: list[EstimatedDirection]
    iterations: list[IterationDiagnostics] = field(repr=False)
    transform: np.ndarray | None = None


def weighted_average_heading(cluster: Cluster) -> EstimatedDirection:
    """Average a cluster's velocities, weighting magnitudes, into a unit direction.

    Member signs are first reconciled against the largest-magnitude member
    (the sorting step discards sign, so one source traversed in both
    directions contributes antiparallel velocities).  The average weights
    each member by its Euclidean length, putting more trust in velocities
    that stand further above the noise.

    Raises
    ------
    DegenerateClusterError
        If the weighted members cancel to (near) zero length.
    """
    members = np.atleast_2d(np.asarray(cluster.member_velocities, dtype=float))
    magnitudes = np.linalg.norm(members, axis=1)
    if not np.any(magnitudes > 0.0):
        raise DegenerateClusterError("all cluster members have zero velocity")
    reference = members[np.argmax(magnitudes)]
    flips = np.where(members @ reference < 0.0, -1.0, 1.0)
    aligned = members * flips[:, None]
    average = (magnitudes @ aligned) / np.sum(np.square(magnitudes))
    length = np.linalg.norm(average)
    if length < DEGENERATE_TOLERANCE:
        raise DegenerateClusterError("cluster members cancel; no average direction")
    return EstimatedDirection(unit_vector=average / length, support_size=len(members))


def mhc_find_direction(heading_set: HeadingSet) -> EstimatedDirection:
    """Pick the heading where consecutive accepted headings change least.

    The change between headings ``n-1`` and ``n`` is measured up to sign,
    ``min(|r[n] - r[n-1]|, |r[n] + r[n-1]|)``, since a source line may be
    traversed in alternating directions.  The most recent heading of the
    winning pair is returned; ties go to the smallest index.

    Raises
    ------
    NoConsecutivePairError
        If no two consecutive headings are both accepted.
    """
    accepted = heading_set.accepted
    headings = heading_set.headings
    best_change = np.inf
    best_index = -1
    for n in range(1, len(accepted)):
        if accepted[n] and accepted[n - 1]:
            change = min(
                float(np.linalg.norm(headings[n] - headings[n - 1])),
                float(np.linalg.norm(headings[n] + headings[n - 1])),
            )
            if change < best_change:
                best_change = change
                best_index = n
    if best_index < 0:
        raise NoConsecutivePairError("no consecutive pair of accepted headings")
    return EstimatedDirection(unit_vector=headings[best_index].copy(), support_size=1)


def project_source(data, direction: EstimatedDirection) -> np.ndarray:
    """Dot the direction with every sample vector: the source estimate row."""
    e = np.asarray(data, dtype=float)
    r = direction.unit_vector
    if e.shape[0] != r.shape[0]:
        raise DimensionMismatchError(
            f"direction has {r.shape[0]} components, data has {e.shape[0]} channels"
        )
    return r @ e


def deflate(data, direction: EstimatedDirection, source_row) -> np.ndarray:
    """Remove a source's rank-one contribution along its direction."""
    e = np.asarray(data, dtype=float)
    s = np.asarray(source_row, dtype=float)
    r = direction.unit_vector
    if e.shape[0] != r.shape[0] or e.shape[1] != s.shape[0]:
        raise DimensionMismatchError(
            f"cannot deflate shape {e.shape} with direction {r.shape} and source {s.shape}"
        )
    return e - np.outer(r, s)


def _global_direction(
    heading_set: HeadingSet, alpha: float, iteration: int
) -> tuple[EstimatedDirection, np.ndarray, float]:
    """Cluster the accepted headings and average them into a direction."""
    accepted_idx = np.flatnonzero(heading_set.accepted)
    if accepted_idx.size < 2:
        raise ClusterFormationFailedError(
            iteration,
            TooFewHeadingsError(f"only {accepted_idx.size} accepted headings"),
        )
    epsilon = gap_threshold(alpha, accepted_idx.size)
    try:
        cluster, _ = find_cluster(heading_set.velocities[accepted_idx], epsilon)
        direction = weighted_average_heading(cluster)
    except SparseBssError as cause:
        raise ClusterFormationFailedError(iteration, cause) from cause
    return direction, accepted_idx[cluster.member_indices], epsilon


def separate(mixtures, params: MethodParams) -> SeparationResult:
    """Extract as many sources as there are mixture channels.

    The mixtures are whitened once; each iteration then re-derives
    velocities, headings, and the acceptance mask from the current
    (deflated) data, estimates one direction by the configured method,
    projects out the source, and deflates.

    Raises
    ------
    ClusterFormationFailedError
        Global method: no cluster could be formed at some iteration.
    NoConsecutivePairError
        MHC: no consecutive accepted heading pair at some iteration.
    RankDeficientError, ZeroChannelError
        Propagated from whitening.
    """
    whitened = gram_schmidt_whiten(mixtures)
    data = whitened.components.copy()
    n_channels = data.shape[0]
    estimates = []
    directions: list[EstimatedDirection] = []
    iterations: list[IterationDiagnostics] = []
    for iteration in range(n_channels):
        heading_set = compute_headings(data, params.v_th)
        if params.method == "global":
            direction, member_indices, epsilon = _global_direction(
                heading_set, params.alpha, iteration
            )
        else:
            direction = mhc_find_direction(heading_set)
            member_indices = np.array([], dtype=int)
            epsilon = None
        source = project_source(data, direction)
        data = deflate(data, direction, source)
        estimates.append(source)
        directions.append(direction)
        iterations.append(
            IterationDiagnostics(
                accepted_count=int(heading_set.accepted.sum()),
                cluster_size=direction.support_size,
                epsilon=epsilon,
                member_indices=member_indices,
                residual_energy=float(np.sum(np.square(data))),
            )
        )
    return SeparationResult(
        estimates=np.array(estimates),
        directions=directions,
        iterations=iterations,
        transform=whitened.transform,
    )
