"""Heading clustering by component-wise sorting and gap thresholding.

One dominant source traces a fixed line in phase space, so the headings it
produces share component magnitudes.  Sorting each component magnitude
ascending turns that agreement into flat segments; marking adjacent sorted
values closer than a gap threshold, remapping the longest marked run back
to time order, and AND-ing the per-component membership isolates the
heading indices belonging to a single source.

All indices here are 0-based positions into the heading list handed to the
caller-facing :func:`find_cluster`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    EmptyClusterError,
    NoRunFoundError,
    TooFewHeadingsError,
)


@dataclass(frozen=True)
class SortedComponent:
    """One heading component sorted ascending by magnitude.

    ``values[m]`` is the m-th smallest magnitude; ``index_map[m]`` is the
    heading index it came from.  Ties keep ascending heading order.
    """

    values: np.ndarray
    index_map: np.ndarray


@dataclass(frozen=True)
class ClusterTables:
    """Intermediate boolean tables of one clustering pass.

    Attributes
    ----------
    adjacency : ndarray of bool, shape (M, N)
        Column i marks sorted positions whose value is within epsilon of
        its predecessor (position 0 is always false).
    membership : ndarray of bool, shape (M, N)
        Time-ordered per-component cluster membership.
    survivors : ndarray of bool, shape (M,)
        Row-wise AND of ``membership``.
    """

    adjacency: np.ndarray
    membership: np.ndarray
    survivors: np.ndarray


@dataclass(frozen=True)
class Cluster:
    """Heading indices attributed to one source, with their velocities."""

    member_indices: np.ndarray
    member_velocities: np.ndarray

    def __len__(self) -> int:
        return len(self.member_indices)


def gap_threshold(alpha: float, n_headings: int) -> float:
    """Sorted-gap threshold ``alpha / n_headings``.

    For uncorrelated headings the sorted component magnitudes rise roughly
    linearly, so adjacent gaps are about ``1/n_headings``; values bunch far
    tighter than that only where one source dominates.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    if n_headings < 2:
        raise TooFewHeadingsError(f"need at least 2 headings, got {n_headings}")
    return alpha / n_headings


def sort_component(magnitudes: np.ndarray, component: int) -> SortedComponent:
    """Sort one column of the (M, N) heading-magnitude matrix ascending.

    Ties are broken by ascending heading index (stable sort), which keeps
    the result deterministic.
    """
    if magnitudes.shape[0] < 2:
        raise TooFewHeadingsError("need at least 2 headings to sort")
    column = magnitudes[:, component]
    order = np.argsort(column, kind="stable")
    return SortedComponent(values=column[order], index_map=order)


def build_adjacency(sorted_component: SortedComponent, epsilon: float) -> np.ndarray:
    """Boolean column marking sorted positions within epsilon of their predecessor."""
    if epsilon <= 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    values = sorted_component.values
    column = np.zeros(len(values), dtype=bool)
    column[1:] = np.diff(values) < epsilon
    return column


def find_largest_run(adjacency: np.ndarray) -> tuple[int, int, int]:
    """Locate the longest contiguous run of true entries over all columns.

    Returns ``(component, lo, hi)`` with the run spanning sorted positions
    ``lo..hi`` inclusive.  Ties go to the lowest component index, then the
    lowest start position.

    Raises
    ------
    NoRunFoundError
        If the table contains no true entry.
    """
    best = None
    n_rows, n_cols = adjacency.shape
    for component in range(n_cols):
        column = adjacency[:, component]
        m = 0
        while m < n_rows:
            if column[m]:
                lo = m
                while m < n_rows and column[m]:
                    m += 1
                length = m - lo
                if best is None or length > best[0]:
                    best = (length, component, lo)
            else:
                m += 1
    if best is None:
        raise NoRunFoundError("adjacency table contains no true entries")
    length, component, lo = best
    return component, lo, lo + length - 1


def expand_and_remap(
    run: tuple[int, int, int], sorted_components: list[SortedComponent]
) -> np.ndarray:
    """Heading indices of the run, including its left anchor.

    Position ``lo`` marks the difference ``values[lo] - values[lo - 1]``,
    so the value at ``lo - 1`` belongs to the same bunch and is included
    before mapping sorted positions back to heading indices.
    """
    component, lo, hi = run
    positions = np.arange(max(lo - 1, 0), hi + 1)
    return np.sort(sorted_components[component].index_map[positions])


def cross_check_components(
    seed_indices: np.ndarray,
    seed_component: int,
    adjacency: np.ndarray,
    sorted_components: list[SortedComponent],
) -> ClusterTables:
    """Fill the time-ordered membership table from one component's seed.

    For every other component, a seed heading belongs to that component's
    clustering when its sorted position sits inside an epsilon run: either
    the position itself is marked, or the position immediately after it is
    (the heading is then the run's left anchor).
    """
    n_rows, n_cols = adjacency.shape
    membership = np.zeros((n_rows, n_cols), dtype=bool)
    membership[seed_indices, seed_component] = True
    for component in range(n_cols):
        if component == seed_component:
            continue
        inverse = np.empty(n_rows, dtype=int)
        inverse[sorted_components[component].index_map] = np.arange(n_rows)
        positions = inverse[seed_indices]
        in_run = adjacency[positions, component]
        has_next = positions + 1 < n_rows
        in_run = in_run | (has_next & adjacency[np.minimum(positions + 1, n_rows - 1), component])
        membership[seed_indices, component] = in_run
    survivors = membership.all(axis=1)
    return ClusterTables(adjacency=adjacency, membership=membership, survivors=survivors)


def extract_cluster(tables: ClusterTables, velocities: np.ndarray) -> Cluster:
    """Headings surviving the AND across components, with their velocities."""
    if len(tables.survivors) != len(velocities):
        raise DimensionMismatchError(
            f"{len(tables.survivors)} table rows vs {len(velocities)} velocities"
        )
    members = np.flatnonzero(tables.survivors)
    if members.size == 0:
        raise EmptyClusterError("no heading survived the component-wise AND")
    return Cluster(member_indices=members, member_velocities=velocities[members])


def find_cluster(velocities, epsilon: float) -> tuple[Cluster, ClusterTables]:
    """Run the whole clustering pass on a list of nonzero velocity vectors.

    Parameters
    ----------
    velocities : array_like, shape (M, N)
        Velocity vectors of the headings entering the sort; all rows must
        have positive length.
    epsilon : float
        Sorted-gap threshold, usually :func:`gap_threshold`.

    Returns
    -------
    (Cluster, ClusterTables)
        Member indices are positions into ``velocities``.
    """
    v = np.atleast_2d(np.asarray(velocities, dtype=float))
    if v.shape[0] < 2:
        raise TooFewHeadingsError(f"need at least 2 headings, got {v.shape[0]}")
    speeds = np.linalg.norm(v, axis=1)
    if np.any(speeds == 0.0):
        raise ValueError("zero-velocity rows must be filtered out before clustering")
    magnitudes = np.abs(v / speeds[:, None])
    sorted_components = [sort_component(magnitudes, i) for i in range(v.shape[1])]
    adjacency = np.column_stack(
        [build_adjacency(sc, epsilon) for sc in sorted_components]
    )
    run = find_largest_run(adjacency)
    seed = expand_and_remap(run, sorted_components)
    tables = cross_check_components(seed, run[0], adjacency, sorted_components)
    return extract_cluster(tables, v), tables
