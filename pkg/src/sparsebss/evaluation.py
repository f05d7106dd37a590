"""Source/estimate association, RMS error metrics, and the Monte Carlo harness.

Estimated sources come back in arbitrary order, with arbitrary scale and
possibly inverted sign.  Association is greedy on the Pearson correlation
matrix: repeatedly take the entry of largest magnitude, pair that source
with that estimate, record the correlation sign, and strike the row and
column.

Before errors are computed, actual sources and estimates are both scaled
to unit Euclidean norm.  (Per-sample error magnitudes are therefore
relative to a unit-energy signal, which keeps them comparable across
record lengths.)  The per-sample RMS error aggregates squared errors
across Monte Carlo runs; its quadratic mean over time and its maximum over
time are the two summary figures.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .config import ScenarioConfig
from .errors import AllRunsFailedError, DimensionMismatchError, SparseBssError
from .rng import derive_seed
from .separation import MethodParams, separate
from .signals import normalize_unit_norm
from .simulate import add_noise

WORKERS_ENV_VAR = "SPARSEBSS_WORKERS"


@dataclass(frozen=True)
class Association:
    """Greedy pairing of actual sources with estimates.

    ``permutation[r]`` is the estimate index matched to actual source ``r``;
    ``signs[r]`` is +1 or -1 according to the matched correlation's sign;
    ``correlations[r]`` is that correlation value.
    """

    permutation: np.ndarray
    signs: np.ndarray
    correlations: np.ndarray


@dataclass(frozen=True)
class EvalReport:
    """Error metrics of a Monte Carlo campaign.

    Per-sample, total, and maximum RMS errors are pooled over every
    successful run; ``set_rms_tot`` / ``set_rms_max`` hold the per-set
    values whose across-set means and standard deviations quantify
    significance.  Failed runs are excluded from all RMS figures and
    reported through ``failures``.
    """

    rms_per_sample: np.ndarray
    rms_tot: np.ndarray
    rms_max: np.ndarray
    set_rms_tot: np.ndarray
    set_rms_max: np.ndarray
    mean_rms_tot: np.ndarray
    sd_rms_tot: np.ndarray
    mean_rms_max: np.ndarray
    sd_rms_max: np.ndarray
    sets: int
    runs_per_set: int
    failures: int
    total_runs: int

    @property
    def failure_rate(self) -> float:
        return self.failures / self.total_runs if self.total_runs else 0.0


def associate(actual, estimates) -> Association:
    """Greedily pair sources with estimates by largest |Pearson correlation|.

    Exact ties go to the lowest (source, estimate) pair in row-major
    order.  Inputs must have equal channel counts.
    """
    s = np.atleast_2d(np.asarray(actual, dtype=float))
    e = np.atleast_2d(np.asarray(estimates, dtype=float))
    if s.shape[0] != e.shape[0]:
        raise DimensionMismatchError(
            f"{s.shape[0]} sources vs {e.shape[0]} estimates"
        )
    if s.shape[1] != e.shape[1]:
        raise DimensionMismatchError(
            f"sources have {s.shape[1]} samples, estimates {e.shape[1]}"
        )
    n = s.shape[0]
    corr = np.corrcoef(np.vstack([s, e]))[:n, n:]
    permutation = np.full(n, -1, dtype=int)
    signs = np.zeros(n)
    correlations = np.zeros(n)
    remaining = np.abs(corr).copy()
    for _ in range(n):
        r, c = np.unravel_index(np.argmax(remaining), remaining.shape)
        permutation[r] = c
        correlations[r] = corr[r, c]
        signs[r] = 1.0 if corr[r, c] >= 0.0 else -1.0
        remaining[r, :] = -np.inf
        remaining[:, c] = -np.inf
    return Association(permutation=permutation, signs=signs, correlations=correlations)


def pointwise_error(actual_row, estimate_row, sign: float) -> np.ndarray:
    """Per-sample error with the estimate's sign resolved.

    ``actual - estimate`` for a positive correlation, ``actual + estimate``
    for a negative one (the estimate came out inverted).
    """
    s = np.asarray(actual_row, dtype=float)
    e = np.asarray(estimate_row, dtype=float)
    return s - e if sign >= 0.0 else s + e


def rms_metrics(errors) -> tuple[np.ndarray, float, float]:
    """Per-sample RMS over runs, plus its quadratic time-mean and time-max.

    ``errors`` is a (Q, L) array of one source's error sequences over Q
    runs.  Returns ``(rms_per_sample, rms_tot, rms_max)``.
    """
    err = np.atleast_2d(np.asarray(errors, dtype=float))
    rms_per_sample = np.sqrt(np.mean(np.square(err), axis=0))
    rms_tot = float(np.sqrt(np.mean(np.square(rms_per_sample))))
    rms_max = float(np.max(rms_per_sample))
    return rms_per_sample, rms_tot, rms_max


def _run_once(clean_mixtures, actual_norm, params, noise_sd, seed):
    """One Monte Carlo run: returns the (S, L) squared-error array or None."""
    noisy = add_noise(clean_mixtures, noise_sd, seed)
    try:
        result = separate(noisy, params)
        estimates = normalize_unit_norm(result.estimates)
    except SparseBssError:
        return None
    assoc = associate(actual_norm, estimates)
    errors = np.empty_like(actual_norm)
    for r in range(actual_norm.shape[0]):
        errors[r] = pointwise_error(
            actual_norm[r], estimates[assoc.permutation[r]], assoc.signs[r]
        )
    return np.square(errors)


def _worker_count(workers: int | None) -> int:
    if workers is not None:
        return max(1, int(workers))
    return max(1, int(os.environ.get(WORKERS_ENV_VAR, "1")))


def monte_carlo(
    scenario: ScenarioConfig,
    params: MethodParams,
    sets: int,
    runs_per_set: int,
    master_seed: int | None = None,
    workers: int | None = None,
) -> EvalReport:
    """Repeated separation of one scenario under fresh noise realizations.

    Run ``q`` of set ``k`` regenerates noise with seed
    ``master_seed + k * runs_per_set + q``, separates, associates, and
    accumulates squared errors per actual source.  Per-set RMS figures are
    summarized by their mean and standard deviation across sets.  Runs
    whose separation fails are counted and excluded from the RMS figures.

    ``workers`` (default: the ``SPARSEBSS_WORKERS`` environment variable,
    else 1) parallelizes runs across processes; results are reduced in run
    order, so the report is identical for any worker count.

    Raises
    ------
    AllRunsFailedError
        If not a single run separated successfully.
    """
    if sets < 1 or runs_per_set < 1:
        raise ValueError("sets and runs_per_set must be at least 1")
    if master_seed is None:
        master_seed = scenario.seed
    sources, clean = scenario.generate()
    actual_norm = normalize_unit_norm(sources)
    n_sources, n_samples = actual_norm.shape

    total_runs = sets * runs_per_set
    seeds = [derive_seed(master_seed, q) for q in range(total_runs)]
    n_workers = _worker_count(workers)
    if n_workers > 1:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            results = list(
                pool.map(
                    _run_once,
                    [clean] * total_runs,
                    [actual_norm] * total_runs,
                    [params] * total_runs,
                    [scenario.noise_sd] * total_runs,
                    seeds,
                    chunksize=max(1, total_runs // (8 * n_workers)),
                )
            )
    else:
        results = [
            _run_once(clean, actual_norm, params, scenario.noise_sd, seed)
            for seed in seeds
        ]

    failures = sum(1 for r in results if r is None)
    if failures == total_runs:
        raise AllRunsFailedError(
            f"all {total_runs} runs failed to separate ({params.method}, "
            f"v_th={params.v_th})"
        )

    pooled_sq = np.zeros((n_sources, n_samples))
    pooled_count = 0
    set_rms_tot, set_rms_max = [], []
    for k in range(sets):
        chunk = results[k * runs_per_set : (k + 1) * runs_per_set]
        good = [r for r in chunk if r is not None]
        if not good:
            continue
        sq_sum = np.sum(good, axis=0)
        pooled_sq += sq_sum
        pooled_count += len(good)
        rms_per_sample = np.sqrt(sq_sum / len(good))
        set_rms_tot.append(np.sqrt(np.mean(np.square(rms_per_sample), axis=1)))
        set_rms_max.append(np.max(rms_per_sample, axis=1))

    set_rms_tot = np.array(set_rms_tot)
    set_rms_max = np.array(set_rms_max)
    pooled_rms = np.sqrt(pooled_sq / pooled_count)
    ddof = 1 if len(set_rms_tot) > 1 else 0
    return EvalReport(
        rms_per_sample=pooled_rms,
        rms_tot=np.sqrt(np.mean(np.square(pooled_rms), axis=1)),
        rms_max=np.max(pooled_rms, axis=1),
        set_rms_tot=set_rms_tot,
        set_rms_max=set_rms_max,
        mean_rms_tot=set_rms_tot.mean(axis=0),
        sd_rms_tot=set_rms_tot.std(axis=0, ddof=ddof),
        mean_rms_max=set_rms_max.mean(axis=0),
        sd_rms_max=set_rms_max.std(axis=0, ddof=ddof),
        sets=sets,
        runs_per_set=runs_per_set,
        failures=failures,
        total_runs=total_runs,
    )
