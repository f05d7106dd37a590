"""Signal-matrix conventions and per-channel normalization.

A signal matrix is a plain 2-D ``float64`` ndarray of shape
``(n_channels, n_samples)``: one row per channel, one column per time
sample.  Every function in this package that takes or returns multichannel
data uses this layout.
"""

from __future__ import annotations

import numpy as np

from .errors import NonFiniteError, TooShortError, ZeroChannelError


def as_signal_matrix(data) -> np.ndarray:
    """Coerce ``data`` to a validated (n_channels, n_samples) float array.

    Raises
    ------
    TooShortError
        If there are fewer than 2 samples per channel.
    NonFiniteError
        If any entry is NaN or infinite.
    """
    x = np.atleast_2d(np.asarray(data, dtype=float))
    if x.ndim != 2 or x.shape[0] < 1:
        raise TooShortError(f"expected a 2-D channels x samples array, got shape {x.shape}")
    validate(x)
    return x


def validate(signal: np.ndarray) -> None:
    """Check the signal-matrix invariants, raising on the first violation."""
    if signal.ndim != 2:
        raise TooShortError(f"expected 2-D array, got {signal.ndim}-D")
    if signal.shape[1] < 2:
        raise TooShortError(
            f"need at least 2 samples per channel, got {signal.shape[1]}"
        )
    if not np.isfinite(signal).all():
        raise NonFiniteError("signal contains NaN or infinite entries")


def rms(signal: np.ndarray) -> np.ndarray:
    """Per-channel root mean square, sqrt(mean(x**2)) with divisor L."""
    signal = np.atleast_2d(np.asarray(signal, dtype=float))
    return np.sqrt(np.mean(np.square(signal), axis=1))


def normalize_rms(signal) -> np.ndarray:
    """Rescale each channel to unit rms.

    Parameters
    ----------
    signal : array_like, shape (n_channels, n_samples)

    Returns
    -------
    ndarray of the same shape where every row satisfies
    ``sqrt(mean(row**2)) == 1``.

    Raises
    ------
    ZeroChannelError
        If any channel is identically zero.
    """
    x = as_signal_matrix(signal)
    scale = rms(x)
    if np.any(scale == 0.0):
        bad = int(np.flatnonzero(scale == 0.0)[0])
        raise ZeroChannelError(f"channel {bad} is identically zero")
    return x / scale[:, None]


def normalize_unit_norm(signal) -> np.ndarray:
    """Rescale each channel to unit Euclidean norm (sum of squares = 1).

    This is the normalization used by the evaluation metrics; see
    :mod:`sparsebss.evaluation`.
    """
    x = as_signal_matrix(signal)
    scale = np.linalg.norm(x, axis=1)
    if np.any(scale == 0.0):
        bad = int(np.flatnonzero(scale == 0.0)[0])
        raise ZeroChannelError(f"channel {bad} is identically zero")
    return x / scale[:, None]
