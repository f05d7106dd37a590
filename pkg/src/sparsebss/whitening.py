"""Gram-Schmidt whitening of mixture channels.

Channels are orthogonalized in row order against the sample inner product
``<a, b> = mean(a * b)`` and each residual is rescaled to unit rms.  No
mean is subtracted at any point: centering would introduce correlations
between otherwise uncorrelated sparse sources, so the decomposition runs
on the raw channels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RankDeficientError, ZeroChannelError
from .signals import as_signal_matrix, rms

#: Residuals below this fraction of the channel rms are treated as rank loss.
RANK_TOLERANCE = 1e-12


@dataclass(frozen=True)
class WhitenedData:
    """Result of whitening: components = transform @ mixtures.

    Attributes
    ----------
    components : ndarray, shape (n, L)
        Orthonormal channels: ``mean(components[i] * components[j]) == delta_ij``.
    transform : ndarray, shape (n, n)
        Lower-triangular map from the input mixtures to the components.
    """

    components: np.ndarray
    transform: np.ndarray


def gram_schmidt_whiten(mixtures) -> WhitenedData:
    """Orthogonalize and unit-rms-normalize mixture channels in row order.

    Channel 0 seeds the basis; each later channel is projected against all
    previous components before normalization.

    Raises
    ------
    ZeroChannelError
        If a channel is identically zero.
    RankDeficientError
        If a channel's residual after projection has rms below
        ``RANK_TOLERANCE`` times the channel rms.
    """
    z = as_signal_matrix(mixtures)
    n, L = z.shape
    components = np.empty_like(z)
    transform = np.zeros((n, n))
    for i in range(n):
        channel_rms = rms(z[i])[0]
        if channel_rms == 0.0:
            raise ZeroChannelError(f"channel {i} is identically zero")
        residual = z[i].copy()
        row = np.zeros(n)
        row[i] = 1.0
        for k in range(i):
            coeff = np.mean(residual * components[k])
            residual -= coeff * components[k]
            row -= coeff * transform[k]
        residual_rms = rms(residual)[0]
        if residual_rms < RANK_TOLERANCE * channel_rms:
            raise RankDeficientError(
                f"channel {i} is linearly dependent on channels 0..{i - 1}"
            )
        components[i] = residual / residual_rms
        transform[i] = row / residual_rms
    return WhitenedData(components=components, transform=transform)
