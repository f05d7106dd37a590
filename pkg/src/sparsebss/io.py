"""CSV reading and writing for multichannel records.

Layout: one header row naming the channels, then one row per time sample
with one column per channel.  Values are written with 17 significant
digits, so a write/read round trip reproduces every double exactly.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .signals import as_signal_matrix


def write_csv(path, data, names: list[str] | None = None) -> None:
    """Write an (n_channels, n_samples) matrix as columns under ``names``."""
    x = as_signal_matrix(data)
    n_channels = x.shape[0]
    if names is None:
        names = [f"channel_{i + 1}" for i in range(n_channels)]
    if len(names) != n_channels:
        raise ValueError(f"{len(names)} names for {n_channels} channels")
    lines = [",".join(names)]
    for row in x.T:
        lines.append(",".join(f"{v:.17g}" for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def read_csv(path) -> tuple[list[str], np.ndarray]:
    """Read a channels-as-columns CSV back into (names, (N, L) matrix)."""
    text = Path(path).read_text().strip()
    if not text:
        raise ValueError(f"{path}: empty file")
    lines = text.splitlines()
    names = [c.strip() for c in lines[0].split(",")]
    try:
        rows = [[float(v) for v in line.split(",")] for line in lines[1:]]
    except ValueError as err:
        raise ValueError(f"{path}: {err}") from err
    data = np.array(rows, dtype=float)
    if data.ndim != 2 or data.shape[1] != len(names):
        raise ValueError(f"{path}: ragged or empty table")
    return names, data.T
