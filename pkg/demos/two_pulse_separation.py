"""Separate two truncated-Gaussian pulses from their 2-channel mixture.

The bundled ``example1`` scenario mixes a tall slow pulse and a small
sharp pulse through a fixed 2x2 matrix at 250 Hz.  Both extraction
methods recover the sources essentially perfectly on clean data; the
sharper pulse comes out first because differencing favors fast features.
"""

import numpy as np

from sparsebss import (
    MethodParams,
    associate,
    load_preset,
    min_peak_contribution,
    normalize_unit_norm,
    separate,
)

config = load_preset("example1")
sources, mixtures = config.generate()
print(f"scenario: {sources.shape[0]} sources, {sources.shape[1]} samples "
      f"at {config.sample_rate_hz:.0f} Hz")
print(f"smallest peak contribution of any source to any channel: "
      f"{min_peak_contribution(sources, config.mixing_matrix):.4f}")

sources_n = normalize_unit_norm(sources)
for method, v_th in (("global", 0.4), ("mhc", 0.8)):
    result = separate(mixtures, MethodParams(method=method, v_th=v_th, alpha=1.0))
    assoc = associate(sources_n, normalize_unit_norm(result.estimates))
    print(f"\n{method} (v_th = {v_th}):")
    for r in range(2):
        print(
            f"  source {r + 1} <- estimate {assoc.permutation[r] + 1}, "
            f"correlation {assoc.correlations[r]:+.6f}"
        )
    for it, diag in enumerate(result.iterations):
        print(
            f"  iteration {it}: {diag.accepted_count} accepted headings, "
            f"cluster of {diag.cluster_size}, residual energy {diag.residual_energy:.3e}"
        )

# the extraction order follows the faster source: estimate 1 matches source 2
result = separate(mixtures, MethodParams(method="global", v_th=0.4))
assoc = associate(sources_n, normalize_unit_norm(result.estimates))
first_estimate_source = int(np.argmax(assoc.permutation == 0)) + 1
print(f"\nextracted first: source {first_estimate_source} (the sharp pulse)")
