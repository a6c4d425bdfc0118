"""Seed derivation and complex Gaussian sampling.

All randomness in the package flows through named streams so that every
consumer draws from its own deterministic substream of the user seed.
Per-sample children are spawned from a fresh SeedSequence, which keeps the
first s children identical no matter how many are requested in total; rank
growth under sampling is therefore monotone in the sample count, and a
parallel evaluation sees the same vectors as a serial one.
"""

from __future__ import annotations

import numpy as np

# Stream tags. Each (seed, stream) pair owns an independent substream.
STREAM_SAMPLE = 1  # random_sample_span draws
STREAM_SINGLE = 2  # single_vector_sample_span draws
STREAM_PAIRING = 3  # pairing identity trial vectors
STREAM_ORTHO = 4  # orthogonality trial vectors
STREAM_GEN = 5  # instance generation


def seed_children(seed: int, stream: int, count: int) -> list[np.random.SeedSequence]:
    """Spawn `count` child seeds of the (seed, stream) pair.

    Children are indexed by spawn position, so seed_children(s, t, m) is a
    prefix of seed_children(s, t, m + 1).
    """
    root = np.random.SeedSequence(entropy=[int(seed), int(stream)])
    return root.spawn(count)


def complex_gaussian(rng: np.random.Generator, *shape: int) -> np.ndarray:
    """Draw i.i.d. standard complex Gaussian entries, E|z|^2 = 1.

    Real and imaginary parts are N(0, 1/2), drawn coordinate-major: for each
    entry in row-major order the real part is drawn first, then the imaginary
    part.
    """
    z = rng.standard_normal(shape + (2,))
    return (z[..., 0] + 1j * z[..., 1]) * np.sqrt(0.5)
