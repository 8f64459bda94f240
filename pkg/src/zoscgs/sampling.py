"""Seeded random streams and uniform samplers on the unit sphere and ball."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError

__all__ = [
    "SeededStream",
    "Streams",
    "DIRECTIONS",
    "XI",
    "PROBLEM",
    "BALL",
    "sample_sphere",
    "sample_ball",
    "as_generator",
]

# one stream per logical role
DIRECTIONS = 0
XI = 1
PROBLEM = 2
BALL = 3


@dataclass
class SeededStream:
    """Random stream keyed by ``(seed, stream_id)``.

    Backed by the counter-based Philox bit generator, so the k-th draw only
    depends on the key and on how many values were consumed before it.
    """

    seed: int
    stream_id: int = 0
    generator: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        ss = np.random.SeedSequence(int(self.seed), spawn_key=(int(self.stream_id),))
        self.generator = np.random.Generator(np.random.Philox(ss))


@dataclass
class Streams:
    """The streams a single solver run owns."""

    directions: SeededStream
    xi: SeededStream
    ball: SeededStream

    @classmethod
    def from_seed(cls, seed: int) -> "Streams":
        return cls(SeededStream(seed, DIRECTIONS), SeededStream(seed, XI), SeededStream(seed, BALL))


def as_generator(stream) -> np.random.Generator:
    return stream.generator if isinstance(stream, SeededStream) else stream


def sample_sphere(stream, d: int, n: int | None = None) -> np.ndarray:
    """Uniform draw(s) on the unit l2-sphere in R^d.

    Returns shape ``(d,)`` when ``n`` is None, else ``(n, d)``.  Rows are
    normalized Gaussians; an all-zero Gaussian row is redrawn.
    """
    if d < 1:
        raise DimensionError(f"sphere dimension must be >= 1, got {d}")
    gen = as_generator(stream)
    rows = 1 if n is None else int(n)
    E = gen.standard_normal((rows, d))
    norms = np.linalg.norm(E, axis=1)
    for i in np.flatnonzero(norms == 0.0):
        while norms[i] == 0.0:
            E[i] = gen.standard_normal(d)
            norms[i] = np.linalg.norm(E[i])
    E /= norms[:, None]
    return E[0] if n is None else E


def sample_ball(stream, d: int, n: int | None = None) -> np.ndarray:
    """Uniform draw(s) in the unit l2-ball: a sphere draw scaled by ``U**(1/d)``."""
    gen = as_generator(stream)
    E = sample_sphere(gen, d, 1 if n is None else n)
    radii = gen.uniform(size=E.shape[0]) ** (1.0 / d)
    X = E * radii[:, None]
    return X[0] if n is None else X
