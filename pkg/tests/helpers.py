"""Test helpers shared across modules."""

import numpy as np

from swarmselect.rng import RandomSource


def sphere(x):
    return float(np.sum(np.asarray(x) ** 2))


class PinnedSource(RandomSource):
    """Replays a fixed list of unit draws through the normal RandomSource API."""

    def __init__(self, draws):
        super().__init__(0)
        self._draws = list(draws)

    def _unit(self):
        return self._draws.pop(0)
