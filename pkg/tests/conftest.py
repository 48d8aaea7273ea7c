import random

import pytest

from valex.diagram import Diagram, Passage


def make_random_diagram(rng: random.Random, n: int, n_comp: int = 1) -> Diagram:
    """A random valid signed Gauss diagram with n crossings."""
    toks = [(c, True) for c in range(1, n + 1)] + [(c, False) for c in range(1, n + 1)]
    while True:
        rng.shuffle(toks)
        if n_comp == 1:
            comps = [toks[:]]
        else:
            cuts = sorted(rng.sample(range(1, 2 * n), n_comp - 1))
            comps = [toks[a:b] for a, b in zip([0] + cuts, cuts + [2 * n])]
        if not all(comps):
            continue
        signs = {c: rng.choice([1, -1]) for c in range(1, n + 1)}
        return Diagram(
            [[Passage(c, o) for c, o in comp] for comp in comps], signs
        )


@pytest.fixture
def rng():
    return random.Random(20250808)
