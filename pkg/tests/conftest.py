import random
import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from tileproof.terms import H, Leaf, Term, V

# default is quick; soak for occasional deep runs: pytest --hypothesis-profile=soak
settings.register_profile("default", max_examples=250, deadline=None)
settings.register_profile("soak", max_examples=2500, deadline=None)
settings.load_profile("default")

_LABELS = "abcdefgh"


def random_term(rng: random.Random, max_leaves: int, min_leaves: int = 1) -> Term:
    """Uniform-ish random flattened term with a bounded leaf count."""
    n = rng.randint(min_leaves, max_leaves)
    labels = [rng.choice(_LABELS) for _ in range(n)]

    def build(lo: int, hi: int, forbid: str) -> Term:
        count = hi - lo
        if count == 1:
            return Leaf(labels[lo])
        kind = rng.choice([k for k in ("h", "v") if k != forbid])
        # lean toward binary splits: deeper alternation, more interchange redexes
        parts = 2 if rng.random() < 0.6 else rng.randint(2, count)
        cuts = sorted(rng.sample(range(lo + 1, hi), parts - 1))
        bounds = [lo] + cuts + [hi]
        kids = tuple(build(bounds[i], bounds[i + 1], kind) for i in range(parts))
        return H(kids) if kind == "h" else V(kids)

    return build(0, n, "")


@pytest.fixture
def rng():
    return random.Random(20240817)
