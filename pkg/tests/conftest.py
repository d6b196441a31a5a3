import random
import sys

import pytest

from crossflip.balance import find_coloring
from crossflip.core import cross_polytope_boundary
from crossflip.search import SearchState


def random_walk(d: int, steps: int, seed: int, max_f0: int = 18):
    """Yield (state, embedding) pairs of a random flip walk starting at a cross-polytope boundary.

    Up-flips are suppressed once the complex has ``max_f0`` vertices.
    """
    cx = cross_polytope_boundary(d)
    state = SearchState(cx, find_coloring(cx), seed=seed)
    rng = random.Random(seed)
    for _ in range(steps):
        cands = state.candidates()
        if state.complex.num_vertices >= max_f0:
            cands = [e for e in cands if e.template.kind == "down"] or \
                    [e for e in cands if e.template.kind != "up"] or cands
        emb = rng.choice(cands)
        yield state, emb
        state.apply(emb)


@pytest.fixture
def walk():
    return random_walk


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
