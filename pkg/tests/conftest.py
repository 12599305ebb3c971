from pathlib import Path

import pytest

from awa2uba.core import Awa, complete
from awa2uba.generate import corpus
from awa2uba.io import parse_awa
from awa2uba.posbool import FALSE, TRUE, And, Or, Var

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


def load(name: str) -> Awa:
    return parse_awa((DATA / name).read_text()).awa


@pytest.fixture(scope="session")
def t1() -> Awa:
    return load("t1.awa")


@pytest.fixture(scope="session")
def brv_ambiguous() -> Awa:
    return load("brv_ambiguous.awa")


@pytest.fixture(scope="session")
def small_corpus():
    """Forty corpus automata with at most four states."""
    return corpus(40, max_states=4, seed=7)


def acyclic_safety() -> Awa:
    """Two transient states; nested constants keep completion from adding sinks."""
    delta = {
        (0, "a"): Or((Var(1), And((TRUE, FALSE)))),
        (0, "b"): And((Var(1), TRUE)),
        (1, "a"): Or((TRUE, FALSE)),
        (1, "b"): And((TRUE, FALSE)),
    }
    return complete(Awa(("a", "b"), (0, 1), 0, (), delta))
