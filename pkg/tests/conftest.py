import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rexcgt.gameform import atom, make
from rexcgt.poset import BOOL, CHAIN3, DIAMOND

sys.path.insert(0, os.path.dirname(__file__))
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

settings.register_profile(
    "default",
    max_examples=150,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def games_over(poset, max_leaves=12, width=3):
    atoms = st.sampled_from(poset.elements).map(lambda e: atom(poset, e))
    side = lambda kids: st.lists(kids, min_size=1, max_size=width)
    return st.recursive(
        atoms,
        lambda kids: st.tuples(side(kids), side(kids)).map(lambda lr: make(poset, *lr)),
        max_leaves=max_leaves,
    )


bool_games = games_over(BOOL)
chain3_games = games_over(CHAIN3)
diamond_games = games_over(DIAMOND, max_leaves=8)
any_games = st.one_of(bool_games, chain3_games, diamond_games)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(LINES):
            terminalreporter.write_line(LINES[key])
