import random

import pytest

from rexcgt.canonical import canon
from rexcgt.gameform import STAR, add, followers, parse, serialize
from rexcgt.generate import distinct_games, games_up_to, random_game, subsets
from rexcgt.poset import BOOL, CHAIN3


def test_subsets():
    assert list(subsets("abc", 2)) == [("a",), ("b",), ("c",), ("a", "b"), ("a", "c"), ("b", "c")]
    assert len(list(subsets("abcd"))) == 15


def test_universe_sizes():
    assert len(games_up_to(BOOL, 1)) == 2 + 3 * 3
    assert len(games_up_to(CHAIN3, 1)) == 3 + 7 * 7
    assert len(games_up_to(BOOL, 2, (None, 1))) == 128
    assert len(games_up_to(BOOL, 2, 2)) == 4358


def test_universe_is_follower_closed_and_deterministic():
    u = games_up_to(BOOL, 2, (None, 1))
    ids = {g.uid for g in u}
    assert all(f.uid in ids for g in u for f in followers(g))
    assert [serialize(g) for g in u] == [serialize(g) for g in games_up_to(BOOL, 2, (None, 1))]


def test_width_list_too_short():
    with pytest.raises(ValueError):
        games_up_to(BOOL, 3, (None, 1))


def test_random_game_respects_depth():
    rng = random.Random(0)
    for _ in range(50):
        assert random_game(rng, CHAIN3, 3).depth <= 3


def test_census_over_bool():
    census = distinct_games(BOOL, 2)
    base = [parse(s, BOOL) for s in ("bot", "top", "{bot|top}")]
    expected = {canon(g).uid for g in base} | {canon(add(g, STAR)).uid for g in base}
    assert {g.uid for g in census.representatives} == expected
    assert census.classes_by_equivalence == 6
