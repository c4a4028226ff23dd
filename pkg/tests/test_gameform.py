import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import any_games, bool_games, chain3_games
from oracles import to_tree, tree_map, tree_sum
from rexcgt.errors import InputError
from rexcgt.gameform import (
    STAR,
    ZERO,
    Parity,
    add,
    add_all,
    atom,
    atomize,
    bottom,
    dual,
    followers,
    make,
    map_game,
    parity,
    parse,
    serialize,
    top,
)
from rexcgt.poset import (
    BOOL,
    CHAIN3,
    ONE,
    Op,
    compose,
    constant_map,
    dual as dual_poset,
    enumerate_monotone_maps,
    hom_to_map,
    identity_map,
    lambda_map,
)


def _flat(e):
    if isinstance(e, tuple):
        out = ()
        for x in e:
            out += _flat(x)
        return out
    return (e,)


def _flat_tree(g):
    return tree_map(_flat, to_tree(g))


def test_atomic_sum_pairs_up():
    a, b = atom(BOOL, "top"), atom(CHAIN3, "h")
    s = add(a, b)
    assert s.is_atom and s.atom == ("top", "h")


def test_sum_with_zero_is_identity():
    g = parse("{{bot|top},top|bot}", BOOL)
    assert add(g, ZERO) is g
    assert add(ZERO, g) is g


def test_star_plus_star():
    ss = add(STAR, STAR)
    assert ss is make(ONE, [STAR], [STAR])
    assert serialize(ss) == "{{0|0}|{0|0}}"


@given(bool_games, chain3_games)
def test_sum_matches_naive_expansion(g, h):
    assert to_tree(add(g, h)) == tree_sum(to_tree(g), to_tree(h))


@given(bool_games, chain3_games, bool_games)
def test_sum_associative_up_to_pairing(g, h, k):
    left = add(add(g, h), k)
    right = add(g, add(h, k))
    assert _flat_tree(left) == _flat_tree(right)


@given(bool_games, bool_games)
def test_sum_commutative_up_to_pairing(g, h):
    swap = lambda e: (e[1], e[0])
    assert tree_map(swap, to_tree(add(g, h))) == to_tree(add(h, g))


def test_map_examples():
    g = parse("{bot|top}", BOOL)
    assert map_game(identity_map(BOOL), g) is g
    assert serialize(map_game(constant_map(BOOL, BOOL, "top"), g)) == "{top|top}"
    with pytest.raises(InputError):
        map_game(identity_map(CHAIN3), g)


def test_lambda_comparison_game_expansion():
    g = parse("{bot|top}", BOOL)
    c = map_game(lambda_map(BOOL), add(dual(g), g))
    assert c.poset is BOOL
    # both left options collapse to {bot|top}, both right options to {top|top}
    assert serialize(c) == "{{bot|top}|{top|top}}"
    naive = tree_map(
        lambda pair: "top" if BOOL.leq(pair[0].base, pair[1]) else "bot",
        tree_sum(to_tree(dual(g)), to_tree(g)),
    )
    assert naive == to_tree(c)


@given(chain3_games, st.data())
def test_map_composition(g, data):
    hom = enumerate_monotone_maps(CHAIN3, CHAIN3)
    f1 = hom_to_map(CHAIN3, data.draw(st.sampled_from(hom.elements)))
    f2 = hom_to_map(CHAIN3, data.draw(st.sampled_from(hom.elements)))
    assert map_game(compose(f1, f2), g) is map_game(f1, map_game(f2, g))


def test_dual_examples():
    assert dual(STAR) is STAR
    t = dual(top(BOOL))
    assert t.atom == Op("top") and t.atom == dual_poset(BOOL).bottom
    assert serialize(dual(parse("{bot|top}", BOOL))) == "{top^op|bot^op}"


@given(any_games)
def test_dual_involution(g):
    assert dual(dual(g)) is g


@given(bool_games, chain3_games)
def test_dual_distributes_over_sum(g, h):
    assert dual(add(g, h)) is add(dual(g), dual(h))


def test_parity_examples():
    assert parity(top(BOOL)) is Parity.EVEN
    assert parity(STAR) is Parity.ODD
    assert parity(parse("{bot|{top|top}}", BOOL)) is Parity.NONE
    assert parity(atomize(top(BOOL))) is Parity.EVEN


@given(any_games, any_games)
def test_parity_of_sums(g, h):
    pg, ph = parity(g), parity(h)
    if Parity.NONE in (pg, ph):
        return
    expected = Parity.EVEN if pg is ph else Parity.ODD
    assert parity(add(g, h)) is expected


@given(any_games)
def test_star_flips_parity(g):
    assert parity(add(g, STAR)) is parity(g).flip()


def test_followers_examples():
    t = top(BOOL)
    assert followers(t) == [t]
    assert set(followers(STAR)) == {STAR, ZERO}
    g = parse("{bot|top}", BOOL)
    assert set(followers(g)) == {g, bottom(BOOL), top(BOOL)}
    assert followers(g)[-1] is g


@given(any_games)
def test_followers_closed_and_children_first(g):
    fs = followers(g)
    pos = {f.uid: i for i, f in enumerate(fs)}
    for f in fs:
        for o in f.options:
            assert pos[o.uid] < pos[f.uid]


def test_serialize_examples():
    assert serialize(top(BOOL)) == "top"
    assert serialize(parse("{bot|top}", BOOL)) == "{bot|top}"
    assert serialize(parse("{ {bot|bot} | {top | top} }", BOOL)) == "{{bot|bot}|{top|top}}"


@given(any_games)
def test_parse_serialize_roundtrip(g):
    assert parse(serialize(g), g.poset) is g


def test_options_sorted_in_serialization():
    a = parse("{top,bot,{bot|top}|top}", BOOL)
    b = parse("{{bot|top},bot,top|top}", BOOL)
    assert a is b and serialize(a) == "{bot,top,{bot|top}|top}"


@pytest.mark.parametrize("text", ["{bot|", "{|top}", "{bot top}", "nope", "{bot|top}}", ""])
def test_parse_errors(text):
    with pytest.raises(InputError):
        parse(text, BOOL)


def test_construction_errors():
    with pytest.raises(InputError):
        make(BOOL, [], [top(BOOL)])
    with pytest.raises(InputError):
        make(BOOL, [top(BOOL)], [top(CHAIN3)])
    with pytest.raises(InputError):
        atom(BOOL, "h")


def test_add_all_left_nested():
    gs = [STAR, top(BOOL), STAR]
    assert add_all(gs) is add(add(STAR, top(BOOL)), STAR)


def test_hash_consing():
    assert parse("{bot|top}", BOOL) is make(BOOL, [bottom(BOOL), bottom(BOOL)], [top(BOOL)])
