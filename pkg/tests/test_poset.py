import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_monotone_maps
from rexcgt.errors import InputError
from rexcgt.poset import (
    BOOL,
    CHAIN3,
    DIAMOND,
    ONE,
    Block,
    HomElement,
    MonotoneMap,
    Op,
    apply_map,
    bool_and,
    bool_or,
    chain,
    compose,
    constant_map,
    dual,
    dual_of,
    enumerate_monotone_maps,
    eval_map,
    identity_map,
    lambda_map,
    make_poset,
    parse_poset,
    product,
    product_element,
    quotient_preorder,
    resolve_poset,
    rho_map,
    serialize_poset,
    split_element,
)


def _axioms(p):
    els = p.elements
    for a in els:
        assert p.leq(a, a)
        assert p.leq(p.bottom, a) and p.leq(a, p.top)
        for b in els:
            if a != b:
                assert not (p.leq(a, b) and p.leq(b, a))
            for c in els:
                if p.leq(a, b) and p.leq(b, c):
                    assert p.leq(a, c)


POSETS = [ONE, BOOL, CHAIN3, DIAMOND, product(BOOL, CHAIN3), dual(DIAMOND), chain("abcde")]


@pytest.mark.parametrize("p", POSETS, ids=lambda p: p.name)
def test_axioms_hold(p):
    _axioms(p)


def test_leq_examples():
    assert BOOL.leq("bot", "top")
    assert not BOOL.leq("top", "bot")
    assert not DIAMOND.leq("WB", "BW") and not DIAMOND.leq("BW", "WB")
    with pytest.raises(InputError):
        BOOL.leq("bot", "nope")


def test_product_and_absorption():
    assert product(BOOL, ONE) is BOOL
    assert product(ONE, BOOL) is BOOL
    assert product(ONE, ONE) is ONE
    bb = product(BOOL, BOOL)
    assert len(bb) == 4
    mid = [e for e in bb.elements if e not in (bb.top, bb.bottom)]
    assert len(mid) == 2 and not bb.leq(*mid) and not bb.leq(*reversed(mid))
    for a, b in itertools.product(bb.elements, repeat=2):
        assert bb.leq(a, b) == (BOOL.leq(a[0], b[0]) and BOOL.leq(a[1], b[1]))


def test_product_element_roundtrip():
    p = product(CHAIN3, BOOL)
    for a in CHAIN3.elements:
        for b in BOOL.elements:
            e = product_element(CHAIN3, BOOL, a, b)
            assert e in p
            assert split_element(CHAIN3, BOOL, e) == (a, b)
    assert product_element(BOOL, ONE, "top", "0") == "top"


def test_dual():
    d = dual(BOOL)
    assert d.top == Op("bot") and d.bottom == Op("top")
    assert dual(d) is BOOL
    assert dual(ONE) is ONE
    dc = dual(CHAIN3)
    assert dc.leq(Op("top"), Op("h")) and dc.leq(Op("h"), Op("bot"))
    assert dual(product(BOOL, CHAIN3)) is product(dual(BOOL), dual(CHAIN3))
    assert dual_of(BOOL, "top") == Op("top")


def test_interning_is_structural():
    again = make_poset(("bot", "top"), [("bot", "top")], name="other name")
    assert again is BOOL


def test_make_poset_rejects_bad_input():
    with pytest.raises(InputError):
        make_poset(("a", "b"), [("a", "b"), ("b", "a")])
    with pytest.raises(InputError):
        make_poset(("a", "b"), [])  # no top or bottom


@pytest.mark.parametrize(
    "dom,cod,count",
    [(ONE, BOOL, 2), (BOOL, BOOL, 3), (CHAIN3, BOOL, 4), (DIAMOND, BOOL, 6), (BOOL, CHAIN3, 6), (CHAIN3, CHAIN3, 10)],
)
def test_monotone_map_counts_match_brute_force(dom, cod, count):
    hom = enumerate_monotone_maps(dom, cod)
    assert len(hom) == count
    assert sorted(f.values for f in hom.elements) == sorted(brute_monotone_maps(dom, cod))
    _axioms(hom)
    for f in hom.elements:
        for g in hom.elements:
            assert hom.leq(f, g) == all(cod.leq(x, y) for x, y in zip(f.values, g.values))


def test_bool_hom_labels():
    hom = enumerate_monotone_maps(BOOL, BOOL)
    assert [f.label for f in hom.elements] == ["f0", "f1", "f2"]
    assert [f.values for f in hom.elements] == [("bot", "bot"), ("bot", "top"), ("top", "top")]


def test_lambda_rho_and_or():
    lam = lambda_map(BOOL)
    dp = dual(BOOL)
    assert lam(product_element(dp, BOOL, Op("top"), "bot")) == "bot"
    for a in BOOL.elements:
        assert lam(product_element(dp, BOOL, Op(a), a)) == "top"
    dl = lambda_map(DIAMOND)
    assert dl(product_element(dual(DIAMOND), DIAMOND, Op("WB"), "BW")) == "bot"
    rho = rho_map(BOOL)
    assert rho(product_element(BOOL, dp, "bot", Op("top"))) == "bot"
    assert rho(product_element(BOOL, dp, "top", Op("bot"))) == "top"
    assert rho_map(CHAIN3)(product_element(CHAIN3, dual(CHAIN3), "h", Op("h"))) == "bot"
    assert bool_and()(("top", "top")) == "top"
    assert bool_and()(("top", "bot")) == "bot"
    assert bool_or()(("bot", "bot")) == "bot"
    for m in (lam, dl, rho, rho_map(CHAIN3), bool_and(), bool_or(), eval_map(CHAIN3)):
        assert m.is_monotone()


def test_apply_map():
    eps = eval_map(BOOL)
    hom = enumerate_monotone_maps(BOOL, BOOL)
    ident = next(f for f in hom.elements if f.values == ("bot", "top"))
    const_top = next(f for f in hom.elements if f.values == ("top", "top"))
    assert apply_map(eps, "bot", ident) == "bot"
    assert apply_map(eps, "bot", const_top) == "top"
    eps3 = eval_map(CHAIN3)
    only_top = next(f for f in enumerate_monotone_maps(CHAIN3, BOOL).elements if f.values == ("bot", "bot", "top"))
    assert apply_map(eps3, "h", only_top) == "bot"
    with pytest.raises(InputError):
        apply_map(eps, "h", only_top)


def test_monotone_map_validation():
    with pytest.raises(InputError):
        MonotoneMap(BOOL, BOOL, {"bot": "top", "top": "bot"})
    with pytest.raises(InputError):
        MonotoneMap(BOOL, BOOL, {"bot": "bot"})
    neg_free = compose(constant_map(BOOL, BOOL, "top"), identity_map(BOOL))
    assert neg_free("bot") == "top"


def test_quotient_preorder():
    p, proj = quotient_preorder("abc", lambda x, y: x <= y)
    assert p.is_chain() and len(p) == 3 and proj["a"] == "a"
    p2, proj2 = quotient_preorder("xyz", lambda a, b: a == b or a in "xy" and b in "xy" or b == "z")
    assert len(p2) == 2
    assert isinstance(proj2["x"], Block) and proj2["x"] == proj2["y"]
    assert proj2["z"] == p2.top
    with pytest.raises(InputError):
        quotient_preorder("abc", {("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c")})


def test_quotient_of_completion_preorder_is_three_chain():
    from rexcgt import data_path
    from rexcgt.rexboard import load_position, outcome_of_completion

    r = load_position(data_path("three_terminal_chain.region"))
    comps = ["".join(c) for c in itertools.product("BW", repeat=len(r.empty))]
    outs = {c: outcome_of_completion(r, dict(zip(r.empty, c))) for c in comps}
    p, proj = quotient_preorder(comps, lambda a, b: outs[b].refines(outs[a]))
    assert len(p) == 3 and p.is_chain()
    assert proj["BB"] == p.bottom
    assert proj["WB"] == proj["WW"] == p.top
    assert proj["BW"] not in (p.top, p.bottom)


def test_text_roundtrip(tmp_path):
    for p in (BOOL, CHAIN3, DIAMOND):
        text = serialize_poset(p)
        assert serialize_poset(parse_poset(text)) == text
    f = tmp_path / "v.poset"
    f.write_text("poset V\nelems b m1 m2 t\nle b m1\nle b m2\nle m1 t\nle m2 t\n")
    assert len(resolve_poset(str(f))) == 4
    assert resolve_poset("chain3") is CHAIN3
    with pytest.raises(InputError):
        resolve_poset("no-such-poset")
    with pytest.raises(InputError):
        parse_poset("elems a b\nle a\n")


@given(st.integers(1, 5), st.integers(1, 3))
def test_chain_maps_count(n, m):
    dom, cod = chain([f"d{i}" for i in range(n)]), chain([f"c{i}" for i in range(m + 1)])
    hom = enumerate_monotone_maps(dom, cod)
    from math import comb

    assert len(hom) == comb(n + m, m)
    assert all(isinstance(f, HomElement) for f in hom.elements)
