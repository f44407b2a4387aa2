import json
import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from revcat.category import (
    CategoryError, IncompatibleJoin, TypeMismatch, inverse_compatible, is_total, leq,
    restriction_compatible,
)
from revcat.models import FinPInj, PIdS, PIdSOplus, PartialInjection, SubPIdSOplus, fset, pinj

ABC = fset("abc")
C = FinPInj()


def pid(dom):
    return pinj({x: x for x in dom}, ABC, ABC)


def test_partial_injection_validates():
    with pytest.raises(CategoryError):
        pinj({"a": "x", "b": "x"})
    with pytest.raises(CategoryError):
        PartialInjection(fset("a"), fset("x"), fset([("a", "x"), ("a", "y")]))
    with pytest.raises(CategoryError):
        pinj({"a": "x"}, "b", "x")


def test_compatibility_worked_example():
    f, g = pid("ab"), pid("bc")
    h = pinj({"b": "a", "c": "c"}, ABC, ABC)
    assert inverse_compatible(C, f, g)
    assert not restriction_compatible(C, f, h)
    assert not inverse_compatible(C, f, h)


def test_join_worked_example():
    f, g = pid("ab"), pid("bc")
    one = C.identity(ABC)
    assert C.join([f, g]) == one
    assert leq(C, f, one) and leq(C, g, one)
    h = pinj({"a": "b"}, ABC, ABC)
    k = pinj({"b": "c"}, ABC, ABC)
    l = pinj({"a": "b", "b": "c", "c": "a"}, ABC, ABC)
    assert leq(C, h, l) and leq(C, k, l)
    hk = C.join([h, k])
    assert hk == pinj({"a": "b", "b": "c"}, ABC, ABC)
    assert leq(C, hk, l)


def test_incompatible_join_is_rejected():
    with pytest.raises(IncompatibleJoin):
        C.join([pid("ab"), pinj({"b": "a", "c": "c"}, ABC, ABC)])
    assert C.join([], ABC, ABC) == C.zero(ABC, ABC)


def test_composition_checks_types():
    with pytest.raises(TypeMismatch):
        C.compose(pinj({"a": "a"}, "a", "a"), pid("ab"))


def random_pinj(rng, a, b):
    return C.random_morphism(rng, fset(a), fset(b))


seeds = st.integers(0, 10**6)


@given(seeds)
def test_finpinj_composition_matches_dict_composition(seed):
    rng = random.Random(seed)
    f, g = random_pinj(rng, "abc", "abc"), random_pinj(rng, "abc", "abc")
    expected = {x: g.mapping[y] for x, y in f.mapping.items() if y in g.mapping}
    assert C.compose(g, f).mapping == expected


@given(seeds)
def test_finpinj_order_is_graph_inclusion(seed):
    rng = random.Random(seed)
    f, g = random_pinj(rng, "abc", "abc"), random_pinj(rng, "abc", "abc")
    assert leq(C, f, g) == (f.graph <= g.graph)
    assert leq(C, C.restriction(f), C.restriction(g)) == (f.domain <= g.domain)


@given(seeds)
def test_finpinj_json_round_trip(seed):
    rng = random.Random(seed)
    f = random_pinj(rng, "abc", "ab")
    data = C.to_json(f)
    assert json.loads(json.dumps(data)) == data
    assert C.from_json(data) == f


def test_pids_is_intersection():
    P = PIdS("abc")
    X, Y = P.morphism("ab"), P.morphism("bc")
    assert P.compose(X, Y) == P.morphism("b")
    assert P.identity(P.OBJECT) == P.morphism("abc")
    assert P.restriction(X) == X and P.inverse(X) == X
    assert leq(P, X, P.morphism("abc")) and not leq(P, X, Y)


def test_pids_embeds_in_finpinj():
    P = PIdS("abc")
    emb = lambda m: pid(m.subset)
    for X, Y in product(P.hom("*", "*"), repeat=2):
        assert emb(P.compose(X, Y)) == C.compose(emb(X), emb(Y))
        assert emb(P.join([X, Y])) == C.join([emb(X), emb(Y)])
        assert leq(P, X, Y) == leq(C, emb(X), emb(Y))
    assert all(emb(P.restriction(X)) == C.restriction(emb(X)) for X in P.hom("*", "*"))


def annotated_leq(f, g):
    """Pointwise characterization of the order on annotated partial injections."""
    tf, tg = f.table, g.table
    return all(x in tg and tg[x][0] == y and ann <= tg[x][1] for x, (y, ann) in tf.items())


def test_pids_oplus_order_characterization():
    P = PIdSOplus("ab")
    a = fset("xy")
    hom = P.hom(a, a)
    assert len(hom) == P.hom_size(a, a)
    for f, g in product(hom, repeat=2):
        assert leq(P, f, g) == annotated_leq(f, g)


def test_pids_oplus_composition_intersects_annotations():
    P = PIdSOplus("ab")
    f = P.morphism("xy", "xy", {"x": ("y", "a")})
    g = P.morphism("xy", "xy", {"y": ("x", "ab")})
    assert P.compose(g, f) == P.morphism("xy", "xy", {"x": ("x", "a")})
    # an empty annotation is still a defined point, not the zero morphism
    h = P.morphism("xy", "xy", {"y": ("x", "b")})
    assert P.compose(h, f) == P.morphism("xy", "xy", {"x": ("x", "")})
    assert P.compose(h, f) != P.zero(fset("xy"), fset("xy"))


def test_pids_oplus_join_needs_inverse_compatibility():
    P = PIdSOplus("ab")
    f = P.morphism("xy", "xy", {"x": ("x", "a")})
    g = P.morphism("xy", "xy", {"y": ("x", "b")})
    assert restriction_compatible(P, f, g)
    with pytest.raises(IncompatibleJoin):
        P.join([f, g])
    k = P.morphism("xy", "xy", {"x": ("x", "b")})
    assert P.join([f, k]) == P.morphism("xy", "xy", {"x": ("x", "ab")})


def test_pids_oplus_json_round_trip():
    P = PIdSOplus("ab")
    f = P.morphism("xy", "x", {"y": ("x", "")})
    assert P.from_json(P.to_json(f)) == f
    assert P.to_json(f)["ann"] == {"y": []}


def test_subpid_family_must_be_a_lattice():
    S = SubPIdSOplus()
    assert [sorted(x) for x in S.allowed] == [["a"], ["a", "b"], ["a", "b", "c"]]
    with pytest.raises(CategoryError):
        SubPIdSOplus(allowed=("a", "b", "abc"))
    with pytest.raises(CategoryError):
        SubPIdSOplus(allowed=("a", "ab"))


def test_subpid_is_closed_under_the_operations():
    S = SubPIdSOplus()
    one = S.unit_obj()
    hom = S.hom(one, one)
    assert len(hom) == 4
    for f, g in product(hom, repeat=2):
        assert S.contains(S.compose(g, f))
        assert S.contains(S.join([f, g]))


@settings(max_examples=50)
@given(seeds)
def test_structural_isos_are_total(seed):
    rng = random.Random(seed)
    for M in (FinPInj(), PIdSOplus("ab")):
        a, b, c = (M.random_object(rng) for _ in range(3))
        for name, iso in M.structural_isos(a, b, c):
            assert is_total(M, iso), name
            assert M.compose(M.inverse(iso), iso) == M.identity(M.dom(iso)), name


def test_parse_object():
    assert C.parse_object("[a; b]") == fset("ab")
    assert C.parse_object("1") == C.unit_obj()
    assert len(C.parse_object("unit + unit")) == 2
