from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from revcat.category import NotEnumerable
from revcat.instances import make_model
from revcat.models import FinPInj, PIdSOplus, SubPIdSOplus, fset, pinj
from revcat.nondecomp import (
    Classifier, DecompClass, below_set, check_consistency, check_implication_chain,
    check_pattern_matching_property, classify, verify_theorem_bridge,
)
from revcat.tables import example56, example513, from_morphisms

ENUMERABLE = ["example56", "example513", "pids", "subpid"]


def test_example56_ground_truth():
    T = example56()
    got = {m: classify(T, m) for m in T.hom("abc", "abc")}
    assert got["id"] == DecompClass(snd=False, lnd=False, wnd=True)
    assert got["f"] == DecompClass(snd=False, lnd=False, wnd=False)
    for m in ("g", "h", "0"):
        assert got[m] == DecompClass(True, True, True)


def test_example513_ground_truth():
    T = example513()
    assert below_set(T, "id") == ["0", "f", "id"]
    k = classify(T, "id")
    assert k.lnd and not k.snd


def test_unit_identity_across_models():
    for C, expected in ((PIdSOplus("ab"), DecompClass(False, False, False)),
                        (SubPIdSOplus(), DecompClass(False, True, True)),
                        (FinPInj(), DecompClass(True, True, True))):
        one = C.unit_obj()
        assert Classifier(C, objects=[]).classify(C.identity(one)) == expected


def test_implication_chain_is_checked():
    with pytest.raises(AssertionError):
        DecompClass(snd=True, lnd=False, wnd=True)


@pytest.mark.parametrize("name", ENUMERABLE)
def test_implication_chain_everywhere(name):
    rep = check_implication_chain(make_model(name))
    assert rep.ok and rep.cases > 0


def test_weak_consistency_fails_on_example56():
    T = example56()
    rep = check_consistency(T, "weak")
    assert not rep.verdict
    assert rep.counterexample == {"h": "id", "f": "f", "composite": "f"}
    pm = check_pattern_matching_property(T, "weak")
    assert not pm.verdict
    assert pm.counterexample == {"f": "g", "g": "h", "h": "id", "composite": "f"}


@pytest.mark.parametrize("name", ENUMERABLE)
@pytest.mark.parametrize("flavor", ["linear", "strong"])
def test_linear_and_strong_consistency(name, flavor):
    assert check_consistency(make_model(name), flavor).verdict


@pytest.mark.parametrize("name", ENUMERABLE)
def test_theorem_bridge(name):
    assert verify_theorem_bridge(make_model(name)).ok


def test_unknown_flavor():
    with pytest.raises(ValueError):
        check_consistency(example56(), "medium")


def test_hom_cap_is_enforced():
    C = FinPInj()
    with pytest.raises(NotEnumerable):
        Classifier(C, objects=[], cap=10).hom(fset("abc"), fset("abc"))


# Independent oracle: on a lattice of partial identities, the order is
# inclusion of domains and joins are unions.


def oracle(family, h):
    below = [d for d in family if d <= h]
    snd = all(d in (frozenset(), h) for d in below)
    lnd = all(x <= y or y <= x for x, y in combinations(below, 2))
    splits = [(x, y) for x, y in product(below, repeat=2) if x | y == h]
    wnd = all(x <= y or y <= x for x, y in splits)
    return DecompClass(snd, lnd, wnd)


def close(family):
    out = {frozenset(), frozenset("abcd")} | set(family)
    while True:
        new = {x & y for x in out for y in out} | {x | y for x in out for y in out}
        if new <= out:
            return out
        out |= new


subsets = st.frozensets(st.sampled_from("abcd"))


@settings(max_examples=60, deadline=None)
@given(st.lists(subsets, max_size=4))
def test_classifier_matches_the_set_oracle(gens):
    family = sorted(close(gens), key=lambda s: (len(s), sorted(s)))
    obj = fset("abcd")
    names = {"".join(sorted(d)) or "0": pinj({x: x for x in d}, obj, obj) for d in family}
    T = from_morphisms("lattice", FinPInj(), {"o": obj}, names)
    clf = Classifier(T)
    for d in family:
        assert clf.classify("".join(sorted(d)) or "0") == oracle(family, d)
    for flavor in ("linear", "strong"):
        assert check_consistency(T, flavor, clf).verdict
