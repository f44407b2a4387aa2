import pytest
from hypothesis import given, strategies as st

from revcat.evaluate import enumerate_closed_values, match_value
from revcat.generate import all_patterns
from revcat.syntax import App, Const, EnumRef, InjL, InjR, Iso, Pair, Prod, Sum, Val, Var
from revcat.typecheck import (
    TypeCheckError, check_iso, check_orthogonal, check_term, check_value, infer_pattern_context,
)

TT = Const("unit", 0, "tt")
U = EnumRef("unit")
UU = Sum(U, U)
x, y, z, w = (Var(n) for n in "xyzw")
SWAP = Iso(((InjL(x), InjR(x)), (InjR(x), InjL(x))))


def kind_of(f, *args):
    with pytest.raises(TypeCheckError) as e:
        f(*args)
    return e.value.kind


def test_infer_pattern_context():
    assert infer_pattern_context(Pair(x, y), Prod(U, UU)) == {"x": U, "y": UU}
    assert infer_pattern_context(InjL(x), UU) == {"x": U}
    assert kind_of(infer_pattern_context, Pair(x, x), Prod(U, U)) == "DuplicateVar"


def test_check_value():
    check_value({"x": U}, InjR(x), UU)
    assert kind_of(check_value, {"x": U}, TT, U) == "ContextMismatch"
    assert kind_of(check_value, {}, x, U) == "UnboundVar"


def test_check_orthogonal_examples():
    assert check_orthogonal(InjL(x), InjR(y))
    assert not check_orthogonal(x, y)
    assert check_orthogonal(Pair(z, InjL(x)), Pair(w, InjR(y)))


def test_check_iso_examples():
    check_iso(SWAP, UU, UU)
    check_iso(Iso(((InjL(x), x),)), UU, U)
    with pytest.raises(TypeCheckError) as e:
        check_iso(Iso(((InjL(x), TT), (InjL(y), TT))), UU, U)
    assert e.value.kind == "OverlappingPatterns"
    assert set(e.value.overlaps) == {(0, 1, "left"), (0, 1, "right")}
    assert (e.value.i, e.value.j, e.value.side) == (0, 1, "left")


def test_check_term_examples():
    check_term(App(SWAP, Val(InjL(TT))), UU)
    assert kind_of(check_term, Val(x), U) == "NonClosedTerm"
    assert kind_of(check_term, App(SWAP, Val(TT)), UU) == "ShapeMismatch"


def test_iso_sides_share_the_clause_context():
    # the right side must consume exactly the variables bound on the left
    assert kind_of(check_iso, Iso(((Pair(x, y), x),)), Prod(U, U), U) == "ContextMismatch"


TYPES = [UU, Prod(UU, UU), Sum(UU, Prod(U, UU)), Prod(Sum(U, UU), UU)]


@given(st.sampled_from(TYPES), st.data())
def test_orthogonality_is_symmetric_and_sound(a, data):
    pats = all_patterns(a)
    p = data.draw(st.sampled_from(pats))
    q = data.draw(st.sampled_from(pats))
    assert check_orthogonal(p, q) == check_orthogonal(q, p)
    if check_orthogonal(p, q):
        for v in enumerate_closed_values(a):
            assert match_value(p, v) is None or match_value(q, v) is None


@given(st.sampled_from(TYPES), st.data())
def test_inferred_context_is_unique(a, data):
    p = data.draw(st.sampled_from(all_patterns(a)))
    ctx = infer_pattern_context(p, a)
    check_value(ctx, p, a)
    assert infer_pattern_context(p, a) == ctx
