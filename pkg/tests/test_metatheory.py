from revcat.metatheory import check_generated, check_metatheory
from revcat.syntax import parse_program


def test_generated_programs_satisfy_the_metatheory():
    rep = check_generated(seed=2, n=100)
    assert rep.ok and rep.cases > 100


def test_overlapping_clauses_are_reported():
    # never typechecked: two clauses match inl tt
    p = parse_program("""
        iso bad : unit + unit <-> unit + unit { | inl x <-> inl x | x <-> x }
        main = tt
    """)
    rep = check_metatheory([p])
    assert {f.equation for f in rep.failures} >= {"at most one clause matches",
                                                  "inverse is well typed at the flipped type"}
