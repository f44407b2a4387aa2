from revcat.denotation import default_env
from revcat.models import FinPInj, PIdSOplus, SubPIdSOplus
from revcat.soundness import (
    check_adequacy, check_orthogonality_lemma, check_soundness, check_value_nondecomposability,
    generated_samples, small_types,
)


def test_soundness_on_a_small_sample():
    samples = generated_samples(seed=4, n=60)
    for C in (FinPInj(), SubPIdSOplus()):
        sound, subst = check_soundness(C, samples)
        assert sound.ok and subst.ok
        assert sound.cases > 0 and subst.cases > 0


def test_orthogonality_lemma_on_small_types():
    C = FinPInj()
    rep = check_orthogonality_lemma(default_env(C), small_types(max_values=4))
    assert rep.ok and rep.cases > 0


def test_adequacy_small():
    res = check_adequacy(SubPIdSOplus(), max_size=5)
    assert res.report.ok
    assert res.strict_deviations == res.stuck_pairs


def test_value_nondecomposability():
    assert check_value_nondecomposability(SubPIdSOplus()).ok
    rep = check_value_nondecomposability(PIdSOplus("ab"))
    assert rep.precondition_unmet and rep.status == "PRECONDITION UNMET"
