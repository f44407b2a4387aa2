import json

import pytest

from revcat.instances import FACTORIES, make_model
from revcat.laws import SUITES, LawReport, Sampler, run_all
from revcat.models import FinPInj


@pytest.mark.parametrize("name", sorted(FACTORIES))
def test_all_suites_pass(name):
    C = make_model(name)
    reports = run_all(C, seed=1, cases=200)
    assert [r.law for r in reports] == list(SUITES)
    for r in reports:
        assert r.ok, (r.law, r.to_json(C)["failures"][:3])


class BrokenRestriction(FinPInj):
    """Restriction forgets the last defined point."""

    name = "broken"

    def restriction(self, f):
        r = super().restriction(f)
        if len(r.graph) < 2:
            return r
        keep = sorted(r.graph, key=repr)[:-1]
        return type(r)(r.dom, r.cod, frozenset(keep))


class BrokenInverse(FinPInj):
    name = "broken-inverse"

    def inverse(self, f):
        g = super().inverse(f)
        return g if len(g.graph) != 1 else self.zero(g.dom, g.cod)


def test_broken_restriction_is_caught():
    reports = {r.law: r for r in run_all(BrokenRestriction(), seed=0, cases=300)}
    assert not reports["restriction"].ok


def test_broken_inverse_is_caught():
    reports = {r.law: r for r in run_all(BrokenInverse(), seed=0, cases=300)}
    assert not reports["inverse"].ok


def test_reports_are_deterministic_per_seed():
    C = make_model("pids-oplus")
    a = json.dumps([r.to_json(C) for r in run_all(C, seed=5, cases=100)], sort_keys=True)
    b = json.dumps([r.to_json(C) for r in run_all(C, seed=5, cases=100)], sort_keys=True)
    assert a == b


def test_sampler_is_exhaustive_on_table_instances():
    C = make_model("example513")
    S = Sampler(C, seed=0, cases=10)
    assert S.exhaustive
    assert sorted(S.morphisms()) == ["0", "f", "id"]


def test_report_status():
    rep = LawReport("x", "i")
    assert rep.status == "PASS"
    rep.precondition_unmet = "why"
    assert rep.status == "PRECONDITION UNMET"
    rep.check("e", (1,), 1, 2)
    assert rep.status == "FAIL (1)" and not rep.ok
