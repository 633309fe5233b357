import math
import os
import pathlib

import pytest

import pcfg

FIXTURES = pathlib.Path(
    os.environ.get("PCFG_FIXTURE_DIR", pathlib.Path(__file__).resolve().parents[1] / "fixtures")
)


@pytest.fixture(scope="module")
def employees():
    return pcfg.Model.load(str(FIXTURES / "employees.pcfg"))


def test_model_introspection(employees):
    assert employees.domains["E"] == ["alice", "bob", "dave", "eve"]
    assert "Train(E,T)" in employees.prvs
    assert employees.parfactors == ["g1", "g2", "g3", "g4"]
    assert employees.validate(check_normalization=True) == []
    assert employees.ground_size() == (15, 22)


def test_engines_agree(employees):
    q = "P(Rev | Comp(alice)=high; do(Train(bob,t1)=true))"
    results = [pcfg.query(employees, q, engine=e)["probs"] for e in ("lci", "ve", "oracle")]
    for probs in results:
        assert math.isclose(sum(probs), 1.0, rel_tol=1e-12)
        for a, b in zip(probs, results[0]):
            assert abs(a - b) < 1e-9


def test_lci_reports_splits(employees):
    r = pcfg.lci(employees, "P(Rev | do(Train(bob,t1)=true))", audit=True)
    assert sorted(s["parfactor"] for s in r["splits"]) == ["g2", "g3"]
    assert all(s["outside"] == 7 and s["inside"] == 1 for s in r["splits"])
    assert r["stats"]["max_table_size"] > 0
    dist = pcfg.distribution(r)
    assert set(dist) == {("low",), ("medium",), ("high",)}


def test_dsep(employees):
    assert not pcfg.d_separated(employees, "Qual(t1) ; Comp(bob) | Train(bob,t1)")
    closed = "Qual(t1) ; Comp(bob) | Train(bob,t1), Comp(alice), Comp(dave), Comp(eve)"
    assert pcfg.d_separated(employees, closed)
    assert pcfg.check_ci(employees, closed)["holds"]


def test_errors(employees):
    with pytest.raises(pcfg.ParseError):
        pcfg.query(employees, "P(Nope)")
    with pytest.raises(pcfg.ParseError):
        pcfg.Model.parse("domain E = {")
    with pytest.raises(pcfg.Error):
        pcfg.query(employees, "P(Rev)", engine="magic")


def test_round_trip(employees):
    text = employees.to_text()
    assert pcfg.Model.parse(text).to_text() == text


def test_template_and_bench():
    text = (FIXTURES / "bench_template.pcfg").read_text()
    m = pcfg.Model.parse(text, size=5)
    assert len(m.domains["E"]) == 5
    r = pcfg.bench(text, sizes="4,8", repeats=1)
    assert r["mismatches"] == []
    assert len(r["records"]) == 6
    assert r["csv"].startswith("engine,d,query,seconds,checksum\n")


def test_random_model():
    m, q = pcfg.random_model(7)
    a = pcfg.query(m, q)["probs"]
    b = pcfg.query(m, q, engine="oracle")["probs"]
    assert max(abs(x - y) for x, y in zip(a, b)) < 1e-9
