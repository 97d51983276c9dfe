import json

import pytest

from tiletransport.casebook import (
    ObstructionWitness,
    chair_case,
    chair_h2_table,
    collar_radius,
    fibonacci_case,
    run_case,
    strong_pe_obstruction,
)
from tiletransport.cochain import integrate
from tiletransport.geometry import CHAIR, chair_partial_region, collar_signature, supertile
from tiletransport.scalar import PHI, Scalar, fib


def test_fibonacci_case_cochains():
    case = fibonacci_case()
    f1, f2 = case.cochains["f1"], case.cochains["f2"]
    assert (f1.label_value("a"), f1.label_value("b")) == (1, 0)
    assert (f2.label_value("a"), f2.label_value("b")) == (0, PHI)
    assert case.expected[("f1", "f2")] == {"bounded": True, "weakly_pe": True, "strongly_pe": False}


@pytest.mark.parametrize("m", range(1, 11))
def test_fibonacci_density_check(m):
    case = fibonacci_case()
    d = integrate(case.cochains["f1"] - case.cochains["f2"], supertile("fibonacci", "a", m))
    assert d == Scalar(fib(m + 1), -fib(m))
    assert abs(d) == PHI ** (-m)


def test_chair_case_cochains():
    c = chair_case().cochains
    assert c["f1"].label_value("NE") == 2 and c["f1"].label_value("SW") == 0
    assert c["f2"].label_value("NE") == 1 and c["f2"].label_value("SW") == 1
    assert c["f3"].label_value("NW") == 1 and c["f3"].label_value("SE") == 1
    for lab in CHAIR.labels:
        assert integrate(c["f2"] - c["f3"], supertile("chair", lab, 1)) == 0
    for n in range(1, 8):
        assert integrate(c["f1"] - c["f2"], chair_partial_region(n)) == (n - 1) * 2 ** n + 1


@pytest.mark.parametrize("k", range(0, 6))
def test_obstruction_witness_valid(k):
    R = collar_radius(k)
    w = strong_pe_obstruction(R)
    assert w.is_valid()
    assert w.int_f1.is_integer() and w.int_f1 > 0
    assert w.int_f2.is_integer_multiple_of_phi() and w.int_f2 > 0
    assert w.int_f1 != w.int_f2
    # the two vertices really have equal neighbourhoods
    p = supertile("fibonacci", "a", 10)
    assert collar_signature(p, ("face", w.v1), R).items == collar_signature(p, ("face", w.v2), R).items
    # and the integrals are the tile sums between them
    between = [t for t in p.tiles if w.v1 <= t.t < w.v2]
    assert w.int_f1 == sum(1 for t in between if t.label == "a")
    assert w.int_f2 == PHI * sum(1 for t in between if t.label == "b")


def test_obstruction_radius_zero_is_first_pair():
    w = strong_pe_obstruction(0)
    # first a-tile left endpoint with a later matching vertex beyond one b tile
    assert (w.v1, w.v2) == (PHI, Scalar(1, 3))


def test_obstruction_search_exhausted():
    with pytest.raises(LookupError):
        strong_pe_obstruction(PHI ** 5, level=5)


def test_z_and_phi_z_disjoint():
    for a in range(-20, 21):
        for b in range(-20, 21):
            if a or b:
                assert Scalar(a) != Scalar(0, b)


def test_h2_table():
    rows = chair_h2_table(5)
    assert rows[0][:4] == (0, 1, 1, 1)
    for m, count, d1, d2, triv in rows:
        assert count == 4 ** m
        assert d1 == 2 ** m and d2 == 2 ** m
        if m >= 1:
            assert triv == 0
    assert rows[3][1] == 64 and rows[3][2] == 8


def test_h2_table_rejects_negative():
    with pytest.raises(ValueError):
        chair_h2_table(-1)


def test_witness_serialization():
    w = ObstructionWitness(Scalar(0), Scalar(1), Scalar(2), Scalar(1), Scalar(0, 1))
    assert w.to_dict()["int_f2"] == "0+1φ"


def test_fibonacci_report():
    rep = run_case("fibonacci")
    assert rep.all_match
    props = {v.prop: v.observed for v in rep.verdicts}
    assert props == {"bounded": True, "weakly_pe": True, "strongly_pe": False}
    data = json.loads(rep.to_json())
    assert data["all_match"] is True
    assert "all verdicts match: yes" in rep.to_text()


def test_chair_report():
    rep = run_case("chair")
    assert rep.all_match, rep.to_text()
    obs = {(v.pair, v.prop): v.observed for v in rep.verdicts}
    assert obs[(("f2", "f3"), "strongly_pe")] is True
    assert obs[(("f1", "f2"), "bounded")] is False
    assert rep.numbers["R_n_integral"][:3] == ["1", "5", "17"]


def test_unknown_case():
    with pytest.raises(ValueError):
        run_case("penrose")
