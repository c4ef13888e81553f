"""Classification: existence verdicts, rank-2 search, restrictions."""

from fractions import Fraction

import pytest

from hfree.cartan import GCM, affine_catalog, finite_catalog, finite_gcm
from hfree.classify import (CYCLE3_CASES, RestrictionError, decide,
                            degree_signatures, refute_affine_loop,
                            restriction_obstruction, search_rank2,
                            star_obstruction)
from hfree.verify import relation_residuals


def test_decide_finite_catalog():
    for label, g in finite_catalog(8):
        res = decide(g)
        series = label[0]
        if series == "A" or series == "C" or label == "B2":
            assert res.verdict == "Nonempty", label
            assert res.family in ("A", "C")
        else:
            assert res.verdict == "Empty", label
            assert res.evidence


def test_decide_affine_catalog():
    for label, g in affine_catalog(5):
        res = decide(g)
        assert res.verdict == "Empty", label
        assert res.evidence[0]["rule"] == "affine", label


def test_decide_rank2_grid():
    for r in range(1, 5):
        for s in range(1, 5):
            res = decide(GCM([[2, -r], [-s, 2]]))
            want = "Nonempty" if r * s <= 2 else "Empty"
            assert res.verdict == want, (r, s)


def test_decide_requires_indecomposable():
    with pytest.raises(ValueError):
        decide(GCM([[2, 0], [0, 2]]))


def test_decide_evidence_rules():
    assert decide(finite_gcm("B", 3)).evidence[0]["rule"] == "b3-subdiagram"
    assert decide(finite_gcm("D", 4)).evidence[0]["rule"] == "d4-subdiagram"
    assert decide(finite_gcm("E", 6)).evidence[0]["rule"] == "d4-subdiagram"
    assert decide(finite_gcm("F", 4)).evidence[0]["rule"] == "b3-subdiagram"
    assert decide(finite_gcm("G", 2)).evidence[0]["rule"] == "rank2"


def test_search_rank2_grid():
    for r in range(1, 5):
        for s in range(1, 5):
            res = search_rank2(r, s)
            want = "SatKnownFamily" if r * s <= 2 else "Unsat"
            assert res.verdict == want, (r, s)
            if res.verdict == "SatKnownFamily":
                assert relation_residuals(res.module).holds


def test_search_rank2_witness_values():
    res = search_rank2(1, 2)
    found = False
    for case in res.witnesses.values():
        b, c = case.get("b"), case.get("c")
        if b is None or c is None:
            continue
        if b.render() == "3/16" and c.render() == "H_1^2 - 1/4":
            found = True
    assert found


def test_search_rank2_validation():
    with pytest.raises(ValueError):
        search_rank2(0, 1)
    with pytest.raises(ValueError):
        search_rank2(1, 1, bound=1)


def test_refute_affine_loop():
    assert refute_affine_loop(1, 2, 2) == "Unsat"
    for args in ((1, 1, 2), (1, -1, 2), (0, 2, 2), (1, 2, 1)):
        with pytest.raises(ValueError):
            refute_affine_loop(*args)


def test_degree_signatures_b3():
    b3 = finite_gcm("B", 3)
    assert degree_signatures(b3, 3, 2, 1).pairs == {(0, 1), (1, 0)}
    assert degree_signatures(b3, 1, 2, 1).pairs == {(0, 2), (2, 0)}


def test_degree_signatures_d4():
    d4 = finite_gcm("D", 4)
    assert degree_signatures(d4, 4, 1, 3).pairs == {(0, 0)}
    assert degree_signatures(d4, 4, 3, 1).pairs == {(0, 0)}


def test_degree_signatures_refuses_ambiguous_variable():
    b3 = finite_gcm("B", 3)
    with pytest.raises(RestrictionError):
        degree_signatures(b3, 3, 2, 3)   # degree in the removed variable


def test_degree_signatures_validation():
    b3 = finite_gcm("B", 3)
    with pytest.raises(RestrictionError):
        degree_signatures(b3, 3, 3, 1)   # generator does not survive
    with pytest.raises(RestrictionError):
        degree_signatures(b3, 9, 1, 1)


def test_obstruction_b3():
    b3 = finite_gcm("B", 3)
    res = restriction_obstruction(b3, 2, 1, (3, 1))
    assert res.status == "Obstructed"
    assert res.intersection == set()


def test_obstruction_cycle_cases():
    for g, gen, var, pair in CYCLE3_CASES:
        res = restriction_obstruction(g, gen, var, pair)
        assert res.status == "Obstructed", (g.a, gen, var, pair)


def test_compatible_c3_unifier():
    c3 = finite_gcm("C", 3)
    res = restriction_obstruction(c3, 2, 1, (1, 3))
    assert res.status == "Compatible"
    ctx = res.unifier.context
    expected = -Fraction(2, 3) * ctx.var("H_3") - Fraction(1, 2)
    assert res.unifier == expected


def test_star_obstruction_d4():
    d4 = finite_gcm("D", 4)
    assert star_obstruction(d4, 2, (1, 3, 4)) == "Obstructed"
