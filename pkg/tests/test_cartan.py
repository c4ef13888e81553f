"""Cartan matrices: validation, type classification, subdiagram search."""

import pytest

from hfree.cartan import (GCM, GCMError, affine_catalog, affine_gcm,
                          cartan_context, classify_type, coroot_polynomial,
                          find_subdiagram, finite_catalog, finite_gcm)


def test_validation_rejects_bad_matrices():
    with pytest.raises(GCMError):
        GCM([[1]])                      # diagonal must be 2
    with pytest.raises(GCMError):
        GCM([[2, 1], [-1, 2]])          # positive off-diagonal
    with pytest.raises(GCMError):
        GCM([[2, 0], [-1, 2]])          # broken zero symmetry
    with pytest.raises(GCMError):
        GCM([[2, -1], [-1, 2], [0, 0]])  # not square
    with pytest.raises(GCMError):
        GCM([])


def test_finite_catalog_classifies_finite():
    for label, g in finite_catalog(8):
        t = classify_type(g)
        assert t.kind == "finite", label
        # B2 and C2 share a diagram up to relabeling; either name is fine
        assert t.label == label or {t.label, label} == {"B2", "C2"}


def test_affine_catalog_classifies_affine():
    for label, g in affine_catalog(9):
        t = classify_type(g)
        assert t.kind == "affine", label
        assert g.det() == 0, label


def test_indefinite_examples():
    assert classify_type(GCM([[2, -5], [-1, 2]])).kind == "indefinite"
    assert classify_type(GCM([[2, -2], [-3, 2]])).kind == "indefinite"


def test_rank2_grid_types():
    for r in range(1, 5):
        for s in range(1, 5):
            t = classify_type(GCM([[2, -r], [-s, 2]]))
            if r * s < 4:
                assert t.kind == "finite"
            elif r * s == 4:
                assert t.kind == "affine"
            else:
                assert t.kind == "indefinite"


def test_b2_c2_same_diagram():
    # the two rank-2 double-edge matrices are transposes of one another
    b2 = finite_gcm("B", 2)
    c2 = finite_gcm("C", 2)
    assert b2.a == tuple(zip(*c2.a))
    assert classify_type(b2).kind == "finite"


def test_determinant_values():
    # det A_l = l + 1, det C_l = 2
    for l in range(1, 6):
        assert finite_gcm("A", l).det() == l + 1
    for l in range(2, 6):
        assert finite_gcm("C", l).det() == 2
    assert finite_gcm("D", 4).det() == 4
    assert finite_gcm("G", 2).det() == 1


def test_find_subdiagram():
    b3 = finite_gcm("B", 3).diagram()
    d4 = finite_gcm("D", 4).diagram()
    assert find_subdiagram(finite_gcm("B", 5), b3) is not None
    assert find_subdiagram(finite_gcm("F", 4), b3) is not None
    assert find_subdiagram(finite_gcm("D", 6), d4) is not None
    assert find_subdiagram(finite_gcm("E", 6), d4) is not None
    assert find_subdiagram(finite_gcm("A", 8), b3) is None
    assert find_subdiagram(finite_gcm("A", 8), d4) is None
    assert find_subdiagram(finite_gcm("B", 3), d4) is None


def test_submatrix_and_connectivity():
    d4 = finite_gcm("D", 4)
    sub = d4.submatrix((0, 1, 2))
    assert sub.size == 3
    assert GCM([[2, -1], [-1, 2]]).indecomposable
    g = GCM([[2, 0], [0, 2]])
    assert not g.indecomposable


def test_coroot_polynomial():
    g = finite_gcm("A", 2)
    c = cartan_context(g)
    h1, h2 = c.var("H_1"), c.var("H_2")
    assert coroot_polynomial(g, c, 0) == 2 * h1 - h2
    assert coroot_polynomial(g, c, 1) == -h1 + 2 * h2


def test_json_round_trip():
    g = finite_gcm("C", 3)
    assert GCM.from_json(g.to_json()) == g
    with pytest.raises(GCMError):
        GCM.from_json({"rows": [[2]]})


def test_classify_type_requires_indecomposable():
    with pytest.raises(GCMError):
        classify_type(GCM([[2, 0], [0, 2]]))
