"""Presentations read off a model and their evaluation on Lie elements."""

import pytest

from jumploci.holonomy import (HolonomyError, HolonomyPresentation, Relation,
                               build_counterexample_rho, correspondence_check,
                               evaluate_relation, holonomy_presentation,
                               relation_check, relation_check_mask,
                               surface_presentations)
from jumploci.liealg import build_sl
from jumploci.linalg import Matrix
from jumploci.models import (build_compact_curve, build_surface_model,
                             build_torus_model)
from jumploci.scalars import GF, QQ


def test_torus_presentation():
    pres = holonomy_presentation(build_torus_model(QQ, 2))
    assert pres.generators == ["e1", "e2"]
    assert len(pres.relations) == 1
    r = pres.relations[0]
    assert r.lin == {} and r.cubic == {}
    assert r.quad == {(0, 1): QQ.one}
    assert "[e1,e2]" in pres.describe()


def test_compact_curve_presentation():
    pres = holonomy_presentation(build_compact_curve(QQ, 2))
    assert pres.generators == ["a1", "b1", "a2", "b2"]
    (r,) = pres.relations
    assert r.quad == {(0, 1): QQ.one, (2, 3): QQ.one} and not r.lin


def test_surface_model_presentation_raw():
    pres = holonomy_presentation(build_surface_model(QQ, 1))
    assert pres.generators == ["a1", "b1", "t"]
    assert len(pres.relations) == 3
    first = pres.relations[0]
    assert first.lin == {2: QQ.one}
    assert first.quad == {(0, 1): QQ.one}
    assert pres.relations[1].quad == {(0, 2): QQ.one}
    assert pres.relations[2].quad == {(1, 2): QQ.one}


def test_surface_presentations_pair():
    p_h, p_a = surface_presentations(QQ, 2)
    assert p_h.generators == p_a.generators == ["a1", "b1", "a2", "b2"]
    (r,) = p_h.relations
    assert r.quad == {(0, 1): QQ.one, (2, 3): QQ.one}
    assert r.is_quadratic()
    assert len(p_a.relations) == 4
    for k, rel in enumerate(p_a.relations):
        assert not rel.is_quadratic()
        assert rel.cubic == {(k, 0, 1): QQ.one, (k, 2, 3): QQ.one}
        assert not rel.lin and not rel.quad


def test_relation_normalization():
    # flipped quadratic keys pick up a sign and can cancel
    r = Relation(quad={(1, 0): 1, (0, 1): 1}).normalized(QQ)
    assert r.quad == {}
    r = Relation(quad={(1, 0): 1}).normalized(QQ)
    assert r.quad == {(0, 1): QQ.coerce(-1)}
    r = Relation(cubic={(0, 2, 1): 1}).normalized(QQ)
    assert r.cubic == {(0, 1, 2): QQ.coerce(-1)}


def test_evaluate_relation_hand_case():
    g = build_sl(QQ, 2)
    rows = [g.basis_vector("E12"), g.basis_vector("E21")]
    rel = Relation(lin={0: QQ.one}, quad={(0, 1): QQ.coerce(2)})
    # E + 2 [E, F] = E + 2 H
    assert evaluate_relation(rel, g, rows) == [QQ.one, QQ.zero, QQ.coerce(2)]


def test_relation_check():
    p_h, _ = surface_presentations(QQ, 1)
    g = build_sl(QQ, 2)
    assert relation_check(p_h, g, Matrix(QQ, [[1, 0, 0], [2, 0, 0]]))
    assert not relation_check(p_h, g, Matrix(QQ, [[1, 0, 0], [0, 1, 0]]))
    with pytest.raises(HolonomyError):
        relation_check(p_h, g, Matrix(QQ, [[1, 0, 0]]))


def test_presentation_rejects_bad_indices():
    with pytest.raises(HolonomyError):
        HolonomyPresentation(QQ, ["x"], [Relation(lin={3: 1})])


def test_counterexample_rho():
    assignment, rho_r, lie = build_counterexample_rho(QQ, 3, 2)
    assert rho_r == lie.basis_vector("E13")
    p_h, p_a = surface_presentations(QQ, 2)
    # kills every eliminated relation but not the compact-curve relation
    assert relation_check(p_a, lie, assignment)
    assert not relation_check(p_h, lie, assignment)
    with pytest.raises(HolonomyError):
        build_counterexample_rho(QQ, 2, 1)


def test_correspondence_on_samples():
    a = build_compact_curve(GF(3), 1)
    g = build_sl(GF(3), 2)
    for rows in ([[0, 0, 0], [0, 0, 0]], [[1, 0, 0], [2, 0, 0]],
                 [[1, 0, 0], [0, 1, 0]], [[0, 0, 1], [0, 0, 2]]):
        rel_ok, flat_ok, agree = correspondence_check(
            a, g, Matrix(GF(3), rows))
        assert agree and rel_ok == flat_ok


def test_mask_matches_direct_loop():
    f3 = GF(3)
    a = build_compact_curve(f3, 1)
    g = build_sl(f3, 2)
    pres = holonomy_presentation(a)
    count = 200
    mask = relation_check_mask(pres, g, count)
    assert mask.shape == (count,)
    kdim = 2 * g.dim
    for v in range(count):
        digits = []
        rem = v
        for t in range(kdim):
            digits.append(rem // 3 ** (kdim - 1 - t))
            rem %= 3 ** (kdim - 1 - t)
        rows = [digits[:3], digits[3:]]
        direct = relation_check(pres, g, Matrix(f3, rows))
        assert bool(mask[v]) == direct


def test_mask_needs_prime_field():
    pres = holonomy_presentation(build_compact_curve(QQ, 1))
    with pytest.raises(HolonomyError):
        relation_check_mask(pres, build_sl(QQ, 2), 10)
