"""Fox calculus and twisted cohomology of presentation complexes."""

import pytest

from jumploci.grouprep import (FpGroup, GroupError, GroupRep, adjoint_rep,
                               cv_membership, d0_matrix, d1_matrix,
                               fixed_vector, fox_derivative, free_group,
                               free_reduce, parse_word, rep_check,
                               surface_group, tangent_dimension_rep,
                               twisted_cohomology)
from jumploci.linalg import Matrix
from jumploci.scalars import GF, QQ


def shear_pair(f):
    return (Matrix(f, [[1, 1], [0, 1]]), Matrix(f, [[1, 0], [1, 1]]))


def test_parse_word_and_reduce():
    assert parse_word(["a", "b"], "a b a^-1 b^-1") == (1, 2, -1, -2)
    assert parse_word(["a", "b"], "a a^-1") == ()
    assert free_reduce((1, -1, 2)) == (2,)
    assert free_reduce((1, 2, -2, -1)) == ()
    with pytest.raises(GroupError):
        parse_word(["a"], "c")


def test_group_builders():
    f2 = free_group(2)
    assert f2.generators == ["x1", "x2"]
    assert f2.relators == [] and f2.aspherical
    assert f2.euler_characteristic() == -1
    assert free_group(3).euler_characteristic() == -2

    s2 = surface_group(2)
    assert s2.generators == ["a1", "b1", "a2", "b2"]
    assert s2.relators == [(1, 2, -1, -2, 3, 4, -3, -4)]
    assert s2.euler_characteristic() == -2

    with pytest.raises(GroupError):
        FpGroup(["a", "a"], [])
    with pytest.raises(GroupError):
        FpGroup(["a"], [(2,)])


def test_fox_derivative_hand_cases():
    # [DERIVED by hand] with scalar values rho(a) = 2, rho(b) = 3:
    #   d(a b a^-1 b^-1)/da = 1 - a b a^-1         -> 1 - 3 = -2
    #   d(a b a^-1 b^-1)/db = a - a b a^-1 b^-1    -> 2 - 1 = 1
    #   d(a a)/da          = 1 + a                 -> 3
    g = free_group(2)
    rep = GroupRep(g, "GL", [Matrix(QQ, [[2]]), Matrix(QQ, [[3]])])
    w = g.word("x1 x2 x1^-1 x2^-1")
    assert fox_derivative(rep, w, 0) == Matrix(QQ, [[-2]])
    assert fox_derivative(rep, w, 1) == Matrix(QQ, [[1]])
    assert fox_derivative(rep, g.word("x1 x1"), 0) == Matrix(QQ, [[3]])


def test_rep_constructor_targets():
    f2 = free_group(2)
    with pytest.raises(GroupError):  # det 2 is not allowed in SL
        GroupRep(f2, "SL", [Matrix(QQ, [[2]]), Matrix(QQ, [[1]])])
    with pytest.raises(GroupError):  # lower-triangular entry
        GroupRep(f2, "Borel", [Matrix(QQ, [[1, 0], [1, 1]])] * 2)
    with pytest.raises(GroupError):  # Borel is a 2x2 target
        GroupRep(f2, "Borel", [Matrix.identity(QQ, 3)] * 2)
    with pytest.raises(GroupError):  # singular matrix
        GroupRep(f2, "GL", [Matrix(QQ, [[0]]), Matrix(QQ, [[1]])])
    with pytest.raises(GroupError):
        GroupRep(f2, "Frobenius", [Matrix(QQ, [[1]])] * 2)


def test_rep_check_and_evaluate():
    s1 = surface_group(1)
    a, b = shear_pair(QQ)
    bad = GroupRep(s1, "SL", [a, b])  # shears do not commute
    ok, failing = rep_check(bad)
    assert not ok and failing == [0]
    commuting = GroupRep(s1, "SL",
                         [Matrix(QQ, [[1, 1], [0, 1]]),
                          Matrix(QQ, [[1, 2], [0, 1]])])
    assert rep_check(commuting) == (True, [])
    w = s1.word("a1 b1 a1^-1 b1^-1")
    assert commuting.evaluate(w) == Matrix.identity(QQ, 2)


def test_free_group_cohomology():
    f2 = free_group(2)
    # scalar local system rho = (2, 1): d0 has rank 1
    rep = GroupRep(f2, "GL", [Matrix(QQ, [[2]]), Matrix(QQ, [[1]])])
    assert twisted_cohomology(rep).as_tuple() == (0, 1, 0)
    # irreducible SL2 pair: no invariants at all
    rep = GroupRep(f2, "SL", list(shear_pair(QQ)))
    assert twisted_cohomology(rep).as_tuple() == (0, 2, 0)
    assert twisted_cohomology(rep).euler() == \
        f2.euler_characteristic() * 2


def test_surface_group_classical_betti():
    s1 = surface_group(1)
    rep = GroupRep(s1, "SL", [Matrix.identity(QQ, 1)] * 2)
    assert twisted_cohomology(rep).as_tuple() == (1, 2, 1)
    s2 = surface_group(2)
    rep = GroupRep(s2, "SL", [Matrix.identity(QQ, 2)] * 4)
    assert twisted_cohomology(rep).as_tuple() == (2, 8, 2)
    assert twisted_cohomology(rep).euler() == -4


def test_twisted_cohomology_requires_satisfied_relators():
    s1 = surface_group(1)
    rep = GroupRep(s1, "SL", list(shear_pair(QQ)))
    with pytest.raises(GroupError):
        twisted_cohomology(rep)
    with pytest.raises(GroupError):
        tangent_dimension_rep(rep)


def test_borel_adjoint_matrix():
    # [DERIVED by hand] Ad([[1,1],[0,1]]) on (diag(1,-1), upper unit)
    # sends h to h - 2e and fixes e.
    f2 = free_group(1)
    rep = GroupRep(f2, "Borel", [Matrix(QQ, [[1, 1], [0, 1]])])
    ad = adjoint_rep(rep)
    assert ad.matrices[0] == Matrix(QQ, [[1, 0], [-2, 1]])
    assert ad.target == "GL" and ad.dim == 2


def test_adjoint_needs_sl_or_borel():
    f1 = free_group(1)
    rep = GroupRep(f1, "GL", [Matrix(QQ, [[2]])])
    with pytest.raises(GroupError):
        adjoint_rep(rep)


def test_adjoint_cohomology_torus():
    s1 = surface_group(1)
    rep = GroupRep(s1, "SL",
                   [Matrix(QQ, [[1, 1], [0, 1]]),
                    Matrix(QQ, [[1, 2], [0, 1]])])
    b = twisted_cohomology(rep, twist="adjoint")
    # only the upper-unit line commutes with both unipotents
    assert b.b0 == 1
    assert b.euler() == 0


def test_tangent_at_trivial_torus_rep():
    s1 = surface_group(1)
    rep = GroupRep(s1, "SL", [Matrix.identity(QQ, 2)] * 2)
    report = tangent_dimension_rep(rep)
    # adjoint twist is trivial of rank 3: Z^1 = 6, B^1 = 0
    assert report.as_tuple() == (6, 0, 6)


def test_cv_membership():
    f2 = free_group(2)
    rep = GroupRep(f2, "GL", [Matrix(QQ, [[2]]), Matrix(QQ, [[1]])])
    assert cv_membership(rep, 1, 1)
    assert not cv_membership(rep, 1, 2)
    assert not cv_membership(rep, 0, 1)
    assert not cv_membership(rep, 2, 1)  # free groups are aspherical
    with pytest.raises(GroupError):
        cv_membership(rep, 3, 1)
    with pytest.raises(GroupError):
        cv_membership(rep, 1, 0)
    opaque = FpGroup(["a"], [], aspherical=False)
    rep2 = GroupRep(opaque, "GL", [Matrix(QQ, [[2]])])
    with pytest.raises(GroupError):
        cv_membership(rep2, 2, 1)


def test_fixed_vector():
    f2 = free_group(2)
    exists, v = fixed_vector(GroupRep(f2, "SL", [Matrix.identity(QQ, 2)] * 2))
    assert exists and any(not QQ.is_zero(x) for x in v)
    exists, v = fixed_vector(GroupRep(f2, "SL", list(shear_pair(QQ))))
    assert not exists and v is None


def test_fox_identity_over_prime_field():
    s2 = surface_group(2)
    a, b = shear_pair(GF(5))
    rep = GroupRep(s2, "SL", [a, b, b, a])
    assert rep_check(rep)[0]
    d0, d1 = d0_matrix(rep), d1_matrix(rep)
    assert (d1 @ d0).is_zero()
    assert twisted_cohomology(rep).euler() == \
        s2.euler_characteristic() * 2
