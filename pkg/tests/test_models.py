"""Betti numbers of the builder models against independently known values.

All expected tuples below come from classical closed forms, not from this
code: binomial coefficients for the torus, (1, 2g, 1) for a genus-g surface
algebra, and the factored Poincare polynomial (1+t)(1+(n-1)t) for a
rank-two arrangement.
"""

import pytest

from jumploci.cdga import CdgaError
from jumploci.models import (build_compact_curve, build_open_curve,
                             build_os_arrangement, build_surface_model,
                             build_torus_model, curve_inclusion,
                             pencil_normals)
from jumploci.scalars import GF, QQ


@pytest.mark.parametrize("n, want", [
    (1, (1, 1)),
    (2, (1, 2, 1)),
    (3, (1, 3, 3, 1)),   # binomial(3, i)
])
def test_torus_betti(n, want):
    a = build_torus_model(QQ, n)
    assert tuple(a.betti(i) for i in range(a.top_degree + 1)) == want


def test_torus_truncation():
    a = build_torus_model(QQ, 3, top=2)
    assert a.dims() == (1, 3, 3)
    assert a.validate() == []


@pytest.mark.parametrize("g", [1, 2, 3])
def test_compact_curve_betti(g):
    a = build_compact_curve(QQ, g)
    assert tuple(a.betti(i) for i in range(3)) == (1, 2 * g, 1)
    assert a.euler_characteristic() == 2 - 2 * g


@pytest.mark.parametrize("n", [2, 3])
def test_open_curve_betti(n):
    a = build_open_curve(QQ, n)
    assert tuple(a.betti(i) for i in range(a.top_degree + 1)) == (1, n, 0)


@pytest.mark.parametrize("g", [1, 2])
def test_surface_model_shape(g):
    a = build_surface_model(QQ, g)
    assert a.dims() == (1, 2 * g + 1, 2 * g + 1, 1)
    assert tuple(a.betti(i) for i in range(4)) == (1, 2 * g, 2 * g, 1)
    # the extra generator carries weight 2, all others weight 1
    assert a.weight(1, a.dim(1) - 1) == 2


@pytest.mark.parametrize("m", [3, 4, 5])
def test_pencil_betti(m):
    # rank-two pencil: Poincare polynomial (1+t)(1+(m-1)t)
    a = build_os_arrangement(QQ, pencil_normals(m))
    assert tuple(a.betti(i) for i in range(3)) == (1, m, m - 1)
    assert a.validate() == []


def test_braid_arrangement_betti():
    # A3 braid arrangement: (1+t)(1+2t) = 1 + 3t + 2t^2
    normals = [[1, -1, 0], [1, 0, -1], [0, 1, -1]]
    a = build_os_arrangement(QQ, normals)
    assert tuple(a.betti(i) for i in range(3)) == (1, 3, 2)
    assert a.validate() == []


def test_arrangement_relations_from_circuits():
    # in a pencil of 3 lines: e1e2 - e1e3 + e2e3 = 0, so dim A^2 = 2
    a = build_os_arrangement(QQ, pencil_normals(3))
    assert a.dim(2) == 2
    prod01 = a.product_basis(1, 0, 1, 1)
    prod02 = a.product_basis(1, 0, 1, 2)
    prod12 = a.product_basis(1, 1, 1, 2)
    f = a.field
    total = {}
    for sign, vec in ((1, prod01), (-1, prod02), (1, prod12)):
        for k, c in vec.items():
            total[k] = f.add(total.get(k, f.zero),
                             f.mul(f.coerce(sign), c))
    assert all(f.is_zero(c) for c in total.values())


def test_arrangement_rejects_degenerate_input():
    with pytest.raises(CdgaError):
        build_os_arrangement(QQ, [[0, 0], [1, 0]])  # not 3-vectors
    with pytest.raises(CdgaError):
        build_os_arrangement(QQ, [[0, 0, 0], [1, 0, 0]])  # zero normal
    with pytest.raises(CdgaError):
        # repeated hyperplane (proportional normals)
        build_os_arrangement(QQ, [[1, 0, 0], [2, 0, 0], [0, 1, 0]])


def test_curve_inclusion_is_valid_morphism():
    for g in (1, 2):
        curve, surface, incl = curve_inclusion(QQ, g)
        assert incl.source is curve
        assert incl.target is surface
        assert incl.validate() == []
        # degree-1 map hits the 2g weight-one generators, not the extra one
        from jumploci.linalg import rank
        m1 = incl.map(1)
        assert rank(m1) == 2 * g
        last_row = m1.row(surface.dim(1) - 1)
        assert all(QQ.is_zero(x) for x in last_row)


def test_builders_over_prime_fields():
    for f in (GF(3), GF(5)):
        for a in (build_torus_model(f, 2), build_compact_curve(f, 2),
                  build_surface_model(f, 1),
                  build_os_arrangement(f, pencil_normals(3))):
            assert a.validate() == []


def test_bad_parameters_rejected():
    with pytest.raises(CdgaError):
        build_compact_curve(QQ, 0)
    with pytest.raises(CdgaError):
        build_torus_model(QQ, 0)
    with pytest.raises(CdgaError):
        build_surface_model(QQ, 0)
    with pytest.raises(CdgaError):
        build_open_curve(QQ, 1)
