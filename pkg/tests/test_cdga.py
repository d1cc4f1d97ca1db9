"""Model axioms: the builders must validate cleanly, and hand-corrupted
tables must be caught with the right failure messages.

Corruptions are applied through the JSON codec so that only the public
surface is exercised.
"""

import pytest

from jumploci.cdga import Cdga, CdgaError, tensor_product_with_inclusions
from jumploci.models import (build_compact_curve, build_open_curve,
                             build_surface_model, build_torus_model)
from jumploci.scalars import GF, QQ
from jumploci.serialize import cdga_from_json, cdga_to_json


def reload_with(model, tweak):
    obj = cdga_to_json(model)
    tweak(obj)
    return cdga_from_json(model.field, obj)


def test_builders_validate_clean():
    for model in (build_torus_model(QQ, 3), build_compact_curve(QQ, 2),
                  build_open_curve(QQ, 2), build_surface_model(QQ, 2),
                  build_torus_model(GF(3), 2), build_surface_model(GF(5), 1)):
        assert model.validate() == []


def test_torus_multiplication_oracle():
    a = build_torus_model(QQ, 3)
    # e1 * e2 = e1e2, e2 * e1 = -e1e2
    assert a.product_basis(1, 0, 1, 1) == {0: QQ.one}
    assert a.product_basis(1, 1, 1, 0) == {0: QQ.neg(QQ.one)}
    # e1 * e1 = 0
    assert a.product_basis(1, 0, 1, 0) == {}
    # (e1 e2) * e3 = e1e2e3
    assert a.product_basis(2, 0, 1, 2) == {0: QQ.one}


def test_leibniz_violation_detected():
    # Zero d on degree 1 but d(e1e2) = e1e2e3 breaks the product rule.
    a = build_torus_model(QQ, 3)

    def tweak(obj):
        obj["diff"] = [{"deg": 2, "matrix": [["1", "0", "0"]]}]

    broken = reload_with(a, tweak)
    failures = broken.validate()
    assert any("Leibniz" in msg for msg in failures)


def test_d_squared_violation_detected():
    # d(e1) = e1e2 and d(e1e2) = e1e2e3 gives d(d(e1)) != 0.
    a = build_torus_model(QQ, 3)

    def tweak(obj):
        obj["diff"] = [
            {"deg": 1, "matrix": [["1", "0", "0"],
                                  ["0", "0", "0"],
                                  ["0", "0", "0"]]},
            {"deg": 2, "matrix": [["1", "0", "0"]]},
        ]

    broken = reload_with(a, tweak)
    failures = broken.validate()
    assert any("d^2 d^1" in msg for msg in failures)


def test_graded_commutativity_violation_detected():
    a = build_torus_model(QQ, 2)

    def tweak(obj):
        for entry in obj["mult"]:
            if entry["i"] == [1, 1] and entry["j"] == [1, 0]:
                entry["out"][0]["coef"] = "1"  # should be -1

    broken = reload_with(a, tweak)
    assert any("graded commutativity" in msg for msg in broken.validate())


def test_weight_violation_detected():
    a = build_surface_model(QQ, 1)

    def tweak(obj):
        obj["weights"][1][2] = 1  # the weight-2 generator claims weight 1

    broken = reload_with(a, tweak)
    failures = broken.validate()
    assert any("weight" in msg for msg in failures)


def test_weights_on_builders():
    a = build_surface_model(QQ, 2)
    assert [a.weight(1, k) for k in range(a.dim(1))] == [1, 1, 1, 1, 2]
    t = build_torus_model(QQ, 2)
    assert [t.weight(1, k) for k in range(t.dim(1))] == [1, 1]


def test_degree_zero_must_be_one_dimensional():
    bad = Cdga(QQ, "bad", [["1", "also"]], {}, {})
    assert any("degree 0" in msg for msg in bad.validate())


def test_differential_shape_checked():
    from jumploci.linalg import Matrix
    with pytest.raises(CdgaError):
        Cdga(QQ, "bad", [["1"], ["x"]], {0: Matrix.zero(QQ, 3, 3)}, {})


def test_cohomology_of_surface_model():
    # The weight-2 generator kills one degree-1 class and one degree-2 class:
    # dims (1, 2g+1, 2g+1, 1) but betti (1, 2g, 2g, 1).
    for g in (1, 2):
        a = build_surface_model(QQ, g)
        want = (1, 2 * g, 2 * g, 1)
        assert tuple(a.betti(i) for i in range(4)) == want


def test_cocycles_and_d_apply():
    a = build_surface_model(QQ, 1)
    cyc = a.cocycles(1)
    assert len(cyc) == 2
    for v in cyc:
        assert all(QQ.is_zero(x) for x in a.d_apply(1, v))
    # t itself is not closed
    t_vec = [QQ.zero, QQ.zero, QQ.one]
    assert any(not QQ.is_zero(x) for x in a.d_apply(1, t_vec))


def test_tensor_product_shape_and_validity():
    left = build_compact_curve(QQ, 2)
    right = build_compact_curve(QQ, 1)
    prod, incl_l, incl_r = tensor_product_with_inclusions(left, right)
    # degree 3 pairs: (1-forms x 2-forms) 4*1 + (2-forms x 1-forms) 1*2
    assert prod.dims() == (1, 6, 10, 6)  # truncated at degree 3
    assert prod.validate() == []
    assert incl_l.validate() == []
    assert incl_r.validate() == []


def test_tensor_inclusions_are_algebra_maps_in_degree_one():
    left = build_compact_curve(QQ, 1)
    right = build_torus_model(QQ, 2)
    prod, incl_l, incl_r = tensor_product_with_inclusions(left, right)
    m1 = incl_l.map(1)
    assert m1.shape == (prod.dim(1), left.dim(1))
    # injective inclusion of each factor
    from jumploci.linalg import rank
    assert rank(m1) == left.dim(1)
    assert rank(incl_r.map(1)) == right.dim(1)


def test_morphism_validate_catches_non_multiplicativity():
    from jumploci.cdga import CdgaMorphism
    from jumploci.linalg import Matrix
    a = build_torus_model(QQ, 2)
    ident = {i: Matrix.identity(QQ, a.dim(i)) for i in range(3)}
    good = CdgaMorphism(a, a, ident)
    assert good.validate() == []
    # scaling degree 1 by 2 but not degree 2 breaks multiplicativity
    twisted = dict(ident)
    twisted[1] = ident[1].scale(QQ.coerce(2))
    bad = CdgaMorphism(a, a, twisted)
    assert bad.validate() != []
