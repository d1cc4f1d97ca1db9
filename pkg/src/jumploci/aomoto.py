"""Covariant-derivative (Aomoto) complexes and resonance membership.

Given a flat connection omega = sum_k a_k (x) x_k and a representation
theta on V, the twisted differential on model (x) V is

    d_omega(a (x) v) = (d a) (x) v + sum_k (a_k a) (x) theta(x_k) v,

the connection's one-form generators multiplying from the left.  Flatness of
omega makes d_omega square to zero.  Basis ordering is algebra-major:
index = (algebra basis index) * dim V + (V index).

Resonance membership at degree i, depth r asks dim H^i >= r.  The degree-0
locus has a direct description — a nonzero vector killed by every theta(x_k)
— which ``r01_common_kernel`` computes independently and cross-checks
against the assembled complex.

``depth_gap`` packages the strict-inequality comparison between the twisted
first Betti number of a connection on a sub-model and of its pushforward on
a bigger model, exhibiting an explicit new kernel element eta (x) v built
from a fixed vector v and a closed one-form eta outside the sub-model's
image.
"""

from __future__ import annotations

from dataclasses import dataclass

from .flatconn import FlatConnection, NotFlatError, f1_membership, is_flat, \
    mc_residual, pullback
from .linalg import Matrix, kernel_basis, rank, solve, vstack_all


class AomotoError(ValueError):
    pass


class PreconditionError(AomotoError):
    """A depth-gap or resonance precondition failed; message says which."""


def aomoto_matrix(conn, rep, i):
    """The twisted differential from degree i to degree i+1 as a Matrix.

    Block formula: D[(c, w), (b, v)] =
        d_i[c, b] delta_{w v} + sum_k prod(a_k, x_b)[c] theta(x_k)[w, v].
    """
    a, g = conn.cdga, conn.lie
    f = a.field
    dv = rep.dim
    ni, nj = a.dim(i), a.dim(i + 1)
    theta = [rep.apply(conn.row(k)) for k in range(a.dim(1))]
    entries = [[f.zero] * (ni * dv) for _ in range(nj * dv)]
    di = a.d_matrix(i)
    for b in range(ni):
        for c in range(nj):
            coef = di[c, b]
            if not f.is_zero(coef):
                for w in range(dv):
                    entries[c * dv + w][b * dv + w] = f.add(
                        entries[c * dv + w][b * dv + w], coef)
        for k in range(a.dim(1)):
            prod = a.product_basis(1, k, i, b)
            if not prod:
                continue
            for c, coef in prod.items():
                th = theta[k]
                for w in range(dv):
                    for v in range(dv):
                        x = th[w, v]
                        if not f.is_zero(x):
                            entries[c * dv + w][b * dv + v] = f.add(
                                entries[c * dv + w][b * dv + v],
                                f.mul(coef, x))
    return Matrix(f, entries, ncols=ni * dv)


class AomotoComplex:
    """All twisted differentials of a flat connection at once."""

    def __init__(self, conn, rep):
        if not rep.lie.structurally_equal(conn.lie):
            raise AomotoError("representation is over a different Lie algebra")
        res = mc_residual(conn)
        f = conn.cdga.field
        if any(not f.is_zero(x) for x in res):
            raise NotFlatError(res)
        self.conn = conn
        self.rep = rep
        self.cdga = conn.cdga
        self.matrices = [aomoto_matrix(conn, rep, i)
                         for i in range(conn.cdga.top_degree)]

    def matrix(self, i):
        if 0 <= i < len(self.matrices):
            return self.matrices[i]
        return Matrix.zero(self.cdga.field, self.cdga.dim(i + 1) * self.rep.dim,
                           self.cdga.dim(i) * self.rep.dim)

    def betti(self, i):
        if not 0 <= i <= self.cdga.top_degree:
            return 0
        dim_i = self.cdga.dim(i) * self.rep.dim
        z = dim_i - rank(self.matrix(i)) if i < self.cdga.top_degree else dim_i
        b = rank(self.matrix(i - 1)) if i > 0 else 0
        return z - b

    def betti_all(self):
        return tuple(self.betti(i) for i in range(self.cdga.top_degree + 1))

    def euler(self):
        return sum((-1) ** i * b for i, b in enumerate(self.betti_all()))

    def square_is_zero(self):
        for i in range(len(self.matrices) - 1):
            if not (self.matrices[i + 1] @ self.matrices[i]).is_zero():
                return False
        return True


def build_aomoto(conn, rep):
    """Assemble the twisted complex; raises NotFlatError with the residual
    attached when the connection is not flat."""
    return AomotoComplex(conn, rep)


def aomoto_betti(conn, rep, i):
    return build_aomoto(conn, rep).betti(i)


def resonance_membership(conn, rep, i, depth):
    """dim H^i of the twisted complex >= depth?"""
    if depth < 1:
        raise AomotoError("depth must be >= 1")
    return aomoto_betti(conn, rep, i) >= depth


def r01_common_kernel(conn, rep):
    """(member, witness) for degree-0 depth-1 resonance: a nonzero vector
    killed by theta of every coefficient row.

    Computed by stacking the theta(x_k) directly, then cross-checked against
    the assembled complex's degree-0 Betti number; a mismatch raises.
    """
    a = conn.cdga
    f = a.field
    stacked = vstack_all(f, [rep.apply(conn.row(k)) for k in range(a.dim(1))],
                         rep.dim)
    ker = kernel_basis(stacked)
    member = bool(ker)
    b0 = aomoto_betti(conn, rep, 0)
    if member != (b0 >= 1):
        raise AomotoError(
            f"internal disagreement: common kernel {member} vs b0 {b0}")
    return member, (ker[0] if member else None)


@dataclass
class DepthGapReport:
    base_betti: int          # twisted b1 on the sub-model
    target_betti: int        # twisted b1 on the big model
    strict_increase: bool    # target > base
    base_positive: bool      # base >= 1
    depth_two: bool          # target > 1
    fixed_vector: list       # common kernel vector of theta
    eta: list                # the chosen closed one-form outside the image
    eta_kernel_ok: bool      # eta (x) v killed by the twisted differential

    @property
    def holds(self):
        return (self.strict_increase and self.base_positive
                and self.depth_two and self.eta_kernel_ok)

    def to_dict(self, f):
        """Wire format: depth numbers, the witness tensor, named checks."""
        return {
            "s": self.base_betti,
            "r": self.target_betti,
            "degree": 1,
            "witnesses": {
                "eta_tensor_v": {
                    "eta": [f.format(x) for x in self.eta],
                    "fixed_vector": [f.format(x) for x in self.fixed_vector],
                },
            },
            "checks": [
                {"name": "base_positive", "ok": self.base_positive},
                {"name": "strict_increase", "ok": self.strict_increase},
                {"name": "depth_two", "ok": self.depth_two},
                {"name": "eta_kernel_ok", "ok": self.eta_kernel_ok},
            ],
        }


def depth_gap(morphism, rep, conn, eta):
    """Compare twisted first Betti numbers along a model inclusion.

    Preconditions (each failure raises PreconditionError naming the culprit):
      * theta has a nonzero vector killed by the whole Lie algebra;
      * eta is a closed degree-1 vector of the target outside the image of
        the degree-1 map;
      * conn lives on the source, is flat, and is not rank-one.

    Returns a DepthGapReport with base/target twisted b1, the comparison
    flags, and an explicit kernel element eta (x) v of the target complex.
    """
    f = morphism.source.field
    g = rep.lie

    common = kernel_basis(vstack_all(f, rep.matrices, rep.dim))
    if not common:
        raise PreconditionError(
            "theta has no nonzero vector killed by the Lie algebra")
    v = common[0]

    tgt = morphism.target
    if len(eta) != tgt.dim(1):
        raise PreconditionError("eta has the wrong length for the target")
    eta = [f.coerce(x) for x in eta]
    if any(not f.is_zero(x) for x in tgt.d_apply(1, eta)):
        raise PreconditionError("eta is not closed")
    if solve(morphism.map(1), eta) is not None:
        raise PreconditionError("eta lies in the image of the inclusion")

    if conn.cdga is not morphism.source and \
            conn.cdga.dims() != morphism.source.dims():
        raise PreconditionError("connection does not live on the source model")
    if not is_flat(conn):
        raise PreconditionError("connection is not flat")
    if f1_membership(conn).member:
        raise PreconditionError("connection is rank-one; the gap needs rank >= 2")

    pushed = pullback(morphism, conn)
    base = aomoto_betti(conn, rep, 1)
    target_complex = build_aomoto(pushed, rep)
    target = target_complex.betti(1)

    # the advertised new kernel element
    dv = rep.dim
    vec = [f.zero] * (tgt.dim(1) * dv)
    for k, c in enumerate(eta):
        if not f.is_zero(c):
            for w in range(dv):
                vec[k * dv + w] = f.mul(c, v[w])
    image = target_complex.matrix(1).apply(vec)
    eta_ok = all(f.is_zero(x) for x in image)

    return DepthGapReport(
        base_betti=base, target_betti=target,
        strict_increase=target > base, base_positive=base >= 1,
        depth_two=target > 1, fixed_vector=v, eta=eta,
        eta_kernel_ok=eta_ok)
