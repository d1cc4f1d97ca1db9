"""Finite commutative differential graded algebras over an exact field.

A ``Cdga`` is a finite table-backed model: a labelled basis in each degree
0..top_degree (degree 0 is one-dimensional, spanned by the unit), a sparse
multiplication table between positive-degree basis elements, one differential
matrix per degree (columns are images of the source basis), and an optional
integer weight per basis element.

Truncation semantics: everything above ``top_degree`` is zero.  The axioms
(graded commutativity, Leibniz, associativity, d*d = 0) are checked by
``validate`` under that convention, i.e. a check whose target degree exceeds
the top is vacuous.

Weights, when present, must satisfy: the unit has weight 0, a degree-i
element has weight between i and 2i, and both multiplication and the
differential preserve weight.  Degree-one elements therefore split into a
weight-1 and a weight-2 component; ``weight_components`` computes that
splitting for any degree.
"""

from __future__ import annotations

from .linalg import Matrix, kernel_basis, rank, complete_to_basis
from .scalars import same_field


class CdgaError(ValueError):
    pass


class Cdga:
    def __init__(self, field, name, basis, diff, mult, weights=None):
        """
        basis:   list of label lists, one per degree 0..top_degree
        diff:    dict degree -> Matrix of shape dim(degree+1) x dim(degree)
                 (absent degrees mean the zero map)
        mult:    dict (i, k, j, l) -> dict out_index -> scalar, for
                 1 <= i, j and i + j <= top_degree; unlisted products vanish;
                 products with the unit are implicit
        weights: list of int lists parallel to basis, or None
        """
        self.field = field
        self.name = name
        self.basis = [list(labels) for labels in basis]
        self.top_degree = len(self.basis) - 1
        if self.top_degree < 0:
            raise CdgaError("a model needs at least degree 0")
        self._diff = {}
        for i, m in diff.items():
            if not (0 <= i < self.top_degree):
                if m.nrows == 0 and m.ncols == self.dim(i):
                    continue  # tolerate explicit zero map at the top
                raise CdgaError(f"differential at degree {i} out of range")
            same_field(field, m.field)
            if m.shape != (self.dim(i + 1), self.dim(i)):
                raise CdgaError(
                    f"d^{i} has shape {m.shape}, expected "
                    f"({self.dim(i + 1)}, {self.dim(i)})")
            self._diff[i] = m
        self._mult = {}
        for (i, k, j, l), vec in mult.items():
            if i < 1 or j < 1 or i + j > self.top_degree:
                raise CdgaError(f"product key ({i},{k},{j},{l}) out of range")
            if not (0 <= k < self.dim(i) and 0 <= l < self.dim(j)):
                raise CdgaError(f"product key ({i},{k},{j},{l}) out of range")
            clean = {m: field.coerce(c) for m, c in vec.items()
                     if not field.is_zero(field.coerce(c))}
            for m in clean:
                if not 0 <= m < self.dim(i + j):
                    raise CdgaError(
                        f"product ({i},{k})*({j},{l}) hits bad index {m}")
            if clean:
                self._mult[(i, k, j, l)] = clean
        self.weights = None
        if weights is not None:
            self.weights = [list(w) for w in weights]
            if [len(w) for w in self.weights] != [len(b) for b in self.basis]:
                raise CdgaError("weights shape does not match basis")

    # -- shape ----------------------------------------------------------

    def dim(self, i):
        if 0 <= i <= self.top_degree:
            return len(self.basis[i])
        return 0

    def dims(self):
        return tuple(self.dim(i) for i in range(self.top_degree + 1))

    def label(self, i, k):
        return self.basis[i][k]

    def d_matrix(self, i):
        """d^i: degree i -> degree i+1 (zero map where undefined)."""
        if i in self._diff:
            return self._diff[i]
        return Matrix.zero(self.field, self.dim(i + 1), self.dim(i))

    def d_apply(self, i, vec):
        return self.d_matrix(i).apply(vec)

    # -- products ---------------------------------------------------------

    def product_basis(self, i, k, j, l):
        """x_(i,k) * x_(j,l) as a dict index -> scalar in degree i+j."""
        f = self.field
        if i == 0 and j == 0:
            return {0: f.one}
        if i == 0:
            return {l: f.one}
        if j == 0:
            return {k: f.one}
        if i + j > self.top_degree:
            return {}
        return self._mult.get((i, k, j, l), {})

    def product(self, i, v, j, w):
        """Bilinear product of coordinate vectors; result in degree i+j."""
        f = self.field
        out_dim = self.dim(i + j)
        out = [f.zero] * out_dim
        if out_dim == 0:
            return out
        for k, a in enumerate(v):
            if f.is_zero(a):
                continue
            for l, b in enumerate(w):
                if f.is_zero(b):
                    continue
                coef = f.mul(a, b)
                for m, c in self.product_basis(i, k, j, l).items():
                    out[m] = f.add(out[m], f.mul(coef, c))
        return out

    # -- cohomology ---------------------------------------------------------

    def cocycles(self, i):
        """Basis of ker d^i (all of degree i when d^i = 0)."""
        return kernel_basis(self.d_matrix(i))

    def cohomology(self, i):
        """(dimension, representative cocycle vectors) in degree i."""
        if not 0 <= i <= self.top_degree:
            return 0, []
        cyc = self.cocycles(i)
        if i == 0:
            img = []
        else:
            img = [self.d_matrix(i - 1).column(j)
                   for j in range(self.dim(i - 1))]
        reps = complete_to_basis(self.field, img, cyc, self.dim(i))
        bnd_rank = rank(Matrix(self.field, img, ncols=self.dim(i))) if img else 0
        return len(cyc) - bnd_rank, reps

    def betti(self, i):
        return self.cohomology(i)[0]

    def euler_characteristic(self):
        """Alternating sum of basis dimensions (= of cohomology dimensions)."""
        return sum((-1) ** i * self.dim(i) for i in range(self.top_degree + 1))

    # -- weights ------------------------------------------------------------

    def weight(self, i, k):
        if self.weights is None:
            raise CdgaError(f"model {self.name} carries no weights")
        return self.weights[i][k]

    def weight_components(self, i, vec):
        """Split a degree-i vector by weight: dict weight -> vector."""
        if self.weights is None:
            raise CdgaError(f"model {self.name} carries no weights")
        f = self.field
        out = {}
        for k, x in enumerate(vec):
            if f.is_zero(x):
                continue
            w = self.weights[i][k]
            if w not in out:
                out[w] = [f.zero] * self.dim(i)
            out[w][k] = x
        return out

    # -- validation ---------------------------------------------------------

    def validate(self):
        """Check every axiom; return a list of failure strings (empty = valid)."""
        f = self.field
        failures = []
        if self.dim(0) != 1:
            failures.append(f"degree 0 has dimension {self.dim(0)}, want 1")
        if 0 in self._diff and not self._diff[0].is_zero():
            failures.append("unit has nonzero differential")

        # d after d = 0
        for i in range(self.top_degree - 1):
            comp = self.d_matrix(i + 1) @ self.d_matrix(i)
            if not comp.is_zero():
                failures.append(f"d^{i + 1} d^{i} != 0")

        def vec_eq(u, v):
            return all(f.is_zero(f.sub(a, b)) for a, b in zip(u, v))

        def as_vec(i, dct):
            out = [f.zero] * self.dim(i)
            for m, c in dct.items():
                out[m] = c
            return out

        # graded commutativity on stored-or-zero pairs
        for i in range(1, self.top_degree + 1):
            for j in range(i, self.top_degree + 1 - i):
                for k in range(self.dim(i)):
                    for l in range(self.dim(j)):
                        ab = as_vec(i + j, self.product_basis(i, k, j, l))
                        ba = as_vec(i + j, self.product_basis(j, l, i, k))
                        if i * j % 2 == 1:
                            ba = [f.neg(x) for x in ba]
                        if not vec_eq(ab, ba):
                            failures.append(
                                "graded commutativity fails on "
                                f"({self.label(i, k)}, {self.label(j, l)})")

        # Leibniz: d(xy) = (dx)y + (-1)^i x(dy), binding when i+j+1 <= top
        for i in range(1, self.top_degree + 1):
            for j in range(1, self.top_degree + 1 - i):
                if i + j + 1 > self.top_degree:
                    continue
                for k in range(self.dim(i)):
                    dx = self.d_apply(i, self._unit_vec(i, k))
                    for l in range(self.dim(j)):
                        y = self._unit_vec(j, l)
                        dy = self.d_apply(j, y)
                        lhs = self.d_apply(
                            i + j, as_vec(i + j, self.product_basis(i, k, j, l)))
                        rhs = self.product(i + 1, dx, j, y)
                        term = self.product(i, self._unit_vec(i, k), j + 1, dy)
                        if i % 2 == 1:
                            term = [f.neg(x) for x in term]
                        rhs = [f.add(a, b) for a, b in zip(rhs, term)]
                        if not vec_eq(lhs, rhs):
                            failures.append(
                                "Leibniz fails on "
                                f"({self.label(i, k)}, {self.label(j, l)})")

        # associativity on positive-degree triples
        for i in range(1, self.top_degree + 1):
            for j in range(1, self.top_degree + 1 - i):
                for q in range(1, self.top_degree + 1 - i - j):
                    for k in range(self.dim(i)):
                        x = self._unit_vec(i, k)
                        for l in range(self.dim(j)):
                            y = self._unit_vec(j, l)
                            xy = self.product(i, x, j, y)
                            for r in range(self.dim(q)):
                                z = self._unit_vec(q, r)
                                lhs = self.product(i + j, xy, q, z)
                                rhs = self.product(
                                    i, x, j + q, self.product(j, y, q, z))
                                if not vec_eq(lhs, rhs):
                                    failures.append(
                                        "associativity fails on "
                                        f"({self.label(i, k)},"
                                        f"{self.label(j, l)},"
                                        f"{self.label(q, r)})")

        failures.extend(self._validate_weights())
        return failures

    def _unit_vec(self, i, k):
        v = [self.field.zero] * self.dim(i)
        v[k] = self.field.one
        return v

    def _validate_weights(self):
        if self.weights is None:
            return []
        f = self.field
        failures = []
        if self.weights[0][0] != 0:
            failures.append("unit weight is not 0")
        for i in range(1, self.top_degree + 1):
            for k, w in enumerate(self.weights[i]):
                if not i <= w <= 2 * i:
                    failures.append(
                        f"weight {w} of {self.label(i, k)} outside [{i},{2 * i}]")
        for i in range(self.top_degree):
            d = self.d_matrix(i)
            for c in range(d.nrows):
                for k in range(d.ncols):
                    if not f.is_zero(d[c, k]) and \
                            self.weights[i + 1][c] != self.weights[i][k]:
                        failures.append(
                            f"d does not preserve weight on {self.label(i, k)}")
        for (i, k, j, l), vec in self._mult.items():
            want = self.weights[i][k] + self.weights[j][l]
            for m, c in vec.items():
                if not f.is_zero(c) and self.weights[i + j][m] != want:
                    failures.append(
                        "product does not preserve weight on "
                        f"({self.label(i, k)}, {self.label(j, l)})")
        return failures

    def __repr__(self):
        return f"Cdga({self.name}, dims={self.dims()})"


class CdgaMorphism:
    """A degreewise linear map between models, unit to unit.

    maps[i] has shape target.dim(i) x source.dim(i) for i = 0..source.top.
    """

    def __init__(self, source, target, maps, name=""):
        same_field(source.field, target.field)
        self.source = source
        self.target = target
        self.name = name or "morphism"
        self.maps = {}
        for i in range(source.top_degree + 1):
            m = maps.get(i) if isinstance(maps, dict) else (
                maps[i] if i < len(maps) else None)
            if m is None:
                m = Matrix.zero(source.field, target.dim(i), source.dim(i))
            if m.shape != (target.dim(i), source.dim(i)):
                raise CdgaError(
                    f"morphism degree {i} has shape {m.shape}, expected "
                    f"({target.dim(i)}, {source.dim(i)})")
            self.maps[i] = m

    def map(self, i):
        if 0 <= i <= self.source.top_degree:
            return self.maps[i]
        return Matrix.zero(self.source.field, self.target.dim(i), 0)

    def apply(self, i, vec):
        return self.map(i).apply(vec)

    def validate(self):
        """Failure list: unit, chain-map, multiplicativity, weights."""
        f = self.source.field
        failures = []
        m0 = self.maps[0]
        if self.target.dim(0) != 1 or f.is_zero(m0[0, 0]) or \
                not f.is_zero(f.sub(m0[0, 0], f.one)):
            failures.append("unit is not sent to unit")
        for i in range(self.source.top_degree):
            lhs = self.target.d_matrix(i) @ self.maps[i]
            rhs = self.map(i + 1) @ self.source.d_matrix(i)
            if lhs != rhs:
                failures.append(f"does not commute with d at degree {i}")

        def vec_eq(u, v):
            return all(f.is_zero(f.sub(a, b)) for a, b in zip(u, v))

        # When i+j exceeds the source top the source product is truncated to
        # zero, so multiplicativity forces the image product to vanish too.
        for i in range(1, self.source.top_degree + 1):
            for j in range(1, self.source.top_degree + 1):
                for k in range(self.source.dim(i)):
                    fx = self.maps[i].column(k)
                    for l in range(self.source.dim(j)):
                        fy = self.maps[j].column(l)
                        rhs = self.target.product(i, fx, j, fy)
                        src = self.source.product_basis(i, k, j, l) \
                            if i + j <= self.source.top_degree else {}
                        vec = [f.zero] * self.source.dim(i + j)
                        for m, c in src.items():
                            vec[m] = c
                        lhs = self.apply(i + j, vec) \
                            if i + j <= self.source.top_degree \
                            else [f.zero] * self.target.dim(i + j)
                        if not vec_eq(lhs, rhs):
                            failures.append(
                                "not multiplicative on "
                                f"({self.source.label(i, k)}, "
                                f"{self.source.label(j, l)})")
        if self.source.weights is not None and self.target.weights is not None:
            for i in range(1, self.source.top_degree + 1):
                m = self.maps[i]
                for c in range(m.nrows):
                    for k in range(m.ncols):
                        if not f.is_zero(m[c, k]) and \
                                self.target.weights[i][c] != \
                                self.source.weights[i][k]:
                            failures.append(
                                "does not preserve weight on "
                                f"{self.source.label(i, k)}")
        return failures

    def is_injective(self):
        return all(rank(self.maps[i]) == self.source.dim(i)
                   for i in range(self.source.top_degree + 1))

    def __repr__(self):
        return (f"CdgaMorphism({self.name}: {self.source.name} -> "
                f"{self.target.name})")


def tensor_product(a, b, name=None):
    """Graded tensor product, truncated at degree 3; returns just the model."""
    t, _, _ = tensor_product_with_inclusions(a, b, name=name)
    return t


def tensor_product_with_inclusions(a, b, name=None):
    """Tensor product plus the two factor inclusions x -> x|1, y -> 1|y.

    Truncated at degree 3 — everything downstream reads degrees <= 2 only.
    Basis of degree d: pairs (x of degree i, y of degree d-i) ordered by i,
    then by the two factor indices.  Signs follow the usual rule
    (x|y)(x'|y') = (-1)^{|y||x'|} (xx')|(yy').
    """
    same_field(a.field, b.field)
    f = a.field
    top = min(3, a.top_degree + b.top_degree)
    pairs = {}   # (deg, idx) -> (i, k, j, l)
    index = {}   # (i, k, j, l) -> (deg, idx)
    basis = []
    for d in range(top + 1):
        labels = []
        for i in range(d + 1):
            j = d - i
            if i > a.top_degree or j > b.top_degree:
                continue
            for k in range(a.dim(i)):
                for l in range(b.dim(j)):
                    idx = len(labels)
                    labels.append(f"{a.label(i, k)}|{b.label(j, l)}")
                    pairs[(d, idx)] = (i, k, j, l)
                    index[(i, k, j, l)] = (d, idx)
        basis.append(labels)

    diff = {}
    for d in range(top):
        cols = []
        for idx in range(len(basis[d])):
            i, k, j, l = pairs[(d, idx)]
            col = [f.zero] * len(basis[d + 1])
            da = a.d_matrix(i).column(k) if i < a.top_degree else []
            for c, coef in enumerate(da):
                if not f.is_zero(coef) and (i + 1, c, j, l) in index:
                    _, t_idx = index[(i + 1, c, j, l)]
                    col[t_idx] = f.add(col[t_idx], coef)
            db = b.d_matrix(j).column(l) if j < b.top_degree else []
            for c, coef in enumerate(db):
                if not f.is_zero(coef) and (i, k, j + 1, c) in index:
                    _, t_idx = index[(i, k, j + 1, c)]
                    signed = f.neg(coef) if i % 2 == 1 else coef
                    col[t_idx] = f.add(col[t_idx], signed)
            cols.append(col)
        diff[d] = Matrix.from_columns(f, cols, nrows=len(basis[d + 1]))

    mult = {}
    for d1 in range(1, top):
        for d2 in range(1, top + 1 - d1):
            for idx1 in range(len(basis[d1])):
                i, k, j, l = pairs[(d1, idx1)]
                for idx2 in range(len(basis[d2])):
                    p, q, r, s = pairs[(d2, idx2)]
                    if i + p > a.top_degree or j + r > b.top_degree:
                        continue
                    xa = a.product_basis(i, k, p, q)
                    yb = b.product_basis(j, l, r, s)
                    if not xa or not yb:
                        continue
                    sign = -1 if (j * p) % 2 == 1 else 1
                    vec = {}
                    for ka, ca in xa.items():
                        for lb, cb in yb.items():
                            key = index.get((i + p, ka, j + r, lb))
                            if key is None:
                                continue
                            _, t_idx = key
                            c = f.mul(ca, cb)
                            if sign < 0:
                                c = f.neg(c)
                            vec[t_idx] = f.add(vec.get(t_idx, f.zero), c)
                    vec = {m: c for m, c in vec.items() if not f.is_zero(c)}
                    if vec:
                        mult[(d1, idx1, d2, idx2)] = vec

    weights = None
    if a.weights is not None and b.weights is not None:
        weights = []
        for d in range(top + 1):
            ws = []
            for idx in range(len(basis[d])):
                i, k, j, l = pairs[(d, idx)]
                ws.append(a.weights[i][k] + b.weights[j][l])
            weights.append(ws)

    prod = Cdga(f, name or f"{a.name}(x){b.name}", basis, diff, mult,
                weights=weights)

    def inclusion(factor, other_first):
        maps = {}
        for i in range(factor.top_degree + 1):
            cols = []
            for k in range(factor.dim(i)):
                col = [f.zero] * prod.dim(i)
                key = (i, k, 0, 0) if not other_first else (0, 0, i, k)
                if key in index:
                    _, idx = index[key]
                    col[idx] = f.one
                cols.append(col)
            maps[i] = Matrix.from_columns(f, cols, nrows=prod.dim(i))
        return maps

    incl_a = CdgaMorphism(a, prod, inclusion(a, False),
                          name=f"{a.name}->|{prod.name}")
    incl_b = CdgaMorphism(b, prod, inclusion(b, True),
                          name=f"{b.name}->|{prod.name}")
    return prod, incl_a, incl_b
