"""Finite-dimensional Lie algebras and their matrix representations.

A Lie algebra is a labelled basis plus structure constants; elements are
plain coordinate vectors (lists of field scalars).  Brackets are stored for
index pairs i < j only, so antisymmetry holds by construction; the Jacobi
identity is checked by ``validate``.

Builders: ``build_sl(n)`` with the elementary-matrix basis E_ij (i != j,
upper triangular block first, lex order) followed by H_i = E_ii - E_{i+1,i+1};
``build_sol2`` with basis (h, e), [h, e] = 2e; ``build_abelian(n)`` with zero
bracket (n = 1 is the coefficient line acting by scaling, the rank-one case).

Representations carry one square matrix per basis element and are checked at
construction: [theta(x_i), theta(x_j)] must equal theta([x_i, x_j]).
"""

from __future__ import annotations

from .linalg import Matrix, det
from .scalars import same_field


class LieError(ValueError):
    pass


class LieAlgebra:
    def __init__(self, field, labels, brackets, name=""):
        """brackets: dict (i, j) with i < j -> dict index -> scalar."""
        self.field = field
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.name = name or "lie"
        if len(set(self.labels)) != self.dim:
            raise LieError("duplicate basis labels")
        norm = {}
        for (i, j), vec in brackets.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise LieError(f"bracket index ({i},{j}) out of range")
            if i == j:
                if any(not field.is_zero(field.coerce(c)) for c in vec.values()):
                    raise LieError(f"nonzero bracket [{i},{i}]")
                continue
            if i > j:
                raise LieError("brackets must be keyed with i < j")
            clean = {m: field.coerce(c) for m, c in vec.items()
                     if not field.is_zero(field.coerce(c))}
            if clean:
                norm[(i, j)] = clean
        self._brackets = norm
        self.index = {lab: k for k, lab in enumerate(self.labels)}

    def basis_vector(self, key):
        """Unit coordinate vector for a basis index or label."""
        k = self.index[key] if isinstance(key, str) else key
        v = [self.field.zero] * self.dim
        v[k] = self.field.one
        return v

    def bracket_basis(self, i, j):
        """[x_i, x_j] as a coordinate vector."""
        f = self.field
        out = [f.zero] * self.dim
        if i == j:
            return out
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        for m, c in self._brackets.get((i, j), {}).items():
            out[m] = f.neg(c) if sign < 0 else c
        return out

    def bracket(self, x, y):
        """Bilinear bracket of coordinate vectors."""
        f = self.field
        out = [f.zero] * self.dim
        for i, xi in enumerate(x):
            if f.is_zero(xi):
                continue
            for j, yj in enumerate(y):
                if f.is_zero(yj) or i == j:
                    continue
                coef = f.mul(xi, yj)
                for m, c in self._brackets.get((min(i, j), max(i, j)), {}).items():
                    term = f.mul(coef, c)
                    if i > j:
                        term = f.neg(term)
                    out[m] = f.add(out[m], term)
        return out

    def is_zero_vector(self, v):
        return all(self.field.is_zero(x) for x in v)

    def is_abelian(self):
        return not any(self._brackets.values())

    def structure_tensor(self):
        """c[i][j][m] with [x_i, x_j] = sum_m c[i][j][m] x_m (full, antisym)."""
        return [[self.bracket_basis(i, j) for j in range(self.dim)]
                for i in range(self.dim)]

    def validate(self):
        """Return a list of failure strings (empty = valid).

        Antisymmetry is structural here, so this checks the Jacobi identity
        on all basis triples, plus basic sanity of the stored table.
        """
        f = self.field
        failures = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(j + 1, self.dim):
                    xi, xj, xk = (self.basis_vector(t) for t in (i, j, k))
                    acc = [f.zero] * self.dim
                    for a, b, c in ((xi, xj, xk), (xj, xk, xi), (xk, xi, xj)):
                        term = self.bracket(a, self.bracket(b, c))
                        acc = [f.add(u, v) for u, v in zip(acc, term)]
                    if not self.is_zero_vector(acc):
                        failures.append(
                            f"jacobi fails on ({self.labels[i]},"
                            f"{self.labels[j]},{self.labels[k]})")
        return failures

    def structurally_equal(self, other):
        return (self.field == other.field and self.labels == other.labels
                and self._brackets == other._brackets)

    def __repr__(self):
        return f"LieAlgebra({self.name}, dim={self.dim})"


class LieRep:
    """A representation: one dim_V x dim_V matrix per Lie basis element.

    Construction verifies bracket compatibility and aborts on failure.
    """

    def __init__(self, lie, matrices, name=""):
        self.lie = lie
        self.name = name or "rep"
        if len(matrices) != lie.dim:
            raise LieError(
                f"{lie.dim} basis elements but {len(matrices)} matrices")
        self.matrices = list(matrices)
        dims = {m.shape for m in self.matrices}
        if len(dims) != 1:
            raise LieError(f"inconsistent matrix shapes {dims}")
        (nr, nc), = dims
        if nr != nc:
            raise LieError("representation matrices must be square")
        self.dim = nr
        for m in self.matrices:
            same_field(lie.field, m.field)
        bad = self._compat_failures()
        if bad:
            raise LieError("bracket compatibility fails: " + "; ".join(bad))

    def _compat_failures(self):
        out = []
        for i in range(self.lie.dim):
            for j in range(i + 1, self.lie.dim):
                lhs = (self.matrices[i] @ self.matrices[j]
                       - self.matrices[j] @ self.matrices[i])
                if lhs != self.apply(self.lie.bracket_basis(i, j)):
                    out.append(f"[{self.lie.labels[i]},{self.lie.labels[j]}]")
        return out

    def apply(self, x):
        """theta(x) for a coordinate vector x, as a Matrix."""
        f = self.lie.field
        acc = Matrix.zero(f, self.dim, self.dim)
        for i, xi in enumerate(x):
            if not f.is_zero(xi):
                acc = acc + self.matrices[i].scale(xi)
        return acc

    def __repr__(self):
        return f"LieRep({self.name}, lie={self.lie.name}, dim={self.dim})"


# ---------------------------------------------------------------------------
# builders


def build_sl(field, n, name=None):
    """Traceless n x n matrices; basis E_ij (i<j lex), E_ij (i>j lex), H_i."""
    if n < 2:
        raise LieError("sl(n) needs n >= 2")
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)
             if i < j]
    pairs += [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)
              if i > j]
    labels = [f"E{i}{j}" for i, j in pairs] + [f"H{i}" for i in range(1, n)]

    def as_matrix(k):
        m = [[0] * n for _ in range(n)]
        if k < len(pairs):
            i, j = pairs[k]
            m[i - 1][j - 1] = 1
        else:
            i = k - len(pairs)  # 0-based Cartan index
            m[i][i] = 1
            m[i + 1][i + 1] = -1
        return m

    def coords(m):
        """Coordinates of a traceless matrix in this basis."""
        out = []
        for i, j in pairs:
            out.append(m[i - 1][j - 1])
        partial = 0
        for i in range(n - 1):
            partial += m[i][i]
            out.append(partial)
        return out

    dim = len(labels)
    mats = [as_matrix(k) for k in range(dim)]
    brackets = {}
    for a in range(dim):
        for b in range(a + 1, dim):
            x, y = mats[a], mats[b]
            comm = [[sum(x[i][t] * y[t][j] - y[i][t] * x[t][j]
                         for t in range(n))
                     for j in range(n)] for i in range(n)]
            vec = {m: c for m, c in enumerate(coords(comm)) if c != 0}
            if vec:
                brackets[(a, b)] = vec
    g = LieAlgebra(field, labels, brackets, name=name or f"sl{n}")
    g.matrix_size = n
    return g


def sl_root_index(g, i, j):
    """Basis index of E_ij inside build_sl output."""
    return g.index[f"E{i}{j}"]


def sl_coordinates(g, m):
    """Coordinates of a traceless matrix in the build_sl basis order."""
    n = g.matrix_size
    if m.shape != (n, n):
        raise LieError(f"expected a {n}x{n} matrix, got {m.shape}")
    f = g.field
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)
             if i < j]
    pairs += [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)
              if i > j]
    out = [m[i - 1, j - 1] for i, j in pairs]
    partial = f.zero
    for i in range(n - 1):
        partial = f.add(partial, m[i, i])
        out.append(partial)
    return out


def build_sol2(field):
    """Two-dimensional solvable algebra on (h, e) with [h, e] = 2e."""
    return LieAlgebra(field, ["h", "e"], {(0, 1): {1: field.coerce(2)}},
                      name="sol2")


def build_abelian(field, n):
    """Abelian Lie algebra of dimension n (all brackets zero)."""
    if n < 1:
        raise LieError("abelian algebra needs n >= 1")
    return LieAlgebra(field, [f"x{i}" for i in range(1, n + 1)], {},
                      name=f"abelian{n}")


def rep_defining(g):
    """The defining matrix representation.

    sl(n): each basis element acts by its own n x n matrix.
    sol2: h -> diag(1, -1), e -> upper right unit.
    abelian(1): the coefficient line acting by the 1 x 1 identity
    (the rank-one local system case).
    """
    f = g.field
    if g.name.startswith("sl"):
        n = g.matrix_size
        mats = []
        for lab in g.labels:
            m = [[f.zero] * n for _ in range(n)]
            if lab.startswith("E"):
                i, j = int(lab[1]), int(lab[2])
                m[i - 1][j - 1] = f.one
            else:
                i = int(lab[1:])
                m[i - 1][i - 1] = f.one
                m[i][i] = f.neg(f.one)
            mats.append(Matrix(f, m))
        return LieRep(g, mats, name="defining")
    if g.name == "sol2":
        h = Matrix(f, [[1, 0], [0, -1]])
        e = Matrix(f, [[0, 1], [0, 0]])
        return LieRep(g, [h, e], name="defining")
    if g.name == "abelian1":
        return LieRep(g, [Matrix(f, [[1]])], name="defining")
    raise LieError(f"no defining representation wired for {g.name}")


def rep_adjoint(g):
    """Adjoint representation: theta(x)y = [x, y]; columns are brackets."""
    mats = []
    for i in range(g.dim):
        cols = [g.bracket_basis(i, j) for j in range(g.dim)]
        mats.append(Matrix.from_columns(g.field, cols, nrows=g.dim))
    return LieRep(g, mats, name="adjoint")


def rep_trivial(g, m):
    """Everything acts by zero on an m-dimensional space."""
    if m < 1:
        raise LieError("trivial representation needs dimension >= 1")
    return LieRep(g, [Matrix.zero(g.field, m, m)] * g.dim, name=f"trivial{m}")


def rep_direct_sum(r1, r2):
    """Block-diagonal sum; both summands must be over the same algebra."""
    if not r1.lie.structurally_equal(r2.lie):
        raise LieError("direct sum of representations of different algebras")
    f = r1.lie.field
    mats = []
    for a, b in zip(r1.matrices, r2.matrices):
        top = a.hstack(Matrix.zero(f, r1.dim, r2.dim))
        bot = Matrix.zero(f, r2.dim, r1.dim).hstack(b)
        mats.append(top.vstack(bot))
    return LieRep(r1.lie, mats, name=f"{r1.name}+{r2.name}")


def det_theta(rep, x):
    """det(theta(x)) for a coordinate vector x — the determinant cut."""
    return det(rep.apply(x))
