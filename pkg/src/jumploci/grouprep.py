"""Finitely presented groups, matrix representations, Fox calculus.

Words are freely reduced tuples of signed 1-based generator indices
(+i for x_i, -i for its inverse), parsed from whitespace-separated tokens
like ``"a b a^-1 b^-1"``.

For a representation rho the presentation 2-complex gives a three-term
cochain complex with coefficients in V:

    D0 : V -> V^n,      v |-> ((rho(x_i) - 1) v)_i
    D1 : V^n -> V^m,    (v_i) |-> (sum_i  rho(dr_j/dx_i) v_i)_j

where dr/dx is the Fox derivative (d(uw)/dx = du/dx + u dw/dx, dx/dx = 1,
d(x^-1)/dx = -x^-1) evaluated through rho.  The fundamental identity
sum_i dr/dx_i (x_i - 1) = r - 1 makes D1 D0 = 0 whenever rho kills the
relators.  Twisted Betti numbers are b0 = dim ker D0,
b1 = dim ker D1 - rank D0, b2 = m dim V - rank D1.

Degree-2 jump-locus membership is only meaningful when the presentation
complex is aspherical; the builders for free and surface groups mark it so.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Matrix, det, invert, kernel_basis, rank, vstack_all
from .scalars import same_field


class GroupError(ValueError):
    pass


def parse_word(generators, text):
    """Parse "a b a^-1" into a freely reduced signed-index tuple."""
    index = {g: i + 1 for i, g in enumerate(generators)}
    out = []
    for token in text.split():
        if token.endswith("^-1"):
            name, sign = token[:-3], -1
        else:
            name, sign = token, 1
        if name not in index:
            raise GroupError(f"unknown generator {name!r}")
        letter = sign * index[name]
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def free_reduce(word):
    out = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


class FpGroup:
    def __init__(self, generators, relators, aspherical=False, name=""):
        self.generators = list(generators)
        if len(set(self.generators)) != len(self.generators):
            raise GroupError("duplicate generator names")
        self.relators = []
        for r in relators:
            if isinstance(r, str):
                r = parse_word(self.generators, r)
            else:
                r = free_reduce(tuple(r))
            n = len(self.generators)
            if any(not 1 <= abs(x) <= n for x in r):
                raise GroupError("relator letter out of range")
            self.relators.append(r)
        self.aspherical = bool(aspherical)
        self.name = name or "group"

    @property
    def n_generators(self):
        return len(self.generators)

    def euler_characteristic(self):
        """Of the presentation 2-complex: 1 - #generators + #relators."""
        return 1 - len(self.generators) + len(self.relators)

    def word(self, text):
        return parse_word(self.generators, text)

    def __repr__(self):
        return (f"FpGroup({self.name}, {len(self.generators)} gens, "
                f"{len(self.relators)} rels)")


def free_group(n, name=None):
    if n < 1:
        raise GroupError("free group needs n >= 1")
    return FpGroup([f"x{i}" for i in range(1, n + 1)], [], aspherical=True,
                   name=name or f"free_{n}")


def surface_group(g, name=None):
    """Fundamental group of the closed orientable genus-g surface."""
    if g < 1:
        raise GroupError("surface group needs genus >= 1")
    gens = []
    for i in range(1, g + 1):
        gens += [f"a{i}", f"b{i}"]
    relator = " ".join(
        f"a{i} b{i} a{i}^-1 b{i}^-1" for i in range(1, g + 1))
    return FpGroup(gens, [relator], aspherical=True,
                   name=name or f"surface_{g}")


TARGETS = ("GL", "SL", "Borel")


class GroupRep:
    """One invertible matrix per generator; target constrains the image.

    GL: invertible.  SL: determinant one.  Borel: upper-triangular 2x2 with
    determinant one.
    """

    def __init__(self, group, target, matrices, name=""):
        if target not in TARGETS:
            raise GroupError(f"unknown target {target!r}")
        if len(matrices) != group.n_generators:
            raise GroupError(
                f"{group.n_generators} generators but {len(matrices)} matrices")
        self.group = group
        self.target = target
        self.matrices = list(matrices)
        self.name = name or f"rep_{target}"
        shapes = {m.shape for m in self.matrices}
        if len(shapes) > 1:
            raise GroupError("inconsistent matrix sizes")
        self.field = self.matrices[0].field if self.matrices else None
        for m in self.matrices:
            same_field(self.field, m.field)
        (nr, nc), = shapes if shapes else {(0, 0)}
        if nr != nc:
            raise GroupError("representation matrices must be square")
        self.dim = nr
        f = self.field
        self.inverses = []
        for i, m in enumerate(self.matrices):
            inv = invert(m)
            if inv is None:
                raise GroupError(
                    f"matrix for {group.generators[i]} is singular")
            self.inverses.append(inv)
            if target in ("SL", "Borel"):
                d = det(m)
                if not f.is_zero(f.sub(d, f.one)):
                    raise GroupError(
                        f"matrix for {group.generators[i]} has det {d}, not 1")
            if target == "Borel":
                if self.dim != 2:
                    raise GroupError("Borel target means 2x2 matrices")
                if not f.is_zero(m[1, 0]):
                    raise GroupError(
                        f"matrix for {group.generators[i]} is not upper "
                        "triangular")

    def generator(self, i, sign=1):
        return self.matrices[i] if sign > 0 else self.inverses[i]

    def evaluate(self, word):
        """rho(word) for a signed-index tuple."""
        acc = Matrix.identity(self.field, self.dim)
        for letter in word:
            acc = acc @ self.generator(abs(letter) - 1, 1 if letter > 0 else -1)
        return acc

    def __repr__(self):
        return (f"GroupRep({self.group.name} -> {self.target}({self.dim}), "
                f"{self.name})")


def rep_check(rep):
    """(all relators satisfied, list of failing relator indices)."""
    f = rep.field
    bad = []
    ident = Matrix.identity(f, rep.dim)
    for j, r in enumerate(rep.group.relators):
        if rep.evaluate(r) != ident:
            bad.append(j)
    return (not bad), bad


def fixed_vector(rep):
    """(exists, witness): a nonzero simultaneously fixed vector, if any."""
    f = rep.field
    ident = Matrix.identity(f, rep.dim)
    stacked = vstack_all(f, [m - ident for m in rep.matrices], rep.dim)
    ker = kernel_basis(stacked)
    return bool(ker), (ker[0] if ker else None)


def fox_derivative(rep, word, i):
    """rho(d word / d x_{i+1}) — running prefix evaluation of the Fox rules."""
    f = rep.field
    acc = Matrix.zero(f, rep.dim, rep.dim)
    prefix = Matrix.identity(f, rep.dim)
    for letter in word:
        gen = abs(letter) - 1
        if letter > 0:
            if gen == i:
                acc = acc + prefix
            prefix = prefix @ rep.matrices[gen]
        else:
            prefix = prefix @ rep.inverses[gen]
            if gen == i:
                acc = acc - prefix
    return acc


def d0_matrix(rep):
    f = rep.field
    ident = Matrix.identity(f, rep.dim)
    return vstack_all(f, [m - ident for m in rep.matrices], rep.dim)


def d1_matrix(rep):
    """Fox Jacobian: one block row per relator, one block column per
    generator."""
    f = rep.field
    n, m = rep.group.n_generators, len(rep.group.relators)
    if m == 0:
        return Matrix.zero(f, 0, n * rep.dim)
    block_rows = []
    for r in rep.group.relators:
        blocks = [fox_derivative(rep, r, i) for i in range(n)]
        row = blocks[0]
        for b in blocks[1:]:
            row = row.hstack(b)
        block_rows.append(row)
    out = block_rows[0]
    for b in block_rows[1:]:
        out = out.vstack(b)
    return out


@dataclass
class TwistedBetti:
    b0: int
    b1: int
    b2: int

    def as_tuple(self):
        return (self.b0, self.b1, self.b2)

    def euler(self):
        return self.b0 - self.b1 + self.b2


def adjoint_rep(rep):
    """Compose with the adjoint action of the target group.

    SL: conjugation on trace-zero matrices in the build_sl basis order.
    Borel: conjugation on the upper-triangular trace-zero 2x2 matrices,
    basis (diag(1,-1), upper unit).  GL has no canonical choice here.
    """
    f = rep.field
    if rep.target == "SL":
        n = rep.dim
        basis = []
        pairs = [(i, j) for i in range(n) for j in range(n) if i < j]
        pairs += [(i, j) for i in range(n) for j in range(n) if i > j]
        for i, j in pairs:
            m = Matrix.zero(f, n, n).to_lists()
            m[i][j] = f.one
            basis.append(Matrix(f, m))
        for i in range(n - 1):
            m = Matrix.zero(f, n, n).to_lists()
            m[i][i] = f.one
            m[i + 1][i + 1] = f.neg(f.one)
            basis.append(Matrix(f, m))

        def coords(mat):
            out = [mat[i, j] for i, j in pairs]
            partial = f.zero
            for i in range(n - 1):
                partial = f.add(partial, mat[i, i])
                out.append(partial)
            return out
    elif rep.target == "Borel":
        basis = [Matrix(f, [[1, 0], [0, -1]]), Matrix(f, [[0, 1], [0, 0]])]

        def coords(mat):
            return [mat[0, 0], mat[0, 1]]
    else:
        raise GroupError("adjoint twist needs an SL or Borel target")

    def ad(g, ginv):
        cols = [coords(g @ b @ ginv) for b in basis]
        return Matrix.from_columns(f, cols, nrows=len(basis))

    mats = [ad(m, inv) for m, inv in zip(rep.matrices, rep.inverses)]
    return GroupRep(rep.group, "GL", mats, name=f"Ad({rep.name})")


def _resolve_twist(rep, twist):
    if twist == "defining":
        return rep
    if twist == "adjoint":
        return adjoint_rep(rep)
    raise GroupError(f"unknown twist {twist!r} (want defining or adjoint)")


def twisted_cohomology(rep, twist="defining"):
    """TwistedBetti of the presentation 2-complex with the given twist.

    Raises if the representation does not satisfy the relators.  Asserts the
    Fox fundamental identity in matrix form (D1 D0 = 0) as an internal
    consistency check.
    """
    ok, bad = rep_check(rep)
    if not ok:
        raise GroupError(f"relators {bad} are not satisfied")
    local = _resolve_twist(rep, twist)
    d0 = d0_matrix(local)
    d1 = d1_matrix(local)
    if d1.nrows and not (d1 @ d0).is_zero():
        raise GroupError("Fox identity violated — inconsistent input")
    n = rep.group.n_generators
    m = len(rep.group.relators)
    dv = local.dim
    r0, r1 = rank(d0), rank(d1)
    b0 = dv - r0
    b1 = (n * dv - r1) - r0
    b2 = m * dv - r1
    return TwistedBetti(b0, b1, b2)


def cv_membership(rep, i, depth, twist="defining"):
    """Jump-locus membership of the local system at degree i, depth >= 1.

    Degree 2 is only meaningful when the presentation complex is declared
    aspherical — otherwise this raises.
    """
    if i not in (0, 1, 2):
        raise GroupError("degree must be 0, 1, or 2")
    if depth < 1:
        raise GroupError("depth must be >= 1")
    if i == 2 and not rep.group.aspherical:
        raise GroupError(
            "degree-2 membership needs an aspherical presentation complex")
    b = twisted_cohomology(rep, twist=twist).as_tuple()
    return b[i] >= depth


@dataclass
class TangentReport:
    cocycle_dim: int    # dim Z^1 with adjoint coefficients
    coboundary_dim: int  # dim B^1
    betti: int           # dim Z^1 - dim B^1

    def as_tuple(self):
        return (self.cocycle_dim, self.coboundary_dim, self.betti)


def tangent_dimension_rep(rep):
    """Adjoint cocycle count at a representation: dim Z^1 = n dim(g) - rank
    of the adjoint Fox Jacobian.  Reported with dim B^1 and the difference."""
    ok, bad = rep_check(rep)
    if not ok:
        raise GroupError(f"relators {bad} are not satisfied")
    local = adjoint_rep(rep)
    d1 = d1_matrix(local)
    d0 = d0_matrix(local)
    n = rep.group.n_generators
    z1 = n * local.dim - rank(d1)
    b1 = rank(d0)
    return TangentReport(z1, b1, z1 - b1)
