"""Seeded random generation of connections, Lie elements, and group reps.

Every sampler takes an explicit ``random.Random`` instance so callers can
freeze seeds.  Flat-connection samplers are constructive (no rejection on
the flatness equation itself): they build from families that satisfy the
Maurer-Cartan equation identically, then double-check and raise if the
construction ever drifts.
"""

from fractions import Fraction

from .flatconn import FlatConnection, is_flat
from .grouprep import GroupRep
from .liealg import det_theta, sl_coordinates, sl_root_index
from .linalg import Matrix, det, invert


class SamplingError(RuntimeError):
    pass


# ---------------------------------------------------------------- scalars

def rand_scalar(rng, field, span=4):
    if field.characteristic == 0:
        return Fraction(rng.randint(-span, span))
    return rng.randrange(field.p)


def rand_nonzero(rng, field, span=4):
    while True:
        v = rand_scalar(rng, field, span)
        if not field.is_zero(v):
            return v


def rand_vector(rng, field, n, span=4):
    return [rand_scalar(rng, field, span) for _ in range(n)]


def rand_matrix(rng, field, nrows, ncols, span=4):
    return Matrix(field,
                  [rand_vector(rng, field, ncols, span) for _ in range(nrows)])


def rand_invertible(rng, field, n, span=3, tries=128):
    for _ in range(tries):
        m = rand_matrix(rng, field, n, n, span)
        if not field.is_zero(det(m)):
            return m
    raise SamplingError("no invertible matrix found (astronomically unlikely)")


def rand_unimodular(rng, field, n, steps=5, span=3):
    """Product of elementary shears: always determinant one."""
    acc = Matrix.identity(field, n)
    for _ in range(steps):
        i = rng.randrange(n)
        j = rng.randrange(n - 1)
        if j >= i:
            j += 1
        rows = Matrix.identity(field, n).to_lists()
        rows[i][j] = field.coerce(rand_scalar(rng, field, span))
        acc = acc @ Matrix(field, rows)
    return acc


def rand_borel(rng, field, span=3):
    """Upper-triangular 2x2 with determinant one."""
    t = rand_nonzero(rng, field, span)
    u = rand_scalar(rng, field, span)
    return Matrix(field, [[t, u], [field.zero, field.inv(t)]])


# ------------------------------------------------------------ connections

def rand_lie_element(rng, lie, span=4):
    return rand_vector(rng, lie.field, lie.dim, span)


def random_connection(rng, cdga, lie, span=4):
    """Arbitrary coefficient rows — typically not flat."""
    rows = [rand_lie_element(rng, lie, span) for _ in range(cdga.dim(1))]
    return FlatConnection.from_rows(cdga, lie, rows)


def rand_closed_coefficients(rng, cdga, span=4, nonzero=False):
    """Random coefficient vector of a closed one-form (may be zero unless
    nonzero=True)."""
    basis = cdga.cocycles(1)
    f = cdga.field
    if not basis:
        if nonzero:
            raise SamplingError(f"{cdga.name} has no closed one-forms")
        return [f.zero] * cdga.dim(1)
    for _ in range(64):
        out = [f.zero] * cdga.dim(1)
        for vec in basis:
            c = rand_scalar(rng, f, span)
            if f.is_zero(c):
                continue
            for k, v in enumerate(vec):
                out[k] = f.add(out[k], f.mul(c, v))
        if not nonzero or any(not f.is_zero(v) for v in out):
            return out
    raise SamplingError("could not draw a nonzero closed one-form")


def flat_rank_one(rng, cdga, lie, span=4):
    """eta (x) x with eta closed: flat because [x, x] = 0 and d(eta) = 0."""
    eta = rand_closed_coefficients(rng, cdga, span, nonzero=True)
    x = rand_lie_element(rng, lie, span)
    f = cdga.field
    rows = [[f.mul(e, xi) for xi in x] for e in eta]
    return FlatConnection.from_rows(cdga, lie, rows)


def _abelian_subalgebras(rng, lie, span):
    """A few coordinate bases of abelian subalgebras, by family."""
    out = []
    if lie.name.startswith("sl") and getattr(lie, "matrix_size", None):
        n = lie.matrix_size
        cartan_start = lie.dim - (n - 1)
        out.append([lie.basis_vector(cartan_start + i) for i in range(n - 1)])
        out.append([lie.basis_vector(sl_root_index(lie, 1, j))
                    for j in range(2, n + 1)])
    elif lie.is_abelian():
        out.append([lie.basis_vector(i) for i in range(lie.dim)])
    out.append([rand_lie_element(rng, lie, span)])
    return out


def flat_abelian(rng, cdga, lie, span=4):
    """Rows in a fixed abelian subalgebra, each coefficient column closed.

    Brackets between rows vanish, and the exterior-derivative part collapses
    to one closed one-form per subalgebra generator.
    """
    sub = rng.choice(_abelian_subalgebras(rng, lie, span))
    f = cdga.field
    n1 = cdga.dim(1)
    rows = [[f.zero] * lie.dim for _ in range(n1)]
    for u in sub:
        col = rand_closed_coefficients(rng, cdga, span)
        for k in range(n1):
            c = col[k]
            if f.is_zero(c):
                continue
            for i, ui in enumerate(u):
                rows[k][i] = f.add(rows[k][i], f.mul(c, ui))
    return FlatConnection.from_rows(cdga, lie, rows)


def _paired_rows(rng, cdga, lie, span):
    """Rows for curve-like models whose degree-2 obstruction is the sum of
    handle-pair brackets: swapped pairs cancel, leftovers commute."""
    n1 = cdga.dim(1)
    has_extra = cdga.name.startswith("surface")
    g = (n1 - 1) // 2 if has_extra else n1 // 2
    f = cdga.field
    rows = []
    x = rand_lie_element(rng, lie, span)
    y = rand_lie_element(rng, lie, span)
    for i in range(g // 2 * 2):
        rows += [list(x), list(y)] if i % 2 == 0 else [list(y), list(x)]
    if g % 2 == 1:
        z = rand_lie_element(rng, lie, span)
        c = rand_scalar(rng, f, span)
        rows += [list(z), [f.mul(c, zi) for zi in z]]
    if has_extra:
        rows.append([f.zero] * lie.dim)
    return rows


def flat_pair_swap(rng, cdga, lie, span=4):
    return FlatConnection.from_rows(cdga, lie,
                                    _paired_rows(rng, cdga, lie, span))


def sample_flat(rng, cdga, lie, span=4, strategy=None):
    """A random flat connection on a recognized model family.

    Strategies: "rank_one" and "abelian" work on every model here; "swap"
    needs at least two handle pairs (compact curve or surface model,
    genus >= 2); "free" means arbitrary rows and applies only when the
    model has no degree-2 part at all.  The result is re-checked.
    """
    name = cdga.name
    if strategy is None:
        opts = ["rank_one", "abelian"]
        if name.startswith(("compact_curve", "surface")):
            n1 = cdga.dim(1)
            g = (n1 - 1) // 2 if name.startswith("surface") else n1 // 2
            if g >= 2:
                opts.append("swap")
        if cdga.dim(2) == 0:
            opts.append("free")
        strategy = rng.choice(opts)
    if strategy == "rank_one":
        conn = flat_rank_one(rng, cdga, lie, span)
    elif strategy == "abelian":
        conn = flat_abelian(rng, cdga, lie, span)
    elif strategy == "swap":
        conn = flat_pair_swap(rng, cdga, lie, span)
    elif strategy == "free":
        if cdga.dim(2) != 0:
            raise SamplingError(
                f"'free' sampling needs an empty degree 2, {name} has "
                f"dimension {cdga.dim(2)} there")
        conn = random_connection(rng, cdga, lie, span)
    else:
        raise SamplingError(f"unknown strategy {strategy!r}")
    if not is_flat(conn):
        raise SamplingError(
            f"strategy {strategy} produced a non-flat connection on {name}")
    return conn


def surface_witness(cdga, lie):
    """Flat surface-model connection of tensor rank three.

    The first handle pair carries the two simple root vectors E12 and E23 of
    sl(n >= 3) and the extra one-form carries -E13.  Flat because
    [E12, E23] = E13 while E13 commutes with both rows.
    """
    if not cdga.name.startswith("surface"):
        raise SamplingError("witness lives on a surface model")
    if not (lie.name.startswith("sl") and getattr(lie, "matrix_size", 0) >= 3):
        raise SamplingError("witness needs sl(n) with n >= 3")
    f = cdga.field
    n1 = cdga.dim(1)
    rows = [[f.zero] * lie.dim for _ in range(n1)]
    rows[0][sl_root_index(lie, 1, 2)] = f.one
    rows[1][sl_root_index(lie, 2, 3)] = f.one
    rows[n1 - 1][sl_root_index(lie, 1, 3)] = f.neg(f.one)
    conn = FlatConnection.from_rows(cdga, lie, rows)
    if not is_flat(conn):
        raise SamplingError("witness construction went wrong")
    return conn


# ------------------------------------------------- determinant-cut points

def singular_lie_element(rng, rep, span=4, tries=256):
    """Nonzero x with det theta(x) = 0, or raise if none can be found.

    For a defining sl(n) action this conjugates a strictly upper-triangular
    (hence nilpotent) matrix; for sol2 the determinant cut is exactly the
    span of e; adjoint actions are singular everywhere.
    """
    lie, f = rep.lie, rep.lie.field
    for _ in range(tries):
        x = _singular_candidate(rng, rep, span)
        if all(f.is_zero(c) for c in x):
            continue
        if f.is_zero(det_theta(rep, x)):
            return x
    raise SamplingError(
        f"found no nonzero singular element for {rep.name} on {lie.name}")


def _singular_candidate(rng, rep, span):
    lie, f = rep.lie, rep.lie.field
    if lie.name.startswith("sl") and getattr(lie, "matrix_size", None):
        n = lie.matrix_size
        if rep.dim == n and rep.name == "defining":
            nilp = [[f.zero] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    nilp[i][j] = rand_scalar(rng, f, span)
            p = rand_unimodular(rng, f, n, steps=4, span=span)
            return sl_coordinates(lie, p @ Matrix(f, nilp) @ invert(p))
        return rand_lie_element(rng, lie, span)
    if lie.name == "sol2":
        return [f.zero, rand_nonzero(rng, f, span)]
    return rand_lie_element(rng, lie, span)


def sample_pi_element(rng, cdga, rep, span=4):
    """Closed one-form tensor a determinant-cut Lie element: a rank-one flat
    connection that the determinant cut keeps."""
    eta = rand_closed_coefficients(rng, cdga, span, nonzero=True)
    x = singular_lie_element(rng, rep, span)
    f = cdga.field
    rows = [[f.mul(e, xi) for xi in x] for e in eta]
    return FlatConnection.from_rows(cdga, rep.lie, rows)


# -------------------------------------------------------------- group reps

def standard_shear_pair(field):
    """The two unit shears generating SL2(Z): [[1,1],[0,1]], [[1,0],[1,1]]."""
    a = Matrix(field, [[1, 1], [0, 1]])
    b = Matrix(field, [[1, 0], [1, 1]])
    return a, b


def _commuting_pair(rng, field, target, span):
    """Two commuting matrices in the target group."""
    kind = rng.choice(["powers", "diagonal"])
    if target == "Borel":
        if kind == "powers":
            m = rand_borel(rng, field, span)
            return _power(m, rng.randint(-3, 3)), _power(m, rng.randint(-3, 3))
        t = rand_nonzero(rng, field, span)
        s = rand_nonzero(rng, field, span)
        d1 = Matrix(field, [[t, field.zero], [field.zero, field.inv(t)]])
        d2 = Matrix(field, [[s, field.zero], [field.zero, field.inv(s)]])
        return d1, d2
    if kind == "powers":
        m = rand_unimodular(rng, field, 2, span=span)
        return _power(m, rng.randint(-3, 3)), _power(m, rng.randint(-3, 3))
    t = rand_nonzero(rng, field, span)
    s = rand_nonzero(rng, field, span)
    d1 = Matrix(field, [[t, field.zero], [field.zero, field.inv(t)]])
    d2 = Matrix(field, [[s, field.zero], [field.zero, field.inv(s)]])
    p = rand_unimodular(rng, field, 2, span=span)
    pinv = invert(p)
    return p @ d1 @ pinv, p @ d2 @ pinv


def _power(m, k):
    f = m.field
    acc = Matrix.identity(f, m.nrows)
    base = m
    if k < 0:
        base = invert(m)
        k = -k
    for _ in range(k):
        acc = acc @ base
    return acc


def sample_group_rep(rng, group, field, target="SL", span=3):
    """A representation satisfying the group's relators.

    Free groups take arbitrary tuples.  Surface groups get each handle pair
    mapped to a commuting pair (so every commutator dies), or — half the
    time at genus two — a swapped tuple (X, Y, Y, X) whose two commutators
    cancel.
    """
    n = group.n_generators
    if not group.relators:
        mats = [_rand_target(rng, field, target, span) for _ in range(n)]
        return GroupRep(group, target, mats)
    if n % 2 == 0 and group.name.startswith("surface"):
        g = n // 2
        if g == 2 and rng.random() < 0.5:
            x = _rand_target(rng, field, target, span)
            y = _rand_target(rng, field, target, span)
            return GroupRep(group, target, [x, y, y, x])
        mats = []
        for _ in range(g):
            a, b = _commuting_pair(rng, field, target, span)
            mats += [a, b]
        return GroupRep(group, target, mats)
    raise SamplingError(f"no sampling recipe for {group.name}")


def _rand_target(rng, field, target, span):
    if target == "SL":
        return rand_unimodular(rng, field, 2, span=span)
    if target == "Borel":
        return rand_borel(rng, field, span)
    return rand_invertible(rng, field, 2, span=span)
