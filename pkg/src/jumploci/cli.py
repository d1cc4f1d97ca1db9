"""Command-line front end.

Every subcommand reads JSON (a file path or an inline ``{...}`` literal via
--input), runs one operation, and reports either human-readable lines or,
with --json, a machine-readable document.  Exit codes: 0 when every asserted
property holds, 1 when a property fails (the report names it), 2 for
malformed input or an unknown subcommand / scenario name.
"""

import argparse
import json
import sys

from .aomoto import AomotoError, build_aomoto, depth_gap, resonance_membership
from .cdga import CdgaError, tensor_product_with_inclusions
from .flatconn import (FlatConnection, FlatConnError, NotFlatError,
                       brute_force_flat, f1_membership, lex_index,
                       mc_residual, pi_membership, pullback,
                       tangent_dimension)
from .grouprep import (GroupError, rep_check, tangent_dimension_rep,
                       twisted_cohomology)
from .holonomy import (HolonomyError, evaluate_relation,
                       holonomy_presentation, relation_check)
from .liealg import LieError, build_sl, rep_adjoint, rep_defining, \
    rep_direct_sum, rep_trivial
from .linalg import LinalgError
from .models import build_compact_curve
from .scalars import GF, QQ, ScalarError, field_tag
from .scenarios import (ScenarioError, describe_scenarios, run_all,
                        run_scenario, scenario_names)
from .serialize import (SerializeError, connection_from_json,
                        connection_to_json, decode_matrix, decode_scalar,
                        encode_scalar, group_from_json, group_rep_from_json,
                        lie_from_json, presentation_from_json,
                        presentation_to_json, resolve_lie, resolve_model,
                        resolve_morphism, resolve_rep)


class CliInputError(ValueError):
    pass


MALFORMED = (CliInputError, SerializeError, ScenarioError, ScalarError,
             CdgaError, LieError, FlatConnError, HolonomyError, AomotoError,
             GroupError, LinalgError, json.JSONDecodeError, OSError,
             KeyError, TypeError)


def parse_field(text):
    if text in (None, "", "q"):
        return QQ
    if text == "f3":
        return GF(3)
    if text == "f5":
        return GF(5)
    if text.startswith("fp:"):
        try:
            p = int(text[3:])
        except ValueError:
            raise CliInputError(f"bad prime in field spec {text!r}")
        return GF(p)
    raise CliInputError(f"unknown field {text!r} (want q, f3, f5, or fp:P)")


def load_input(args, required=True):
    """--input accepts a file path or an inline JSON literal."""
    raw = args.input
    if raw is None:
        if required:
            raise CliInputError("this subcommand needs --input")
        return None
    text = raw.strip()
    if text[:1] not in ("{", "[", '"'):
        with open(raw, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliInputError(f"input is not valid JSON: {exc}")


def _connection_and_twist(f, obj):
    """A connection plus an optional "theta" representation spec; defaults
    to the defining representation of the connection's own Lie algebra."""
    body = obj["connection"] if isinstance(obj, dict) and "connection" in obj \
        else obj
    conn = connection_from_json(f, body)
    spec = obj.get("theta") if isinstance(obj, dict) else None
    theta = resolve_rep(f, spec) if spec else rep_defining(conn.lie)
    return conn, theta


# ------------------------------------------------------------ subcommands

def cmd_validate(args, f):
    obj = load_input(args)
    if not isinstance(obj, dict):
        raise CliInputError("expected a JSON object")
    problems = []
    extra = {}
    if ("normals" in obj or "mult" in obj or "top_degree" in obj
            or "model" in obj):
        kind = "model"
        model = _model_arg(f, obj)
        problems = model.validate()
        extra["dims"] = list(model.dims())
    elif "relators" in obj:
        kind = "group"
        try:
            group = group_from_json(obj)
            extra["generators"] = list(group.generators)
        except GroupError as exc:
            problems = [str(exc)]
    elif "group" in obj and "matrices" in obj:
        kind = "group-representation"
        try:
            rho = group_rep_from_json(f, obj)
            ok, bad = rep_check(rho)
            if not ok:
                problems = [f"relator {i} is not satisfied" for i in bad]
        except GroupError as exc:
            problems = [str(exc)]
    elif "coeffs" in obj:
        kind = "connection"
        conn = connection_from_json(f, obj)
        extra["shape"] = list(conn.coeffs.shape)
    elif "lie" in obj and "matrices" in obj:
        kind = "lie-representation"
        try:
            resolve_rep(f, obj)
        except LieError as exc:
            problems = [str(exc)]
    elif "relations" in obj:
        kind = "presentation"
        try:
            presentation_from_json(f, obj)
        except HolonomyError as exc:
            problems = [str(exc)]
    elif "brackets" in obj or ("dim" in obj and "basis" in obj):
        kind = "lie-algebra"
        lie = lie_from_json(f, obj)
        problems = lie.validate()
    else:
        raise CliInputError(
            "unrecognized document; expected a model, Lie algebra, "
            "representation, connection, presentation, group, or group "
            "representation")
    payload = {"kind": kind, "valid": not problems, "problems": problems}
    payload.update(extra)
    lines = [f"{kind}: {'valid' if not problems else 'INVALID'}"]
    lines += [f"  problem: {p}" for p in problems]
    return (0 if not problems else 1), payload, lines


def _model_arg(f, obj):
    if isinstance(obj, dict) and "model" in obj:
        return resolve_model(f, obj["model"])
    return resolve_model(f, obj)


def cmd_cohomology(args, f):
    obj = load_input(args)
    model = _model_arg(f, obj)
    betti = [model.betti(i) for i in range(model.top_degree + 1)]
    euler = sum((-1) ** i * b for i, b in enumerate(betti))
    payload = {"model": model.name, "betti": betti, "euler": euler}
    lines = [f"model {model.name}: betti = {tuple(betti)}, euler = {euler}"]
    return 0, payload, lines


def cmd_mc_check(args, f):
    obj = load_input(args)
    conn = connection_from_json(f, obj)
    res = mc_residual(conn)
    nonzero = {str(i): encode_scalar(f, v) for i, v in enumerate(res)
               if not f.is_zero(v)}
    flat = not nonzero
    payload = {"flat": flat, "nonzero_residual": nonzero}
    if flat:
        lines = ["flat: the Maurer-Cartan residual vanishes"]
    else:
        lines = ["NOT flat; nonzero residual coordinates:"]
        lines += [f"  [{i}] = {v}" for i, v in nonzero.items()]
    return (0 if flat else 1), payload, lines


def cmd_f1(args, f):
    obj = load_input(args)
    conn = connection_from_json(f, obj)
    r = f1_membership(conn)
    payload = {"member": r.member, "reason": r.reason}
    if r.eta is not None:
        payload["eta"] = [encode_scalar(f, v) for v in r.eta]
        payload["x"] = [encode_scalar(f, v) for v in r.x]
    lines = [("member of the rank-one locus" if r.member
              else "NOT in the rank-one locus") + f": {r.reason}"]
    return (0 if r.member else 1), payload, lines


def cmd_pi(args, f):
    obj = load_input(args)
    conn, theta = _connection_and_twist(f, obj)
    r = pi_membership(conn, theta)
    payload = {"member": r.member, "reason": r.reason}
    if r.det_value is not None:
        payload["det"] = encode_scalar(f, r.det_value)
    lines = [("member of the determinant cut" if r.member
              else "NOT in the determinant cut") + f": {r.reason}"]
    return (0 if r.member else 1), payload, lines


def cmd_pullback(args, f):
    obj = load_input(args)
    if "morphism" not in obj or "connection" not in obj:
        raise CliInputError('expected {"morphism": ..., "connection": ...}')
    phi = resolve_morphism(f, obj["morphism"])
    conn = connection_from_json(f, obj["connection"])
    out = pullback(phi, conn)
    payload = connection_to_json(out)
    lines = [f"pullback onto {out.cdga.name}:"]
    lines += ["  " + "  ".join(encode_scalar(f, v) for v in row)
              for row in out.coeffs.rows]
    return 0, payload, lines


def cmd_tangent(args, f):
    obj = load_input(args)
    if isinstance(obj, dict) and "group" in obj:
        rho = group_rep_from_json(f, obj)
        ok, bad = rep_check(rho)
        if not ok:
            lines = [f"representation does not satisfy relators {bad}"]
            return 1, {"satisfied": False, "failing_relators": bad}, lines
        t = tangent_dimension_rep(rho)
        payload = {"cocycle_dim": t.cocycle_dim,
                   "coboundary_dim": t.coboundary_dim, "betti": t.betti}
        lines = [f"tangent dimension (adjoint cocycles) = {t.cocycle_dim} "
                 f"(coboundaries {t.coboundary_dim}, difference {t.betti})"]
        return 0, payload, lines
    conn = connection_from_json(f, obj)
    dim = tangent_dimension(conn)
    return 0, {"tangent_dimension": dim}, [f"tangent dimension = {dim}"]


def cmd_brute_force(args, f):
    obj = load_input(args)
    if "cdga" not in obj or "lie" not in obj:
        raise CliInputError('expected {"cdga": ..., "lie": ...}')
    model = resolve_model(f, obj["cdga"])
    lie = resolve_lie(f, obj["lie"])
    p = getattr(f, "p", None)
    if p is None:
        raise CliInputError("brute force needs a prime field (--field f3 "
                            "or similar)")
    flats = brute_force_flat(model, lie, jobs=args.jobs)
    candidates = p ** (model.dim(1) * lie.dim)
    payload = {"field": field_tag(f), "candidates": candidates,
               "count": len(flats),
               "solution_indices": [lex_index(c, p) for c in flats]}
    lines = [f"scanned {candidates} candidates over {field_tag(f)}: "
             f"{len(flats)} flat connections"]
    return 0, payload, lines


def cmd_holonomy(args, f):
    obj = load_input(args)
    model = _model_arg(f, obj)
    pres = holonomy_presentation(model)
    payload = presentation_to_json(pres)
    return 0, payload, pres.describe().split("\n")


def cmd_relation_check(args, f):
    obj = load_input(args)
    if "presentation" in obj:
        pres = presentation_from_json(f, obj["presentation"])
    elif "model" in obj:
        pres = holonomy_presentation(resolve_model(f, obj["model"]))
    else:
        raise CliInputError('expected a "presentation" or a "model" key')
    if "lie" not in obj or "assignment" not in obj:
        raise CliInputError('expected "lie" and "assignment" keys')
    lie = resolve_lie(f, obj["lie"])
    assignment = decode_matrix(f, obj["assignment"],
                               shape=(len(pres.generators), lie.dim))
    rows = [assignment.row(k) for k in range(assignment.nrows)]
    failing = [i for i, r in enumerate(pres.relations)
               if not lie.is_zero_vector(evaluate_relation(r, lie, rows))]
    ok = not failing
    assert ok == relation_check(pres, lie, assignment)
    payload = {"satisfied": ok, "failing_relations": failing}
    lines = ["all relations hold" if ok
             else f"relations {failing} fail at this assignment"]
    return (0 if ok else 1), payload, lines


def cmd_aomoto_betti(args, f):
    obj = load_input(args)
    conn, theta = _connection_and_twist(f, obj)
    comp = build_aomoto(conn, theta)
    betti = list(comp.betti_all())
    payload = {"betti": betti, "euler": comp.euler()}
    lines = [f"twisted betti numbers = {tuple(betti)}, "
             f"euler = {comp.euler()}"]
    return 0, payload, lines


def cmd_resonance(args, f):
    obj = load_input(args)
    conn, theta = _connection_and_twist(f, obj)
    degree = obj.get("degree", 1)
    depth = obj.get("depth", 1)
    member = resonance_membership(conn, theta, degree, depth)
    payload = {"member": member, "degree": degree, "depth": depth}
    lines = [(f"member of the degree-{degree} depth-{depth} resonance locus"
              if member else
              f"NOT in the degree-{degree} depth-{depth} resonance locus")]
    return (0 if member else 1), payload, lines


def _default_depth_gap(f):
    """The product-of-curves configuration: genus-2 base included into its
    product with a genus-1 factor, trivial + adjoint sl2 coefficients, the
    standard (E, F, F, E) flat connection, and the first one-form of the
    second factor as the extra closed direction."""
    left = build_compact_curve(f, 2)
    right = build_compact_curve(f, 1)
    _, incl_l, incl_r = tensor_product_with_inclusions(left, right)
    sl2 = build_sl(f, 2)
    theta = rep_direct_sum(rep_trivial(sl2, 1), rep_adjoint(sl2))
    E, F = sl2.basis_vector("E12"), sl2.basis_vector("E21")
    conn = FlatConnection.from_rows(left, sl2, [E, F, F, E])
    eta = incl_r.map(1).apply([f.one] + [f.zero] * (right.dim(1) - 1))
    return incl_l, theta, conn, eta


def cmd_depth_gap(args, f):
    obj = load_input(args, required=False)
    if obj is None:
        phi, theta, conn, eta = _default_depth_gap(f)
    else:
        for key in ("morphism", "theta", "connection", "eta"):
            if key not in obj:
                raise CliInputError(f'missing key "{key}"')
        phi = resolve_morphism(f, obj["morphism"])
        theta = resolve_rep(f, obj["theta"])
        conn = connection_from_json(f, obj["connection"])
        eta = [decode_scalar(f, v) for v in obj["eta"]]
    report = depth_gap(phi, theta, conn, eta)
    payload = report.to_dict(f)
    lines = [f"s = {report.base_betti}, r = {report.target_betti}"]
    for c in payload["checks"]:
        lines.append(f"  [{' ok ' if c['ok'] else 'FAIL'}] {c['name']}")
    return (0 if report.holds else 1), payload, lines


def cmd_fox(args, f):
    obj = load_input(args)
    rho = group_rep_from_json(f, obj)
    ok, bad = rep_check(rho)
    if not ok:
        lines = [f"representation does not satisfy relators {bad}"]
        return 1, {"satisfied": False, "failing_relators": bad}, lines
    twist = obj.get("twist", "defining")
    tb = twisted_cohomology(rho, twist)
    payload = {"twist": twist, "b0": tb.b0, "b1": tb.b1, "b2": tb.b2,
               "euler": tb.euler()}
    lines = [f"twisted betti numbers ({twist}): b0 = {tb.b0}, "
             f"b1 = {tb.b1}, b2 = {tb.b2}; euler = {tb.euler()}"]
    return 0, payload, lines


def cmd_rep_check(args, f):
    obj = load_input(args)
    if "group" in obj:
        rho = group_rep_from_json(f, obj)
        ok, bad = rep_check(rho)
        payload = {"satisfied": ok, "failing_relators": bad}
        lines = ["all relators are satisfied" if ok
                 else f"relators {bad} are NOT satisfied"]
        return (0 if ok else 1), payload, lines
    if "lie" in obj:
        try:
            rep = resolve_rep(f, obj)
        except LieError as exc:
            return 1, {"satisfied": False, "problems": [str(exc)]}, [str(exc)]
        payload = {"satisfied": True, "dim": rep.dim}
        return 0, payload, ["bracket compatibility holds"]
    raise CliInputError("expected a group or Lie representation document")


def cmd_scenario(args, f):
    name = args.name
    seed = args.seed if args.seed is not None else 0
    field = parse_field(args.field) if args.field else None
    if name == "list":
        payload = [{"name": n, "description": d}
                   for n, d in describe_scenarios()]
        lines = [f"{n:26} {d}" for n, d in describe_scenarios()]
        return 0, payload, lines
    if name == "all":
        reports = run_all(seed=seed, jobs=args.jobs)
        payload = [r.to_dict() for r in reports]
        lines = []
        for r in reports:
            lines += r.lines()
        passed = sum(r.holds for r in reports)
        lines.append(f"{passed}/{len(reports)} scenarios hold")
        return (0 if passed == len(reports) else 1), payload, lines
    report = run_scenario(name, seed=seed, jobs=args.jobs, field=field)
    return (0 if report.holds else 1), report.to_dict(), report.lines()


HANDLERS = {
    "validate": cmd_validate,
    "cohomology": cmd_cohomology,
    "mc-check": cmd_mc_check,
    "f1": cmd_f1,
    "pi": cmd_pi,
    "pullback": cmd_pullback,
    "tangent": cmd_tangent,
    "brute-force": cmd_brute_force,
    "holonomy": cmd_holonomy,
    "relation-check": cmd_relation_check,
    "aomoto-betti": cmd_aomoto_betti,
    "resonance": cmd_resonance,
    "depth-gap": cmd_depth_gap,
    "fox": cmd_fox,
    "rep-check": cmd_rep_check,
    "scenario": cmd_scenario,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="FILE",
                        help="JSON file path, or an inline {...} literal")
    common.add_argument("--field", metavar="F",
                        help="q (default), f3, f5, or fp:P for an odd prime")
    common.add_argument("--json", action="store_true",
                        help="emit a machine-readable report")
    common.add_argument("--seed", type=int, metavar="N",
                        help="seed for sampled checks")
    common.add_argument("--jobs", type=int, default=1, metavar="K",
                        help="worker count for the exhaustive searches")
    parser = argparse.ArgumentParser(
        prog="jumploci",
        description="Flat connections, jump loci, and holonomy on finite "
                    "commutative differential graded models.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "validate": "check a JSON document against its schema and axioms",
        "cohomology": "betti numbers of a model",
        "mc-check": "is a connection flat (Maurer-Cartan residual zero)?",
        "f1": "rank-one locus membership",
        "pi": "determinant-cut membership",
        "pullback": "push a connection along a model inclusion",
        "tangent": "linearized solution-space dimension at a flat point",
        "brute-force": "exhaustive flat census over a prime field",
        "holonomy": "degree-1/2 presentation of a model",
        "relation-check": "do generator images kill every relation?",
        "aomoto-betti": "twisted betti numbers of a flat connection",
        "resonance": "resonance-locus membership at chosen degree/depth",
        "depth-gap": "depth increase along a product inclusion",
        "fox": "twisted group cohomology via Fox calculus",
        "rep-check": "relator satisfaction / bracket compatibility",
        "scenario": "run a named end-to-end scenario (see: scenario list)",
    }
    for name in HANDLERS:
        sp = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "scenario":
            sp.add_argument("name", nargs="?", default="list",
                            help="a catalog name, 'all', or 'list'")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = HANDLERS[args.command]
    try:
        f = parse_field(args.field)
        code, payload, lines = handler(args, f)
    except NotFlatError as exc:
        residual = exc.args[0] if exc.args else []
        print("connection is not flat; residual coordinates: "
              + ", ".join(str(v) for v in residual), file=sys.stderr)
        return 1
    except MALFORMED as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
