"""``mq``: run library checks on a project file and print one JSON report.

Exit status is 0 on pass, 1 on a failure with a witness and 2 on a usage,
parse or unsupported-shape error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from .algebra import is_flat_morphism, validate_algebra, validate_morphism
from .cartesian import (
    PreconditionError,
    UnsupportedShape,
    cartesian_hull,
    certify_iso,
    coherator,
    hull_decomposition,
    hull_sum,
)
from .change import triangle_identities
from .linalg import DimensionError
from .project import ProjectError, ProjectFile, parse_project
from .quiver import (
    SubobjectFamily,
    check_subobject_family,
    generated_subobject,
    is_cartesian,
    regenerate_check,
    validate_quiver_and_monadquiver,
    validate_quiver_morphism,
    validate_umodule,
)
from .report import Check
from .vertex import adjunction_checks, projective_cover

COMMANDS = ("validate", "flat", "cartesian", "hull", "coherator", "adjcheck", "cover", "report")
DEFAULT_SEED = 20240601
EXIT = {"pass": 0, "fail": 1, "error": 2}


class UsageError(ValueError):
    pass


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def make_report(command, checks: list[Check], payload=None, status=None, error=None) -> dict:
    """Fold named checks into a report; a failing check contributes its witness."""
    checks = sorted(checks, key=lambda c: c.name)
    witnesses = [{"check": c.name, "witness": _jsonable(c.witness)} for c in checks if not c.ok]
    if status is None:
        status = "pass" if not witnesses else "fail"
    rep = {
        "command": command,
        "status": status,
        "witnesses": witnesses,
        "checks": [{"name": c.name, "ok": c.ok} for c in checks],
        "payload": _jsonable(payload or {}),
    }
    if error is not None:
        rep["error"] = error
    return rep


def _module(project: ProjectFile, args):
    if not project.modules:
        raise UsageError("project has no modules")
    if args.module is None:
        if len(project.modules) == 1:
            return next(iter(project.modules.items()))
        raise UsageError("--module is required when the project has several modules")
    if args.module not in project.modules:
        raise UsageError(f"unknown module {args.module!r}")
    return args.module, project.modules[args.module]


def _element(project: ProjectFile, args, mname, m):
    if args.element is None:
        raise UsageError("--element is required")
    if args.element in project.elements:
        owner, v, vec = project.elements[args.element]
        if owner != mname:
            raise UsageError(f"element {args.element!r} belongs to module {owner!r}")
        return v, vec
    if args.vertex is None:
        raise UsageError("an inline --element needs --vertex")
    if args.vertex not in m.quiver.vertices:
        raise UsageError(f"unknown vertex {args.vertex!r}")
    try:
        vec = tuple(m.field.parse_scalar(c) for c in args.element.split(","))
    except ValueError as exc:
        raise UsageError(f"bad element coordinates: {exc}") from None
    if len(vec) != m.module(args.vertex).dim:
        raise UsageError(f"element must have {m.module(args.vertex).dim} coordinates at {args.vertex!r}")
    return args.vertex, vec


def _need_quiver(project):
    if project.monad_quiver is None:
        raise UsageError("project has no quiver")
    return project.monad_quiver


# ---------------------------------------------------------------------------
# commands


def cmd_validate(project, args):
    checks = []
    for n, a in project.algebras.items():
        c = validate_algebra(a)
        checks.append(Check(c.ok, f"algebra:{n}", c.witness))
    for n, phi in project.morphisms.items():
        c = validate_morphism(phi)
        checks.append(Check(c.ok, f"morphism:{n}", c.witness))
    if project.monad_quiver is not None:
        c = validate_quiver_and_monadquiver(project.monad_quiver)
        checks.append(Check(c.ok, "monad_quiver", c.witness))
        names = [args.module] if args.module else list(project.modules)
        for n in names:
            if n not in project.modules:
                raise UsageError(f"unknown module {n!r}")
            c = validate_umodule(project.modules[n])
            checks.append(Check(c.ok, f"module:{n}", c.witness))
    payload = {"algebras": len(project.algebras), "morphisms": len(project.morphisms),
               "modules": len(project.modules)}
    return checks, payload


def cmd_flat(project, args):
    if args.edge is not None:
        u = _need_quiver(project)
        if args.edge not in u.edge_morphism:
            raise UsageError(f"unknown edge {args.edge!r}")
        targets = {f"edge:{args.edge}": u.edge_morphism[args.edge]}
    elif project.monad_quiver is not None:
        u = project.monad_quiver
        targets = {f"edge:{e.name}": u.edge_morphism[e.name] for e in u.quiver.edges}
    else:
        targets = {f"morphism:{n}": phi for n, phi in project.morphisms.items()}
    flags = {n: is_flat_morphism(phi) for n, phi in targets.items()}
    checks = [Check(ok, n, None if ok else {"not_flat": n.split(":", 1)[1]}) for n, ok in flags.items()]
    return checks, {"flat": flags}


def cmd_cartesian(project, args):
    mname, m = _module(project, args)
    c = is_cartesian(m)
    return [Check(c.ok, f"cartesian:{mname}", c.witness)], {"dims": m.dims(), **c.payload}


def cmd_hull(project, args):
    mname, m = _module(project, args)
    v, zeta = _element(project, args, mname, m)
    try:
        h = cartesian_hull(m, v, zeta)
    except PreconditionError as exc:
        return [Check(False, "hull:preconditions", exc.witness or str(exc))], {}
    fam = h.family
    checks = [
        Check(fam[v].contains(zeta), "hull:contains", None if fam[v].contains(zeta) else {"vertex": v}),
        _named(check_subobject_family(m, fam), "hull:subobject"),
        _named(is_cartesian(h.module), "hull:cartesian"),
    ]
    bound = m.total_dim() + 1
    checks.append(Check(h.sweeps <= bound, "hull:sweeps", None if h.sweeps <= bound else {"sweeps": h.sweeps}))
    return checks, {"vertex": v, "dims": fam.dims(), "sweeps": h.sweeps, "bound": bound}


def _named(c: Check, name: str) -> Check:
    return Check(c.ok, name, c.witness, c.payload)


def cmd_coherator(project, args):
    mname, m = _module(project, args)
    res = coherator(m)
    checks = [
        _named(validate_umodule(res.module), "coherator:module"),
        _named(is_cartesian(res.module), "coherator:cartesian"),
        _named(validate_quiver_morphism(res.counit), "coherator:counit"),
    ]
    again = coherator(res.module)
    checks.append(_named(certify_iso(again.counit), "coherator:idempotent"))
    return checks, {"roots": sorted(res.roots), "dims": res.module.dims(), "source_dims": m.dims()}


def cmd_adjcheck(project, args):
    mname, m = _module(project, args)
    u = m.monad_quiver
    verts = [args.vertex] if args.vertex else list(u.quiver.vertices)
    checks, payload = [], {}
    for x in verts:
        if x not in u.quiver.vertices:
            raise UsageError(f"unknown vertex {x!r}")
        mx = m.module(x)
        for kind in ("ex_ev", "ev_coe"):
            c = adjunction_checks(kind, u, x, mx, m)
            checks.append(Check(c.ok, f"{kind}:{x}", c.witness))
            payload[f"{kind}:{x}"] = c.payload
    return checks, payload


def cmd_cover(project, args):
    mname, m = _module(project, args)
    cov = projective_cover(m)
    bad = [v for v in m.quiver.vertices
           if cov.morphism.components[v].rank() != m.module(v).dim]
    checks = [
        Check(cov.surjective, "cover:surjective", None if cov.surjective else {"vertices": bad}),
        _named(validate_quiver_morphism(cov.morphism), "cover:morphism"),
    ]
    return checks, {"summands": [list(s) for s in cov.summands], "dims": cov.module.dims()}


def cmd_report(project, args):
    """Every applicable check on the project, with seeded random elements."""
    rng = random.Random(args.seed)
    checks, payload = cmd_validate(project, args)
    payload = {"validate": payload}
    u = project.monad_quiver
    payload["flat"] = {n: is_flat_morphism(phi) for n, phi in project.morphisms.items()}
    if u is None:
        return checks, payload
    names = [args.module] if args.module else sorted(project.modules)
    all_flat = all(is_flat_morphism(u.edge_morphism[e.name]) for e in u.quiver.edges)
    for n in names:
        m = project.modules[n]
        payload.setdefault("cartesian", {})[n] = bool(is_cartesian(m))
        for e in u.quiver.edges:
            src = m.module(e.source)
            tri = triangle_identities(u.edge_morphism[e.name], src, m.module(e.target))
            checks.append(Check(tri.ok, f"triangle:{n}:{e.name}", tri.witness))
        if not u.is_poset:
            continue
        for x in u.quiver.vertices:
            for kind in ("ex_ev", "ev_coe"):
                c = adjunction_checks(kind, u, x, m.module(x), m)
                checks.append(Check(c.ok, f"{kind}:{n}:{x}", c.witness))
        cov = projective_cover(m)
        checks.append(Check(cov.surjective, f"cover:{n}", None if cov.surjective else "not surjective"))
        verts = [v for v in u.quiver.vertices if m.module(v).dim]
        for i in range(3 if verts else 0):
            v = rng.choice(verts)
            zeta = tuple(_rand(m.field, rng) for _ in range(m.module(v).dim))
            gen = generated_subobject(m, v, zeta)
            ok = gen[v].contains(zeta) and bool(check_subobject_family(m, gen)) and regenerate_check(m, v, zeta)
            checks.append(Check(ok, f"generated:{n}:{i}", None if ok else {"vertex": v, "element": zeta}))
        if all_flat and is_cartesian(m):
            hulls = hull_decomposition(m)
            ok = hull_sum(m, hulls) == SubobjectFamily.full(m) and all(is_cartesian(h.module) for h in hulls)
            checks.append(Check(ok, f"hull-decomposition:{n}", None if ok else {"module": n}))
            payload.setdefault("hulls", {})[n] = len(hulls)
        try:
            res = coherator(m)
        except UnsupportedShape:
            continue
        ok = bool(is_cartesian(res.module)) and bool(validate_quiver_morphism(res.counit))
        checks.append(Check(ok, f"coherator:{n}", None if ok else {"module": n}))
    return checks, payload


def _rand(field, rng):
    if field.is_finite:
        return rng.randrange(field.characteristic)
    return field.reduce(rng.randint(-3, 3))


HANDLERS = {
    "validate": cmd_validate,
    "flat": cmd_flat,
    "cartesian": cmd_cartesian,
    "hull": cmd_hull,
    "coherator": cmd_coherator,
    "adjcheck": cmd_adjcheck,
    "cover": cmd_cover,
    "report": cmd_report,
}


def run_command(cmd: str, project: ProjectFile, args) -> dict:
    if cmd not in HANDLERS:
        raise UsageError(f"unknown command {cmd!r}")
    start = time.perf_counter()
    try:
        checks, payload = HANDLERS[cmd](project, args)
        rep = make_report(cmd, checks, payload)
    except UnsupportedShape as exc:
        rep = make_report(cmd, [], status="error", error=str(exc))
    rep["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return rep


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mq", description="Checks for modules over monad quivers.")
    p.add_argument("command", help=", ".join(COMMANDS))
    p.add_argument("project", help="JSON project file")
    p.add_argument("--module")
    p.add_argument("--vertex")
    p.add_argument("--element", help='element name or inline coordinates "c1,c2,..."')
    p.add_argument("--edge")
    p.add_argument("--json", action="store_true", help="compact single-line output")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    indent = None if args.json else 2
    try:
        if args.command not in COMMANDS:
            raise UsageError(f"unknown command {args.command!r}; expected one of {', '.join(COMMANDS)}")
        project = parse_project(args.project)
        rep = run_command(args.command, project, args)
    except ProjectError as exc:
        rep = make_report(args.command, [], status="error", error=str(exc))
        if exc.witness is not None:
            rep["witnesses"] = [{"check": "load", "witness": _jsonable(exc.witness)}]
    except (UsageError, DimensionError, KeyError) as exc:
        rep = make_report(args.command, [], status="error", error=str(exc))
    print(json.dumps(rep, indent=indent, sort_keys=True))
    return EXIT[rep["status"]]


if __name__ == "__main__":
    sys.exit(main())
