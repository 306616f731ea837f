"""JSON project files: a field, named algebras and morphisms, one monad quiver,
named quiver modules and named elements.

Layout::

    {
      "field": {"kind": "prime", "characteristic": 2},
      "algebras": {"A": {"mul": [[[1, 0], [0, 1]], ...], "unit": [1, 0]}},
      "morphisms": {"phi": {"source": "k", "target": "A", "matrix": [[1], [0]]}},
      "quiver": {"vertices": ["x", "y"], "edges": [{"name": "e", "source": "x", "target": "y"}]},
      "monad_quiver": {"vertices": {"x": "k", "y": "A"}, "edges": {"e": "phi"}},
      "modules": {"M": {"vertices": {"x": {"dim": 1, "action": [[1]]}, ...},
                        "edges": {"e": [[1, 0], [0, 1]]}}},
      "elements": {"z": {"module": "M", "vertex": "x", "coords": [1]}}
    }

Matrices are lists of rows.  Scalars are ``"a/b"`` strings over Q and
integers over F_p.  Edge maps are written against the quotient basis of the
extension, so the loader recomputes that basis and checks every shape.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .algebra import AlgebraMorphism, FDAlgebra, validate_algebra, validate_morphism
from .change import extend
from .em import ModuleObject
from .linalg import DimensionError, FieldSpec, LinearMap
from .quiver import MonadQuiver, Quiver, QuiverModule, validate_quiver_and_monadquiver, validate_umodule


class ProjectError(ValueError):
    """A located load failure: the file, the entity and what went wrong."""

    def __init__(self, path, entity, message, witness=None):
        self.path, self.entity, self.witness = str(path), entity, witness
        super().__init__(f"{path}: {entity}: {message}")


@dataclass
class ProjectFile:
    field: FieldSpec
    algebras: dict
    morphisms: dict
    quiver: Quiver | None = None
    monad_quiver: MonadQuiver | None = None
    modules: dict = dc_field(default_factory=dict)
    elements: dict = dc_field(default_factory=dict)
    path: str = "<memory>"
    # vertex and edge name assignments as written, kept for round trips
    assignment: tuple | None = None

    def element(self, name):
        """``(module name, vertex, coordinates)`` of a named element."""
        return self.elements[name]


def _matrix(fld, data, rows, cols, path, entity):
    if not isinstance(data, list) or len(data) != rows or any(
        not isinstance(r, list) or len(r) != cols for r in data
    ):
        got = f"{len(data)} rows" if isinstance(data, list) else type(data).__name__
        raise ProjectError(path, entity, f"expected a {rows}x{cols} matrix, got {got}")
    try:
        return LinearMap.from_rows(fld, [[fld.parse_scalar(c) for c in r] for r in data], cols)
    except (ValueError, ZeroDivisionError) as exc:
        raise ProjectError(path, entity, f"bad scalar: {exc}") from None


def _vector(fld, data, n, path, entity):
    if not isinstance(data, list) or len(data) != n:
        raise ProjectError(path, entity, f"expected a vector of length {n}")
    try:
        return tuple(fld.parse_scalar(c) for c in data)
    except (ValueError, ZeroDivisionError) as exc:
        raise ProjectError(path, entity, f"bad scalar: {exc}") from None


def _lookup(table, name, kind, path, entity):
    if name not in table:
        raise ProjectError(path, entity, f"unresolved {kind} name {name!r}")
    return table[name]


def _parse_field(data, path):
    try:
        return FieldSpec(data["kind"], data.get("characteristic"))
    except (KeyError, TypeError, ValueError) as exc:
        raise ProjectError(path, "field", str(exc)) from None


def load_project(data: dict, path="<memory>") -> ProjectFile:
    if not isinstance(data, dict) or "field" not in data:
        raise ProjectError(path, "project", "missing 'field'")
    fld = _parse_field(data["field"], path)

    algebras = {}
    for name, spec in data.get("algebras", {}).items():
        ent = f"algebra {name!r}"
        unit = spec.get("unit")
        if not isinstance(unit, list) or not unit:
            raise ProjectError(path, ent, "missing unit vector")
        n = len(unit)
        mul = spec.get("mul")
        if not isinstance(mul, list) or len(mul) != n or any(not isinstance(r, list) or len(r) != n for r in mul):
            raise ProjectError(path, ent, f"structure table must be {n}x{n}")
        table = [[_vector(fld, v, n, path, ent) for v in row] for row in mul]
        a = FDAlgebra.from_table(fld, table, _vector(fld, unit, n, path, ent))
        chk = validate_algebra(a)
        if not chk:
            raise ProjectError(path, ent, f"{chk.name} fails at {chk.witness}", chk.witness)
        algebras[name] = a

    morphisms = {}
    for name, spec in data.get("morphisms", {}).items():
        ent = f"morphism {name!r}"
        src = _lookup(algebras, spec.get("source"), "algebra", path, ent)
        tgt = _lookup(algebras, spec.get("target"), "algebra", path, ent)
        mat = _matrix(fld, spec.get("matrix"), tgt.dim, src.dim, path, ent)
        phi = AlgebraMorphism(src, tgt, mat)
        chk = validate_morphism(phi)
        if not chk:
            raise ProjectError(path, ent, f"{chk.name} fails at {chk.witness}", chk.witness)
        morphisms[name] = phi

    proj = ProjectFile(fld, algebras, morphisms, path=str(path))
    if "quiver" not in data:
        if data.get("modules") or data.get("elements"):
            raise ProjectError(path, "quiver", "modules need a quiver")
        return proj

    qd = data["quiver"]
    try:
        q = Quiver(qd["vertices"], [(e["name"], e["source"], e["target"]) for e in qd.get("edges", [])])
    except (KeyError, TypeError, ValueError) as exc:
        raise ProjectError(path, "quiver", str(exc)) from None
    mqd = data.get("monad_quiver", {})
    valg = {v: _lookup(algebras, mqd.get("vertices", {}).get(v), "algebra", path, f"vertex {v!r}")
            for v in q.vertices}
    emor = {e.name: _lookup(morphisms, mqd.get("edges", {}).get(e.name), "morphism", path, f"edge {e.name!r}")
            for e in q.edges}
    try:
        u = MonadQuiver(q, valg, emor)
    except (ValueError, DimensionError) as exc:
        raise ProjectError(path, "monad_quiver", str(exc)) from None
    chk = validate_quiver_and_monadquiver(u)
    if not chk:
        raise ProjectError(path, "monad_quiver", f"{chk.name} fails at {chk.witness}", chk.witness)
    proj.quiver, proj.monad_quiver = q, u
    proj.assignment = ({v: mqd["vertices"][v] for v in q.vertices}, {e.name: mqd["edges"][e.name] for e in q.edges})

    for name, spec in data.get("modules", {}).items():
        proj.modules[name] = _parse_module(u, fld, name, spec, path)

    for name, spec in data.get("elements", {}).items():
        ent = f"element {name!r}"
        mname = spec.get("module")
        m = _lookup(proj.modules, mname, "module", path, ent)
        v = spec.get("vertex")
        if v not in q.vertices:
            raise ProjectError(path, ent, f"unknown vertex {v!r}")
        proj.elements[name] = (mname, v, _vector(fld, spec.get("coords"), m.module(v).dim, path, ent))
    return proj


def _parse_module(u, fld, name, spec, path):
    ent = f"module {name!r}"
    q = u.quiver
    mods = {}
    for v in q.vertices:
        vd = spec.get("vertices", {}).get(v)
        if vd is None:
            raise ProjectError(path, f"{ent} at vertex {v!r}", "missing vertex module")
        d = vd.get("dim")
        if not isinstance(d, int) or d < 0:
            raise ProjectError(path, f"{ent} at vertex {v!r}", "dim must be a non-negative integer")
        a = u.algebra(v)
        act = _matrix(fld, vd.get("action", []), d, a.dim * d, path, f"{ent} at vertex {v!r}")
        mods[v] = ModuleObject(a, d, act)
    maps = {}
    for e in q.edges:
        sub = f"{ent} on edge {e.name!r}"
        ext_dim = extend(u.edge_morphism[e.name], mods[e.source]).module.dim
        data = spec.get("edges", {}).get(e.name)
        if data is None:
            raise ProjectError(path, sub, "missing structure map")
        rows = mods[e.target].dim
        if not isinstance(data, list) or len(data) != rows or any(len(r) != ext_dim for r in data):
            raise ProjectError(
                path, sub,
                f"structure map must be {rows}x{ext_dim}: the extension along the edge has "
                f"basis dimension {ext_dim}",
                {"edge": e.name, "extension_dim": ext_dim},
            )
        maps[e.name] = _matrix(fld, data, rows, ext_dim, path, sub)
    m = QuiverModule(u, mods, maps)
    chk = validate_umodule(m)
    if not chk:
        raise ProjectError(path, ent, f"{chk.name} fails at {chk.witness}", chk.witness)
    return m


def parse_project(path) -> ProjectFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ProjectError(path, "file", str(exc)) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProjectError(path, "file", f"JSON syntax error at line {exc.lineno}: {exc.msg}") from None
    return load_project(data, path)


# ---------------------------------------------------------------------------
# serialization


def _rows(fld, m: LinearMap):
    return [[fld.format_scalar(c) for c in r] for r in m.entries]


def to_data(p: ProjectFile) -> dict:
    fld = p.field
    out = {"field": {"kind": fld.kind}}
    if fld.characteristic is not None:
        out["field"]["characteristic"] = fld.characteristic
    out["algebras"] = {
        n: {"mul": [[[fld.format_scalar(c) for c in v] for v in row] for row in a.mul],
            "unit": [fld.format_scalar(c) for c in a.unit]}
        for n, a in p.algebras.items()
    }
    anames = {}
    for n, a in p.algebras.items():
        anames.setdefault(a, n)
    out["morphisms"] = {
        n: {"source": anames[phi.source], "target": anames[phi.target], "matrix": _rows(fld, phi.matrix)}
        for n, phi in p.morphisms.items()
    }
    if p.monad_quiver is None:
        return out
    q = p.quiver
    out["quiver"] = {"vertices": list(q.vertices),
                     "edges": [{"name": e.name, "source": e.source, "target": e.target} for e in q.edges]}
    raw = p.assignment
    if raw is None:
        mnames = {}
        for n, phi in p.morphisms.items():
            mnames.setdefault(phi, n)
        raw = ({v: anames[p.monad_quiver.algebra(v)] for v in q.vertices},
               {e.name: mnames[p.monad_quiver.edge_morphism[e.name]] for e in q.edges})
    out["monad_quiver"] = {"vertices": dict(raw[0]), "edges": dict(raw[1])}
    out["modules"] = {
        n: {"vertices": {v: {"dim": m.module(v).dim, "action": _rows(fld, m.module(v).action)}
                         for v in q.vertices},
            "edges": {e.name: _rows(fld, m.edge_map[e.name]) for e in q.edges}}
        for n, m in p.modules.items()
    }
    out["elements"] = {
        n: {"module": mn, "vertex": v, "coords": [fld.format_scalar(c) for c in vec]}
        for n, (mn, v, vec) in p.elements.items()
    }
    return out


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def serialize(p: ProjectFile) -> str:
    return dumps(to_data(p))


def normalize(text: str) -> str:
    """Canonical text of a project: sorted keys, two-space indent, trailing newline."""
    return dumps(json.loads(text))


def project_from_parts(field: FieldSpec, algebras: dict, morphisms: dict, monad_quiver=None,
                       modules=None, elements=None) -> ProjectFile:
    """Assemble a project in memory, for writing fixtures."""
    p = ProjectFile(field, dict(algebras), dict(morphisms), path="<memory>")
    if monad_quiver is not None:
        p.quiver, p.monad_quiver = monad_quiver.quiver, monad_quiver
    p.modules = dict(modules or {})
    p.elements = dict(elements or {})
    return p
