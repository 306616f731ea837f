"""Canonical example projects shipped with the package.

``python -m monadquiver.fixtures DIR`` rewrites the JSON files from these
builders; the files in ``projects/`` are exactly what it produces.
"""

from __future__ import annotations

import sys
from pathlib import Path

from . import em
from .algebra import generator_morphism, ground_field, truncated_poly, unit_inclusion
from .catalog import chain2, free_cartesian
from .linalg import GF, QQ, LinearMap
from .project import ProjectFile, project_from_parts, serialize
from .quiver import MonadQuiver, Quiver, QuiverModule

PROJECT_DIR = Path(__file__).with_name("projects")


def minimal() -> ProjectFile:
    f = GF(2)
    return project_from_parts(f, {"k": ground_field(f)}, {})


def aug_chain() -> ProjectFile:
    """``x -> y`` along ``k[t]/t^2 -> k``; ``M = (A, k, id)`` and the non-cartesian ``N = (A, 0, 0)``."""
    f = GF(2)
    k, a = ground_field(f), truncated_poly(f, 2)
    aug = generator_morphism(a, k, (0,))
    u = chain2(f, aug)
    m = QuiverModule(u, {"x": em.regular_module(a), "y": em.regular_module(k)},
                     {"e": LinearMap.identity(f, 1)})
    n = QuiverModule(u, {"x": em.regular_module(a), "y": em.zero_module(k)},
                     {"e": LinearMap.zero(f, 0, 1)})
    elements = {"one": ("M", "x", (1, 0)), "t": ("M", "x", (0, 1)), "z": ("M", "x", (0, 0))}
    return project_from_parts(f, {"k": k, "A": a}, {"aug": aug}, u, {"M": m, "N": n}, elements)


def unit_chain(field=None) -> ProjectFile:
    """``x -> y`` along ``k -> k[t]/t^2``; ``M = (k^2, A^2, id)`` and ``C = (k, A^2, a |-> (a, 0))``."""
    f = field or GF(2)
    k, a = ground_field(f), truncated_poly(f, 2)
    unit = unit_inclusion(a)
    u = chain2(f, unit)
    m = free_cartesian(u, 2)
    first = LinearMap.from_columns(f, [(1, 0, 0, 0), (0, 0, 1, 0)], 4)
    c = QuiverModule(u, {"x": em.regular_module(k), "y": em.free_module(a, 2)}, {"e": first})
    elements = {"e1": ("M", "x", (1, 0)), "e2": ("M", "x", (0, 1)), "z": ("M", "x", (0, 0)),
                "c": ("C", "x", (1,))}
    return project_from_parts(f, {"k": k, "A": a}, {"unit": unit}, u, {"M": m, "C": c}, elements)


def rootless() -> ProjectFile:
    """``x -> z <- y``: no minimum, so the coherator refuses."""
    f = GF(2)
    k, a = ground_field(f), truncated_poly(f, 2)
    unit = unit_inclusion(a)
    u = MonadQuiver(Quiver(["x", "y", "z"], [("e", "x", "z"), ("f", "y", "z")]),
                    {"x": k, "y": k, "z": a}, {"e": unit, "f": unit})
    return project_from_parts(f, {"k": k, "A": a}, {"unit": unit}, u, {"M": free_cartesian(u, 1)})


def canonical_projects() -> dict[str, ProjectFile]:
    return {
        "minimal": minimal(),
        "aug_chain": aug_chain(),
        "unit_chain": unit_chain(),
        "unit_chain_q": unit_chain(QQ),
        "rootless": rootless(),
    }


def write_all(directory=PROJECT_DIR) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name, p in canonical_projects().items():
        path = directory / f"{name}.json"
        path.write_text(serialize(p))
        out.append(path)
    return out


if __name__ == "__main__":
    for p in write_all(sys.argv[1] if len(sys.argv) > 1 else PROJECT_DIR):
        print(p)
