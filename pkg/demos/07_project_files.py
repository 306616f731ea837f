"""
Project files and the mq command
================================

Projects are JSON files naming a field, algebras, maps, a quiver, modules
and elements.  The shipped ones live next to the package.
"""

from monadquiver.cli import main
from monadquiver.fixtures import PROJECT_DIR
from monadquiver.project import parse_project, serialize

path = PROJECT_DIR / "unit_chain.json"
p = parse_project(path)
print("field:", p.field, " algebras:", sorted(p.algebras), " modules:", sorted(p.modules))
print("round trip exact:", serialize(p) == path.read_text())

# the CLI prints one JSON record and returns 0, 1 or 2
for argv in (
    ["cartesian", str(PROJECT_DIR / "aug_chain.json"), "--module", "N", "--json"],
    ["hull", str(path), "--module", "M", "--element", "e1", "--json"],
    ["coherator", str(PROJECT_DIR / "rootless.json"), "--module", "M", "--json"],
):
    print("$ mq", " ".join(argv[:1] + argv[2:]))
    code = main(argv)
    print("exit", code)
