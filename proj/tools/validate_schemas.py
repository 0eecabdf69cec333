#!/usr/bin/env python3
"""Run the CLI on a few inputs and validate each JSON output against schemas/."""
import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

root = pathlib.Path(__file__).resolve().parent.parent
cli = sys.argv[1]
schemas = {p.name: json.loads(p.read_text()) for p in (root / "schemas").glob("*.json")}
registry = Registry().with_resources((name, Resource.from_contents(s)) for name, s in schemas.items())

specs = root / "examples_specs"
runs = [
    ("dist", ["dist", "--group", "A:3 x I2:5^2 x D:5"]),
    ("dist", ["dist", "--group", "D:40", "--what", "t"]),
    ("moments", ["moments", "--family", "B", "--n", "4..8"]),
    ("moments", ["moments", "--group", "A:3 x D:5"]),
    ("simulate", ["simulate", "--group", "A:10 x I2:4", "--samples", "2000"]),
    ("complex", ["complex", "--group", "B:3"]),
]
runs += [("sequence", ["sequence", "--spec", str(p), "--n", "4,8,16"]) for p in sorted(specs.glob("*.json"))]

failed = 0
for p in sorted(specs.glob("*.json")):
    try:
        jsonschema.Draft202012Validator(schemas["sequence_spec.schema.json"], registry=registry).validate(
            json.loads(p.read_text()))
    except jsonschema.ValidationError as e:
        failed += 1
        print(f"FAIL spec {p.name}: {e.message}")
for kind, args in runs:
    out = subprocess.run([cli, *args], capture_output=True, text=True)
    if out.returncode != 0:
        failed += 1
        print(f"FAIL {' '.join(args)}: exit {out.returncode}: {out.stderr.strip()}")
        continue
    validator = jsonschema.Draft202012Validator(schemas[f"{kind}.schema.json"], registry=registry)
    errors = list(validator.iter_errors(json.loads(out.stdout)))
    for e in errors[:3]:
        print(f"FAIL {' '.join(args)}: {'/'.join(map(str, e.absolute_path))}: {e.message}")
    failed += bool(errors)
    if not errors:
        print(f"ok   {' '.join(args)}")
sys.exit(1 if failed else 0)
