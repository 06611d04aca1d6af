"""Validates the sample problems and every command's report against the shipped schemas."""
import json
import subprocess
import sys
from pathlib import Path

import jsonschema


def load(path):
    with open(path) as f:
        return json.load(f)


def main():
    tool, schema_dir, data_dir = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])
    problem = jsonschema.Draft202012Validator(load(schema_dir / "problem.schema.json"))
    report = jsonschema.Draft202012Validator(load(schema_dir / "report.schema.json"))
    failures = 0

    for path in sorted(data_dir.glob("*.json")):
        errors = list(problem.iter_errors(load(path)))
        for e in errors:
            print(f"{path.name}: {e.message}")
        failures += bool(errors)

    d = str(data_dir)
    runs = [
        ["triangle", f"{d}/three_nodes.json", "--permutations", "all"],
        ["solve", f"{d}/schur_example.json", "--grid-radius", "2"],
        ["solve", f"{d}/unsolvable.json"],
        ["solvable", f"{d}/identity.json"],
        ["denjoy", f"{d}/three_nodes.json"],
        ["analyze", f"{d}/radial.json", "--grid-radius", "1"],
        ["density", f"{d}/radial.json", "--depth", "6"],
        ["sampling", f"{d}/lattice.json", "--seed", "3", "--count", "4", "--grid-radius", "2", "--grid-step", "0.25"],
        ["stress", f"{d}/cluster.json", "--eps", "0.1", "--C", "0.25"],
        ["audit", f"{d}/schur_example.json", "--grid-radius", "2", "--grid-step", "0.25"],
        ["audit", f"{d}/identity.json"],
    ]
    for args in runs:
        proc = subprocess.run([tool, *args], capture_output=True, text=True)
        if proc.returncode not in (0, 3):
            print(f"{' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        errors = list(report.iter_errors(json.loads(proc.stdout)))
        for e in errors:
            print(f"{' '.join(args)}: {e.json_path}: {e.message}")
        failures += bool(errors)
        print(f"ok  {args[0]} (exit {proc.returncode})" if not errors else f"bad {args[0]}")

    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
