#!/usr/bin/env python3
"""Run each CLI subcommand and validate its stdout against docs/schemas.

Usage: check_schemas.py <arborab binary> <schema directory>

Every case runs twice against a fresh cache directory; the second (cached)
run must print the same document as the first.
"""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

CASES = [
    ("orbit", ["orbit", "--c=-1", "--x0=0"], 0),
    ("orbit", ["orbit", "--c=1", "--x0=0", "--budget", "3"], 0),
    ("orbit", ["orbit", "--c=-3/4", "--x0=1/3", "--budget", "4"], 0),
    ("pcf", ["pcf", "--c=-2"], 0),
    ("pcf", ["pcf", "--c=1/2"], 0),
    ("pcf", ["pcf", "--c=5"], 0),
    ("adjusted-orbit", ["adjusted-orbit", "--c=-1", "--alpha=-1/2", "--n", "3"], 0),
    ("adjusted-orbit", ["adjusted-orbit", "--c=1/3", "--alpha=7/5", "--n", "6"], 0),
    ("abelian", ["abelian", "--c=-1", "--alpha=-1/2"], 0),
    ("abelian", ["abelian", "--c=-2", "--alpha=1"], 0),
    ("abelian", ["abelian", "--c=-1", "--alpha=0"], 0),
    ("abelian", ["abelian", "--c=-1", "--alpha=5"], 0),
    ("abelian", ["abelian", "--c=0", "--alpha=-4"], 0),
    ("abelian", ["abelian", "--c=1/2", "--alpha=3"], 0),
    ("abelian", ["abelian", "--c=0", "--alpha=-4", "--depth", "2"], 2),
    ("local-sieve", ["local-sieve"], 0),
    ("tree-verify-propA", ["tree", "verify-propA", "--level", "3"], 0),
    ("tree-verify-propA", ["tree", "verify-propA", "--level", "5", "--samples", "2000", "--seed", "7"], 0),
    ("tree-act", ["tree", "act", "--portrait", "1,01,1010"], 0),
    ("tree-act", ["tree", "act", "--portrait", "0,00"], 0),
    ("tree-compose", ["tree", "compose", "--portrait", "1,01,1010", "--portrait", "0,11,0000"], 0),
    ("height-weil", ["height", "weil", "--x=-3/4"], 0),
    ("height-canonical", ["height", "canonical", "--c=-1", "--x=3"], 0),
    ("height-canonical", ["height", "canonical", "--c=-1", "--x=0"], 0),
    ("height-canonical", ["height", "canonical", "--c=1/2", "--x=2/3", "--eps", "1e-9"], 0),
    ("mahler", ["mahler", "--poly=-2,0,1"], 0),
    ("mahler", ["mahler", "--c=-1", "--alpha=3", "--n=2", "--roots"], 0),
    ("az", ["az", "--c=-1", "--alpha=3", "--n", "6"], 0),
    ("special", ["special", "--c=-2", "--alpha=1"], 0),
    ("special", ["special", "--c=0", "--alpha=0"], 0),
    ("bounds", ["bounds", "--c=-1", "--alpha=3"], 0),
    ("bounds", ["bounds", "--c=-1", "--alpha=-1/2", "--n", "3"], 0),
    ("cyclo-scan", ["cyclo-scan", "--poly=-1,0,0,0,1"], 0),
    ("cyclo-scan", ["cyclo-scan", "--c=-1", "--alpha=3", "--n", "2"], 0),
    ("fz-bound", ["fz-bound", "--n", "2", "--d", "2"], 0),
    ("fz-bound", ["fz-bound", "--d", "3"], 0),
    ("error", ["abelian", "--c=x", "--alpha=1"], 1),
    ("error", ["abelian", "--c=0", "--alpha=0"], 1),
    ("error", ["tree", "act", "--portrait", "1,2"], 1),
    ("error", ["fz-bound", "--d", "1"], 1),
    ("error", ["--depth", "99", "abelian", "--c=0", "--alpha=2"], 1),
    ("error", [], 1),
]


def main() -> int:
    binary, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = {}
    for path in sorted(schema_dir.glob("*.json")):
        schema = json.loads(path.read_text())
        jsonschema.Draft202012Validator.check_schema(schema)
        schemas[path.stem] = jsonschema.Draft202012Validator(schema)
    unused = set(schemas) - {name for name, _, _ in CASES}
    failures = [f"schema {name} has no case" for name in sorted(unused)]

    with tempfile.TemporaryDirectory() as cache:
        for name, args, code in CASES:
            outputs = []
            for _ in range(2):
                proc = subprocess.run([binary, "--cache", cache, *args], capture_output=True, text=True, timeout=300)
                label = " ".join(args) or "(no arguments)"
                if proc.returncode != code:
                    failures.append(f"{label}: exit {proc.returncode}, expected {code}")
                    break
                try:
                    doc = json.loads(proc.stdout)
                except json.JSONDecodeError as e:
                    failures.append(f"{label}: stdout is not JSON ({e})")
                    break
                errors = sorted(schemas[name].iter_errors(doc), key=str)
                failures.extend(f"{label}: {e.json_path}: {e.message}" for e in errors)
                outputs.append(proc.stdout)
            if len(outputs) == 2 and outputs[0] != outputs[1]:
                failures.append(f"{label}: cached output differs")

    for line in failures:
        print("FAIL", line)
    print(f"{len(CASES)} cases, {len(schemas)} schemas, {len(failures)} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
