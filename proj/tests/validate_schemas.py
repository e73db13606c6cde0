"""Validate problem files against the spec schema and CLI reports against the report schema."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def load(path):
    with open(path) as f:
        return json.load(f)


def main():
    root = pathlib.Path(sys.argv[1]).resolve()
    cli = str(pathlib.Path(sys.argv[2]).resolve())
    spec_schema = load(root / "schemas" / "problem_spec.schema.json")
    report_schema = load(root / "schemas" / "report.schema.json")
    jsonschema.Draft202012Validator.check_schema(spec_schema)
    jsonschema.Draft202012Validator.check_schema(report_schema)

    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        for problem in sorted((root / "problems").glob("*.json")):
            try:
                jsonschema.validate(load(problem), spec_schema)
                out = pathlib.Path(tmp) / "report.json"
                subprocess.run([cli, "--spec", str(problem), "--out", str(out), "--csv", str(pathlib.Path(tmp) / "o.csv")],
                               check=True, cwd=tmp, stderr=subprocess.DEVNULL)
                jsonschema.validate(load(out), report_schema)
                print(f"ok   {problem.name}")
            except (jsonschema.ValidationError, subprocess.CalledProcessError) as e:
                failures += 1
                print(f"FAIL {problem.name}: {str(e).splitlines()[0]}")
    for golden in sorted((root / "tests" / "golden").glob("*.json")):
        try:
            jsonschema.validate(load(golden), report_schema)
            print(f"ok   golden/{golden.name}")
        except jsonschema.ValidationError as e:
            failures += 1
            print(f"FAIL golden/{golden.name}: {e.message}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
