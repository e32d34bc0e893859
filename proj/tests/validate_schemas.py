"""Run every adhm_cli subcommand and validate its stdout against docs/schemas."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema
from referencing import Registry, Resource


def load_registry(schema_dir):
    resources = []
    for path in schema_dir.glob("*.schema.json"):
        schema = json.loads(path.read_text())
        resources.append((schema["$id"], Resource.from_contents(schema)))
    return Registry().with_resources(resources)


def main():
    cli, schema_dir = sys.argv[1], Path(sys.argv[2])
    registry = load_registry(schema_dir)

    def validate(name, doc):
        schema = json.loads((schema_dir / name).read_text())
        jsonschema.Draft202012Validator(schema, registry=registry).validate(doc)

    def run(args, expected_rc=0):
        proc = subprocess.run([cli, *args], capture_output=True, text=True)
        if proc.returncode != expected_rc:
            raise SystemExit(f"{args}: exit {proc.returncode}\n{proc.stdout}\n{proc.stderr}")
        return json.loads(proc.stdout)

    with tempfile.TemporaryDirectory() as work:
        moyal = str(Path(work) / "moyal.json")
        classical = str(Path(work) / "classical.json")
        validate("solve.schema.json", run(["solve", "--k", "2", "--model", "moyal", "--hbar", "0.1", "--out", moyal]))
        validate("solve.schema.json", run(["solve", "--k", "1", "--seed", "3", "--out", classical]))
        validate("adhm_data.schema.json", json.loads(Path(moyal).read_text()))
        for args in (["--model", "toric", "--theta", "0.25", "--space", "C4", "--calculus"],
                     ["--model", "moyal", "--hbar", "0.1", "--space", "R4"],
                     ["--space", "C4"]):
            validate("relations.schema.json", run(["relations", *args]))
        validate("report.schema.json", run(["twistor-checks", "--model", "toric", "--theta", "0.3"]))
        validate("report.schema.json", run(["verify-monad", "--data", moyal]))
        validate("report.schema.json", run(["instanton", "--data", classical, "--points", "4", "--check-asd"]))
        validate("charge.schema.json", run(["charge", "--data", classical]))
        validate("moduli_dim.schema.json", run(["moduli-dim", "--data", moyal]))

        # a computation that raises reports on stdout with exit code 1
        zero = Path(work) / "zero.json"
        zero.write_text(json.dumps({"k": 1, "model": {"kind": "classical"}, "B1": [[[0, 0]]], "B2": [[[0, 0]]],
                                    "I": [[[1, 0], [0, 0]]], "J": [[[0, 0]], [[0, 0]]]}))
        validate("error.schema.json", run(["moduli-dim", "--data", str(zero)], expected_rc=1))
    print("all CLI outputs validate")


if __name__ == "__main__":
    main()
