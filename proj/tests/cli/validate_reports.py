"""Run each qwle subcommand once and validate its JSON report against the shipped schema."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource


def main() -> int:
    binary, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    resources = []
    for path in schema_dir.glob("*.schema.json"):
        doc = json.loads(path.read_text())
        resources.append((doc["$id"], Resource.from_contents(doc)))
    registry = Registry().with_resources(resources)

    with tempfile.TemporaryDirectory() as tmp:
        levels = pathlib.Path(tmp) / "levels.csv"
        subprocess.run([binary, "simulate", "--hurst", "0.4", "--n", "512", "--seed", "3",
                        "-o", str(levels)], check=True)
        runs = {
            "estimate": [binary, "estimate", "--levels", str(levels)],
            "mc": [binary, "mc", "--n", "256", "--reps", "50", "--seed", "2"],
            "verify": [binary, "verify", "--hurst", "0.3,0.5", "--ns", "16,32,64"],
            "profile": [binary, "profile", "--levels", str(levels), "--points", "11"],
        }
        failed = 0
        for name, cmd in runs.items():
            proc = subprocess.run(cmd, capture_output=True, text=True)
            if proc.returncode not in (0, 2):
                print(f"{name}: exit {proc.returncode}: {proc.stderr}")
                failed += 1
                continue
            schema = json.loads((schema_dir / f"{name}.schema.json").read_text())
            validator = jsonschema.Draft202012Validator(schema, registry=registry)
            errors = list(validator.iter_errors(json.loads(proc.stdout)))
            for err in errors:
                print(f"{name}: {err.json_path}: {err.message}")
            failed += bool(errors)
            print(f"{name}: {'ok' if not errors else 'INVALID'}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
