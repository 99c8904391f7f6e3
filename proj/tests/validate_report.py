"""Validate JSON documents against the report schema: validate_report.py SCHEMA FILE..."""
import json
import sys

import jsonschema


def main() -> int:
    with open(sys.argv[1]) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for path in sys.argv[2:]:
        with open(path) as f:
            doc = json.load(f)
        for error in validator.iter_errors(doc):
            print(f"{path}: {error.json_path}: {error.message}", file=sys.stderr)
            failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
