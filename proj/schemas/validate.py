"""Validate a document produced by the armcrit CLI against the schema named by its "schema" field."""
import json
import pathlib
import sys

import jsonschema

SCHEMAS = {
    "armcrit.analysis/1": "analysis.schema.json",
    "armcrit.qc/1": "qc.schema.json",
    "armcrit.oracle/1": "oracle.schema.json",
}


def main(path):
    doc = json.loads(pathlib.Path(path).read_text())
    schema_file = pathlib.Path(__file__).with_name(SCHEMAS[doc["schema"]])
    schema = json.loads(schema_file.read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    jsonschema.Draft202012Validator(schema).validate(doc)
    print(f"{path}: valid {doc['schema']}")


if __name__ == "__main__":
    main(sys.argv[1])
