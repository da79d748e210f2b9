#!/usr/bin/env python3
"""Run `ontorank evaluate` on the fixtures and validate its outputs."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def main() -> int:
    cli, fixtures, schema_path = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])
    schema = json.loads(schema_path.read_text())
    with tempfile.TemporaryDirectory() as tmp:
        report = Path(tmp) / "report.json"
        predictions = Path(tmp) / "predictions.jsonl"
        args = [
            cli, "evaluate",
            "--ontology", str(fixtures / "ontology_edges.tsv"),
            "--patches", str(fixtures / "patches.txt"),
            "--synonyms", str(fixtures / "synonyms.tsv"),
            "--embeddings", str(fixtures / "toy_vectors.txt"),
            "--dataset", str(fixtures / "train.csv"),
            "--split", "0.8", "--seed", "3", "--trees", "20",
            "--metric", "euclidean", "--merge", "skip-defaulted",
            "--report", str(report), "--predictions", str(predictions),
        ]
        run = subprocess.run(args, capture_output=True, text=True)
        if run.returncode != 0:
            print(run.stderr, file=sys.stderr)
            return 1
        doc = json.loads(report.read_text())
        jsonschema.validate(doc, schema)
        lines = [json.loads(l) for l in predictions.read_text().splitlines() if l]
        if len(lines) != doc["test_size"]:
            print(f"{len(lines)} prediction lines, test_size {doc['test_size']}")
            return 1
        for line in lines:
            if set(line) != {"term", "predicted_labels"} or len(line["predicted_labels"]) != 10:
                print(f"bad prediction line: {line}")
                return 1
    print("report and predictions valid")
    return 0


if __name__ == "__main__":
    sys.exit(main())
