import csv
import io
import json
import os
import pathlib
import subprocess

import jsonschema
import pytest

CLI = os.environ.get("RIGIDITY_CLI", "rigidity")
SCHEMAS = pathlib.Path(os.environ.get("RIGIDITY_SCHEMAS", pathlib.Path(__file__).parents[2] / "schemas"))


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True, check=False)


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


@pytest.mark.parametrize(
    "command,args",
    [
        ("roots", ["--type", "A..G", "--rank", "1..8"]),
        ("verify", ["--type", "A1,B3,2D4,2D3", "--k", "3", "--with-oracle", "--trace"]),
        ("classify", ["--type", "A1,C3,2D4,E6", "--k", "2..3"]),
        ("classify", ["--type", "A1,2D4", "--q0", "5,17", "--l", "0..1"]),
    ],
)
def test_json_validates(command, args):
    result = run(command, *args, "--format", "json")
    assert result.returncode == 0, result.stderr
    jsonschema.validate(json.loads(result.stdout), schema(command))


def test_mismatch_document_still_validates():
    result = run("verify", "--type", "2A4", "--k", "2", "--with-oracle", "--format", "json")
    assert result.returncode == 1
    doc = json.loads(result.stdout)
    jsonschema.validate(doc, schema("verify"))
    assert doc["rows"][0]["scalar_clause"]["counterexamples"] > 0


@pytest.mark.parametrize(
    "command,args",
    [
        ("roots", ["--type", "E8"]),
        ("verify", ["--type", "C3"]),
        ("classify", ["--type", "A1", "--k", "3"]),
    ],
)
def test_csv_headers_are_pinned(command, args):
    columns = json.loads((SCHEMAS / "csv_columns.json").read_text())[command]
    result = run(command, *args, "--format", "csv")
    assert result.returncode == 0, result.stderr
    rows = list(csv.reader(io.StringIO(result.stdout)))
    assert rows[0] == columns
    assert all(len(r) == len(columns) for r in rows[1:])


def test_e8_csv_row_count():
    result = run("roots", "--type", "E", "--rank", "8", "--format", "csv")
    assert len(result.stdout.strip().splitlines()) == 241
