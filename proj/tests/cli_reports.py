"""Runs the CLI on a spread of commands and checks every report against the
shipped schema, byte-for-byte determinism, and the exit-status contract."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

cli, schema_path = sys.argv[1], sys.argv[2]
schema = json.loads(Path(schema_path).read_text())
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)

failures = []


def run(*args):
    return subprocess.run([cli, *args], capture_output=True, text=True, timeout=600)


def report(*args):
    first, second = run(*args), run(*args)
    if first.returncode != 0:
        failures.append(f"{args}: exit {first.returncode}: {first.stderr.strip()}")
        return None
    if first.stdout != second.stdout:
        failures.append(f"{args}: two runs differ")
    doc = json.loads(first.stdout)
    for err in validator.iter_errors(doc):
        failures.append(f"{args}: schema: {err.message} at {list(err.absolute_path)}")
    return doc


doc = report("witness", "psl2:11/coset:a5", "--max-len", "4")
if doc:
    cert = doc["results"].get("certificate")
    if not cert or not cert.get("witness", {}).get("verified"):
        failures.append("witness psl2:11/coset:a5: no verified witness")

doc = report("verify-tables", "T4", "--q", "8")
if doc and not (doc["results"]["pass"] and all(r["pass"] for r in doc["results"]["rows"])):
    failures.append("verify-tables T4 --q 8: a row failed")

doc = report("closure", "frob:7:2")
if doc and doc["results"]["closure_order"] != "21":
    failures.append("closure frob:7:2: closure order is not 21")

doc = report("closure", "psl2:9/coset:pgl-subfield:3")
if doc and doc["results"]["is_closed"]:
    failures.append("closure psl2:9/coset:pgl-subfield:3: expected a separating element")

doc = report("witness", "sym:5", "--max-len", "5")
if doc and doc["results"]["outcome"] != "none found":
    failures.append("witness sym:5: expected none found")

for args in (
    ("construct", "sz:8"),
    ("classify", "psu3:3/coset:l2-7"),
    ("verify-tables", "T5"),
    ("verify-tables", "T1", "--q", "13"),
    ("beautiful", "psl2:16/coset:d-minus"),
    ("klein", "psl2:13/coset:d-minus"),
    ("suborbits", "psu3:3/coset:l2-7", "--d", "2"),
    ("frobenius", "13", "3"),
    ("witness", "sz:8/coset:torus-minus"),
    ("closure", "psl2:25"),
):
    report(*args)

with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "r.json"
    r = run("frobenius", "7", "4", "--out", str(out), "--timings")
    if r.returncode != 0 or "timings" not in json.loads(out.read_text()):
        failures.append("--out/--timings: no timed report written")
    else:
        for err in validator.iter_errors(json.loads(out.read_text())):
            failures.append(f"--timings: schema: {err.message}")

tsv = run("verify-tables", "T2", "--q", "8", "--format", "tsv")
if tsv.returncode != 0 or "status\tcompleted" not in tsv.stdout:
    failures.append("tsv output missing the status line")

for args, token in ((("witness", "psl3:7"), "psl3"), (("closure", "psl2:13/coset:d-middle"), "d-middle"),
                    (("frobenius", "7", "3"), "kappa"), (("witness", "psl2:8/coset:subfield:2"), "subfield")):
    r = run(*args)
    if r.returncode == 0 or token not in r.stderr:
        failures.append(f"{args}: expected an input error naming '{token}', got exit {r.returncode}: {r.stderr.strip()}")

if run("witness", "psl2:7", "--max-len", "0").returncode == 0:
    failures.append("--max-len 0 accepted")

for f in failures:
    print("FAIL", f)
print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
