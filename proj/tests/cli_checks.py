"""Exit codes, schema conformance and determinism of the fkm command line."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

CLI, SCHEMA = sys.argv[1], sys.argv[2]
with open(SCHEMA) as fh:
    VALIDATOR = jsonschema.Draft202012Validator(json.load(fh))

failures = []


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def expect(code, *args):
    res = run(*args)
    if res.returncode != code:
        failures.append(f"{' '.join(args)}: exit {res.returncode}, expected {code}\n{res.stderr}")
    return res


def report(*args, code=0):
    res = expect(code, *args)
    try:
        doc = json.loads(res.stdout)
    except json.JSONDecodeError:
        failures.append(f"{' '.join(args)}: stdout is not JSON")
        return {}
    for err in VALIDATOR.iter_errors(doc):
        failures.append(f"{' '.join(args)}: schema: {err.message} at {list(err.path)}")
    return doc


doc = report("check", "--manifold", "flat-contact-r3", "--a", "2")
if doc:
    assert abs(doc["fits"]["kappa"] - 0.75) < 1e-6 and abs(doc["fits"]["mu"] - 1.0) < 1e-6
    assert all(c["pass"] == (c["residual"] <= c["tolerance"]) for c in doc["checks"])

doc = report("check", "-m", "s-space-form:2,2", "--points", "5", "--samples", "40")
if doc:
    assert doc["verdicts"]["is_s_manifold"] and not doc["fits"]["mu_determined"]

report("check", "-m", "flat-contact-r3:plain", "--points", "5", "--samples", "40", code=1)
report("check", "-m", "s-space-form:1,1", "--convention", "plain", "--points", "3", code=1)
report("check", "-m", "s-space-form:1,1", "--convention", "HALF", "--points", "3")
report("fit-nullity", "-m", "flat-contact-r3", "--points", "5")
report("fit-gssf", "-m", "s-space-form:2,2", "--points", "5")
report("fit-gssf", "-m", "flat-contact-r3", "--points", "5", code=1)
report("fit-trans-s", "-m", "s-space-form:1,1", "--points", "5")
report("fit-trans-s", "-m", "flat-contact-r3", "--points", "5", code=1)
report("deform", "-m", "flat-contact-r3", "--a", "0.5", "--points", "5")
report("check", "-m", "flat-contact-r3", "--checks", "nullity,rf", "--points", "5")

res = expect(2, "check", "--manifold", "nope")
if res.returncode == 2 and json.loads(res.stderr)["error"] != "unknown_manifold":
    failures.append("unknown manifold: unstructured error")
expect(2, "check", "-m", "flat-contact-r3", "--points", "0")
expect(2, "check", "-m", "flat-contact-r3", "--tol", "-1")
expect(2, "check", "-m", "flat-contact-r3", "--checks", "bogus")
expect(2, "check", "-m", "flat-contact-r3", "--convention", "sideways")
expect(2, "deform", "-m", "flat-contact-r3")
expect(2, "deform", "-m", "flat-contact-r3", "--a", "-1")
expect(2)
expect(2, "frobnicate")

res = expect(0, "catalog", "list")
if "s-space-form:2,2" not in res.stdout or "flat-contact-r3:plain" not in res.stdout:
    failures.append("catalog list misses keys")
keys = [e["key"] for e in json.loads(expect(0, "catalog", "list", "--json").stdout)]
if "flat-contact-r3:deformed:2" not in keys:
    failures.append("catalog list --json misses keys")

with tempfile.TemporaryDirectory() as tmp:
    cfg = os.path.join(tmp, "cfg.json")
    out = os.path.join(tmp, "out.json")
    with open(cfg, "w") as fh:
        json.dump({"manifold": "flat-contact-r3", "a": 3, "seed": 9, "points": 4, "samples": 30}, fh)
    res = expect(0, "check", "--config", cfg, "--json", out)
    if "PASS" not in res.stdout:
        failures.append("text table missing with --json")
    with open(out) as fh:
        written = json.load(fh)
    for err in VALIDATOR.iter_errors(written):
        failures.append(f"--json file: schema: {err.message}")
    if written.get("seed") != 9 or written["manifold"]["key"] != "flat-contact-r3:deformed:3":
        failures.append("config file not applied")
    if report("check", "--config", cfg, "--seed", "10")["seed"] != 10:
        failures.append("flag does not override config")

    with open(cfg, "w") as fh:
        fh.write("{not json")
    expect(2, "check", "--config", cfg)
    with open(cfg, "w") as fh:
        json.dump({"manifold": "flat-contact-r3", "point": 3}, fh)
    expect(2, "check", "--config", cfg)
    expect(2, "check", "--config", os.path.join(tmp, "missing.json"))

args = ("check", "-m", "s-space-form:1,2", "--seed", "3", "--points", "6", "--samples", "50")
first, second = report(*args), report(*args)
first.pop("wall_time", None)
second.pop("wall_time", None)
if json.dumps(first, sort_keys=True) != json.dumps(second, sort_keys=True):
    failures.append("identical seeds gave different reports")

for f in failures:
    print("FAIL", f)
print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
