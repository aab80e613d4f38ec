"""End-to-end checks of the armcrit command-line tool.

Usage: cli_check.py <armcrit executable> <schemas directory>
"""
import json
import math
import pathlib
import subprocess
import sys
import tempfile
import xml.etree.ElementTree as ET

import jsonschema

EXE = sys.argv[1]
SCHEMAS = pathlib.Path(sys.argv[2])
SCHEMA_FILES = {
    "armcrit.analysis/1": "analysis.schema.json",
    "armcrit.qc/1": "qc.schema.json",
    "armcrit.oracle/1": "oracle.schema.json",
}
failures = []


def run(*args):
    return subprocess.run([EXE, *args], capture_output=True, text=True, check=False)


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def validate(doc):
    schema = json.loads((SCHEMAS / SCHEMA_FILES[doc["schema"]]).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    try:
        jsonschema.Draft202012Validator(schema).validate(doc)
        return True
    except jsonschema.ValidationError as e:
        print(e)
        return False


def main():
    r = run("analyze", "--lengths", "10,3,2,1", "--perturb", "1e-6", "--seed", "7")
    doc = json.loads(r.stdout)
    check(r.returncode == 0, "analyze 10,3,2,1 exits 0")
    check(doc["perfect"] and len(doc["critical_points"]) == 8, "analyze 10,3,2,1 perturbed: perfect, 8 points")
    check(validate(doc), "analysis document validates")
    check(run("analyze", "--lengths", "10,3,2,1", "--perturb", "1e-6", "--seed", "7").stdout == r.stdout,
          "analyze output is byte-identical across runs")

    r = run("analyze", "--lengths", "1,1")
    doc = json.loads(r.stdout)
    check(r.returncode == 0, "analyze 1,1 exits 0")
    check(sorted(p["index_numeric"] for p in doc["critical_points"]) == [0, 1], "analyze 1,1: indices {0,1}")

    r = run("analyze", "--lengths", "1,1,1")
    doc = json.loads(r.stdout)
    check(r.returncode == 2, "analyze 1,1,1 exits 2 (degenerate)")
    check(len(doc["critical_points"]) == 3 and sum(p["degenerate"] for p in doc["critical_points"]) == 1,
          "analyze 1,1,1: 3 points, one degenerate")
    check(validate(doc), "analysis document with nulls validates")

    r = run("analyze", "--lengths", "1,1", "--degrees")
    doc = json.loads(r.stdout)
    check(doc["angle_units"] == "degrees" and any(abs(p["angles"][0] - 90.0) < 1e-9 for p in doc["critical_points"]),
          "--degrees reports degrees")

    for bad in (["--lengths", "1,x"], ["--lengths", "1"], ["--lengths", "1,-2"], []):
        check(run("analyze", *bad).returncode == 1, "usage error for " + " ".join(bad or ["missing --lengths"]))
    check(run().returncode == 1, "missing subcommand is a usage error")

    r = run("qc", "--lengths", "22,17,21.9,19")
    doc = json.loads(r.stdout)
    check(r.returncode == 0 and doc["component_count"] == 4, "qc 22,17,21.9,19: 4 components")
    check(validate(doc), "qc document validates")
    for n in (3, 4, 5):
        lengths = ",".join(str(v) for v in [5, 1, 2, 3, 4][:n])
        d = json.loads(run("qc", "--lengths", lengths).stdout)
        check(d["component_count"] == 2 ** (n - 2), f"qc n={n}: {2 ** (n - 2)} components")
    r = run("qc", "--lengths", "2,2,1")
    check(r.returncode == 1 and "longest edge" in r.stderr, "qc refuses a tie in the longest edge")

    analysis = json.loads(run("analyze", "--lengths", "22,17,21.9,19").stdout)
    qc = json.loads(run("qc", "--lengths", "22,17,21.9,19").stdout)
    listed = [p["angles"] for c in qc["components"] for p in c["special_points"] if p["kind"] == "diacyclic"]
    crit = [p["angles"] for p in analysis["critical_points"]]

    def close(a, b):
        return all(abs((x - y + math.pi) % (2 * math.pi) - math.pi) < 1e-4 for x, y in zip(a, b))

    check(all(any(close(a, b) for b in crit) for a in listed) and len(listed) == len(crit),
          "every qc diacyclic point appears in the analysis")

    r = run("oracle", "--lengths", "2,1,1", "--perturb", "1e-6", "--seed", "1")
    doc = json.loads(r.stdout)
    check(r.returncode == 0 and doc["pass"] and len(doc["matched"]) == 4, "oracle 2,1,1: 4 matched points")
    check(validate(doc), "oracle document validates")

    with tempfile.TemporaryDirectory() as tmp:
        tmp = pathlib.Path(tmp)
        csv = tmp / "grid.csv"
        svg = tmp / "heat.svg"
        r = run("levelset", "--lengths", "1,1,1", "--resolution", "32", "--csv", str(csv), "--svg", str(svg))
        check(r.returncode == 0 and r.stdout == "", "levelset writes to --csv")
        rows = csv.read_bytes().decode("utf-8").split("\n")
        check(rows[0] == "theta1,theta2,doubled_area" and rows[-1] == "" and len(rows) == 32 * 32 + 2,
              "levelset CSV: header, 1024 rows, LF endings")
        values = [float(x.split(",")[2]) for x in rows[1:-1]]
        check(abs(max(values) - 3 * 3 ** 0.5 / 2) < 0.1, "levelset maximum near the convex configuration")
        first = csv.read_bytes()
        run("levelset", "--lengths", "1,1,1", "--resolution", "32", "--csv", str(csv))
        check(csv.read_bytes() == first, "levelset CSV is byte-identical across runs")
        root = ET.parse(svg).getroot()
        check(root.tag == "{http://www.w3.org/2000/svg}svg" and root.get("version") == "1.1", "heatmap is SVG 1.1")
        check(run("levelset", "--lengths", "1,1,1,1").returncode == 1, "levelset rejects n != 3")

        a_json = tmp / "a.json"
        a_svg = tmp / "a.svg"
        r = run("analyze", "--lengths", "2,1,1", "--perturb", "1e-6", "--seed", "1", "--json", str(a_json),
                "--svg", str(a_svg))
        check(r.returncode == 0 and r.stdout == "" and a_json.exists(), "--json redirects the document")
        root = ET.parse(a_svg).getroot()
        groups = root.findall("{http://www.w3.org/2000/svg}g")
        check(len(groups) == 4, "analyze SVG: 4 panels for a generic 3-arm")
        check(all(el.tag != "{http://www.w3.org/2000/svg}script" for el in root.iter()), "SVG has no scripts")
        r = run("analyze", "--lengths", "22,17,21.9,19", "--svg", str(a_svg))
        groups = ET.parse(a_svg).getroot().findall("{http://www.w3.org/2000/svg}g")
        check(len(groups) == 12, "analyze SVG: one panel per critical point of 22,17,21.9,19")

        q_svg = tmp / "qc.svg"
        run("qc", "--lengths", "3,1,2", "--svg", str(q_svg))
        check((tmp / "qc-0.svg").exists() and (tmp / "qc-1.svg").exists(), "qc writes one SVG per component")

    if failures:
        print(f"{len(failures)} check(s) failed")
        sys.exit(1)


if __name__ == "__main__":
    main()
