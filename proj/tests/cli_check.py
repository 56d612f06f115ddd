"""End-to-end checks of the tbill command line: schemas, SVG/PGM output, exit codes, determinism."""

import itertools
import json
import os
import subprocess
import sys
import tempfile
import xml.etree.ElementTree as ET

import jsonschema

TOOL = sys.argv[1]
SCHEMAS = sys.argv[2]
failures = []


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def run(*args, env=None):
    return subprocess.run([TOOL, *args], capture_output=True, env=env)


def schema(name):
    with open(os.path.join(SCHEMAS, name + ".schema.json")) as f:
        return json.load(f)


def valid(doc, name):
    try:
        jsonschema.validate(doc, schema(name))
        return True
    except jsonschema.ValidationError as e:
        print("  schema error:", e.message)
        return False


def load(proc):
    return json.loads(proc.stdout)


def well_formed_svg(path):
    try:
        root = ET.parse(path).getroot()
    except ET.ParseError as e:
        print("  xml error:", e)
        return False
    return root.tag.endswith("svg") and "viewBox" in root.attrib


tmp = tempfile.mkdtemp()

p = run("trace", "--triangle", "60,60,60", "--tau", "0.2", "--steps", "10000")
check(p.returncode == 0, "trace exits 0")
d = load(p)
check(valid(d, "trace"), "trace output matches schema")
check("status" in d["record"] and d["record"]["tau_dispersion"] < 1e-6, "trace status present, tau dispersion < 1e-6")
check(run("trace", "--triangle", "60,60,60", "--tau", "0.2", "--steps", "10000").stdout == p.stdout, "trace output is byte-identical on rerun")

svg = os.path.join(tmp, "square.svg")
p = run("trace", "--quad", "45,315,225,135", "--tau", "0.1", "--svg", svg, "--crossings")
check(p.returncode == 0 and valid(load(p), "trace"), "square trace with crossings matches schema")
check(well_formed_svg(svg), "square trace SVG is well-formed")

p = run("trace", "--triangle", "100,50,30", "--tau", "0.05", "--theta", "11", "--steps", "200000")
d = load(p)
check(p.returncode == 0 and valid(d, "trace") and d["record"]["status"] == "LinearEscape" and "escape_profile" in d,
      "obtuse trace escapes linearly, with an escape profile")

p = run("trace", "--steps", "10")
check(p.returncode == 2 and b"Usage" in p.stderr, "missing shape flag: exit 2 with usage text")
p = run("trace", "--triangle", "60,60,60", "--bogus", "1")
check(p.returncode == 2, "unknown flag: exit 2")
p = run("trace", "--triangle", "60,60")
check(p.returncode == 2, "malformed angle list: exit 2")
p = run()
check(p.returncode == 2, "no subcommand: exit 2")
p = run("trace", "--triangle", "100,50,30", "--tau", "0.95")
check(p.returncode == 4, "line missing the tile: exit 4")

vertex = load(run("helicoid", "--triangle", "60,60,60", "--samples", "0"))["shape"]["vertices"][0]
p = run("trace", "--triangle", "60,60,60", "--start", "0,0", "--dir", f"{vertex[0]},{vertex[1]}", "--strict")
check(p.returncode == 3 and load(p)["record"]["status"] == "SingularHit", "vertex hit under --strict: exit 3")
p = run("trace", "--triangle", "60,60,60", "--start", "0,0", "--dir", f"{vertex[0]},{vertex[1]}")
check(p.returncode == 0, "vertex hit without --strict: exit 0")

p = run("helicoid", "--triangle", "70,60,50", "--tau", "0")
d = load(p)
check(p.returncode == 0 and valid(d, "helicoid"), "helicoid output matches schema")
check(d["genus"] == 3 and d["chi"] == -4, "acute triangle: genus 3, chi -4")
d = load(run("helicoid", "--triangle", "110,40,30", "--samples", "10"))
check(d["genus"] == 1 and valid(d, "helicoid"), "obtuse triangle: genus 1")
d = load(run("helicoid", "--quad", "10,280,170,100", "--samples", "10"))
check(d["genus"] == 3 and len(d["model"]["saddles"]) == 4 and all(s["index"] == -1 for s in d["model"]["saddles"]),
      "quad containing its circumcentre: 4 saddles of index -1, genus 3")
d = load(run("helicoid", "--triangle", "70,60,50", "--tau", "0.2", "--samples", "10"))
check(d["genus"] is None and "genus_unavailable" in d and valid(d, "helicoid"), "genus withheld at nonzero energy")

p = run("iet", "--quad", "50,300,200,120", "--tau", "0.1", "--orbit-length", "20", "--orbit-start", "0.3",
        "--crosscheck", "200", "--theta", "25")
d = load(p)
check(p.returncode == 0 and valid(d, "iet"), "iet output matches schema")
check(d["iet"]["T"]["count"] == 8 and d["iet"]["F"]["count"] == 4, "quad: F has 4 intervals, T has 8")
check(d["crosscheck"]["ok"], "quad crosscheck agrees")
d = load(run("iet", "--triangle", "70,60,50", "--tau", "0.1"))
check(d["iet"]["T"]["count"] == 6 and d["iet"]["F"]["count"] == 3, "triangle: F has 3 intervals, T has 6")

pgm = os.path.join(tmp, "g.pgm")
p = run("gasket", "--grid", "512", "--depth", "30", "--pgm", pgm, "--samples", "2000", "--point", "0.6,0.3,0.1",
        "--triangle", "70,60,50")
d = load(p)
check(p.returncode == 0 and valid(d, "gasket"), "gasket output matches schema")
g = d["grid"]["depth"]
size = d["grid"]["size"]
big = size - 1
check(size == 512 and len(g) == 512 and all(len(r) == 512 for r in g), "gasket grid is 512x512")
sym = True
for y in range(0, size, 3):
    for x in range(0, y + 1, 3):
        a, b, c = x, big - y, y - x
        for q in itertools.permutations((a, b, c)):
            if g[big - q[1]][q[0]] != g[y][x]:
                sym = False
check(sym and d["symmetric"], "gasket depth map is symmetric under coordinate permutations")
check(g[big][0] == 30 or g[0][0] == 30, "simplex corner reaches the depth cap")
with open(pgm, "rb") as f:
    head = f.read(15)
check(head.startswith(b"P5\n512 512\n255\n"), "PGM header")
check(os.path.getsize(pgm) == 15 + 512 * 512, "PGM size")

cfg = os.path.join(tmp, "sweep.json")
with open(cfg, "w") as f:
    json.dump({"family": "mixed", "shapes": 4, "starts": 3, "steps": 200000, "seed": 11}, f)
env1 = dict(os.environ, TILING_BILLIARDS_THREADS="1")
env4 = dict(os.environ, TILING_BILLIARDS_THREADS="4")
a = run("sweep", "--config", cfg, "--shapes", "3", env=env1)
b = run("sweep", "--config", cfg, "--shapes", "3", env=env4)
d = json.loads(a.stdout)
check(a.returncode == 0 and valid(d, "sweep"), "sweep output matches schema")
check(len(d["sweep"]["cells"]) == 3 and d["sweep"]["config"]["seed"] == 11, "flags override the config file")
check(a.stdout == b.stdout, "sweep JSON byte-identical across thread counts")
check(run("sweep", "--config", os.path.join(tmp, "missing.json")).returncode == 2, "missing config file: exit 2")

svg = os.path.join(tmp, "tree.svg")
p = run("treecheck", "--triangle", "50,60,70", "--tau", "0.3", "--theta", "33", "--svg", svg)
d = load(p)
check(p.returncode == 0 and valid(d, "treecheck") and d["tree"]["is_tree"], "treecheck output matches schema, is a tree")
check(well_formed_svg(svg), "treecheck SVG is well-formed")
p = run("treecheck", "--triangle", "100,50,30", "--tau", "0.05", "--theta", "11", "--steps", "200000")
check(p.returncode == 1, "treecheck on a non-periodic trajectory: exit 1")

svg = os.path.join(tmp, "fol.svg")
p = run("foliation", "--triangle", "70,60,50", "--theta", "143", "--flower", "--svg", svg)
d = load(p)
check(p.returncode == 0 and valid(d, "foliation"), "foliation output matches schema")
check(len(d["flower"]["petals"]) >= 1, "flower report lists petals")
check(well_formed_svg(svg), "foliation SVG is well-formed")

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
