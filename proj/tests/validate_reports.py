"""Runs minsurf commands, validates every --json report against the shipped schema,
and checks that repeated runs produce byte-identical reports and OBJ files."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema


def main() -> int:
    exe, schema_path, data = sys.argv[1:4]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    tmp = tempfile.mkdtemp(prefix="minsurf_reports_")

    def obj(name):
        return os.path.join(tmp, name)

    cases = [
        (["plateau-catenoid", "--radius", "2"], 0),
        (["plateau-catenoid", "--radius", "1"], 0),
        (["plateau-catenoid", "--radius", "-3"], 2),
        (["check", "catalog:enneper"], 0),
        (["check", "catalog:sphere", "--samples", "20"], 0),
        (["check", f"{data}/helicatenoid.json", "--samples", "20"], 0),
        (["check", f"{data}/bad_period.json"], 1),
        (["check", "catalog:costa"], 2),
        (["check", f"{data}/missing.json"], 2),
        (["periods", f"{data}/catenoid_weierstrass.json"], 0),
        (["periods", f"{data}/bad_period.json"], 1),
        (["total-curvature", "catalog:meeks-mobius"], 0),
        (["total-curvature", "catalog:helicoid"], 0),
        (["total-curvature", f"{data}/catenoid_annulus.json", "--method", "spherical"], 0),
        (["mesh", "catalog:catenoid", "--res", "16x16", "-o", obj("c.obj")], 0),
        (["mesh", "catalog:afl-mobius-r4", "--res", "8x8", "-o", obj("a.obj")], 0),
        (["solve-graph", f"{data}/catenoid_graph_33.json", "-o", obj("s.csv")], 0),
        (["catalog", "list"], 0),
        (["catalog", "info", "afl-mobius-r4"], 0),
        (["check"], 2),
    ]
    failures = 0
    for args, code in cases:
        for extra in ([], ["--timings"]):
            argv = [exe, *args, "--json", *extra]
            first = subprocess.run(argv, capture_output=True, text=True)
            label = " ".join(args + extra)
            if first.returncode != code:
                print(f"FAIL exit {first.returncode} != {code}: {label}\n{first.stderr}")
                failures += 1
                continue
            report = json.loads(first.stdout)
            errors = sorted(validator.iter_errors(report), key=str)
            if errors:
                print(f"FAIL schema: {label}: {errors[0].message}")
                failures += 1
                continue
            if extra:
                continue
            before = {p: open(obj(p), "rb").read() for p in ("c.obj", "a.obj", "s.csv") if os.path.exists(obj(p))}
            second = subprocess.run(argv, capture_output=True, text=True)
            after = {p: open(obj(p), "rb").read() for p in before}
            if second.stdout != first.stdout or before != after:
                print(f"FAIL nondeterministic: {label}")
                failures += 1
                continue
            print(f"ok   {label}")
    print(f"{len(cases)} commands, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
