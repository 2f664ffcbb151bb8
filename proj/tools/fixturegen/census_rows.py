#!/usr/bin/env python3
"""Cross-checks the bundled figure-eight fixtures against SnapPy's gluing equations.

SnapPy lists, per tetrahedron, the log-exponents of (z, z', z'') in each edge
equation followed by the meridian and longitude equations of every cusp. For
the census manifold 4_1 and for the three-tetrahedron triangulation SnapPy
produces by a 2-3 move through face 0 of tetrahedron 1, these are exactly the
rows of the fixture format.

The script compares edge rows with the fixtures and, with --write, copies the
peripheral rows into them. It needs the `snappy` package.

Usage: census_rows.py FIXTURE_DIR [--write]
"""
import argparse
import json
import pathlib

import snappy


def rows_of(manifold):
    eqs = [list(map(int, r)) for r in manifold.gluing_equations()]
    n = manifold.num_tetrahedra()
    cusps = manifold.num_cusps()
    edges = eqs[:n]
    periph = eqs[n:]
    return edges, [periph[2 * k] for k in range(cusps)], [periph[2 * k + 1] for k in range(cusps)]


def dump(doc):
    lines = []
    for key, value in doc.items():
        if isinstance(value, list) and value and isinstance(value[0], list):
            text = "[" + ", ".join(json.dumps(r) for r in value) + "]"
        else:
            text = json.dumps(value)
        lines.append(f"  {json.dumps(key)}: {text}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("fixture_dir")
    ap.add_argument("--write", action="store_true")
    args = ap.parse_args()
    root = pathlib.Path(args.fixture_dir)

    two = snappy.Manifold("4_1")
    three = snappy.Manifold("4_1")
    three._two_to_three(1, 0)

    status = 0
    for name, manifold in (("fig8.json", two), ("fig8_3tet.json", three)):
        edges, meridians, longitudes = rows_of(manifold)
        path = root / name
        doc = json.loads(path.read_text())
        same = doc["edge_rows"] == edges
        print(f"{name}: edge rows {'match' if same else 'DIFFER'}")
        print(f"  meridian  {meridians}")
        print(f"  longitude {longitudes}")
        if not same:
            status = 1
            continue
        if args.write:
            doc["meridian_rows"] = meridians
            doc["longitude_rows"] = longitudes
            path.write_text(dump(doc))
    raise SystemExit(status)


if __name__ == "__main__":
    main()
