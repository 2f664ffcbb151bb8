#!/usr/bin/env python3
"""Regenerates the bundled figure-eight fixtures from face-pairing combinatorics.

1. Enumerates oriented two-tetrahedron face pairings and keeps the one whose
   edge-equation rows (quad types 01/23 -> a, 02/13 -> b, 03/12 -> c) are
   {(2,1,0,2,1,0), (0,1,2,0,1,2)} and whose first homology is Z.
2. Performs a 2-3 move across a face shared by the two tetrahedra and computes
   the edge-equation rows of the resulting three-tetrahedron triangulation.
3. Searches labelings of the new tetrahedra (which one is x/y/v and a cyclic
   rotation of each quad triple) so that the exponent map
       Z->V''X', Z'->X''Y', Z''->Y''V', W->X''V', W'->V''Y', W''->Y''X'
   sends the two-tetrahedron edge lattice into the three-tetrahedron edge
   lattice modulo tetrahedron vectors, with X+Y+V the new edge.

Peripheral rows written here are placeholders carried over by the move;
census_rows.py replaces them with SnapPy's rows and checks that the edge rows
agree with SnapPy's triangulations.

Usage: fig8_fixtures.py OUTDIR
"""
import itertools
import json
import sys
from fractions import Fraction

import sympy

QUAD = {frozenset((0, 1)): 0, frozenset((2, 3)): 0,
        frozenset((0, 2)): 1, frozenset((1, 3)): 1,
        frozenset((0, 3)): 2, frozenset((1, 2)): 2}


def dump(doc):
    lines = []
    for key, value in doc.items():
        if isinstance(value, list) and value and isinstance(value[0], list):
            text = "[" + ", ".join(json.dumps(r) for r in value) + "]"
        else:
            text = json.dumps(value)
        lines.append(f"  {json.dumps(key)}: {text}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


def parity(p):
    p = list(p)
    s = 0
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s ^= 1
    return s


def inverse(p):
    q = [0] * 4
    for i, v in enumerate(p):
        q[v] = i
    return tuple(q)


class Tri:
    """glue[(t, f)] = (t2, perm) with perm mapping vertices of t to t2."""

    def __init__(self, n, glue):
        self.n = n
        self.glue = glue

    def edge_classes(self):
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        for t in range(self.n):
            for e in QUAD:
                find((t, e))
        for (t, f), (t2, p) in self.glue.items():
            for e in QUAD:
                if f in e:
                    continue
                union((t, e), (t2, frozenset(p[v] for v in e)))
        classes = {}
        for t in range(self.n):
            for e in QUAD:
                classes.setdefault(find((t, e)), []).append((t, e))
        return sorted(classes.values(), key=lambda c: sorted((t, tuple(sorted(e))) for t, e in c))

    def edge_rows(self):
        rows = []
        for cls in self.edge_classes():
            row = [0] * (3 * self.n)
            for t, e in cls:
                row[3 * t + QUAD[e]] += 1
            rows.append(row)
        return rows

    def oriented(self):
        return all(parity(p) == 1 for _, p in self.glue.values())

    def h1(self):
        """Smith form of the abelianised face-pairing presentation."""
        pairs = sorted({tuple(sorted([(t, f), (p[0], p[1][f])])) for (t, f), p in self.glue.items()})
        idx = {pr: i for i, pr in enumerate(pairs)}
        rels = []
        for cls in self.edge_classes():
            t, e = cls[0]
            i, j = sorted(e)
            k, l = [v for v in range(4) if v not in e]
            row = [0] * len(pairs)
            start = (t, i, j, k)
            cur = start
            while True:
                t, i, j, k = cur
                t2, p = self.glue[(t, k)]
                pr = tuple(sorted([(t, k), (t2, p[k])]))
                row[idx[pr]] += 1 if (t, k) == pr[0] else -1
                l = [v for v in range(4) if v not in (i, j, k)][0]
                ni, nj, nk = p[i], p[j], p[l]
                # exit through the face opposite the image of l
                cur = (t2, ni, nj, nk)
                if (t2, frozenset((ni, nj))) == (start[0], frozenset((start[1], start[2]))) and nk == start[3]:
                    break
                if len(row) > 10000:
                    raise RuntimeError("edge walk did not close")
            rels.append(row)
        # spanning tree of the dual graph kills generators
        tree, seen = [], {0}
        changed = True
        while changed:
            changed = False
            for pr in pairs:
                a, b = pr[0][0], pr[1][0]
                if (a in seen) != (b in seen):
                    tree.append(idx[pr])
                    seen |= {a, b}
                    changed = True
        for g in tree:
            r = [0] * len(pairs)
            r[g] = 1
            rels.append(r)
        m = sympy.Matrix(rels)
        from sympy.matrices.normalforms import smith_normal_form
        snf = smith_normal_form(m, domain=sympy.ZZ)
        diag = [abs(snf[i, i]) for i in range(min(snf.shape)) if snf[i, i] != 0]
        free = len(pairs) - len(diag)
        torsion = [d for d in diag if d != 1]
        return free, torsion


def all_two_tet_triangulations():
    faces = [(t, f) for t in range(2) for f in range(4)]
    odd_perms = [p for p in itertools.permutations(range(4)) if parity(p) == 1]

    def matchings(items):
        if not items:
            yield []
            return
        a = items[0]
        for i in range(1, len(items)):
            rest = items[1:i] + items[i + 1:]
            for m in matchings(rest):
                yield [(a, items[i])] + m

    for m in matchings(faces):
        choices = []
        for (a, b) in m:
            choices.append([p for p in odd_perms if p[a[1]] == b[1]])
        for sel in itertools.product(*choices):
            glue = {}
            for (a, b), p in zip(m, sel):
                glue[a] = (b[0], p)
                glue[b] = (a[0], inverse(p))
            yield Tri(2, glue)


def rotate_row(row, t, r):
    row = list(row)
    a, b, c = row[3 * t:3 * t + 3]
    for _ in range(r):
        a, b, c = c, a, b
    row[3 * t:3 * t + 3] = [a, b, c]
    return row


def relabel_rotation(tri, t, r):
    """Even vertex relabelling of tetrahedron t that rotates (a,b,c)->(c,a,b) r times."""
    # the 3-cycle on vertices (1 2 3) sends 01->02, 02->03, 03->01
    sigma = (0, 2, 3, 1)
    perm = (0, 1, 2, 3)
    for _ in range(r):
        perm = tuple(sigma[perm[v]] for v in range(4))
    # old vertex v of t becomes perm[v]
    glue = {}
    for (s, f), (s2, p) in tri.glue.items():
        src = perm if s == t else (0, 1, 2, 3)
        dst = perm if s2 == t else (0, 1, 2, 3)
        # new vertex u of s  -> old vertex src^-1(u) -> p -> dst
        inv = inverse(src)
        np_ = tuple(dst[p[inv[u]]] for u in range(4))
        glue[(s, src[f])] = (s2, np_)
    return Tri(tri.n, glue)


TARGET = sorted([[2, 1, 0, 2, 1, 0], [0, 1, 2, 0, 1, 2]])


def find_fig8():
    for tri in all_two_tet_triangulations():
        if not tri.oriented():
            continue
        for r0 in range(3):
            for r1 in range(3):
                t = relabel_rotation(relabel_rotation(tri, 0, r0), 1, r1)
                if sorted(t.edge_rows()) == TARGET and t.h1() == (1, []):
                    return t
    raise RuntimeError("no matching triangulation")


def two_three(tri, t0, f0):
    t1, p01 = tri.glue[(t0, f0)]
    assert t1 != t0
    f1 = p01[f0]
    tri_vs = [v for v in range(4) if v != f0]
    # abstract labels: ('P',), ('Q',), ('T', v) for t0's triangle vertices v
    def label(t, v):
        if t == t0:
            return ('P',) if v == f0 else ('T', v)
        if t == t1:
            return ('Q',) if v == f1 else ('T', inverse(p01)[v])
        raise AssertionError

    # new tet for triangle vertex X: t0's numbering with X's slot taken by Q
    new_tets = {}
    for i, X in enumerate(tri_vs):
        numbering = {}
        for v in range(4):
            numbering[('Q',) if v == X else label(t0, v)] = v
        new_tets[X] = (i, numbering)

    others = [t for t in range(tri.n) if t not in (t0, t1)]
    base = 3
    old_to_new = {t: base + i for i, t in enumerate(others)}

    def new_face(t, f):
        """(new tet, map old vertex -> new vertex) for an old face other than the shared one."""
        if t in (t0, t1):
            X = label(t, f)[1]
            nt, numbering = new_tets[X]
            vmap = {}
            for v in range(4):
                lab = label(t, v)
                if v == f:
                    lab = ('Q',) if t == t0 else ('P',)
                vmap[v] = numbering[lab]
            return nt, vmap
        return old_to_new[t], {v: v for v in range(4)}

    glue = {}
    for (t, f), (t2, p) in tri.glue.items():
        if (t, f) in ((t0, f0), (t1, f1)):
            continue
        nt, a = new_face(t, f)
        nt2, b = new_face(t2, p[f])
        inv_a = {v: k for k, v in a.items()}
        glue[(nt, a[f])] = (nt2, tuple(b[p[inv_a[u]]] for u in range(4)))
    # internal faces between new tets: identity on abstract labels
    for X in tri_vs:
        for Y in tri_vs:
            if X == Y:
                continue
            nx, numx = new_tets[X]
            ny, numy = new_tets[Y]
            # face of N_X opposite label ('T', Y) is {P, Q, T_Z}, shared with N_Y
            inv_x = {v: k for k, v in numx.items()}
            perm = []
            for u in range(4):
                lab = inv_x[u]
                if lab == ('T', Y):
                    lab = ('T', X)
                perm.append(numy[lab])
            glue[(nx, numx[('T', Y)])] = (ny, tuple(perm))
    return Tri(3 + len(others), glue)


def omega(x, y):
    s = 0
    for j in range(0, len(x), 3):
        a, b, c = x[j:j + 3]
        a2, b2, c2 = y[j:j + 3]
        s += (a * b2 - b * a2) + (b * c2 - c * b2) + (c * a2 - a * c2)
    return s


def phi32(vec, z, w, x, y, v, n_target):
    """Exponent transport for the 3-2 correspondence (source tets z, w)."""
    out = [0] * (3 * n_target)
    A, B, C = 0, 1, 2
    images = {
        (z, A): [(v, C), (x, B)], (z, B): [(x, C), (y, B)], (z, C): [(y, C), (v, B)],
        (w, A): [(x, C), (v, B)], (w, B): [(v, C), (y, B)], (w, C): [(y, C), (x, B)],
    }
    for t in (z, w):
        for s in range(3):
            for (tt, ss) in images[(t, s)]:
                out[3 * tt + ss] += vec[3 * t + s]
    return out


def mod_delta(vec):
    out = []
    for j in range(0, len(vec), 3):
        a, b, c = vec[j:j + 3]
        out += [a - b, c - b]
    return out


def rank(rows):
    if not rows:
        return 0
    return sympy.Matrix(rows).rank()


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else "."
    t2 = find_fig8()
    rows2 = t2.edge_rows()
    order = sorted(range(len(rows2)), key=lambda i: rows2[i] != [2, 1, 0, 2, 1, 0])
    rows2 = [rows2[i] for i in order]
    print("T2 edge rows", rows2, "H1", t2.h1())
    meridian2 = [1, 0, 0, 0, 0, -1]
    longitude2 = [0, 0, 0, 2, 0, -2]
    assert omega(longitude2, meridian2) == 2
    assert all(omega(e, meridian2) == 0 and omega(e, longitude2) == 0 for e in rows2)

    t3 = two_three(t2, 0, 0)
    assert t3.oriented(), "2-3 move broke orientation"
    print("T3 H1", t3.h1())
    found = None
    for rot in itertools.product(range(3), repeat=3):
        tt = t3
        for t, r in enumerate(rot):
            tt = relabel_rotation(tt, t, r)
        rows3 = tt.edge_rows()
        for (x, y, v) in itertools.permutations(range(3)):
            new_edge = [0] * 9
            for t in (x, y, v):
                new_edge[3 * t] = 1
            if new_edge not in rows3:
                continue
            for (z, w) in ((0, 1), (1, 0)):
                imgs = [phi32(e, z, w, x, y, v, 3) for e in rows2]
                lat3 = [mod_delta(r) for r in rows3]
                combined = lat3 + [mod_delta(r) for r in imgs]
                if rank(combined) != rank(lat3):
                    continue
                base = [mod_delta(r) for r in imgs] + [mod_delta(new_edge)]
                if rank(base) != rank(lat3):
                    continue
                found = (tt, rot, (x, y, v), (z, w), rows3)
                break
            if found:
                break
        if found:
            break
    if not found:
        raise RuntimeError("no labelling compatible with the 3-2 map")
    tt, rot, (x, y, v), (z, w), rows3 = found
    print("T3 rotation", rot, "x,y,v =", (x, y, v), "z,w =", (z, w))
    print("T3 edge rows", rows3)

    def reduce(vec):
        out = []
        for j in range(0, len(vec), 3):
            a, b, c = vec[j:j + 3]
            m = b
            out += [a - m, 0, c - m]
        return out

    meridian3 = reduce(phi32(meridian2, z, w, x, y, v, 3))
    longitude3 = reduce(phi32(longitude2, z, w, x, y, v, 3))
    print("T3 peripheral", meridian3, longitude3, omega(longitude3, meridian3))

    fig8 = {
        "name": "4_1 (two tetrahedra)",
        "num_tetrahedra": 2, "num_cusps": 1,
        "edge_rows": rows2,
        "meridian_rows": [meridian2], "longitude_rows": [longitude2],
        "one_efficient": True,
    }
    fig8_3 = {
        "name": "4_1 (three tetrahedra, 2-3 move of the two-tetrahedron triangulation)",
        "num_tetrahedra": 3, "num_cusps": 1,
        "edge_rows": rows3,
        "meridian_rows": [meridian3], "longitude_rows": [longitude3],
        "one_efficient": True,
    }
    move = {
        "kind": "3-2",
        "source": "fig8.json", "target": "fig8_3tet.json",
        "removed_tets": [z, w], "inserted_tets": [x, y, v],
        "fixed_map": [],
    }
    for name, doc in (("fig8.json", fig8), ("fig8_3tet.json", fig8_3), ("fig8_move.json", move)):
        with open(f"{outdir}/{name}", "w") as fh:
            fh.write(dump(doc))


if __name__ == "__main__":
    main()
