#!/usr/bin/env python3
"""Regenerate the benchmark graphs in data/ from their combinatorial definitions.

Usage: tools/make_graphs.py [outdir]

DSJC125.9 is a random graph whose generator seed is not public, so it is not
produced here. Drop the original DIMACS file into data/ to use it.
"""

import itertools
import pathlib
import sys


def write(path, n, edges, comment):
    edges = sorted({(min(a, b), max(a, b)) for a, b in edges})
    with open(path, "w") as f:
        f.write(f"c {comment}\n")
        f.write(f"p edge {n} {len(edges)}\n")
        for a, b in edges:
            f.write(f"e {a + 1} {b + 1}\n")
    print(f"{path.name}: {n} vertices, {len(edges)} edges")


def hamming(bits, dist):
    n = 1 << bits
    return n, [(a, b) for a in range(n) for b in range(a + 1, n) if bin(a ^ b).count("1") >= dist]


def mycielski(levels):
    n, edges = 2, [(0, 1)]
    for _ in range(levels):
        new = list(edges)
        for a, b in edges:
            new += [(a, n + b), (b, n + a)]
        new += [(n + i, 2 * n) for i in range(n)]
        n, edges = 2 * n + 1, new
    return n, edges


def queen(k):
    cells = [(r, c) for r in range(k) for c in range(k)]
    edges = []
    for a, (r1, c1) in enumerate(cells):
        for b in range(a + 1, len(cells)):
            r2, c2 = cells[b]
            if r1 == r2 or c1 == c2 or abs(r1 - r2) == abs(c1 - c2):
                edges.append((a, b))
    return len(cells), edges


def keller4():
    # neighbourhood of the origin in the Keller graph on {0..3}^4
    def adjacent(u, v):
        diff = [(a - b) % 4 for a, b in zip(u, v)]
        return sum(d != 0 for d in diff) >= 2 and any(d == 2 for d in diff)

    origin = (0, 0, 0, 0)
    verts = [v for v in itertools.product(range(4), repeat=4) if adjacent(origin, v)]
    edges = [(a, b) for a in range(len(verts)) for b in range(a + 1, len(verts)) if adjacent(verts[a], verts[b])]
    return len(verts), edges


def mann_a9():
    # clique form of the Steiner triple covering problem on AG(2,3); built as
    # the complement of: one vertex per point, one vertex per (line, point on
    # line), a triangle on each line's three vertices and an edge from each
    # (line, point) vertex to its point vertex.
    points = [(x, y) for x in range(3) for y in range(3)]
    lines = set()
    for p, q in itertools.combinations(points, 2):
        r = ((-p[0] - q[0]) % 3, (-p[1] - q[1]) % 3)
        lines.add(tuple(sorted({p, q, r})))
    lines = sorted(lines)
    assert len(lines) == 12
    n = len(points) + 3 * len(lines)
    sparse = []
    for t, line in enumerate(lines):
        ids = [len(points) + 3 * t + k for k in range(3)]
        sparse += list(itertools.combinations(ids, 2))
        sparse += [(ids[k], points.index(p)) for k, p in enumerate(line)]
    sparse = {(min(a, b), max(a, b)) for a, b in sparse}
    edges = [(a, b) for a in range(n) for b in range(a + 1, n) if (a, b) not in sparse]
    return n, edges


def main():
    out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent / "data")
    out.mkdir(parents=True, exist_ok=True)
    write(out / "hamming6-2.clq", *hamming(6, 2), "hamming6-2: 6-bit words, edge when Hamming distance >= 2")
    write(out / "hamming6-4.clq", *hamming(6, 4), "hamming6-4: 6-bit words, edge when Hamming distance >= 4")
    write(out / "keller4.clq", *keller4(), "keller4")
    write(out / "MANN_a9.clq", *mann_a9(), "MANN_a9")
    for k, name in ((2, "myciel3"), (3, "myciel4"), (4, "myciel5")):
        write(out / f"{name}.col", *mycielski(k), f"{name}: Mycielski graph")
    write(out / "queen5_5.col", *queen(5), "queen5_5: 5x5 queen graph")
    write(out / "queen6_6.col", *queen(6), "queen6_6: 6x6 queen graph")


if __name__ == "__main__":
    main()
