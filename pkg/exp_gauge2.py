"""Canon-seed cube: do squares commute raw? And tree-transport cost."""
import itertools, time

from kr2kh.diagram import builtin
from kr2kh.krcube import (
    KrCube, _fast_matrix, edge_chi_kind, edge_target, split_circle_pair,
    transport_seed,
)
from kr2kh.poly import MultiPoly, ONE

from exp_tau import compute_tau


def canon_matrix(d, tau, cube, vp, j):
    vt = edge_target(d, vp, j)
    rv_s, rv_t = cube.vertices[vp], cube.vertices[vt]
    if len(rv_s.reps) == len(rv_t.reps) + 1:
        return _fast_matrix(rv_s, rv_t, ONE)
    new, old = split_circle_pair(rv_s, rv_t)
    seed = tau[new] * MultiPoly.var(new) + tau[old] * MultiPoly.var(old)
    return _fast_matrix(rv_s, rv_t, seed)


for name in ["trefoil", "trefoil-mirror", "figure8", "trefoil-kink", "t2_7"]:
    d = builtin(name)
    tau = compute_tau(d)
    t0 = time.time()
    cube = KrCube(d)
    t1 = time.time()
    mats = {(vp, j): canon_matrix(d, tau, cube, vp, j)
            for vp, j in cube.edges()}
    t2 = time.time()
    n = len(d.crossings)
    bad = 0
    total = 0
    for vp in cube.vertices:
        idx = [i for i in range(n) if vp[i] == (0 if d.crossings[i].sign > 0 else -1)]
        for i, j in itertools.combinations(idx, 2):
            vi = edge_target(d, vp, i)
            vj = edge_target(d, vp, j)
            total += 1
            p = mats[(vi, j)].compose(mats[(vp, i)])
            q = mats[(vj, i)].compose(mats[(vp, j)])
            if p.entries != q.entries:
                bad += 1
    t3 = time.time()
    # tree transport cost: BFS tree from the base vertex, one seed per edge
    base = tuple(0 if c.sign > 0 else -1 for c in d.crossings)
    seen = {base}
    frontier = [base]
    ntr = 0
    t4 = time.time()
    while frontier:
        nxt = []
        for vp in frontier:
            for j in range(n):
                if vp[j] != (0 if d.crossings[j].sign > 0 else -1):
                    continue
                vt = edge_target(d, vp, j)
                if vt in seen:
                    continue
                seen.add(vt)
                transport_seed(d, cube.vertices[vp], cube.vertices[vt], j)
                ntr += 1
                nxt.append(vt)
        frontier = nxt
    t5 = time.time()
    print("%-14s squares=%d bad=%d | reduce %.2fs canon-mats %.2fs "
          "squares %.2fs | tree transports=%d in %.2fs"
          % (name, total, bad, t1 - t0, t2 - t1, t3 - t2, ntr, t5 - t4))
