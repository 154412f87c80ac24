"""Prototype: tau from shadow paths; test ident == tau*tau and seed formula."""
import itertools
from collections import deque

from kr2kh.diagram import builtin
from kr2kh.krcube import (
    KrCube, edge_chi_kind, edge_target, reduce_vertex, split_circle_pair,
    transport_seed,
)
from kr2kh.poly import MultiPoly

IN, OUT = "in", "out"


def shadow_edges(d):
    """Atomic edges of the mark-subdivided shadow.

    Returns (edges, at_crossing, at_mark):
      edges: list of (u, v) node pairs, nodes = ('m', mark) or ('x', ci)
      at_crossing: {(ci, slot): (edge_id, node_at_far_end)}
      at_mark: {mark: [(edge_id, far_node), ...]}
    """
    m = len(d.arcs)
    edges = []
    at_crossing = {}
    at_mark = {}

    def add(u, v, slot_u=None, slot_v=None):
        eid = len(edges)
        edges.append((u, v))
        if u[0] == "x":
            at_crossing[(u[1], slot_u)] = (eid, v)
        else:
            at_mark.setdefault(u[1], []).append((eid, v))
        if v[0] == "x":
            at_crossing[(v[1], slot_v)] = (eid, u)
        else:
            at_mark.setdefault(v[1], []).append((eid, u))

    for a in d.arcs:
        if a.tail is None:
            at_mark.setdefault(a.id, [])
            continue
        aux = a.id + m
        tci, tslot = a.tail
        hci, hslot = a.head
        add(("x", tci), ("m", a.id), slot_u=tslot)
        add(("m", a.id), ("m", aux))
        add(("m", aux), ("x", hci), slot_v=hslot)
    return edges, at_crossing, at_mark


def compute_tau(d):
    edges, at_crossing, at_mark = shadow_edges(d)
    m = len(d.arcs)
    tau = {}
    for comp in d.components:
        w = min(comp)
        if d.arcs[w - 1].tail is None:
            tau[w] = 1
            continue
        # BFS from w over (edge, to_node) states, tracking parity
        tau[w] = 1
        start = [(eid, far, 0) for eid, far in at_mark[w]]
        seen = set()
        queue = deque(start)
        while queue:
            eid, node, par = queue.popleft()
            if (eid, node) in seen:
                continue
            seen.add((eid, node))
            if node[0] == "m":
                mk = node[1]
                if mk not in tau:
                    tau[mk] = -1 if par % 2 else 1
                for eid2, far in at_mark[mk]:
                    if eid2 != eid:
                        queue.append((eid2, far, par))
            else:
                ci = node[1]
                cr = d.crossings[ci]
                slot_in = next(
                    s for s in range(4)
                    if at_crossing.get((ci, s), (None,))[0] == eid
                )
                for s in range(4):
                    if (s % 2) == (slot_in % 2):
                        continue  # same strand
                    eid2, far = at_crossing[(ci, s)]
                    rev = cr.slot_status(s) == cr.slot_status(slot_in)
                    queue.append((eid2, far, par + (1 if rev else 0)))
    return tau


names = ["unknot", "unknot-pos-kink", "unknot-neg-kink", "hopf+", "hopf-",
         "trefoil", "trefoil-mirror", "trefoil-kink", "figure8"]

print("=== ident == tau(z)*tau(rep) at every vertex ===")
for name in names:
    d = builtin(name)
    tau = compute_tau(d)
    cube = KrCube(d)
    bad = 0
    for vp, rv in cube.vertices.items():
        for mark, (sgn, rep) in rv.image.items():
            if sgn != tau[mark] * tau[rep]:
                bad += 1
    print("%-16s marks=%d  violations=%d  tau=%s"
          % (name, len(tau), bad, "" if bad == 0 else tau))

print()
print("=== transported seed vs eta*(tau(n)zn + tau(o)zo) ===")
for name in names:
    d = builtin(name)
    tau = compute_tau(d)
    cube = KrCube(d)
    for vp, j in cube.edges():
        vt = edge_target(d, vp, j)
        rv_s, rv_t = cube.vertices[vp], cube.vertices[vt]
        if rv_s.mf0.nrows > 12:
            continue
        seed = transport_seed(d, rv_s, rv_t, j)
        which = edge_chi_kind(d, j)
        if len(rv_s.reps) == len(rv_t.reps) + 1:
            print("  %-14s %s j=%d chi%d merge seed=%s"
                  % (name, vp, j, which, seed))
        else:
            new, old = split_circle_pair(rv_s, rv_t)
            form = tau[new] * MultiPoly.var(new) + tau[old] * MultiPoly.var(old)
            if seed == form:
                rel = "+form"
            elif seed == -1 * form:
                rel = "-form"
            else:
                rel = "OTHER: seed=%s form=%s" % (seed, form)
            print("  %-14s %s j=%d chi%d split %s" % (name, vp, j, which, rel))
