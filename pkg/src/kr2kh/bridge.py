"""The explicit dictionary between the two resolution cubes.

Both cube theories attach a module to every vertex: the smoothing cube a
tensor power of the two-dimensional Frobenius algebra, the resolution
cube the reduced module spanned by square-free monomials in the circle
representatives.  The translation needs three ingredients:

  * a sign tau(z) for every mark z, read off from turning data of a path
    from z to a base point on the diagram shadow,
  * one generator g_v of each reduced module, propagated across the cube
    from the base vertex,
  * the monomial map theta sending a circle decorated with x to
    tau(z) * z times the generator, z the circle's representative.

Nothing here is taken on faith.  tau is checked for path independence by
exhaustive enumeration, the generators are rechecked on every non-tree
edge, theta is checked to intertwine every single pair of edge maps, and
the final homology tables are compared dimension by dimension.
"""

from __future__ import annotations

import itertools
from collections import deque
from fractions import Fraction

from .diagram import smooth
from .khcube import (
    build_kh_cube,
    edge_apply,
    edge_sign,
    kauffman_bracket_jones,
    kh_homology,
    vertex_degrees,
)
from .krcube import (
    KrCube,
    assemble_kr_complex,
    edge_target,
    kr_homology,
    split_circle_pair,
)
from .khcube import assemble_kh_complex
from .linalg import QMatrix, laurent_invert_var
from .poly import MultiPoly


class NoPathFound(Exception):
    """A mark the path search never reached; impossible for a planar
    diagram, so it signals an internal error."""


class DivisionNotExact(Exception):
    """A split edge image that is not a multiple of its divisor."""


class InconsistentGenerator(Exception):
    """Two propagation paths disagree about a generator."""


def sigma(d, v):
    """Resolution coordinates of a smoothing vertex: negative-crossing
    entries drop by one."""
    return tuple(
        v[i] if c.sign > 0 else v[i] - 1 for i, c in enumerate(d.crossings)
    )


# -- the sign function tau -----------------------------------------------------


class TauAssignment:
    """Signs tau(z) for every mark, relative to chosen base points."""

    def __init__(self, base_points, values):
        self.base_points = tuple(base_points)
        self.values = values

    def __getitem__(self, mark):
        return self.values[mark]

    def __repr__(self):
        return "TauAssignment(base_points=%r, %d marks)" % (
            self.base_points,
            len(self.values),
        )


def default_base_points(d):
    """Smallest mark on each shadow component."""
    return tuple(min(comp) for comp in d.components)


def _shadow_graph(d):
    """The diagram shadow subdivided at its marks.

    Every arc contributes the chain  tail crossing - mark - aux mark -
    head crossing.  Nodes are ('m', mark) or ('x', crossing index);
    returns (at_crossing, at_mark) where at_crossing maps (crossing,
    slot) to (edge id, far node) and at_mark maps each mark to its list
    of (edge id, far node).
    """
    m = len(d.arcs)
    count = [0]
    at_crossing = {}
    at_mark = {}

    def add(u, v, slot_u=None, slot_v=None):
        eid = count[0]
        count[0] += 1
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
        tci, tslot = a.tail
        hci, hslot = a.head
        add(("x", tci), ("m", a.id), slot_u=tslot)
        add(("m", a.id), ("m", a.id + m))
        add(("m", a.id + m), ("x", hci), slot_v=hslot)
    return at_crossing, at_mark


def _crossing_steps(d, at_crossing, ci, eid_in):
    """Continuations of a path arriving at crossing ci along edge eid_in.

    The path must switch strands, so it leaves along one of the two
    slots of opposite parity.  A turn reverses orientation exactly when
    the arrival and departure slots have equal in/out status: then one
    of the two arcs is traversed against its direction.
    """
    cr = d.crossings[ci]
    slot_in = next(
        s for s in range(4) if at_crossing.get((ci, s), (None,))[0] == eid_in
    )
    out = []
    for s in range(4):
        if (s - slot_in) % 2 == 0:
            continue
        eid, far = at_crossing[(ci, s)]
        reversing = cr.slot_status(s) == cr.slot_status(slot_in)
        out.append((eid, far, reversing))
    return out


def compute_tau(d, base_points=None):
    """tau(z) = (-1)^(number of orientation-reversing turns) along a
    path from z to its component's base point, found by breadth-first
    search over directed shadow edges."""
    if base_points is None:
        base_points = default_base_points(d)
    at_crossing, at_mark = _shadow_graph(d)
    values = {}
    for w in base_points:
        values[w] = 1
        if not at_mark[w]:
            continue  # crossingless loop: its own single mark
        seen = set()
        queue = deque((eid, far, 0) for eid, far in at_mark[w])
        while queue:
            eid, node, par = queue.popleft()
            if (eid, node) in seen:
                continue
            seen.add((eid, node))
            if node[0] == "m":
                mk = node[1]
                if mk not in values:
                    values[mk] = -1 if par % 2 else 1
                for eid2, far in at_mark[mk]:
                    if eid2 != eid:
                        queue.append((eid2, far, par))
            else:
                for eid2, far, rev in _crossing_steps(
                    d, at_crossing, node[1], eid
                ):
                    queue.append((eid2, far, par + rev))

    expected = set(at_mark)
    missing = expected - set(values)
    if missing:
        raise NoPathFound("marks never reached: %s" % sorted(missing))
    return TauAssignment(base_points, values)


def tau_multipath_check(d, assignment=None, trials=4000):
    """Path independence of tau, the empirical way.

    Enumerates admissible paths (depth first, no repeated edge) from
    each mark to its base point, up to `trials` completed paths per
    mark, and compares every parity against the assignment.
    """
    if assignment is None:
        assignment = compute_tau(d)
    at_crossing, at_mark = _shadow_graph(d)
    base_of = {}
    for comp, w in zip(d.components, assignment.base_points):
        for arc in comp:
            base_of[arc] = base_of[arc + len(d.arcs)] = w

    report = {"status": "pass", "marks": 0, "paths": 0, "failures": []}
    for z in sorted(at_mark):
        w = base_of[z]
        if z == w:
            continue
        report["marks"] += 1
        found = []

        def walk(eid, node, par, used):
            if len(found) >= trials:
                return
            if node == ("m", w):
                found.append(par % 2)
                return
            if node[0] == "m":
                steps = [
                    (e2, far, 0)
                    for e2, far in at_mark[node[1]]
                    if e2 != eid
                ]
            else:
                steps = _crossing_steps(d, at_crossing, node[1], eid)
            for e2, far, rev in steps:
                if e2 in used:
                    continue
                used.add(e2)
                walk(e2, far, par + rev, used)
                used.discard(e2)

        for eid, far in at_mark[z]:
            walk(eid, far, 0, {eid})
        report["paths"] += len(found)
        want = 1 if assignment[z] < 0 else 0
        if any(p != want for p in found):
            report["status"] = "fail"
            report["failures"].append(
                {"mark": z, "parities": sorted(set(found)), "tau": assignment[z]}
            )
    return report


# -- generators ----------------------------------------------------------------


class GeneratorChoice:
    """One generator per cube vertex: a sign times the unit monomial."""

    def __init__(self, cube, signs):
        self.cube = cube
        self.signs = signs

    def sign(self, vp):
        return self.signs[tuple(vp)]

    def vector(self, vp):
        return {0: Fraction(self.signs[tuple(vp)])}


def _as_signed_unit(vec, what):
    if len(vec) != 1 or 0 not in vec or vec[0] not in (1, -1):
        raise DivisionNotExact("%s is not a signed unit monomial: %r" % (what, vec))
    return int(vec[0])


def _apply(mat, vec):
    out = {}
    for (r, c), val in mat.entries.items():
        if c in vec:
            out[r] = out.get(r, 0) + val * vec[c]
    return {k: v for k, v in out.items() if v}


def _divide_split(rv_t, tau, new, old, vec):
    """Solve (tau(new) z_new + tau(old) z_old) * g = vec for a signed
    monomial g in the target module."""
    bit_new = 1 << rv_t.rep_index[new]
    bit_old = 1 << rv_t.rep_index[old]
    candidates = set()
    for mask in vec:
        if mask & bit_new:
            candidates.add(mask & ~bit_new)
        if mask & bit_old:
            candidates.add(mask & ~bit_old)
    hits = []
    for m in candidates:
        image = {}
        if not m & bit_new:
            image[m | bit_new] = Fraction(tau[new])
        if not m & bit_old:
            image[m | bit_old] = image.get(m | bit_old, 0) + tau[old]
        image = {k: v for k, v in image.items() if v}
        if not image:
            continue
        some_mask = next(iter(image))
        if some_mask not in vec:
            continue
        c = vec[some_mask] / image[some_mask]
        if {k: v * c for k, v in image.items()} == vec:
            hits.append((m, c))
    if len(hits) != 1:
        raise DivisionNotExact(
            "split image %r has %d divisor preimages" % (vec, len(hits))
        )
    m, c = hits[0]
    return {m: c}


def propagate_generators(cube, tau):
    """Breadth-first choice of generators, starting from +1 at the base
    vertex; every edge is processed, so each revisit is a consistency
    check and not dead code."""
    d = cube.diagram
    base = sigma(d, (0,) * d.n)
    signs = {base: 1}
    order = sorted(cube.vertices, key=lambda vp: sum(vp))
    for vp in order:
        if vp not in signs:
            continue
        g = {0: Fraction(signs[vp])}
        for j in range(d.n):
            hi = 1 if d.crossings[j].sign > 0 else 0
            if vp[j] != hi - 1:
                continue
            vt = edge_target(d, vp, j)
            rv_s, rv_t = cube.vertices[vp], cube.vertices[vt]
            h = _apply(cube.edge_matrix(vp, j), g)
            if len(rv_s.reps) == len(rv_t.reps) + 1:
                cand = h
            else:
                new, old = split_circle_pair(rv_s, rv_t)
                cand = _divide_split(rv_t, tau, new, old, h)
            s = _as_signed_unit(cand, "edge %r/%d image" % (vp, j))
            if vt in signs:
                if signs[vt] != s:
                    raise InconsistentGenerator(
                        "edge %r/%d propagates %+d over stored %+d"
                        % (vp, j, s, signs[vt])
                    )
            else:
                signs[vt] = s
    missing = set(cube.vertices) - set(signs)
    if missing:
        raise InconsistentGenerator("unreached vertices: %s" % sorted(missing))
    for vp, rv in cube.vertices.items():
        rv.generator_coeff = {0: Fraction(signs[vp])}
    return GeneratorChoice(cube, signs)


# -- theta ---------------------------------------------------------------------


def circle_reps(part):
    """Representative mark of each smoothing circle: its smallest arc,
    which is also the smallest mark on the matching resolution circle
    because aux marks all carry larger numbers."""
    return [min(c) for c in part.circles]


def theta(v, tau, gens):
    """Matrix of theta_v from the smoothing basis at v to the reduced
    module at sigma(v): x on a circle becomes tau(z) z for the circle's
    representative z, all times the propagated generator."""
    cube = gens.cube
    d = cube.diagram
    vp = sigma(d, v)
    rv = cube.vertices[vp]
    part = smooth(d, v)
    reps = circle_reps(part)
    basis = list(_eta_tuples(part.s))
    m = QMatrix(rv.basis_size(), len(basis))
    for col, eta in enumerate(basis):
        mask = 0
        coeff = gens.sign(vp)
        for on, rep in zip(eta, reps):
            if on:
                mask |= 1 << rv.rep_index[rep]
                coeff *= tau[rep]
        m.add(mask, col, coeff)
    return m


def _eta_tuples(s):
    return itertools.product((0, 1), repeat=s)


# -- verification --------------------------------------------------------------


def _matrix_entries(m):
    return sorted(
        (r, c, str(val)) for (r, c), val in m.entries.items()
    )


def verify_proposition(d, kr_cube=None, tau=None, gens=None):
    """Edgewise intertwining and the two degree statements.

    For every smoothing edge e = (v, j), compares psi_{sigma(e)} o
    theta_v with theta_{v'} o phi_e as exact rational matrices; the
    smoothing-side maps are taken without their assembly signs.  Per
    vertex, checks that homological degrees agree and that theta sends
    quantum degree q to -q.
    """
    kh = build_kh_cube(d)
    if kr_cube is None:
        kr_cube = KrCube(d)
    if tau is None:
        tau = compute_tau(d)
    if gens is None:
        gens = propagate_generators(kr_cube, tau)

    report = {
        "status": "pass",
        "edges": 0,
        "vertices": 0,
        "failures": [],
    }
    thetas = {v: theta(v, tau, gens) for v in kh.vertices}

    for v, part in kh.vertices.items():
        report["vertices"] += 1
        vp = sigma(d, v)
        rv = kr_cube.vertices[vp]
        i_kh, _ = vertex_degrees(d, v)
        if i_kh != rv.hom:
            report["failures"].append(
                {"check": "homological degree", "vertex": v,
                 "smoothing": i_kh, "resolution": rv.hom}
            )
        g_deg = rv.element_q(0)
        want = -part.s - sum(v) - d.n_plus + 2 * d.n_minus
        if g_deg != want:
            report["failures"].append(
                {"check": "generator degree", "vertex": v,
                 "got": g_deg, "want": want}
            )
        th = thetas[v]
        for col, eta in enumerate(_eta_tuples(part.s)):
            q = kh.element_q(v, eta)
            rows = [r for (r, c) in th.entries if c == col]
            if len(rows) != 1 or rv.element_q(rows[0]) != -q:
                report["failures"].append(
                    {"check": "quantum degree", "vertex": v, "eta": eta,
                     "q": q, "image_q": [rv.element_q(r) for r in rows]}
                )

    for v in kh.vertices:
        for j in range(d.n):
            if v[j] != 0:
                continue
            report["edges"] += 1
            vt = kh.edge_targets(v, j)
            # edge_apply bakes in the assembly sign; divide it back out
            phi = edge_apply(kh, v, j).scale(edge_sign(d, v, j))
            psi = kr_cube.edge_matrix(sigma(d, v), j)
            lhs = psi.compose(thetas[v])
            rhs = thetas[vt].compose(phi)
            if lhs.entries != rhs.entries:
                report["status"] = "fail"
                report["failures"].append(
                    {
                        "check": "edge square",
                        "vertex": v,
                        "coordinate": j,
                        "psi.theta": _matrix_entries(lhs),
                        "theta.phi": _matrix_entries(rhs),
                    }
                )
    if report["failures"]:
        report["status"] = "fail"
    return report


def _theta_blocks(d, kr_cube, tau, gens):
    """theta reassembled per bigraded slot, with both placements."""
    kh_cx, kh_place = assemble_kh_complex(d, with_placement=True)
    kr_cx, kr_place = assemble_kr_complex(
        d, cube=kr_cube, with_placement=True
    )
    blocks = {}
    kh = build_kh_cube(d)
    for v in kh.vertices:
        th = theta(v, tau, gens)
        basis = list(_eta_tuples(kh.vertices[v].s))
        vp = sigma(d, v)
        for (r, c), val in th.entries.items():
            i, q, cslot = kh_place[(v, basis[c])]
            i2, q2, rslot = kr_place[(vp, r)]
            assert i2 == i and q2 == -q, "theta strays off the mirror slot"
            key = (i, q)
            if key not in blocks:
                blocks[key] = QMatrix(
                    kr_cx.dims.get((i, -q), 0), kh_cx.dims[key]
                )
            blocks[key].add(rslot, cslot, val)
    return kh_cx, kr_cx, blocks


def verify_theorem(d, kr_cube=None, tau=None, gens=None):
    """Dimension tables mirror in q, and theta is a chain isomorphism
    between the assembled complexes."""
    if kr_cube is None:
        kr_cube = KrCube(d)
    if tau is None:
        tau = compute_tau(d)
    if gens is None:
        gens = propagate_generators(kr_cube, tau)

    report = {"status": "pass", "failures": [], "bigraded_slots": 0}

    kh_table = kh_homology(d)
    kr_table = kr_homology(d, kr_cube)
    mirror = {(i, -q): n for (i, q), n in kr_table.data.items() if n}
    direct = {k: n for k, n in kh_table.data.items() if n}
    if mirror != direct:
        report["failures"].append(
            {"check": "dimension tables",
             "smoothing": sorted(direct.items()),
             "resolution mirrored": sorted(mirror.items())}
        )

    kh_cx, kr_cx, blocks = _theta_blocks(d, kr_cube, tau, gens)
    report["bigraded_slots"] = len(blocks)
    for (i, q), blk in blocks.items():
        if blk.nrows != blk.ncols:
            report["failures"].append(
                {"check": "block shape", "slot": (i, q),
                 "shape": (blk.nrows, blk.ncols)}
            )
            continue
        cols = {}
        rows = {}
        for (r, c), val in blk.entries.items():
            cols.setdefault(c, []).append(val)
            rows.setdefault(r, []).append(val)
        ok = all(len(v) == 1 and abs(v[0]) == 1 for v in cols.values())
        if not (ok and len(cols) == blk.ncols and len(rows) == blk.nrows):
            report["failures"].append(
                {"check": "block invertibility", "slot": (i, q)}
            )
    for (i, q), dkh in kh_cx.diffs.items():
        if not dkh.entries:
            continue
        upper = blocks.get((i + 1, q))
        lower = blocks.get((i, q))
        dkr = kr_cx.diffs.get((i, -q))
        if upper is None or lower is None or dkr is None:
            report["failures"].append(
                {"check": "chain square coverage", "slot": (i, q)}
            )
            continue
        if upper.compose(dkh).entries != dkr.compose(lower).entries:
            report["failures"].append(
                {"check": "chain square", "slot": (i, q)}
            )
    if report["failures"]:
        report["status"] = "fail"
    return report


def run_verification(d, base_points=None, trials=4000):
    """Everything at once, as a JSON-friendly report.

    Covers tau path independence, the reduction identifications against
    tau, generator propagation, the edgewise proposition, the theorem
    (tables plus chain isomorphism), the Euler characteristic against
    the Kauffman bracket, and invariance under moving base points and
    flipping the seed generator.
    """
    checks = []

    def add(name, status, detail=None):
        entry = {"name": name, "status": status}
        if detail is not None:
            entry["detail"] = detail
        checks.append(entry)

    tau = compute_tau(d, base_points)
    mp = tau_multipath_check(d, tau, trials=trials)
    add("tau path independence", mp["status"],
        {"marks": mp["marks"], "paths": mp["paths"],
         "failures": mp["failures"]})

    kr_cube = KrCube(d)
    bad = []
    for vp, rv in kr_cube.vertices.items():
        for mark, (rep, sgn) in rv.ident.items():
            if sgn != tau[mark] * tau[rep]:
                bad.append({"vertex": vp, "mark": mark})
    add("identifications match tau", "pass" if not bad else "fail",
        {"failures": bad})

    try:
        gens = propagate_generators(kr_cube, tau)
        add("generator propagation", "pass",
            {"vertices": len(gens.signs)})
    except (DivisionNotExact, InconsistentGenerator) as e:
        add("generator propagation", "fail", {"error": str(e)})
        return {"status": "fail", "checks": checks}

    prop = verify_proposition(d, kr_cube, tau, gens)
    add("edgewise intertwining", prop["status"],
        {"edges": prop["edges"], "vertices": prop["vertices"],
         "failures": prop["failures"]})

    thm = verify_theorem(d, kr_cube, tau, gens)
    add("table mirror and chain isomorphism", thm["status"],
        {"slots": thm["bigraded_slots"], "failures": thm["failures"]})

    jones = kauffman_bracket_jones(d)
    kh_euler = kh_homology(d).euler()
    kr_euler = laurent_invert_var(kr_homology(d, kr_cube).euler())
    add("Euler characteristic is the bracket polynomial",
        "pass" if kh_euler == jones == kr_euler else "fail",
        {"bracket": sorted(jones.items())})

    # the choices that are supposed not to matter
    alt_bp = _shifted_base_points(d)
    if alt_bp != tuple(tau.base_points):
        tau2 = compute_tau(d, alt_bp)
        gens2 = propagate_generators(kr_cube, tau2)
        prop2 = verify_proposition(d, kr_cube, tau2, gens2)
        thm2 = verify_theorem(d, kr_cube, tau2, gens2)
        ok = prop2["status"] == "pass" and thm2["status"] == "pass"
        add("base point invariance", "pass" if ok else "fail",
            {"base_points": list(alt_bp)})

    flipped = GeneratorChoice(
        kr_cube, {vp: -s for vp, s in gens.signs.items()}
    )
    prop3 = verify_proposition(d, kr_cube, tau, flipped)
    add("generator flip invariance", prop3["status"])

    status = "pass" if all(c["status"] == "pass" for c in checks) else "fail"
    return {"status": status, "checks": checks}


def _shifted_base_points(d):
    """Second-smallest mark per component where one exists."""
    out = []
    for comp in d.components:
        ms = sorted(comp)
        out.append(ms[1] if len(ms) > 1 else ms[0])
    return tuple(out)
