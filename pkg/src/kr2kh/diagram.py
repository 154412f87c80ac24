"""Planar diagrams of oriented links.

PD text is a list of tokens separated by semicolons or whitespace:

    X[a,b,c,d]   crossing; arc labels counterclockwise, slot 0 is the
                 incoming under-strand, so the under-strand runs a -> c
    X[a,b,c,d]+  same, but force the crossing sign (the tuple is rotated so
                 the stated sign comes out under the convention above)
    O[k]         closed component with no crossings, carrying arc label k

Crossing sign: positive when the over-strand runs d -> b, negative when it
runs b -> d.  Over-strand directions are deduced by propagating the forced
under-strand directions through the diagram; components that never pass
under anything get a deterministic default orientation.

Arcs double as marked points: arc i carries mark i at its midpoint.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class MalformedPd(Exception):
    """Unparseable PD text or inconsistent arc labels."""


class InconsistentOrientation(Exception):
    """No orientation of the strands satisfies every crossing tuple."""


class VirtualCrossingRejected(Exception):
    """V[...] tokens are not supported."""


class UnrealizablePlanarity(Exception):
    """The rotation system does not embed in the plane."""


IN = -1
OUT = +1

_TOKEN_RE = re.compile(r"([A-Za-z]+)\[([^\][]*)\]([+-]?)")


@dataclass(frozen=True)
class Crossing:
    """One crossing: slot labels counterclockwise and a sign.

    slots[0] is the incoming under-strand, slots[2] the outgoing one.  For a
    positive crossing the over-strand enters at slot 3 and leaves at slot 1;
    for a negative crossing it enters at slot 1 and leaves at slot 3.
    """

    sign: int
    slots: tuple

    def slot_status(self, s):
        if s == 0:
            return IN
        if s == 2:
            return OUT
        if self.sign > 0:
            return IN if s == 3 else OUT
        return IN if s == 1 else OUT

    def incoming_over_slot(self):
        return 3 if self.sign > 0 else 1

    def outgoing_over_slot(self):
        return 1 if self.sign > 0 else 3


@dataclass(frozen=True)
class Arc:
    """Oriented edge of the diagram; arc i carries mark i.

    tail/head are (crossing index, slot) pairs, or None for a closed
    component with no crossings.  component indexes the shadow component
    (connected component of the underlying 4-valent graph).
    """

    id: int
    tail: object
    head: object
    component: int


class LinkDiagram:
    """Parsed diagram.  components lists arc ids per shadow component."""

    def __init__(self, crossings, arcs, components, n_plus, n_minus):
        self.crossings = tuple(crossings)
        self.arcs = tuple(arcs)
        self.components = tuple(tuple(c) for c in components)
        self.n_plus = n_plus
        self.n_minus = n_minus

    @property
    def n(self):
        return self.n_plus + self.n_minus

    @property
    def marks(self):
        return [a.id for a in self.arcs]

    def arc(self, arc_id):
        return self.arcs[arc_id - 1]

    def arc_at(self, ci, slot):
        return self.crossings[ci].slots[slot]

    def __eq__(self, other):
        return (
            isinstance(other, LinkDiagram)
            and self.crossings == other.crossings
            and self.arcs == other.arcs
            and self.components == other.components
        )

    __hash__ = None

    def __repr__(self):
        return "LinkDiagram(n+=%d, n-=%d, arcs=%d, components=%d)" % (
            self.n_plus,
            self.n_minus,
            len(self.arcs),
            len(self.components),
        )

    def serialize(self):
        return serialize(self)

    def smooth(self, v):
        return smooth(self, v)

    def resolve(self, v):
        return resolve(self, v)


# -- parsing ----------------------------------------------------------------


def _tokenize(text):
    tokens = [t for t in re.split(r"[;\s]+", text.strip()) if t]
    if not tokens:
        raise MalformedPd("empty PD text")
    xs = []
    os = []
    for tok in tokens:
        m = _TOKEN_RE.fullmatch(tok)
        if not m:
            raise MalformedPd("bad token %r" % tok)
        kind, body, suffix = m.group(1).upper(), m.group(2), m.group(3)
        if kind == "V":
            raise VirtualCrossingRejected(tok)
        try:
            labels = tuple(int(x) for x in body.split(","))
        except ValueError:
            raise MalformedPd("bad labels in %r" % tok)
        if any(x < 1 for x in labels):
            raise MalformedPd("labels must be positive in %r" % tok)
        if kind == "X":
            if len(labels) != 4:
                raise MalformedPd("X needs 4 labels: %r" % tok)
            override = {"": None, "+": 1, "-": -1}[suffix]
            xs.append((labels, override))
        elif kind == "O":
            if len(labels) != 1 or suffix:
                raise MalformedPd("O needs a single label: %r" % tok)
            os.append(labels[0])
        else:
            raise MalformedPd("unknown token kind %r" % tok)
    return xs, os


def _propagate_orientations(xs):
    """Return status[(ci, slot)] in {IN, OUT} for all 4n slot ends."""
    ends_of = {}
    for ci, (labels, _) in enumerate(xs):
        for s, lab in enumerate(labels):
            ends_of.setdefault(lab, []).append((ci, s))
    for lab, ends in ends_of.items():
        if len(ends) != 2:
            raise MalformedPd(
                "arc label %d appears %d times, expected 2" % (lab, len(ends))
            )

    status = {}

    def assign(end, val, stack):
        old = status.get(end)
        if old is None:
            status[end] = val
            stack.append(end)
        elif old != val:
            raise InconsistentOrientation(
                "conflicting direction at crossing %d slot %d" % end
            )

    stack = []
    for ci, (labels, _) in enumerate(xs):
        assign((ci, 0), IN, stack)
        assign((ci, 2), OUT, stack)
    while True:
        while stack:
            ci, s = stack.pop()
            val = status[(ci, s)]
            lab = xs[ci][0][s]
            for other in ends_of[lab]:
                if other != (ci, s):
                    assign(other, -val, stack)
            # the over-strand passes straight through: its two slot ends
            # (1 and 3) always carry opposite directions
            if s in (1, 3):
                assign((ci, 4 - s), -val, stack)
        # components passing over everything: orient them deterministically
        free = None
        for ci in range(len(xs)):
            if (ci, 1) not in status:
                free = ci
                break
        if free is None:
            return status
        assign((free, 1), OUT, stack)


def _deduced_sign(status, ci):
    return 1 if status[(ci, 3)] == IN else -1


def _check_planarity(crossings, arcs):
    """Face count test per shadow component of the 4-valent graph."""
    # darts: (arc id, end index) traversed away from ends[end index]
    ends = {}
    for a in arcs:
        if a.tail is None:
            continue
        ends[a.id] = (a.tail, a.head)
    # group crossings into shadow components via arcs
    parent = list(range(len(crossings)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in arcs:
        if a.tail is None:
            continue
        r1, r2 = find(a.tail[0]), find(a.head[0])
        if r1 != r2:
            parent[r1] = r2
    comps = {}
    for ci in range(len(crossings)):
        comps.setdefault(find(ci), []).append(ci)

    at_slot = {}
    for a in arcs:
        if a.tail is None:
            continue
        at_slot[a.tail] = (a.id, 0)
        at_slot[a.head] = (a.id, 1)

    for root, cis in comps.items():
        cset = set(cis)
        comp_arcs = [
            a for a in arcs if a.tail is not None and a.tail[0] in cset
        ]
        darts = set()
        for a in comp_arcs:
            darts.add((a.id, 0))
            darts.add((a.id, 1))
        faces = 0
        seen = set()
        for start in sorted(darts):
            if start in seen:
                continue
            faces += 1
            d = start
            while True:
                seen.add(d)
                arc_id, e = d
                dest = ends[arc_id][1 - e]
                ci, s = dest
                nxt_end = (ci, (s + 1) % 4)
                d = at_slot[nxt_end]
                if d == start:
                    break
                if d in seen:
                    raise UnrealizablePlanarity("face tracing degenerated")
        v = len(cset)
        e = len(comp_arcs)
        euler = v - e + faces
        if euler != 2:
            genus = (2 - euler) // 2
            raise UnrealizablePlanarity(
                "diagram component has genus %d, not planar" % genus
            )


def parse_pd(text):
    """Parse PD text into a LinkDiagram.

    Crossings are reordered so all positive ones come first; arcs are
    renumbered 1..m in first-appearance order of the input text.
    """
    xs, os = _tokenize(text)
    status = _propagate_orientations(xs)
    signs = [_deduced_sign(status, ci) for ci in range(len(xs))]

    # sign overrides rotate the tuple so the incoming over-strand becomes
    # slot 0 (the strands swap over/under roles, orientations are untouched)
    rotated = []
    for ci, (labels, override) in enumerate(xs):
        if override is not None and override != signs[ci]:
            if signs[ci] > 0:
                labels = (labels[3], labels[0], labels[1], labels[2])
            else:
                labels = (labels[1], labels[2], labels[3], labels[0])
            signs[ci] = override
        rotated.append(labels)

    order = [ci for ci in range(len(xs)) if signs[ci] > 0] + [
        ci for ci in range(len(xs)) if signs[ci] < 0
    ]

    # arc ids by first appearance in the original text
    relabel = {}
    for labels, _ in xs:
        for lab in labels:
            if lab not in relabel:
                relabel[lab] = len(relabel) + 1
    for lab in os:
        if lab in relabel or os.count(lab) > 1:
            raise MalformedPd("O label %d reused" % lab)
        relabel[lab] = len(relabel) + 1

    crossings = []
    for new_ci, old_ci in enumerate(order):
        labels = tuple(relabel[lab] for lab in rotated[old_ci])
        crossings.append(Crossing(sign=signs[old_ci], slots=labels))

    # endpoints per arc under the new crossing order
    endpoints = {}
    for new_ci, cr in enumerate(crossings):
        for s, arc_id in enumerate(cr.slots):
            endpoints.setdefault(arc_id, []).append((new_ci, s))
    arcs = []
    comp_parent = {}

    def cfind(x):
        while comp_parent.setdefault(x, x) != x:
            comp_parent[x] = comp_parent[comp_parent[x]]
            x = comp_parent[x]
        return x

    for arc_id in sorted(relabel.values()):
        ends = endpoints.get(arc_id)
        if ends is None:
            arcs.append((arc_id, None, None))
            cfind(arc_id)
            continue
        (e1, e2) = ends
        s1 = crossings[e1[0]].slot_status(e1[1])
        s2 = crossings[e2[0]].slot_status(e2[1])
        if s1 == s2:
            raise InconsistentOrientation(
                "arc %d is %s at both endpoints"
                % (arc_id, "incoming" if s1 == IN else "outgoing")
            )
        tail = e1 if s1 == OUT else e2
        head = e1 if s1 == IN else e2
        arcs.append((arc_id, tail, head))
    # shadow components: arcs meeting at a crossing are together
    by_crossing = {}
    for arc_id, tail, head in arcs:
        for end in (tail, head):
            if end is not None:
                by_crossing.setdefault(end[0], []).append(arc_id)
    for group in by_crossing.values():
        for other in group[1:]:
            ra, rb = cfind(group[0]), cfind(other)
            if ra != rb:
                comp_parent[ra] = rb
    comp_ids = {}
    for arc_id, _, _ in arcs:
        comp_ids.setdefault(cfind(arc_id), []).append(arc_id)
    components = sorted(
        (tuple(sorted(v)) for v in comp_ids.values()), key=lambda t: t[0]
    )
    comp_of = {}
    for idx, comp in enumerate(components):
        for arc_id in comp:
            comp_of[arc_id] = idx

    final_arcs = [
        Arc(id=arc_id, tail=tail, head=head, component=comp_of[arc_id])
        for arc_id, tail, head in arcs
    ]

    n_plus = sum(1 for c in crossings if c.sign > 0)
    n_minus = len(crossings) - n_plus
    d = LinkDiagram(crossings, final_arcs, components, n_plus, n_minus)
    _check_planarity(d.crossings, d.arcs)
    return d


def serialize(d):
    """Canonical PD text: positive crossings first, arcs renumbered by
    first appearance in the output, O components last."""
    relabel = {}

    def lab(arc_id):
        if arc_id not in relabel:
            relabel[arc_id] = len(relabel) + 1
        return relabel[arc_id]

    tokens = []
    for cr in d.crossings:
        tokens.append("X[%d,%d,%d,%d]" % tuple(lab(a) for a in cr.slots))
    for a in d.arcs:
        if a.tail is None:
            tokens.append("O[%d]" % lab(a.id))
    return ";".join(tokens)


# -- smoothing ----------------------------------------------------------------


class CirclePartition:
    """Circles of a full smoothing, as cyclic mark sequences.

    Circles are listed by smallest mark; each sequence starts at its
    smallest mark and runs in the direction giving the lexicographically
    smaller tuple (traversal of a smoothed circle has no preferred
    orientation).
    """

    def __init__(self, circles, v):
        self.circles = tuple(circles)
        self.v = tuple(v)
        self._where = {}
        for idx, circ in enumerate(self.circles):
            for mark in circ:
                self._where[mark] = idx

    @property
    def s(self):
        return len(self.circles)

    @property
    def r(self):
        return sum(self.v)

    def circle_index(self, mark):
        return self._where[mark]

    def mark_sets(self):
        return [frozenset(c) for c in self.circles]

    def __eq__(self, other):
        return (
            isinstance(other, CirclePartition)
            and self.circles == other.circles
            and self.v == other.v
        )

    __hash__ = None

    def __repr__(self):
        return "CirclePartition(v=%r, circles=%r)" % (self.v, self.circles)


def _pairing(v_i):
    # slot pairs joined by the smoothing; 0 keeps {a,b},{c,d}, 1 keeps
    # {a,d},{b,c} (counterclockwise slots a,b,c,d)
    return ((0, 1), (2, 3)) if v_i == 0 else ((0, 3), (1, 2))


def validate_smoothing_vertex(d, v):
    v = tuple(v)
    if len(v) != d.n or any(x not in (0, 1) for x in v):
        raise ValueError("smoothing vertex must be a 0/1 tuple of length n")
    return v


def smooth(d, v):
    """Circles obtained by replacing every crossing by its v_i smoothing."""
    v = validate_smoothing_vertex(d, v)
    # neighbor map on arc endpoints: across a smoothed crossing, the arc
    # ends at the two paired slots are joined
    join = {}
    for ci, cr in enumerate(d.crossings):
        for s1, s2 in _pairing(v[ci]):
            e1, e2 = (ci, s1), (ci, s2)
            join[e1] = e2
            join[e2] = e1

    ends = {a.id: (a.tail, a.head) for a in d.arcs}
    visited = set()
    circles = []
    for a in d.arcs:
        if a.id in visited:
            continue
        if a.tail is None:
            visited.add(a.id)
            circles.append((a.id,))
            continue
        # walk the circle as a sequence of (arc, entering end index)
        seq = []
        arc_id, out_end = a.id, 1  # leave through the head first
        while True:
            seq.append(arc_id)
            visited.add(arc_id)
            exit_end = ends[arc_id][out_end]
            partner = join[exit_end]
            # which arc sits at the partner slot, and through which of its
            # ends did we enter it
            nxt = d.arc_at(partner[0], partner[1])
            t, h = ends[nxt]
            came_in_via = 0 if t == partner else 1
            arc_id, out_end = nxt, 1 - came_in_via
            if arc_id == a.id and out_end == 1:
                break
            if len(seq) > 2 * len(d.arcs):
                raise AssertionError("smoothing walk failed to close")
        circles.append(_canonical_cycle(seq))
    circles.sort(key=lambda c: c[0])
    return CirclePartition(circles, v)


def _canonical_cycle(seq):
    """Rotate/reflect a cyclic sequence: start at min, smaller direction."""
    n = len(seq)
    i = seq.index(min(seq))
    fwd = tuple(seq[(i + k) % n] for k in range(n))
    bwd = tuple(seq[(i - k) % n] for k in range(n))
    return min(fwd, bwd)


# -- resolution ---------------------------------------------------------------


@dataclass(frozen=True)
class WideEdge:
    """Thick edge at a resolved crossing with its four adjacent marks.

    Marks i and j sit on the outgoing edges, k and l on the incoming ones.
    The (k, j) pair lies on one passage of the oriented smoothing and
    (l, i) on the other, with (k, j) on the passage through the incoming
    under-strand slot.
    """

    crossing: int
    i: int
    j: int
    k: int
    l: int

    @property
    def marks(self):
        return (self.i, self.j, self.k, self.l)


class TrivalentGraph:
    """Resolution of a diagram at a resolution vertex.

    paths: regular edges between wide-edge endpoints as ordered mark lists,
    stored as (start crossing or None, end crossing or None, marks); closed
    circles that miss every wide edge have None endpoints.  circles: mark
    partition after deleting the wide edges (the two incoming edges of a
    wide edge stay joined to each other, likewise the outgoing two).
    """

    def __init__(self, d, v, wide_edges, paths, circles, aux_of_arc):
        self.diagram = d
        self.v = tuple(v)
        self.wide_edges = tuple(wide_edges)
        self.paths = tuple(paths)
        self.circles = tuple(circles)
        self.aux_of_arc = dict(aux_of_arc)

    def segments(self):
        """Consecutive mark pairs carrying arc rows, plus 1-mark loops.

        Returns (pairs, loops): pairs is a list of (from_mark, to_mark),
        loops a list of single marks on closed circles with one mark.
        """
        pairs = []
        loops = []
        for start, end, marks in self.paths:
            if start is None:
                if len(marks) == 1:
                    loops.append(marks[0])
                else:
                    for p in range(len(marks)):
                        pairs.append((marks[p], marks[(p + 1) % len(marks)]))
            else:
                for p in range(len(marks) - 1):
                    pairs.append((marks[p], marks[p + 1]))
        return pairs, loops

    def __repr__(self):
        return "TrivalentGraph(v=%r, wide=%d, circles=%d)" % (
            self.v,
            len(self.wide_edges),
            len(self.circles),
        )


def validate_resolution_vertex(d, vp):
    vp = tuple(vp)
    if len(vp) != d.n:
        raise ValueError("resolution vertex must have length n")
    for ci, x in enumerate(vp):
        allowed = (0, 1) if d.crossings[ci].sign > 0 else (-1, 0)
        if x not in allowed:
            raise ValueError(
                "coordinate %d must be in %r for this crossing sign"
                % (ci, allowed)
            )
    return vp


def sigma_inverse(d, vp):
    """Smoothing vertex whose resolution is vp (add 1 back on negatives)."""
    vp = validate_resolution_vertex(d, vp)
    return tuple(
        x if d.crossings[ci].sign > 0 else x + 1 for ci, x in enumerate(vp)
    )


def oriented_passages(cr):
    """The two (in slot, out slot) passages of the oriented smoothing.

    The first passage is the one entering at the under-strand slot 0.
    """
    if cr.sign > 0:
        return ((0, 1), (3, 2))
    return ((0, 3), (1, 2))


def resolve(d, vp, aux_arcs=None):
    """Build the trivalent graph for resolution vertex vp.

    A crossing contributes a wide edge when its coordinate is +1 (positive
    crossing) or -1 (negative crossing); coordinate 0 is the oriented
    smoothing for either sign.  Arcs that form a whole regular edge between
    wide-edge endpoints on their own get an auxiliary mark (id = arc id +
    number of arcs) so the four marks around any wide edge are distinct;
    aux_arcs forces extra auxiliary marks, used when two resolutions must
    share a mark set.
    """
    vp = validate_resolution_vertex(d, vp)
    wide = [ci for ci, x in enumerate(vp) if x != 0]
    wide_set = set(wide)
    m = len(d.arcs)

    # successor across orientedly smoothed crossings
    succ = {}
    for ci, cr in enumerate(d.crossings):
        if ci in wide_set:
            continue
        for s_in, s_out in oriented_passages(cr):
            succ[(ci, s_in)] = (ci, s_out)

    # regular paths: start from each outgoing edge of each wide crossing
    paths = []
    used = set()
    for ci in wide:
        cr = d.crossings[ci]
        outs = [s for s in range(4) if cr.slot_status(s) == OUT]
        for s in sorted(outs):
            arc = d.arc_at(ci, s)
            arcs_on_path = []
            cur = arc
            while True:
                arcs_on_path.append(cur)
                used.add(cur)
                head = d.arcs[cur - 1].head
                if head[0] in wide_set:
                    end_ci = head[0]
                    break
                nxt = succ[head]
                cur = d.arc_at(nxt[0], nxt[1])
            paths.append([ci, end_ci, arcs_on_path])
    # leftover closed circles (no wide edge on them)
    for a in d.arcs:
        if a.id in used:
            continue
        if a.tail is None:
            used.add(a.id)
            paths.append([None, None, [a.id]])
            continue
        cyc = []
        cur = a.id
        while cur not in used:
            cyc.append(cur)
            used.add(cur)
            nxt = succ[d.arcs[cur - 1].head]
            cur = d.arc_at(nxt[0], nxt[1])
        paths.append([None, None, cyc])

    # auxiliary marks: single-arc regular edges between wide-edge endpoints
    need_aux = set(aux_arcs or ())
    for start, end, arcs_on_path in paths:
        if start is not None and len(arcs_on_path) == 1:
            need_aux.add(arcs_on_path[0])
    aux_of_arc = {arc: arc + m for arc in sorted(need_aux)}

    def path_marks(arcs_on_path):
        marks = []
        for arc in arcs_on_path:
            marks.append(arc)
            if arc in aux_of_arc:
                marks.append(aux_of_arc[arc])
        return marks

    final_paths = [
        (start, end, tuple(path_marks(arcs_on_path)))
        for start, end, arcs_on_path in paths
    ]

    # marks flanking each wide crossing: last mark in, first mark out
    def last_mark_into(ci, slot):
        arc = d.arc_at(ci, slot)
        return aux_of_arc.get(arc, arc)

    def first_mark_out(ci, slot):
        return d.arc_at(ci, slot)

    wide_edges = []
    for ci in wide:
        cr = d.crossings[ci]
        (in1, out1), (in2, out2) = oriented_passages(cr)
        k = last_mark_into(ci, in1)
        j = first_mark_out(ci, out1)
        l = last_mark_into(ci, in2)
        i = first_mark_out(ci, out2)
        if len({i, j, k, l}) != 4:
            raise AssertionError("wide edge marks not distinct at %d" % ci)
        wide_edges.append(WideEdge(crossing=ci, i=i, j=j, k=k, l=l))

    # circles after deleting wide edges: the two paths arriving at a wide
    # edge join each other, as do the two departing ones
    pid = {idx: idx for idx in range(len(final_paths))}

    def pfind(x):
        while pid[x] != x:
            pid[x] = pid[pid[x]]
            x = pid[x]
        return x

    arrivals = {}
    departures = {}
    for idx, (start, end, _) in enumerate(final_paths):
        if start is not None:
            departures.setdefault(start, []).append(idx)
            arrivals.setdefault(end, []).append(idx)
    for ci in wide:
        for group in (arrivals[ci], departures[ci]):
            assert len(group) == 2
            r1, r2 = pfind(group[0]), pfind(group[1])
            if r1 != r2:
                pid[r1] = r2
    groups = {}
    for idx in range(len(final_paths)):
        groups.setdefault(pfind(idx), []).append(idx)
    circles = []
    for idxs in groups.values():
        marks = []
        for idx in idxs:
            marks.extend(final_paths[idx][2])
        circles.append(tuple(sorted(marks)))
    circles.sort(key=lambda c: c[0])

    return TrivalentGraph(d, vp, wide_edges, final_paths, circles, aux_of_arc)


# -- built-in diagrams --------------------------------------------------------


def _t2_torus(n):
    # closure of the n-fold positive 2-strand braid; crossing i has the
    # left rung above it entering under and the right rung above entering
    # over, counterclockwise slots [in-left, out-left, out-right, in-right]
    def l(m):
        return (m % n) + 1

    def r(m):
        return n + (m % n) + 1

    return ";".join(
        "X[%d,%d,%d,%d]" % (l(i - 1), l(i), r(i), r(i - 1))
        for i in range(1, n + 1)
    )


BUILTIN_DIAGRAMS = {
    "unknot": "O[1]",
    "unknot-pos-kink": "X[1,1,2,2]",
    "unknot-neg-kink": "X[1,2,2,1]",
    "hopf+": "X[4,2,3,1];X[2,4,1,3]",
    "hopf-": "X[1,4,2,3];X[3,2,4,1]",
    "trefoil": "X[4,2,5,1];X[6,4,1,3];X[2,6,3,5]",
    "trefoil-mirror": "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]",
    "trefoil-kink": "X[4,2,5,1];X[6,4,1,3];X[2,6,3,8];X[5,8,7,7]",
    "figure8": "X[4,2,5,1];X[8,6,1,5];X[6,3,7,4];X[2,7,3,8]",
    "t2_7": _t2_torus(7),
}


def builtin(name):
    try:
        return parse_pd(BUILTIN_DIAGRAMS[name])
    except KeyError:
        raise KeyError(
            "unknown builtin %r, have: %s"
            % (name, ", ".join(sorted(BUILTIN_DIAGRAMS)))
        )
