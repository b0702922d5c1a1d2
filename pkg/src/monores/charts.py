"""Affine charts of iterated point blow-ups of the plane.

A chart tree starts from one root chart and grows by blowing up closed
points.  Each blow-up event at a center (a, b) creates two children:

    side A:  (x, y) -> (a + x,   b + x*y)     exceptional there is {x = 0}
    side B:  (x, y) -> (a + x*y, b + y)       exceptional there is {y = 0}

Side A sees the directions (1 : t), side B the direction (0 : 1) and, in
overlap, (s : 1) for s != 0.  A chart may be blown up several times at
distinct centers; every event keeps its own pair of children.

A geometric point has many chart representatives.  The canonical one is the
shallowest, preferring side A on the exceptional overlap; a point is dead
when its canonical representative is a blow-up center.  Blow-ups are only
permitted at canonical representatives, which keeps the dead test local.
"""

from .exceptions import ValidationError
from .poly import BivarPoly


class BlowupEvent:
    __slots__ = ("center", "child_a", "child_b", "index")

    def __init__(self, center, child_a, child_b, index):
        self.center = center
        self.child_a = child_a
        self.child_b = child_b
        self.index = index


class Chart:
    """One affine chart.  side is None for the root, 'A' or 'B' otherwise."""

    __slots__ = ("id", "parent_id", "side", "birth_center", "events", "depth")

    def __init__(self, cid, parent_id=None, side=None, birth_center=None,
                 depth=0):
        self.id = cid
        self.parent_id = parent_id
        self.side = side
        self.birth_center = birth_center
        self.events = []
        self.depth = depth

    def __repr__(self):
        return f"Chart({self.id})"


class ChartTree:
    def __init__(self, field, prefix: str):
        self.field = field
        self.prefix = prefix
        self._n = 0
        root = Chart(self._fresh())
        self.root_id = root.id
        self.charts = {root.id: root}
        self.order = [root.id]

    def _fresh(self):
        cid = f"{self.prefix}{self._n}"
        self._n += 1
        return cid

    def chart(self, cid) -> Chart:
        try:
            return self.charts[cid]
        except KeyError:
            raise ValidationError(f"unknown chart {cid!r}") from None

    def pt_eq(self, p, q) -> bool:
        f = self.field
        return f.eq(p[0], q[0]) and f.eq(p[1], q[1])

    def blowup(self, cid, center) -> BlowupEvent:
        """Blow up a canonical live point; returns the new event."""
        chart = self.chart(cid)
        can = self.canonical_point(cid, center)
        if can is None:
            raise ValidationError(f"blow-up center {center} in {cid} is dead")
        if can[0] != cid or not self.pt_eq(can[1], center):
            raise ValidationError(
                f"blow-up center {center} in {cid} is not canonical "
                f"(canonical home is {can[0]} at {can[1]})")
        ida, idb = self._fresh(), self._fresh()
        ev = BlowupEvent(tuple(center), ida, idb, len(chart.events))
        chart.events.append(ev)
        d = chart.depth + 1
        self.charts[ida] = Chart(ida, cid, "A", ev.center, d)
        self.charts[idb] = Chart(idb, cid, "B", ev.center, d)
        self.order.extend((ida, idb))
        return ev

    # ---- point transport -------------------------------------------------

    def map_to_parent(self, cid, pt):
        ch = self.chart(cid)
        if ch.parent_id is None:
            raise ValidationError("root chart has no parent")
        f = self.field
        a, b = ch.birth_center
        x, y = pt
        if ch.side == "A":
            return ch.parent_id, (f.add(a, x), f.add(b, f.mul(x, y)))
        return ch.parent_id, (f.add(a, f.mul(x, y)), f.add(b, y))

    def project(self, cid, pt, ancestor_id):
        """Coordinates of the point in an ancestor chart (always defined)."""
        while cid != ancestor_id:
            ch = self.chart(cid)
            if ch.parent_id is None:
                raise ValidationError(f"{ancestor_id} is not an ancestor")
            cid, pt = self.map_to_parent(cid, pt)
        return pt

    def lift_to_child(self, cid, pt, child_id):
        """Representative of pt in a direct child chart, or None."""
        child = self.chart(child_id)
        if child.parent_id != cid:
            raise ValidationError(f"{child_id} is not a child of {cid}")
        f = self.field
        a, b = child.birth_center
        qx, qy = pt
        if child.side == "A":
            if f.eq(qx, a):
                return None
            dx = f.sub(qx, a)
            return (dx, f.div(f.sub(qy, b), dx))
        if f.eq(qy, b):
            return None
        dy = f.sub(qy, b)
        return (f.div(f.sub(qx, a), dy), dy)

    def is_ancestor_or_self(self, anc, cid) -> bool:
        while True:
            if cid == anc:
                return True
            parent = self.chart(cid).parent_id
            if parent is None:
                return False
            cid = parent

    def chain(self, anc, cid):
        """Chart ids from anc down to cid inclusive."""
        out = [cid]
        while cid != anc:
            cid = self.chart(cid).parent_id
            if cid is None:
                raise ValidationError("not on one chain")
            out.append(cid)
        return list(reversed(out))

    # ---- canonical representatives ----------------------------------------

    def shallow_rep(self, cid, pt):
        """Shallowest (chart_id, point) representative, side A on overlaps."""
        f = self.field
        while True:
            ch = self.chart(cid)
            if ch.parent_id is None:
                break
            x, y = pt
            if ch.side == "A":
                on_exc = f.is_zero(x)
            else:
                on_exc = f.is_zero(y)
            if on_exc:
                if ch.side == "B" and not f.is_zero(x):
                    # overlap point; side A owns it
                    parent = self.chart(ch.parent_id)
                    ev = parent.events[self._birth_event_index(ch)]
                    cid = ev.child_a
                    pt = (f.zero(), f.inv(x))
                break
            cid, pt = self.map_to_parent(cid, pt)
        return cid, pt

    def event_at(self, cid, pt):
        """The blow-up event of this chart centered at pt, if any."""
        for ev in self.chart(cid).events:
            if self.pt_eq(ev.center, pt):
                return ev
        return None

    def canonical_point(self, cid, pt):
        """(chart_id, point) of the canonical representative, None if dead."""
        cid, pt = self.shallow_rep(cid, pt)
        if self.event_at(cid, pt) is not None:
            return None
        return cid, pt

    def _birth_event_index(self, chart: Chart) -> int:
        parent = self.chart(chart.parent_id)
        for ev in parent.events:
            if chart.id in (ev.child_a, ev.child_b):
                return ev.index
        raise ValidationError(f"chart {chart.id} missing from parent events")

    def birth_event(self, cid):
        """(parent_chart_id, event) that created this chart, or None for root."""
        ch = self.chart(cid)
        if ch.parent_id is None:
            return None
        parent = self.chart(ch.parent_id)
        return ch.parent_id, parent.events[self._birth_event_index(ch)]

    def same_point(self, cid1, pt1, cid2, pt2) -> bool:
        c1 = self.canonical_point(cid1, pt1)
        c2 = self.canonical_point(cid2, pt2)
        if c1 is None or c2 is None:
            return False
        return c1[0] == c2[0] and self.pt_eq(c1[1], c2[1])

    # ---- substitution helpers ---------------------------------------------

    def subst_maps(self, child_id):
        """(gx, gy): parent coordinates as polynomials in child coordinates."""
        ch = self.chart(child_id)
        if ch.parent_id is None:
            raise ValidationError("root chart has no substitution map")
        f = self.field
        a, b = ch.birth_center
        xv = BivarPoly.var(f, "x")
        yv = BivarPoly.var(f, "y")
        ca = BivarPoly.const(f, a)
        cb = BivarPoly.const(f, b)
        if ch.side == "A":
            return ca + xv, cb + xv * yv
        return ca + xv * yv, cb + yv

    def push_poly(self, parent_poly: BivarPoly, child_id) -> BivarPoly:
        """Total transform of a parent-chart polynomial in a child chart."""
        gx, gy = self.subst_maps(child_id)
        return parent_poly.substitute(gx, gy)

    def exceptional_coord(self, child_id) -> str:
        return "x" if self.chart(child_id).side == "A" else "y"

    def frontier(self):
        """Charts with no events yet, in creation order."""
        return [cid for cid in self.order if not self.charts[cid].events]

    def all_ids(self):
        return list(self.order)

    def depth(self, cid) -> int:
        return self.chart(cid).depth


def blowup_point(tree: ChartTree, chart_id, center) -> BlowupEvent:
    return tree.blowup(chart_id, center)
