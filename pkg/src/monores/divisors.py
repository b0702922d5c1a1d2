"""Divisor bookkeeping over a chart tree.

Curve-type divisors are anchored at the root chart by one irreducible
equation; their strict transforms descend to any chart by substituting the
blow-up map and stripping the exceptional factor.  Exceptional divisors are
anchored at their birth event and exist only in the two birth children and
their descendants.

Kinds: "exceptional", "critical-component", "branch-component",
"pulled-back".
"""

from .exceptions import ValidationError
from .poly import BivarPoly, exact_div, try_exact_div

KINDS = ("exceptional", "critical-component", "branch-component", "pulled-back")

_ID_LETTER = {
    "exceptional": "E",
    "critical-component": "C",
    "branch-component": "B",
    "pulled-back": "P",
}


class Divisor:
    __slots__ = ("did", "kind", "birth_chart", "equation", "birth_event", "meta")

    def __init__(self, did, kind, birth_chart=None, equation=None,
                 birth_event=None, meta=None):
        self.did = did
        self.kind = kind
        self.birth_chart = birth_chart
        self.equation = equation
        self.birth_event = birth_event  # (chart_id, event_index) or None
        self.meta = meta or {}

    def __repr__(self):
        return f"Divisor({self.did}, {self.kind})"


def strict_down(tree, eq: BivarPoly, child_id) -> BivarPoly:
    """One step of strict transform into a child chart."""
    total = tree.push_poly(eq, child_id)
    i, j, residual = total.monomial_split()
    f = eq.field
    if tree.chart(child_id).side == "A":
        # only {x=0} is exceptional here; keep any y-power
        return residual.shift_mono(0, j) if j else residual
    return residual.shift_mono(i, 0) if i else residual


def curve_to_parent(tree, cid, eq: BivarPoly) -> BivarPoly:
    """Image of a curve {eq=0} in the parent chart, exceptional part stripped.

    Valid for honest curves (not a power of the chart's exceptional
    coordinate).
    """
    ch = tree.chart(cid)
    if ch.parent_id is None:
        raise ValidationError("root chart has no parent")
    field = eq.field
    a, b = ch.birth_center
    xa = BivarPoly.var(field, "x") - BivarPoly.const(field, a)
    yb = BivarPoly.var(field, "y") - BivarPoly.const(field, b)
    out = BivarPoly.zero(field)
    if ch.side == "A":
        d = eq.degree_in("y")
        for (i, j), c in eq.coeffs.items():
            out = out + (xa ** (i + d - j)) * (yb ** j).scale(c)
        strip = xa
    else:
        d = eq.degree_in("x")
        for (i, j), c in eq.coeffs.items():
            out = out + (xa ** i) * (yb ** (j + d - i)).scale(c)
        strip = yb
    if out.is_zero():
        raise ValidationError("curve ascent produced zero")
    while True:
        q = exact_div(out, strip) if _divides(out, strip) else None
        if q is None or q.is_constant():
            break
        out = q
    return out


def _divides(f, g):
    return try_exact_div(f, g) is not None


def ascend_to_root(tree, cid, eq: BivarPoly):
    while cid != tree.root_id:
        eq = curve_to_parent(tree, cid, eq)
        cid = tree.chart(cid).parent_id
    return eq


class DivisorLedger:
    def __init__(self, tree):
        self.tree = tree
        self.divisors = {}
        self.order = []
        self._counts = dict.fromkeys(_ID_LETTER.values(), 0)
        self.cycles = {}  # name -> dict(did -> multiplicity)
        self._eq_cache = {}

    def _fresh(self, kind):
        letter = _ID_LETTER[kind]
        self._counts[letter] += 1
        return f"{letter}{self._counts[letter]}{self.tree.prefix}"

    def add_exceptional(self, chart_id, event, meta=None) -> Divisor:
        div = Divisor(self._fresh("exceptional"), "exceptional",
                      birth_event=(chart_id, event.index), meta=meta)
        self.divisors[div.did] = div
        self.order.append(div.did)
        return div

    def add_curve(self, kind, chart_id, equation: BivarPoly, meta=None) -> Divisor:
        if kind not in KINDS or kind == "exceptional":
            raise ValidationError(f"bad curve kind {kind!r}")
        if equation.is_zero() or equation.is_constant():
            raise ValidationError("curve equation must be nonconstant")
        root_eq = ascend_to_root(self.tree, chart_id, equation)
        lc = root_eq.leading_coeff()
        root_eq = root_eq.scale(equation.field.inv(lc))
        for did in self.order:
            old = self.divisors[did]
            if old.kind != "exceptional" and old.equation == root_eq:
                return old
        div = Divisor(self._fresh(kind), kind, birth_chart=self.tree.root_id,
                      equation=root_eq, meta=meta)
        self.divisors[div.did] = div
        self.order.append(div.did)
        return div

    def add_pullback_cycle(self, name, parts: dict):
        self.cycles[name] = dict(parts)

    def get(self, did) -> Divisor:
        try:
            return self.divisors[did]
        except KeyError:
            raise ValidationError(f"unknown divisor {did!r}") from None

    def all(self, kind=None):
        out = [self.divisors[d] for d in self.order]
        if kind is not None:
            out = [d for d in out if d.kind == kind]
        return out

    def equation_in(self, div: Divisor, cid):
        """Local equation of the divisor in a chart; None if it lives elsewhere.

        A constant result means the divisor does not meet the chart.
        """
        key = (div.did, cid)
        if key in self._eq_cache:
            return self._eq_cache[key]
        val = self._equation_in(div, cid)
        self._eq_cache[key] = val
        return val

    def _equation_in(self, div, cid):
        tree = self.tree
        field = tree.field
        if div.kind == "exceptional":
            ev_chart, ev_idx = div.birth_event
            ev = tree.chart(ev_chart).events[ev_idx]
            for child in (ev.child_a, ev.child_b):
                if tree.is_ancestor_or_self(child, cid):
                    eq = BivarPoly.var(field, tree.exceptional_coord(child))
                    return self._descend(child, eq, cid)
            return None
        if not tree.is_ancestor_or_self(div.birth_chart, cid):
            return None
        return self._descend(div.birth_chart, div.equation, cid)

    def _descend(self, from_cid, eq, to_cid):
        for step in self.tree.chain(from_cid, to_cid)[1:]:
            eq = strict_down(self.tree, eq, step)
            if eq.is_constant():
                return eq
        return eq

    def components_at(self, cid, pt, kinds=None):
        """Divisors whose strict transform passes through a chart point."""
        out = []
        for div in self.all():
            if kinds is not None and div.kind not in kinds:
                continue
            eq = self.equation_in(div, cid)
            if eq is None or eq.is_constant():
                continue
            if eq.field.is_zero(eq.eval_point(pt[0], pt[1])):
                out.append(div)
        return out
