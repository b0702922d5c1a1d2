"""Embedded resolution of a plane curve by point blow-ups.

Repeatedly scans every chart at canonical live points for simple normal
crossing failures of the total transform (strict transforms plus all
exceptional curves) and blows up the first violation in deterministic
order, until none remain.
"""

from .charts import ChartTree
from .divisors import DivisorLedger
from .exceptions import BudgetExceeded, NonRationalSingularity
from .factor import factor_bivariate
from .poly import BivarPoly
from .snc import chart_violations


class ResolutionResult:
    __slots__ = ("tree", "ledger", "centers", "curves")

    def __init__(self, tree, ledger, centers, curves):
        self.tree = tree
        self.ledger = ledger
        self.centers = centers
        self.curves = curves

    @property
    def blowup_count(self):
        return len(self.centers)


def chart_support(ledger, cid):
    """Nonconstant local support equations in a chart: [(divisor, equation)]."""
    out = []
    for div in ledger.all():
        eq = ledger.equation_in(div, cid)
        if eq is not None and not eq.is_constant():
            out.append((div, eq))
    return out


def find_violation(tree, ledger, separate_branches=False):
    """First canonical SNC violation over all charts, or None.

    Raises NonRationalSingularity when a bad point only exists over an
    extension of the ground field.
    """
    for cid in tree.all_ids():
        comps = [eq for _div, eq in chart_support(ledger, cid)]
        bad, irrational = chart_violations(comps, separate_branches)
        if irrational:
            raise NonRationalSingularity(
                f"chart {cid}: {irrational[0]}")
        for pt, reason in bad:
            can = tree.canonical_point(cid, pt)
            if can is None:
                continue  # already blown up
            if can[0] != cid or not tree.pt_eq(can[1], pt):
                continue  # counted in its canonical chart
            return cid, pt, reason
    return None


def resolve_until_snc(tree, ledger, *, separate_branches=False,
                      max_blowups=200, on_blowup=None):
    """Blow up violations until the ledger's total support is SNC everywhere.

    on_blowup(chart_id, point, reason, event) is called after each blow-up;
    returns the list of centers used.
    """
    centers = []
    while True:
        viol = find_violation(tree, ledger, separate_branches)
        if viol is None:
            return centers
        if len(centers) >= max_blowups:
            raise BudgetExceeded(
                f"embedded resolution exceeded {max_blowups} blow-ups",
                spent=len(centers))
        cid, pt, reason = viol
        ev = tree.blowup(cid, pt)
        ledger.add_exceptional(cid, ev, meta={"reason": reason})
        centers.append((cid, pt))
        if on_blowup is not None:
            on_blowup(cid, pt, reason, ev)


def embedded_resolution(f: BivarPoly, *, kind="branch-component",
                        separate_branches=False, max_blowups=200,
                        prefix="Z"):
    """Resolve the total transform of {f=0} to simple normal crossings."""
    tree = ChartTree(f.field, prefix)
    ledger = DivisorLedger(tree)
    _unit, pairs = factor_bivariate(f)
    curves = [ledger.add_curve(kind, tree.root_id, p) for p, _m in pairs]
    centers = resolve_until_snc(tree, ledger,
                                separate_branches=separate_branches,
                                max_blowups=max_blowups)
    return ResolutionResult(tree, ledger, centers, curves)
