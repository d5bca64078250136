"""Algorithm H: mark an equation, eliminate one of its variables, renormalize.

Marking equation ``prod_{i in I} x_i = b`` on variable ``x_l`` removes it and
rewrites every other equation containing ``x_l`` to ``prod_{I xor I'} = b b'``.
Under any assignment that satisfies the marked equation the old and new
systems have the same excess, so the marked weight is a lower bound on the
maximum excess.  :func:`complete_assignment` turns a run into an explicit
assignment achieving that bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import gf2
from .errors import PreconditionError
from .linsystem import (
    Assignment,
    Equation,
    HStep,
    LinearSystem,
    TransformLog,
    has_distinct_lhs,
    is_irreducible,
    lift_assignment,
)


@dataclass(frozen=True)
class MarkRecord:
    marked_lhs: int
    marked_rhs: int
    marked_var: int
    weight: Fraction
    eq_id: int = -1

    def as_step(self) -> HStep:
        return HStep(self.marked_lhs, self.marked_rhs, self.marked_var)


@dataclass(frozen=True)
class HRun:
    source: LinearSystem
    marks: tuple[MarkRecord, ...]
    residual: LinearSystem
    residual_ids: tuple[int, ...] = field(default=(), repr=False)

    @property
    def total_marked_weight(self) -> Fraction:
        return sum((m.weight for m in self.marks), Fraction(0))

    def log(self) -> TransformLog:
        return TransformLog([m.as_step() for m in self.marks])


class SelectorError(PreconditionError):
    """A plan entry names an equation that no longer exists."""


def _eliminate(
    eqs: Sequence[Equation], ids: Sequence[int], index: int, var: int
) -> tuple[list[Equation], list[int], MarkRecord]:
    if not 0 <= index < len(eqs):
        raise IndexError(f"equation index {index} out of range (system has {len(eqs)})")
    marked = eqs[index]
    bit = 1 << (var - 1)
    if not marked.lhs & bit:
        raise PreconditionError("l in I", f"x{var} does not occur in equation {index}")
    rec = MarkRecord(marked.lhs, marked.rhs, var, marked.weight, ids[index])

    # Rule 1 after the rewrite; the surviving id of a merged group is the one
    # carrying the larger weight (first occurrence on ties of the same sign)
    acc: dict[int, Fraction] = {}
    best: dict[int, tuple[Fraction, int]] = {}
    order: list[int] = []
    for j, (e, eid) in enumerate(zip(eqs, ids)):
        if j == index:
            continue
        if e.lhs & bit:
            lhs, rhs = e.lhs ^ marked.lhs, e.rhs * marked.rhs
        else:
            lhs, rhs = e.lhs, e.rhs
        # distinct left-hand sides guarantee the symmetric difference is nonempty
        assert lhs, "symmetric difference produced an empty equation"
        if lhs not in acc:
            acc[lhs] = Fraction(0)
            order.append(lhs)
        acc[lhs] += e.weight * rhs
        if lhs not in best or e.weight > best[lhs][0]:
            best[lhs] = (e.weight, eid)
    out_eqs, out_ids = [], []
    for lhs in order:
        c = acc[lhs]
        if c:
            out_eqs.append(Equation(lhs, 1 if c > 0 else -1, abs(c)))
            out_ids.append(best[lhs][1])
    return out_eqs, out_ids, rec


def h_step(s: LinearSystem, eq_index: int, var: int | None = None) -> tuple[LinearSystem, MarkRecord]:
    """One iteration of Algorithm H on equation ``eq_index`` (0-based).

    ``var`` is 1-based and defaults to the lowest variable of the equation.
    The marked variable keeps its slot in the residual but no longer occurs.
    """
    if not has_distinct_lhs(s):
        raise PreconditionError("Rule 1 saturated", "system has repeated left-hand sides")
    if not 0 <= eq_index < len(s.equations):
        raise IndexError(f"equation index {eq_index} out of range (system has {len(s)})")
    if var is None:
        var = gf2.support(s.equations[eq_index].lhs)[0]
    eqs, _, rec = _eliminate(s.equations, range(len(s.equations)), eq_index, var)
    return s.replace(eqs), rec


def run_h(
    s: LinearSystem,
    plan: Sequence[int] = (),
    budget: Fraction | int | None = None,
    *,
    by_id: bool = True,
    require_irreducible: bool = True,
) -> HRun:
    """Run Algorithm H following ``plan``.

    Plan entries are stable equation ids (the equation's index in ``s``; ids
    survive the XOR rewrites) or, with ``by_id=False``, current indices.

    With ``budget=None`` exactly the planned marks are made.  Otherwise the
    loop continues past the plan, marking the lowest-index equation on its
    lowest variable, until the marked weight reaches ``budget`` or the system
    empties.
    """
    if require_irreducible and not is_irreducible(s):
        raise PreconditionError("irreducible", "Algorithm H needs an irreducible system")
    eqs = list(s.equations)
    ids = list(range(len(eqs)))
    marks: list[MarkRecord] = []
    total = Fraction(0)
    plan = list(plan)
    step = 0
    while eqs:
        if budget is not None and total >= budget:
            break
        if step < len(plan):
            sel = plan[step]
            if by_id:
                if sel not in ids:
                    raise SelectorError(
                        "selected equation present",
                        f"planned equation id {sel} was deleted before it was marked",
                    )
                index = ids.index(sel)
            else:
                index = sel
        elif budget is None:
            break
        else:
            index = 0
        step += 1
        var = gf2.support(eqs[index].lhs)[0]
        eqs, ids, rec = _eliminate(eqs, ids, index, var)
        marks.append(rec)
        total += rec.weight
    if budget is None and step < len(plan):
        raise SelectorError("selected equation present", "system emptied before the plan was exhausted")
    return HRun(s, tuple(marks), s.replace(eqs), tuple(ids))


def conditional_expectation_assignment(s: LinearSystem) -> Assignment:
    """Derandomized assignment with excess >= 0.

    Variables are fixed in index order.  A term is fully determined once its
    highest variable is fixed, and undetermined terms have expectation 0, so
    each choice only needs the terms whose highest variable is the current one.
    """
    by_top: dict[int, list[Equation]] = {}
    for e in s.equations:
        by_top.setdefault(e.lhs.bit_length(), []).append(e)
    neg = 0
    for i in range(1, s.n_vars + 1):
        gain = Fraction(0)  # contribution when x_i = +1; x_i = -1 flips it
        for e in by_top.get(i, ()):
            rest = e.lhs & ~(1 << (i - 1))
            sign = -1 if gf2.parity(rest & neg) else 1
            gain += e.coef * sign
        if gain < 0:
            neg |= 1 << (i - 1)
    return tuple(-1 if (neg >> i) & 1 else 1 for i in range(s.n_vars))


def complete_assignment(run: HRun) -> Assignment:
    """Assignment of the run's input variables with excess >= marked weight."""
    x = conditional_expectation_assignment(run.residual)
    return lift_assignment(run.log(), x)
