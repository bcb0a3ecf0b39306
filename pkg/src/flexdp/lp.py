"""Exact rational linear programming via two-phase simplex with Bland's rule.

Maximization problems over rational data.  The tableau is kept as integer
numerator rows with one positive denominator per row, which is exact and
avoids per-entry gcd work; Bland's smallest-index rule guarantees
termination.  Dual multipliers are read off the artificial columns of the
final tableau, and every optimal solve is re-verified against the exact
optimality certificate (feasibility, complementary slackness, strong
duality) unless the caller opts out.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Q = Fraction

LESS, EQUAL, GREATER = "<=", "=", ">="
_RELATIONS = (LESS, EQUAL, GREATER)


class LpError(ValueError):
    """Malformed program: width mismatch or unknown relation."""


class LpInternalError(AssertionError):
    """The exact optimality certificate failed; indicates a solver bug."""


@dataclass(frozen=True)
class LinearProgram:
    """max objective . x  subject to rows, x >= lower (default 0)."""

    num_vars: int
    objective: tuple[Fraction, ...]
    rows: tuple[tuple[tuple[Fraction, ...], str, Fraction], ...]
    lower: tuple[Fraction, ...] = ()

    def __post_init__(self):
        if len(self.objective) != self.num_vars:
            raise LpError("objective width does not match num_vars")
        for coeffs, rel, _ in self.rows:
            if len(coeffs) != self.num_vars:
                raise LpError("row width does not match num_vars")
            if rel not in _RELATIONS:
                raise LpError(f"unknown relation {rel!r}")
        if self.lower and len(self.lower) != self.num_vars:
            raise LpError("lower bound width does not match num_vars")

    @classmethod
    def build(cls, objective: Sequence, rows, lower: Optional[Sequence] = None) -> "LinearProgram":
        obj = tuple(Q(c) for c in objective)
        rws = tuple((tuple(Q(a) for a in coeffs), rel, Q(rhs))
                    for coeffs, rel, rhs in rows)
        low = tuple(Q(b) for b in lower) if lower is not None else ()
        return cls(len(obj), obj, rws, low)


@dataclass(frozen=True)
class LpOutcome:
    status: str  # "optimal" | "infeasible" | "unbounded"
    primal: Optional[tuple[Fraction, ...]] = None
    value: Optional[Fraction] = None
    dual: Optional[tuple[Fraction, ...]] = None


def _reduce_row(nums: list[int], den: int) -> tuple[list[int], int]:
    g = den
    for x in nums:
        g = gcd(g, x)
        if g == 1:
            return nums, den
    if g > 1:
        nums = [x // g for x in nums]
        den //= g
    return nums, den


class _Tableau:
    """Simplex tableau over integer rows with per-row denominators."""

    def __init__(self, rows: list[list[int]], dens: list[int], basis: list[int],
                 ncols: int):
        self.rows = rows          # each of length ncols + 1, last entry = rhs
        self.dens = dens
        self.basis = basis
        self.ncols = ncols
        self.z: list[int] = []
        self.zden = 1

    def value(self, i: int, j: int) -> Fraction:
        return Q(self.rows[i][j], self.dens[i])

    def zvalue(self, j: int) -> Fraction:
        return Q(self.z[j], self.zden)

    def pivot(self, p: int, col: int) -> None:
        rp = self.rows[p]
        piv = rp[col]
        for i in range(len(self.rows)):
            if i == p:
                continue
            ri = self.rows[i]
            factor = ri[col]
            if factor == 0:
                continue
            new = [a * piv - factor * b for a, b in zip(ri, rp)]
            den = self.dens[i] * piv
            if den < 0:
                new = [-a for a in new]
                den = -den
            self.rows[i], self.dens[i] = _reduce_row(new, den)
        factor = self.z[col]
        if factor != 0:
            new = [a * piv - factor * b for a, b in zip(self.z, rp)]
            den = self.zden * piv
            if den < 0:
                new = [-a for a in new]
                den = -den
            self.z, self.zden = _reduce_row(new, den)
        if piv < 0:
            self.rows[p] = [-a for a in rp]
        self.rows[p], self.dens[p] = _reduce_row(self.rows[p], self.dens[p])
        self.basis[p] = col

    def run(self, barred: frozenset[int]) -> str:
        """Bland's rule until optimal or unbounded."""
        while True:
            entering = -1
            for j in range(self.ncols):
                if j in barred:
                    continue
                if self.z[j] < 0:
                    entering = j
                    break
            if entering < 0:
                return "optimal"
            leave = -1
            best_num = best_den = 0  # ratio = rhs / coeff, both from the row
            for i, row in enumerate(self.rows):
                coeff = row[entering]
                if coeff <= 0:
                    continue
                num, den = row[self.ncols], coeff
                if leave < 0 or num * best_den < best_num * den or (
                        num * best_den == best_num * den
                        and self.basis[i] < self.basis[leave]):
                    leave, best_num, best_den = i, num, den
            if leave < 0:
                return "unbounded"
            self.pivot(leave, entering)


def solve(lp: LinearProgram, check: bool = True) -> LpOutcome:
    """Exact two-phase simplex.  `check` re-verifies the certificate."""
    n = lp.num_vars
    lower = lp.lower if lp.lower else (Q(0),) * n

    # Shift x = x' + lower so all variables are >= 0.
    shifted_rows = []
    for coeffs, rel, rhs in lp.rows:
        shift = sum((c * b for c, b in zip(coeffs, lower)), Q(0))
        shifted_rows.append((coeffs, rel, rhs - shift))

    m = len(shifted_rows)
    n_slack = sum(1 for _, rel, _ in shifted_rows if rel != EQUAL)
    ncols = n + n_slack + m  # structural, slack/surplus, artificial
    art0 = n + n_slack

    rows: list[list[int]] = []
    dens: list[int] = []
    signs: list[int] = []  # +1 if the row kept its direction, -1 if negated
    slack_at = 0
    for i, (coeffs, rel, rhs) in enumerate(shifted_rows):
        sign = 1
        if rhs < 0:
            sign = -1
            coeffs = tuple(-c for c in coeffs)
            rhs = -rhs
            rel = {LESS: GREATER, GREATER: LESS, EQUAL: EQUAL}[rel]
        signs.append(sign)
        row_q = list(coeffs) + [Q(0)] * (n_slack + m) + [rhs]
        if rel != EQUAL:
            row_q[n + slack_at] = Q(1) if rel == LESS else Q(-1)
            slack_at += 1
        row_q[art0 + i] = Q(1)
        den = 1
        for v in row_q:
            den = den * v.denominator // gcd(den, v.denominator)
        nums = [int(v * den) for v in row_q]
        nums, den = _reduce_row(nums, den)
        rows.append(nums)
        dens.append(den)

    tab = _Tableau(rows, dens, list(range(art0, art0 + m)), ncols)

    # Phase 1: maximize -(sum of artificials); reduced costs from basis = I.
    zq = [Q(0)] * (ncols + 1)
    for j in range(ncols):
        col_sum = sum((tab.value(i, j) for i in range(m)), Q(0))
        cj = Q(-1) if j >= art0 else Q(0)
        zq[j] = -col_sum - cj
    zq[ncols] = -sum((tab.value(i, ncols) for i in range(m)), Q(0))
    _load_zrow(tab, zq)
    tab.run(barred=frozenset())
    if tab.zvalue(ncols) != 0:
        return LpOutcome(status="infeasible")

    # Drive artificials out of the basis; drop rows that turn out redundant.
    for i in range(m - 1, -1, -1):
        if tab.basis[i] < art0:
            continue
        pivot_col = next((j for j in range(art0) if tab.rows[i][j] != 0), None)
        if pivot_col is None:
            del tab.rows[i], tab.dens[i], tab.basis[i]
        else:
            tab.pivot(i, pivot_col)

    # Phase 2 with the real objective.  Stored rows are unnormalized (the
    # basic coefficient is not 1), so divide each row by it when forming
    # c_B . B^-1 A.
    cost = list(lp.objective) + [Q(0)] * (ncols - n)
    zq = [Q(0)] * (ncols + 1)
    for j in range(ncols + 1):
        total = Q(0)
        for i, b in enumerate(tab.basis):
            cb = cost[b]
            if cb:
                total += cb * tab.value(i, j) / tab.value(i, b)
        zq[j] = total - (cost[j] if j < ncols else Q(0))
    _load_zrow(tab, zq)
    status = tab.run(barred=frozenset(range(art0, art0 + m)))
    if status == "unbounded":
        return LpOutcome(status="unbounded")

    x_shifted = [Q(0)] * ncols
    for i, b in enumerate(tab.basis):
        x_shifted[b] = Q(tab.rows[i][tab.ncols], tab.rows[i][b])
    primal = tuple(x_shifted[j] + lower[j] for j in range(n))
    value = sum((c * v for c, v in zip(lp.objective, primal)), Q(0))

    # The z-row is a combination of the standard-form rows minus the cost
    # row; the coefficient on row i sits under its artificial column, which
    # is exactly the dual multiplier (sign-corrected for negated rows).
    dual = tuple(signs[i] * tab.zvalue(art0 + i) for i in range(m))
    outcome = LpOutcome(status="optimal", primal=primal, value=value,
                        dual=dual)
    if check:
        verify_certificate(lp, outcome)
    return outcome


def _load_zrow(tab: _Tableau, zq: list[Fraction]) -> None:
    den = 1
    for v in zq:
        den = den * v.denominator // gcd(den, v.denominator)
    nums = [int(v * den) for v in zq]
    tab.z, tab.zden = _reduce_row(nums, den)


def verify_certificate(lp: LinearProgram, out: LpOutcome) -> None:
    """Exact optimality check: raises LpInternalError on any violation."""
    if out.status != "optimal":
        return
    x, y = out.primal, out.dual
    lower = lp.lower if lp.lower else (Q(0),) * lp.num_vars
    if any(xj < bj for xj, bj in zip(x, lower)):
        raise LpInternalError("primal violates a lower bound")
    for i, (coeffs, rel, rhs) in enumerate(lp.rows):
        lhs = sum((c * v for c, v in zip(coeffs, x)), Q(0))
        if rel == LESS and lhs > rhs:
            raise LpInternalError(f"row {i}: {lhs} > {rhs}")
        if rel == GREATER and lhs < rhs:
            raise LpInternalError(f"row {i}: {lhs} < {rhs}")
        if rel == EQUAL and lhs != rhs:
            raise LpInternalError(f"row {i}: {lhs} != {rhs}")
        if rel == LESS and y[i] < 0:
            raise LpInternalError(f"row {i}: dual sign for <= must be >= 0")
        if rel == GREATER and y[i] > 0:
            raise LpInternalError(f"row {i}: dual sign for >= must be <= 0")
        if y[i] != 0 and lhs != rhs:
            raise LpInternalError(f"row {i}: complementary slackness fails")
    value = sum((c * v for c, v in zip(lp.objective, x)), Q(0))
    if value != out.value:
        raise LpInternalError("reported value differs from objective at primal")
    reduced = []
    for j in range(lp.num_vars):
        rj = sum((y[i] * lp.rows[i][0][j] for i in range(len(lp.rows))), Q(0)) \
            - lp.objective[j]
        reduced.append(rj)
        if rj < 0:
            raise LpInternalError(f"column {j}: dual infeasible (reduced cost {rj})")
        if rj != 0 and x[j] != lower[j]:
            raise LpInternalError(f"column {j}: complementary slackness fails")
    dual_value = sum((y[i] * lp.rows[i][2] for i in range(len(lp.rows))), Q(0))
    correction = sum((rj * bj for rj, bj in zip(reduced, lower)), Q(0))
    if dual_value != value + correction:
        raise LpInternalError(
            f"strong duality fails: dual {dual_value} vs primal {value}")
