"""Flexibility computations: epsilon*, packings, and framework feasibility.

Everything is phrased as an exact LP over the enumerated colorings of a
cover.  The dual multipliers of the marginal constraints are reported as
the worst weighted request certifying the optimum.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .colorings import Coloring, ColoringDistribution, enumerate_colorings, marginal
from .covers import (Cover, ListAssignment, ListDistribution, assert_valid,
                     full_lists)
from .graphs import Multigraph, PotentialAssignment
from .lp import LinearProgram, solve
from .rationals import json_rat

Q = Fraction


class InadmissibleDistribution(ValueError):
    """The list distribution fails the forbid-probability requirement."""


@dataclass(frozen=True)
class FlexReport:
    """Exact optimum with primal and dual certificates.

    `worst_request` maps every listed (vertex, color) to a nonnegative
    weight with total 1; no coloring collects more than epsilon_star of it
    and some coloring in the support collects exactly that much.
    """

    epsilon_star: Fraction
    colorable: bool
    distribution: tuple[tuple[Coloring, Fraction], ...]
    worst_request: dict[tuple[int, int], Fraction]


def _listed_pairs(lists: ListAssignment) -> list[tuple[int, int]]:
    return [(v, c) for v, colors in enumerate(lists) for c in colors]


def _require_vertices(g: Multigraph) -> None:
    if g.n == 0:
        raise ValueError("flexibility queries need at least one vertex")


def _support(colorings: Sequence[Coloring], pairs) -> dict[tuple[int, int], list[int]]:
    where: dict[tuple[int, int], list[int]] = {pair: [] for pair in pairs}
    for i, phi in enumerate(colorings):
        for v, c in enumerate(phi):
            if (v, c) in where:
                where[(v, c)].append(i)
    return where


def epsilon_star(g: Multigraph, cover: Cover,
                 lists: Optional[ListAssignment] = None,
                 shortcut: bool = True) -> FlexReport:
    """max eps s.t. some distribution gives every listed color marginal >= eps.

    Returns eps* = 0 with a flagged report when the cover admits no coloring
    at all, which composes with minimisation over covers.  With `shortcut`
    a listed color missing from every coloring yields eps* = 0 without an
    LP solve; the certificate is the unit request on that color.
    """
    _require_vertices(g)
    assert_valid(g, cover)
    if lists is None:
        lists = full_lists(g.n)
    pairs = _listed_pairs(lists)
    colorings = enumerate_colorings(g, cover, lists)
    if not colorings:
        request = {pair: Q(0) for pair in pairs}
        request[pairs[0]] = Q(1)
        return FlexReport(Q(0), False, (), request)
    where = _support(colorings, pairs)
    if shortcut:
        dead = next((pair for pair in pairs if not where[pair]), None)
        if dead is not None:
            uniform = Q(1, len(colorings))
            request = {pair: Q(0) for pair in pairs}
            request[dead] = Q(1)
            dist = tuple((phi, uniform) for phi in colorings)
            return FlexReport(Q(0), True, dist, request)

    k = len(colorings)
    rows = []
    for pair in pairs:
        coeffs = [Q(0)] * (k + 1)
        for i in where[pair]:
            coeffs[i] = Q(1)
        coeffs[k] = Q(-1)
        rows.append((tuple(coeffs), ">=", Q(0)))
    rows.append((tuple([Q(1)] * k + [Q(0)]), "=", Q(1)))
    objective = tuple([Q(0)] * k + [Q(1)])
    outcome = solve(LinearProgram(k + 1, objective, tuple(rows)))
    assert outcome.status == "optimal"
    eps = outcome.value
    dist = tuple((colorings[i], outcome.primal[i])
                 for i in range(k) if outcome.primal[i] != 0)
    weights = [-outcome.dual[i] for i in range(len(pairs))]
    total = sum(weights, Q(0))
    request = {pair: w / total for pair, w in zip(pairs, weights)}
    return FlexReport(eps, True, dist, request)


def fractional_packing(g: Multigraph, cover: Cover) -> Optional[ColoringDistribution]:
    """Distribution with every full-list marginal exactly 1/3, if one exists."""
    _require_vertices(g)
    assert_valid(g, cover)
    lists = full_lists(g.n)
    pairs = _listed_pairs(lists)
    colorings = enumerate_colorings(g, cover, lists)
    if not colorings:
        return None
    where = _support(colorings, pairs)
    if any(not where[pair] for pair in pairs):
        return None
    k = len(colorings)
    rows = []
    for pair in pairs:
        coeffs = [Q(0)] * k
        for i in where[pair]:
            coeffs[i] = Q(1)
        rows.append((tuple(coeffs), "=", Q(1, 3)))
    outcome = solve(LinearProgram(k, (Q(0),) * k, tuple(rows)))
    if outcome.status != "optimal":
        return None
    return [(colorings[i], outcome.primal[i])
            for i in range(k) if outcome.primal[i] != 0]


def box_distribution(g: Multigraph, cover: Cover, lists: ListAssignment,
                     lower: Fraction, upper: Fraction,
                     pinned: Sequence[tuple[int, int, Fraction]] = ()
                     ) -> Optional[ColoringDistribution]:
    """Feasibility with lower <= marginal <= upper and exact pinned entries."""
    lower, upper = Q(lower), Q(upper)
    if lower > upper:
        raise ValueError(f"lower bound {lower} exceeds upper bound {upper}")
    _require_vertices(g)
    assert_valid(g, cover)
    pins: dict[tuple[int, int], Fraction] = {}
    for v, c, val in pinned:
        if c not in lists[v]:
            raise ValueError(f"pinned color {c} not in the list of vertex {v}")
        val = Q(val)
        if pins.get((v, c), val) != val:
            raise ValueError(f"({v},{c}) pinned to both {pins[(v, c)]} and {val}")
        pins[(v, c)] = val
    pairs = _listed_pairs(lists)
    colorings = enumerate_colorings(g, cover, lists)
    if not colorings:
        return None
    where = _support(colorings, pairs)
    k = len(colorings)
    rows = []
    for pair in pairs:
        coeffs = [Q(0)] * k
        for i in where[pair]:
            coeffs[i] = Q(1)
        coeffs = tuple(coeffs)
        if pair in pins:
            rows.append((coeffs, "=", pins[pair]))
        else:
            rows.append((coeffs, ">=", lower))
            rows.append((coeffs, "<=", upper))
    rows.append(((Q(1),) * k, "=", Q(1)))
    outcome = solve(LinearProgram(k, (Q(0),) * k, tuple(rows)))
    if outcome.status != "optimal":
        return None
    return [(colorings[i], outcome.primal[i])
            for i in range(k) if outcome.primal[i] != 0]


@dataclass(frozen=True)
class FrameworkWitness:
    """Joint distribution over (list outcome, coloring) pairs."""

    outcomes: tuple[tuple[ListAssignment, tuple[tuple[Coloring, Fraction], ...]], ...]

    def overall(self) -> ColoringDistribution:
        merged: dict[Coloring, Fraction] = {}
        for _, colorings in self.outcomes:
            for phi, w in colorings:
                merged[phi] = merged.get(phi, Q(0)) + w
        return sorted(merged.items())


def check_admissible(g: Multigraph, pa: PotentialAssignment,
                     dist: ListDistribution, eps: Fraction) -> None:
    """Each 2-list vertex must forbid every color with probability >= eps."""
    for lists, _ in dist.outcomes:
        if len(lists) != g.n:
            raise ValueError("list assignment does not match the vertex set")
        for v in range(g.n):
            if len(lists[v]) != pa.list_size(v):
                raise ValueError(
                    f"outcome list at vertex {v} has size {len(lists[v])}, "
                    f"expected {pa.list_size(v)}")
    for v in pa.pi(3):
        for c in range(3):
            forbid = sum((prob for lists, prob in dist.outcomes
                          if c not in lists[v]), Q(0))
            if forbid < eps:
                raise InadmissibleDistribution(
                    f"color {c} at vertex {v} forbidden with probability "
                    f"{forbid} < {eps}")


def framework_feasible(g: Multigraph, pa: PotentialAssignment, cover: Cover,
                       dist: ListDistribution, eps: Fraction
                       ) -> Optional[FrameworkWitness]:
    """Feasibility of an eps-distribution against the given list distribution.

    Overall marginals must reach eps on every color of every full list, and
    rho = 4 vertices are held to the exact equalities: 2*eps at the
    basepoint and 1/2 - eps elsewhere.  Inadmissible list distributions
    raise; an infeasible LP returns None.
    """
    eps = Q(eps)
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0,1), got {eps}")
    _require_vertices(g)
    assert_valid(g, cover)
    if pa.n != g.n:
        raise ValueError("potential assignment does not match the graph")
    check_admissible(g, pa, dist, eps)

    active = [(lists, prob) for lists, prob in dist.outcomes if prob > 0]
    per_outcome: list[list[Coloring]] = []
    for lists, _ in active:
        colorings = enumerate_colorings(g, cover, lists)
        if not colorings:
            return None
        per_outcome.append(colorings)

    index: list[tuple[int, int]] = [(o, i) for o, colorings in enumerate(per_outcome)
                                    for i in range(len(colorings))]
    k = len(index)
    pairs = _listed_pairs(full_lists(g.n))
    where: dict[tuple[int, int], list[int]] = {pair: [] for pair in pairs}
    for col, (o, i) in enumerate(index):
        for v, c in enumerate(per_outcome[o][i]):
            where[(v, c)].append(col)
    if any(not where[pair] for pair in pairs):
        return None

    rows = []
    for o, (_, prob) in enumerate(active):
        coeffs = [Q(1) if index[col][0] == o else Q(0) for col in range(k)]
        rows.append((tuple(coeffs), "=", prob))
    for pair in pairs:
        coeffs = [Q(0)] * k
        for col in where[pair]:
            coeffs[col] = Q(1)
        rows.append((tuple(coeffs), ">=", eps))
    for v in pa.pi(4):
        for c in range(3):
            coeffs = [Q(0)] * k
            for col in where[(v, c)]:
                coeffs[col] = Q(1)
            target = 2 * eps if c == pa.basepoint[v] else Q(1, 2) - eps
            rows.append((tuple(coeffs), "=", target))
    outcome = solve(LinearProgram(k, (Q(0),) * k, tuple(rows)))
    if outcome.status != "optimal":
        return None
    grouped: list[list[tuple[Coloring, Fraction]]] = [[] for _ in active]
    for col, weight in enumerate(outcome.primal):
        if weight != 0:
            o, i = index[col]
            grouped[o].append((per_outcome[o][i], weight))
    return FrameworkWitness(tuple((active[o][0], tuple(grouped[o]))
                                  for o in range(len(active))))


def flex_report_json(report: FlexReport) -> dict:
    """Schema: rationals as 'p/q' strings, colorings space-separated."""
    return {
        "epsilon_star": json_rat(report.epsilon_star),
        "colorable": report.colorable,
        "distribution": [[" ".join(map(str, phi)), json_rat(w)]
                         for phi, w in report.distribution],
        "worst_request": [[v, c, json_rat(w)]
                          for (v, c), w in sorted(report.worst_request.items())
                          if w != 0],
    }
