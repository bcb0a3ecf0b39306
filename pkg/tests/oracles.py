"""Independent reference implementations used to validate the fast paths.

Everything here is deliberately brute force: vertex enumeration for LPs,
exhaustive assignment counting for colorings, explicit relabeling orbits
for cover classes.  None of it shares code with the implementations under
test.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product

from flexdp.covers import PERMS, Cover
from flexdp.graphs import Multigraph

Q = Fraction


# ---------------------------------------------------------------------------
# LP oracle: vertex enumeration plus recession-cone test
# ---------------------------------------------------------------------------

def _solve_square(matrix, rhs):
    """Exact Gaussian elimination; None when singular."""
    n = len(rhs)
    a = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        inv = a[col][col]
        a[col] = [x / inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def _feasible(point, constraints):
    for coeffs, rel, rhs in constraints:
        lhs = sum((c * x for c, x in zip(coeffs, point)), Q(0))
        if rel == "<=" and lhs > rhs:
            return False
        if rel == ">=" and lhs < rhs:
            return False
        if rel == "=" and lhs != rhs:
            return False
    return True


def _vertices(constraints, n):
    found = []
    for subset in combinations(range(len(constraints)), n):
        matrix = [constraints[i][0] for i in subset]
        rhs = [constraints[i][2] for i in subset]
        point = _solve_square(matrix, rhs)
        if point is not None and _feasible(point, constraints):
            found.append(tuple(point))
    return found


def oracle_solve(lp):
    """(status, value) by brute force; exact, exponential, tiny LPs only."""
    n = lp.num_vars
    lower = lp.lower if lp.lower else (Q(0),) * n
    constraints = [(list(row[0]), row[1], row[2]) for row in lp.rows]
    for j in range(n):
        bound = [Q(0)] * n
        bound[j] = Q(1)
        constraints.append((bound, ">=", lower[j]))
    vertices = _vertices(constraints, n)
    if not vertices:
        return "infeasible", None
    best = max(sum((c * x for c, x in zip(lp.objective, v)), Q(0))
               for v in vertices)
    # Recession cone, sliced by sum(d) = 1; any direction with positive
    # objective certifies unboundedness.
    cone = []
    for coeffs, rel, _ in constraints[:len(lp.rows)]:
        cone.append((coeffs, rel, Q(0)))
    for j in range(n):
        bound = [Q(0)] * n
        bound[j] = Q(1)
        cone.append((bound, ">=", Q(0)))
    cone.append(([Q(1)] * n, "=", Q(1)))
    for d in _vertices(cone, n):
        if sum((c * x for c, x in zip(lp.objective, d)), Q(0)) > 0:
            return "unbounded", None
    return "optimal", best


# ---------------------------------------------------------------------------
# Coloring oracles
# ---------------------------------------------------------------------------

def count_proper_3_colorings(g: Multigraph) -> int:
    total = 0
    for assignment in product(range(3), repeat=g.n):
        if all(assignment[u] != assignment[v] for u, v in g.pairs()):
            total += 1
    return total


def colorings_by_brute_force(g: Multigraph, cover: Cover, lists) -> list:
    result = []
    for assignment in product(range(3), repeat=g.n):
        if any(assignment[v] not in lists[v] for v in range(g.n)):
            continue
        ok = True
        for (u, v), perms in cover.matchings.items():
            if any(perm[assignment[u]] == assignment[v] for perm in perms):
                ok = False
                break
        if ok:
            result.append(assignment)
    return result


# ---------------------------------------------------------------------------
# Cover-class oracle: explicit relabeling orbits
# ---------------------------------------------------------------------------

def all_full_covers(g: Multigraph):
    """Every cover using min(multiplicity, 6) distinct matchings per pair."""
    pairs = g.pairs()
    options = [list(combinations(PERMS, min(g.multiplicity(u, v), 6)))
               for u, v in pairs]
    for pick in product(*options):
        yield Cover({pair: perms for pair, perms in zip(pairs, pick)})


def _apply_relabeling(cover: Cover, sigma) -> tuple:
    canonical = []
    for (u, v), perms in cover.matchings.items():
        su, sv = sigma[u], sigma[v]
        inv_u = [0, 0, 0]
        for i in range(3):
            inv_u[su[i]] = i
        transformed = sorted(tuple(sv[perm[inv_u[c]]] for c in range(3))
                             for perm in perms)
        canonical.append(((u, v), tuple(transformed)))
    return tuple(canonical)


def relabeling_canonical_form(g: Multigraph, cover: Cover) -> tuple:
    """Minimum serialized form over all per-vertex color relabelings."""
    return min(_apply_relabeling(cover, sigma)
               for sigma in product(PERMS, repeat=g.n))


# ---------------------------------------------------------------------------
# Random instance generators (seeded by the caller)
# ---------------------------------------------------------------------------

def random_connected_multigraph(rng: random.Random, max_n: int = 5,
                                max_mult: int = 2) -> Multigraph:
    while True:
        n = rng.randint(1, max_n)
        edges = []
        for u, v in combinations(range(n), 2):
            if rng.random() < 0.55:
                edges.append((u, v, rng.randint(1, max_mult)))
        g = Multigraph(n, edges)
        if g.is_connected():
            return g


def random_tree(rng: random.Random, n: int) -> Multigraph:
    edges = [(rng.randint(0, v - 1), v, 1) for v in range(1, n)]
    return Multigraph(n, edges)


def random_cover(rng: random.Random, g: Multigraph) -> Cover:
    matchings = {}
    for u, v in g.pairs():
        k = min(g.multiplicity(u, v), 6)
        matchings[(u, v)] = tuple(sorted(rng.sample(PERMS, k)))
    return Cover(matchings)


def random_2lists(rng: random.Random, n: int):
    return tuple(tuple(sorted(rng.sample(range(3), 2))) for _ in range(n))


def is_2connected(g: Multigraph) -> bool:
    if g.n < 3 or not g.is_connected():
        return False
    return all(g.delete_vertex(v).is_connected() for v in range(g.n))


def random_2connected_subcubic(rng: random.Random, max_n: int = 8) -> Multigraph:
    """Cycle plus ears, keeping max degree 3 and at least two 2-vertices."""
    while True:
        n = rng.randint(4, max_n)
        k = rng.randint(4, n)
        edges = [(i, (i + 1) % k, 1) for i in range(k)]
        degree = [2] * k
        used = k
        while used < n:
            anchors = [v for v in range(used) if degree[v] < 3]
            if len(anchors) < 2:
                break
            a, b = rng.sample(anchors, 2)
            length = min(n - used, rng.randint(1, 3))
            path = list(range(used, used + length))
            used += length
            degree += [2] * length
            chain = [a] + path + [b]
            for x, y in zip(chain, chain[1:]):
                edges.append((x, y, 1))
            degree[a] += 1
            degree[b] += 1
        g = Multigraph(used, edges)
        two_vertices = sum(1 for v in range(g.n) if g.degree(v) == 2)
        if (used == n and g.is_simple() and max(map(g.degree, range(g.n))) <= 3
                and two_vertices >= 2 and is_2connected(g)):
            return g
