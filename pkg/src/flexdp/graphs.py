"""Loopless multigraphs, potential arithmetic, mad, and the tight families.

Vertices are dense integer indices 0..n-1.  Edge multiplicities are stored
as counts keyed by the unordered pair (min, max); parallel edges have no
identity of their own.  All values are immutable after construction.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Optional, Sequence

Q = Fraction


class GraphError(ValueError):
    """Structural violation: loop, bad index, bad multiplicity."""


class GraphFormatError(ValueError):
    """Malformed graph/cover text input."""


class Multigraph:
    """Loopless multigraph with positive integer edge multiplicities."""

    __slots__ = ("n", "_mult", "_adj")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int, int]] = ()):
        if vertex_count < 0:
            raise GraphError(f"vertex_count must be nonnegative, got {vertex_count}")
        self.n = vertex_count
        mult: dict[tuple[int, int], int] = {}
        for u, v, m in edges:
            if u == v:
                raise GraphError(f"loop edge at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphError(f"edge ({u},{v}) out of range for {vertex_count} vertices")
            if m < 1:
                raise GraphError(f"multiplicity {m} < 1 on edge ({u},{v})")
            key = (u, v) if u < v else (v, u)
            mult[key] = mult.get(key, 0) + m
        self._mult = dict(sorted(mult.items()))
        adj: dict[int, dict[int, int]] = {v: {} for v in range(vertex_count)}
        for (u, v), m in self._mult.items():
            adj[u][v] = m
            adj[v][u] = m
        self._adj = adj

    # -- queries ---------------------------------------------------------

    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(self._mult)

    def multiplicity(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        return self._mult.get(key, 0)

    def degree(self, v: int) -> int:
        if not (0 <= v < self.n):
            raise GraphError(f"vertex {v} out of range")
        return sum(self._adj[v].values())

    def neighbors(self, v: int) -> tuple[int, ...]:
        if not (0 <= v < self.n):
            raise GraphError(f"vertex {v} out of range")
        return tuple(sorted(self._adj[v]))

    def edge_total(self) -> int:
        """Number of edges counted with multiplicity."""
        return sum(self._mult.values())

    def edge_items(self) -> tuple[tuple[int, int, int], ...]:
        return tuple((u, v, m) for (u, v), m in self._mult.items())

    def edges_within(self, subset: Iterable[int]) -> int:
        """Total multiplicity of edges with both ends in `subset`."""
        s = set(subset)
        for v in s:
            if not (0 <= v < self.n):
                raise GraphError(f"vertex {v} out of range")
        return sum(m for (u, v), m in self._mult.items() if u in s and v in s)

    def boundary(self, subset: Iterable[int]) -> int:
        """Total multiplicity of edges with exactly one end in `subset`."""
        s = set(subset)
        return sum(m for (u, v), m in self._mult.items() if (u in s) != (v in s))

    def is_simple(self) -> bool:
        return all(m == 1 for m in self._mult.values())

    # -- derived graphs --------------------------------------------------

    def delete_vertex(self, v: int) -> "Multigraph":
        """Remove v and reindex the remaining vertices densely."""
        if not (0 <= v < self.n):
            raise GraphError(f"vertex {v} out of range")
        remap = {w: (w if w < v else w - 1) for w in range(self.n) if w != v}
        edges = [(remap[a], remap[b], m) for (a, b), m in self._mult.items()
                 if a != v and b != v]
        return Multigraph(self.n - 1, edges)

    def delete_one_edge(self, u: int, v: int) -> "Multigraph":
        """Decrement the multiplicity of pair {u,v} by one."""
        if self.multiplicity(u, v) < 1:
            raise GraphError(f"no edge between {u} and {v}")
        key = (u, v) if u < v else (v, u)
        edges = [(a, b, m if (a, b) != key else m - 1)
                 for (a, b), m in self._mult.items()]
        return Multigraph(self.n, [(a, b, m) for a, b, m in edges if m > 0])

    def induced(self, subset: Sequence[int]) -> "Multigraph":
        keep = sorted(set(subset))
        remap = {v: i for i, v in enumerate(keep)}
        edges = [(remap[u], remap[v], m) for (u, v), m in self._mult.items()
                 if u in remap and v in remap]
        return Multigraph(len(keep), edges)

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for start in range(self.n):
            if seen[start]:
                continue
            comp = []
            queue = deque([start])
            seen[start] = True
            while queue:
                x = queue.popleft()
                comp.append(x)
                for y in self._adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def bfs_order(self) -> tuple[int, ...]:
        """BFS order from vertex 0, restarting at the smallest unseen vertex."""
        order = []
        seen = [False] * self.n
        for start in range(self.n):
            if seen[start]:
                continue
            seen[start] = True
            queue = deque([start])
            while queue:
                x = queue.popleft()
                order.append(x)
                for y in self.neighbors(x):
                    if not seen[y]:
                        seen[y] = True
                        queue.append(y)
        return tuple(order)

    # -- value semantics -------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, Multigraph)
                and self.n == other.n and self._mult == other._mult)

    def __hash__(self) -> int:
        return hash((self.n, tuple(self._mult.items())))

    def __repr__(self) -> str:
        return f"Multigraph({self.n}, {self.edge_items()})"


def new_multigraph(vertex_count: int, edge_list: Iterable[tuple[int, int, int]]) -> Multigraph:
    """Build a multigraph; duplicate pairs in the list have multiplicities summed."""
    return Multigraph(vertex_count, edge_list)


@dataclass(frozen=True)
class PotentialAssignment:
    """Per-vertex value in {3,4,6} plus a distinguished basepoint color."""

    rho: tuple[int, ...]
    basepoint: tuple[int, ...]

    def __post_init__(self):
        if len(self.rho) != len(self.basepoint):
            raise GraphError("rho and basepoint must have equal length")
        for r in self.rho:
            if r not in (3, 4, 6):
                raise GraphError(f"rho value {r} not in {{3,4,6}}")
        for b in self.basepoint:
            if b not in (0, 1, 2):
                raise GraphError(f"basepoint {b} not in {{0,1,2}}")

    @classmethod
    def uniform(cls, n: int, value: int = 6, basepoint: int = 0) -> "PotentialAssignment":
        return cls((value,) * n, (basepoint,) * n)

    @property
    def n(self) -> int:
        return len(self.rho)

    def list_size(self, v: int) -> int:
        """h(v): 2 for rho = 3, 3 otherwise."""
        return 2 if self.rho[v] == 3 else 3

    def pi(self, value: int) -> tuple[int, ...]:
        """Vertices with the given rho value."""
        return tuple(v for v, r in enumerate(self.rho) if r == value)

    def restrict(self, keep: Sequence[int]) -> "PotentialAssignment":
        keep = sorted(set(keep))
        return PotentialAssignment(tuple(self.rho[v] for v in keep),
                                   tuple(self.basepoint[v] for v in keep))

    def with_value(self, v: int, value: int, basepoint: Optional[int] = None) -> "PotentialAssignment":
        rho = list(self.rho)
        bp = list(self.basepoint)
        rho[v] = value
        if basepoint is not None:
            bp[v] = basepoint
        return PotentialAssignment(tuple(rho), tuple(bp))


def _check_assignment(g: Multigraph, pa: PotentialAssignment) -> None:
    if pa.n != g.n:
        raise GraphError(f"assignment covers {pa.n} vertices, graph has {g.n}")


def potential(g: Multigraph, pa: PotentialAssignment, subset: Iterable[int]) -> int:
    """Sum of rho over the subset minus 4 times the edges inside it."""
    _check_assignment(g, pa)
    s = set(subset)
    for v in s:
        if not (0 <= v < g.n):
            raise GraphError(f"vertex {v} out of range")
    return sum(pa.rho[v] for v in s) - 4 * g.edges_within(s)


def sigma(g: Multigraph, pa: PotentialAssignment, v: int) -> int:
    """Initial charge rho(v) - 2 d(v); degrees count multiplicity."""
    _check_assignment(g, pa)
    return pa.rho[v] - 2 * g.degree(v)


# ---------------------------------------------------------------------------
# Maximum average degree
# ---------------------------------------------------------------------------

def mad_subset_oracle(g: Multigraph, cap: int = 20) -> Fraction:
    """mad by exhaustive subset enumeration; reference oracle for <= `cap` vertices."""
    if g.n == 0:
        raise GraphError("mad of the empty graph is undefined")
    if g.n > cap:
        raise GraphError(f"subset oracle capped at {cap} vertices, got {g.n}")
    pair_bits = [(1 << u | 1 << v, m) for (u, v), m in g._mult.items()]
    best = Q(0)
    for mask in range(1, 1 << g.n):
        inside = sum(m for bits, m in pair_bits if bits & mask == bits)
        dens = Q(2 * inside, mask.bit_count())
        if dens > best:
            best = dens
    return best


class _Dinic:
    """Integer max-flow, small dense instances only."""

    def __init__(self, size: int):
        self.size = size
        self.graph: list[list[list[int]]] = [[] for _ in range(size)]

    def add_edge(self, u: int, v: int, cap: int) -> None:
        self.graph[u].append([v, cap, len(self.graph[v])])
        self.graph[v].append([u, 0, len(self.graph[u]) - 1])

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = [-1] * self.size
            level[s] = 0
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for e in self.graph[x]:
                    if e[1] > 0 and level[e[0]] < 0:
                        level[e[0]] = level[x] + 1
                        queue.append(e[0])
            if level[t] < 0:
                return flow
            it = [0] * self.size

            def dfs(x: int, pushed: int) -> int:
                if x == t:
                    return pushed
                while it[x] < len(self.graph[x]):
                    e = self.graph[x][it[x]]
                    v, cap, rev = e
                    if cap > 0 and level[v] == level[x] + 1:
                        d = dfs(v, min(pushed, cap))
                        if d > 0:
                            e[1] -= d
                            self.graph[v][rev][1] += d
                            return d
                    it[x] += 1
                return 0

            while True:
                pushed = dfs(s, 1 << 62)
                if pushed == 0:
                    break
                flow += pushed


def _density_exceeds(g: Multigraph, guess: Fraction) -> bool:
    """True iff some nonempty U has 2|E(U)|/|U| strictly above `guess`.

    Decided by a min-cut on the classical densest-subgraph network with
    capacities scaled by 2*denominator so everything stays integral.
    """
    p, q = guess.numerator, guess.denominator
    total = g.edge_total()
    if total == 0:
        return False
    net = _Dinic(g.n + 2)
    s, t = g.n, g.n + 1
    for v in range(g.n):
        net.add_edge(s, v, 2 * q * g.degree(v))
        net.add_edge(v, t, 2 * p)
    for (u, v), m in g._mult.items():
        net.add_edge(u, v, 2 * q * m)
        net.add_edge(v, u, 2 * q * m)
    return net.max_flow(s, t) < 4 * q * total


def mad(g: Multigraph) -> Fraction:
    """Exact maximum average degree, max over nonempty U of 2|E(U)|/|U|.

    Parametric search over the finite candidate set {2e/u} decided by integer
    max-flow; agreement with `mad_subset_oracle` is a tested invariant.
    """
    if g.n == 0:
        raise GraphError("mad of the empty graph is undefined")
    total = g.edge_total()
    candidates = sorted({Q(2 * e, u) for u in range(1, g.n + 1)
                         for e in range(total + 1)})
    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _density_exceeds(g, candidates[mid]):
            lo = mid + 1
        else:
            hi = mid
    return candidates[lo]


# ---------------------------------------------------------------------------
# Detection of the inflexible odd-cycle family
# ---------------------------------------------------------------------------

def _pattern_need(position: int, m: int) -> int:
    """Required multiplicity of the cycle edge leaving position `position`.

    Positions 1..2m+1 around the cycle; the doubled edges sit at the odd
    positions 1,3,...,2m-1, everything else needs a single edge.
    """
    return 2 if position % 2 == 1 and position <= 2 * m - 1 else 1


def find_I_subgraph(g: Multigraph) -> Optional[tuple[int, tuple[int, ...]]]:
    """Smallest m and a witness odd cycle whose alternating edges are doubled.

    The witness (v_1, ..., v_{2m+1}) has multiplicity >= 2 on the pairs
    (v_1,v_2), (v_3,v_4), ..., (v_{2m-1},v_{2m}) and >= 1 on the remaining
    cycle edges.  Extra multiplicity anywhere is allowed.  Returns None when
    no such cycle exists; simple graphs always return None.
    """
    for m in range(1, (g.n - 1) // 2 + 1):
        length = 2 * m + 1
        for start in range(g.n):
            witness = _extend_cycle(g, m, length, [start], {start})
            if witness is not None:
                return m, tuple(witness)
    return None


def _extend_cycle(g, m, length, path, used):
    k = len(path)
    if k == length:
        return list(path) if g.multiplicity(path[-1], path[0]) >= 1 else None
    need = _pattern_need(k, m)
    for w in g.neighbors(path[-1]):
        if w in used or g.multiplicity(path[-1], w) < need:
            continue
        path.append(w)
        used.add(w)
        result = _extend_cycle(g, m, length, path, used)
        if result is not None:
            return result
        used.discard(w)
        path.pop()
    return None


def find_I_subgraph_oracle(g: Multigraph, cap: int = 12) -> Optional[tuple[int, tuple[int, ...]]]:
    """Brute-force reference: try every vertex sequence of every odd length."""
    if g.n > cap:
        raise GraphError(f"oracle capped at {cap} vertices")
    for m in range(1, (g.n - 1) // 2 + 1):
        length = 2 * m + 1
        for seq in permutations(range(g.n), length):
            ok = all(g.multiplicity(seq[i], seq[i + 1]) >= _pattern_need(i + 1, m)
                     for i in range(length - 1))
            if ok and g.multiplicity(seq[-1], seq[0]) >= 1:
                return m, seq
    return None


# ---------------------------------------------------------------------------
# Family generators
# ---------------------------------------------------------------------------

def gen_family(kind: str, m: Optional[int] = None,
               chains: Optional[Sequence[int]] = None) -> tuple[Multigraph, PotentialAssignment]:
    """Construct the named tight example together with its potential values.

    Kinds and vertex layouts:
      im  -- odd cycle 0..2m on consecutive indices, pairs (0,1),(2,3),...
             doubled; m >= 1.
      jm  -- odd cycle 0..2m, pairs (1,2),(3,4),...,(2m-3,2m-2) doubled,
             pendant 2m+1 doubled to 0 and pendant 2m+2 doubled to 2m-1.
      s   -- odd cycle 0..2m with a diamond chain of chains[j] diamonds
             hung between cycle vertices 2j and 2j+1; chains gives m.
      h5  -- house: doubled base 0-1, walls 0-2 and 1-3, roof 2-3, 2-4, 3-4.
      k4  -- complete graph on 4 vertices.
      c2  -- doubled edge with the exceptional values rho = (4, 6).

    Everything gets rho = 6 and basepoint 0 except the c2 kind.
    """
    kind = kind.lower()
    if kind == "im":
        if m is None or m < 1:
            raise GraphError("im requires m >= 1")
        n = 2 * m + 1
        edges = [(j, (j + 1) % n, 1) for j in range(n)]
        edges += [(2 * i, 2 * i + 1, 1) for i in range(m)]
        return Multigraph(n, edges), PotentialAssignment.uniform(n)
    if kind == "jm":
        if m is None or m < 1:
            raise GraphError("jm requires m >= 1")
        cyc = 2 * m + 1
        n = cyc + 2
        edges = [(j, (j + 1) % cyc, 1) for j in range(cyc)]
        edges += [(j - 1, j, 1) for j in range(2, 2 * m - 1, 2)]
        edges += [(0, cyc, 2), (2 * m - 1, cyc + 1, 2)]
        return Multigraph(n, edges), PotentialAssignment.uniform(n)
    if kind == "s":
        if not chains or any(t < 1 for t in chains):
            raise GraphError("s requires a list of chain lengths >= 1")
        m_val = len(chains)
        cyc = 2 * m_val + 1
        edges = [(j, (j + 1) % cyc, 1) for j in range(cyc)]
        next_vertex = cyc
        for j, t in enumerate(chains):
            anchor = 2 * j
            for _ in range(t):
                b1, b2, a_next = next_vertex, next_vertex + 1, next_vertex + 2
                next_vertex += 3
                edges += [(anchor, b1, 1), (anchor, b2, 1), (b1, b2, 1),
                          (b1, a_next, 1), (b2, a_next, 1)]
                anchor = a_next
            edges.append((anchor, 2 * j + 1, 1))
        return Multigraph(next_vertex, edges), PotentialAssignment.uniform(next_vertex)
    if kind == "h5":
        edges = [(0, 1, 2), (0, 2, 1), (1, 3, 1), (2, 3, 1), (2, 4, 1), (3, 4, 1)]
        return Multigraph(5, edges), PotentialAssignment.uniform(5)
    if kind == "k4":
        edges = [(u, v, 1) for u, v in combinations(range(4), 2)]
        return Multigraph(4, edges), PotentialAssignment.uniform(4)
    if kind == "c2":
        pa = PotentialAssignment((4, 6), (0, 0))
        return Multigraph(2, [(0, 1, 2)]), pa
    raise GraphError(f"unknown family kind {kind!r}")


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

def parse_graph(text: str) -> tuple[Multigraph, PotentialAssignment]:
    """Parse the line-oriented graph format.

    `vertices N`, then `edge U V MULT` lines (duplicates sum), optional
    `rho V {3|4|6}` (default 6) and `basepoint V {0|1|2}` (default 0).
    Comments start with '#'.
    """
    n: Optional[int] = None
    edges: list[tuple[int, int, int]] = []
    rho_over: dict[int, int] = {}
    bp_over: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        word = fields[0].lower()
        try:
            if word == "vertices":
                if n is not None:
                    raise GraphFormatError("duplicate vertices line")
                n = int(fields[1])
            elif word == "edge":
                edges.append((int(fields[1]), int(fields[2]), int(fields[3])))
            elif word == "rho":
                rho_over[int(fields[1])] = int(fields[2])
            elif word == "basepoint":
                bp_over[int(fields[1])] = int(fields[2])
            else:
                raise GraphFormatError(f"unknown directive {word!r}")
        except (IndexError, ValueError) as exc:
            raise GraphFormatError(f"line {lineno}: {raw.strip()!r}: {exc}") from exc
    if n is None:
        raise GraphFormatError("missing vertices line")
    g = Multigraph(n, edges)
    rho = [6] * n
    bp = [0] * n
    for v, r in rho_over.items():
        if not (0 <= v < n):
            raise GraphFormatError(f"rho vertex {v} out of range")
        rho[v] = r
    for v, b in bp_over.items():
        if not (0 <= v < n):
            raise GraphFormatError(f"basepoint vertex {v} out of range")
        bp[v] = b
    return g, PotentialAssignment(tuple(rho), tuple(bp))


def serialize_graph(g: Multigraph, pa: Optional[PotentialAssignment] = None) -> str:
    lines = [f"vertices {g.n}"]
    lines += [f"edge {u} {v} {m}" for u, v, m in g.edge_items()]
    if pa is not None:
        _check_assignment(g, pa)
        lines += [f"rho {v} {r}" for v, r in enumerate(pa.rho) if r != 6]
        lines += [f"basepoint {v} {b}" for v, b in enumerate(pa.basepoint) if b != 0]
    return "\n".join(lines) + "\n"
