"""Multidigraphs, named graph families, contraction and enumerators.

Vertices are 1..n.  A simple graph is stored as the symmetric digraph with one
arc in each direction per edge.  Arc multiplicities are plain counts.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx


class GraphError(ValueError):
    pass


class Digraph:
    """Multidigraph on vertices 1..n given by its arc multiplicity matrix."""

    __slots__ = ("n", "_mult")

    def __init__(self, n: int, mult: Optional[Sequence[Sequence[int]]] = None):
        if n < 0:
            raise GraphError("negative vertex count")
        if mult is None:
            mult = [[0] * n for _ in range(n)]
        if len(mult) != n or any(len(row) != n for row in mult):
            raise GraphError("multiplicity matrix must be n x n")
        if any(m < 0 for row in mult for m in row):
            raise GraphError("negative arc multiplicity")
        self.n = n
        self._mult = tuple(tuple(int(m) for m in row) for row in mult)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Tuple[int, ...]]) -> "Digraph":
        mult = [[0] * n for _ in range(n)]
        for arc in arcs:
            u, v = arc[0], arc[1]
            m = arc[2] if len(arc) > 2 else 1
            _check_vertex(n, u)
            _check_vertex(n, v)
            if m < 0:
                raise GraphError(f"negative multiplicity on arc {u}->{v}")
            mult[u - 1][v - 1] += m
        return cls(n, mult)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, ...]]) -> "Digraph":
        """Symmetric digraph: each edge {u, v} becomes arcs u->v and v->u."""
        arcs = []
        for e in edges:
            u, v = e[0], e[1]
            m = e[2] if len(e) > 2 else 1
            arcs.append((u, v, m))
            if u != v:
                arcs.append((v, u, m))
        return cls.from_arcs(n, arcs)

    def mult(self, u: int, v: int) -> int:
        return self._mult[u - 1][v - 1]

    @property
    def matrix(self) -> Tuple[Tuple[int, ...], ...]:
        return self._mult

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def arcs(self) -> List[Tuple[int, int, int]]:
        return [
            (u + 1, v + 1, m)
            for u, row in enumerate(self._mult)
            for v, m in enumerate(row)
            if m
        ]

    def edges(self) -> List[Tuple[int, int]]:
        """Edges u < v of a simple graph."""
        self.require_simple()
        return [(u, v) for u, v, _ in self.arcs() if u < v]

    def has_loops(self) -> bool:
        return any(self._mult[i][i] for i in range(self.n))

    def is_symmetric(self) -> bool:
        return all(self._mult[i][j] == self._mult[j][i] for i in range(self.n) for j in range(i))

    def is_simple(self) -> bool:
        return (
            self.is_symmetric()
            and not self.has_loops()
            and all(m in (0, 1) for row in self._mult for m in row)
        )

    def require_simple(self):
        if not self.is_simple():
            raise GraphError("operation requires a simple graph")

    def adjacent(self, u: int, v: int) -> bool:
        return self._mult[u - 1][v - 1] > 0

    def out_degrees(self) -> List[int]:
        return [sum(row) for row in self._mult]

    def in_degrees(self) -> List[int]:
        return [sum(self._mult[u][v] for u in range(self.n)) for v in range(self.n)]

    def laplacian_degrees(self) -> List[int]:
        """Out-degrees ignoring loops: the diagonal of the Laplacian matrix."""
        return [sum(row) - row[i] for i, row in enumerate(self._mult)]

    def is_eulerian(self) -> bool:
        return self.out_degrees() == self.in_degrees()

    def is_weakly_connected(self) -> bool:
        if self.n == 0:
            return True
        return nx.is_weakly_connected(self.to_networkx())

    def to_networkx(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.vertices())
        for u, v, m in self.arcs():
            for _ in range(m):
                g.add_edge(u, v)
        return g

    def complement(self) -> "Digraph":
        self.require_simple()
        return Digraph(
            self.n,
            [[0 if i == j else 1 - self._mult[i][j] for j in range(self.n)] for i in range(self.n)],
        )

    def without_loops(self) -> "Digraph":
        return Digraph(self.n, [[0 if i == j else m for j, m in enumerate(row)] for i, row in enumerate(self._mult)])

    def delete_vertex(self, v: int) -> "Digraph":
        _check_vertex(self.n, v)
        return induced(self, [u for u in self.vertices() if u != v])

    def __eq__(self, other):
        return isinstance(other, Digraph) and self.n == other.n and self._mult == other._mult

    def __hash__(self):
        return hash((self.n, self._mult))

    def __repr__(self):
        return f"Digraph({self.n}, arcs={self.arcs()})"

    def to_json(self) -> dict:
        kind = "graph" if self.is_simple() else "digraph"
        if kind == "graph":
            arcs = [[u, v, 1] for u, v in self.edges()]
        else:
            arcs = [list(a) for a in self.arcs()]
        return {"kind": kind, "n": self.n, "arcs": arcs}


def _check_vertex(n: int, v: int):
    if not isinstance(v, int) or not 1 <= v <= n:
        raise GraphError(f"vertex {v} out of range 1..{n}")


# --------------------------------------------------------------------------
# parsing

def parse_graph(text: str) -> Digraph:
    """Parse the line format or its JSON equivalent.

    Line format: a header ``graph <n>`` or ``digraph <n>`` followed by lines
    ``u v [mult]``; ``#`` starts a comment.  For ``graph`` every line is an
    undirected edge.  A ``/`` may stand in for a newline.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise GraphError(f"malformed JSON graph: {exc}") from None
        return graph_from_json(data)
    lines = []
    for raw in stripped.replace("/", "\n").splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise GraphError("empty graph description")
    head = lines[0].split()
    if len(head) != 2 or head[0] not in ("graph", "digraph"):
        raise GraphError(f"bad header {lines[0]!r}; expected 'graph <n>' or 'digraph <n>'")
    try:
        n = int(head[1])
    except ValueError:
        raise GraphError(f"bad vertex count {head[1]!r}") from None
    if n < 0:
        raise GraphError("negative vertex count")
    arcs = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) not in (2, 3):
            raise GraphError(f"malformed arc line {line!r}")
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise GraphError(f"non-integer in arc line {line!r}") from None
        if len(nums) == 3 and nums[2] < 0:
            raise GraphError(f"negative multiplicity in {line!r}")
        for v in nums[:2]:
            _check_vertex(n, v)
        arcs.append(tuple(nums))
    if head[0] == "graph":
        return Digraph.from_edges(n, arcs)
    return Digraph.from_arcs(n, arcs)


def graph_from_json(data: dict) -> Digraph:
    try:
        kind, n, arcs = data["kind"], int(data["n"]), data.get("arcs", [])
    except (KeyError, TypeError, ValueError):
        raise GraphError("JSON graph needs 'kind', 'n' and 'arcs'") from None
    if kind not in ("graph", "digraph"):
        raise GraphError(f"unknown graph kind {kind!r}")
    rows = []
    for a in arcs:
        if not isinstance(a, list) or len(a) not in (2, 3) or not all(isinstance(x, int) for x in a):
            raise GraphError(f"malformed arc {a!r}")
        if len(a) == 3 and a[2] < 0:
            raise GraphError(f"negative multiplicity in {a!r}")
        for v in a[:2]:
            _check_vertex(n, v)
        rows.append(tuple(a))
    if kind == "graph":
        return Digraph.from_edges(n, rows)
    return Digraph.from_arcs(n, rows)


def format_graph(G: Digraph) -> str:
    if G.is_simple():
        lines = [f"graph {G.n}"] + [f"{u} {v}" for u, v in G.edges()]
    else:
        lines = [f"digraph {G.n}"] + [f"{u} {v}" + (f" {m}" if m != 1 else "") for u, v, m in G.arcs()]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# families

def complete(n: int) -> Digraph:
    if n < 0:
        raise GraphError("n must be non-negative")
    return Digraph.from_edges(n, itertools.combinations(range(1, n + 1), 2))


def trivial(n: int) -> Digraph:
    if n < 0:
        raise GraphError("n must be non-negative")
    return Digraph(n)


def path(n: int) -> Digraph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Digraph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def cycle(n: int) -> Digraph:
    """C_n with edges v_i v_{i+1}, indices mod n; C_3 is K_3."""
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Digraph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def complete_minus_star(n: int, m: int) -> Digraph:
    """K_{n+1} with the m edges v_{n+1} v_1, ..., v_{n+1} v_m deleted."""
    if not n > m >= 1:
        raise GraphError("complete-minus-star needs n > m >= 1")
    missing = {(i, n + 1) for i in range(1, m + 1)}
    return Digraph.from_edges(
        n + 1, [e for e in itertools.combinations(range(1, n + 2), 2) if e not in missing]
    )


def complete_minus_matching(n: int) -> Digraph:
    """K_n minus the perfect matching {v_i v_{i+n/2}}."""
    if n < 2 or n % 2:
        raise GraphError("complete-minus-matching needs an even n >= 2")
    h = n // 2
    missing = {(i, i + h) for i in range(1, h + 1)}
    return Digraph.from_edges(n, [e for e in itertools.combinations(range(1, n + 1), 2) if e not in missing])


def cone(G: Digraph) -> Digraph:
    """Add a vertex n+1 joined to every vertex of the simple graph G."""
    G.require_simple()
    return Digraph.from_edges(G.n + 1, G.edges() + [(v, G.n + 1) for v in G.vertices()])


# small named example graphs
NAMED_GRAPHS = {
    # K_6 minus the matching v1v4, v2v5, v3v6
    "k6-minus-m3": lambda: complete_minus_matching(6),
    # K_6 \ M_3 plus a vertex joined to v1, v3, v4, v6
    "fig1-g1": lambda: Digraph.from_edges(7, complete_minus_matching(6).edges() + [(7, 1), (7, 3), (7, 4), (7, 6)]),
    # K_4 plus v5 ~ {v1, v2} and v6 ~ {v2, v3, v4}
    "fig1-g2": lambda: Digraph.from_edges(
        6, complete(4).edges() + [(5, 1), (5, 2), (6, 2), (6, 3), (6, 4)]
    ),
    "fige-h": lambda: Digraph.from_edges(
        6, [(1, 2), (1, 3), (1, 6), (2, 3), (3, 4), (3, 6), (4, 5), (4, 6), (5, 6)]
    ),
    "fige-cone": lambda: cone(NAMED_GRAPHS["fige-h"]()),
    "cospectral-g1": lambda: Digraph.from_edges(6, [(1, 2), (2, 3), (2, 4), (3, 5), (4, 5), (3, 4), (5, 6)]),
    "cospectral-g2": lambda: Digraph.from_edges(6, [(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (3, 6), (5, 6)]),
    "exa1": lambda: Digraph.from_arcs(4, [(1, 1), (1, 2), (2, 3), (3, 4), (4, 1), (4, 2)]),
}


def family(kind: str, n: Optional[int] = None, m: Optional[int] = None, base: Optional[Digraph] = None) -> Digraph:
    """Construct a named family member or one of the named example graphs."""
    kind = kind.replace("_", "-")
    try:
        if kind == "complete":
            return complete(_need(n))
        if kind == "cycle":
            return cycle(_need(n))
        if kind == "path":
            return path(_need(n))
        if kind == "trivial":
            return trivial(_need(n))
        if kind == "complete-minus-star":
            return complete_minus_star(_need(n), _need(m, "m"))
        if kind == "complete-minus-matching":
            return complete_minus_matching(_need(n))
        if kind == "cone":
            if base is None:
                raise GraphError("cone needs a base graph")
            return cone(base)
    except TypeError:
        raise GraphError(f"family {kind!r} needs integer parameters") from None
    if kind in NAMED_GRAPHS:
        return NAMED_GRAPHS[kind]()
    raise GraphError(f"unknown family {kind!r}")


def _need(v, name="n"):
    if v is None:
        raise GraphError(f"missing parameter {name}")
    return v


# --------------------------------------------------------------------------
# structural operations

def induced(G: Digraph, U: Iterable[int]) -> Digraph:
    """G[U], vertices renumbered 1..|U| in increasing order of U."""
    U = sorted(set(U))
    for u in U:
        if not isinstance(u, int) or not 1 <= u <= G.n:
            raise GraphError(f"vertex {u} is not in the digraph")
    return Digraph(len(U), [[G.mult(u, v) for v in U] for u in U])


def disjoint_union(G: Digraph, H: Digraph) -> Digraph:
    n = G.n + H.n
    mult = [[0] * n for _ in range(n)]
    for i in range(G.n):
        for j in range(G.n):
            mult[i][j] = G.matrix[i][j]
    for i in range(H.n):
        for j in range(H.n):
            mult[G.n + i][G.n + j] = H.matrix[i][j]
    return Digraph(n, mult)


@dataclass
class ContractionResult:
    """Digraph produced by D(U;V) with the bookkeeping needed for minors.

    ``origins[k]`` is the (row, column) pair of original vertices whose row
    and column of the Laplacian the new vertex k+1 carries; an unmerged
    vertex w has origin (w, w).  ``merged`` maps a merged vertex to (u, v)
    for u∘v, and ``forced_values`` to the value its variable takes.
    """

    digraph: Digraph
    origins: List[Tuple[int, int]]
    merged: Dict[int, Tuple[int, int]] = field(default_factory=dict)
    forced_values: Dict[int, int] = field(default_factory=dict)

    def original_vertex(self, k: int) -> Optional[int]:
        """Original vertex behind unmerged vertex k, else None."""
        r, c = self.origins[k - 1]
        return r if k not in self.merged else None


def _contract_step(G: Digraph, origins, merged, forced, a: int, b: int):
    """Contract current vertex a (row side) with b (column side)."""
    n = G.n
    if a == b:
        keep = [w for w in range(1, n + 1) if w != a]
        new = induced(G, keep)
        relabel = {w: i + 1 for i, w in enumerate(keep)}
        return (
            new,
            [origins[w - 1] for w in keep],
            {relabel[w]: uv for w, uv in merged.items() if w != a},
            {relabel[w]: f for w, f in forced.items() if w != a},
        )
    value = -G.mult(b, a)
    keep = [w for w in range(1, n + 1) if w not in (a, b)]
    relabel = {w: i + 1 for i, w in enumerate(keep)}
    new_n = len(keep) + 1
    z = new_n
    mult = [[0] * new_n for _ in range(new_n)]
    for w in keep:
        for y in keep:
            mult[relabel[w] - 1][relabel[y] - 1] = G.mult(w, y)
        # arcs leaving a are deleted; z inherits arcs leaving b
        mult[z - 1][relabel[w] - 1] = G.mult(b, w)
        # arcs entering b are deleted; z inherits arcs entering a
        mult[relabel[w] - 1][z - 1] = G.mult(w, a)
    # b -> a survives as a loop at the merged vertex
    mult[z - 1][z - 1] = G.mult(b, a)
    new_origins = [origins[w - 1] for w in keep]
    row_origin = origins[b - 1][0]
    col_origin = origins[a - 1][1]
    new_origins.append((row_origin, col_origin))
    new_merged = {relabel[w]: uv for w, uv in merged.items() if w in relabel}
    new_merged[z] = (col_origin, row_origin)
    new_forced = {relabel[w]: f for w, f in forced.items() if w in relabel}
    new_forced[z] = value
    return Digraph(new_n, mult), new_origins, new_merged, new_forced


def contract(G: Digraph, u: int, v: int) -> ContractionResult:
    """D(u;v): delete arcs leaving u and entering v, then identify u and v.

    The merged vertex u∘v is placed last; its variable is forced to
    -m(v,u).  With u == v this is vertex deletion.
    """
    return contract_seq(G, [u], [v])


def contract_seq(G: Digraph, U: Sequence[int], V: Sequence[int]) -> ContractionResult:
    """D(U;V) built one pair at a time in the given order.

    Its substituted generalized Laplacian agrees, up to permuting rows and
    columns, with L(G,X) after deleting rows U and columns V.
    """
    if len(U) != len(V):
        raise GraphError("U and V must have the same length")
    if len(set(U)) != len(U) or len(set(V)) != len(V):
        raise GraphError("U and V must not repeat vertices")
    for w in list(U) + list(V):
        _check_vertex(G.n, w)
    cur = G
    origins = [(w, w) for w in G.vertices()]
    merged: Dict[int, Tuple[int, int]] = {}
    forced: Dict[int, int] = {}
    for u, v in zip(U, V):
        a = next(k for k, (r, _) in enumerate(origins, 1) if r == u)
        b = next(k for k, (_, c) in enumerate(origins, 1) if c == v)
        cur, origins, merged, forced = _contract_step(cur, origins, merged, forced, a, b)
    return ContractionResult(cur, origins, merged, forced)


# --------------------------------------------------------------------------
# enumerators

@dataclass(frozen=True)
class OneFactor:
    """A spanning directed 1-factor: successor map, weight and cycle count."""

    successor: Tuple[int, ...]
    weight: int
    components: int

    def arcs(self) -> List[Tuple[int, int]]:
        return [(i + 1, s) for i, s in enumerate(self.successor)]


def directed_one_factors(D: Digraph) -> List[OneFactor]:
    """All spanning subdigraphs with in- and out-degree one everywhere.

    Parallel arcs give distinct factors; they are folded into ``weight`` (the
    product of the chosen arc multiplicities).
    """
    n = D.n
    out: List[OneFactor] = []
    succ = [0] * n
    used = [False] * n
    M = D.matrix

    def rec(i: int, w: int):
        if i == n:
            out.append(OneFactor(tuple(s + 1 for s in succ), w, _cycle_count(succ)))
            return
        for j in range(n):
            if M[i][j] and not used[j]:
                used[j] = True
                succ[i] = j
                rec(i + 1, w * M[i][j])
                used[j] = False

    rec(0, 1)
    return out


def _cycle_count(succ: Sequence[int]) -> int:
    seen = [False] * len(succ)
    c = 0
    for s in range(len(succ)):
        if not seen[s]:
            c += 1
            k = s
            while not seen[k]:
                seen[k] = True
                k = succ[k]
    return c


def matchings(G: Digraph) -> List[Tuple[Tuple[int, int], ...]]:
    """Every matching of a simple graph, the empty one included."""
    G.require_simple()
    edges = G.edges()
    out: List[Tuple[Tuple[int, int], ...]] = []

    def rec(k: int, chosen: list, covered: set):
        if k == len(edges):
            out.append(tuple(chosen))
            return
        rec(k + 1, chosen, covered)
        u, v = edges[k]
        if u not in covered and v not in covered:
            chosen.append(edges[k])
            covered |= {u, v}
            rec(k + 1, chosen, covered)
            covered -= {u, v}
            chosen.pop()

    rec(0, [], set())
    return out


@dataclass(frozen=True)
class GraphNumbers:
    alpha: Optional[int]
    omega: Optional[int]
    out_degrees: Tuple[int, ...]
    is_eulerian: bool


def clique_number(G: Digraph) -> int:
    G.require_simple()
    if G.n == 0:
        return 0
    g = nx.Graph()
    g.add_nodes_from(G.vertices())
    g.add_edges_from(G.edges())
    _, size = nx.max_weight_clique(g, weight=None)
    return size


def stability_number(G: Digraph) -> int:
    return clique_number(G.complement())


def graph_numbers(G: Digraph) -> GraphNumbers:
    simple = G.is_simple()
    return GraphNumbers(
        alpha=stability_number(G) if simple else None,
        omega=clique_number(G) if simple else None,
        out_degrees=tuple(G.out_degrees()),
        is_eulerian=G.is_eulerian(),
    )


def is_forest(G: Digraph) -> bool:
    G.require_simple()
    g = nx.Graph()
    g.add_nodes_from(G.vertices())
    g.add_edges_from(G.edges())
    return nx.is_forest(g) if G.n else True
