"""Quivers with frozen vertices.

Vertices ``0..n-1`` are mutable and ``n..n+m-1`` frozen.  The quiver is held
as a skew-symmetric signed adjacency matrix ``adj`` where ``adj[i][j] > 0``
counts arrows ``i -> j``.  For the associated seed, ``B[j][i] = adj[i][j]``
on mutable vertices and frozen vertex ``n+a`` contributes the exponent of
``z_{a+1}`` in ``y_i`` as ``adj[i][n+a]``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Iterator, Sequence

import networkx as nx

from .seed import ExchangeMatrix, Seed, is_acyclic_matrix, mutate_entries
from .semifield import TropMonomial

Matrix = tuple[tuple[int, ...], ...]

DEFAULT_DEPTH = 8
DEFAULT_NODES = 100_000
CANONICAL_BOUND = 10


class Quiver:
    __slots__ = ("n", "m", "adj", "_canon")

    def __init__(self, n: int, m: int, arrows: Iterable[tuple[int, int, int]] = ()):
        N = n + m
        adj = [[0] * N for _ in range(N)]
        for a, b, mult in arrows:
            if not (0 <= a < N and 0 <= b < N):
                raise ValueError(f"arrow {a}->{b} has a vertex outside 0..{N - 1}")
            if a == b:
                raise ValueError(f"loop at vertex {a}")
            if a >= n and b >= n:
                raise ValueError(f"arrow {a}->{b} joins two frozen vertices")
            if mult < 1:
                raise ValueError(f"arrow {a}->{b} needs a positive multiplicity")
            adj[a][b] += mult
            adj[b][a] -= mult
        self.n, self.m = n, m
        self.adj: Matrix = tuple(tuple(r) for r in adj)
        self._canon: bytes | None = None

    @classmethod
    def from_matrix(cls, n: int, m: int, adj: Sequence[Sequence[int]]) -> Quiver:
        N = n + m
        rows = tuple(tuple(int(v) for v in r) for r in adj)
        if len(rows) != N or any(len(r) != N for r in rows):
            raise ValueError("adjacency matrix has wrong shape")
        for i in range(N):
            if rows[i][i]:
                raise ValueError(f"loop at vertex {i}")
            for j in range(N):
                if rows[i][j] != -rows[j][i]:
                    raise ValueError("adjacency matrix must be skew-symmetric")
                if i >= n and j >= n and rows[i][j]:
                    raise ValueError("arrow between frozen vertices")
        q = cls.__new__(cls)
        q.n, q.m, q.adj, q._canon = n, m, rows, None
        return q

    @property
    def size(self) -> int:
        return self.n + self.m

    def arrows(self) -> list[tuple[int, int, int]]:
        """Arrow groups ``(src, dst, mult)`` sorted by endpoints."""
        N = self.size
        return [
            (i, j, self.adj[i][j])
            for i in range(N)
            for j in range(N)
            if self.adj[i][j] > 0
        ]

    def is_frozen(self, v: int) -> bool:
        return v >= self.n

    def mutable_part(self) -> Quiver:
        return Quiver.from_matrix(
            self.n, 0, tuple(r[: self.n] for r in self.adj[: self.n])
        )

    def delete(self, v: int) -> Quiver:
        keep = [i for i in range(self.size) if i != v]
        n = self.n - (1 if v < self.n else 0)
        return Quiver.from_matrix(
            n, self.size - 1 - n, tuple(tuple(self.adj[i][j] for j in keep) for i in keep)
        )

    def relabel(self, perm: Sequence[int]) -> Quiver:
        """Vertex ``perm[i]`` of the result is vertex ``i`` of ``self``.

        ``perm`` must map mutable to mutable and frozen to frozen.
        """
        N = self.size
        inv = [0] * N
        for i, p in enumerate(perm):
            inv[p] = i
        return Quiver.from_matrix(
            self.n, self.m, tuple(tuple(self.adj[inv[a]][inv[b]] for b in range(N)) for a in range(N))
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return (self.n, self.m, self.adj) == (other.n, other.m, other.adj)

    def __hash__(self) -> int:
        return hash((self.n, self.m, self.adj))

    def __repr__(self) -> str:
        return f"Quiver(n={self.n}, m={self.m}, arrows={self.arrows()})"


# -- seed encoding -----------------------------------------------------------


def quiver_from_seed(s: Seed) -> Quiver:
    if not s.B.is_skew_symmetric():
        raise ValueError("only skew-symmetric exchange matrices define quivers")
    n, m = s.n, s.m
    N = n + m
    adj = [[0] * N for _ in range(N)]
    for i in range(n):
        for j in range(n):
            adj[i][j] = s.B[j, i]
        for a, e in enumerate(s.y[i].exps):
            adj[i][n + a] = e
            adj[n + a][i] = -e
    return Quiver.from_matrix(n, m, adj)


def quiver_to_seed(q: Quiver, labels: Sequence[str] = ()) -> Seed:
    n, m = q.n, q.m
    B = ExchangeMatrix(tuple(tuple(q.adj[j][i] for j in range(n)) for i in range(n)))
    y = tuple(TropMonomial(q.adj[i][n:]) for i in range(n))
    return Seed.initial(B, y, m, labels)


# -- mutation and structure --------------------------------------------------


def mutate_quiver(q: Quiver, k: int) -> Quiver:
    """Compose paths through ``k``, cancel 2-cycles, reverse arrows at ``k``."""
    if not 0 <= k < q.n:
        raise IndexError(f"vertex {k} is not a mutable vertex of a quiver with n={q.n}")
    adj = [list(r) for r in mutate_entries(q.adj, k)]
    n, N = q.n, q.size
    for i in range(n, N):
        for j in range(n, N):
            adj[i][j] = 0
    new = Quiver.__new__(Quiver)
    new.n, new.m, new.adj, new._canon = q.n, q.m, tuple(tuple(r) for r in adj), None
    return new


def mutable_matrix(q: Quiver) -> Matrix:
    """The exchange matrix ``B`` of the mutable part."""
    n = q.n
    return tuple(tuple(q.adj[j][i] for j in range(n)) for i in range(n))


def is_acyclic_quiver(q: Quiver) -> bool:
    return is_acyclic_matrix(mutable_matrix(q))


def is_source_freezing_quiver(q: Quiver) -> bool:
    return all(
        q.adj[f][v] <= 0 for f in range(q.n, q.size) for v in range(q.size)
    )


def _mutable_digraph(q: Quiver) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(q.n))
    g.add_edges_from(
        (i, j) for i in range(q.n) for j in range(q.n) if q.adj[i][j] > 0
    )
    return g


def covering_pairs(q: Quiver) -> list[tuple[int, int]]:
    """Mutable arrows that lie on no bi-infinite path of mutable vertices.

    A bi-infinite path through ``a -> b`` exists exactly when ``a`` can be
    reached from a directed cycle and ``b`` can reach a directed cycle.
    """
    g = _mutable_digraph(q)
    cyclic: set[int] = set()
    for comp in nx.strongly_connected_components(g):
        if len(comp) > 1:
            cyclic |= comp
    from_cycle = set(cyclic)
    to_cycle = set(cyclic)
    for v in cyclic:
        from_cycle |= nx.descendants(g, v)
        to_cycle |= nx.ancestors(g, v)
    return sorted(
        (a, b) for a, b in g.edges if not (a in from_cycle and b in to_cycle)
    )


def has_covering_pair(q: Quiver) -> bool:
    return bool(covering_pairs(q))


# -- canonical form ----------------------------------------------------------


def _refine(q: Quiver) -> list[list[int]]:
    """Ordered cells of an isomorphism-invariant vertex colouring."""
    N = q.size
    colour = [(1 if v >= q.n else 0,) for v in range(N)]
    ranks = _rank(colour)
    while True:
        sig = [
            (
                ranks[v],
                tuple(sorted((ranks[u], q.adj[v][u]) for u in range(N) if q.adj[v][u])),
            )
            for v in range(N)
        ]
        new = _rank(sig)
        if len(set(new)) == len(set(ranks)):
            ranks = new
            break
        ranks = new
    cells: dict[int, list[int]] = {}
    for v in range(N):
        cells.setdefault(ranks[v], []).append(v)
    return [cells[r] for r in sorted(cells)]


def _rank(values: list) -> list[int]:
    order = {v: i for i, v in enumerate(sorted(set(values)))}
    return [order[v] for v in values]


def canonical_labeling(q: Quiver, bound: int = CANONICAL_BOUND) -> tuple[bytes, tuple[int, ...]]:
    """Canonical byte string and the vertex order that realises it.

    Isomorphisms map mutable to mutable and frozen to frozen vertices.  A
    colour refinement fixes an invariant cell order; the minimum adjacency
    serialisation is then taken over orderings inside each cell.  The
    returned order lists original vertices in canonical position order.
    """
    if q.size > bound:
        raise ValueError(f"quiver has {q.size} vertices, above the canonical-form bound {bound}")
    cells = _refine(q)
    best: tuple[int, ...] | None = None
    best_order: tuple[int, ...] = ()
    adj = q.adj
    for choice in itertools.product(*(itertools.permutations(c) for c in cells)):
        order = tuple(v for part in choice for v in part)
        flat = tuple(adj[a][b] for a in order for b in order)
        if best is None or flat < best:
            best, best_order = flat, order
    body = ",".join(str(v) for v in (best or ()))
    return f"{q.n}/{q.m}:{body}".encode(), best_order


def canonical_form(q: Quiver, bound: int = CANONICAL_BOUND) -> bytes:
    """Byte string equal for two quivers iff they are isomorphic (frozen kept frozen)."""
    if q._canon is None:
        q._canon = canonical_labeling(q, bound)[0]
    return q._canon


# -- mutation-class search ---------------------------------------------------


class SearchStatus(Enum):
    FOUND = "FOUND"
    EXHAUSTED = "EXHAUSTED"
    LIMIT_HIT = "LIMIT_HIT"


@dataclass
class SearchStats:
    nodes: int = 0
    max_depth: int = 0


@dataclass
class SearchOutcome:
    status: SearchStatus
    witness: Quiver | None = None
    path: tuple[int, ...] = ()
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND


class MutationClassWalk:
    """Breadth-first walk of a mutation class, deduplicated by canonical form.

    Iterating yields ``(quiver, path)`` pairs, the start quiver first.  After
    iteration stops, :attr:`complete` tells whether the whole class was seen
    (no limit cut anything off).
    """

    def __init__(self, q: Quiver, depth_limit: int = DEFAULT_DEPTH, node_limit: int = DEFAULT_NODES):
        if depth_limit < 0 or node_limit < 1:
            raise ValueError("limits must be positive")
        self.root = q
        self.depth_limit = depth_limit
        self.node_limit = node_limit
        self.stats = SearchStats()
        self.complete = False

    def __iter__(self) -> Iterator[tuple[Quiver, tuple[int, ...]]]:
        root = self.root
        seen = {canonical_form(root)}
        queue: deque[tuple[Quiver, tuple[int, ...]]] = deque([(root, ())])
        self.stats.nodes = 1
        truncated = False
        while queue:
            q, path = queue.popleft()
            yield q, path
            for k in range(q.n):
                child = mutate_quiver(q, k)
                key = canonical_form(child)
                if key in seen:
                    continue
                if len(path) >= self.depth_limit or self.stats.nodes >= self.node_limit:
                    truncated = True
                    continue
                seen.add(key)
                self.stats.nodes += 1
                self.stats.max_depth = max(self.stats.max_depth, len(path) + 1)
                queue.append((child, path + (k,)))
        self.complete = not truncated


def search_mutation_class(
    q: Quiver,
    goal: Callable[[Quiver], bool],
    depth_limit: int = DEFAULT_DEPTH,
    node_limit: int = DEFAULT_NODES,
) -> SearchOutcome:
    walk = MutationClassWalk(q, depth_limit, node_limit)
    for member, path in walk:
        if goal(member):
            return SearchOutcome(SearchStatus.FOUND, member, path, walk.stats)
    status = SearchStatus.EXHAUSTED if walk.complete else SearchStatus.LIMIT_HIT
    return SearchOutcome(status, None, (), walk.stats)


# -- text formats ------------------------------------------------------------


def render_quiver(q: Quiver) -> str:
    lines = [f"{q.n} {q.m}"] + [f"{a} {b} {c}" for a, b, c in q.arrows()]
    return "\n".join(lines) + "\n"


def parse_quiver(text: str) -> Quiver:
    from .seed import ParseError

    lines = [
        (no, ln.strip())
        for no, ln in enumerate(text.splitlines(), 1)
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines:
        raise ParseError("empty quiver file")
    no, head = lines[0]
    try:
        n, m = (int(t) for t in head.split())
    except ValueError:
        raise ParseError("expected 'n m' header", no) from None
    arrows = []
    for no, ln in lines[1:]:
        try:
            a, b, c = (int(t) for t in ln.split())
        except ValueError:
            raise ParseError("expected 'src dst mult'", no) from None
        arrows.append((a, b, c))
    try:
        return Quiver(n, m, arrows)
    except ValueError as exc:
        raise ParseError(str(exc), no) from None


def vertex_names(q: Quiver) -> list[str]:
    return [str(v + 1) for v in range(q.n)] + [f"z{a + 1}" for a in range(q.m)]


def quiver_to_dot(q: Quiver, name: str = "Q", names: Sequence[str] | None = None) -> str:
    names = list(names) if names is not None else vertex_names(q)
    out = [f'digraph "{name}" {{']
    for v in range(q.size):
        shape = "box" if q.is_frozen(v) else "circle"
        out.append(f'  v{v} [label="{names[v]}", shape={shape}];')
    for a, b, c in q.arrows():
        label = f' [label="{c}"]' if c > 1 else ""
        out.append(f"  v{a} -> v{b}{label};")
    out.append("}")
    return "\n".join(out) + "\n"
