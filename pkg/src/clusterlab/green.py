"""Framed quivers, c-vector colours and maximal green sequences."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .quiver import DEFAULT_NODES, Quiver, mutable_matrix
from .seed import mutate_entries

Matrix = tuple[tuple[int, ...], ...]


class Color(Enum):
    GREEN = "green"
    RED = "red"


class SignCoherenceError(RuntimeError):
    """A c-vector had entries of both signs."""


@dataclass(frozen=True)
class FramedState:
    """``b_hat`` stacks the exchange matrix (top n rows) over the c-matrix."""

    b_hat: Matrix
    history: tuple[int, ...] = ()

    @property
    def n(self) -> int:
        return len(self.b_hat) // 2

    @property
    def exchange(self) -> Matrix:
        return self.b_hat[: self.n]

    @property
    def c_matrix(self) -> Matrix:
        return self.b_hat[self.n:]

    def c_vector(self, i: int) -> tuple[int, ...]:
        return tuple(row[i] for row in self.c_matrix)

    def mutate(self, k: int) -> FramedState:
        if not 0 <= k < self.n:
            raise IndexError(f"vertex {k + 1} out of range 1..{self.n}")
        return FramedState(mutate_entries(self.b_hat, k), self.history + (k,))


def frame(q: Quiver) -> FramedState:
    """Drop frozen vertices and append the identity c-matrix."""
    n = q.n
    B = mutable_matrix(q)
    ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    return FramedState(B + ident)


def color(st: FramedState, i: int) -> Color:
    c = st.c_vector(i)
    pos = any(v > 0 for v in c)
    neg = any(v < 0 for v in c)
    if pos and neg:
        raise SignCoherenceError(f"c-vector {i + 1} = {c} after {st.history} is not sign-coherent")
    if not pos and not neg:
        raise SignCoherenceError(f"c-vector {i + 1} is zero after {st.history}")
    return Color.GREEN if pos else Color.RED


def colors(st: FramedState) -> tuple[Color, ...]:
    return tuple(color(st, i) for i in range(st.n))


@dataclass
class MGSVerdict:
    accepted: bool
    diagnostic: str
    states: list[FramedState] = field(default_factory=list)

    @property
    def final(self) -> FramedState:
        return self.states[-1]


def verify_mgs(q: Quiver, seq: Sequence[int], reddening: bool = False) -> MGSVerdict:
    """Check that ``seq`` (0-based) is a maximal green sequence of ``q``.

    With ``reddening`` the mutations may be at either colour; only the
    all-red end state is required.  Sign-coherence is checked at every step
    and a violation raises :class:`SignCoherenceError`.
    """
    st = frame(q)
    states = [st]
    colors(st)
    for step, k in enumerate(seq, 1):
        if not 0 <= k < st.n:
            return MGSVerdict(False, f"step {step}: vertex {k + 1} out of range", states)
        if not reddening and color(st, k) is Color.RED:
            return MGSVerdict(False, f"step {step}: vertex {k + 1} is red", states)
        st = st.mutate(k)
        states.append(st)
        colors(st)
    green = [i + 1 for i, c in enumerate(colors(st)) if c is Color.GREEN]
    if green:
        return MGSVerdict(False, f"final state: vertices {green} still green", states)
    kind = "reddening" if reddening else "maximal green"
    return MGSVerdict(True, f"{kind} sequence of length {len(seq)}", states)


@dataclass
class MGSSearchResult:
    sequence: tuple[int, ...] | None
    nodes: int
    complete: bool
    cut_by: str | None = None  # "length" or "nodes" when a bound stopped the search

    @property
    def found(self) -> bool:
        return self.sequence is not None


def search_mgs(q: Quiver, max_len: int, node_limit: int = DEFAULT_NODES) -> MGSSearchResult:
    """Shortest maximal green sequence within bounds, least in shortlex order.

    Breadth-first over green mutations only; identical framed matrices are
    merged.  ``complete`` is true when no bound cut the search short, in
    which case a ``None`` sequence means no green sequence of length at most
    ``max_len`` ends all red.
    """
    if max_len < 0 or node_limit < 1:
        raise ValueError("limits must be positive")
    start = frame(q)
    if start.n == 0:
        return MGSSearchResult((), 1, True)
    seen = {start.b_hat}
    queue = deque([start])
    cut_by: str | None = None
    while queue:
        st = queue.popleft()
        cols = colors(st)
        if all(c is Color.RED for c in cols):
            return MGSSearchResult(st.history, len(seen), cut_by is None, cut_by)
        if len(st.history) >= max_len:
            if any(c is Color.GREEN for c in cols):
                cut_by = cut_by or "length"
            continue
        for k in range(st.n):
            if cols[k] is not Color.GREEN:
                continue
            child = st.mutate(k)
            if child.b_hat in seen:
                continue
            if len(seen) >= node_limit:
                cut_by = "nodes"
                continue
            seen.add(child.b_hat)
            queue.append(child)
    return MGSSearchResult(None, len(seen), cut_by is None, cut_by)


def render_colors(verdict: MGSVerdict) -> str:
    lines = []
    for step, st in enumerate(verdict.states):
        try:
            row = " ".join("G" if c is Color.GREEN else "R" for c in colors(st))
        except SignCoherenceError as exc:
            row = f"!! {exc}"
        label = "start" if step == 0 else f"mu{st.history[-1] + 1}"
        lines.append(f"{step:>3} {label:<6} {row}")
    return "\n".join(lines)


def render_matrix(rows: Matrix) -> str:
    width = max((len(str(v)) for row in rows for v in row), default=1)
    return "\n".join(" ".join(str(v).rjust(width) for v in row) for row in rows)
