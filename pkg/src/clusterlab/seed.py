"""Seeds of geometric type: mutation, freezing and the A = U criterion.

Indices are 0-based in code.  The exchange-matrix convention is the one
that makes ``B[j][i] > 0`` mean "``B[j][i]`` arrows ``i -> j``" in the
associated quiver.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .laurent import LaurentPoly, NotDivisible, coeffs_in_ring, lp_exact_div, substitute
from .semifield import (
    DimensionError,
    GroundRing,
    TropMonomial,
    in_ground_ring,
    parse_monomial,
    render_monomial,
)

Matrix = tuple[tuple[int, ...], ...]


def skew_symmetrizer(B: Sequence[Sequence[int]]) -> tuple[int, ...] | None:
    """Smallest positive integer diagonal ``D`` with ``D·B`` skew-symmetric.

    Propagates ratios ``d_j/d_i = -B_ij/B_ji`` over connected components;
    returns ``None`` when the constraints are inconsistent.
    """
    n = len(B)
    d: list[Fraction | None] = [None] * n
    components: list[list[int]] = []
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp = [start]
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if B[i][j] == 0 and B[j][i] == 0:
                    continue
                if i == j or B[i][j] == 0 or B[j][i] == 0 or (B[i][j] > 0) == (B[j][i] > 0):
                    return None
                want = d[i] * Fraction(B[i][j], -B[j][i])
                if d[j] is None:
                    d[j] = want
                    comp.append(j)
                    stack.append(j)
                elif d[j] != want:
                    return None
        components.append(comp)
    out = [0] * n
    for comp in components:
        scale = lcm(*(d[i].denominator for i in comp))  # type: ignore[union-attr]
        ints = [int(d[i] * scale) for i in comp]  # type: ignore[operator]
        g = gcd(*ints)
        for i, v in zip(comp, ints):
            out[i] = v // g
    return tuple(out)


@dataclass(frozen=True)
class ExchangeMatrix:
    entries: Matrix

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) for v in row) for row in self.entries)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("exchange matrix must be square")
        object.__setattr__(self, "entries", rows)
        if skew_symmetrizer(rows) is None:
            raise ValueError("exchange matrix is not skew-symmetrizable")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    @property
    def symmetrizer(self) -> tuple[int, ...]:
        return skew_symmetrizer(self.entries)  # type: ignore[return-value]

    def is_skew_symmetric(self) -> bool:
        return all(
            self.entries[i][j] == -self.entries[j][i]
            for i in range(self.n)
            for j in range(self.n)
        )

    def column(self, i: int) -> tuple[int, ...]:
        return tuple(row[i] for row in self.entries)

    def delete(self, i: int) -> ExchangeMatrix:
        return ExchangeMatrix(
            tuple(
                tuple(v for c, v in enumerate(row) if c != i)
                for r, row in enumerate(self.entries)
                if r != i
            )
        )


def mutate_entries(B: Sequence[Sequence[int]], k: int) -> Matrix:
    """Matrix mutation of a (possibly rectangular, k < #columns) matrix."""
    rows = len(B)
    cols = len(B[0]) if rows else 0
    out = []
    for i in range(rows):
        row = []
        bik = B[i][k]
        for j in range(cols):
            if i == k or j == k:
                row.append(-B[i][j])
            else:
                bkj = B[k][j]
                row.append(B[i][j] + (abs(bik) * bkj + bik * abs(bkj)) // 2)
        out.append(tuple(row))
    return tuple(out)


def _check_index(k: int, n: int) -> None:
    if not 0 <= k < n:
        raise IndexError(f"mutation index {k + 1} out of range 1..{n}")


def mutate_matrix(B: ExchangeMatrix, k: int) -> ExchangeMatrix:
    _check_index(k, B.n)
    return ExchangeMatrix(mutate_entries(B.entries, k))


def mutate_coeffs(
    y: Sequence[TropMonomial], B: ExchangeMatrix, k: int
) -> tuple[TropMonomial, ...]:
    _check_index(k, B.n)
    yk = y[k]
    yk1 = yk.oplus_one()
    out = []
    for i, yi in enumerate(y):
        if i == k:
            out.append(yk.inverse())
        else:
            bki = B[k, i]
            out.append(yi * yk ** max(bki, 0) * yk1 ** (-bki))
    return tuple(out)


@dataclass(frozen=True)
class Seed:
    """A seed ``(x, y, B)`` with cluster variables written in the initial cluster.

    ``path`` records the mutation sequence from the initial seed, which is
    what lets an element be rewritten in this seed's cluster.
    """

    B: ExchangeMatrix
    y: tuple[TropMonomial, ...]
    x: tuple[LaurentPoly, ...]
    labels: tuple[str, ...] = ()
    path: tuple[int, ...] = ()
    m: int = -1

    def __post_init__(self) -> None:
        n = self.B.n
        if len(self.y) != n or len(self.x) != n:
            raise DimensionError("B, y and x must all have rank n")
        m = self.m
        if m < 0:
            m = self.y[0].m if self.y else 0
            object.__setattr__(self, "m", m)
        if any(yi.m != m for yi in self.y):
            raise DimensionError("coefficients use different generator counts")
        if any((xi.n, xi.m) != (n, m) for xi in self.x):
            raise DimensionError("cluster variables must live in (n, m) Laurent ring")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"x{i + 1}" for i in range(n)))
        elif len(self.labels) != n:
            raise DimensionError("one label per cluster variable")

    @classmethod
    def initial(
        cls,
        B: ExchangeMatrix | Sequence[Sequence[int]],
        y: Sequence[TropMonomial] | None = None,
        m: int | None = None,
        labels: Sequence[str] = (),
    ) -> Seed:
        if not isinstance(B, ExchangeMatrix):
            B = ExchangeMatrix(tuple(tuple(r) for r in B))
        n = B.n
        if y is None:
            y = tuple(TropMonomial.one(m or 0) for _ in range(n))
        y = tuple(y)
        mm = y[0].m if y else (m or 0)
        x = tuple(LaurentPoly.variable(i, n, mm) for i in range(n))
        return cls(B, y, x, tuple(labels), m=mm)

    @property
    def n(self) -> int:
        return self.B.n

    def mutate(self, k: int) -> Seed:
        return mutate_seed(self, k)

    def mutate_path(self, seq: Iterable[int]) -> Seed:
        s = self
        for k in seq:
            s = mutate_seed(s, k)
        return s

    def same_data(self, other: Seed) -> bool:
        """Equality of ``(B, y, x)``, ignoring labels and path."""
        return (self.B, self.y, self.x) == (other.B, other.y, other.x)


def exchange_binomial(s: Seed, k: int) -> LaurentPoly:
    """``(y_k ∏ x_j^{[B_jk]+} + ∏ x_j^{[-B_jk]+}) / (y_k ⊕ 1)`` in the ambient ring."""
    n = s.n
    yk = s.y[k]
    yk1 = yk.oplus_one()
    pos = LaurentPoly.from_trop(yk / yk1, n)
    neg = LaurentPoly.from_trop(yk1.inverse(), n)
    for j in range(n):
        b = s.B[j, k]
        if b > 0:
            pos = pos * s.x[j] ** b
        elif b < 0:
            neg = neg * s.x[j] ** (-b)
    return pos + neg


def mutate_seed(s: Seed, k: int) -> Seed:
    _check_index(k, s.n)
    xk_new = lp_exact_div(exchange_binomial(s, k), s.x[k])
    x = s.x[:k] + (xk_new,) + s.x[k + 1:]
    path = s.path[:-1] if s.path and s.path[-1] == k else s.path + (k,)
    return Seed(mutate_matrix(s.B, k), mutate_coeffs(s.y, s.B, k), x, s.labels, path, s.m)


def freeze(s: Seed, i: int) -> Seed:
    """Turn cluster variable ``i`` into the new generator ``z_{m+1}``.

    The result's cluster is taken as its own initial cluster: the remaining
    current cluster variables become ``x1..x_{n-1}`` in order.
    """
    _check_index(i, s.n)
    n, m = s.n, s.m
    y = tuple(
        s.y[j].extend(1, (s.B[i, j],)) for j in range(n) if j != i
    )
    labels = tuple(lab for j, lab in enumerate(s.labels) if j != i)
    return Seed.initial(s.B.delete(i), y, m + 1, labels)


def freeze_many(s: Seed, indices: Iterable[int]) -> Seed:
    """Freeze several indices (given in the original numbering), in the given order."""
    remaining = list(range(s.n))
    for i in indices:
        pos = remaining.index(i)
        s = freeze(s, pos)
        remaining.pop(pos)
    return s


def is_source(s: Seed, i: int) -> bool:
    _check_index(i, s.n)
    return all(b >= 0 for b in s.B.column(i))


def is_acyclic_matrix(B: Sequence[Sequence[int]]) -> bool:
    """No directed cycle in the graph with an edge ``i -> j`` when ``B[j][i] > 0``."""
    n = len(B)
    indeg = [sum(1 for i in range(n) if B[j][i] > 0) for j in range(n)]
    ready = [j for j in range(n) if indeg[j] == 0]
    seen = 0
    while ready:
        i = ready.pop()
        seen += 1
        for j in range(n):
            if B[j][i] > 0:
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
    return seen == n


def is_acyclic(s: Seed) -> bool:
    return is_acyclic_matrix(s.B.entries)


def is_source_freezing_seed(s: Seed, r: GroundRing) -> bool:
    return all(in_ground_ring(yi.oplus_one(), r) for yi in s.y)


def check_exchange_identity(s: Seed, i: int, j: int) -> bool:
    """Verify ``((y_i⊕1) x_i') x_i - (y_i ∏_{B_ki>0, k≠j} x_k^{B_ki}) x_j^{B_ji} == 1``.

    ``x_i'`` comes from the mutation engine, so this is an independent
    consistency check on it at a source ``i``.
    """
    if not is_source(s, i):
        raise ValueError(f"index {i + 1} is not a source")
    if not s.B[j, i] > 0:
        raise ValueError(f"need B[{j + 1},{i + 1}] > 0")
    n = s.n
    xi_new = mutate_seed(s, i).x[i]
    lhs = LaurentPoly.from_trop(s.y[i].oplus_one(), n) * xi_new * s.x[i]
    prod = LaurentPoly.from_trop(s.y[i], n)
    for k in range(n):
        b = s.B[k, i]
        if b > 0 and k != j:
            prod = prod * s.x[k] ** b
    prod = prod * s.x[j] ** s.B[j, i]
    return lhs - prod == 1


class AUStatus(Enum):
    CONCLUDED_EQUAL = "CONCLUDED_EQUAL"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class AUVerdict:
    status: AUStatus
    obstructions: tuple[tuple[int, TropMonomial], ...]
    acyclic: bool

    @property
    def concluded(self) -> bool:
        return self.status is AUStatus.CONCLUDED_EQUAL


def theorem_au_applies(s: Seed, r: GroundRing) -> AUVerdict:
    """A = U is concluded when ``s`` is acyclic and source-freezing for ``r``."""
    obstructions = tuple(
        (i, yi.oplus_one())
        for i, yi in enumerate(s.y)
        if not in_ground_ring(yi.oplus_one(), r)
    )
    acyclic = is_acyclic(s)
    status = (
        AUStatus.CONCLUDED_EQUAL
        if acyclic and not obstructions
        else AUStatus.INCONCLUSIVE
    )
    return AUVerdict(status, obstructions, acyclic)


@dataclass(frozen=True)
class LaurentViolation:
    sequence: tuple[int, ...]
    index: int
    note: str


@dataclass
class LaurentReport:
    checked: int = 0
    violations: list[LaurentViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_laurent(
    s: Seed, sequences: Iterable[Sequence[int]], r: GroundRing
) -> LaurentReport:
    """Run each mutation sequence and check every produced cluster variable.

    Intermediate seeds are cached by prefix, so exhaustive families of
    sequences share work.
    """
    report = LaurentReport()
    cache: dict[tuple[int, ...], Seed] = {(): s}
    for seq in sequences:
        seq = tuple(seq)
        cur = s
        for step in range(1, len(seq) + 1):
            prefix = seq[:step]
            k = seq[step - 1]
            if prefix in cache:
                cur = cache[prefix]
                continue
            try:
                cur = mutate_seed(cur, k)
            except NotDivisible as exc:
                report.violations.append(LaurentViolation(prefix, k, f"NOT_DIVISIBLE: {exc}"))
                break
            cache[prefix] = cur
            report.checked += 1
            if not coeffs_in_ring(cur.x[k], r):
                report.violations.append(
                    LaurentViolation(prefix, k, f"coefficient outside {r}: {cur.x[k]}")
                )
    return report


def initial_in_cluster_of(s: Seed) -> tuple[LaurentPoly, ...]:
    """The initial cluster variables written as Laurent polynomials in ``s``'s cluster."""
    fresh = Seed.initial(s.B, s.y, s.m)
    back = fresh.mutate_path(reversed(s.path))
    return back.x


def is_laurent_over_seeds(
    p: LaurentPoly, seeds: Iterable[Seed], r: GroundRing
) -> tuple[bool, list[str]]:
    """Finite necessary condition for ``p`` to lie in the upper cluster algebra.

    ``p`` is written in the initial cluster; every seed must carry its
    mutation path from that initial seed.  Returns the verdict and notes
    explaining each failure.
    """
    notes = []
    for s in seeds:
        label = "initial" if not s.path else "mu " + ",".join(str(k + 1) for k in s.path)
        try:
            q = substitute(p, list(initial_in_cluster_of(s)))
        except NotDivisible:
            notes.append(f"{label}: not a Laurent polynomial in this cluster (NOT_DIVISIBLE)")
            continue
        if not coeffs_in_ring(q, r):
            notes.append(f"{label}: coefficients outside {r}: {q}")
    return not notes, notes


# -- text format -------------------------------------------------------------


def render_seed(s: Seed) -> str:
    lines = [f"{s.n} {s.m}"]
    lines += [" ".join(str(v) for v in row) for row in s.B.entries]
    lines += [render_monomial(yi) for yi in s.y]
    default = tuple(f"x{i + 1}" for i in range(s.n))
    if s.labels != default:
        lines.append(" ".join(s.labels))
    return "\n".join(lines) + "\n"


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def parse_seed(text: str) -> Seed:
    raw = text.splitlines()
    lines = [(no, ln.strip()) for no, ln in enumerate(raw, 1) if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise ParseError("empty seed file")
    no, head = lines[0]
    try:
        n, m = (int(t) for t in head.split())
    except ValueError:
        raise ParseError("expected 'n m' header", no) from None
    body = lines[1:]
    if len(body) < 2 * n:
        raise ParseError(f"expected {n} matrix rows and {n} monomials", lines[-1][0])
    rows = []
    for no, ln in body[:n]:
        try:
            row = tuple(int(t) for t in ln.split())
        except ValueError:
            raise ParseError("matrix row must be integers", no) from None
        if len(row) != n:
            raise ParseError(f"matrix row needs {n} entries", no)
        rows.append(row)
    y = []
    for no, ln in body[n:2 * n]:
        try:
            y.append(parse_monomial(ln, m))
        except ValueError as exc:
            raise ParseError(str(exc), no) from None
    labels: tuple[str, ...] = ()
    rest = body[2 * n:]
    if len(rest) > 1:
        raise ParseError("trailing content after label line", rest[1][0])
    if rest:
        labels = tuple(rest[0][1].split())
        if len(labels) != n:
            raise ParseError(f"label line needs {n} names", rest[0][0])
    try:
        return Seed.initial(ExchangeMatrix(tuple(rows)), y, m, labels)
    except ValueError as exc:
        raise ParseError(str(exc), body[0][0] if body else no) from None
