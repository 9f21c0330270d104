"""Reduced Banff algorithm: certify local acyclicity by covering-pair splits."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .quiver import (
    DEFAULT_DEPTH,
    DEFAULT_NODES,
    MutationClassWalk,
    Quiver,
    SearchStats,
    canonical_labeling,
    covering_pairs,
    is_acyclic_quiver,
    mutate_quiver,
    quiver_to_dot,
    quiver_to_seed,
)
from .seed import AUStatus, theorem_au_applies
from .semifield import GroundRing, RingKind, TropMonomial, missing_inverses, render_monomial


class NodeKind(Enum):
    ACYCLIC = "ACYCLIC"
    SPLIT = "SPLIT"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"


class BanffStatus(Enum):
    SUCCESS = "SUCCESS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"

    @property
    def exit_code(self) -> int:
        return {"SUCCESS": 0, "FAIL": 1, "INCONCLUSIVE": 2}[self.value]


@dataclass
class BanffNode:
    quiver: Quiver
    labels: tuple[str, ...]
    kind: NodeKind | None = None
    path: tuple[int, ...] = ()
    witness: Quiver | None = None
    pair: tuple[int, int] | None = None
    children: list[BanffNode] = field(default_factory=list)
    stats: SearchStats | None = None

    def leaves(self) -> list[BanffNode]:
        if not self.children:
            return [self]
        return [leaf for c in self.children for leaf in c.leaves()]

    def shape(self) -> object:
        """Nested structure: ``"A"`` for an acyclic leaf, a list for a split."""
        if self.kind is NodeKind.SPLIT:
            return [c.shape() for c in self.children]
        return "A" if self.kind is NodeKind.ACYCLIC else self.kind.value if self.kind else "?"


@dataclass
class BanffTrace:
    root: BanffNode
    status: BanffStatus

    def leaves(self) -> list[BanffNode]:
        return self.root.leaves()


def least_covering_pair(q: Quiver) -> tuple[int, int] | None:
    """The covering pair that is lexicographically least in canonical vertex order."""
    pairs = covering_pairs(q)
    if not pairs:
        return None
    pos = {v: i for i, v in enumerate(canonical_labeling(q)[1])}
    return min(pairs, key=lambda p: (pos[p[0]], pos[p[1]]))


def banff_reduced(
    q: Quiver,
    depth_limit: int = DEFAULT_DEPTH,
    node_limit: int = DEFAULT_NODES,
    labels: Sequence[str] | None = None,
    acyclic_first: bool = False,
) -> BanffTrace:
    """Run the deletion variant of the Banff algorithm on the mutable part of ``q``.

    Each queued quiver gets one breadth-first pass over its mutation class,
    testing every member for acyclicity and then for a covering pair.  By
    default the first member meeting either test decides the node.  With
    ``acyclic_first`` the pass keeps looking for an acyclic member until the
    limits are reached and only then falls back to the first covering-pair
    member.  A split always uses the least pair in canonical vertex order.
    A class with neither kind of member is a failure only if it was
    enumerated completely.
    """
    q = q.mutable_part()
    root = BanffNode(q, tuple(labels) if labels else tuple(str(v + 1) for v in range(q.n)))
    queue = deque([root])
    failed = inconclusive = False
    while queue and not failed:
        node = queue.popleft()
        walk = MutationClassWalk(node.quiver, depth_limit, node_limit)
        split: tuple[Quiver, tuple[int, ...], tuple[int, int]] | None = None
        for member, path in walk:
            if is_acyclic_quiver(member):
                node.kind, node.path, node.witness = NodeKind.ACYCLIC, path, member
                break
            if split is None:
                pair = least_covering_pair(member)
                if pair is not None:
                    split = (member, path, pair)
                    if not acyclic_first:
                        break
        node.stats = walk.stats
        if node.kind is NodeKind.ACYCLIC:
            continue
        if split is not None:
            member, path, pair = split
            node.kind, node.path, node.witness, node.pair = NodeKind.SPLIT, path, member, pair
            for v in pair:
                child_labels = tuple(lab for i, lab in enumerate(node.labels) if i != v)
                child = BanffNode(member.delete(v), child_labels)
                node.children.append(child)
                queue.append(child)
        elif walk.complete:
            node.kind = NodeKind.FAIL
            failed = True
        else:
            node.kind = NodeKind.INCONCLUSIVE
            inconclusive = True
    if failed:
        status = BanffStatus.FAIL
    elif inconclusive:
        status = BanffStatus.INCONCLUSIVE
    else:
        status = BanffStatus.SUCCESS
    return BanffTrace(root, status)


def replay_trace(trace: BanffTrace) -> list[str]:
    """Re-derive every node of a trace from its parent; return the problems found.

    An empty list means the trace is a valid certificate for its status.
    """
    problems: list[str] = []

    def walk(node: BanffNode, where: str) -> None:
        q = node.quiver
        for k in node.path:
            q = mutate_quiver(q, k)
        if node.witness is not None and q != node.witness:
            problems.append(f"{where}: replayed path does not reach the recorded quiver")
        if node.kind is NodeKind.ACYCLIC and not is_acyclic_quiver(q):
            problems.append(f"{where}: leaf is not acyclic")
        if node.kind is NodeKind.SPLIT:
            if node.pair is None or node.pair not in covering_pairs(q):
                problems.append(f"{where}: recorded pair {node.pair} is not a covering pair")
            if len(node.children) != 2:
                problems.append(f"{where}: split without two children")
            for v, child in zip(node.pair or (), node.children):
                if child.quiver != q.delete(v):
                    problems.append(f"{where}: child does not delete vertex {v}")
                walk(child, f"{where}/{node.labels[v]}")
        if node.kind is None:
            problems.append(f"{where}: node never processed")

    walk(trace.root, "root")
    if trace.status is BanffStatus.SUCCESS and any(
        leaf.kind is not NodeKind.ACYCLIC for leaf in trace.leaves()
    ):
        problems.append("SUCCESS claimed with a non-acyclic leaf")
    return problems


def render_trace(trace: BanffTrace) -> str:
    lines = [f"banff: {trace.status.value}"]

    def show(node: BanffNode, indent: str) -> None:
        names = ",".join(node.labels)
        path = " ".join(node.labels[k] for k in node.path) or "-"
        head = f"{indent}[{names}] {node.kind.value if node.kind else '?'}"
        if node.kind in (NodeKind.ACYCLIC, NodeKind.SPLIT):
            head += f" via mutations ({path})"
        if node.pair is not None:
            a, b = node.pair
            head += f", covering pair {node.labels[a]}->{node.labels[b]}"
        if node.stats is not None:
            head += f"  [{node.stats.nodes} nodes, depth {node.stats.max_depth}]"
        lines.append(head)
        for child in node.children:
            show(child, indent + "  ")

    show(trace.root, "")
    leaves = trace.leaves()
    acyclic = sum(1 for leaf in leaves if leaf.kind is NodeKind.ACYCLIC)
    lines.append(f"leaves: {len(leaves)} ({acyclic} acyclic)")
    return "\n".join(lines) + "\n"


def trace_to_dot(trace: BanffTrace) -> str:
    """One cluster per node: the examined quiver, ``<=>`` to the witness, red covering pair."""
    out = ["digraph banff {", "  compound=true;"]
    counter = iter(range(10**9))

    def emit(q: Quiver, labels: Sequence[str], tag: str, pair=None) -> str:
        body = quiver_to_dot(q, tag, labels).splitlines()[1:-1]
        out.append(f"  subgraph cluster_{tag} {{")
        for ln in body:
            ln = ln.replace("  v", f"  {tag}_v").replace("-> v", f"-> {tag}_v")
            if pair is not None and ln.strip().startswith(f"{tag}_v{pair[0]} -> {tag}_v{pair[1]}"):
                ln = ln.rstrip(";") + " [color=red, penwidth=3];"
            out.append("  " + ln)
        out.append("  }")
        return f"{tag}_v0" if q.size else tag

    def node_dot(node: BanffNode) -> str:
        tag = f"n{next(counter)}"
        if node.witness is not None and node.path:
            anchor = emit(node.quiver, node.labels, tag)
            wtag = tag + "w"
            wanchor = emit(node.witness, node.labels, wtag, node.pair)
            out.append(
                f'  {anchor} -> {wanchor} [label="<=>", dir=both, '
                f"ltail=cluster_{tag}, lhead=cluster_{wtag}];"
            )
            anchor, tag = wanchor, wtag
        else:
            anchor = emit(node.quiver, node.labels, tag, node.pair)
        if node.kind is NodeKind.ACYCLIC:
            out.append(f'  {tag}_label [label="Acyclic", shape=plaintext];')
            out.append(f"  {anchor} -> {tag}_label [style=invis];")
        for child in node.children:
            canchor = node_dot(child)
            out.append(f"  {anchor} -> {canchor};")
        return anchor

    node_dot(trace.root)
    out.append("}")
    return "\n".join(out) + "\n"


class AUConclusion(Enum):
    CONCLUDED = "CONCLUDED"
    INCONCLUSIVE = "INCONCLUSIVE"

    @property
    def exit_code(self) -> int:
        return 0 if self is AUConclusion.CONCLUDED else 2


@dataclass
class AUReport:
    ring: GroundRing
    conclusion: AUConclusion
    reason: str
    acyclic: bool
    source_freezing: bool
    obstructions: list[tuple[int, TropMonomial, frozenset[int]]] = field(default_factory=list)
    banff: BanffTrace | None = None

    def suggested_ring(self) -> GroundRing | None:
        """Ring obtained by inverting every generator named in an obstruction."""
        if not self.obstructions:
            return None
        gens = set(self.ring.inverted)
        for _, _, need in self.obstructions:
            gens |= need
        return GroundRing.localized(gens)

    def render(self) -> str:
        lines = [
            f"ring: {self.ring}",
            f"A = U: {self.conclusion.value} ({self.reason})",
            f"acyclic seed: {'yes' if self.acyclic else 'no'}",
            f"source-freezing: {'yes' if self.source_freezing else 'no'}",
        ]
        for i, mono, need in self.obstructions:
            gens = ",".join(f"z{g + 1}" for g in sorted(need))
            lines.append(f"obstruction: y{i + 1} (+) 1 = {render_monomial(mono)} needs {gens} inverted")
        suggestion = self.suggested_ring()
        if suggestion is not None:
            lines.append(f"smallest localization removing all obstructions: {suggestion}")
        if self.banff is not None:
            lines.append(f"banff: {self.banff.status.value}")
        return "\n".join(lines) + "\n"


def au_report(
    q: Quiver,
    r: GroundRing,
    depth_limit: int = DEFAULT_DEPTH,
    node_limit: int = DEFAULT_NODES,
) -> AUReport:
    """Decide A = U where a known sufficient condition applies, else say why not.

    Over ZP local acyclicity (a Banff success) suffices.  Over any smaller
    ring only an acyclic source-freezing seed is accepted; a Banff success
    is never used there.
    """
    verdict = theorem_au_applies(quiver_to_seed(q), r)
    obstructions = [(i, mono, missing_inverses(mono, r)) for i, mono in verdict.obstructions]
    source_freezing = not verdict.obstructions
    if verdict.status is AUStatus.CONCLUDED_EQUAL:
        return AUReport(
            r, AUConclusion.CONCLUDED, "acyclic source-freezing seed",
            verdict.acyclic, source_freezing, obstructions,
        )
    if r.kind is RingKind.FULL_LAURENT:
        trace = banff_reduced(q, depth_limit, node_limit)
        if trace.status is BanffStatus.SUCCESS:
            return AUReport(
                r, AUConclusion.CONCLUDED, "locally acyclic (Banff SUCCESS)",
                verdict.acyclic, source_freezing, obstructions, trace,
            )
        return AUReport(
            r, AUConclusion.INCONCLUSIVE, f"Banff {trace.status.value}",
            verdict.acyclic, source_freezing, obstructions, trace,
        )
    reasons = []
    if not verdict.acyclic:
        reasons.append("seed not acyclic")
    if obstructions:
        reasons.append("seed not source-freezing")
    return AUReport(
        r, AUConclusion.INCONCLUSIVE, "; ".join(reasons),
        verdict.acyclic, source_freezing, obstructions,
    )
