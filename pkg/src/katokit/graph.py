"""Directed dual graph of the rational curves and its intersection form.

Node ids are creation-order positions in the expanded entry list. Two
builders exist: :func:`build_graph_shift` applies the cyclic shift rule entry
by entry and reads roles off the topology; :func:`build_graph_structural`
lays out branch and cycle chains block by block. They must agree.
"""

from __future__ import annotations

import enum
import json
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .linalg import bareiss_determinant, is_negative_definite
from .sequence import DlousskySequence, SimpleComponent


class Role(str, enum.Enum):
    TIP = "Tip"
    BRANCH_INNER = "BranchInner"
    BRANCH_BLACK = "BranchBlack"
    CYCLE_BLACK = "CycleBlack"
    CYCLE_WHITE = "CycleWhite"
    ROOT = "Root"


@dataclass(frozen=True)
class CurveNode:
    id: int
    entry: int
    role: Role
    component_index: int
    label: str
    self_loops: int = 0

    @property
    def black(self) -> bool:
        return self.entry >= 3

    @property
    def self_intersection(self) -> int:
        return -self.entry + 2 * self.self_loops


@dataclass(frozen=True)
class DualGraph:
    seq: DlousskySequence
    nodes: tuple[CurveNode, ...]
    edges: tuple[tuple[int, int], ...]  # directed (source, target), one per node
    tips: tuple[int, ...]
    roots: tuple[int, ...]
    branches: tuple[tuple[int, ...], ...]  # A_1 .. A_alpha per component
    cycle_segments: tuple[tuple[int, ...], ...]  # C_0 up to just before the next C_0

    @property
    def b(self) -> int:
        return len(self.nodes)

    def edge_multiset(self) -> Counter:
        return Counter(tuple(sorted(e)) for e in self.edges)

    def multiplicity(self, i: int, j: int) -> int:
        return self.edge_multiset()[tuple(sorted((i, j)))]

    def neighbors(self, i: int) -> Counter:
        """Neighbour id -> number of edges joining it to ``i`` (self-loops excluded)."""
        out: Counter = Counter()
        for u, v in self.edges:
            if u == v:
                continue
            if u == i:
                out[v] += 1
            elif v == i:
                out[u] += 1
        return out

    def cycle_nodes(self) -> tuple[int, ...]:
        return tuple(i for seg in self.cycle_segments for i in seg)


def _component_of_position(seq: DlousskySequence) -> list[int]:
    out = []
    for f, comp in enumerate(seq.components):
        out.extend([f] * len(comp))
    return out


def _label(kind: str, index: int, f: int, n_components: int) -> str:
    return f"{kind}{index}" if n_components == 1 else f"{kind}{index},{f + 1}"


def _role(is_cycle: bool, is_tip: bool, is_root: bool, black: bool) -> Role:
    if is_tip:
        return Role.TIP
    if is_root:
        return Role.ROOT
    if is_cycle:
        return Role.CYCLE_BLACK if black else Role.CYCLE_WHITE
    return Role.BRANCH_BLACK if black else Role.BRANCH_INNER


def build_graph_shift(seq: DlousskySequence) -> DualGraph:
    """Join each entry ``a`` to the entry ``a - 1`` places after it, cyclically."""
    entries = seq.entries()
    b = len(entries)
    target = [(i + a - 1) % b for i, a in enumerate(entries)]
    edges = tuple((i, t) for i, t in enumerate(target))

    degree = [0] * b
    adjacency: list[list[int]] = [[] for _ in range(b)]
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
        if u != v:
            adjacency[u].append(v)
            adjacency[v].append(u)

    # peel leaves until only the cycle is left
    remaining = degree[:]
    alive = [True] * b
    stack = [i for i in range(b) if remaining[i] == 1]
    while stack:
        i = stack.pop()
        if not alive[i]:
            continue
        alive[i] = False
        for j in adjacency[i]:
            if alive[j]:
                remaining[j] -= 1
                if remaining[j] == 1:
                    stack.append(j)
    on_cycle = alive

    comp_of = _component_of_position(seq)
    offsets = seq.offsets()
    n_comp = seq.N

    tips = tuple(i for i in range(b) if degree[i] == 1)
    tips = tuple(sorted(tips, key=lambda i: comp_of[i]))
    branches, roots = [], []
    for tip in tips:
        chain = [tip]
        node = target[tip]
        while not on_cycle[node]:
            chain.append(node)
            node = target[node]
        branches.append(tuple(chain))
        roots.append(node)

    segments = []
    for f in range(n_comp):
        stop = offsets[(f + 1) % n_comp]
        seg = [offsets[f]]
        node = target[offsets[f]]
        while node != stop:
            seg.append(node)
            node = target[node]
        segments.append(tuple(seg))

    labels: dict[int, str] = {}
    for f, chain in enumerate(branches):
        for idx, node in enumerate(chain, start=1):
            labels[node] = _label("A", idx, f, n_comp)
    for f, seg in enumerate(segments):
        for idx, node in enumerate(seg):
            labels[node] = _label("C", idx, f, n_comp)

    root_set = set(roots)
    tip_set = set(tips)
    nodes = tuple(
        CurveNode(
            id=i,
            entry=entries[i],
            role=_role(on_cycle[i], i in tip_set, i in root_set, entries[i] >= 3),
            component_index=comp_of[i],
            label=labels[i],
            self_loops=1 if target[i] == i else 0,
        )
        for i in range(b)
    )
    return DualGraph(seq, nodes, edges, tips, tuple(roots), tuple(branches), tuple(segments))


@dataclass(frozen=True)
class ComponentLayout:
    """Relative positions of the curves created by one simple component."""

    branch: tuple[int, ...]  # A_1 .. A_alpha
    cycle_head: tuple[int, ...]  # C_0 .. C_beta
    root: int  # C_(beta+1); equals len(component) when m == 1 (next C_0)
    tail: tuple[int, ...]  # C_(beta+2) .. C_(beta+m-1)


def component_layout(comp: SimpleComponent) -> ComponentLayout:
    """Each s_k puts its black curve on one side and its k-1 twos on the other.

    Blocks with even index put the black curve on the cycle and the twos on
    the branch; odd blocks do the opposite. The first regular two continues
    the chain of the last singular block.
    """
    ks = comp.singular
    branch: list[int] = []
    cycle: list[int] = []
    start = 0
    for i, k in enumerate(ks):
        whites = list(range(start + 1, start + k))
        if i == len(ks) - 1:
            whites.append(start + k)
        if i % 2 == 0:
            cycle.append(start)
            branch.extend(whites)
        else:
            branch.append(start)
            cycle.extend(whites)
        start += k
    return ComponentLayout(
        branch=tuple(branch),
        cycle_head=tuple(cycle),
        root=start + 1,
        tail=tuple(range(start + 2, start + comp.m)),
    )


def build_graph_structural(seq: DlousskySequence) -> DualGraph:
    """Assemble branch chains and the oriented cycle from each component's layout."""
    entries = seq.entries()
    b = len(entries)
    offsets = seq.offsets()
    n_comp = seq.N
    comp_of = _component_of_position(seq)

    layouts = [component_layout(c) for c in seq.components]
    tips, roots, branches, segments = [], [], [], []
    edges: list[tuple[int, int]] = []
    labels: dict[int, str] = {}
    for f, (off, lay) in enumerate(zip(offsets, layouts)):
        next_c0 = offsets[(f + 1) % n_comp]
        root = (off + lay.root) if lay.root < len(seq.components[f]) else next_c0
        branch = tuple(off + x for x in lay.branch)
        segment = tuple(off + x for x in lay.cycle_head)
        if root != next_c0:
            segment += (root,) + tuple(off + x for x in lay.tail)
        tips.append(branch[0])
        roots.append(root)
        branches.append(branch)
        segments.append(segment)

        path = branch + (root,)
        edges.extend(zip(path[:-1], path[1:]))
        ring = segment + (next_c0,)
        edges.extend(zip(ring[:-1], ring[1:]))
        for idx, node in enumerate(branch, start=1):
            labels[node] = _label("A", idx, f, n_comp)
        for idx, node in enumerate(segment):
            labels[node] = _label("C", idx, f, n_comp)

    edges.sort()
    on_cycle = {i for seg in segments for i in seg}
    root_set, tip_set = set(roots), set(tips)
    nodes = tuple(
        CurveNode(
            id=i,
            entry=entries[i],
            role=_role(i in on_cycle, i in tip_set, i in root_set, entries[i] >= 3),
            component_index=comp_of[i],
            label=labels[i],
            self_loops=sum(1 for u, v in edges if u == v == i),
        )
        for i in range(b)
    )
    return DualGraph(seq, nodes, tuple(edges), tuple(tips), tuple(roots), tuple(branches), tuple(segments))


def build_graph(seq: DlousskySequence) -> DualGraph:
    return build_graph_shift(seq)


def intersection_matrix(g: DualGraph) -> list[list[int]]:
    b = g.b
    mat = [[0] * b for _ in range(b)]
    for node in g.nodes:
        mat[node.id][node.id] = node.self_intersection
    for (u, v), mult in g.edge_multiset().items():
        if u != v:
            mat[u][v] += mult
            mat[v][u] += mult
    return mat


def graph_determinant(g: DualGraph) -> int:
    """Discriminant of the negative definite form, i.e. ``det(-M)``."""
    return bareiss_determinant([[-x for x in row] for row in intersection_matrix(g)])


def negative_definite(g: DualGraph) -> bool:
    return is_negative_definite(intersection_matrix(g))


def export_dot(g: DualGraph) -> str:
    """Graphviz digraph: cycle edges follow the cycle orientation, branch edges have no arrowhead."""
    on_cycle = set(g.cycle_nodes())
    lines = [f'digraph "{g.seq}" {{', '  node [shape=circle, label="", width=0.25];']
    for node in g.nodes:
        attrs = [f'tooltip="{node.label}"']
        if node.black:
            attrs += [f'label="{node.entry}"', "style=filled", "fillcolor=black", "fontcolor=white"]
        if node.self_loops:
            attrs.append("peripheries=2")
        lines.append(f"  {node.id} [{', '.join(attrs)}];")
    for u, v in g.edges:
        if u in on_cycle and v in on_cycle:
            lines.append(f"  {u} -> {v};")
        else:
            lines.append(f"  {u} -> {v} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(g: DualGraph) -> dict:
    edges = [
        {"pair": [u, v], "multiplicity": mult}
        for (u, v), mult in sorted(g.edge_multiset().items())
    ]
    return {
        "sequence": str(g.seq),
        "nodes": [
            {
                "id": n.id,
                "entry": n.entry,
                "role": n.role.value,
                "label": n.label,
                "component": n.component_index,
                "self_loops": n.self_loops,
            }
            for n in g.nodes
        ],
        "edges": edges,
        "matrix": [[str(x) for x in row] for row in intersection_matrix(g)],
    }


def export_json(g: DualGraph) -> str:
    return json.dumps(graph_to_json(g), indent=2)


def counting_identities(g: DualGraph) -> dict[str, int]:
    """Quantities entering the moduli count, read from raw entries.

    Black nodes J carry ``k_l = entry - 2``; white nodes form I.
    """
    black = [n.entry - 2 for n in g.nodes if n.black]
    white = sum(1 for n in g.nodes if not n.black)
    m_total = sum(c.m for c in g.seq.components)
    return {
        "sum_k_black": sum(black),
        "m_total": m_total,
        "b": g.b,
        "white_count": white,
        "white_expected": sum(k - 1 for k in black) + m_total,
        "normal_degree_sum": sum(n.entry - 1 for n in g.nodes),
    }


def relabel(matrix: Sequence[Sequence[int]], order: Sequence[int]) -> list[list[int]]:
    """Rows and columns of ``matrix`` permuted to ``order`` (a list of node ids)."""
    return [[matrix[i][j] for j in order] for i in order]
