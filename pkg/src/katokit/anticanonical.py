"""Multiplicities of -K = sum d_i D_i, the index, and index-1 structure checks.

Three routes produce the multiplicities:

* :func:`solve_closed_form` evaluates the slope and root formulas built from
  ``f_form`` / ``p_form`` and chains tips from one branch to the next;
* :func:`solve_chase` walks the graph from the first tip with the adjunction
  rows (white/black propagation rules) and the cycle initial conditions;
* :func:`solve_adjunction_system` solves the full linear system exactly and
  serves as the oracle for the other two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import InternalConsistencyError
from .forms import f_form, p_form
from .graph import DualGraph, build_graph, intersection_matrix
from .linalg import solve_rational
from .sequence import DlousskySequence, SimpleComponent, stats


@dataclass(frozen=True)
class MultiplicityAssignment:
    values: dict[int, Fraction]
    tip_values: tuple[Fraction, ...]
    root_values: tuple[Fraction, ...]
    slopes: tuple[tuple[Fraction, ...], ...]
    index: int
    closure_gaps: tuple[tuple[int, Fraction], ...] = field(default=(), compare=False)

    def ordered(self) -> list[Fraction]:
        return [self.values[i] for i in sorted(self.values)]


@dataclass(frozen=True)
class StructureReport:
    index_one: bool
    slope_floor_ok: bool
    black_root_family: bool
    branch_bound: bool
    branch_equality: bool
    equality_forms: bool
    unit_branch_slopes: bool
    min_node: int
    max_node: int
    min_at_tip: bool
    max_at_root: bool


def lcm_denominator(values) -> int:
    return math.lcm(*(Fraction(v).denominator for v in values))


def _pq(comp: SimpleComponent) -> tuple[int, int]:
    """(P, Q) of a simple component: P(k0..k_{p-1}) and P(k1..k_{p-1}) + m."""
    return p_form(comp.singular), p_form(comp.singular[1:]) + comp.m


def _tip_numerator_denominator(seq: DlousskySequence) -> tuple[int, int]:
    factors = [_pq(c) for c in seq.components]
    num = 0
    for h, (_, q) in enumerate(factors):
        num += q * math.prod(p + 1 for p, _ in factors[h + 1:])
    den = math.prod(p + 1 for p, _ in factors) - 1
    return num, den


def tip_multiplicity(seq: DlousskySequence) -> Fraction:
    """Multiplicity of the tip of the first stored component."""
    num, den = _tip_numerator_denominator(seq)
    return Fraction(num, den)


def surface_index(seq: DlousskySequence) -> int:
    num, den = _tip_numerator_denominator(seq)
    return den // math.gcd(den, num)


def index_spectrum(ks: tuple[int, ...] | list[int], m_max: int) -> dict[int, int]:
    """Index of ``[s_k0 .. s_k(p-1) r_m]`` for m = 1..m_max."""
    return {
        m: surface_index(DlousskySequence((SimpleComponent(tuple(ks), m),)))
        for m in range(1, m_max + 1)
    }


def component_slopes(comp: SimpleComponent, tip: Fraction) -> tuple[Fraction, ...]:
    """g_j = f(k0..k_{j-1}) * tip - f(k1..k_{j-1}) for j = 0..p (g_0 = tip)."""
    ks = comp.singular
    out = [Fraction(tip)]
    for j in range(1, comp.p + 1):
        out.append(f_form(ks[:j]) * tip - f_form(ks[1:j]))
    return tuple(out)


# ---------------------------------------------------------------- assembly

def _walk_slopes(g: DualGraph, path: list[int], values: Mapping[int, Fraction], start: Fraction) -> list[Fraction]:
    """Slope entering each stretch of ``path``; a new stretch starts after every black node."""
    slopes = []
    prev_value = start
    current = None
    for pos, node in enumerate(path):
        if current is None:
            current = values[node] - prev_value
        prev_value = values[node]
        if pos < len(path) - 1 and g.nodes[node].black:
            slopes.append(current)
            current = None
    slopes.append(current)
    return slopes


def derive_slopes(g: DualGraph, values: Mapping[int, Fraction]) -> tuple[tuple[Fraction, ...], ...]:
    """Read g_0..g_p per component off the branch and cycle profiles.

    Even slopes come from the path (0, A_1, .., A_alpha, R); odd slopes from
    (C_0, .., C_beta, R), with the root included at the far end.
    """
    out = []
    for f, comp in enumerate(g.seq.components):
        root = g.roots[f]
        branch = list(g.branches[f]) + [root]
        even = _walk_slopes(g, branch, values, Fraction(0))
        seg = list(g.cycle_segments[f])
        head_len = len(g.cycle_segments[f]) if comp.m == 1 else seg.index(root)
        cycle = seg[1:head_len] + [root]
        odd = _walk_slopes(g, cycle, values, values[seg[0]])
        slopes: list[Fraction] = []
        for j in range(comp.p + 1):
            slopes.append(even[j // 2] if j % 2 == 0 else odd[j // 2])
        out.append(tuple(slopes))
    return tuple(out)


def assemble(g: DualGraph, values: Mapping[int, Fraction], closure_gaps=()) -> MultiplicityAssignment:
    values = {i: Fraction(values[i]) for i in range(g.b)}
    return MultiplicityAssignment(
        values=values,
        tip_values=tuple(values[t] for t in g.tips),
        root_values=tuple(values[r] for r in g.roots),
        slopes=derive_slopes(g, values),
        index=lcm_denominator(values.values()),
        closure_gaps=tuple(closure_gaps),
    )


# ---------------------------------------------------------------- solvers

def solve_closed_form(seq: DlousskySequence, g: DualGraph | None = None) -> MultiplicityAssignment:
    g = g or build_graph(seq)
    values: dict[int, Fraction] = {}

    def put(node: int, value: Fraction) -> None:
        if node in values and values[node] != value:
            raise InternalConsistencyError(f"closed form assigns {values[node]} and {value} to node {node}")
        values[node] = value

    tip = tip_multiplicity(seq)
    for f, comp in enumerate(seq.components):
        p, q = _pq(comp)
        slopes = component_slopes(comp, tip)
        root = g.roots[f]

        value = Fraction(0)
        s_idx = 0
        for node in g.branches[f]:
            value += slopes[s_idx]
            put(node, value)
            if g.nodes[node].black:
                s_idx += 2

        seg = g.cycle_segments[f]
        value = tip + 1
        put(seg[0], value)
        s_idx = 1
        head = seg if comp.m == 1 else seg[: seg.index(root)]
        for node in head[1:]:
            value += slopes[s_idx]
            put(node, value)
            if g.nodes[node].black:
                s_idx += 2

        r = (p + 1) * tip - q + comp.m
        put(root, r)
        if comp.m > 1:
            for i, node in enumerate(seg[seg.index(root) + 1:], start=1):
                put(node, r - i)
        tip = (p + 1) * tip - q

    if tip != tip_multiplicity(seq):
        raise InternalConsistencyError(f"tip chaining does not close up on {seq}")
    return assemble(g, values)


def _row_solve(g: DualGraph, mat, node: int, unknown: int, values: Mapping[int, Fraction]) -> Fraction:
    """Solve the adjunction row of ``node`` for the single neighbour ``unknown``."""
    nb = g.neighbors(node)
    rhs = mat[node][node] + 2 - 2 * g.nodes[node].self_loops
    acc = mat[node][node] * values[node]
    for other, mult in nb.items():
        if other != unknown:
            acc += mult * values[other]
    return (rhs - acc) / nb[unknown]


def _propagate_step(entry: int, before: Fraction, here: Fraction) -> Fraction:
    """Next value across a node with two neighbours: linear for entry 2, bent by k for entry k + 2."""
    k = entry - 2
    return 2 * here - before + k * (here - 1)


def solve_chase(
    seq: DlousskySequence,
    t: Fraction | int,
    g: DualGraph | None = None,
    check_closure: bool = True,
) -> MultiplicityAssignment:
    """Propagate multiplicities from the first tip value ``t``.

    Branch f: tip row, then propagation up to the root. Cycle f: c_0 = a_f + 1,
    c_1 - c_0 = k_0 a_f - 1, propagation forward to the root, the root row, then the
    propagation down the regular chain to the next C_0, whose value fixes the next
    tip a_(f+1) = c_0 - 1. C_0 of the first component keeps ``t + 1``; a value
    propagated onto an already assigned node is recorded as a closure gap.
    """
    g = g or build_graph(seq)
    mat = intersection_matrix(g)
    t = Fraction(t)
    values: dict[int, Fraction] = {}
    gaps: list[tuple[int, Fraction]] = []

    def put(node: int, value: Fraction) -> None:
        if node in values:
            if values[node] != value:
                gaps.append((node, value - values[node]))
        else:
            values[node] = value

    c0_first = g.cycle_segments[0][0]
    put(c0_first, t + 1)
    tip = t
    for f, comp in enumerate(seq.components):
        root = g.roots[f]
        seg = g.cycle_segments[f]
        c0 = seg[0]
        if f > 0:
            tip = values[c0] - 1

        branch = list(g.branches[f]) + [root]
        tip_node = branch[0]
        put(tip_node, tip)
        if len(branch) > 1:
            put(branch[1], _row_solve(g, mat, tip_node, branch[1], values))
            for i in range(1, len(branch) - 1):
                node = branch[i]
                put(branch[i + 1], _propagate_step(g.nodes[node].entry, values[branch[i - 1]], values[node]))

        head = list(seg) if comp.m == 1 else list(seg[: seg.index(root)])
        ring = head + [root]
        c0_value = values[c0]
        put(ring[1], c0_value + comp.singular[0] * tip - 1)
        for i in range(1, len(ring) - 1):
            node = ring[i]
            put(ring[i + 1], _propagate_step(g.nodes[node].entry, values[ring[i - 1]], values[node]))

        if comp.m > 1:
            chain = [root] + list(seg[seg.index(root) + 1:]) + [g.cycle_segments[(f + 1) % seq.N][0]]
            put(chain[1], _row_solve(g, mat, root, chain[1], values))
            for i in range(1, len(chain) - 1):
                node = chain[i]
                put(chain[i + 1], _propagate_step(g.nodes[node].entry, values[chain[i - 1]], values[node]))

    if check_closure and gaps:
        raise InternalConsistencyError(f"chase does not close on {seq} with t={t}: gaps {gaps}")
    return assemble(g, values, gaps)


def adjunction_rhs(g: DualGraph) -> list[int]:
    """-K.D_i: D_i^2 + 2 for smooth rational curves, D_i^2 for the nodal curve."""
    return [n.self_intersection + 2 - 2 * n.self_loops for n in g.nodes]


def solve_adjunction_system(g: DualGraph) -> MultiplicityAssignment:
    solution = solve_rational(intersection_matrix(g), adjunction_rhs(g))
    return assemble(g, dict(enumerate(solution)))


def adjunction_residuals(g: DualGraph, values: Mapping[int, Fraction]) -> list[Fraction]:
    mat = intersection_matrix(g)
    rhs = adjunction_rhs(g)
    return [sum(mat[i][j] * values[j] for j in range(g.b)) - rhs[i] for i in range(g.b)]


def solve(seq: DlousskySequence) -> MultiplicityAssignment:
    return solve_closed_form(seq)


# ---------------------------------------------------------------- structure

def _is_mm_form(comp: SimpleComponent) -> bool:
    return comp.singular == (comp.m,)


def _is_black_root_form(comp: SimpleComponent) -> bool:
    """[3 s_k 2]: s_1, at most one more singular block, and r_1."""
    return comp.m == 1 and comp.singular[0] == 1 and comp.p <= 2


def slope_floor(seq: DlousskySequence, ma: MultiplicityAssignment) -> bool:
    """Every slope is >= 1, except g_1 = 0 exactly when tip = k_0 = 1."""
    for comp, tip, slopes in zip(seq.components, ma.tip_values, ma.slopes):
        for j, gj in enumerate(slopes):
            if j == 1 and tip == 1 and comp.singular[0] == 1:
                if gj != 0:
                    return False
            elif gj < 1:
                return False
    return True


def structure_checks(seq: DlousskySequence, ma: MultiplicityAssignment | None = None) -> StructureReport:
    g = build_graph(seq)
    ma = ma or solve_closed_form(seq, g)
    st = stats(seq)
    values = ma.values
    lo = min(values.values())
    hi = max(values.values())
    min_node = min(i for i, v in values.items() if v == lo)
    max_node = min(i for i, v in values.items() if v == hi)
    return StructureReport(
        index_one=ma.index == 1,
        slope_floor_ok=slope_floor(seq, ma),
        black_root_family=seq.N == 1 and _is_black_root_form(seq.components[0]),
        branch_bound=st.b2_branches <= st.m_total,
        branch_equality=st.b2_branches == st.m_total,
        equality_forms=all(_is_mm_form(c) or _is_black_root_form(c) for c in seq.components),
        unit_branch_slopes=all(gs[j] == 1 for gs in ma.slopes for j in range(0, len(gs), 2)),
        min_node=min_node,
        max_node=max_node,
        min_at_tip=any(values[t] == lo for t in g.tips),
        max_at_root=any(values[r] == hi for r in g.roots),
    )


def structural_identities(seq: DlousskySequence, ma: MultiplicityAssignment, g: DualGraph | None = None) -> dict[str, bool]:
    """Per-component identities every solution must satisfy, keyed by name."""
    g = g or build_graph(seq)
    v = ma.values
    out = {
        "duality": True,
        "slope_recursion": True,
        "root_from_slopes": True,
        "root_from_neighbours": True,
        "c0_slope": True,
        "descending_chain": True,
        "positivity": all(x > 0 for x in v.values()),
        "slope_floor": ma.index != 1 or slope_floor(seq, ma),
    }
    for f, comp in enumerate(seq.components):
        ks, gs = comp.singular, ma.slopes[f]
        root = g.roots[f]
        seg = list(g.cycle_segments[f])
        head = seg if comp.m == 1 else seg[: seg.index(root)]
        tail = [] if comp.m == 1 else seg[seg.index(root) + 1:]
        branch = g.branches[f]
        a = {i: v[n] for i, n in enumerate(branch, start=1)}
        c = {i: v[n] for i, n in enumerate(head)}
        c[len(head)] = v[root]
        a[len(branch) + 1] = v[root]
        r = v[root]

        for j in range(comp.p + 1):
            if j % 2 == 0:
                pos = sum(ks[1:j:2])
                ok = pos in c and c[pos] == 1 + gs[j]
            else:
                pos = sum(ks[0:j:2])
                ok = pos in a and a[pos] == 1 + gs[j]
            out["duality"] &= ok
        for j in range(1, comp.p):
            out["slope_recursion"] &= gs[j + 1] - gs[j - 1] == ks[j] * gs[j]
        out["root_from_slopes"] &= r == gs[comp.p] + gs[comp.p - 1] + 1
        out["root_from_neighbours"] &= r == v[branch[-1]] + v[head[-1]] - 1
        out["c0_slope"] &= gs[1] + 1 == ks[0] * (v[head[0]] - 1)
        out["descending_chain"] &= all(r - v[n] == i for i, n in enumerate(tail, start=1))
    return out
