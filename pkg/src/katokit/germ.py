"""Contracting-germ exponents, lattice invariants and moduli dimensions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .anticanonical import solve_closed_form, surface_index, tip_multiplicity
from .errors import DeltaInconsistent, GcdViolation, InternalConsistencyError
from .forms import p_form
from .sequence import DlousskySequence, SimpleComponent, stats


@dataclass(frozen=True)
class GermData:
    j: int
    s: int
    k: int
    pure_coefficient_count: int
    nonpure_coefficient_count: int

    @property
    def sk_over_km1_integral(self) -> int | None:
        """Exponent s*k/(k-1) of the non-pure term, when it is an integer."""
        num = self.s * self.k
        return num // (self.k - 1) if num % (self.k - 1) == 0 else None


@dataclass(frozen=True)
class LatticeReport:
    sublattice_index: int
    determinant: int
    branch_determinants: tuple[int, ...]
    twisting_coefficient: int


@dataclass(frozen=True)
class ModuliReport:
    delta: int
    epsilon: int
    log_dim: int
    fixed_dim: int


def simple_germ(comp: SimpleComponent) -> GermData:
    k = p_form(comp.singular) + 1
    j = p_form(comp.singular[1:]) + 1
    s = j + comp.m - 1
    if math.gcd(j, k) != 1:
        raise GcdViolation(f"gcd(j, k) = {math.gcd(j, k)} for simple component {comp}")
    return GermData(j=j, s=s, k=k, pure_coefficient_count=comp.m, nonpure_coefficient_count=comp.m + 1)


def compose_germs(g1: GermData, g2: GermData) -> GermData:
    """Exponents of the composite germ, ``g1`` applied first: j = j1*k2, s = s1*k2 + s2, k = k1*k2."""
    pure = g1.pure_coefficient_count + g2.pure_coefficient_count
    return GermData(
        j=g1.j * g2.k,
        s=g1.s * g2.k + g2.s,
        k=g1.k * g2.k,
        pure_coefficient_count=pure,
        nonpure_coefficient_count=pure + 1,
    )


def germ_of(seq: DlousskySequence) -> GermData:
    """Left fold of the simple germs in stored component order."""
    germ = reduce(compose_germs, (simple_germ(c) for c in seq.components))
    if seq.N > 1 and math.gcd(germ.j, germ.k) == 1:
        raise InternalConsistencyError(f"gcd(j, k) = 1 for the {seq.N}-branch sequence {seq}")
    return germ


def germ_index(g: GermData) -> int:
    return (g.k - 1) // math.gcd(g.k - 1, g.s)


def germ_tip(g: GermData) -> Fraction:
    return Fraction(g.s, g.k - 1)


def germ_relations_check(seq: DlousskySequence) -> bool:
    """The one-branch identities linking (j, s, k) to the tip and root multiplicities."""
    if seq.N != 1:
        raise ValueError("germ relations are stated for one-branch sequences")
    g = germ_of(seq)
    ma = solve_closed_form(seq)
    t, r = ma.tip_values[0], ma.root_values[0]
    m = seq.components[0].m
    k, s, j = g.k, g.s, g.j
    return (
        t == Fraction(s, k - 1)
        and r == k * t - s + m
        and r == Fraction(s * k, k - 1) + 1 - j
        and s == (k - 1) * t
        and Fraction(s * k, k - 1) == k * t
    )


def lattice_invariants(seq: DlousskySequence) -> LatticeReport:
    branch = tuple(p_form(c.singular) + 1 for c in seq.components)
    k = math.prod(branch)
    return LatticeReport(
        sublattice_index=k - 1,
        determinant=(k - 1) ** 2,
        branch_determinants=branch,
        twisting_coefficient=k,
    )


def moduli_dimensions(seq: DlousskySequence, delta: int) -> ModuliReport:
    if delta not in (0, 1):
        raise DeltaInconsistent(f"delta must be 0 or 1, got {delta}")
    if delta == 1 and surface_index(seq) != 1:
        raise DeltaInconsistent(f"delta = 1 needs index 1; {seq} has index {surface_index(seq)}")
    st = stats(seq)
    epsilon = 0
    if delta == 1:
        tips = solve_closed_form(seq).tip_values
        epsilon = int(min(tips) == 1)
    return ModuliReport(
        delta=delta,
        epsilon=epsilon,
        log_dim=st.m_total + delta,
        fixed_dim=st.b2 + st.m_total - epsilon,
    )


def germ_consistency(seq: DlousskySequence) -> bool:
    """Germ tip s/(k-1) equals the anticanonical tip of the first component."""
    return germ_tip(germ_of(seq)) == tip_multiplicity(seq)
