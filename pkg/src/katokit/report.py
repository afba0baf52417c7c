"""JSON-ready dictionaries for the analyze, germ and moduli reports.

Rationals are always written as "num/den"; arithmetic invariants that can
grow without bound (exponents, determinants, sigma) as decimal strings;
small counts stay JSON integers.
"""

from __future__ import annotations

import json
from dataclasses import asdict
from fractions import Fraction

from .anticanonical import MultiplicityAssignment, solve_closed_form
from .germ import GermData, LatticeReport, ModuliReport, germ_index, germ_of, germ_tip, lattice_invariants
from .graph import build_graph
from .sequence import DlousskySequence, stats


def frac(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def stats_json(seq: DlousskySequence) -> dict:
    st = stats(seq)
    return {
        "b2": st.b2,
        "sigma": str(st.sigma),
        "alpha": list(st.alpha_per_component),
        "beta": list(st.beta_per_component),
        "b2_branches": st.b2_branches,
        "b2_cycle": st.b2_cycle,
        "m": st.m_total,
        "branches": st.branch_count,
    }


def lattice_json(lat: LatticeReport) -> dict:
    return {
        "sublattice_index": str(lat.sublattice_index),
        "determinant": str(lat.determinant),
        "branch_determinants": [str(x) for x in lat.branch_determinants],
        "twisting_coefficient": str(lat.twisting_coefficient),
    }


def germ_json(g: GermData) -> dict:
    return {
        "j": str(g.j),
        "s": str(g.s),
        "k": str(g.k),
        "pure_coefficient_count": g.pure_coefficient_count,
        "nonpure_coefficient_count": g.nonpure_coefficient_count,
        "sk_over_km1": None if g.sk_over_km1_integral is None else str(g.sk_over_km1_integral),
        "germ_index": str(germ_index(g)),
        "t": frac(germ_tip(g)),
    }


def moduli_json(rep: ModuliReport) -> dict:
    return asdict(rep)


def multiplicities_json(seq: DlousskySequence, ma: MultiplicityAssignment) -> list[dict]:
    g = build_graph(seq)
    return [
        {"id": n.id, "label": n.label, "entry": n.entry, "role": n.role.value, "multiplicity": frac(ma.values[n.id])}
        for n in g.nodes
    ]


def analyze_report(seq: DlousskySequence) -> dict:
    ma = solve_closed_form(seq)
    return {
        "sequence": str(seq),
        "stats": stats_json(seq),
        "multiplicities": multiplicities_json(seq, ma),
        "tips": [frac(t) for t in ma.tip_values],
        "roots": [frac(r) for r in ma.root_values],
        "slopes": [[frac(x) for x in comp] for comp in ma.slopes],
        "index": str(ma.index),
        "germ": germ_json(germ_of(seq)),
        "lattice": lattice_json(lattice_invariants(seq)),
    }


def germ_report(seq: DlousskySequence) -> dict:
    out = {"sequence": str(seq)}
    out.update(germ_json(germ_of(seq)))
    out["lattice"] = lattice_json(lattice_invariants(seq))
    return out


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
