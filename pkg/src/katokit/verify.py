"""Exhaustive cross-check suite over all canonical sequences up to a b2 bound."""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .anticanonical import (
    solve_adjunction_system,
    solve_chase,
    solve_closed_form,
    structural_identities,
    structure_checks,
    surface_index,
    tip_multiplicity,
)
from .errors import InternalConsistencyError
from .germ import germ_index, germ_of, lattice_invariants
from .graph import (
    build_graph_shift,
    build_graph_structural,
    counting_identities,
    graph_determinant,
    negative_definite,
)
from .sequence import DlousskySequence, canonical_form, enumerate_up_to, rotate, stats

FAMILIES = (
    "oracle_equality",
    "index_triple",
    "determinant_law",
    "builder_agreement",
    "structural_identities",
    "census_one_branch",
    "census_branch_bound",
    "counting_identity",
    "gcd_law",
    "rotation_invariance",
)


@dataclass
class FamilyResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_sequence(seq: DlousskySequence) -> dict[str, str | None]:
    """Run every family on one sequence; a value of None means pass, else a reason."""
    out: dict[str, str | None] = {}
    try:
        g = build_graph_shift(seq)
        closed = solve_closed_form(seq, g)
        chase = solve_chase(seq, tip_multiplicity(seq), g)
        oracle = solve_adjunction_system(g)
        out["oracle_equality"] = None if closed.values == chase.values == oracle.values else "solvers disagree"

        idx = surface_index(seq)
        germ = germ_of(seq)
        triple = (idx, oracle.index, germ_index(germ))
        out["index_triple"] = None if len(set(triple)) == 1 else f"indices {triple}"

        det = graph_determinant(g)
        lat = lattice_invariants(seq)
        k = math.prod(lat.branch_determinants)
        law = det == (k - 1) ** 2 == lat.determinant and negative_definite(g)
        out["determinant_law"] = None if law else f"det {det}, expected {(k - 1) ** 2}"

        other = build_graph_structural(seq)
        same = g.nodes == other.nodes and g.edge_multiset() == other.edge_multiset()
        out["builder_agreement"] = None if same else "graph builders differ"

        ids = structural_identities(seq, oracle, g)
        broken = [name for name, ok in ids.items() if not ok]
        out["structural_identities"] = ", ".join(broken) or None

        rep = structure_checks(seq, oracle)
        if seq.N == 1 and seq.components[0].m == 1:
            out["census_one_branch"] = None if rep.index_one == rep.black_root_family else "index-1 family mismatch"
        else:
            out["census_one_branch"] = None
        if rep.index_one:
            # equality holds exactly when every branch slope g_0, g_2, ... is 1
            ok = rep.branch_bound and rep.branch_equality == rep.unit_branch_slopes
            if rep.equality_forms and not rep.branch_equality:
                ok = False
            out["census_branch_bound"] = None if ok else "branch bound / equality characterization"
        else:
            out["census_branch_bound"] = None

        ci = counting_identities(g)
        st = stats(seq)
        ok = ci["normal_degree_sum"] == 2 * g.b - st.m_total and ci["white_count"] == ci["white_expected"]
        out["counting_identity"] = None if ok else f"counting {ci}"

        j, kk = germ.j, germ.k
        ok = (math.gcd(j, kk) > 1) if seq.N > 1 else (math.gcd(j, kk) == 1)
        out["gcd_law"] = None if ok else f"gcd(j, k) = {math.gcd(j, kk)}"

        rot_ok = True
        multiset = sorted(oracle.values.values())
        for r in range(1, seq.N):
            rs = rotate(seq, r)
            rg = germ_of(rs)
            rot_ok &= surface_index(rs) == idx and rg.k == germ.k and germ_index(rg) == idx
            rot_ok &= sorted(solve_closed_form(rs).values.values()) == multiset
        rot_ok &= surface_index(canonical_form(seq)) == idx
        out["rotation_invariance"] = None if rot_ok else "rotation changes invariants"
    except InternalConsistencyError as exc:
        for name in FAMILIES:
            out.setdefault(name, f"internal error: {exc}")
    return out


def worker_count() -> int:
    env = os.environ.get("KATOKIT_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            n = 0
        if n < 1:
            raise ValueError(f"KATOKIT_THREADS must be a positive integer, got {env!r}")
        return n
    return os.cpu_count() or 1


def run_verify(b2_max: int = 10, workers: int | None = None) -> list[FamilyResult]:
    seqs = list(enumerate_up_to(b2_max))
    workers = workers or worker_count()
    if workers > 1 and len(seqs) > 64:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(check_sequence, seqs, chunksize=32))
    else:
        outcomes = [check_sequence(s) for s in seqs]

    results = {name: FamilyResult(name) for name in FAMILIES}
    for seq, outcome in zip(seqs, outcomes):
        for name in FAMILIES:
            res = results[name]
            res.checked += 1
            reason = outcome.get(name)
            if reason is not None:
                res.failures.append(f"{seq}: {reason}")
    return [results[name] for name in FAMILIES]


def summary_table(results: list[FamilyResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{'family'.ljust(width)}  status  checked  failed"]
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        lines.append(f"{r.name.ljust(width)}  {status:6}  {r.checked:7d}  {len(r.failures):6d}")
        for failure in r.failures[:5]:
            lines.append(f"  offending: {failure}")
    return "\n".join(lines)
