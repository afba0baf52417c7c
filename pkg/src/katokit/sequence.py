"""Dloussky sequences of intermediate Kato surfaces.

A sequence is a cyclic list of simple components ``[s_k0 s_k1 ... s_k(p-1) r_m]``.
Each singular block ``s_k`` expands to ``(k+2, 2, ..., 2)`` of length ``k`` and
the regular block ``r_m`` to ``m`` twos.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import MalformedCycle, NotIntermediate, SequenceSyntaxError, ZeroLength

ENOKI = "Enoki-type"
INOUE_HIRZEBRUCH = "Inoue-Hirzebruch-type"


@dataclass(frozen=True)
class SimpleComponent:
    singular: tuple[int, ...]
    regular_len: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "singular", tuple(int(k) for k in self.singular))
        if not self.singular:
            raise NotIntermediate(ENOKI, "component has no singular block")
        if any(k < 1 for k in self.singular) or self.regular_len < 1:
            raise ZeroLength(f"block lengths must be >= 1, got {self}")

    @property
    def p(self) -> int:
        return len(self.singular)

    @property
    def m(self) -> int:
        return self.regular_len

    def entries(self) -> tuple[int, ...]:
        out: list[int] = []
        for k in self.singular:
            out.append(k + 2)
            out.extend([2] * (k - 1))
        out.extend([2] * self.regular_len)
        return tuple(out)

    def __len__(self) -> int:
        return sum(self.singular) + self.regular_len

    @property
    def alpha(self) -> int:
        """Branch length: sum of the even-indexed singular lengths."""
        return sum(self.singular[0::2])

    @property
    def beta(self) -> int:
        return sum(self.singular[1::2])

    def __str__(self) -> str:
        return " ".join([f"s{k}" for k in self.singular] + [f"r{self.regular_len}"])


@dataclass(frozen=True)
class DlousskySequence:
    components: tuple[SimpleComponent, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise SequenceSyntaxError("a sequence needs at least one component")

    @classmethod
    def of(cls, *components: tuple[Sequence[int], int]) -> DlousskySequence:
        """Build from ``(singular, m)`` pairs, e.g. ``DlousskySequence.of(((1, 2), 1))``."""
        return cls(tuple(SimpleComponent(tuple(s), m) for s, m in components))

    @property
    def N(self) -> int:
        return len(self.components)

    @property
    def b2(self) -> int:
        return sum(len(c) for c in self.components)

    def entries(self) -> tuple[int, ...]:
        return tuple(itertools.chain.from_iterable(c.entries() for c in self.components))

    def offsets(self) -> tuple[int, ...]:
        """Position of the first entry of each component in :meth:`entries`."""
        out, pos = [], 0
        for c in self.components:
            out.append(pos)
            pos += len(c)
        return tuple(out)

    def key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c.entries() for c in self.components)

    def __str__(self) -> str:
        return "[" + " | ".join(str(c) for c in self.components) + "]"


@dataclass(frozen=True)
class SequenceStats:
    b2: int
    sigma: int
    alpha_per_component: tuple[int, ...]
    beta_per_component: tuple[int, ...]
    b2_branches: int
    b2_cycle: int
    m_total: int
    branch_count: int


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(?P<punct>[\[\]|])|(?P<kind>[sr])\s*(?P<num>\d+))")


def _tokenize(text: str) -> list[tuple[str, int | None]]:
    tokens: list[tuple[str, int | None]] = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        match = _TOKEN.match(stripped, pos)
        if match is None:
            raise SequenceSyntaxError(f"unexpected input at offset {pos}: {stripped[pos:pos + 10]!r}")
        if match.group("punct"):
            tokens.append((match.group("punct"), None))
        else:
            tokens.append((match.group("kind"), int(match.group("num"))))
        pos = match.end()
    return tokens


def parse_text(text: str) -> DlousskySequence:
    """Parse ``"[s1 s2 r1 | s3 r2]"`` into a validated sequence."""
    tokens = _tokenize(text)
    if len(tokens) < 2 or tokens[0][0] != "[" or tokens[-1][0] != "]":
        raise SequenceSyntaxError(f"sequence must be enclosed in brackets: {text!r}")
    body = tokens[1:-1]
    if any(kind in "[]" for kind, _ in body):
        raise SequenceSyntaxError(f"nested or stray bracket in {text!r}")

    groups: list[list[tuple[str, int | None]]] = [[]]
    for tok in body:
        if tok[0] == "|":
            groups.append([])
        else:
            groups[-1].append(tok)

    components = []
    for group in groups:
        if not group:
            raise SequenceSyntaxError(f"empty component in {text!r}")
        for kind, num in group:
            if num == 0:
                raise ZeroLength(f"{kind}0 is not allowed in {text!r}")
        kinds = [kind for kind, _ in group]
        if "s" not in kinds:
            raise NotIntermediate(ENOKI, f"component {group} has no singular block")
        if "r" not in kinds:
            raise NotIntermediate(INOUE_HIRZEBRUCH, f"component {group} has no regular block")
        if kinds.count("r") > 1 or kinds[-1] != "r":
            raise SequenceSyntaxError(f"a component is ('s' INT)+ 'r' INT; got {group} in {text!r}")
        components.append(SimpleComponent(tuple(n for _, n in group[:-1]), group[-1][1]))
    return DlousskySequence(tuple(components))


def parse_entries_text(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise SequenceSyntaxError(f"entry list must be comma-separated integers: {text!r}") from exc
    return values


def parse_any(text: str) -> DlousskySequence:
    """Bracket grammar if the text starts with ``[``, otherwise an entry list."""
    if text.lstrip().startswith("["):
        return parse_text(text)
    return decompose_entries(parse_entries_text(text))


def decompose_entries(entries: Sequence[int]) -> DlousskySequence:
    """Group a cyclic entry list into singular and regular blocks.

    Every entry ``v >= 3`` claims the ``v - 3`` twos after it; the unclaimed
    twos are regular. The result is rotated to the first component boundary
    at or after position 0, so the caller's component order is kept.
    """
    entries = tuple(entries)
    n = len(entries)
    if n == 0:
        raise SequenceSyntaxError("empty entry list")
    if any(v < 2 for v in entries):
        raise SequenceSyntaxError(f"entries must be integers >= 2, got {entries}")
    singular_pos = [i for i, v in enumerate(entries) if v >= 3]
    if not singular_pos:
        raise NotIntermediate(ENOKI, "no entry >= 3")

    claimed = [False] * n
    for i in singular_pos:
        need = entries[i] - 3
        if need >= n:
            raise MalformedCycle(f"entry {entries[i]} at {i} needs {need} twos in a cycle of length {n}")
        for step in range(1, need + 1):
            j = (i + step) % n
            if entries[j] != 2 or claimed[j]:
                raise MalformedCycle(f"entry {entries[i]} at {i} is missing its twos (position {j})")
            claimed[j] = True

    regular = [v == 2 and not claimed[i] for i, v in enumerate(entries)]
    if not any(regular):
        raise NotIntermediate(INOUE_HIRZEBRUCH, "no regular twos")

    start = next(i for i in singular_pos if regular[i - 1])
    order = [(start + i) % n for i in range(n)]

    components = []
    singular: list[int] = []
    m = 0
    for idx in order:
        v = entries[idx]
        if v >= 3:
            if m:
                components.append(SimpleComponent(tuple(singular), m))
                singular, m = [], 0
            singular.append(v - 2)
        elif regular[idx]:
            m += 1
    components.append(SimpleComponent(tuple(singular), m))
    return DlousskySequence(tuple(components))


def expand(seq: DlousskySequence) -> tuple[int, ...]:
    return seq.entries()


def stats(seq: DlousskySequence) -> SequenceStats:
    comps = seq.components
    alphas = tuple(c.alpha for c in comps)
    betas = tuple(c.beta for c in comps)
    m_total = sum(c.m for c in comps)
    return SequenceStats(
        b2=seq.b2,
        sigma=sum(seq.entries()),
        alpha_per_component=alphas,
        beta_per_component=betas,
        b2_branches=sum(alphas),
        b2_cycle=sum(betas) + m_total,
        m_total=m_total,
        branch_count=seq.N,
    )


def rotate(seq: DlousskySequence, r: int) -> DlousskySequence:
    r %= seq.N
    return DlousskySequence(seq.components[r:] + seq.components[:r])


def canonical_form(seq: DlousskySequence) -> DlousskySequence:
    """Lexicographically least rotation, comparing components by their entries."""
    best = min(range(seq.N), key=lambda r: rotate(seq, r).key())
    return rotate(seq, best)


def is_canonical(seq: DlousskySequence) -> bool:
    return canonical_form(seq) == seq


def _components_of_length(length: int) -> Iterator[SimpleComponent]:
    # compositions of `length` into at least two parts; the last part is m
    for cuts in range(1, length):
        for points in itertools.combinations(range(1, length), cuts):
            bounds = (0,) + points + (length,)
            parts = [bounds[i + 1] - bounds[i] for i in range(len(bounds) - 1)]
            yield SimpleComponent(tuple(parts[:-1]), parts[-1])


def _component_lists(total: int) -> Iterator[tuple[SimpleComponent, ...]]:
    if total == 0:
        yield ()
        return
    for length in range(2, total + 1):
        for comp in _components_of_length(length):
            for rest in _component_lists(total - length):
                yield (comp,) + rest


def enumerate_sequences(b2: int) -> list[DlousskySequence]:
    """All canonical intermediate sequences with ``b2`` entries, sorted by key."""
    if b2 < 2:
        return []
    found: dict[tuple[tuple[int, ...], ...], DlousskySequence] = {}
    for comps in _component_lists(b2):
        seq = DlousskySequence(comps)
        key = seq.key()
        if key not in found and canonical_form(seq).key() == key:
            found[key] = seq
    return [found[k] for k in sorted(found)]


def enumerate_up_to(b2_max: int) -> Iterable[DlousskySequence]:
    for b2 in range(2, b2_max + 1):
        yield from enumerate_sequences(b2)
