"""Facet-type classification and searches over characteristic functions."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

import numpy as np

from .lattice import CharVector, content, det, normalize
from .pair import CharPair, singular_vertices
from .polytope import Polytope, facet_subpolytope
from .symmetry import combinatorial_isomorphism, pair_automorphisms, poset_automorphisms

UNCLASSIFIED = "unclassified"


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class FacetType:
    facet: int
    lam: CharVector
    type_name: str


@dataclass(frozen=True)
class FacetTypeReport:
    facets: tuple[FacetType, ...]
    histogram: dict[str, int]


def classify_facets(cp: CharPair, refs: Mapping[str, Polytope]) -> FacetTypeReport:
    """Match every facet against the named reference polytopes.

    A facet takes the first reference (in mapping order) it is isomorphic to.
    """
    rows = []
    hist = {name: 0 for name in refs}
    for i in range(cp.facet_count):
        sub = facet_subpolytope(cp.polytope, i)
        name = next(
            (nm for nm, ref in refs.items() if combinatorial_isomorphism(sub, ref) is not None),
            UNCLASSIFIED,
        )
        hist[name] = hist.get(name, 0) + 1
        rows.append(FacetType(i, cp.lambdas[i], name))
    return FacetTypeReport(tuple(rows), hist)


def primitive_representatives(n: int, bound: int) -> list[CharVector]:
    """Primitive vectors with entries in [-bound, bound], one per sign class."""
    reps = []
    for v in product(range(-bound, bound + 1), repeat=n):
        if any(v) and content(v) == 1 and normalize(v) == v:
            reps.append(v)
    return reps


def polytope_id(p: Polytope) -> str:
    blob = json.dumps({"dim": p.dim, "facets": p.facet_count, "vertices": p.vertices})
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass
class SearchSummary:
    polytope_id: str
    bound: int
    mode: str
    tested: int = 0
    nonsingular: int = 0
    trivial: int = 0
    seed: int | None = None
    strategy: str | None = None
    witnesses: dict[str, list[list[list[int]]]] = field(
        default_factory=lambda: {"singular": [], "nontrivial": [], "trivial": []}
    )

    @property
    def trivial_fraction(self) -> float | None:
        return self.trivial / self.nonsingular if self.nonsingular else None


class _Tally:
    def __init__(self, summary: SearchSummary, p: Polytope, witness_cap: int):
        self.s = summary
        self.p = p
        self.cap = witness_cap
        self.auts = poset_automorphisms(p)

    def _witness(self, kind: str, lams) -> None:
        bucket = self.s.witnesses[kind]
        entry = [list(v) for v in lams]
        if len(bucket) < self.cap:
            bucket.append(entry)

    def record(self, lams: Sequence[CharVector], known_nonsingular: bool = False) -> None:
        self.s.tested += 1
        if not known_nonsingular and singular_vertices(self.p, lams):
            self._witness("singular", lams)
            return
        self.s.nonsingular += 1
        report = pair_automorphisms(CharPair(self.p, tuple(lams)), poset_auts=self.auts)
        if report.condition_trivial:
            self.s.trivial += 1
            self._witness("trivial", lams)
        else:
            self._witness("nontrivial", lams)

    def record_dead_end(self, lams) -> None:
        self.s.tested += 1
        self._witness("singular", lams)


def enumerate_characteristic_functions(
    p: Polytope,
    bound: int,
    mode: str = "exhaustive",
    samples: int = 1000,
    seed: int = 0,
    budget: int = 1_000_000,
    strategy: str = "sequential",
    witness_cap: int = 5,
) -> SearchSummary:
    """Count non-singular assignments and those satisfying the triviality condition.

    ``mode="exhaustive"`` walks every assignment of sign-class representatives
    with entries in ``[-bound, bound]``, refusing with :class:`BudgetExceeded`
    when there are more than ``budget`` of them. No quotient by GL(n, Z) is
    taken.

    ``mode="random"`` draws ``samples`` assignments from a seeded generator.
    With ``strategy="uniform"`` each facet gets an independent uniform
    representative. With ``strategy="sequential"`` facets are filled in a
    fixed order and each draw is uniform among the representatives that keep
    every vertex completed so far unimodular; a draw with no admissible
    representative ends the sample as singular.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    n, m = p.dim, p.facet_count
    reps = primitive_representatives(n, bound)
    summary = SearchSummary(polytope_id(p), bound, mode)
    tally = _Tally(summary, p, witness_cap)
    if mode == "exhaustive":
        total = len(reps) ** m
        if total > budget:
            raise BudgetExceeded(f"{total} assignments exceed the budget of {budget}")
        for lams in product(reps, repeat=m):
            tally.record(lams)
    elif mode == "random":
        summary.seed = seed
        summary.strategy = strategy
        rng = np.random.default_rng(seed)
        if strategy == "uniform":
            for _ in range(samples):
                idx = rng.integers(len(reps), size=m)
                tally.record([reps[t] for t in idx])
        elif strategy == "sequential":
            _sequential(p, reps, samples, rng, tally)
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for bucket in summary.witnesses.values():
        bucket.sort()
    return summary


def _fill_order(p: Polytope) -> list[int]:
    order = list(p.vertices[0])
    placed = set(order)
    while len(order) < p.facet_count:
        # next facet completing the most vertices
        def gain(i):
            return sum(1 for k in p.facet_vertices[i] if set(p.vertices[k]) - placed <= {i})

        best = max(sorted(set(range(p.facet_count)) - placed), key=gain)
        order.append(best)
        placed.add(best)
    return order


class SequentialSampler:
    """Draws assignments facet by facet, keeping completed vertices unimodular.

    Each facet's vector is uniform among the representatives admissible
    given the facets already placed. ``draw`` returns the assignment and
    whether it completed; an incomplete one has ``None`` for unplaced facets.
    """

    def __init__(self, p: Polytope, reps: Sequence[CharVector]):
        self.p = p
        self.reps = list(reps)
        self.R = np.array(self.reps, dtype=np.int64)
        self.order = _fill_order(p)
        step = {i: d for d, i in enumerate(self.order)}
        self.completes: list[list[int]] = [[] for _ in self.order]
        for k, v in enumerate(p.vertices):
            self.completes[max(step[i] for i in v)].append(k)

    def draw(self, rng: np.random.Generator) -> tuple[list[CharVector | None], bool]:
        lams: list[CharVector | None] = [None] * self.p.facet_count
        for d, i in enumerate(self.order):
            mask = np.ones(len(self.R), dtype=bool)
            for k in self.completes[d]:
                cof = _cofactors(self.p.vertices[k], i, lams)
                mask &= np.abs(self.R @ np.array(cof, dtype=np.int64)) == 1
            choices = np.flatnonzero(mask)
            if len(choices) == 0:
                return lams, False
            lams[i] = self.reps[int(choices[rng.integers(len(choices))])]
        return lams, True


def _sequential(p: Polytope, reps, samples: int, rng, tally: _Tally) -> None:
    sampler = SequentialSampler(p, reps)
    for _ in range(samples):
        lams, complete = sampler.draw(rng)
        if complete:
            tally.record(lams, known_nonsingular=True)
        else:
            tally.record_dead_end([v if v is not None else () for v in lams])


def _cofactors(vertex: Sequence[int], free: int, lams) -> list[int]:
    """Coefficients c with det(vertex vectors, row ``free`` := x) = c . x."""
    rows = [lams[j] for j in vertex if j != free]
    r = list(vertex).index(free)
    n = len(vertex)
    out = []
    for t in range(n):
        minor = [[row[c] for c in range(n) if c != t] for row in rows]
        out.append((-1) ** (r + t) * det(minor))
    return out
