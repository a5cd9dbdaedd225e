"""Automorphism groups of polytopes and of characteristic pairs.

Polytope automorphisms are facet permutations that carry vertices to
vertices. They are found by backtracking over facet images, with candidates
restricted by colour refinement of the facet-vertex incidence graph.

A pair automorphism is ``(f, g)`` with ``g`` in GL(n, Z) and
``g . lambda(F) = +-lambda(f(F))`` for every facet. Fixing one vertex, ``g``
is pinned down by where it sends that vertex's n facet vectors, up to one
sign per vector, so every ``f`` has at most ``2**n`` lifts to try.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .lattice import IntMatrix, det, identity, inverse_unimodular, matmul, matvec, solve_with_inverse, transpose
from .pair import CharPair
from .polytope import Polytope


class GroupCheckFailed(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class PosetAut:
    """Facet bijection with the vertex bijection it induces.

    ``facet_perm[i]`` is the image of facet i, ``vertex_perm[k]`` the index of
    the image of vertex k. Between two different polytopes the same record
    describes an isomorphism.
    """

    facet_perm: tuple[int, ...]
    vertex_perm: tuple[int, ...]

    @classmethod
    def from_facet_map(cls, p: Polytope, q: Polytope, facet_perm: Sequence[int]) -> "PosetAut":
        vperm = []
        for v in p.vertices:
            vperm.append(q.vertex_index[sum(1 << facet_perm[i] for i in v)])
        return cls(tuple(facet_perm), tuple(vperm))

    @classmethod
    def identity(cls, p: Polytope) -> "PosetAut":
        return cls(tuple(range(p.facet_count)), tuple(range(len(p.vertices))))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.facet_perm))

    def __mul__(self, other: "PosetAut") -> "PosetAut":
        # (self * other)(x) = self(other(x))
        return PosetAut(
            tuple(self.facet_perm[i] for i in other.facet_perm),
            tuple(self.vertex_perm[k] for k in other.vertex_perm),
        )

    def inverse(self) -> "PosetAut":
        fi = [0] * len(self.facet_perm)
        for i, j in enumerate(self.facet_perm):
            fi[j] = i
        vi = [0] * len(self.vertex_perm)
        for k, l in enumerate(self.vertex_perm):
            vi[l] = k
        return PosetAut(tuple(fi), tuple(vi))


@dataclass(frozen=True, order=True)
class PairAut:
    f: PosetAut
    g: IntMatrix

    def __mul__(self, other: "PairAut") -> "PairAut":
        return PairAut(self.f * other.f, matmul(self.g, other.g))

    def inverse(self) -> "PairAut":
        return PairAut(self.f.inverse(), inverse_unimodular(self.g))


def _refine(polys: Sequence[Polytope]) -> list[list[int]]:
    """Facet colours from 1-WL refinement run jointly on all incidence graphs.

    Colours are comparable across the polytopes, so facets that can
    correspond under an isomorphism always share a colour.
    """
    nodes = []  # (poly index, is_vertex, local index)
    adj: list[list[int]] = []
    for t, p in enumerate(polys):
        base = len(nodes)
        m = p.facet_count
        for i in range(m):
            nodes.append((t, 0, i))
            adj.append([base + m + k for k in sorted(p.facet_vertices[i])])
        for k, v in enumerate(p.vertices):
            nodes.append((t, 1, k))
            adj.append([base + i for i in v])
    colors = [(kind, len(adj[x])) for x, (_, kind, _) in enumerate(nodes)]
    colors = _compress(colors)
    classes = len(set(colors))
    while True:
        sigs = [(colors[x], tuple(sorted(colors[y] for y in adj[x]))) for x in range(len(nodes))]
        colors = _compress(sigs)
        if len(set(colors)) == classes:
            break
        classes = len(set(colors))
    out: list[list[int]] = [[] for _ in polys]
    for x, (t, kind, _) in enumerate(nodes):
        if kind == 0:
            out[t].append(colors[x])
    return out


def _compress(sigs):
    table = {s: c for c, s in enumerate(sorted(set(sigs)))}
    return [table[s] for s in sigs]


def _search_order(p: Polytope, colors: list[int]) -> list[int]:
    size = Counter(colors)
    m = p.facet_count
    adjacent = [set(p.facet_neighbors(i)) for i in range(m)]
    order: list[int] = []
    left = set(range(m))
    while left:
        placed = set(order)
        best = min(left, key=lambda i: (-len(adjacent[i] & placed), size[colors[i]], i))
        order.append(best)
        left.remove(best)
    return order


def isomorphisms(p: Polytope, q: Polytope) -> Iterator[PosetAut]:
    """Every incidence-preserving facet bijection from p onto q."""
    if (p.dim, p.facet_count, len(p.vertices)) != (q.dim, q.facet_count, len(q.vertices)):
        return
    cp, cq = _refine([p, q])
    if Counter(cp) != Counter(cq):
        return
    m = p.facet_count
    order = _search_order(p, cp)
    pos = {i: d for d, i in enumerate(order)}
    candidates = {c: [j for j in range(m) if cq[j] == c] for c in set(cq)}
    p_common = [[len(p.facet_vertices[i] & p.facet_vertices[j]) for j in range(m)] for i in range(m)]
    q_common = [[len(q.facet_vertices[i] & q.facet_vertices[j]) for j in range(m)] for i in range(m)]
    # vertices whose facets are all placed once depth d is filled
    completes: list[list[tuple[int, ...]]] = [[] for _ in range(m)]
    for v in p.vertices:
        completes[max(pos[i] for i in v)].append(v)
    q_masks = set(q.vertex_masks)
    image = [-1] * m
    used = [False] * m

    def extend(depth: int) -> Iterator[PosetAut]:
        if depth == m:
            yield PosetAut.from_facet_map(p, q, image)
            return
        i = order[depth]
        for j in candidates[cp[i]]:
            if used[j]:
                continue
            if any(p_common[i][a] != q_common[j][image[a]] for a in order[:depth]):
                continue
            image[i] = j
            if all(sum(1 << image[t] for t in v) in q_masks for v in completes[depth]):
                used[j] = True
                yield from extend(depth + 1)
                used[j] = False
            image[i] = -1

    yield from extend(0)


def poset_automorphisms(p: Polytope) -> list[PosetAut]:
    return sorted(isomorphisms(p, p))


def combinatorial_isomorphism(p: Polytope, q: Polytope) -> PosetAut | None:
    return next(isomorphisms(p, q), None)


def pair_isomorphisms(
    a: CharPair,
    b: CharPair,
    reference_vertex: int = 0,
    poset_maps: Sequence[PosetAut] | None = None,
) -> Iterator[tuple[PosetAut, IntMatrix]]:
    """All ``(f, g)`` with ``g . lambda_a(F) = +-lambda_b(f(F))`` for every facet F."""
    if a.dim != b.dim:
        return
    n = a.dim
    ref = a.polytope.vertices[reference_vertex]
    basis_inv = inverse_unimodular(transpose([a.lambdas[i] for i in ref]))
    maps = isomorphisms(a.polytope, b.polytope) if poset_maps is None else poset_maps
    for f in maps:
        images = [b.lambdas[f.facet_perm[i]] for i in ref]
        targets = [b.lambdas[j] for j in f.facet_perm]
        for signs in product((1, -1), repeat=n):
            g = solve_with_inverse(basis_inv, images, signs)
            if abs(det(g)) != 1:
                continue
            ok = True
            for lam, tgt in zip(a.lambdas, targets):
                w = matvec(g, lam)
                if w != tgt and tuple(-x for x in w) != tgt:
                    ok = False
                    break
            if ok:
                yield f, g


@dataclass(frozen=True)
class AutReport:
    """The group aut(P, lambda) together with its projection to aut(P)."""

    dim: int
    pair_auts: tuple[PairAut, ...]
    poset_auts: tuple[PosetAut, ...]
    image: tuple[PosetAut, ...]
    kernel: tuple[PairAut, ...]
    condition_trivial: bool

    @property
    def order(self) -> int:
        return len(self.pair_auts)

    def verify(self) -> None:
        """Raise :class:`GroupCheckFailed` unless the group-level invariants hold."""
        n = self.dim
        elems = set(self.pair_auts)
        if len(elems) != len(self.pair_auts):
            raise GroupCheckFailed("duplicate elements")
        if not _is_closed(elems, n):
            raise GroupCheckFailed("automorphisms are not closed under composition")
        for x in self.pair_auts:
            if x.inverse() not in elems:
                raise GroupCheckFailed(f"inverse of {x} missing")
        eye = identity(n)
        for x in self.kernel:
            if not x.f.is_identity() or matmul(x.g, x.g) != eye:
                raise GroupCheckFailed(f"kernel element {x} is not an involution")
        if (2**n) % len(self.kernel):
            raise GroupCheckFailed(f"kernel order {len(self.kernel)} does not divide 2^{n}")
        if len(self.pair_auts) != len(self.kernel) * len(self.image):
            raise GroupCheckFailed("|aut| != |kernel| * |image|")


def _is_closed(elems: set[PairAut], n: int) -> bool:
    # grow <S> from generators drawn out of elems; elems is a group iff <elems> == elems
    ident = None
    for x in elems:
        if x.f.is_identity() and x.g == identity(n):
            ident = x
    if ident is None:
        return False
    gens: list[PairAut] = []
    span = {ident}
    for x in sorted(elems):
        if x in span:
            continue
        gens.append(x)
        span = {ident}
        frontier = [ident]
        while frontier:
            h = frontier.pop()
            for s in gens:
                hs = h * s
                if hs not in elems:
                    return False
                if hs not in span:
                    span.add(hs)
                    frontier.append(hs)
    return span == elems


def pair_automorphisms(
    cp: CharPair,
    reference_vertex: int = 0,
    poset_auts: Sequence[PosetAut] | None = None,
    verify: bool = True,
) -> AutReport:
    if poset_auts is None:
        poset_auts = poset_automorphisms(cp.polytope)
    found = sorted(
        PairAut(f, g) for f, g in pair_isomorphisms(cp, cp, reference_vertex, poset_auts)
    )
    image = sorted({x.f for x in found})
    kernel = [x for x in found if x.f.is_identity()]
    report = AutReport(
        dim=cp.dim,
        pair_auts=tuple(found),
        poset_auts=tuple(sorted(poset_auts)),
        image=tuple(image),
        kernel=tuple(kernel),
        condition_trivial=all(f.is_identity() for f in image),
    )
    if verify:
        report.verify()
    return report


def check_condition(cp: CharPair, **kwargs) -> tuple[bool, AutReport]:
    """Whether every automorphism of the pair acts trivially on the polytope."""
    report = pair_automorphisms(cp, **kwargs)
    return report.condition_trivial, report
