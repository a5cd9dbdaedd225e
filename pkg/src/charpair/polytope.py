"""Combinatorial simple polytopes given by vertex-facet incidence.

A polytope here carries no coordinates. Each vertex is recorded as the
sorted tuple of facets containing it, and every other face is recovered
from those incidences. Realizability is not checked: incidence data that
passes the simplicity/connectivity checks is accepted as is.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence


class PolytopeError(ValueError):
    pass


class NotSimple(PolytopeError):
    pass


class DuplicateVertex(PolytopeError):
    pass


class UnusedFacet(PolytopeError):
    pass


class Disconnected(PolytopeError):
    pass


class DimensionTooSmall(PolytopeError):
    pass


@dataclass(frozen=True)
class Polytope:
    dim: int
    facet_count: int
    vertices: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        verts = tuple(tuple(sorted(int(i) for i in v)) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        _check_incidence(self.dim, self.facet_count, verts)

    @cached_property
    def vertex_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << i for i in v) for v in self.vertices)

    @cached_property
    def vertex_index(self) -> dict[int, int]:
        return {mask: k for k, mask in enumerate(self.vertex_masks)}

    @cached_property
    def facet_vertices(self) -> tuple[frozenset[int], ...]:
        out: list[set[int]] = [set() for _ in range(self.facet_count)]
        for k, v in enumerate(self.vertices):
            for i in v:
                out[i].add(k)
        return tuple(frozenset(s) for s in out)

    def facet_neighbors(self, i: int) -> tuple[int, ...]:
        """Facets meeting facet ``i`` in a codimension-two face."""
        return tuple(sorted({j for k in self.facet_vertices[i] for j in self.vertices[k]} - {i}))

    def vertex_of(self, facets: Iterable[int]) -> int:
        """Index of the vertex lying on exactly these facets."""
        mask = sum(1 << i for i in facets)
        try:
            return self.vertex_index[mask]
        except KeyError:
            raise KeyError(f"no vertex on facets {sorted(facets)}") from None


def _check_incidence(dim: int, m: int, verts: Sequence[tuple[int, ...]]) -> None:
    if dim < 1:
        raise PolytopeError(f"dimension must be at least 1, got {dim}")
    if m < dim + 1:
        raise PolytopeError(f"a {dim}-polytope needs at least {dim + 1} facets, got {m}")
    if not verts:
        raise PolytopeError("polytope has no vertices")
    for k, v in enumerate(verts):
        if len(v) != dim or len(set(v)) != dim:
            raise NotSimple(f"vertex {k} lies on {len(set(v))} facets, expected {dim}")
        if v[0] < 0 or v[-1] >= m:
            raise PolytopeError(f"vertex {k} references a facet outside [0, {m})")
    if len(set(verts)) != len(verts):
        seen: set[tuple[int, ...]] = set()
        dup = next(v for v in verts if v in seen or seen.add(v))
        raise DuplicateVertex(f"vertex {list(dup)} listed twice")
    used = {i for v in verts for i in v}
    missing = sorted(set(range(m)) - used)
    if missing:
        raise UnusedFacet(f"facets {missing} contain no vertex")
    # vertices joined by an edge share dim-1 facets
    sets = [frozenset(v) for v in verts]
    seen_k = {0}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for b in range(len(sets)):
            if b not in seen_k and len(sets[a] & sets[b]) == dim - 1:
                seen_k.add(b)
                queue.append(b)
    if len(seen_k) != len(sets):
        raise Disconnected("the vertex-edge graph is not connected")


def validate_polytope(dim: int, facet_count: int, vertices: Iterable[Iterable[int]]) -> Polytope:
    return Polytope(dim, facet_count, tuple(tuple(v) for v in vertices))


@dataclass(frozen=True, eq=False)
class Face:
    """A face, identified by its vertex set."""

    codim: int
    vertex_set: frozenset[int]
    facet_set: frozenset[int]

    def __eq__(self, other):
        return isinstance(other, Face) and self.vertex_set == other.vertex_set

    def __hash__(self):
        return hash(self.vertex_set)

    @property
    def sort_key(self) -> tuple:
        return (self.codim, tuple(sorted(self.vertex_set)))


@dataclass(frozen=True)
class FaceLattice:
    dim: int
    faces: tuple[Face, ...]

    def leq(self, a: Face, b: Face) -> bool:
        return a.vertex_set <= b.vertex_set

    def by_codim(self, codim: int) -> list[Face]:
        return [f for f in self.faces if f.codim == codim]

    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * self.dim
        for f in self.faces:
            if f.codim > 0:
                counts[self.dim - f.codim] += 1
        return tuple(counts)

    def covers(self, a: Face) -> list[Face]:
        """Faces of one higher dimension containing ``a``."""
        return [b for b in self.faces if b.codim == a.codim - 1 and a.vertex_set < b.vertex_set]

    def is_graded(self) -> bool:
        """Every cover relation drops the codimension by exactly one."""
        for a in self.faces:
            for b in self.faces:
                if a.vertex_set < b.vertex_set and b.codim >= a.codim:
                    return False
                if a.vertex_set < b.vertex_set and b.codim < a.codim - 1:
                    # must go through an intermediate face
                    if not any(a.vertex_set < c.vertex_set < b.vertex_set for c in self.faces):
                        return False
        return True


def face_from_facets(p: Polytope, facets: Iterable[int]) -> Face | None:
    """Intersection of the given facets, or None when it is empty."""
    mask = sum(1 << i for i in facets)
    vs = frozenset(k for k, vm in enumerate(p.vertex_masks) if vm & mask == mask)
    if not vs:
        return None
    return _face(p, vs)


def _face(p: Polytope, vs: frozenset[int]) -> Face:
    common = p.vertex_masks[next(iter(vs))]
    for k in vs:
        common &= p.vertex_masks[k]
    fs = frozenset(i for i in range(p.facet_count) if common >> i & 1)
    return Face(codim=len(fs), vertex_set=vs, facet_set=fs)


def build_face_lattice(p: Polytope) -> FaceLattice:
    seen: dict[frozenset[int], Face] = {}
    for v in p.vertices:
        for k in range(p.dim + 1):
            for sub in combinations(v, k):
                face = face_from_facets(p, sub)
                if face.vertex_set not in seen:
                    seen[face.vertex_set] = face
    faces = sorted(seen.values(), key=lambda f: f.sort_key)
    return FaceLattice(p.dim, tuple(faces))


def f_vector(p: Polytope) -> tuple[int, ...]:
    """``(f_0, ..., f_{n-1})``, the number of faces of each dimension."""
    return build_face_lattice(p).f_vector()


def facet_subpolytope(p: Polytope, i: int) -> Polytope:
    """Facet ``i`` as an (n-1)-polytope, its facets numbered by increasing neighbor index."""
    if p.dim < 2:
        raise DimensionTooSmall("facets of a 1-polytope are points")
    if not 0 <= i < p.facet_count:
        raise IndexError(f"facet {i} out of range")
    nbrs = p.facet_neighbors(i)
    relabel = {j: t for t, j in enumerate(nbrs)}
    verts = [tuple(relabel[j] for j in p.vertices[k] if j != i) for k in sorted(p.facet_vertices[i])]
    return Polytope(p.dim - 1, len(nbrs), tuple(verts))


def relabel_polytope(p: Polytope, facet_perm: Sequence[int]) -> Polytope:
    """Rename facet i to ``facet_perm[i]``."""
    return Polytope(p.dim, p.facet_count, tuple(tuple(facet_perm[i] for i in v) for v in p.vertices))


# --- basic constructions -------------------------------------------------


def simplex(n: int) -> Polytope:
    """The n-simplex: n+1 facets, each vertex misses exactly one."""
    facets = range(n + 1)
    return Polytope(n, n + 1, tuple(tuple(j for j in facets if j != i) for i in reversed(facets)))


def interval() -> Polytope:
    return simplex(1)


def product(p: Polytope, q: Polytope) -> Polytope:
    """Facets of p come first, then those of q shifted by ``p.facet_count``."""
    off = p.facet_count
    verts = tuple(u + tuple(j + off for j in w) for u in p.vertices for w in q.vertices)
    return Polytope(p.dim + q.dim, p.facet_count + q.facet_count, verts)


def cut_vertex(p: Polytope, v: int) -> Polytope:
    """Truncate vertex ``v``; the new facet gets index ``p.facet_count``.

    Vertex ``v`` disappears and n new vertices are appended, one per facet
    through ``v``, in increasing facet order.
    """
    if p.dim < 2:
        raise DimensionTooSmall("cutting a vertex of a 1-polytope removes a facet")
    new = p.facet_count
    old = p.vertices[v]
    kept = [w for k, w in enumerate(p.vertices) if k != v]
    added = [tuple(sorted([j for j in old if j != i] + [new])) for i in old]
    return Polytope(p.dim, p.facet_count + 1, tuple(kept + added))
