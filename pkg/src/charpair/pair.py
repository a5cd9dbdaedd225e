"""Characteristic pairs: a simple polytope with a circle subgroup on each facet.

Circle subgroups of T^n are primitive integer vectors up to sign; they are
stored in the canonical form produced by :func:`charpair.lattice.normalize`
and compared only in that form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .lattice import (
    CharVector,
    IntMatrix,
    Sublattice,
    det,
    is_primitive,
    matvec,
    normalize,
    saturated_span,
)
from .polytope import Face, Polytope, relabel_polytope


class PairError(ValueError):
    pass


class BadLength(PairError):
    pass


class NotPrimitive(PairError):
    pass


class Singular(PairError):
    """Some vertex determinant is not +-1; ``offending`` lists (vertex, det)."""

    def __init__(self, offending: list[tuple[int, int]]):
        self.offending = offending
        shown = ", ".join(f"vertex {v} (det {d})" for v, d in offending[:5])
        more = f" and {len(offending) - 5} more" if len(offending) > 5 else ""
        super().__init__(f"non-singularity fails at {shown}{more}")


def _check_vectors(p: Polytope, lambdas: Sequence[Sequence[int]]) -> tuple[CharVector, ...]:
    if len(lambdas) != p.facet_count:
        raise BadLength(f"expected {p.facet_count} vectors, one per facet, got {len(lambdas)}")
    out = []
    for i, v in enumerate(lambdas):
        if len(v) != p.dim:
            raise BadLength(f"vector for facet {i} has length {len(v)}, expected {p.dim}")
        if not is_primitive(v):
            raise NotPrimitive(f"vector {list(v)} for facet {i} is not primitive")
        out.append(normalize(v))
    return tuple(out)


def singular_vertices(p: Polytope, lambdas: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    """Vertices whose facet vectors do not form a basis, with their determinants."""
    bad = []
    for k, v in enumerate(p.vertices):
        d = det([lambdas[i] for i in v])
        if abs(d) != 1:
            bad.append((k, d))
    return bad


@dataclass(frozen=True)
class CharPair:
    """A polytope with one circle subgroup per facet, non-singular at every vertex.

    Construction validates; a singular assignment raises :class:`Singular`.
    """

    polytope: Polytope
    lambdas: tuple[CharVector, ...]

    def __post_init__(self):
        vecs = _check_vectors(self.polytope, self.lambdas)
        object.__setattr__(self, "lambdas", vecs)
        bad = singular_vertices(self.polytope, vecs)
        if bad:
            raise Singular(bad)

    @property
    def dim(self) -> int:
        return self.polytope.dim

    @property
    def facet_count(self) -> int:
        return self.polytope.facet_count

    def vertex_basis(self, v: int) -> list[CharVector]:
        return [self.lambdas[i] for i in self.polytope.vertices[v]]


def validate_nonsingular(p: Polytope, lambdas: Sequence[Sequence[int]]) -> CharPair:
    return CharPair(p, tuple(tuple(v) for v in lambdas))


def face_subtorus(cp: CharPair, face: Face) -> Sublattice:
    """Lattice of the subtorus fixing ``face``: the saturated span of its facet vectors."""
    return saturated_span([cp.lambdas[i] for i in sorted(face.facet_set)], cp.dim)


def relabel_pair(cp: CharPair, facet_perm: Sequence[int]) -> CharPair:
    """Rename facet i to ``facet_perm[i]``, carrying its vector along."""
    lam = [None] * cp.facet_count
    for i, j in enumerate(facet_perm):
        lam[j] = cp.lambdas[i]
    return CharPair(relabel_polytope(cp.polytope, facet_perm), tuple(lam))


def transform_pair(cp: CharPair, g: IntMatrix) -> CharPair:
    """Apply a change of torus coordinates to every facet vector."""
    return CharPair(cp.polytope, tuple(matvec(g, v) for v in cp.lambdas))


def gl_equivalent(a: CharPair, b: CharPair) -> tuple[tuple[int, ...], IntMatrix] | None:
    """A facet bijection f and g in GL(n, Z) with g . lambda_a(F) = +-lambda_b(f(F)).

    Returns None when the two pairs are not equivalent.
    """
    from .symmetry import pair_isomorphisms

    for f, g in pair_isomorphisms(a, b):
        return f.facet_perm, g
    return None
