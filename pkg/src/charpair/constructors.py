"""Standard characteristic pairs and operations that build new ones.

Facet order is fixed so that output is reproducible: interval facets come
first in construction order, then simplex facets with coordinate vectors in
increasing order, then the all-ones simplex facet, and cut facets last.
"""

from __future__ import annotations

from typing import Sequence

from .lattice import normalize
from .pair import CharPair, Singular
from .polytope import Polytope, cut_vertex, interval, product, simplex


class BadParameters(ValueError):
    pass


class CutNotNonsingular(ValueError):
    pass


def _unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(int(j == i) for j in range(n))


def simplex_pair(n: int) -> CharPair:
    """Delta^n with e_1, ..., e_n and (1, ..., 1), the pair of CP^n."""
    if n < 1:
        raise BadParameters("n must be at least 1")
    lams = [_unit(n, i) for i in range(n)] + [(1,) * n]
    return CharPair(simplex(n), tuple(lams))


def interval_pair() -> CharPair:
    return simplex_pair(1)


def product_pair(a: CharPair, b: CharPair) -> CharPair:
    na, nb = a.dim, b.dim
    lams = [tuple(v) + (0,) * nb for v in a.lambdas] + [(0,) * na + tuple(v) for v in b.lambdas]
    return CharPair(product(a.polytope, b.polytope), tuple(lams))


def vertex_cut(cp: CharPair, v: int) -> CharPair:
    """Blow up the fixed point over vertex ``v``.

    The new facet carries the normalized sum of the vectors at ``v``.
    """
    if not 0 <= v < len(cp.polytope.vertices):
        raise IndexError(f"vertex {v} out of range")
    basis = cp.vertex_basis(v)
    new = normalize([sum(col) for col in zip(*basis)])
    try:
        return CharPair(cut_vertex(cp.polytope, v), cp.lambdas + (new,))
    except Singular as exc:
        raise CutNotNonsingular(str(exc)) from exc


def bott_pair(k: Sequence[int]) -> CharPair:
    """Rank m+1 pair over I x Delta^m for the twisting integers ``k`` (length m).

    The interval facets carry e_1 and (1, k_1, ..., k_m); the simplex facets
    carry e_2, ..., e_{m+1} and (0, 1, ..., 1). Non-singular for every k.
    """
    k = [int(x) for x in k]
    m = len(k)
    if m < 1:
        raise BadParameters("need at least one twisting integer")
    n = m + 1
    lams = [_unit(n, 0), normalize([1] + k)]
    lams += [_unit(n, i) for i in range(1, n)]
    lams.append((0,) + (1,) * m)
    return CharPair(product(interval(), simplex(m)), tuple(lams))


def example_m2(n: int, k: Sequence[int]) -> CharPair:
    """The blow-up of CP^1 x M_0 at one fixed point, with M_0 = bott_pair(k).

    ``k`` holds the n-2 first Chern classes of the nontrivial summands. The cut
    vertex lies on facets 0 (e_1), 2 (e_2) and 4..n+1 (e_3, ..., e_n).
    """
    k = [int(x) for x in k]
    if n < 4:
        raise BadParameters(f"n must exceed 3, got {n}")
    if len(k) != n - 2:
        raise BadParameters(f"need n-2 = {n - 2} twisting integers, got {len(k)}")
    if len(set(k)) != len(k):
        raise BadParameters(f"twisting integers {k} are not pairwise distinct")
    if any(x in (0, 1) for x in k):
        raise BadParameters(f"twisting integers {k} must avoid 0 and 1")
    m1 = product_pair(interval_pair(), bott_pair(k))
    v = m1.polytope.vertex_of([0, 2] + list(range(4, n + 2)))
    return vertex_cut(m1, v)


def blowup_references(n: int) -> dict[str, Polytope]:
    """The five facet types of the blown-up polytope in dimension n, by name."""
    if n < 4:
        raise BadParameters(f"n must exceed 3, got {n}")
    I = interval()
    ixi = product(I, I)
    i_delta = product(I, simplex(n - 2))
    ixi_delta = product(ixi, simplex(n - 3))
    return {
        f"Δ^{n - 1}": simplex(n - 1),
        f"I×I×Δ^{n - 3}": ixi_delta,
        f"I×Δ^{n - 2}": i_delta,
        f"I×Δ^{n - 2} with vertex cut off": cut_vertex(i_delta, 0),
        f"I×I×Δ^{n - 3} with vertex cut off": cut_vertex(ixi_delta, 0),
    }
