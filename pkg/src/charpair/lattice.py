"""Exact integer linear algebra on Z^n.

Vectors are tuples of ints and matrices are tuples of row tuples. Everything
is exact; values leaving the signed 64-bit range raise ``IntegerOverflow``
instead of silently growing, so a runaway computation fails loudly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

CharVector = tuple[int, ...]
IntMatrix = tuple[tuple[int, ...], ...]

INT64_MAX = 2**63 - 1


class LatticeError(ValueError):
    pass


class ZeroVector(LatticeError):
    pass


class NotUnimodularBasis(LatticeError):
    pass


class IntegerOverflow(ArithmeticError):
    pass


def _checked(x: int) -> int:
    if x > INT64_MAX or x < -INT64_MAX:
        raise IntegerOverflow(f"integer {x} outside the int64 range")
    return x


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def is_primitive(v: Sequence[int]) -> bool:
    return content(v) == 1


def normalize(v: Sequence[int]) -> CharVector:
    """Primitive representative of the line through ``v``, first nonzero entry positive."""
    g = content(v)
    if g == 0:
        raise ZeroVector("cannot normalize the zero vector")
    out = [x // g for x in v]
    lead = next(x for x in out if x != 0)
    if lead < 0:
        out = [-x for x in out]
    return tuple(out)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(M: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(zip(*M))


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    Bt = list(zip(*B))
    return tuple(
        tuple(_checked(sum(a * b for a, b in zip(row, col))) for col in Bt) for row in A
    )


def matvec(M: Sequence[Sequence[int]], v: Sequence[int]) -> CharVector:
    return tuple(_checked(sum(a * b for a, b in zip(row, v))) for row in M)


def det(M: Sequence[Sequence[int]]) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise LatticeError("determinant of a non-square matrix")
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                A[i][j] = _checked((A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev)
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def inverse_unimodular(M: Sequence[Sequence[int]]) -> IntMatrix:
    """Integer inverse of a matrix with determinant +-1."""
    n = len(M)
    if abs(det(M)) != 1:
        raise NotUnimodularBasis("matrix is not unimodular")
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return tuple(tuple(_checked(int(x)) for x in row[n:]) for row in A)


def solve_against_basis(
    basis: Sequence[Sequence[int]],
    images: Sequence[Sequence[int]],
    signs: Sequence[int],
) -> tuple[IntMatrix, int]:
    """The matrix g with ``g @ basis[k] == signs[k] * images[k]`` for every k.

    ``basis`` must be a unimodular system, which makes g integral. Returns g
    together with its determinant.
    """
    B = transpose(basis)
    try:
        Binv = inverse_unimodular(B)
    except NotUnimodularBasis:
        raise NotUnimodularBasis("reference vectors do not form a basis of Z^n") from None
    g = solve_with_inverse(Binv, images, signs)
    return g, det(g)


def solve_with_inverse(
    basis_inverse: IntMatrix,
    images: Sequence[Sequence[int]],
    signs: Sequence[int],
) -> IntMatrix:
    C = transpose([tuple(s * x for x in img) for s, img in zip(signs, images)])
    return matmul(C, basis_inverse)


def hermite_rows(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form; zero rows are dropped.

    Pivots are positive and entries above a pivot are reduced into
    ``[0, pivot)``. Only unimodular row operations are used, so the
    result spans the same lattice as ``rows``.
    """
    A = [list(r) for r in rows]
    if not A:
        return []
    m, ncols = len(A), len(A[0])
    top = 0
    for col in range(ncols):
        if top == m:
            break
        while True:
            nz = [i for i in range(top, m) if A[i][col] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(A[i][col]))
            A[top], A[best] = A[best], A[top]
            piv = A[top][col]
            clean = True
            for i in range(top + 1, m):
                q = A[i][col] // piv
                if q:
                    A[i] = [_checked(x - q * y) for x, y in zip(A[i], A[top])]
                if A[i][col] != 0:
                    clean = False
            if clean:
                break
        if A[top][col] == 0:
            continue
        if A[top][col] < 0:
            A[top] = [-x for x in A[top]]
        piv = A[top][col]
        for i in range(top):
            q = A[i][col] // piv
            if q:
                A[i] = [_checked(x - q * y) for x, y in zip(A[i], A[top])]
        top += 1
    return [r for r in A if any(r)]


def integer_kernel(rows: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Basis of ``{x in Z^n : r . x = 0 for every r in rows}``."""
    k = len(rows)
    aug = [[rows[i][j] for i in range(k)] + [int(j == c) for c in range(n)] for j in range(n)]
    H = hermite_rows(aug)
    return [r[k:] for r in H if not any(r[:k])]


@dataclass(frozen=True)
class Sublattice:
    """A saturated sublattice of Z^n, stored by its Hermite basis."""

    n: int
    basis: tuple[CharVector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        if not any(v):
            return True
        if self.rank == 0:
            return False
        # saturated, so membership is the same as lying in the rational span
        return len(hermite_rows(list(self.basis) + [list(v)])) == self.rank


def saturated_span(vectors: Sequence[Sequence[int]], n: int | None = None) -> Sublattice:
    """Saturation of the integer span of ``vectors`` (Q-span intersected with Z^n)."""
    if n is None:
        if not vectors:
            raise LatticeError("dimension needed for an empty family")
        n = len(vectors[0])
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return Sublattice(n, ())
    orth = integer_kernel(rows, n)
    if not orth:
        return Sublattice(n, identity(n))
    sat = integer_kernel(orth, n)
    return Sublattice(n, tuple(tuple(r) for r in hermite_rows(sat)))


def is_unimodular_system(vectors: Sequence[Sequence[int]]) -> bool:
    """True if the vectors extend to a basis of Z^n."""
    if not vectors:
        return True
    H = hermite_rows(vectors)
    if len(H) != len(vectors):
        return False
    sat = saturated_span(vectors)
    return tuple(map(tuple, H)) == sat.basis
