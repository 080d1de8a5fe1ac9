"""The graded superspace: gradings, supermetric, and derived constants.

Indices run 0..N+M-1 internally; the first N are even, the last M odd.  The
supermetric eps_ab is even (pairs indices of equal parity), graded symmetric
(eps_ab = epsilon*(-1)^{[a][b]} eps_ba), and invertible; omega = epsilon*(N-M)
equals the full metric contraction, and beta = 1 - omega/2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .scalars import Rational


class SpaceError(ValueError):
    pass


class DegenerateOmegaError(ZeroDivisionError):
    """Raised by operations that must divide by omega when omega = 0."""


@dataclass(frozen=True)
class GradedSpace:
    N: int
    M: int
    epsilon: int
    grading: tuple  # 0/1 per index
    metric: tuple   # rows of eps_ab as tuples of Fraction
    inverse: tuple  # rows of the inverse matrix, used for raised indices

    @property
    def dim(self) -> int:
        return self.N + self.M

    @property
    def omega(self) -> Rational:
        return Fraction(self.epsilon * (self.N - self.M))

    @property
    def beta(self) -> Rational:
        return 1 - self.omega / 2

    def g(self, a: int) -> int:
        return self.grading[a]

    def sign(self, a: int, b: int) -> int:
        """(-1)^{[a][b]}"""
        return -1 if self.grading[a] and self.grading[b] else 1

    def metric_contraction(self) -> Rational:
        return sum(
            self.inverse[c][d] * self.metric[c][d]
            for c in range(self.dim)
            for d in range(self.dim)
        )

    def pairs(self):
        """Nonzero metric entries as (a, b, eps_ab)."""
        for a in range(self.dim):
            for b in range(self.dim):
                if self.metric[a][b]:
                    yield a, b, self.metric[a][b]

    def inverse_pairs(self):
        for a in range(self.dim):
            for b in range(self.dim):
                if self.inverse[a][b]:
                    yield a, b, self.inverse[a][b]

    def describe(self) -> str:
        return "(%d|%d, eps=%+d)" % (self.N, self.M, self.epsilon)


def _symplectic_block(m: int):
    # +1 in the upper-right quadrant, -1 in the lower-left
    half = m // 2
    rows = [[Fraction(0)] * m for _ in range(m)]
    for i in range(half):
        rows[i][half + i] = Fraction(1)
        rows[half + i][i] = Fraction(-1)
    return rows


def _hyperbolic_block(m: int):
    # symmetric split pairs: antidiagonal 2x2 blocks [[0,1],[1,0]]
    rows = [[Fraction(0)] * m for _ in range(m)]
    for i in range(0, m, 2):
        rows[i][i + 1] = Fraction(1)
        rows[i + 1][i] = Fraction(1)
    return rows


def _identity_block(m: int):
    rows = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        rows[i][i] = Fraction(1)
    return rows


def canonical_metric(N: int, M: int, epsilon: int, split_symmetric: bool = False):
    """Canonical eps_ab: identity on the symmetric block, symplectic J on the
    antisymmetric one.  With split_symmetric the symmetric block uses
    hyperbolic pairs instead of the identity (needed for rational spinor
    modules)."""
    sym = _hyperbolic_block if split_symmetric else _identity_block
    if epsilon == 1:
        even_block, odd_block = sym(N), _symplectic_block(M)
    else:
        even_block, odd_block = _symplectic_block(N), sym(M)
    d = N + M
    rows = [[Fraction(0)] * d for _ in range(d)]
    for i in range(N):
        for j in range(N):
            rows[i][j] = even_block[i][j]
    for i in range(M):
        for j in range(M):
            rows[N + i][N + j] = odd_block[i][j]
    return rows


def _invert(rows):
    n = len(rows)
    a = [list(map(Fraction, r)) + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise SpaceError("supermetric is degenerate")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def make_space(N: int, M: int, epsilon: int,
               metric: Sequence[Sequence] | None = None,
               split_symmetric: bool = False) -> GradedSpace:
    """Build a graded space with a validated supermetric.

    The antisymmetric block must have even size: M even for epsilon=+1,
    N even for epsilon=-1.
    """
    if epsilon not in (1, -1):
        raise SpaceError("epsilon must be +1 or -1")
    if N < 0 or M < 0 or N + M == 0:
        raise SpaceError("need a nonempty index set")
    if epsilon == 1 and M % 2:
        raise SpaceError("no nondegenerate antisymmetric form on odd size M=%d" % M)
    if epsilon == -1 and N % 2:
        raise SpaceError("no nondegenerate antisymmetric form on odd size N=%d" % N)
    grading = tuple([0] * N + [1] * M)
    if metric is None:
        rows = canonical_metric(N, M, epsilon, split_symmetric)
    else:
        rows = [[Fraction(x) for x in r] for r in metric]
        if len(rows) != N + M or any(len(r) != N + M for r in rows):
            raise SpaceError("metric has wrong shape")
    space = GradedSpace(N, M, epsilon,
                        grading,
                        tuple(tuple(r) for r in rows),
                        _invert(rows))
    validate_space(space)
    return space


def validate_space(space: GradedSpace) -> None:
    d = space.dim
    met, inv, g = space.metric, space.inverse, space.grading
    for a in range(d):
        for b in range(d):
            if met[a][b] and (g[a] + g[b]) % 2:
                raise SpaceError("metric is not even at (%d,%d)" % (a, b))
            if met[a][b] != space.epsilon * space.sign(a, b) * met[b][a]:
                raise SpaceError("metric lacks graded symmetry at (%d,%d)" % (a, b))
    for a in range(d):
        for c in range(d):
            s = sum(inv[a][b] * met[b][c] for b in range(d))
            if s != (1 if a == c else 0):
                raise SpaceError("inverse metric relation fails at (%d,%d)" % (a, c))
    if space.metric_contraction() != space.omega:
        raise SpaceError("omega mismatch: contraction != epsilon*(N-M)")


def space_from_json(doc: dict) -> GradedSpace:
    """{N, M, epsilon, metric?}; omitted metric means canonical."""
    metric = doc.get("metric")
    if metric is not None:
        metric = [[Fraction(str(x)) for x in row] for row in metric]
    return make_space(int(doc["N"]), int(doc["M"]), int(doc["epsilon"]),
                      metric=metric,
                      split_symmetric=bool(doc.get("split_symmetric", False)))
