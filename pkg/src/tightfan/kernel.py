"""Exact rational linear algebra and linear feasibility.

Scalars are :class:`fractions.Fraction`; vectors are tuples of fractions and
matrices are tuples of row vectors.  Nothing in this package ever touches a
float.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import NotAHyperplane

Rat = Fraction
QVec = tuple  # tuple[Fraction, ...]
QMat = tuple  # tuple[QVec, ...]


def rat(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact scalar {x!r}")
    return Fraction(x)


def qvec(xs: Iterable) -> QVec:
    return tuple(rat(x) for x in xs)


def qmat(rows: Iterable[Iterable]) -> QMat:
    return tuple(qvec(r) for r in rows)


def zeros(n: int) -> QVec:
    return (Fraction(0),) * n


def identity(n: int) -> QMat:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: Sequence, v: Sequence) -> QVec:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> QVec:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence) -> QVec:
    c = rat(c)
    return tuple(c * a for a in u)


def neg(u: Sequence) -> QVec:
    return tuple(-a for a in u)


def vsum(vectors: Iterable[Sequence], dim: int) -> QVec:
    total = zeros(dim)
    for v in vectors:
        total = add(total, v)
    return total


def matvec(A: Sequence[Sequence], x: Sequence) -> QVec:
    return tuple(dot(row, x) for row in A)


def transpose(A: Sequence[Sequence], ncols: Optional[int] = None) -> QMat:
    if not A:
        return tuple(() for _ in range(ncols or 0))
    return tuple(tuple(row[j] for row in A) for j in range(len(A[0])))


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> QMat:
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def is_zero(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def rref(A: Sequence[Sequence], ncols: Optional[int] = None):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows.
    """
    rows = [list(map(rat, r)) for r in A]
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows[:r]], pivots


def rank(A: Sequence[Sequence]) -> int:
    if not A:
        return 0
    return len(rref(A)[1])


def nullspace(A: Sequence[Sequence], ncols: Optional[int] = None) -> list:
    """Basis of ``{x : A x = 0}``; one vector per free column."""
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    if not A:
        return list(identity(n))
    R, pivots = rref(A, n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        x = [Fraction(0)] * n
        x[fcol] = Fraction(1)
        for row, pc in zip(R, pivots):
            x[pc] = -row[fcol]
        basis.append(tuple(x))
    return basis


def solve(A: Sequence[Sequence], b: Sequence) -> Optional[QVec]:
    """One solution of ``A x = b`` or ``None`` when inconsistent."""
    n = len(A[0])
    aug = [tuple(row) + (rat(bi),) for row, bi in zip(A, b)]
    R, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return tuple(x)


def inverse(A: Sequence[Sequence]) -> QMat:
    n = len(A)
    aug = [tuple(map(rat, row)) + e for row, e in zip(A, identity(n))]
    R, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise ZeroDivisionError("singular matrix")
    return tuple(row[n:] for row in R)


def det(A: Sequence[Sequence]) -> Fraction:
    rows = [list(map(rat, r)) for r in A]
    n = len(rows)
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            result = -result
        result *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return result


def primitive(u: Sequence) -> QVec:
    """Scale a nonzero rational vector to the coprime integer vector on its ray."""
    if is_zero(u):
        raise ValueError("zero vector has no primitive direction")
    denom = math.lcm(*(rat(a).denominator for a in u))
    ints = [int(rat(a) * denom) for a in u]
    g = math.gcd(*ints)
    return tuple(Fraction(a // g) for a in ints)


def primitive_normal(spanning: Sequence[Sequence], ambient_dim: int) -> QVec:
    """Primitive integer normal of the hyperplane spanned by ``spanning``.

    The sign is unspecified; callers orient it.
    """
    basis = nullspace(list(spanning), ambient_dim)
    if len(basis) != 1:
        raise NotAHyperplane(
            f"spanning set has corank {len(basis)} in dimension {ambient_dim}"
        )
    return primitive(basis[0])


def ratio(u: Sequence, v: Sequence) -> Optional[Fraction]:
    """The scalar ``c`` with ``u == c * v`` or ``None`` if not parallel."""
    c = None
    for a, b in zip(u, v):
        if b == 0:
            if a != 0:
                return None
            continue
        q = a / b
        if c is None:
            c = q
        elif q != c:
            return None
    return c


# --------------------------------------------------------------------------
# exact simplex

class LPResult:
    """Outcome of :func:`simplex`: ``status`` is optimal/infeasible/unbounded."""

    __slots__ = ("status", "x", "value")

    def __init__(self, status: str, x: Optional[QVec] = None, value=None):
        self.status = status
        self.x = x
        self.value = value

    def __repr__(self):
        return f"LPResult({self.status!r}, value={self.value})"


def _pivot(T, r, c):
    inv = 1 / T[r][c]
    T[r] = [x * inv for x in T[r]]
    for i in range(len(T)):
        if i != r and T[i][c] != 0:
            f = T[i][c]
            T[i] = [a - f * b for a, b in zip(T[i], T[r])]


def _run(T, basis, cost, allowed):
    """Maximise ``cost`` over the tableau with Bland's rule.

    ``T`` rows are ``[coefficients..., rhs]``.  Returns False if unbounded.
    """
    m = len(T)
    n = len(cost)
    while True:
        entering = None
        for j in range(n):
            if not allowed[j] or j in basis:
                continue
            reduced = cost[j] - sum(
                (cost[basis[i]] * T[i][j] for i in range(m)), Fraction(0)
            )
            if reduced > 0:
                entering = j
                break
        if entering is None:
            return True
        leaving = None
        best = None
        for i in range(m):
            a = T[i][entering]
            if a > 0:
                q = T[i][-1] / a
                if best is None or q < best or (q == best and basis[i] < basis[leaving]):
                    best, leaving = q, i
        if leaving is None:
            return False
        _pivot(T, leaving, entering)
        basis[leaving] = entering


def simplex(c: Sequence, A_eq: Sequence[Sequence], b_eq: Sequence) -> LPResult:
    """Maximise ``c . x`` subject to ``A_eq x = b_eq`` and ``x >= 0``.

    Two-phase tableau simplex over the rationals with Bland's anti-cycling
    rule, so it terminates and the answer is exact.
    """
    n = len(c)
    c = qvec(c)
    rows = []
    for row, b in zip(A_eq, b_eq):
        row, b = list(qvec(row)), rat(b)
        if b < 0:
            row, b = [-a for a in row], -b
        rows.append(row + [b])
    m = len(rows)
    if m == 0:
        if any(ci > 0 for ci in c):
            return LPResult("unbounded")
        return LPResult("optimal", zeros(n), Fraction(0))

    # phase 1: artificials n..n+m-1
    T = [row[:n] + [Fraction(int(i == k)) for k in range(m)] + [row[n]]
         for i, row in enumerate(rows)]
    basis = list(range(n, n + m))
    phase1_cost = [Fraction(0)] * n + [Fraction(-1)] * m
    _run(T, basis, phase1_cost, [True] * (n + m))
    if any(T[i][-1] != 0 for i in range(m) if basis[i] >= n):
        return LPResult("infeasible")

    # drive zero-level artificials out, dropping redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, i, col)
            basis[i] = col
        i += 1
    T = [row[:n] + [row[-1]] for row in T]
    if not T:
        if any(ci > 0 for ci in c):
            return LPResult("unbounded")
        return LPResult("optimal", zeros(n), Fraction(0))

    if not _run(T, basis, list(c), [True] * n):
        return LPResult("unbounded")
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    x = tuple(x)
    return LPResult("optimal", x, dot(c, x))


def lp_positive_kernel(A: Sequence[Sequence], ncols: Optional[int] = None) -> Optional[QVec]:
    """A vector ``t`` with ``A t = 0`` and every ``t_k >= 1``, or ``None``.

    The solution set of ``A t = 0, t > 0`` is a cone, so it is nonempty iff
    the shifted system ``A u = -A 1, u >= 0`` is feasible (``t = 1 + u``).
    Among the solutions, one minimising ``sum t`` is returned.
    """
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    ones = (Fraction(1),) * n
    if not A:
        return ones
    rhs = neg(matvec(A, ones))
    res = simplex((Fraction(-1),) * n, A, rhs)
    if res.status != "optimal":
        return None
    return add(ones, res.x)


def forced_zero_coordinates(A: Sequence[Sequence], ncols: Optional[int] = None) -> frozenset:
    """Coordinates that vanish on every ``t >= 0`` with ``A t = 0``.

    Decided by one LP per coordinate: ``max t_k`` over ``A t = 0, t >= 0,
    sum t = 1``.  An empty result means a strictly positive kernel vector
    exists.
    """
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    A_eq = [tuple(row) for row in A] + [(Fraction(1),) * n]
    b_eq = zeros(len(A)) + (Fraction(1),)
    forced = set()
    for k in range(n):
        c = tuple(Fraction(int(j == k)) for j in range(n))
        res = simplex(c, A_eq, b_eq)
        if res.status == "infeasible" or res.value == 0:
            forced.add(k)
    return frozenset(forced)


def format_rat(x: Fraction) -> str:
    """Canonical ``"p/q"`` string, ``"p"`` when the denominator is 1."""
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
