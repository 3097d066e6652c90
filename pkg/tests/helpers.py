"""Random generators and independent oracles shared by the tests."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np

from tightfan.errors import NotFullDim
from tightfan.kernel import dot, matvec, scale, sub, vsum
from tightfan.polytope import hull


def random_rational(rng: random.Random, lo=-12, hi=12, maxden=3) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, maxden))


def random_polytope(rng: random.Random, dim=3, max_vertices=10):
    """Hull of at most ``max_vertices`` random rational points, centred so
    the origin is interior."""
    while True:
        n = rng.randint(dim + 1, max_vertices)
        pts = [tuple(random_rational(rng) for _ in range(dim)) for _ in range(n)]
        try:
            P = hull(pts)
        except NotFullDim:
            continue
        c = scale(Fraction(1, len(P.vertices)), vsum(P.vertices, dim))
        return hull(sub(v, c) for v in P.vertices)


def random_unimodular(rng: random.Random, d: int, steps: int = 6):
    """Integer matrix of determinant +-1 built from elementary operations."""
    M = [[int(i == j) for j in range(d)] for i in range(d)]
    for _ in range(steps):
        i, j = rng.sample(range(d), 2)
        k = rng.choice([-2, -1, 1, 2])
        M[i] = [a + k * b for a, b in zip(M[i], M[j])]
    rng.shuffle(M)
    if rng.random() < 0.5:
        M[0] = [-a for a in M[0]]
    return M


def as_float(rows) -> np.ndarray:
    return np.array([[float(x) for x in r] for r in rows])


def numeric_nullspace(A: np.ndarray, tol=1e-9) -> np.ndarray:
    """Columns spanning the numerical kernel of ``A`` (SVD)."""
    _, s, vt = np.linalg.svd(A)
    r = int((s > tol * max(1.0, s.max() if s.size else 1.0)).sum())
    return vt[r:].T


def lp_max_coordinates(A: np.ndarray):
    """For ``A t = 0, sum t = 1, t >= 0``: the maximum of each coordinate,
    or None when the system is infeasible (scipy HiGHS)."""
    from scipy.optimize import linprog
    m, n = A.shape
    A_eq = np.vstack([A, np.ones((1, n))])
    b_eq = np.zeros(m + 1)
    b_eq[-1] = 1.0
    out = []
    for k in range(n):
        c = np.zeros(n)
        c[k] = -1.0
        res = linprog(c, A_eq=A_eq, b_eq=b_eq, bounds=[(0, None)] * n, method="highs")
        if res.status == 2:
            return None
        out.append(-res.fun)
    return np.array(out)


def positive_kernel_feasible(A: np.ndarray) -> bool:
    """``A t = 0, t >= 1`` feasibility via scipy."""
    from scipy.optimize import linprog
    m, n = A.shape
    res = linprog(np.zeros(n), A_eq=A, b_eq=np.zeros(m), bounds=[(1, None)] * n, method="highs")
    return res.status == 0


def realisable_by_heights(F) -> bool:
    """Independent polytopality oracle (scipy).

    Looks for heights ``w_v >= 1`` and one functional ``a_c`` per cell with
    ``a_c . rho_v = w_v`` on the cell's rays and ``a_c . rho_u <= w_u - 1``
    elsewhere; then the points ``rho_v / w_v`` are in convex position with
    the cells as facets.
    """
    d, nr, nc = F.dim, len(F.rays), len(F.cells)
    nvar = nc * d + nr
    rays = as_float(F.rays)
    A_eq, A_ub, b_ub = [], [], []
    for ci, cell in enumerate(F.cells):
        for v in range(nr):
            row = np.zeros(nvar)
            row[ci * d:(ci + 1) * d] = rays[v]
            row[nc * d + v] = -1.0
            if v in cell:
                A_eq.append(row)
            else:
                A_ub.append(row)
                b_ub.append(-1.0)
    bounds = [(None, None)] * (nc * d) + [(1, None)] * nr
    from scipy.optimize import linprog
    res = linprog(np.zeros(nvar), A_ub=np.array(A_ub) if A_ub else None,
                  b_ub=np.array(b_ub) if b_ub else None, A_eq=np.array(A_eq),
                  b_eq=np.zeros(len(A_eq)), bounds=bounds, method="highs")
    return res.status == 0


def nearest_lattice_points(L, x, radius=3):
    """Integer vectors ``c`` minimising the Gram distance to ``x`` (exact)."""
    best, out = None, []
    for c in itertools.product(range(-radius, radius + 1), repeat=L.dim):
        u = sub(x, c)
        n = dot(u, matvec(L.gram, u))
        if best is None or n < best:
            best, out = n, [c]
        elif n == best:
            out.append(c)
    return sorted(tuple(Fraction(v) for v in c) for c in out)
