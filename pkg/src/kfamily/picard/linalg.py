"""Exact integer linear algebra on Picard matrices.

Polynomials are integer coefficient lists, lowest degree first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from gmpy2 import mpq

from ..polycore import upoly
from .lattice import IntersectionForm, PicMatrix

__all__ = [
    "charpoly", "poly_str", "poly_divides", "squarefree_part", "spectral_radius",
    "root_magnitudes", "rational_rank", "nilpotency_index", "GrowthClass", "growth_class",
    "predicted_degrees", "check_isometry",
]


def _rows(M) -> list[list[int]]:
    return [list(r) for r in (M.rows if isinstance(M, PicMatrix) else M)]


def charpoly(M) -> list[int]:
    """det(x I - M) by Berkowitz's division-free algorithm (exact integers)."""
    A = _rows(M)
    n = len(A)
    if n == 0:
        return [1]
    if any(len(r) != n for r in A):
        raise ValueError("characteristic polynomial of a non-square matrix")
    # coefficient vectors highest degree first
    vect = [1, -A[0][0]]
    for r in range(1, n):
        # Toeplitz column for the leading (r+1) x (r+1) block
        R = [A[r][j] for j in range(r)]  # row r, columns < r
        C = [A[i][r] for i in range(r)]  # column r, rows < r
        sub = [row[:r] for row in A[:r]]
        a = A[r][r]
        col = [1, -a]
        power = C[:]
        for _ in range(r):
            col.append(-sum(x * y for x, y in zip(R, power)))
            power = [sum(sub[i][j] * power[j] for j in range(r)) for i in range(r)]
        # multiply the lower-triangular Toeplitz matrix built from col by vect
        new = []
        for i in range(r + 2):
            s = 0
            for j in range(len(vect)):
                k = i - j
                if 0 <= k < len(col):
                    s += col[k] * vect[j]
            new.append(s)
        vect = new
    return list(reversed(vect))


def poly_str(p: list[int], var: str = "x") -> str:
    terms = []
    for e in range(len(p) - 1, -1, -1):
        c = p[e]
        if c == 0:
            continue
        mag = abs(c)
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _q(p):
    return upoly.trim([mpq(c) for c in p])


def poly_divides(d: list[int], p: list[int]) -> bool:
    _, r = upoly.divmod_(_q(p), _q(d))
    return not r


def squarefree_part(p: list[int]) -> list[mpq]:
    q = _q(p)
    dq = upoly.trim([c * i for i, c in enumerate(q)][1:])
    if not dq:
        return q
    g = upoly.gcd(q, dq)
    return upoly.exact_div(q, g)


def _sturm_count(chain, x) -> int:
    signs = []
    for s in chain:
        v = upoly.evaluate(s, x)
        if v != 0:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sturm_chain(p):
    chain = [p, upoly.trim([c * i for i, c in enumerate(p)][1:])]
    while chain[-1] and len(chain[-1]) > 1:
        r = upoly.divmod_(chain[-2], chain[-1])[1]
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _real_roots(p, tol) -> list[float]:
    """Isolate and bisect all real roots of a squarefree rational polynomial."""
    if len(p) <= 1:
        return []
    lead = abs(p[-1])
    bound = 1 + max(abs(c) for c in p[:-1]) / lead
    bound = mpq(int(bound) + 1)
    chain = _sturm_chain(p)
    roots = []
    stack = [(-bound, bound)]
    width = mpq(tol) if not isinstance(tol, mpq) else tol
    while stack:
        lo, hi = stack.pop()
        count = _sturm_count(chain, lo) - _sturm_count(chain, hi)
        if count == 0:
            continue
        if count == 1 and hi - lo <= width:
            roots.append(float((lo + hi) / 2))
            continue
        mid = (lo + hi) / 2
        if upoly.evaluate(p, mid) == 0:
            roots.append(float(mid))
            eps = min(width, (hi - lo) / 4) / 4
            stack.append((lo, mid - eps))
            stack.append((mid + eps, hi))
            continue
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(roots)


def spectral_radius(p: list[int], tol: float = 1e-12) -> float:
    """Largest root magnitude.

    Real roots are isolated with Sturm sequences and refined by bisection on
    exact rational values; a complex pair only wins when numpy places it
    clearly outside every real root."""
    if len(upoly.trim(list(p))) <= 1:
        raise ValueError("spectral radius of a constant polynomial")
    sq = squarefree_part(p)
    tolq = mpq(1, 10 ** max(1, int(-np.log10(tol)) + 2))
    real = max((abs(r) for r in _real_roots(sq, tolq)), default=0.0)
    numeric = max(root_magnitudes(sq), default=0.0)
    return real if numeric <= real + 1e-7 * max(1.0, real) else numeric


def root_magnitudes(p: list[int]) -> list[float]:
    """Magnitudes of the distinct complex roots (numeric, on the squarefree part)."""
    sq = squarefree_part(p)
    if len(sq) <= 1:
        return []
    coeffs = [float(c) for c in reversed(sq)]
    return sorted(float(abs(z)) for z in np.roots(coeffs))


def rational_rank(rows) -> int:
    A = [[mpq(x) for x in r] for r in rows]
    if not A:
        return 0
    n, m = len(A), len(A[0])
    rank = 0
    for c in range(m):
        piv = next((i for i in range(rank, n) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for i in range(n):
            if i != rank and A[i][c] != 0:
                f = A[i][c] / A[rank][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


def _matmul(A, B):
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in A]


def nilpotency_index(M, eigenvalue: int = 1) -> int:
    """Size of the largest Jordan block for ``eigenvalue``: the least k with
    rank (M - lambda I)^k = rank (M - lambda I)^(k+1); 0 if not an eigenvalue."""
    A = _rows(M)
    n = len(A)
    N = [[A[i][j] - (eigenvalue if i == j else 0) for j in range(n)] for i in range(n)]
    ranks = [n]
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    while True:
        P = _matmul(P, N)
        ranks.append(rational_rank(P))
        if ranks[-1] == ranks[-2]:
            return len(ranks) - 2
        if len(ranks) > n + 2:
            return len(ranks) - 2


@dataclass(frozen=True)
class GrowthClass:
    kind: str  # "exponential", "quadratic" or "bounded-or-linear"
    rate: float
    jordan: int  # nilpotency index at eigenvalue 1

    def __str__(self):
        if self.kind == "exponential":
            return f"exponential({self.rate:.10g})"
        return self.kind

    def to_json(self) -> dict:
        return {"kind": self.kind, "rate": self.rate, "jordan_index_at_1": self.jordan}


def growth_class(M, tol: float = 1e-9) -> GrowthClass:
    p = charpoly(M)
    rho = spectral_radius(p)
    mags = root_magnitudes(p)
    top = max(mags + [rho])
    jordan = nilpotency_index(M, 1)
    if top > 1 + tol:
        return GrowthClass("exponential", top, jordan)
    if jordan == 3:
        return GrowthClass("quadratic", top, jordan)
    return GrowthClass("bounded-or-linear", top, jordan)


def predicted_degrees(M: PicMatrix, m_max: int) -> list[int]:
    """The H-entry of M^m for m = 1..m_max."""
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    A = _rows(M)
    h = M.basis.index("H") if isinstance(M, PicMatrix) else 0
    v = [int(i == h) for i in range(len(A))]
    out = []
    for _ in range(m_max):
        v = [sum(a * b for a, b in zip(r, v)) for r in A]
        out.append(v[h])
    return out


def check_isometry(M: PicMatrix, J: IntersectionForm) -> bool:
    """M^T J M == J exactly."""
    if len(J.basis) != M.size:
        raise ValueError("matrix and form sizes differ")
    A = _rows(M)
    G = [list(r) for r in J.gram]
    At = [list(c) for c in zip(*A)]
    return _matmul(_matmul(At, G), A) == G
