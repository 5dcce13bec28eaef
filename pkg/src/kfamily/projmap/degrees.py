"""Degree sequences deg(k^m), exactly or by restriction to a line over F_p.

The prime-field route follows a random affine line L(s) through the
iterates: c_m = k(c_{m-1}) with the univariate gcd removed at each step.
For a generic line the degree of c_m is deg k^m; reduction mod p can only
lower degrees, so two independent (prime, line) runs are compared and an
unlucky collapse is caught and retried.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..polycore import random_prime, upoly
from .builders import build_k_any
from .family import FamilyParams
from .maps import ProjMap, compose

DEFAULT_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    def __init__(self, completed: list[int]):
        super().__init__(f"term budget exceeded after m = {len(completed)}")
        self.completed = completed


@dataclass
class DegreeSequence:
    degrees: list[int]
    mode: str
    requested: int
    primes: list[int] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return len(self.degrees) == self.requested

    def to_json(self) -> dict:
        return {"degrees": self.degrees, "mode": self.mode, "requested": self.requested,
                "primes": [str(p) for p in self.primes], "warnings": self.warnings}


def _line_run(k: ProjMap, m_max: int, p: int, rng: random.Random) -> list[int]:
    kp = [c.reduce_mod(p) for c in k.components]
    cur = [upoly.trim([rng.randrange(p), rng.randrange(1, p)]) for _ in range(3)]
    out = []
    for _ in range(m_max):
        nxt = [upoly.compose_into(c, cur, p) for c in kp]
        g = upoly.gcd(upoly.gcd(nxt[0], nxt[1], p), nxt[2], p)
        if len(g) > 1:
            nxt = [upoly.exact_div(c, g, p) if c else c for c in nxt]
        cur = nxt
        out.append(max(upoly.degree(c) for c in cur))
    return out


def _prime_sequence(k: ProjMap, m_max: int, seed: int, prime: int | None) -> DegreeSequence:
    rng = random.Random(seed)
    res = DegreeSequence([], "prime", m_max)

    def fresh_prime():
        while True:
            p = prime if prime is not None and not res.primes else random_prime(rng, 62)
            try:
                k.reduce_mod(p)
            except ZeroDivisionError:
                if prime is not None and not res.primes:
                    raise ValueError(f"prime {p} divides a coefficient denominator") from None
                continue
            res.primes.append(p)
            return p

    first = _line_run(k, m_max, fresh_prime(), rng)
    second = _line_run(k, m_max, fresh_prime(), rng)
    if first != second:
        res.warnings.append("prime retry: two prime-field runs disagreed; rerunning")
        third = _line_run(k, m_max, fresh_prime(), rng)
        first = [max(t) for t in zip(first, second, third)]
    res.degrees = first
    return res


def _rational_sequence(k: ProjMap, m_max: int, budget: int) -> DegreeSequence:
    res = DegreeSequence([k.degree], "rational", m_max)
    cur = k
    for _ in range(m_max - 1):
        # a composite's size is roughly the product of the component sizes
        if cur.total_terms() * max(len(c) for c in k.components) > budget:
            res.warnings.append(f"budget: stopped after m = {len(res.degrees)}")
            break
        cur = compose(k, cur)
        res.degrees.append(cur.degree)
    return res


def degree_sequence(params: FamilyParams, m_max: int, mode: str = "prime", *,
                    seed: int = 0, prime: int | None = None,
                    budget: int = DEFAULT_BUDGET, k: ProjMap | None = None) -> DegreeSequence:
    """deg(k^m) for m = 1..m_max.

    mode "rational" composes exactly; "prime" restricts to random lines over
    62-bit prime fields. Constant F goes through the composition of the
    involutions.
    """
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    if params.is_symbolic:
        raise ValueError("degree sequences need concrete parameters")
    k = k if k is not None else build_k_any(params)
    if mode == "rational":
        return _rational_sequence(k, m_max, budget)
    if mode == "prime":
        return _prime_sequence(k, m_max, seed, prime)
    raise ValueError(f"unknown mode {mode!r}")
