"""The involutions, the map k = j_F o iota, its inverse, and the curve catalog."""

from __future__ import annotations

from dataclasses import dataclass

from ..polycore import MultiPoly, RatFunc, Ring
from .family import FamilyParams
from .maps import ProjMap, compose


def _affine_xy(R: Ring) -> tuple[RatFunc, RatFunc]:
    """x = x1/x0 and y = x2/x0 as rational functions."""
    x0, x1, x2 = R.gens()[:3]
    return RatFunc(x1, x0), RatFunc(x2, x0)


def _from_affine(X: RatFunc, Y: RatFunc, label: str) -> ProjMap:
    """[1 : X : Y] with denominators cleared."""
    comps = [X.den * Y.den, X.num * Y.den, Y.num * X.den]
    return ProjMap(comps, label)


def _horner(coeffs: list[MultiPoly], z: RatFunc) -> RatFunc:
    acc = RatFunc.of(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = acc * z + c
    return acc


def build_iota(params: FamilyParams | None = None) -> ProjMap:
    """The involution (x, y) -> (1 - x - (x-1)/y, -y - 1 - y/(x-1))."""
    R = params.plane_ring() if params is not None else Ring(("x0", "x1", "x2"))
    x, y = _affine_xy(R)
    X = 1 - x - (x - 1) / y
    Y = -y - 1 - y / (x - 1)
    return _from_affine(X, Y, "iota")


def build_jf(params: FamilyParams) -> ProjMap:
    """The involution (x, y) -> (F(y) - x, y)."""
    R = params.plane_ring()
    x, y = _affine_xy(R)
    X = _horner(params.coeff_polys(R), y) - x
    return _from_affine(X, y, "jF")


def _require_positive_n(params: FamilyParams):
    if params.n < 1:
        raise ValueError("the closed form needs deg F >= 1; use compose(build_jf, build_iota)")


def _fcheck(params: FamilyParams, R: Ring) -> MultiPoly:
    """x0^n F(x2/x0)."""
    x0, _, x2 = R.gens()[:3]
    n = params.n
    return sum((c * x0 ** (n - j) * x2 ** j for j, c in enumerate(params.coeff_polys(R))),
               R.zero())


def forward_curves(params: FamilyParams, R: Ring | None = None) -> list[MultiPoly]:
    """Curves contracted by k: x0, x1 - x0, x2, x0^2 - x0 x1 - x1 x2."""
    R = R or params.plane_ring()
    x0, x1, x2 = R.gens()[:3]
    return [x0, x1 - x0, x2, x0 ** 2 - x0 * x1 - x1 * x2]


def backward_curves(params: FamilyParams, R: Ring | None = None) -> list[MultiPoly]:
    """Curves contracted by the inverse map."""
    R = R or params.plane_ring()
    x0, x1, x2 = R.gens()[:3]
    n = params.n
    fc = _fcheck(params, R)
    c2 = x0 ** n + x0 ** (n - 1) * x1 - fc
    c4 = x0 ** n * x2 - (x0 + x2) * c2
    return [x0, c2, x2, c4]


def build_k(params: FamilyParams) -> ProjMap:
    _require_positive_n(params)
    R = params.plane_ring()
    x0, x1, x2 = R.gens()[:3]
    n = params.n
    a = params.coeff_polys(R)
    w = x0 * x1 - x0 ** 2
    z = x0 ** 2 - x0 * x1 - x1 * x2
    k0 = w ** n * x2
    tail = sum((a[j] * w ** (n - j) * z ** j for j in range(n + 1)), R.zero())
    k1 = x0 ** (n - 1) * (x1 - x0) ** (n + 1) * (x2 + x0) + x2 * tail
    k2 = x2 * w ** (n - 1) * z
    return ProjMap([k0, k1, k2], "k", forward_curves(params, R))


def build_k_inverse(params: FamilyParams) -> ProjMap:
    _require_positive_n(params)
    R = params.plane_ring()
    x0, x1, x2 = R.gens()[:3]
    n = params.n
    fc = _fcheck(params, R)
    g = fc - x0 ** (n - 1) * (x0 + x1)
    comps = [
        x0 ** n * x2 * g,
        -(x0 + x2) * g ** 2,
        x0 ** (n - 1) * x2 * (x0 ** (n - 1) * (x0 ** 2 + x0 * x1 + x1 * x2) - (x0 + x2) * fc),
    ]
    return ProjMap(comps, "k^-1", backward_curves(params, R))


def build_k_any(params: FamilyParams) -> ProjMap:
    """k for any n >= 0; constant F goes through the composition of involutions."""
    if params.n >= 1:
        return build_k(params)
    return compose(build_jf(params), build_iota(params), "k")


# ---------------------------------------------------------------------------
# curve catalog


@dataclass(frozen=True)
class Curve:
    name: str
    poly: MultiPoly  # defining form in the plane ring
    param: tuple[MultiPoly, MultiPoly, MultiPoly]  # forms in (s, t, parameters)

    def check(self) -> bool:
        """The parametrization lies on the curve."""
        sub = list(self.param) + [self.param[0].ring.gen(v) for v in self.poly.ring.variables[3:]]
        return self.poly.compose(sub).is_zero


class CurveCatalog:
    """Named exceptional curves of k (C1..C4) and of its inverse (C1'..C4')."""

    def __init__(self, params: FamilyParams):
        self.params = params
        R = params.plane_ring()
        S = params.ring_with(("s", "t"))
        s, t = S.gen("s"), S.gen("t")
        n = params.n
        self.plane_ring = R
        self.param_ring = S
        fwd = forward_curves(params, R)
        lines = {
            "C1": (S.zero(), s, t),
            "C2": (s, s, t),
            "C3": (s, t, S.zero()),
            "C4": (s * (s + t), s ** 2, t * (s + t)),
        }
        self.curves: dict[str, Curve] = {}
        for name, poly in zip(("C1", "C2", "C3", "C4"), fwd):
            self.curves[name] = Curve(name, poly, lines[name])
        if n >= 1:
            bwd = backward_curves(params, R)
            fc = sum((c * s ** (n - j) * t ** j for j, c in enumerate(params.coeff_polys(S))),
                     S.zero())
            bparams = {
                "C1'": lines["C1"],
                "C2'": (s ** n, fc - s ** n, s ** (n - 1) * t),
                "C3'": lines["C3"],
                "C4'": (s ** n * (s + t), (s + t) * fc - s ** (n + 1), s ** (n - 1) * t * (s + t)),
            }
            for name, poly in zip(("C1'", "C2'", "C3'", "C4'"), bwd):
                self.curves[name] = Curve(name, poly, bparams[name])

    def __getitem__(self, name: str) -> Curve:
        return self.curves[name]

    def __iter__(self):
        return iter(self.curves.values())

    def names(self) -> list[str]:
        return list(self.curves)

    def forward(self) -> list[Curve]:
        return [self.curves[c] for c in ("C1", "C2", "C3", "C4")]

    def backward(self) -> list[Curve]:
        return [self.curves[c] for c in ("C1'", "C2'", "C3'", "C4'")]
