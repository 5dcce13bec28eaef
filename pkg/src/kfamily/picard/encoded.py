"""Pullback matrices written down from the closed-form pullback lists.

Each family's action is given column by column; a column is the pullback
of one basis class, expressed in the basis of strict transforms.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..projmap.family import FamilyParams
from .lattice import DivisorClass, IntersectionForm, PicBasis, PicMatrix
from .linalg import check_isometry, growth_class

__all__ = ["pic_basis", "pic_matrix", "z_candidates", "ZResolution", "resolve_z",
           "ZVariantError"]


class ZVariantError(RuntimeError):
    """No candidate cubic-family matrix passes the selection tests."""


def pic_basis(n: int, family: str) -> PicBasis:
    family = family.upper()
    if family == "X":
        return PicBasis.of(["E1", "Q"] + [f"P{j}" for j in range(1, n)])
    if family == "Y":
        extra = ["E2"] if n == 1 else []
        return PicBasis.of(["E1", "Q"] + [f"P{j}" for j in range(1, n + 1)] + extra)
    if family == "Z":
        return PicBasis.of(["E1", "Q"] + [f"P{j}" for j in range(1, 7)] + ["E2", "E01", "R"])
    raise ValueError(f"unknown family {family!r}")


def _cls(basis, **terms) -> DivisorClass:
    return DivisorClass.of(basis, terms)


def _x_matrix(n: int) -> PicMatrix:
    B = pic_basis(n, "X")
    tail = {f"P{j}": -j for j in range(1, n)}
    cols = {"H": DivisorClass.of(B, {"H": 2 * n + 1, "E1": -n, "Q": -(n + 1),
                                     **{f"P{j}": -(n + 1) * j for j in range(1, n)}}),
            "E1": B.unit("E1"),
            "Q": DivisorClass.of(B, {"H": 1, "E1": -1, "Q": -1, **tail}),
            f"P{n - 1}": DivisorClass.of(B, {"H": 2, "E1": -1, "Q": -1, **tail})}
    for j in range(1, n - 1):
        cols[f"P{j}"] = B.zero()
    return PicMatrix.from_columns(B, cols, f"X(n={n})")


def _y_matrix(n: int) -> PicMatrix:
    B = pic_basis(n, "Y")
    if n == 1:
        # e1, q, p1 = [0:1:1/a1] and e2: C2 is contracted onto P1, P1 and E2
        # are swapped, and C3 is carried onto Q
        cols = {"H": _cls(B, H=3, E1=-1, Q=-2, E2=-1),
                "E1": B.unit("E1"),
                "Q": _cls(B, H=1, E1=-1, Q=-1),
                "P1": _cls(B, H=1),
                "E2": B.unit("P1")}
        return PicMatrix.from_columns(B, cols, "Y(n=1)")
    low = {f"P{j}": -j for j in range(1, n - 1)}
    cols = {"H": DivisorClass.of(B, {"H": 2 * n + 1, "E1": -n, "Q": -(n + 1),
                                     **{f"P{j}": -(n + 1) * j for j in range(1, n)},
                                     f"P{n}": -n * n}),
            "E1": B.unit("E1"),
            "Q": DivisorClass.of(B, {"H": 1, "E1": -1, "Q": -1,
                                     **{f"P{j}": -j for j in range(1, n)},
                                     f"P{n}": -(n - 1)}),
            f"P{n - 2}": B.unit(f"P{n}"),
            f"P{n - 1}": B.unit(f"P{n - 1}"),
            f"P{n}": DivisorClass.of(B, {"H": 2, "E1": -1, "Q": -1, **low,
                                         f"P{n - 1}": -n, f"P{n}": -n})}
    for j in range(1, n - 2):
        cols[f"P{j}"] = B.zero()
    return PicMatrix.from_columns(B, cols, f"Y(n={n})")


def z_candidates() -> dict[str, PicMatrix]:
    """Two candidate pullback matrices for the cubic tower.

    They differ only in the columns of E01 and R: (a) pulls R back to P6 and
    E01 to the conic class; (b) swaps the two.
    """
    B = pic_basis(3, "Z")
    common = {
        "H": _cls(B, H=7, E1=-3, P1=-4, P2=-8, P3=-9, P4=-10, P5=-10, P6=-10,
                  E2=-3, R=-6, Q=-4, E01=-4),
        "E1": B.unit("E1"),
        "P1": B.unit("P3"),
        "P3": B.unit("P1"),
        "P2": B.unit("P2"),
        "P4": _cls(B, H=1, E1=-1, P1=-2, P2=-3, P3=-3, P4=-3, P5=-3, P6=-3, E2=-1, R=-1, Q=-1),
        "P5": B.unit("E2"),
        "P6": _cls(B, H=1, E2=-1, R=-1, E01=-1),
        "E2": B.unit("P5"),
        "Q": _cls(B, H=1, E1=-1, P1=-1, P2=-2, P3=-2, P4=-2, P5=-2, P6=-2, Q=-1, E01=-1),
    }
    long_line = _cls(B, H=2, E1=-1, P1=-1, P2=-2, P3=-2, P4=-2, P5=-2, P6=-2,
                     E2=-1, R=-2, Q=-2, E01=-1)
    a = dict(common, R=B.unit("P6"), E01=long_line)
    b = dict(common, E01=B.unit("P6"), R=long_line)
    return {"a": PicMatrix.from_columns(B, a, "Z(a)"), "b": PicMatrix.from_columns(B, b, "Z(b)")}


@dataclass(frozen=True)
class ZResolution:
    variant: str
    matrix: PicMatrix
    report: dict  # per candidate: isometry, H-column match, growth class


def resolve_z(form: IntersectionForm, h_column: DivisorClass | None = None) -> ZResolution:
    """Pick the unique candidate that is an isometry of ``form``, matches the
    derived H-column (when given) and grows quadratically."""
    report = {}
    passing = []
    for name, M in z_candidates().items():
        iso = check_isometry(M, form)
        h_ok = h_column is None or M.column("H") == h_column
        g = growth_class(M)
        report[name] = {"isometry": iso, "h_column": h_ok, "growth": str(g)}
        if iso and h_ok and g.kind == "quadratic":
            passing.append(name)
    if len(passing) != 1:
        raise ZVariantError(f"expected exactly one passing variant, got {passing}: {report}")
    v = passing[0]
    return ZResolution(v, z_candidates()[v], report)


def pic_matrix(params: FamilyParams | int, family: str,
               form: IntersectionForm | None = None) -> PicMatrix:
    """Integer pullback matrix of the family's tower.

    For Z the variant is resolved against ``form``; by default that is the
    intersection form of the strict-transform basis, derived from the charts
    of the cubic tower.
    """
    n = params if isinstance(params, int) else params.n
    family = family.upper()
    if family == "X":
        if n % 2 or n < 2:
            raise ValueError("family X needs an even n >= 2")
        return _x_matrix(n)
    if family == "Y":
        if n % 2 == 0:
            raise ValueError("family Y needs an odd n")
        return _y_matrix(n)
    if family == "Z":
        if not isinstance(params, int) and params.cubic_ab() is None:
            raise ValueError("family Z needs F = a y^3 + a y^2 + b y + 2")
        if n != 3:
            raise ValueError("family Z needs n = 3")
        if form is None:
            from .derived import strict_form
            from ..tower import build_tower

            cubic = params if not isinstance(params, int) else FamilyParams.cubic(1, 1)
            form = strict_form(build_tower(cubic, "Z"))
        return resolve_z(form).matrix
    raise ValueError(f"unknown family {family!r}")
