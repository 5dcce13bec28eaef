"""Command line front end: ``kmap show | degseq | pic | verify``.

Every command builds a JSON-ready report
``{"config", "results", "warnings", "version", "seed"}`` whose serialization
depends only on the arguments (wall-clock timing is opt-in via --timing).
Exit status: 0 success, 1 a check failed, 2 usage error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .checks import SUITES, VerifyContext, named_factor, run_suite, x_restricted
from .picard import (
    ZVariantError,
    charpoly,
    growth_class,
    pic_matrix,
    poly_divides,
    poly_str,
    predicted_degrees,
    resolve_z,
    spectral_radius,
    strict_form,
)
from .polycore import fmt_scalar, poly_print, to_rational
from .projmap import (
    DEFAULT_HORIZON,
    CurveCatalog,
    DegenerateMap,
    FamilyParams,
    base_points_on_curve,
    build_k,
    build_k_any,
    build_k_inverse,
    degree_sequence,
    image_of_curve,
    jacobian_factored,
)
from .projmap.degrees import DEFAULT_BUDGET
from .tower import build_tower

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    coeffs: list[str] | None = None
    cubic: list[str] | None = None
    family: str | None = None
    suite: str | None = None
    iters: int = 5
    mode: str = "prime"
    prime: int | None = None
    budget: int = DEFAULT_BUDGET
    horizon: int = DEFAULT_HORIZON
    seed: int = 0
    format: str = "json"
    out: str | None = None
    timing: bool = False

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("out")
        d.pop("timing")
        return d


@dataclass
class Report:
    config: RunConfig
    results: dict = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    exit_code: int = EXIT_OK
    timing: float | None = None
    tsv: list[list] | None = None  # rows for --format tsv, header first

    def to_json(self) -> dict:
        d = {"config": self.config.to_json(), "results": self.results,
             "warnings": self.warnings, "version": __version__, "seed": self.config.seed}
        if self.timing is not None:
            d["timing"] = {"seconds": self.timing}
        return d


# ---------------------------------------------------------------------------
# parameters


def _parse_list(text: str, what: str) -> list:
    try:
        return [to_rational(v.strip()) for v in text.split(",") if v.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{what}: cannot parse {text!r} as rationals") from exc


def family_params(cfg: RunConfig) -> FamilyParams:
    """Explicit coefficients, the cubic family, or a seeded random generic draw."""
    if cfg.coeffs is not None and cfg.cubic is not None:
        raise UsageError("--coeffs and --cubic are mutually exclusive")
    try:
        if cfg.cubic is not None:
            if len(cfg.cubic) != 2:
                raise UsageError("--cubic takes exactly two values a,b")
            return FamilyParams.cubic(*(to_rational(v) for v in cfg.cubic))
        if cfg.coeffs is not None:
            p = FamilyParams.of(cfg.coeffs)
            if cfg.n is not None and cfg.n != p.n:
                raise UsageError(f"--n {cfg.n} disagrees with {len(cfg.coeffs)} coefficients")
            return p
    except UsageError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    n = 2 if cfg.n is None else cfg.n
    if n < 0:
        raise UsageError("--n must be nonnegative")
    return FamilyParams.random(n, random.Random(cfg.seed), cfg.horizon)


def _cubic_for(cfg: RunConfig, params: FamilyParams) -> FamilyParams:
    if params.cubic_ab() is not None:
        return params
    return FamilyParams.random_cubic(random.Random(cfg.seed))


def _family_of(cfg: RunConfig, params: FamilyParams) -> str:
    if cfg.family:
        return cfg.family.upper()
    if cfg.cubic is not None:
        return "Z"
    return "X" if params.n % 2 == 0 else "Y"


# ---------------------------------------------------------------------------
# commands


def cmd_show(cfg: RunConfig) -> Report:
    rep = Report(cfg)
    p = family_params(cfg)
    res = rep.results
    res["params"] = p.to_json()
    res["genericity"] = p.genericity(cfg.horizon).to_json()
    if p.n == 0:
        rep.warnings.append("n = 0: k is computed as the composition jF o iota; "
                            "the closed form is not used")
        k = build_k_any(p)
        res["k"] = k.to_json()
        return rep
    k, ki = build_k(p), build_k_inverse(p)
    cat = CurveCatalog(p)
    res["k"] = k.to_json()
    res["k_inverse"] = ki.to_json()
    res["jacobian"] = {"k": jacobian_factored(k, cat.forward()).to_json(),
                       "k_inverse": jacobian_factored(ki, cat.backward()).to_json()}
    res["exceptional_images"] = {
        **{c.name: image_of_curve(k, c).to_json() for c in cat.forward()},
        **{c.name: image_of_curve(ki, c).to_json() for c in cat.backward()},
    }
    points: dict[str, dict] = {}
    for c in cat.forward():
        for pt, mult in base_points_on_curve(k, c).points:
            key = str(pt)
            points.setdefault(key, {"point": pt.to_json(), "on": []})["on"].append(
                {"curve": c.name, "multiplicity": mult})
    res["indeterminacy_points"] = list(points.values())
    rep.tsv = [["item", "value"], ["degree", k.degree]] + \
        [[f"k[{i}]", poly_print(c)] for i, c in enumerate(k.components)] + \
        [[f"k_inverse[{i}]", poly_print(c)] for i, c in enumerate(ki.components)]
    return rep


def _prediction_matrix(p: FamilyParams, rep: Report):
    if p.n < 1:
        return None
    if p.cubic_ab() is not None:
        try:
            return pic_matrix(p, "Z")
        except ZVariantError as exc:
            rep.warnings.append(f"no prediction: {exc}")
            return None
    return pic_matrix(p.n, "X" if p.n % 2 == 0 else "Y")


def quadratic_fit(degrees: list[int]) -> dict:
    """Least-squares quadratic through deg(k^m), plus the second differences."""
    m = np.arange(1, len(degrees) + 1, dtype=float)
    coeffs = np.polyfit(m, np.asarray(degrees, dtype=float), 2) if len(degrees) >= 3 else []
    second = [degrees[i + 2] - 2 * degrees[i + 1] + degrees[i] for i in range(len(degrees) - 2)]
    tail = second[len(second) // 2:]
    return {
        "coefficients": [round(float(c), 9) for c in coeffs],  # highest power first
        "second_differences": second,
        "eventually_constant": bool(tail) and len(set(tail)) == 1,
        "periodic_tail": sorted(set(tail)),
    }


def cmd_degseq(cfg: RunConfig) -> Report:
    rep = Report(cfg)
    if cfg.iters < 1:
        raise UsageError("--iters must be at least 1")
    p = family_params(cfg)
    try:
        seq = degree_sequence(p, cfg.iters, cfg.mode, seed=cfg.seed, prime=cfg.prime,
                              budget=cfg.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rep.warnings.extend(seq.warnings)
    degs = seq.degrees
    M = _prediction_matrix(p, rep)
    predicted = predicted_degrees(M, cfg.iters) if M is not None else [None] * cfg.iters
    rows = []
    for i, d in enumerate(degs):
        ratio = d / degs[i - 1] if i else None
        rows.append({"m": i + 1, "deg": d, "predicted": predicted[i],
                     "ratio": ratio, "match": None if predicted[i] is None else d == predicted[i]})
    res = rep.results
    res["params"] = p.to_json()
    res["genericity"] = p.genericity(cfg.horizon).to_json()
    res["mode"] = seq.mode
    res["primes"] = [str(q) for q in seq.primes]
    res["sequence"] = degs
    res["predicted"] = predicted[:len(degs)]
    res["rows"] = rows
    mism = [r["m"] for r in rows if r["match"] is False]
    res["mismatches"] = mism
    if mism:
        rep.warnings.append(f"degree below prediction from m = {mism[0]}")
    if p.cubic_ab() is not None:
        res["quadratic_fit"] = quadratic_fit(degs)
    if not seq.complete:
        rep.exit_code = EXIT_BUDGET
    rep.tsv = [["m", "deg", "predicted", "ratio"]] + [
        [r["m"], r["deg"], "" if r["predicted"] is None else r["predicted"],
         "" if r["ratio"] is None else f"{r['ratio']:.12g}"] for r in rows]
    return rep


def cmd_pic(cfg: RunConfig) -> Report:
    rep = Report(cfg)
    p = family_params(cfg)
    family = _family_of(cfg, p)
    res = rep.results
    res["family"] = family
    if family == "Z":
        cubic = p if p.cubic_ab() is not None else FamilyParams.cubic(1, 1)
        res["params"] = cubic.to_json()
        form = strict_form(build_tower(cubic, "Z"))
        try:
            z = resolve_z(form)
        except ZVariantError as exc:
            rep.warnings.append(str(exc))
            rep.exit_code = EXIT_FAIL
            return rep
        rep.warnings.append(f"Z variant selected: {z.variant} (the only candidate that is an "
                            f"isometry of the strict-transform form and grows quadratically)")
        M = z.matrix
        res["variants"] = z.report
        res["isometry"] = z.report[z.variant]["isometry"]
        res["signature"] = list(form.signature())
        factor = None
    else:
        n = p.n
        try:
            M = pic_matrix(n, family)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        res["params"] = p.to_json()
        factor = named_factor(n)
    cp = charpoly(M)
    g = growth_class(M)
    res["basis"] = list(M.basis.labels)
    res["matrix"] = M.to_json()
    res["charpoly"] = poly_str(cp)
    if factor is not None:
        res["named_factor"] = poly_str(factor)
        res["named_factor_divides"] = poly_divides(factor, cp)
        res["spectral_radius"] = spectral_radius(factor)
        if family == "X":
            res["restricted_charpoly"] = poly_str(charpoly(x_restricted(p.n)))
    else:
        res["spectral_radius"] = spectral_radius(cp)
    res["growth"] = g.to_json()
    rep.tsv = [["row"] + list(M.basis.labels)] + [[lab] + list(r)
                                                  for lab, r in zip(M.basis.labels, M.rows)]
    return rep


def cmd_verify(cfg: RunConfig) -> Report:
    rep = Report(cfg)
    suite = cfg.suite or "all"
    if suite != "all" and suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    explicit = cfg.coeffs is not None or cfg.cubic is not None
    p = family_params(cfg)
    cubic = _cubic_for(cfg, p)
    ctx = VerifyContext(p, cubic, cfg.horizon)
    results = []
    for name in (SUITES if suite == "all" else (suite,)):
        if name == "fibermaps" and not explicit and p.n >= 1:
            # identities in the fiber coordinate hold with the a_j left symbolic
            results += run_suite(name, VerifyContext(FamilyParams.symbolic(p.n), cubic,
                                                     cfg.horizon))
        else:
            results += run_suite(name, ctx)
    res = rep.results
    res["params"] = p.to_json()
    res["cubic"] = cubic.to_json()
    res["checks"] = [r.to_json() for r in results]
    res["passed"] = sum(r.passed for r in results)
    res["failed"] = sum(not r.passed for r in results)
    if res["failed"]:
        rep.exit_code = EXIT_FAIL
    rep.tsv = [["suite", "check", "passed"]] + [[r.suite, r.name, r.passed] for r in results]
    return rep


COMMANDS = {"show": cmd_show, "degseq": cmd_degseq, "pic": cmd_pic, "verify": cmd_verify}


# ---------------------------------------------------------------------------
# output


def _default(o):
    try:
        return fmt_scalar(o)
    except TypeError:
        return str(o)


def render_json(rep: Report) -> str:
    return json.dumps(rep.to_json(), indent=2, default=_default) + "\n"


def render_tsv(rep: Report) -> str:
    rows = rep.tsv or [["key", "value"]] + [[k, json.dumps(v, default=_default)]
                                            for k, v in rep.results.items()]
    return "".join("\t".join(str(c) for c in r) + "\n" for r in rows)


def _text_lines(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                yield f"{pad}{k}:"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}{k}: {json.dumps(v, default=_default)}"
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                yield f"{pad}-"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}- {json.dumps(v, default=_default)}"


def render_text(rep: Report) -> str:
    lines = [f"kmap {rep.config.command} (version {__version__}, seed {rep.config.seed})"]
    if rep.config.command == "verify":
        for c in rep.results["checks"]:
            lines.append(f"{'PASS' if c['passed'] else 'FAIL'}  {c['suite']}: {c['name']}")
            if not c["passed"]:
                lines.extend(_text_lines(c["detail"], 2))
        lines.append(f"{rep.results['passed']} passed, {rep.results['failed']} failed")
    else:
        lines.extend(_text_lines(rep.results))
    lines.extend(f"warning: {w}" for w in rep.warnings)
    if rep.timing is not None:
        lines.append(f"time: {rep.timing:.3f} s")
    return "\n".join(lines) + "\n"


RENDER = {"json": render_json, "tsv": render_tsv, "text": render_text}


# ---------------------------------------------------------------------------
# argument handling


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="degree of F (random coefficients unless given)")
    common.add_argument("--coeffs", help='exact rationals "a0,a1,...,an"')
    common.add_argument("--cubic", help='"a,b": F = a y^3 + a y^2 + b y + 2')
    common.add_argument("--iters", type=int, default=5, help="number of iterates m_max")
    common.add_argument("--mode", choices=("rational", "prime"), default="prime")
    common.add_argument("--prime", type=int, help="first prime for prime-field mode")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="term budget for rational mode")
    common.add_argument("--horizon", type=int, default=DEFAULT_HORIZON,
                        help="orbit and genericity scan length")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=tuple(RENDER), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--timing", action="store_true",
                        help="add wall-clock time (makes the report nondeterministic)")

    parser = argparse.ArgumentParser(prog="kmap", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("show", parents=[common], help="components, Jacobian and exceptional curves")
    sub.add_parser("degseq", parents=[common], help="degree sequence against the prediction")
    pic = sub.add_parser("pic", parents=[common], help="pullback matrix and its growth")
    pic.add_argument("--family", choices=("X", "Y", "Z", "x", "y", "z"))
    ver = sub.add_parser("verify", parents=[common], help="run identity checks")
    ver.add_argument("suite", nargs="?", default="all", help=", ".join(SUITES + ("all",)))
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    coeffs = _parse_list(ns.coeffs, "--coeffs") if ns.coeffs is not None else None
    cubic = _parse_list(ns.cubic, "--cubic") if ns.cubic is not None else None
    if ns.horizon < 1:
        raise UsageError("--horizon must be positive")
    return RunConfig(
        command=ns.command, n=ns.n,
        coeffs=[fmt_scalar(c) for c in coeffs] if coeffs is not None else None,
        cubic=[fmt_scalar(c) for c in cubic] if cubic is not None else None,
        family=getattr(ns, "family", None), suite=getattr(ns, "suite", None),
        iters=ns.iters, mode=ns.mode, prime=ns.prime, budget=ns.budget,
        horizon=ns.horizon, seed=ns.seed, format=ns.format, out=ns.out, timing=ns.timing)


def run(cfg: RunConfig) -> Report:
    start = time.perf_counter()
    rep = COMMANDS[cfg.command](cfg)
    if cfg.timing:
        rep.timing = time.perf_counter() - start
    return rep


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        rep = run(cfg)
    except (UsageError, DegenerateMap) as exc:
        parser.error(str(exc))  # exits with status 2
    text = RENDER[cfg.format](rep)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
