"""Command-line driver: ``nsaw verify | limits | compute``.

Exit codes: 0 when every record passes, 1 when any record fails, 2 for
configuration errors (bad or missing parameters).
"""

from __future__ import annotations

import argparse
import json
import math
import random
import re
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import askey_wilson as aw
from . import bessel, daha, jacobi, little_q_jacobi as lqj, nonsym_aw
from .core_poly import LaurentPoly, scalar
from .errors import ConfigError, NsawError
from .report import VerificationReport

FAMILIES = ("aw", "daha", "nonsym-aw", "lqj", "jacobi", "bessel")
LIMIT_KINDS = ("aw-to-lqj", "aw-to-jacobi", "lqj-to-jacobi", "jacobi-to-bessel")
COMPUTE_OBJECTS = ("e-poly", "p-poly", "h", "gram", "recurrence")

# defaults for the limit sweeps and for the jacobi/bessel suites
DEFAULT_LQJ = {"q": Fraction(1, 4), "a": Fraction(1, 3), "b": Fraction(1, 5)}
DEFAULT_JACOBI = {"alpha": Fraction(1, 2), "beta": Fraction(1, 3)}
DEFAULT_TOL = {
    "aw-to-lqj": 1e-6,
    "aw-to-jacobi": 1e-4,
    "lqj-to-jacobi": 1e-4,
    "jacobi-to-bessel": 1e-3,
}
PARAM_NAMES = ("q", "a", "b", "c", "d", "alpha", "beta", "lam")


@dataclass
class RunConfig:
    command: str
    target: str
    params: dict = field(default_factory=dict)
    n: int | None = None
    nmax: int = 4
    maxdeg: int = 8
    steps: int | None = None
    seed: int = 0
    samples: int = 0
    tol: float | None = None
    x: float = 1.0
    fmt: str = "text"
    out: str | None = None
    timing: bool = True
    plot: bool = True
    family: str = "aw"

    def require(self, *names) -> list:
        missing = [n for n in names if n not in self.params]
        if missing:
            raise ConfigError(f"{self.target} needs --{', --'.join(missing)}")
        return [self.params[n] for n in names]

    def with_defaults(self, defaults: dict) -> dict:
        return {k: self.params.get(k, v) for k, v in defaults.items()}

    def shown_params(self, names) -> dict:
        return {k: str(self.params[k]) for k in names if k in self.params}


def _parse_rational(name: str, text: str) -> Fraction:
    try:
        return scalar(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ConfigError(f"--{name}: {text!r} is not an integer or p/q rational") from exc


def _pick_format(ns: argparse.Namespace) -> str:
    """--format wins; otherwise the --out suffix; otherwise csv for limit tables."""
    if ns.format:
        return ns.format
    suffix = Path(ns.out).suffix.lower().lstrip(".") if ns.out else ""
    if suffix in ("json", "csv"):
        return suffix
    return "csv" if ns.command == "limits" else "text"


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    params = {}
    for name in PARAM_NAMES:
        v = getattr(ns, name, None)
        if v is not None:
            params[name] = _parse_rational(name, v)
    for name in ("nmax", "maxdeg", "samples"):
        v = getattr(ns, name, None)
        if v is not None and v < 0:
            raise ConfigError(f"--{name} must be >= 0")
    steps = getattr(ns, "steps", None)
    if steps is not None and steps < 1:
        raise ConfigError("--steps must be positive")
    cfg = RunConfig(
        command=ns.command,
        target=ns.target,
        params=params,
        n=getattr(ns, "n", None),
        nmax=ns.nmax if ns.nmax is not None else 4,
        maxdeg=ns.maxdeg if ns.maxdeg is not None else 8,
        steps=steps,
        seed=ns.seed,
        samples=ns.samples or 0,
        tol=ns.tol,
        x=float(_parse_rational("x", ns.x)) if ns.x is not None else 1.0,
        fmt=_pick_format(ns),
        out=ns.out,
        timing=not ns.no_timing,
        plot=not ns.no_plot,
        family=getattr(ns, "family", "aw"),
    )
    return cfg


# --- parameter packs -----------------------------------------------------------

def _aw_params(cfg: RunConfig) -> aw.AWParams:
    q, a, b, c, d = cfg.require("q", "a", "b", "c", "d")
    try:
        return aw.AWParams(q, a, b, c, d)
    except NsawError as exc:
        raise ConfigError(str(exc)) from exc


def _lqj_params(cfg: RunConfig, defaults: bool = False) -> lqj.LQJParams:
    vals = cfg.with_defaults(DEFAULT_LQJ) if defaults else dict(zip("qab", cfg.require("q", "a", "b")))
    try:
        p = lqj.LQJParams(vals["q"], vals["a"], vals["b"])
        lqj.exact_sqrt(p.q)
    except NsawError as exc:
        raise ConfigError(str(exc)) from exc
    return p


def _jacobi_params(cfg: RunConfig) -> jacobi.JacobiParams:
    vals = cfg.with_defaults(DEFAULT_JACOBI)
    return jacobi.JacobiParams(vals["alpha"], vals["beta"])


# --- verify ----------------------------------------------------------------------

def _zero(r):
    return r.is_zero(), None if r.is_zero() else r


def _verify_aw(cfg, rep):
    p = _aw_params(cfg)
    sets = [("given", p)]
    rng = random.Random(cfg.seed)
    for i in range(cfg.samples):
        sets.append((f"sample{i:02d}", aw.random_aw_params(rng, max_n=cfg.nmax + 2)))
    for tag, pp in sets:
        for n in range(cfg.nmax + 1):
            rep.guarded(
                f"aw.{tag}.cross-construction.n={n}",
                "4phi3 series equals three-term recurrence",
                lambda: _zero(aw.aw_poly(n, pp, "hypergeometric") - aw.aw_poly(n, pp)),
            )
            rep.guarded(
                f"aw.{tag}.L-eigen.n={n}",
                "Askey-Wilson q-difference equation",
                lambda: _zero(aw.aw_L_apply(aw.aw_poly(n, pp), pp) - aw.aw_poly(n, pp) * aw.aw_L_eigenvalue(n, pp)),
            )
            rep.guarded(
                f"aw.{tag}.norm.n={n}",
                "norm h_n equals C_1...C_n",
                lambda: _norm_check(n, pp),
            )
    fav = aw.favard_check(p, 50)
    rep.add("aw.given.favard", "Favard positivity (real B_n, positive C_n)", True if fav.passed else None, fav)


def _norm_check(n, p):
    prod = Fraction(1)
    for k in range(1, n + 1):
        prod = prod * aw.recurrence_coeffs(k, p)[1]
    h = aw.aw_norm(n, p)
    return h == prod, f"closed form {h} vs product {prod}"


def _verify_daha(cfg, rep):
    p = _aw_params(cfg)
    for k in daha._monomial_order(cfg.maxdeg):
        f = LaurentPoly.monomial(k)
        for name, rel in daha.RELATIONS.items():
            rep.guarded(f"daha.relation{name}.z^{k}", f"DAHA quadratic relation {name} = 0", lambda: _zero(rel(f, p)))
        rep.guarded(
            f"daha.Y-routes.z^{k}",
            "Y = T1 T0 equals the explicit q-difference-reflection formula",
            lambda: _zero(daha.y_by_composition(f, p) - daha.y_by_formula(f, p)),
        )
    for r in daha.decomposition_consistency_check(p, cfg.maxdeg):
        rep.add(f"daha.matrix-Y.z^{r.k}", "2x2 matrix form of Y conjugates to scalar Y", r.passed, r.error)


def _verify_nonsym(cfg, rep):
    p = _aw_params(cfg)
    for n in range(-cfg.nmax, cfg.nmax + 1):
        for route in ("scalar", "matrix", "four_equations"):
            rep.guarded(
                f"nonsym-aw.eigen.{route}.n={n}",
                "Y E_n = q^n E_n (n < 0), q^(n-1) abcd E_n (n >= 0)",
                lambda: (lambda r: (nonsym_aw.residual_is_zero(r), r))(nonsym_aw.eigen_residual(n, p, route)),
            )
    C = nonsym_aw.form_constant(p)
    for n in range(1, cfg.nmax + 1):
        rep.guarded(
            f"nonsym-aw.form-constant.n={n}",
            "bilinear form constant independent of n",
            lambda: (lambda v: (v == C, f"{v} vs {C}"))(nonsym_aw.form_constant_from_n(n, p)),
        )
    G = nonsym_aw.gram_report(cfg.nmax, p)
    off = [(k, v) for k, v in G.items() if k[0] != k[1] and v != 0]
    rep.add("nonsym-aw.gram.diagonal", "orthogonality of E_n under the bilinear form", not off, off[:1] or None)
    cert = nonsym_aw.positivity_check(p, 50)
    if cert.applicable:
        rep.add("nonsym-aw.positivity", "positive definiteness conditions (ab < 0, cd < 1, C > 0)", cert.passed,
                [i for i in cert.inequalities if not i.holds] or None)
        diag = [G[(n, n)] for n in range(-cfg.nmax, cfg.nmax + 1)]
        rep.add("nonsym-aw.gram.positive-diagonal", "positive norms under a positive definite form",
                all(v > 0 for v in diag), diag)
    else:
        rep.add("nonsym-aw.positivity", "positive definiteness conditions (ab < 0, cd < 1, C > 0)", None, "ab >= 0")


def _verify_lqj(cfg, rep):
    p = _lqj_params(cfg)
    for n in range(cfg.nmax + 1):
        rep.guarded(
            f"lqj.L-eigen.n={n}",
            "little q-Jacobi q-difference equation",
            lambda: _zero(lqj.lqj_L_apply(lqj.lqj_poly(n, p), p) - lqj.lqj_poly(n, p) * lqj.lqj_L_eigenvalue(n, p)),
        )
    for n in range(-cfg.nmax, cfg.nmax + 1):
        rep.guarded(
            f"lqj.eigen.n={n}",
            "matrix Y eigen equation for vector-valued little q-Jacobi E_n",
            lambda: (lambda r: (r.is_zero(), r))(lqj.lqj_eigen_residual(n, p)),
        )
    G = lqj.lqj_gram_report(cfg.nmax, p)
    off = [(k, v) for k, v in G.items() if k[0] != k[1] and v != 0]
    rep.add("lqj.gram.diagonal", "orthogonality under the little q-Jacobi bilinear form", not off, off[:1] or None)
    diag = [G[(n, n)] for n in range(-cfg.nmax, cfg.nmax + 1)]
    rep.add("lqj.gram.positive-diagonal", "positive norms for 0 < a, b < 1/q",
            all(v > 0 for v in diag) if p.positive_regime() else None, diag)


def _verify_jacobi(cfg, rep):
    p = _jacobi_params(cfg)
    for n in range(-cfg.nmax, cfg.nmax + 1):
        for route in ("scalar", "matrix"):
            rep.guarded(
                f"jacobi.eigen.{route}.n={n}",
                "Y E_-n = n E_-n, Y E_n = -(n+alpha+beta+1) E_n",
                lambda: (lambda r: (r.is_zero(), r))(jacobi.jac_eigen_residual(n, p, route)),
            )
    for n in range(cfg.nmax + 1):
        rep.guarded(f"jacobi.relation-to-interval.n={n}",
                    "P_n[z] = (-4)^n P~_n((2 - z - 1/z)/4)", lambda: (jacobi.interval_relation_check(n, p), jacobi.jac_poly(n, p)))
    for k, ok, r in jacobi.matrix_consistency_check(p, cfg.maxdeg):
        rep.add(f"jacobi.matrix-Y.z^{k}", "2x2 matrix form of the differential-reflection operator", ok, r)
    for row in jacobi.shift_operator_table(cfg.nmax, p):
        n = row["n"]
        rep.add(f"jacobi.shift.n={n}", "lowering multiple n, raising multiple n+alpha+beta+1",
                row["lowering"] == n and row["raising"] == n + p.s, row)
    G = jacobi.jac_gram_report(cfg.nmax, p)
    off = [(k, v) for k, v in G.items() if k[0] != k[1] and v != 0]
    rep.add("jacobi.gram.diagonal", "orthogonality of nonsymmetric Jacobi E_n", not off, off[:1] or None)
    diag = [G[(n, n)] for n in range(-cfg.nmax, cfg.nmax + 1)]
    rep.add("jacobi.gram.positive-diagonal", "positive definite for alpha, beta > -1",
            all(v > 0 for v in diag) if p.positive_regime() else None, diag)
    if p.positive_regime():
        tol = cfg.tol if cfg.tol is not None else 1e-8
        for m, n in ((1, -1), (2, 1), (0, 0)):
            rep.guarded(
                f"jacobi.circle.{m},{n}",
                "unit-circle integral with weight |(1-z)^(a+1/2)(1+z)^(b+1/2)|^2",
                lambda: (lambda r: (r.residual < tol, f"residual {r.residual:.3e}"))(
                    jacobi.circle_orthogonality(m, n, p, 2048)),
            )


def _verify_bessel(cfg, rep):
    p = _jacobi_params(cfg)
    alpha = p.alpha
    lam = cfg.params.get("lam", Fraction(1))
    # series identities are checked through this order
    K = max(30, cfg.maxdeg)
    res = bessel.dunkl_eigen_residual(alpha, lam, K + 1)
    rep.add("bessel.dunkl-eigen", "Y E_alpha(lam .) = i lam E_alpha(lam .)",
            res.even.truncate(K).is_zero() and res.odd.truncate(K).is_zero(), res)
    top, bottom = bessel.vector_eigen_check(alpha, lam, K + 2)
    rep.add("bessel.vector-eigen", "vector-valued Bessel eigen equation",
            top.truncate(K).is_zero() and bottom.truncate(K).is_zero(), (top, bottom))
    lo, hi = bessel.lowering_raising_residuals(alpha, K + 1)
    rep.add("bessel.lowering-raising", "lowering and raising differentiation formulas",
            lo.truncate(K).is_zero() and hi.truncate(K).is_zero(), (lo, hi))
    rep.add("bessel.value-at-zero", "J_alpha(0) = 1", bessel.bessel_series(alpha, lam, K).coeff(0) == 1)
    tol = cfg.tol if cfg.tol is not None else 1e-12
    ts = [i / 20 for i in range(201)]
    for name, a, ref in (("cos", Fraction(-1, 2), math.cos), ("sinc", Fraction(1, 2), _sinc)):
        err = max(abs(bessel.bessel_eval(a, t)[0] - ref(t)) for t in ts)
        rep.add(f"bessel.closed-form.{name}", f"normalised J_{a} equals {name} on [0, 10]", err < tol, f"{err:.3e}")


def _sinc(t: float) -> float:
    return math.sin(t) / t if t else 1.0


SUITES = {
    "aw": (_verify_aw, ("q", "a", "b", "c", "d")),
    "daha": (_verify_daha, ("q", "a", "b", "c", "d")),
    "nonsym-aw": (_verify_nonsym, ("q", "a", "b", "c", "d")),
    "lqj": (_verify_lqj, ("q", "a", "b")),
    "jacobi": (_verify_jacobi, ("alpha", "beta")),
    "bessel": (_verify_bessel, ("alpha", "lam")),
}


def run_verify(cfg: RunConfig) -> VerificationReport:
    if cfg.target not in SUITES:
        raise ConfigError(f"unknown family {cfg.target!r}; choose from {', '.join(FAMILIES)}")
    fn, names = SUITES[cfg.target]
    rep = VerificationReport(cfg.target, cfg.shown_params(names))
    t0 = time.perf_counter()
    fn(cfg, rep)
    if cfg.timing:
        rep.elapsed_ms = round((time.perf_counter() - t0) * 1000, 1)
    return rep


# --- limits ----------------------------------------------------------------------

def _limit_reports(cfg: RunConfig):
    kind = cfg.target
    n = cfg.n if cfg.n is not None else 1
    if kind == "aw-to-lqj":
        p = _lqj_params(cfg, defaults=True)
        shown = {k: str(v) for k, v in p.as_dict().items()}
        return shown, [lqj.lqj_limit_check(n, p, steps=cfg.steps or 20)]
    if kind in ("aw-to-jacobi", "lqj-to-jacobi"):
        p = _jacobi_params(cfg)
        which = "from_aw" if kind == "aw-to-jacobi" else "from_lqj"
        reps = [jacobi.jac_limit_checks(which, n, p, steps=cfg.steps or 16, target="poly")]
        if n != 0:
            reps.append(jacobi.jac_limit_checks(which, n, p, steps=cfg.steps or 16, target="E"))
        return p.as_dict(), reps
    if kind == "jacobi-to-bessel":
        p = _jacobi_params(cfg)
        lam = cfg.params.get("lam", Fraction(1))
        top = cfg.steps or 10
        n_list = tuple(2**k for k in range(3, max(top, 3) + 1))
        reps = [
            bessel.bessel_limit_check(p.alpha, p.beta, lam, cfg.x, n_list, target=t)
            for t in ("symmetric", "E(-n),+", "E(-n),-", "E(+n),+", "E(+n),-")
        ]
        shown = dict(p.as_dict(), lam=str(lam), x=repr(cfg.x))
        return shown, reps
    raise ConfigError(f"unknown limit {kind!r}; choose from {', '.join(LIMIT_KINDS)}")


def run_limits(cfg: RunConfig):
    t0 = time.perf_counter()
    shown, reports = _limit_reports(cfg)
    tol = cfg.tol if cfg.tol is not None else DEFAULT_TOL[cfg.target]
    rep = VerificationReport(f"limits.{cfg.target}", shown)
    table = []
    for r in reports:
        for row in r.rows:
            table.append({"series": r.name, "step": row.step, "parameter": row.parameter,
                          "error": row.error, "order": row.order})
        tail = min(10, len(r.rows))
        rep.add(f"{r.name}.final-error", f"error below {tol:g} at the last step", r.final_error < tol,
                f"{r.final_error:.3e}")
        rep.add(f"{r.name}.monotone", f"error decreasing over the last {tail} steps", r.monotone_tail(tail))
        order = r.empirical_order(3)
        if cfg.target == "jacobi-to-bessel":
            # no rate is claimed for this limit: the order is reported, never judged
            rep.add(f"{r.name}.order", "empirical convergence order (recorded only)", None,
                    None if order is None else f"{order:.3f}")
        else:
            rep.add(f"{r.name}.order", "empirical convergence order >= 0.9",
                    None if order is None else order >= 0.9, None if order is None else f"{order:.3f}")
    rep.table = table
    if cfg.timing:
        rep.elapsed_ms = round((time.perf_counter() - t0) * 1000, 1)
    return rep, reports


# --- compute ---------------------------------------------------------------------

def _coeff_map(f: LaurentPoly) -> dict[str, str]:
    return {str(k): str(v) for k, v in sorted(f.coeffs.items())}


def run_compute(cfg: RunConfig) -> dict:
    obj, fam = cfg.target, cfg.family
    n = cfg.n if cfg.n is not None else 0
    if obj not in COMPUTE_OBJECTS:
        raise ConfigError(f"unknown object {obj!r}; choose from {', '.join(COMPUTE_OBJECTS)}")
    if obj == "e-poly" and n == 0:
        return {"object": "E_0", "family": fam, "value": "1", "coefficients": {"0": "1"}}
    if fam in ("aw", "nonsym-aw", "daha"):
        p = _aw_params(cfg)
        if obj == "e-poly":
            f = nonsym_aw.E_laurent(n, p)
        elif obj == "p-poly":
            f = aw.aw_poly(abs(n), p)
        elif obj == "h":
            return {"object": "h", "family": fam, "value": [str(aw.aw_norm(k, p)) for k in range(cfg.nmax + 1)]}
        elif obj == "recurrence":
            rows = [aw.recurrence_coeffs(k, p) for k in range(cfg.nmax + 1)]
            return {"object": "recurrence", "family": fam, "value": [[str(B), str(C)] for B, C in rows]}
        else:
            G = nonsym_aw.gram_report(cfg.nmax, p)
            return {"object": "gram", "family": fam, "value": {f"{m},{k}": str(v) for (m, k), v in G.items()}}
    elif fam == "jacobi":
        p = _jacobi_params(cfg)
        if obj == "e-poly":
            f = jacobi.jac_E_laurent(n, p)
        elif obj == "p-poly":
            f = jacobi.jac_poly(abs(n), p)
        elif obj == "h":
            return {"object": "h", "family": fam, "value": [str(jacobi.jac_norm(k, p)) for k in range(cfg.nmax + 1)]}
        elif obj == "gram":
            G = jacobi.jac_gram_report(cfg.nmax, p)
            return {"object": "gram", "family": fam, "value": {f"{m},{k}": str(v) for (m, k), v in G.items()}}
        else:
            raise ConfigError("recurrence is only available for the aw family")
    elif fam == "lqj":
        p = _lqj_params(cfg)
        if obj == "e-poly":
            v = lqj.lqj_E_vec(n, p)
            return {"object": f"E_{n}", "family": fam, "value": [str(v.g1), str(v.g2)],
                    "coefficients": [_coeff_map(v.g1), _coeff_map(v.g2)]}
        if obj == "p-poly":
            f = lqj.lqj_poly(abs(n), p)
        elif obj == "h":
            return {"object": "h", "family": fam, "value": [str(lqj.lqj_norm(k, p)) for k in range(cfg.nmax + 1)]}
        elif obj == "gram":
            G = lqj.lqj_gram_report(cfg.nmax, p)
            return {"object": "gram", "family": fam, "value": {f"{m},{k}": str(v) for (m, k), v in G.items()}}
        else:
            raise ConfigError("recurrence is only available for the aw family")
    else:
        raise ConfigError(f"compute does not support family {fam!r}")
    name = f"E_{n}" if obj == "e-poly" else f"P_{abs(n)}"
    return {"object": name, "family": fam, "value": str(f), "coefficients": _coeff_map(f)}


def render_compute(result: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result, indent=2) + "\n"
    value = result["value"]
    if isinstance(value, dict):
        return "\n".join(f"{k}: {v}" for k, v in value.items()) + "\n"
    if isinstance(value, list):
        return "\n".join(", ".join(map(str, v)) if isinstance(v, (list, tuple)) else str(v) for v in value) + "\n"
    return f"{value}\n"


# --- argument parsing ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    for name in ("q", "a", "b", "c", "d", "alpha", "beta", "lam"):
        common.add_argument(f"--{name}", help="integer or p/q rational")
    common.add_argument("--n", type=int, help="index of the polynomial or limit")
    common.add_argument("--nmax", type=int, help="largest |n| checked (default 4)")
    common.add_argument("--maxdeg", type=int, help="largest |k| for monomial checks (default 8)")
    common.add_argument("--steps", type=int, help="number of limit steps")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled parameter sets")
    common.add_argument("--samples", type=int, default=0, help="extra seeded parameter sets (aw suite)")
    common.add_argument("--tol", type=float, help="error tolerance for float checks")
    common.add_argument("--x", help="evaluation point for the Bessel limit (default 1)")
    common.add_argument(
        "--format", choices=("json", "text", "csv"),
        help="default: from the --out suffix, else csv for limits and text otherwise",
    )
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--no-timing", action="store_true", help="leave elapsed_ms out, for byte-stable reports")
    common.add_argument("--no-plot", action="store_true", help="do not write the PNG next to --out")

    parser = argparse.ArgumentParser(prog="nsaw", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run an exact verification suite")
    v.add_argument("target", metavar="family", help=", ".join(FAMILIES))
    lim = sub.add_parser("limits", parents=[common], help="run a limit sweep")
    lim.add_argument("target", metavar="kind", help=", ".join(LIMIT_KINDS))
    c = sub.add_parser("compute", parents=[common], help="print an exact object")
    c.add_argument("target", metavar="object", help=", ".join(COMPUTE_OBJECTS))
    c.add_argument("--family", default="aw", choices=("aw", "lqj", "jacobi"))
    return parser


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


_NEGATIVE_RATIONAL = re.compile(r"^-\d+(/\d+)?$")


def _join_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--b -1/4`` into ``--b=-1/4``; argparse would read -1/4 as a flag."""
    flags = {f"--{name}" for name in PARAM_NAMES} | {"--n", "--x", "--seed"}
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in flags and i + 1 < len(argv) and _NEGATIVE_RATIONAL.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    ns = parser.parse_args(_join_negative_values(argv))
    try:
        cfg = config_from_args(ns)
        if cfg.command == "verify":
            rep = run_verify(cfg)
            _emit(rep.render(cfg.fmt), cfg.out)
            return 0 if rep.passed else 1
        if cfg.command == "limits":
            rep, reports = run_limits(cfg)
            _emit(rep.render(cfg.fmt), cfg.out)
            if cfg.out and cfg.plot:
                from .plotting import plot_limits

                plot_limits(reports, Path(cfg.out).with_suffix(".png"), title=rep.suite)
            return 0 if rep.passed else 1
        result = run_compute(cfg)
        _emit(render_compute(result, cfg.fmt), cfg.out)
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NsawError as exc:
        # a parameter choice that makes an object undefined
        print(f"config error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
