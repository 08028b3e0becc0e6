"""Acceptance criteria, one test each.

Every test prints a single line ``criterion N: PASS|FAIL ...`` with its wall
time, so the verdicts show up in the ``pytest -v`` log, and then asserts both
the identity and the time budget.
"""

import math
import random
import time
from fractions import Fraction

import pytest

from nsaw.askey_wilson import (
    AWParams,
    aw_L_apply,
    aw_L_eigenvalue,
    aw_norm,
    aw_poly,
    random_aw_params,
    recurrence_coeffs,
)
from nsaw.bessel import bessel_eval, bessel_limit_check, dunkl_eigen_residual, vector_eigen_check
from nsaw.cli import RunConfig, run_verify
from nsaw.daha import RELATIONS, daha_relations_check, y_route_check
from nsaw.jacobi import (
    JacobiParams,
    circle_orthogonality,
    jac_eigen_residual,
    jac_gram_report,
    jac_limit_checks,
    interval_relation_check,
)
from nsaw.little_q_jacobi import LQJParams, lqj_eigen_residual, lqj_gram_report, lqj_limit_check
from nsaw.mutations import MUTATIONS, mutated
from nsaw.nonsym_aw import eigen_residual, gram_is_diagonal, gram_report, positivity_check, residual_is_zero

F = Fraction
SEED = 20240601
P6 = AWParams(F(1, 2), F(1, 3), F(-1, 4), F(1, 5), F(2, 3))
JAC = JacobiParams(F(1, 2), F(1, 3))


@pytest.fixture(scope="module")
def param_sets():
    rng = random.Random(SEED)
    return [random_aw_params(rng, max_n=8) for _ in range(20)]


@pytest.fixture
def verdict(capsys):
    """verdict(n, ok, elapsed, budget, detail) prints the line and asserts."""

    def report(n, ok, elapsed, budget, detail=""):
        in_time = elapsed < budget
        status = "PASS" if ok and in_time else "FAIL"
        line = f"criterion {n}: {status}  ({elapsed:.2f} s, budget {budget} s)"
        if detail:
            line += f"  {detail}"
        with capsys.disabled():
            print(f"\n{line}")
        assert ok, line
        assert in_time, line

    return report


def test_criterion_01_cross_construction(verdict, param_sets):
    t0 = time.perf_counter()
    bad = [(i, n) for i, p in enumerate(param_sets) for n in range(9)
           if aw_poly(n, p, "hypergeometric") != aw_poly(n, p, "recurrence")]
    verdict(1, not bad, time.perf_counter() - t0, 5, f"20 sets x n <= 8, mismatches {bad[:3]}")


def test_criterion_02_q_difference_equation(verdict, param_sets):
    t0 = time.perf_counter()
    bad = []
    for i, p in enumerate(param_sets):
        for n in range(7):
            P = aw_poly(n, p)
            if not (aw_L_apply(P, p) - P * aw_L_eigenvalue(n, p)).is_zero():
                bad.append((i, n))
    verdict(2, not bad, time.perf_counter() - t0, 5, f"nonzero residuals {bad[:3]}")


def test_criterion_03_norms_from_recurrence(verdict):
    t0 = time.perf_counter()
    prod, ok = F(1), True
    for n in range(9):
        if n:
            prod *= recurrence_coeffs(n, P6)[1]
        ok = ok and aw_norm(n, P6) == prod
    verdict(3, ok, time.perf_counter() - t0, 1, "h_n = C_1...C_n, n <= 8")


def test_criterion_04_daha(verdict):
    t0 = time.perf_counter()
    rels = daha_relations_check(P6, 12)
    routes = y_route_check(P6, 12)
    ok = all(r.passed and r.checked == 25 for r in rels) and len(rels) == len(RELATIONS) == 4
    ok = ok and len(routes) == 25 and all(good for _, good in routes)
    verdict(4, ok, time.perf_counter() - t0, 10, "4 relations and Y = T1 T0 on z^k, |k| <= 12")


def test_criterion_05_nonsymmetric_eigen(verdict):
    t0 = time.perf_counter()
    bad = [(n, route) for n in range(-6, 7) for route in ("scalar", "matrix", "four_equations")
           if not residual_is_zero(eigen_residual(n, P6, route))]
    verdict(5, not bad, time.perf_counter() - t0, 30, f"|n| <= 6, three routes, failures {bad[:3]}")


def test_criterion_06_gram_and_positivity(verdict):
    t0 = time.perf_counter()
    G = gram_report(5, P6)
    cert = positivity_check(P6, 50)
    diag_pos = all(G[(n, n)] > 0 for n in range(-5, 6))
    ok = gram_is_diagonal(G) and cert.passed and diag_pos
    verdict(6, ok, time.perf_counter() - t0, 30,
            f"diagonal {gram_is_diagonal(G)}, certificate {cert.passed}, positive {diag_pos}")


def test_criterion_07_little_q_jacobi(verdict):
    t0 = time.perf_counter()
    ok = True
    for a, b in ((F(1, 3), F(1, 5)), (F(3), F(7, 2))):
        p = LQJParams(F(1, 4), a, b)
        ok = ok and all(lqj_eigen_residual(n, p).is_zero() for n in range(-4, 5))
        G = lqj_gram_report(4, p)
        ok = ok and all(v == 0 for (m, n), v in G.items() if m != n)
        ok = ok and all(G[(n, n)] > 0 for n in range(-4, 5))
    verdict(7, ok, time.perf_counter() - t0, 10, "q = 1/4, (a, b) = (1/3, 1/5) and (3, 7/2)")


def test_criterion_08_limit_to_little_q_jacobi(verdict):
    t0 = time.perf_counter()
    p = LQJParams(F(1, 4), F(1, 3), F(1, 5))
    rep = lqj_limit_check(1, p, steps=20)
    err = rep.final_error
    ok = err < 1e-6 and rep.monotone_tail(10) and rep.rows[-1].parameter == 2.0**-20
    verdict(8, ok, time.perf_counter() - t0, 5,
            f"n = 1, lambda = 2^-20, normwise error {err:.3e}, "
            f"pointwise {rep.notes['final_errors']['pointwise']:.3e}")


def test_criterion_09_jacobi(verdict):
    t0 = time.perf_counter()
    ok = all(jac_eigen_residual(n, JAC, r).is_zero() for n in range(-6, 7) for r in ("scalar", "matrix"))
    ok = ok and all(interval_relation_check(n, JAC) for n in range(7))
    G = jac_gram_report(5, JAC)
    ok = ok and all(v == 0 for (m, n), v in G.items() if m != n)
    residuals = {mn: circle_orthogonality(*mn, JAC, quad_points=2048).residual for mn in ((1, -1), (2, 1))}
    ok = ok and all(r < 1e-8 for r in residuals.values())
    verdict(9, ok, time.perf_counter() - t0, 30,
            "circle residuals " + ", ".join(f"{k}: {v:.2e}" for k, v in residuals.items()))


def test_criterion_10_q_to_one(verdict):
    t0 = time.perf_counter()
    errors, ok = {}, True
    for kind in ("from_aw", "from_lqj"):
        for target, n in (("poly", 2), ("E", -2), ("E", 2)):
            rep = jac_limit_checks(kind, n, JAC, steps=16, target=target)
            errors[f"{kind}/{target}{n}"] = rep.final_error
            ok = ok and rep.final_error < 1e-4 and rep.monotone_tail(8)
            ok = ok and rep.rows[-1].parameter == 2.0**-16
    worst = max(errors, key=errors.get)
    verdict(10, ok, time.perf_counter() - t0, 10, f"q = 1 - 2^-16, worst {worst} {errors[worst]:.2e}")


def test_criterion_11_bessel(verdict):
    t0 = time.perf_counter()
    ok = True
    for alpha, lam in ((F(-1, 2), F(1)), (F(1, 2), F(2, 3)), (F(3, 2), F(1))):
        r = dunkl_eigen_residual(alpha, lam, 31)
        top, bottom = vector_eigen_check(alpha, lam, 32)
        ok = ok and r.is_zero() and r.order >= 30
        ok = ok and top.truncate(30).is_zero() and bottom.truncate(30).is_zero()
    ts = [i / 20 for i in range(201)]
    closed = max(
        max(abs(bessel_eval(F(-1, 2), t)[0] - math.cos(t)) for t in ts),
        max(abs(bessel_eval(F(1, 2), t)[0] - (math.sin(t) / t if t else 1.0)) for t in ts),
    )
    ok = ok and closed < 1e-12
    lim = {}
    for target in ("symmetric", "E(-n),+", "E(-n),-", "E(+n),+", "E(+n),-"):
        rep = bessel_limit_check(F(1, 2), F(1, 3), 1, 1.0, n_list=(256, 512, 1024), target=target)
        assert rep.rows[-1].step == 1024
        lim[target] = rep.final_error
    ok = ok and all(e < 1e-3 for e in lim.values())
    verdict(11, ok, time.perf_counter() - t0, 10,
            f"cos/sinc {closed:.1e}, worst limit error {max(lim.values()):.2e}")


MUTATION_SUITES = {
    "T1-reflection-sign": ("daha", {"q": F(1, 2), "a": F(1, 3), "b": F(-1, 4), "c": F(1, 5), "d": F(2, 3)}),
    "Y12-dropped-factor": ("daha", {"q": F(1, 2), "a": F(1, 3), "b": F(-1, 4), "c": F(1, 5), "d": F(2, 3)}),
    "L-backward-sign": ("aw", {"q": F(1, 2), "a": F(1, 3), "b": F(-1, 4), "c": F(1, 5), "d": F(2, 3)}),
    "bessel-odd-sign": ("bessel", {"alpha": F(1, 2), "lam": F(3)}),
    "jacobi-reflection-sign": ("jacobi", {"alpha": F(1, 2), "beta": F(1, 3)}),
}


def test_criterion_12_mutation_sensitivity(verdict):
    t0 = time.perf_counter()
    caught = {}
    for name in MUTATIONS:
        target, params = MUTATION_SUITES[name]
        cfg = RunConfig("verify", target, params=dict(params), nmax=3, maxdeg=4, timing=False)
        clean = run_verify(cfg).passed
        with mutated(name):
            caught[name] = clean and not run_verify(cfg).passed
    ok = len(caught) >= 3 and all(caught.values())
    verdict(12, ok, time.perf_counter() - t0, 60,
            f"{sum(caught.values())}/{len(caught)} mutations detected")
