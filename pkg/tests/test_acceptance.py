"""Acceptance gate: every criterion at its stated tolerance, one line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
pass/fail lines; the same batch is exposed on the command line as
`hyperconnect verify --suite acceptance`.
"""

import math
import time
from fractions import Fraction

import qfamily_oracles
from hyperconnect import (
    IdentityCase,
    batch_verify,
    catalog,
    families,
    numeric,
)
from hyperconnect.families import gf_expand, normalization_at
from hyperconnect.verify import _DEFAULT_X_SAMPLES, GF_IDENTITIES

CANON = {
    "x": Fraction(4), "alpha": Fraction(3, 2), "beta": Fraction(7, 3),
    "c": Fraction(2, 5), "d": Fraction(3, 7), "gamma": Fraction(5, 4),
}
KRAW_GF = {
    "x": Fraction(5, 2), "p": Fraction(1, 2), "q": Fraction(1, 3),
    "N": 4, "M": 6, "gamma": Fraction(5, 4),
}
KRAW_CONN = {"p": Fraction(1, 2), "q": Fraction(1, 3), "N": 4, "M": 7}
TOL10 = numeric(1e-10, 0.0)
TOL9 = numeric(1e-9, 1e-9)


def run_cases(cases, budget_seconds=None, label=""):
    start = time.perf_counter()
    reports = batch_verify(cases)
    elapsed = time.perf_counter() - start
    bad = [r for r in reports if r.status != "pass"]
    verdict = "PASS" if not bad else "FAIL"
    print(f"{verdict}  {label}: {len(reports) - len(bad)}/{len(reports)} cases,"
          f" {elapsed:.2f}s")
    for r in bad:
        print(f"      {r.status} {r.case.identity}: {r.detail}"
              f" first_failing_order={r.first_failing_order}"
              f" deviation={r.deviation}")
    assert not bad
    if budget_seconds is not None:
        assert elapsed < budget_seconds, f"{label} exceeded {budget_seconds}s"
    return reports


def pick(params, *names):
    return {k: params[k] for k in names}


def test_criterion_1_connection_exactness():
    from hyperconnect.connection import get_relation

    cases = [
        IdentityCase(rel, {**pick(CANON, *get_relation(rel).names),
                           "n_max": 8, "x_samples": _DEFAULT_X_SAMPLES})
        for rel in (
            "meixner_alpha_c_to_beta_d", "meixner_same_alpha_c_to_d",
            "meixner_alpha_to_beta", "meixner_type_c_to_d", "meixner_type_alpha_c",
        )
    ]
    # the Krawtchouk relations require n <= N, so n_max caps at N = 4
    cases += [
        IdentityCase(rel, {**pick(KRAW_CONN, *get_relation(rel).names),
                           "n_max": min(8, KRAW_CONN["N"]),
                           "x_samples": _DEFAULT_X_SAMPLES})
        for rel in ("krawtchouk_p_N_to_q_M", "krawtchouk_p_to_q_same_N",
                    "krawtchouk_same_p_N_to_M")
    ]
    reports = run_cases(cases, budget_seconds=5.0,
                        label="criterion 1 (connection exactness)")
    assert all(r.deviation == 0.0 for r in reports)


def test_criterion_2_power_collection_equals_closed_form():
    case = IdentityCase(
        "power_collect_matches_closed_form",
        {**pick(CANON, "alpha", "beta", "c"), "n_max": 10},
    )
    reports = run_cases([case], budget_seconds=1.0,
                        label="criterion 2 (power collection = closed form)")
    assert reports[0].deviation == 0.0


def test_criterion_3_oracle_agreement():
    cases = [
        IdentityCase("oracle_meixner_alpha",
                     {**pick(CANON, "alpha", "beta", "c"), "n_max": 10}),
        IdentityCase("oracle_meixner_two_param",
                     {**pick(CANON, "alpha", "beta", "c", "d"), "n_max": 8}),
        IdentityCase("oracle_krawtchouk", {**KRAW_CONN, "n_max": 4}),
        IdentityCase(
            "oracle_al_salam_carlitz_1",
            {"a_from": Fraction(1, 4), "a_to": Fraction(1, 5),
             "q": Fraction(1, 3), "n_max": 6},
            field=TOL10,
        ),
    ]
    reports = run_cases(cases, label="criterion 3 (oracle agreement)")
    # exact ones literally exact; the q-family comparison within 1e-10
    assert all(r.deviation == 0.0 for r in reports[:3])
    assert reports[3].deviation <= 1e-10


def test_criterion_4_generalized_generating_functions():
    cases = []
    for identity, (_, names) in GF_IDENTITIES.items():
        if identity.startswith("krawtchouk"):
            cases.append(IdentityCase(identity, pick(KRAW_GF, *names),
                                      order=KRAW_GF["N"]))
        else:
            cases.append(IdentityCase(identity, pick(CANON, *names), order=12))
    reports = run_cases(cases, budget_seconds=30.0,
                        label="criterion 4 (generalized generating functions)")
    assert all(r.deviation == 0.0 for r in reports)


def test_criterion_5_specialization_chains():
    cases = [
        IdentityCase("chain_meixner_1f1_c_equals_d",
                     pick(CANON, "x", "alpha", "beta", "c"), order=12),
        IdentityCase("chain_meixner_2f1_d_equals_c",
                     pick(CANON, "x", "alpha", "beta", "c", "gamma"), order=12),
    ] + [
        IdentityCase(chain, KRAW_GF, order=KRAW_GF["N"])
        for chain in ("chain_krawtchouk_1f1_p_equals_q",
                      "chain_krawtchouk_1f1_M_equals_N",
                      "chain_krawtchouk_2f1_p_equals_q",
                      "chain_krawtchouk_2f1_M_equals_N")
    ]
    reports = run_cases(cases, label="criterion 5 (specialization chains)")
    assert all(r.deviation == 0.0 for r in reports)


def test_criterion_6_invariance():
    cases = []
    for gf_id, extra in (("meixner_product_gf", {}), ("meixner_exp_gf", {}),
                         ("meixner_gauss_gf", {"gamma": CANON["gamma"]})):
        for relation, degenerate in (
            ("meixner_alpha_to_beta", {"beta": CANON["alpha"]}),
            ("meixner_type_c_to_d", {"d": CANON["c"]}),
        ):
            cases.append(IdentityCase("gf_invariance", {
                "generating_function": gf_id, "relation": relation,
                "x": CANON["x"], "alpha": CANON["alpha"], "c": CANON["c"],
                **extra, **degenerate,
            }, order=12))
    for gf_id, extra in (("krawtchouk_exp_gf", {}),
                         ("krawtchouk_gauss_gf", {"gamma": KRAW_GF["gamma"]})):
        for relation, degenerate in (
            ("krawtchouk_p_to_q_same_N", {"q": KRAW_GF["p"]}),
            ("krawtchouk_same_p_N_to_M", {"M": KRAW_GF["N"]}),
        ):
            cases.append(IdentityCase("gf_invariance", {
                "generating_function": gf_id, "relation": relation,
                "x": KRAW_GF["x"], "p": KRAW_GF["p"], "N": KRAW_GF["N"],
                **extra, **degenerate,
            }, order=KRAW_GF["N"]))
    reports = run_cases(cases, label="criterion 6 (invariance)")
    assert all(r.deviation == 0.0 for r in reports)


def test_criterion_7_orthogonality():
    cases = []
    for n in range(5):
        for m in range(n + 1):
            cases.append(IdentityCase(
                "meixner_orthogonality",
                {"alpha": Fraction(2), "c": Fraction(1, 2), "n": n, "m": m},
                field=TOL9, x_max=300,
            ))
    for n in range(4):
        cases.append(IdentityCase(
            "meixner_sum_1f1_same_c",
            {"alpha": Fraction(2), "beta": Fraction(3), "c": Fraction(1, 2),
             "t": Fraction(1, 4), "n": n}, field=TOL10, x_max=300,
        ))
        cases.append(IdentityCase(
            "meixner_sum_1f1_two_param",
            {"alpha": Fraction(2), "beta": Fraction(3), "c": Fraction(1, 2),
             "d": Fraction(2, 5), "t": Fraction(1, 4), "n": n},
            field=TOL10, x_max=300,
        ))
        cases.append(IdentityCase(
            "meixner_sum_2f1_same_c",
            {"alpha": Fraction(2), "beta": Fraction(3), "gamma": Fraction(5, 4),
             "c": Fraction(1, 2), "t": Fraction(1, 4), "n": n},
            field=TOL10, x_max=300,
        ))
        cases.append(IdentityCase(
            "meixner_sum_2f1_two_param",
            {"alpha": Fraction(2), "beta": Fraction(3), "gamma": Fraction(5, 4),
             "c": Fraction(1, 2), "d": Fraction(2, 5), "t": Fraction(1, 5),
             "n": n}, field=TOL10, x_max=300,
        ))
    for n in range(3):
        base = {"p": Fraction(1, 2), "q": Fraction(1, 3), "N": 3, "M": 5,
                "t": Fraction(1, 5), "n": n}
        cases.append(IdentityCase("krawtchouk_sum_1f1", base))
        cases.append(IdentityCase("krawtchouk_sum_2f1",
                                  {**base, "gamma": Fraction(5, 4)}))
    reports = run_cases(cases, budget_seconds=20.0,
                        label="criterion 7 (orthogonality)")
    for r in reports:
        if r.case.identity.startswith("krawtchouk"):
            assert r.deviation == 0.0  # finite sums, exact field
        else:
            assert r.tail_bound is not None
            assert r.deviation + r.tail_bound <= r.case.field.atol + 1e-9


def test_criterion_8_bound_predicates():
    cases = [
        IdentityCase(name, {})
        for name in ("pochhammer_bound_abs_lower", "pochhammer_bound_over_factorial",
                     "pochhammer_bound_shifted", "pochhammer_bound_offset")
    ]
    run_cases(cases, label="criterion 8 (rising-factorial bounds)")


def test_criterion_9_catalog_completeness():
    run_cases([IdentityCase("catalog_complete", {})],
              label="criterion 9a (catalog completeness)")
    listed = {d.id for d in catalog()}
    assert len(listed - {"meixner", "krawtchouk"}) == 14

    # exact families: expansion coefficients equal c_n P_n literally
    run_cases([
        IdentityCase("gf_matches_eval",
                     {"family": "meixner", **pick(CANON, "x", "alpha", "c")},
                     order=12),
        IdentityCase("gf_matches_eval",
                     {"family": "krawtchouk", "x": KRAW_GF["x"],
                      "p": KRAW_GF["p"], "N": KRAW_GF["N"]}, order=8),
    ], label="criterion 9b (exact families against direct evaluation)")

    # executable q-subset against the high-precision closed forms, order 8
    checks = [
        ("al_salam_chihara", {"a": 0.25, "b": 0.2, "q": 1 / 3, "theta": math.pi / 3},
         None,
         lambda n, p: qfamily_oracles.al_salam_chihara(n, p["theta"], p["a"], p["b"], p["q"])),
        ("continuous_big_q_hermite", {"a": 0.35, "q": 0.25, "theta": 2 * math.pi / 7},
         None,
         lambda n, p: qfamily_oracles.continuous_big_q_hermite(n, p["theta"], p["a"], p["q"])),
        ("al_salam_carlitz_1", {"a": 0.25, "q": 1 / 3}, 0.6,
         lambda n, p: qfamily_oracles.al_salam_carlitz_1(n, 0.6, p["a"], p["q"])),
        ("al_salam_carlitz_2", {"a": 0.25, "q": 1 / 3}, 0.6,
         lambda n, p: qfamily_oracles.al_salam_carlitz_2(n, 0.6, p["a"], p["q"])),
    ]
    worst = 0.0
    for family, params, x, oracle in checks:
        descriptor = families.get_family(family)
        series = gf_expand(descriptor, x, params, 8)
        for n in range(9):
            c_n = normalization_at(descriptor, n, x, params, series.field)
            want = c_n * oracle(n, params)
            worst = max(worst, abs(series.coefficient(n) - want))
            assert abs(series.coefficient(n) - want) < 1e-10, (family, n)
    print(f"PASS  criterion 9c (q-subset vs closed forms): worst |dev| = {worst:.2e}")


def test_acceptance_suite_is_the_same_batch():
    # the CLI-facing named suite must itself be green
    reports = batch_verify(__import__("hyperconnect").acceptance_suite(order=12))
    bad = [r for r in reports if r.status != "pass"]
    assert not bad, [(r.case.identity, r.detail) for r in bad]
    assert len(reports) >= 80
