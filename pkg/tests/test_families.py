"""Family catalog, polynomial evaluators, and generating-function expansion."""

import math
from fractions import Fraction

import pytest

import qfamily_oracles
from hyperconnect import (
    NUMERIC,
    DomainError,
    UnsupportedExpansionError,
    catalog,
    family_eval,
    get_family,
    gf_expand,
    isolated_parameters,
    pochhammer,
    poly_from_gf,
)
from hyperconnect.families import normalization_at
from hyperconnect.pochhammer import q_pochhammer

MEIXNER = {"alpha": Fraction(3, 2), "c": Fraction(2, 5)}


def test_meixner_degree_zero_is_one():
    assert family_eval("meixner", 0, Fraction(9, 4), MEIXNER) == 1


def test_meixner_degree_one():
    # M_1(x; 1, 1/2) = 1 - x
    got = family_eval("meixner", 1, Fraction(4), {"alpha": Fraction(1), "c": Fraction(1, 2)})
    assert got == -3
    got = family_eval("meixner", 1, Fraction(-2), {"alpha": Fraction(1), "c": Fraction(1, 2)})
    assert got == 3


def test_krawtchouk_degree_one():
    # K_1(x; 1/2, N) = 1 - 2x/N
    for cap in (4, 7):
        got = family_eval("krawtchouk", 1, Fraction(3), {"p": Fraction(1, 2), "N": cap})
        assert got == 1 - Fraction(6, cap)


def test_krawtchouk_rejects_degree_beyond_cap():
    with pytest.raises(DomainError):
        family_eval("krawtchouk", 5, Fraction(1), {"p": Fraction(1, 2), "N": 4})


def test_krawtchouk_is_meixner_special_case():
    # K_n(x; p, N) = M_n(x; -N, p/(p-1))
    pairs = [
        (Fraction(1, 2), Fraction(1, 3)), (Fraction(1, 3), Fraction(3)),
        (Fraction(2, 7), Fraction(-5, 4)), (Fraction(3, 4), Fraction(5, 2)),
        (Fraction(-1, 2), Fraction(2)), (Fraction(5, 3), Fraction(0)),
        (Fraction(1, 5), Fraction(7)), (Fraction(-2, 3), Fraction(1, 7)),
        (Fraction(4, 9), Fraction(-3)), (Fraction(9, 8), Fraction(6)),
    ]
    for cap in (4, 8):
        for p, x in pairs:
            meixner_params = {"alpha": Fraction(-cap), "c": p / (p - 1)}
            for n in range(cap + 1):
                kraw = family_eval("krawtchouk", n, x, {"p": p, "N": cap})
                meix = family_eval("meixner", n, x, meixner_params)
                assert kraw == meix


def test_meixner_is_degree_n_in_x():
    # finite differencing n+1 times annihilates degree-n polynomials; one
    # more difference of the shifted values must be exactly zero
    params = {"alpha": Fraction(3, 2), "c": Fraction(2, 5)}
    for n in range(7):
        values = [family_eval("meixner", n, Fraction(j), params) for j in range(n + 2)]
        diffs = values
        for _ in range(n + 1):
            diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        assert diffs == [0]
        # and the n-th difference is nonzero (degree exactly n)
        diffs = values[:-1]
        for _ in range(n):
            diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        assert diffs[0] != 0


def test_gf_expand_meixner_first_order():
    # coefficient of t^1 is alpha + x(1 - 1/c) = (alpha)_1 / 1! * M_1
    x = Fraction(4)
    series = gf_expand("meixner", x, MEIXNER, 1)
    alpha, c = MEIXNER["alpha"], MEIXNER["c"]
    assert series.coefficient(1) == alpha + x * (1 - 1 / c)


def test_gf_expand_constant_terms_are_unity():
    assert gf_expand("meixner", Fraction(2), MEIXNER, 3).coefficient(0) == 1
    assert gf_expand("charlier", Fraction(2), {"a": Fraction(3)}, 3).coefficient(0) == 1
    kraw = gf_expand("krawtchouk", Fraction(2), {"p": Fraction(1, 2), "N": 4}, 3)
    assert kraw.coefficient(0) == 1
    asc = gf_expand(
        "al_salam_chihara", None,
        {"a": 0.25, "b": 0.2, "q": 1 / 3, "theta": math.pi / 3}, 3,
    )
    assert abs(asc.coefficient(0) - 1) < 1e-14


def test_gf_expand_meixner_matches_eval_to_order_12():
    # coefficient n equals (alpha)_n / n! M_n for three parameter sets
    for alpha, c, x in (
        (Fraction(3, 2), Fraction(2, 5), Fraction(4)),
        (Fraction(7, 3), Fraction(3, 7), Fraction(5, 2)),
        (Fraction(1, 2), Fraction(-2, 3), Fraction(-3, 7)),
    ):
        params = {"alpha": alpha, "c": c}
        series = gf_expand("meixner", x, params, 12)
        for n in range(13):
            want = pochhammer(alpha, n) / math.factorial(n) * family_eval(
                "meixner", n, x, params
            )
            assert series.coefficient(n) == want


def test_gf_expand_krawtchouk_truncates():
    params = {"p": Fraction(1, 2), "N": 4}
    series = gf_expand("krawtchouk", Fraction(5, 2), params, 8)
    for n in range(5):
        want = family_eval("krawtchouk", n, Fraction(5, 2), params) / math.factorial(n)
        assert series.coefficient(n) == want
    for n in range(5, 9):
        assert series.coefficient(n) == 0


def test_poly_from_gf_charlier():
    assert poly_from_gf("charlier", 0, Fraction(3), {"a": Fraction(2)}) == 1
    # C_1(x; a) = 1 - x/a
    a, x = Fraction(5, 2), Fraction(3)
    assert poly_from_gf("charlier", 1, x, {"a": a}) == 1 - x / a


def test_poly_from_gf_matches_meixner_eval():
    x = Fraction(4)
    params = {"alpha": Fraction(3, 2), "c": Fraction(2, 5)}
    for n in range(7):
        assert poly_from_gf("meixner", n, x, params) == family_eval(
            "meixner", n, x, params
        )


def test_family_eval_routes_charlier_through_gf():
    a, x = Fraction(5, 2), Fraction(3)
    assert family_eval("charlier", 1, x, {"a": a}) == 1 - x / a


def test_al_salam_chihara_against_basic_series():
    theta, a, b, q = math.pi / 3, 0.25, 0.2, 1 / 3
    params = {"a": a, "b": b, "q": q, "theta": theta}
    series = gf_expand("al_salam_chihara", None, params, 8)
    for n in range(9):
        want = qfamily_oracles.al_salam_chihara(n, theta, a, b, q) / complex(
            q_pochhammer(q, q, n)
        )
        assert abs(series.coefficient(n) - want) < 1e-10


def test_continuous_big_q_hermite_against_basic_series():
    theta, a, q = 2 * math.pi / 7, 0.35, 0.25
    params = {"a": a, "q": q, "theta": theta}
    series = gf_expand("continuous_big_q_hermite", None, params, 8)
    for n in range(9):
        want = qfamily_oracles.continuous_big_q_hermite(n, theta, a, q) / complex(
            q_pochhammer(q, q, n)
        )
        assert abs(series.coefficient(n) - want) < 1e-10


def test_al_salam_carlitz_families_against_basic_series():
    # second-kind values grow like q^{-n(n-1)/2}, so compare mixed-tolerance
    x, a, q = 0.6, 0.25, 1 / 3
    params = {"a": a, "q": q}
    for n in range(9):
        got = poly_from_gf("al_salam_carlitz_1", n, x, params)
        want = qfamily_oracles.al_salam_carlitz_1(n, x, a, q)
        assert abs(got - want) < 1e-10 * (1 + abs(want))
        got = poly_from_gf("al_salam_carlitz_2", n, x, params)
        want = qfamily_oracles.al_salam_carlitz_2(n, x, a, q)
        assert abs(got - want) < 1e-10 * (1 + abs(want))


def test_exact_family_also_expands_numerically():
    exact = gf_expand("meixner", Fraction(4), MEIXNER, 6)
    loose = gf_expand("meixner", 4.0, {"alpha": 1.5, "c": 0.4}, 6)
    assert not loose.field.is_exact
    for n in range(7):
        assert abs(complex(exact.coefficient(n)) - loose.coefficient(n)) < 1e-12


def test_family_eval_numeric_inputs():
    exact = family_eval("meixner", 3, Fraction(4), MEIXNER)
    loose = family_eval("meixner", 3, 4.0, {"alpha": 1.5, "c": 0.4})
    assert abs(complex(exact) - loose) < 1e-12


def test_metadata_only_families_refuse_expansion():
    with pytest.raises(UnsupportedExpansionError, match="bessel"):
        gf_expand("bessel", Fraction(1, 2), {"a": Fraction(1)}, 4)
    with pytest.raises(UnsupportedExpansionError):
        family_eval("continuous_dual_hahn", 2, Fraction(1),
                    {"a": Fraction(1), "b": Fraction(1), "c": Fraction(1)})


def test_catalog_contents():
    ids = {d.id for d in catalog()}
    assert len(ids) == 16  # 14 catalog families + meixner + krawtchouk
    for d in catalog():
        assert d.factors, d.id
        assert d.normalization
    exact = {d.id for d in catalog() if d.expansion == "exact"}
    assert exact == {"meixner", "krawtchouk", "charlier"}
    numeric_ids = {d.id for d in catalog() if d.expansion == "numeric"}
    assert numeric_ids == {
        "al_salam_carlitz_1", "al_salam_carlitz_2",
        "al_salam_chihara", "continuous_big_q_hermite",
    }


def test_catalog_metadata_matches_statements():
    cdh = get_family("continuous_dual_hahn")
    assert cdh.free_parameters == 3
    assert cdh.known_generating_functions == 5
    assert cdh.connection_relations == 7
    assert set(cdh.symmetric_parameters) == {"a", "b", "c"}
    dqh = get_family("dual_q_hahn")
    assert dqh.citation_note and get_family("continuous_dual_q_hahn").citation_note
    asc1 = get_family("al_salam_carlitz_1")
    assert asc1.known_generating_functions == 1
    assert "no generalized generating functions" in asc1.notes


def test_isolated_parameters():
    assert isolated_parameters(get_family("meixner")) == ("alpha",)
    assert isolated_parameters(get_family("charlier")) == ()  # a also sets kappa
    assert "a" in isolated_parameters(get_family("al_salam_carlitz_1"))
    assert isolated_parameters(get_family("dual_hahn")) == ("N",)
    assert isolated_parameters(get_family("krawtchouk")) == ()


def test_bind_validates_names_and_domains():
    meixner = get_family("meixner")
    with pytest.raises(DomainError, match="needs parameter"):
        meixner.bind({"alpha": Fraction(1)})
    with pytest.raises(DomainError, match="does not take"):
        meixner.bind({**MEIXNER, "p": Fraction(1, 2)})
    with pytest.raises(DomainError):
        meixner.bind({"alpha": Fraction(3, 2), "c": Fraction(1)})
    with pytest.raises(DomainError):
        get_family("krawtchouk").bind({"p": Fraction(1, 2), "N": Fraction(5, 2)})
    # nonpositive-integer alpha stays evaluable (the Krawtchouk bridge needs
    # alpha = -N); the pole surfaces only past the degeneracy bound
    assert family_eval("meixner", 1, Fraction(2),
                       {"alpha": Fraction(-4), "c": Fraction(1, 3)}) is not None


def test_theta_families_take_argument_through_theta():
    params = {"a": 0.25, "b": 0.2, "q": 1 / 3, "theta": math.pi / 3}
    with pytest.raises(DomainError, match="theta"):
        gf_expand("al_salam_chihara", 0.5, params, 3)
    with pytest.raises(DomainError, match="needs the argument"):
        family_eval("meixner", 2, None, MEIXNER)


def test_normalization_zero_is_an_error():
    # Meixner normalization (alpha)_n / n! vanishes at alpha = -N once n > N
    with pytest.raises(DomainError, match="normalization"):
        poly_from_gf("meixner", 3, Fraction(1),
                     {"alpha": Fraction(-2), "c": Fraction(1, 3)})
    value = normalization_at(
        get_family("al_salam_carlitz_2"), 2, None,
        {"a": 0.25, "q": 1 / 3}, NUMERIC,
    )
    assert value != 0
