"""Asymptotic layer: eta, constants, Bessel, pole residuals, variant fits."""

import math
import random

import mpmath as mp
import pytest

from overmoments import asympt, genfunc
from overmoments.errors import Inconclusive, NonConvergent, PrecisionLoss


def test_eta_classical_values():
    with mp.workprec(200):
        assert abs(asympt.dirichlet_eta(1, 200) - mp.log(2)) < mp.mpf(2) ** -190
        assert abs(asympt.dirichlet_eta(0, 200) - mp.mpf(1) / 2) < mp.mpf(2) ** -190
        assert abs(asympt.dirichlet_eta(-1, 200) - mp.mpf(1) / 4) < mp.mpf(2) ** -190
        assert abs(asympt.dirichlet_eta(2, 200) - mp.pi**2 / 12) < mp.mpf(2) ** -190


def test_eta_matches_brute_averaged_partial_sums():
    # oracle: direct alternating sum to 10^5 terms, averaging the last two
    # partial sums to kill the leading tail term
    n_terms = 100_000
    terms = [(-1) ** (n + 1) / n**3 for n in range(1, n_terms + 2)]
    s_n = math.fsum(terms[:-1])
    s_n1 = math.fsum(terms)
    oracle = (s_n + s_n1) / 2
    assert abs(float(asympt.dirichlet_eta(3, 64)) - oracle) < 1e-12


def test_eta_against_zeta_factor():
    with mp.workprec(120):
        for s in (2, 3, 4, 6):
            ref = (1 - mp.mpf(2) ** (1 - s)) * mp.zeta(s)
            assert abs(asympt.dirichlet_eta(s, 120) - ref) < 1e-15


def test_constants_small_r():
    cs2 = asympt.constants(2, 160)
    with mp.workprec(160):
        assert abs(cs2.c - mp.pi**2 / 12) < mp.mpf(2) ** -150
    cs1 = asympt.constants(1, 160)
    with mp.workprec(160):
        assert abs(cs1.gamma - mp.log(2) / (4 * mp.pi)) < mp.mpf(2) ** -150
    for r in range(1, 9):
        assert asympt.constants(r, 96).c > 0


def test_moment_vs_bessel_constant_identity():
    # r! c~_r = gamma_r pi sqrt(2), to far better than 1e-20
    for r in range(1, 9):
        cs = asympt.resolve_constants(r, 256)
        with mp.workprec(256):
            diff = abs(mp.factorial(r) * cs.c_tilde - cs.gamma * mp.pi * mp.sqrt(2))
            assert diff < mp.mpf(10) ** -60


def test_bessel_half_integer_seeds():
    with mp.workprec(150):
        x = mp.mpf(1)
        want = mp.sqrt(2 / mp.pi) * mp.sinh(1)
        assert abs(asympt.bessel_i(mp.mpf(1) / 2, x, 150) - want) < mp.mpf(2) ** -140
        want = mp.sqrt(2 / mp.pi) * mp.cosh(1)
        assert abs(asympt.bessel_i(-mp.mpf(1) / 2, x, 150) - want) < mp.mpf(2) ** -140


def test_bessel_matches_power_series():
    val = asympt.bessel_i(mp.mpf(3) / 2, 10, 200)
    ref = asympt.bessel_i_series(mp.mpf(3) / 2, 10, 200, terms=40)
    with mp.workprec(200):
        assert abs(val - ref) / ref < mp.mpf(10) ** -20


def test_bessel_recurrence_property():
    rng = random.Random(42)
    for _ in range(20):
        k = rng.randint(-3, 4)
        s = k + mp.mpf(1) / 2
        x = mp.mpf(rng.uniform(0.5, 50))
        with mp.workprec(220):
            lhs = asympt.bessel_i(s - 1, x, 220) - asympt.bessel_i(s + 1, x, 220)
            rhs = (2 * s / x) * asympt.bessel_i(s, x, 220)
            scale = max(abs(lhs), abs(rhs), mp.mpf(1))
            assert abs(lhs - rhs) / scale < mp.mpf(2) ** -180


def test_bessel_against_mpmath():
    with mp.workprec(200):
        for order in (mp.mpf(5) / 2, -mp.mpf(3) / 2):
            mine = asympt.bessel_i(order, 17, 200)
            ref = mp.besseli(order, 17)
            assert abs(mine - ref) / abs(ref) < mp.mpf(2) ** -180


def test_bessel_rejects_non_half_integer():
    with pytest.raises(ValueError):
        asympt.bessel_i(1, 2.0, 64)


def test_bessel_precision_escalation_and_loss():
    # tiny x with high order: upward recurrence cancels catastrophically;
    # escalation covers moderate cases, the cap turns extreme ones into errors
    v = asympt.bessel_i(mp.mpf(41) / 2, mp.mpf(1) / 1000, 64)
    ref = asympt.bessel_i_series(mp.mpf(41) / 2, mp.mpf(1) / 1000, 64, terms=30)
    with mp.workprec(64):
        assert abs(v - ref) / ref < mp.mpf(2) ** -40
    with pytest.raises(PrecisionLoss):
        asympt.bessel_i(mp.mpf(301) / 2, mp.mpf(1) / 10**8, 256)


def test_main_term_moment_is_plugin():
    cs = asympt.resolve_constants(2, 128)
    got = asympt.main_term("crank", "moment_main", 2, 10_000, 128, cs)
    with mp.workprec(128):
        want = mp.log(cs.gamma) + mp.pi * 100  # (r/2 - 1) log N vanishes at r=2
        assert abs(got - want) < mp.mpf(2) ** -100


def test_main_term_difference_small_order_formula():
    # r=1: delta_1 = eta(-1)/16 = 1/64, exponent r/2 - 3/2 = -1
    cs = asympt.resolve_constants(1, 128)
    got = asympt.main_term("rank", "difference_main", 1, 100, 128, cs)
    with mp.workprec(128):
        want = mp.log(mp.mpf(1) / 64) - mp.log(100) + 10 * mp.pi
        assert abs(got - want) < mp.mpf(2) ** -100


def test_main_term_bessel_vs_moment_flavors_agree_at_large_N():
    # log(r! mu-main) - log(moment-main) -> 0 like N^{-1/2}
    r = 3
    cs = asympt.resolve_constants(r, 192)
    gaps = []
    for N in (10_000, 1_000_000):
        with mp.workprec(192):
            gap = (
                mp.log(mp.factorial(r))
                + asympt.main_term("crank", "symmetrized_bessel", r, N, 192, cs)
                - asympt.main_term("crank", "moment_main", r, N, 192, cs)
            )
        gaps.append(abs(gap))
    assert gaps[0] < 0.01
    assert gaps[1] < gaps[0] / 3


def test_s_series_eval_matches_series_core():
    # at tau = i the sums are tame; compare against exact coefficients
    with mp.workprec(140):
        q = mp.e ** (-2 * mp.pi)
        for r in (1, 2):
            inner = genfunc.crank_lambert_sum(r, 60)
            ref = mp.fsum(inner[n] * q**n for n in range(61))
            got = asympt.s_series_eval("S", r, mp.mpc(0, 1), 140)
            assert abs(got - ref) < 1e-15
            inner = genfunc.rank_lambert_sum(r, 60)
            ref = mp.fsum(inner[n] * q**n for n in range(61))
            got = asympt.s_series_eval("S_tilde", r, mp.mpc(0, 1), 140)
            assert abs(2 * got - ref) < 1e-15  # rank series carries a factor 2


def test_s_series_small_q_limit():
    # far from the unit circle a single term dominates
    with mp.workprec(120):
        tau = mp.mpc(0, 3)
        q = mp.e ** (2j * mp.pi * tau)
        S = asympt.s_series_eval("S", 2, tau, 120)
        lead = q ** ((1 + (2 * 2 - 1)) // 2) / (1 - q) ** 2  # n=1 term, r=2
        assert abs(S / lead - 1) < 1e-6


def test_s_series_rejects_lower_half_plane():
    with pytest.raises(NonConvergent):
        asympt.s_series_eval("S", 2, mp.mpc(0, -1), 64)
    with pytest.raises(NonConvergent):
        asympt.s_series_eval("S_tilde", 2, mp.mpc(0.5, 0), 64)


def test_expansion_residual_selected_bounded():
    for kind in ("crank", "rank"):
        for r in (3, 4, 5, 6):
            vals = [
                asympt.expansion_residual(kind, r, N, prec=192)
                for N in (100, 1000, 10000)
            ]
            assert max(vals) < 1.0


def test_expansion_residual_wrong_variant_grows():
    lo = asympt.expansion_residual("crank", 4, 100, prec=192, variant="zeta_shifted")
    hi = asympt.expansion_residual("crank", 4, 10000, prec=192, variant="zeta_shifted")
    assert hi > 4 * lo  # sqrt(N) growth across two decades
    lo = asympt.expansion_residual("rank", 3, 100, prec=192, variant="swapped_eta")
    hi = asympt.expansion_residual("rank", 3, 10000, prec=192, variant="swapped_eta")
    assert hi > 4 * lo


def test_fit_selects_the_bounded_variant():
    for r in (3, 4, 5, 6):
        fit = asympt.fit_subleading("crank", r)
        assert fit.selected_tag == "eta"
        fit = asympt.fit_subleading("rank", r)
        assert fit.selected_tag == "expansion"


def test_fit_degenerate_odd_crank_candidates_coincide():
    fit = asympt.fit_subleading("crank", 1)
    assert set(fit.coincident_tags) == {"zeta_shifted", "eta"}
    fit3 = asympt.fit_subleading("crank", 3)
    assert set(fit3.coincident_tags) == {"zeta_shifted", "eta"}


def test_fit_requires_three_points():
    with pytest.raises(ValueError):
        asympt.fit_subleading("crank", 3, (100, 1000))


def test_fit_inconclusive_when_candidates_indistinguishable(monkeypatch):
    # force two distinct candidate values whose residuals are both flat
    monkeypatch.setattr(
        asympt,
        "subleading_candidates",
        lambda kind, r, prec=256: {"a": mp.mpf(1), "b": mp.mpf(2)},
    )
    monkeypatch.setattr(
        asympt, "expansion_residual", lambda *args, **kw: mp.mpf("0.05")
    )
    asympt.fit_subleading.cache_clear()
    with pytest.raises(Inconclusive):
        asympt.fit_subleading("crank", 3, (100, 1000, 10000))
    asympt.fit_subleading.cache_clear()


def test_zeta_shifted_variant_undefined_at_r2():
    cands = asympt.subleading_candidates("crank", 2, 96)
    assert cands["zeta_shifted"] is None  # literal form hits the zeta pole
    assert cands["eta"] is not None
    cands = asympt.subleading_candidates("rank", 2, 96)
    assert cands["zeta_shifted"] is None


def test_delta_values():
    # delta_r = r! pi^{-r+1} 2^{r-5} eta(r-2) for the selected variants
    with mp.workprec(160):
        cs = asympt.resolve_constants(1, 160)
        assert abs(cs.delta - mp.mpf(1) / 64) < mp.mpf(2) ** -140
        cs4 = asympt.resolve_constants(4, 160)
        assert abs(cs4.delta - 1 / mp.pi) < mp.mpf(2) ** -140
        for r in range(1, 7):
            csr = asympt.resolve_constants(r, 160)
            want = (
                mp.factorial(r)
                * mp.pi ** (-r + 1)
                * mp.mpf(2) ** (r - 5)
                * asympt.dirichlet_eta(r - 2, 160)
            )
            assert abs(csr.delta - want) < mp.mpf(2) ** -130
            assert csr.delta > 0


def test_constants_manifest():
    man = asympt.resolve_constants(3, 128).manifest()
    assert man["r"] == 3
    assert man["d_r_variant_tag"] == "eta"
    assert man["d_rank_variant_tag"] == "expansion"
    assert man["precision_bits"] == 128
    assert man["delta_r_selected"] is not None


def test_eta_quotient_check_decays():
    v_mid = asympt.eta_quotient_check(mp.mpc(0, 1))
    assert v_mid < 1  # moderate tau: both sides finite and close-ish
    v20 = asympt.eta_quotient_check(mp.mpc(0, 1 / mp.mpf(20)))
    v40 = asympt.eta_quotient_check(mp.mpc(0, 1 / mp.mpf(40)))
    assert v20 < 1e-10
    assert v40 < v20 / 1e10
    # log-decay slope against 1/|tau| is decisively negative
    slope = (mp.log(v40) - mp.log(v20)) / (40 - 20)
    assert slope < -0.1


def test_log_integer():
    with mp.workprec(120):
        assert abs(asympt.log_integer(12345, 120) - mp.log(12345)) < mp.mpf(2) ** -100
        big = 10**500 + 12345
        assert abs(asympt.log_integer(big, 120) - 500 * mp.log(10)) < 1e-30
