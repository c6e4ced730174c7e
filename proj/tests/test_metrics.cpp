#include "floqfcs/fcs.hpp"
#include "floqfcs/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace floqfcs;

namespace {

BathModel fig_hot() { return BathModel::split_hot(0.005, 1.0, 0.2, 3.0, 30.0); }
BathModel fig_cold() { return BathModel::split_cold(0.01, 1.0, 0.2, 3.0, 30.0); }

CumulantSet fig_cumulants(double Delta) {
    return cumulants_sinusoidal_closed_form(30.0, 0.02, Delta, fig_hot(), fig_cold());
}

} // namespace

TEST_SUITE("metrics") {

TEST_CASE("critical modulation frequency") {
    CHECK(delta_critical(30.0, 0.005, 0.01) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(delta_critical(10.0, 0.5, 1.0) == doctest::Approx(10.0 / 3.0).epsilon(1e-15));
    CHECK(delta_critical(30.0, 0.009999, 0.01) < 1e-2);  // bias removed -> 0
    CHECK_THROWS_AS((void)delta_critical(30.0, 0.01, 0.005), std::invalid_argument);
    CHECK_THROWS_AS((void)delta_critical(30.0, 0.01, 0.01), std::invalid_argument);
}

TEST_CASE("regime classification by sign pattern") {
    CumulantSet c;
    c.J_h = 1.0; c.J_c = -0.4; c.P = -0.6;
    CHECK(classify_regime(c) == Regime::engine);
    c.J_h = -1.0; c.J_c = 0.4; c.P = 0.6;
    CHECK(classify_regime(c) == Regime::refrigerator);
    c.J_h = 1.0; c.J_c = -1.4; c.P = 0.4;
    CHECK(classify_regime(c) == Regime::accelerator);
    c.J_h = 1.0; c.J_c = 0.4; c.P = -1.4;
    CHECK(classify_regime(c) == Regime::other);
    c.J_h = 1e-15; c.J_c = -1e-15; c.P = 0.0;
    CHECK(classify_regime(c, 1e-12) == Regime::other);

    CHECK(classify_regime(fig_cumulants(5.0), 3e-11) == Regime::engine);
    CHECK(classify_regime(fig_cumulants(15.0), 3e-11) == Regime::refrigerator);
    CHECK(classify_regime(fig_cumulants(10.0), 3e-11) == Regime::other);
}

TEST_CASE("precision ratios") {
    CumulantSet c;
    c.J_h = 1.0; c.J_c = -1.0; c.P = 0.0;
    c.var_h = 1.0; c.var_c = 2.0; c.var_P = 3.0;
    c.S_dot = 2.0;
    const auto r = tur_ratios(c, 1e-12);
    REQUIRE(r.R_h.has_value());
    CHECK(*r.R_h == 2.0);
    CHECK(*r.R_c == 4.0);
    CHECK(!r.R_P.has_value());  // zero mean stays undefined

    for (double Delta : {3.0, 7.0, 9.8, 12.0, 22.0}) {
        const auto rep = tur_ratios(fig_cumulants(Delta), 3e-11);
        CHECK(*rep.R_h >= 2.0 - 1e-9);
        CHECK(*rep.R_c >= 2.0 - 1e-9);
        CHECK(*rep.R_P >= *rep.R_h);  // power chain
    }
}

TEST_CASE("efficiency fluctuation ratios and bounds") {
    const auto eng = efficiency_fluctuation_ratios(fig_cumulants(5.0), Regime::engine, 0.005, 0.01);
    REQUIRE(eng.has_value());
    CHECK(eng->eta_C_sq == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(eng->eta_R_sq == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eng->eta2 >= eng->eta_mean_sq);      // engine lower bound
    CHECK(eng->eta2 <= eng->eta_C_sq);         // engine upper bound (sinusoidal)

    const auto ref =
        efficiency_fluctuation_ratios(fig_cumulants(15.0), Regime::refrigerator, 0.005, 0.01);
    REQUIRE(ref.has_value());
    CHECK(ref->eta2 < ref->eta_mean_sq);       // refrigerator lower bound violated
    CHECK(ref->eta_mean_sq <= ref->eta_R_sq);
    CHECK(ref->eta2 <= ref->eta_R_sq);

    CHECK(!efficiency_fluctuation_ratios(fig_cumulants(5.0), Regime::accelerator, 0.005, 0.01)
               .has_value());
}

TEST_CASE("relative fluctuation gap") {
    const auto g = relative_fluctuation_gap(fig_cumulants(10.0000001), 30.0, 10.0000001);
    CHECK(g.analytic == doctest::Approx(4.0).epsilon(1e-7));
    CHECK(g.computed == doctest::Approx(g.analytic).epsilon(1e-8));

    for (double Delta : {1.0, 6.0, 14.0, 27.0}) {
        const auto gg = relative_fluctuation_gap(fig_cumulants(Delta), 30.0, Delta);
        CHECK(std::abs(gg.computed - gg.analytic) <= 1e-8 * gg.analytic);
        CHECK(gg.product >= 0.0);
    }
    CHECK(relative_fluctuation_gap(fig_cumulants(10.0000001), 30.0, 10.0000001).product <=
          relative_fluctuation_gap(fig_cumulants(5.0), 30.0, 5.0).product);

    CumulantSet dead;
    CHECK_THROWS_AS((void)relative_fluctuation_gap(dead, 30.0, 5.0), std::domain_error);
}

TEST_CASE("refrigerator draws never break the upper bound") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> ten(0.0, 10.0);
    int checked = 0;
    while (checked < 2000) {
        const double omega0 = ten(rng), beta_h = ten(rng), beta_c = ten(rng);
        if (!(beta_h > 0.0 && beta_h < beta_c) || omega0 <= 0.0) continue;
        const double cr = delta_critical(omega0, beta_h, beta_c);
        const double Delta = cr + (omega0 - cr) * ten(rng) / 10.0;
        if (!(Delta > cr && Delta < omega0)) continue;
        const auto hot = BathModel::split_hot(beta_h, 1.0, 0.2, 3.0, omega0);
        const auto cold = BathModel::split_cold(beta_c, 1.0, 0.2, 3.0, omega0);
        const auto c = cumulants_sinusoidal_closed_form(omega0, 0.02, Delta, hot, cold);
        if (classify_regime(c, 1e-12 * omega0) != Regime::refrigerator) continue;
        ++checked;
        const auto e = efficiency_fluctuation_ratios(c, Regime::refrigerator, beta_h, beta_c);
        REQUIRE(e.has_value());
        CHECK(e->eta2 <= e->eta_R_sq + 1e-9);
        CHECK(e->eta2 < e->eta_mean_sq);
    }
}

TEST_CASE("full report assembly") {
    const auto rep = make_machine_report(fig_cumulants(5.0), 0.005, 0.01, 3e-11, 30.0, 5.0, true);
    CHECK(rep.regime == Regime::engine);
    CHECK(rep.eta2.has_value());
    CHECK(rep.D.has_value());
    CHECK(*rep.D == doctest::Approx(17.5).epsilon(1e-10));
    CHECK(to_string(rep.regime) == "engine");

    const auto dead = make_machine_report(CumulantSet{}, 0.005, 0.01, 3e-11, 30.0, 5.0, true);
    CHECK(dead.regime == Regime::other);
    CHECK(!dead.tur.R_h.has_value());
    CHECK(!dead.D.has_value());
}

} // TEST_SUITE
