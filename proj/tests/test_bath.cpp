#include "floqfcs/bath.hpp"

#include <stdexcept>
#include <doctest.h>

#include <cmath>
#include <random>

using namespace floqfcs;

TEST_SUITE("bath") {

TEST_CASE("split hot bath peaks at omega0 + delta with value gamma0") {
    const auto hot = BathModel::split_hot(0.005, 1.0, 0.2, 3.0, 30.0);
    CHECK(spectral_density(hot, 33.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(spectral_density(hot, 33.0) > spectral_density(hot, 34.0));
    CHECK(spectral_density(hot, 33.0) > spectral_density(hot, 32.0));
}

TEST_CASE("split baths vanish outside their support and at the cut itself") {
    const auto hot = BathModel::split_hot(0.005, 1.0, 0.2, 3.0, 30.0);
    const auto cold = BathModel::split_cold(0.01, 1.0, 0.2, 3.0, 30.0);
    CHECK(spectral_density(cold, 31.0) == 0.0);
    CHECK(spectral_density(hot, 29.0) == 0.0);
    CHECK(spectral_density(hot, 30.0) == 0.0);
    CHECK(spectral_density(cold, 30.0) == 0.0);
    CHECK(spectral_density(cold, 25.0) > 0.0);
}

TEST_CASE("product of split densities vanishes on the whole positive axis") {
    const auto hot = BathModel::split_hot(0.005, 1.0, 0.2, 3.0, 30.0);
    const auto cold = BathModel::split_cold(0.01, 1.0, 0.2, 3.0, 30.0);
    for (double w = 0.0; w <= 60.0; w += 0.37)
        CHECK(spectral_density(hot, w) * spectral_density(cold, w) == 0.0);
}

TEST_CASE("KMS identity and monotone suppression over random baths") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> beta(0.001, 0.3), omega(0.1, 60.0);
    const auto hot = BathModel::split_hot(0.005, 1.0, 0.2, 3.0, 30.0);
    const auto cold = BathModel::split_cold(0.01, 1.0, 0.2, 3.0, 30.0);
    const auto plain = BathModel::plain(BathRole::hot, 0.01, 1.0, 0.2, 3.0);
    for (int i = 0; i < 200; ++i) {
        const BathModel b = i % 3 == 0 ? hot : (i % 3 == 1 ? cold : plain);
        const double w = omega(rng);
        const double g = spectral_density(b, w);
        CHECK(g >= 0.0);
        CHECK(spectral_density(b, -w) == doctest::Approx(g * std::exp(-b.beta * w)).epsilon(1e-14));
        if (g > 0.0) {
            CHECK(std::abs(kms_residual(b, w)) <= 1e-14 * g);
            CHECK(spectral_density(b, -w) < g);
        }
        const BathModel varied = BathModel::plain(BathRole::cold, beta(rng), 0.7, 0.4, 2.0);
        CHECK(std::abs(kms_residual(varied, w)) <= 1e-14 * spectral_density(varied, w));
    }
}

TEST_CASE("kms_residual examples from the three bath variants") {
    const auto hot = BathModel::split_hot(0.005, 1.0, 0.2, 3.0, 30.0);
    const auto cold = BathModel::split_cold(0.01, 1.0, 0.2, 3.0, 30.0);
    const auto plain = BathModel::plain(BathRole::hot, 0.01, 1.0, 0.2, 3.0);
    CHECK(std::abs(kms_residual(hot, 33.0)) <= 1e-14 * spectral_density(hot, 33.0));
    CHECK(std::abs(kms_residual(cold, 25.0)) <= 1e-14 * spectral_density(cold, 25.0));
    CHECK(std::abs(kms_residual(plain, 5.0)) <= 1e-14 * spectral_density(plain, 5.0));
}

TEST_CASE("kms_residual rejects frequencies without support") {
    const auto hot = BathModel::split_hot(0.005, 1.0, 0.2, 3.0, 30.0);
    CHECK_THROWS_AS((void)kms_residual(hot, 10.0), std::domain_error);
    CHECK_THROWS_AS((void)kms_residual(hot, -2.0), std::domain_error);
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS((void)BathModel::plain(BathRole::hot, -1.0, 1.0, 0.2, 3.0),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)BathModel::plain(BathRole::hot, 1.0, 1.0, 0.0, 3.0),
                    std::invalid_argument);
    // gamma0 = 0 is the decoupled limit and stays legal
    const auto off = BathModel::plain(BathRole::hot, 1.0, 0.0, 0.2, 3.0);
    CHECK(spectral_density(off, 5.0) == 0.0);
}

} // TEST_SUITE
