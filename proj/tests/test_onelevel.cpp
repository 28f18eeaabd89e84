#include <cmath>
#include <numbers>
#include <random>

#include "cubicff/onelevel.hpp"
#include "cubicff/predict.hpp"
#include "doctest.h"

using namespace cubicff;

namespace {

constexpr double kPi = std::numbers::pi;

// brute periodization: direct sum over a long window
double brute_periodized(const TestFunction& t, double x, int N) {
    double s = 0;
    for (int m = -400000; m <= 400000; ++m) s += t.psi(x + static_cast<double>(N) * m);
    return s;
}

// Poisson side: (1/N) sum_k psi_hat(k/N) e^{2 pi i k x / N}
double poisson_periodized(const TestFunction& t, double x, int N) {
    double s = t.psi_hat(0.0);
    for (int k = 1; k <= static_cast<int>(t.supp * N) + 1; ++k)
        s += 2 * t.psi_hat(static_cast<double>(k) / N) * std::cos(2 * kPi * k * x / N);
    return s / N;
}

}  // namespace

TEST_CASE("Fejer pair") {
    for (double supp : {0.5, 1.0, 1.5}) {
        auto t = onelevel::fejer_pair(supp);
        CHECK(t.psi(0.0) == doctest::Approx(supp));
        CHECK(t.psi_hat(0.0) == 1.0);
        CHECK(t.psi_hat(supp) == 0.0);
        CHECK(t.psi_hat(2 * supp) == 0.0);
        CHECK(t.psi(1.0 / supp) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(onelevel::fourier_pair_error(t, {0.0, 0.13, 0.5, 1.0, 2.7, 9.1}) < 1e-6);
    }
    CHECK_THROWS(onelevel::fejer_pair(0));
}

TEST_CASE("periodization closed form against sums") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int N : {2, 4, 6}) {
        for (double supp : {0.5, 1.0, 0.75}) {
            auto t = onelevel::fejer_pair(supp);
            for (int it = 0; it < 6; ++it) {
                double x = u(rng);
                double p = onelevel::periodized(t, x, N);
                CHECK(p == doctest::Approx(poisson_periodized(t, x, N)).epsilon(1e-7));
                CHECK(p == doctest::Approx(brute_periodized(t, x, N)).epsilon(1e-5));
            }
            CHECK(onelevel::periodized(t, 0.0, N) == doctest::Approx(poisson_periodized(t, 0.0, N)));
        }
    }
    CHECK_THROWS(onelevel::periodized(onelevel::fejer_pair(1), 0.0, 0));
}

TEST_CASE("zero side equals explicit side on synthetic spectra") {
    auto t = onelevel::fejer_pair(1.0);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0, kPi);
    for (int g : {1, 2, 3}) {
        int N = 2 * g;
        for (int it = 0; it < 20; ++it) {
            std::vector<double> angles;
            for (int j = 0; j < g; ++j) {
                double a = u(rng);
                angles.push_back(a);
                angles.push_back(-a);
            }
            std::vector<double> c(N + 1, 0.0);
            for (int n = 0; n <= N; ++n)
                for (double a : angles) c[n] += std::cos(n * a);
            double z = onelevel::D_L_from_zeros(angles, N, t);
            CHECK(z == doctest::Approx(onelevel::D_L_explicit(c, N, t)).epsilon(1e-10));
            CHECK(z >= -1e-12);
            CHECK(z <= onelevel::trivial_cap(t, N));
        }
    }
    CHECK(onelevel::D_L_from_zeros({}, 0, t) == 0);
    CHECK(onelevel::D_L_explicit({0.0}, 0, t) == 0);
    CHECK_THROWS(onelevel::D_L_explicit({4.0, 0.0}, 4, t));
}

TEST_CASE("family average on a census") {
    Fq F(5);
    Census c = census::enumerate_fields(F, 6);
    std::vector<zeta::FieldZeta> zs;
    zeta::census_zeta(F, c, &zs);
    auto t = onelevel::fejer_pair(1.0);
    auto r = onelevel::family_average(F, c, zs, t);
    CHECK(r.N == 2);
    CHECK(r.family_size == 15000);
    CHECK(r.max_method_diff < 1e-6);
    CHECK(r.cap_violations == 0);
    CHECK(r.avg_zeros == doctest::Approx(r.avg_explicit).epsilon(1e-9));
    CHECK(r.from_split_counts == doctest::Approx(r.avg_explicit).epsilon(1e-9));
    CHECK(r.symplectic == doctest::Approx(0.5));
    CHECK(r.gap == doctest::Approx(r.avg_zeros - 0.5));
    auto s = onelevel::family_average(F, c, zs, t, false);
    CHECK(s.avg_zeros == r.avg_zeros);
    CHECK(s.max_method_diff == r.max_method_diff);
    // genus zero: no zeros
    Census c4 = census::enumerate_fields(F, 4);
    std::vector<zeta::FieldZeta> z4;
    zeta::census_zeta(F, c4, &z4);
    auto r4 = onelevel::family_average(F, c4, z4, t);
    CHECK(r4.avg_zeros == 0);
    CHECK(r4.avg_explicit == 0);
    zs.pop_back();
    CHECK_THROWS(onelevel::family_average(F, c, zs, t));
}

TEST_CASE("type distribution at infinity matches a finite degree-1 place") {
    // PGL2(F_q) moves infinity to T = 0, so the census sees the same distribution at both
    Fq F(5);
    for (int M : {4, 6}) {
        Census c = census::enumerate_fields(F, M);
        std::array<long long, 5> at_inf{}, at_zero{};
        Poly T{0, 1};
        for (auto& r : c.fields) {
            ++at_inf[static_cast<int>(r.sigma.type)];
            ++at_zero[static_cast<int>(form::classify_mod_P(F, r.form, T))];
        }
        CHECK(at_inf == at_zero);
    }
}

TEST_CASE("predicted splitting counts partition the total") {
    for (int M : {6, 8}) {
        Fq F(5);
        auto tot = predict::predict_total(5, M);
        for (int d : {1, 2}) {
            Poly P = poly::primes_of_degree(F, d)[0];
            double s = 0;
            for (auto t : kSplitTypes) s += predict::predict_split(5, M, {{P, t}}).main;
            CHECK(s == doctest::Approx(tot.main).epsilon(1e-12));
        }
    }
}
