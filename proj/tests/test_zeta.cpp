#include <cmath>
#include <complex>
#include <random>

#include "cubicff/zeta.hpp"
#include "doctest.h"

using namespace cubicff;

namespace {

Form rform(std::mt19937_64& rng, int q, int maxdeg) {
    Form f;
    for (auto& c : f.co) {
        c.assign(maxdeg + 1, 0);
        for (auto& x : c) x = static_cast<fe>(rng() % q);
        poly::trim(c);
    }
    return f;
}

}  // namespace

TEST_CASE("place contributions") {
    SigmaClass s111{SplitType::S111, 0}, s21{SplitType::S21, 0};
    CHECK(zeta::infinity_contribution(s111, 1) == 3);
    CHECK(zeta::infinity_contribution(s21, 1) == 1);
    CHECK(zeta::infinity_contribution(s21, 2) == 3);
    CHECK(zeta::place_contribution(SplitType::S3, 1, 1) == 0);
    CHECK(zeta::place_contribution(SplitType::S3, 1, 2) == 0);
    CHECK(zeta::place_contribution(SplitType::S3, 1, 3) == 3);
    CHECK(zeta::place_contribution(SplitType::S1_21, 2, 2) == 4);
    CHECK(zeta::place_contribution(SplitType::S1_3, 2, 3) == 0);
    CHECK(zeta::place_contribution(SplitType::S21, 2, 4) == 6);
}

TEST_CASE("extension-field splitting against the reference") {
    for (int q : {5, 7}) {
        Fq F(q);
        std::mt19937_64 rng(q);
        for (int d = 1; d <= 3; ++d) {
            ExtField E(F, d);
            for (int it = 0; it < 3000; ++it) {
                auto r = [&] { return rng() % 4 == 0 ? ExtField::ZERO : static_cast<ExtField::E>(rng() % (E.size() - 1)); };
                ExtField::E a = r(), b = r(), c = r(), dd = r();
                CHECK(E.classify(a, b, c, dd) == E.classify_slow(a, b, c, dd));
            }
        }
        SplitEngine eng(F, 3);
        for (int it = 0; it < 200; ++it) {
            Form f = rform(rng, q, 2);
            for (int d = 1; d <= 3; ++d) {
                auto& ps = eng.primes(d);
                std::size_t i = rng() % ps.size();
                CHECK(eng.classify(f, d, i) == form::classify_mod_P(F, f, ps[i]));
            }
        }
    }
}

TEST_CASE("place counts against the reference route") {
    Fq F(5);
    Census c = census::enumerate_fields(F, 6);
    zeta::PlaceCounter pc(F, 4);
    std::mt19937_64 rng(2);
    for (int it = 0; it < 40; ++it) {
        const auto& r = c.fields[rng() % c.fields.size()];
        auto A = pc.counts(r.form, r.sigma);
        for (int n = 1; n <= 3; ++n) CHECK(A[n] == zeta::prime_count_A(F, r, n));
    }
}

TEST_CASE("L-polynomial shapes") {
    // genus 0: P_L = 1 and A_n = q^n + 1
    auto lp0 = zeta::l_polynomial(5, 4, {0});
    CHECK(lp0.g == 0);
    CHECK(lp0.e == std::vector<long long>{1});
    CHECK(zeta::rh_check(lp0) == 0.0);
    // genus 1: e_2 = q
    auto lp1 = zeta::l_polynomial(5, 6, {0, 8});
    CHECK(lp1.g == 1);
    CHECK(lp1.e == std::vector<long long>{1, 2, 5});
    CHECK(zeta::functional_equation_holds(lp1));
    CHECK_THROWS(zeta::l_polynomial(5, 5, {0, 8}));
    // non-integral power sums are rejected
    CHECK_THROWS(zeta::newton_coefficients(5, {0, 6, 7}, 2));
}

TEST_CASE("RH check against the quadratic formula") {
    for (int q : {5, 7, 11}) {
        int bound = static_cast<int>(std::floor(2 * std::sqrt(static_cast<double>(q))));
        for (int e1 = -bound; e1 <= bound; ++e1) {
            LPolynomial lp{q, 1, {1, e1, q}};
            CHECK(zeta::rh_check(lp) < 1e-9);
            // roots of 1 + e1 u + q u^2 by the quadratic formula
            std::complex<double> sq = std::sqrt(std::complex<double>(static_cast<double>(e1) * e1 - 4.0 * q));
            std::complex<double> r1 = (-static_cast<double>(e1) + sq) / (2.0 * q);
            std::complex<double> r2 = (-static_cast<double>(e1) - sq) / (2.0 * q);
            CHECK(std::abs(std::norm(r1) - 1.0 / q) < 1e-12);
            CHECK(std::abs(std::norm(r2) - 1.0 / q) < 1e-12);
            auto pis = zeta::inverse_roots(lp);
            REQUIRE(pis.size() == 2);
            double best = std::min(std::abs(pis[0] - 1.0 / r1) + std::abs(pis[1] - 1.0 / r2),
                                   std::abs(pis[0] - 1.0 / r2) + std::abs(pis[1] - 1.0 / r1));
            CHECK(best < 1e-6);
        }
        int bad = static_cast<int>(std::ceil(2 * std::sqrt(static_cast<double>(q)))) + 1;
        LPolynomial lp{q, 1, {1, bad, q}};
        CHECK(zeta::rh_check(lp) > 1e-3);
        CHECK_FALSE(zeta::weil_bound_ok(q, 1, q + 1 + bad));
    }
}

TEST_CASE("trace coefficients agree on a census") {
    Fq F(5);
    Census c = census::enumerate_fields(F, 6);
    std::vector<zeta::FieldZeta> zs;
    auto rep = zeta::census_zeta(F, c, &zs);
    CHECK(rep.fields == static_cast<long long>(c.fields.size()));
    CHECK(rep.fe_failures == 0);
    CHECK(rep.weil_failures == 0);
    CHECK(rep.max_rh < 1e-7);
    CHECK(rep.max_trace_diff < 1e-7);
    for (std::size_t i = 0; i < zs.size(); i += 97) {
        CHECK(zs[i].c_roots[0] == doctest::Approx(2.0));
        CHECK(c.fields[i].lpoly == zs[i].lp.e);
        CHECK(zs[i].lp.e[2] == 5);
    }
    // serial path gives the same polynomials
    Census c2 = census::enumerate_fields(F, 6);
    auto rep2 = zeta::census_zeta(F, c2, nullptr, false);
    CHECK(rep2.max_trace_diff == rep.max_trace_diff);
    for (std::size_t i = 0; i < c.fields.size(); ++i) CHECK(c.fields[i].lpoly == c2.fields[i].lpoly);
}

TEST_CASE("genus zero census has trivial zeta data") {
    Fq F(7);
    Census c = census::enumerate_fields(F, 4);
    auto rep = zeta::census_zeta(F, c);
    CHECK(rep.g == 0);
    CHECK(rep.fe_failures == 0);
    CHECK(rep.max_trace_diff < 1e-12);
    // equal fingerprints do not identify fields: every genus-0 record shares P_L = 1
    CHECK(census::fingerprint_collisions(c) > 0);
}
