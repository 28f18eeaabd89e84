#include <cmath>
#include <random>
#include <set>

#include "cubicff/census.hpp"
#include "cubicff/predict.hpp"
#include "cubicff/reduction.hpp"
#include "doctest.h"

using namespace cubicff;

namespace {

std::vector<Poly> small_primes(const Fq& F, int maxd) {
    std::vector<Poly> out;
    for (int d = 1; d <= maxd; ++d)
        for (auto& P : poly::primes_of_degree(F, d)) out.push_back(P);
    return out;
}

Mat2 rgl2(const Fq& F, std::mt19937_64& rng) {
    int q = F.q();
    Mat2 g = form::mat(poly::constant(static_cast<fe>(1 + rng() % (q - 1))), {}, {},
                       poly::constant(static_cast<fe>(1 + rng() % (q - 1))));
    for (int i = 0; i < 3; ++i) {
        Poly h = poly::from_index(q, rng() % (q * q), 2);
        Mat2 e = (i % 2) ? form::mat(Poly{1}, h, {}, Poly{1}) : form::mat(Poly{1}, {}, h, Poly{1});
        g = form::mul(F, g, e);
    }
    return g;
}

}  // namespace

TEST_CASE("centre vertices") {
    CHECK(census::center_vertices(4) == std::vector<int>{0});
    CHECK(census::center_vertices(6) == std::vector<int>{1});
    CHECK(census::center_vertices(8) == std::vector<int>{0});
    CHECK(census::center_vertices(12) == std::vector<int>{0, 2});
}

TEST_CASE("parallel census equals the serial reference") {
    for (auto [q, M] : {std::pair{5, 4}, std::pair{7, 4}, std::pair{5, 6}}) {
        Fq F(q);
        Census a = census::enumerate_fields(F, M);
        Census b = census::enumerate_fields_serial(F, M);
        REQUIRE(a.fields.size() == b.fields.size());
        for (std::size_t i = 0; i < a.fields.size(); ++i) {
            CHECK(a.fields[i].form == b.fields[i].form);
            CHECK(a.fields[i].sigma == b.fields[i].sigma);
            CHECK(a.fields[i].galois == b.fields[i].galois);
            CHECK(a.fields[i].disc == b.fields[i].disc);
            CHECK(a.fields[i].split == b.fields[i].split);
        }
        CHECK(a.s3 == b.s3);
        CHECK(a.galois == b.galois);
        CHECK(a.mass_orbits == b.mass_orbits);
        CHECK(a.mass_weighted == b.mass_weighted);
    }
}

TEST_CASE("mass computed two ways") {
    Fq F(5);
    Census c4 = census::enumerate_fields(F, 4);
    CHECK(c4.mass_orbits == c4.mass_weighted);
    CHECK(c4.mass_orbits == Rational(c4.s3) + Rational(c4.galois, 3));
    CHECK(c4.s3 == 615);
    CHECK(c4.galois == 30);
    Census c6 = census::enumerate_fields(F, 6);
    CHECK(c6.mass_orbits == c6.mass_weighted);
    CHECK(c6.s3 == 15000);
    CHECK(c6.galois == 0);
}

TEST_CASE("postcondition replay") {
    for (auto [q, M] : {std::pair{5, 4}, std::pair{5, 6}, std::pair{7, 4}}) {
        Fq F(q);
        Census c = census::enumerate_fields(F, M);
        std::mt19937_64 rng(q * 100 + M);
        int checked = 0;
        for (std::size_t i = 0; i < c.fields.size(); i += 1 + rng() % 7) {
            const auto& r = c.fields[i];
            CHECK(form::disc(F, r.form) == r.disc);
            auto fac = poly::factor(F, r.disc);
            for (auto& [P, e] : fac.factors) CHECK(form::is_maximal_at(F, r.form, P));
            CHECK(form::is_irreducible(F, r.form));
            CHECK(form::is_galois(F, r.form) == r.galois);
            auto inf = infinity::classify_at_infinity(F, r.form);
            CHECK(inf.sigma == r.sigma);
            CHECK(inf.M == M);
            CHECK(inf.center_n == r.center_n);
            ++checked;
        }
        CHECK(checked > 100);
    }
}

TEST_CASE("records are orbit representatives") {
    Fq F(5);
    reduction::TopLayerIndex idx(F);
    Census c = census::enumerate_fields(F, 6);
    std::set<std::vector<std::vector<int>>> reps;
    for (auto& r : c.fields) reps.insert(form::to_ints(r.form));
    std::mt19937_64 rng(8);
    for (int it = 0; it < 300; ++it) {
        const auto& r = c.fields[rng() % c.fields.size()];
        CHECK(reduction::canonicalize(F, r.form, idx).form == r.form);
        Form g = form::act(F, rgl2(F, rng), r.form);
        CHECK(reduction::canonicalize(F, g, idx).form == r.form);
    }
}

TEST_CASE("splitting cache and partition") {
    Fq F(5);
    Census c = census::enumerate_fields(F, 6);
    auto primes = small_primes(F, 2);
    REQUIRE(primes == c.split_primes);
    std::mt19937_64 rng(3);
    for (int it = 0; it < 200; ++it) {
        const auto& r = c.fields[rng() % c.fields.size()];
        for (std::size_t j = 0; j < primes.size(); ++j)
            CHECK(r.split[j] == form::classify_mod_P(F, r.form, primes[j]));
    }
    for (auto& P : primes) {
        long long tot = 0;
        for (auto t : kSplitTypes) tot += census::count_fields_split(F, c, {{P, t}});
        CHECK(tot == census::count_fields(c));
    }
    CHECK(census::count_fields_split(F, c, {}) == census::count_fields(c));
    // a prime outside the cache goes through classify_mod_P
    Poly P3 = poly::primes_of_degree(F, 3)[0];
    long long tot = 0;
    for (auto t : kSplitTypes) tot += census::count_fields_split(F, c, {{P3, t}});
    CHECK(tot == census::count_fields(c));
    CHECK_THROWS(census::count_fields_split(F, c, {{primes[0], SplitType::S111}, {primes[0], SplitType::S3}}));
    CHECK_THROWS(census::count_fields_split(F, c, {{Poly{0, 0, 1}, SplitType::S111}}));
}

TEST_CASE("split counts against main plus secondary") {
    Fq F(5);
    Census c = census::enumerate_fields(F, 6);
    for (Poly P : {Poly{0, 1}, Poly{2, 0, 1}}) {
        double err_main = 0, err_comb = 0;
        for (auto t : kSplitTypes) {
            double n = static_cast<double>(census::count_fields_split(F, c, {{P, t}}, true));
            auto pr = predict::predict_split(5, 6, {{P, t}});
            CHECK(std::abs(n - pr.combined) < pr.band);
            err_main += std::abs(n - pr.main);
            err_comb += std::abs(n - pr.combined);
        }
        CHECK(err_comb < err_main);
    }
}

TEST_CASE("generator route agrees with the exact census") {
    Fq F(5);
    Census c = census::enumerate_fields(F, 4);
    auto gen = census::generator_fields(F, 4, 2, 3);
    std::set<std::vector<std::vector<int>>> exact;
    for (auto& r : c.fields) exact.insert(form::to_ints(r.form));
    std::set<std::vector<std::vector<int>>> seen;
    for (auto& g : gen) {
        CHECK(exact.count(form::to_ints(g.form)) == 1);
        seen.insert(form::to_ints(g.form));
        // Disc(generator) = index^2 Disc(maximal)
        CHECK(poly::monic(F, g.generator_disc) ==
              poly::monic(F, poly::mul(F, poly::mul(F, g.index, g.index), g.max_disc)));
    }
    CHECK(seen.size() == gen.size());
    CHECK(gen.size() == c.fields.size());
}

TEST_CASE("form orbit counts against brute-force canonicalization") {
    Fq F(5);
    reduction::TopLayerIndex idx(F);
    SigmaClass s111{SplitType::S111, 0};
    auto oc = census::enumerate_form_orbits(F, 4, s111);
    // every centre form with M = 4 has coefficients of degree <= 1
    std::set<std::vector<std::vector<int>>> seen;
    std::uint64_t total = 1;
    for (int i = 0; i < 8; ++i) total *= 5;
    for (std::uint64_t x = 0; x < total; x += 1) {
        Form f;
        std::uint64_t y = x;
        for (int k = 0; k < 4; ++k) {
            f.co[k] = poly::from_index(5, y % 25, 2);
            y /= 25;
        }
        Poly D = form::disc(F, f);
        if (poly::deg(D) != 4) continue;
        auto inf = infinity::classify_at_infinity(F, f);
        if (inf.sigma != s111) continue;
        if (!form::is_irreducible(F, f)) continue;
        seen.insert(form::to_ints(reduction::canonicalize(F, f, idx).form));
    }
    CHECK(oc.orbits == static_cast<long long>(seen.size()));
    CHECK(oc.mass > 0);
    CHECK(oc.mass <= oc.orbits);
}
