#include <random>

#include "cubicff/form.hpp"
#include "cubicff/reduction.hpp"
#include "doctest.h"

using namespace cubicff;

namespace {

Poly rpoly(std::mt19937_64& rng, int q, int maxdeg) {
    Poly p(maxdeg + 1);
    for (auto& c : p) c = static_cast<fe>(rng() % q);
    poly::trim(p);
    return p;
}

Form rform(std::mt19937_64& rng, int q, int maxdeg) {
    Form f;
    for (auto& c : f.co) c = rpoly(rng, q, maxdeg);
    return f;
}

Mat2 rgl2(const Fq& F, std::mt19937_64& rng, int maxdeg) {
    int q = F.q();
    Mat2 g = form::mat(poly::constant(static_cast<fe>(1 + rng() % (q - 1))), {}, {},
                       poly::constant(static_cast<fe>(1 + rng() % (q - 1))));
    for (int i = 0; i < 4; ++i) {
        Poly h = rpoly(rng, q, maxdeg);
        Mat2 e = (i % 2) ? form::mat(Poly{1}, h, {}, Poly{1}) : form::mat(Poly{1}, {}, h, Poly{1});
        g = form::mul(F, g, e);
    }
    return g;
}

Form untwist(const Fq& F, const Form& f, int n) {
    // (a T^{2n}, b T^n, c, d T^{-n}) scaled by T^n to stay polynomial: f(T^n x, y)
    return form::substitute(F, form::mat(poly::monomial(1, n), {}, {}, Poly{1}), f);
}

}  // namespace

TEST_CASE("reduction reaches the centre") {
    for (int q : {5, 7}) {
        Fq F(q);
        std::mt19937_64 rng(q);
        int done = 0;
        for (int it = 0; it < 600; ++it) {
            Form f = rform(rng, q, 1 + static_cast<int>(rng() % 3));
            if (it % 3 == 0) f = form::act(F, rgl2(F, rng, 2), f);
            if (form::disc(F, f).empty()) continue;
            auto r = reduction::reduce(F, f);
            CHECK(form::act(F, r.h, f) == r.form);
            CHECK(poly::deg(form::det(F, r.h)) == 0);
            CHECK(reduction::is_reduced_at(F, r.form, r.n));
            CHECK(r.Q >= 0);
            // every neighbour of the centre has larger Q
            Form G = untwist(F, r.form, r.n);
            for (int v : reduction::neighbour_q_values(F, G)) CHECK(v > r.Q);
            ++done;
        }
        CHECK(done > 400);
    }
}

TEST_CASE("stabiliser sizes") {
    Fq F(5);
    for (int n = 0; n <= 2; ++n)
        CHECK(static_cast<long long>(reduction::stabilizer(F, n).size()) == reduction::stabilizer_order(5, n));
    CHECK(reduction::gl2_fq(F).size() == 480);
}

TEST_CASE("stabiliser preserves reducedness") {
    Fq F(5);
    std::mt19937_64 rng(3);
    for (int it = 0; it < 100; ++it) {
        Form f = rform(rng, 5, 2);
        if (form::disc(F, f).empty()) continue;
        auto r = reduction::reduce(F, f);
        auto S = reduction::stabilizer(F, r.n);
        for (int k = 0; k < 20; ++k) {
            Form g = form::act(F, S[rng() % S.size()], r.form);
            CHECK(reduction::is_reduced_at(F, g, r.n));
            CHECK(reduction::q_invariant(F, g, r.n) == r.Q);
        }
    }
}

TEST_CASE("top-layer minimisers") {
    Fq F(5);
    reduction::TopLayerIndex idx(F);
    auto& G = idx.group();
    std::mt19937_64 rng(4);
    for (int it = 0; it < 200; ++it) {
        std::array<fe, 4> v{static_cast<fe>(rng() % 5), static_cast<fe>(rng() % 5), static_cast<fe>(rng() % 5),
                            static_cast<fe>(rng() % 5)};
        std::array<fe, 4> best = reduction::apply(F, G[0], v);
        for (auto& g : G) best = std::min(best, reduction::apply(F, g, v));
        for (int gi : idx.minimisers(v)) CHECK(reduction::apply(F, G[gi], v) == best);
        int cnt = 0;
        for (auto& g : G) cnt += reduction::apply(F, g, v) == best;
        CHECK(cnt == static_cast<int>(idx.minimisers(v).size()));
    }
    // constant-matrix action agrees with the polynomial action
    for (int it = 0; it < 50; ++it) {
        Form f = rform(rng, 5, 2);
        auto& g = G[rng() % G.size()];
        Mat2 m = form::mat(poly::constant(g.a), poly::constant(g.b), poly::constant(g.c), poly::constant(g.d));
        CHECK(reduction::apply(F, g, f) == form::act(F, m, f));
    }
}

TEST_CASE("normalisation") {
    Fq F(7);
    std::mt19937_64 rng(5);
    for (int it = 0; it < 300; ++it) {
        int n = static_cast<int>(rng() % 3);
        Form f = rform(rng, 7, 3);
        if (f.co[0].empty()) continue;
        Form g = reduction::normalize(F, f, n);
        CHECK(poly::is_monic(g.co[0]));
        int da = poly::deg(g.co[0]);
        for (int j = 0; j <= n; ++j) CHECK(poly::coef(g.co[1], da + j) == 0);
        // any element [[1,0],[h,t]] with deg h <= n gives the same normal form
        Poly h = rpoly(rng, 7, n);
        fe t = static_cast<fe>(1 + rng() % 6);
        Form f2 = form::act(F, form::mat(Poly{1}, {}, h, poly::constant(t)), f);
        CHECK(reduction::normalize(F, f2, n) == g);
        CHECK(poly::monic(F, form::disc(F, g)) == poly::monic(F, form::disc(F, f)));
    }
}

TEST_CASE("canonical form is an orbit invariant") {
    for (int q : {5, 7}) {
        Fq F(q);
        reduction::TopLayerIndex idx(F);
        std::mt19937_64 rng(10 + q);
        int done = 0;
        for (int it = 0; it < 300; ++it) {
            Form f = rform(rng, q, 1 + static_cast<int>(rng() % 2));
            if (form::disc(F, f).empty()) continue;
            auto c1 = reduction::canonicalize(F, f, idx);
            Form g = form::act(F, rgl2(F, rng, 2), f);
            auto c2 = reduction::canonicalize(F, g, idx);
            CHECK(c1.form == c2.form);
            CHECK(c1.n == c2.n);
            CHECK(c1.Q == c2.Q);
            ++done;
        }
        CHECK(done > 200);
    }
}

TEST_CASE("canonical form separates orbits like the brute-force minimum") {
    Fq F(5);
    reduction::TopLayerIndex idx(F);
    std::mt19937_64 rng(21);
    // pairs of reduced forms at the same vertex, half of them equivalent
    int eq = 0, ne = 0;
    for (int it = 0; it < 200; ++it) {
        Form f = rform(rng, 5, 2);
        if (form::disc(F, f).empty()) continue;
        auto r = reduction::reduce(F, f);
        Form other;
        if (it % 2) {
            auto S = reduction::stabilizer(F, r.n);
            other = form::act(F, S[rng() % S.size()], r.form);
        } else {
            // perturb a low coefficient; stays reduced at n in most cases
            other = r.form;
            other.co[3] = poly::add(F, other.co[3], Poly{1});
            if (form::disc(F, other).empty() || !reduction::is_reduced_at(F, other, r.n)) continue;
        }
        bool same_brute = reduction::lexmin_brute(F, r.form, r.n) == reduction::lexmin_brute(F, other, r.n);
        bool same_fast = reduction::canonical_reduced(F, r.form, r.n, idx) ==
                         reduction::canonical_reduced(F, other, r.n, idx);
        CHECK(same_brute == same_fast);
        (same_brute ? eq : ne)++;
    }
    CHECK(eq > 50);
    CHECK(ne > 20);
}
