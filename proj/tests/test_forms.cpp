#include <map>
#include <random>
#include <set>

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
    // product of elementary matrices with a constant diagonal
    int q = F.q();
    Mat2 g = form::mat(poly::constant(static_cast<fe>(1 + rng() % (q - 1))), {}, {},
                       poly::constant(static_cast<fe>(1 + rng() % (q - 1))));
    for (int i = 0; i < 3; ++i) {
        Poly h = rpoly(rng, q, maxdeg);
        Mat2 e = (i % 2) ? form::mat(Poly{1}, h, {}, Poly{1}) : form::mat(Poly{1}, {}, h, Poly{1});
        g = form::mul(F, g, e);
    }
    return g;
}

using Vec = std::array<Poly, 3>;

// brute-force overring search at a degree-one prime P: every ring O + (1/P) L with L a line or a plane
// in O/PO (a nonmaximal order always has such an overring, e.g. O + P^{e-1} O_max for minimal e)
bool maximal_by_overrings(const Fq& F, const Form& f, const Poly& P) {
    REQUIRE(poly::deg(P) == 1);
    CubicRing R = form::ldf_ring(F, f);
    std::array<std::array<Vec, 3>, 3> tab;
    Vec e0{Poly{1}, Poly{}, Poly{}}, e1{Poly{}, Poly{1}, Poly{}}, e2{Poly{}, Poly{}, Poly{1}};
    Vec basis[3] = {e0, e1, e2};
    for (int i = 0; i < 3; ++i) tab[0][i] = tab[i][0] = basis[i];
    tab[1][1] = R.ww;
    tab[2][2] = R.tt;
    tab[1][2] = tab[2][1] = R.wt;
    auto mulv = [&](const Vec& x, const Vec& y) {
        Vec r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                Poly s = poly::mul(F, x[i], y[j]);
                for (int k = 0; k < 3; ++k) r[k] = poly::add(F, r[k], poly::mul(F, s, tab[i][j][k]));
            }
        return r;
    };
    fe root = F.neg(P[0]);
    using V3 = std::array<fe, 3>;
    auto red = [&](const Vec& u) { return V3{poly::eval(F, u[0], root), poly::eval(F, u[1], root), poly::eval(F, u[2], root)}; };
    auto dot = [&](const V3& n, const V3& u) {
        fe s = 0;
        for (int i = 0; i < 3; ++i) s = F.add(s, F.mul(n[i], u[i]));
        return s;
    };
    int q = F.q();
    std::vector<V3> all;
    for (int i = 1; i < q * q * q; ++i) all.push_back({static_cast<fe>(i / (q * q)), static_cast<fe>(i / q % q), static_cast<fe>(i % q)});
    auto first_nonzero_is_one = [](const V3& v) {
        for (fe x : v)
            if (x) return x == 1;
        return false;
    };
    auto test_space = [&](const std::vector<V3>& gens, const std::vector<V3>& normals) {
        // L = common kernel of the normals, spanned by gens
        auto in_L = [&](const V3& u) {
            for (auto& n : normals)
                if (dot(n, u)) return false;
            return true;
        };
        auto lift = [&](const V3& v) { return Vec{poly::constant(v[0]), poly::constant(v[1]), poly::constant(v[2])}; };
        for (size_t i = 0; i < gens.size(); ++i) {
            Vec x = lift(gens[i]);
            for (int k = 1; k < 3; ++k)
                if (!in_L(red(mulv(x, basis[k])))) return false;
            for (size_t j = i; j < gens.size(); ++j) {
                Vec xy = mulv(x, lift(gens[j]));
                Vec u;
                for (int k = 0; k < 3; ++k) {
                    if (!poly::divides(F, P, xy[k])) return false;
                    u[k] = poly::quot(F, xy[k], P);
                }
                if (!in_L(red(u))) return false;
            }
        }
        return true;
    };
    for (auto& n1 : all) {
        if (!first_nonzero_is_one(n1)) continue;
        // plane ker(n1)
        std::vector<V3> ker;
        for (auto& u : all)
            if (!dot(n1, u) && first_nonzero_is_one(u)) ker.push_back(u);
        std::vector<V3> gens{ker[0]};
        for (auto& u : ker)
            if (u != ker[0]) {
                gens.push_back(u);
                break;
            }
        if (test_space(gens, {n1})) return false;
        // lines inside the plane
        for (auto& u : ker) {
            std::vector<V3> normals{n1};
            for (auto& n2 : all)
                if (first_nonzero_is_one(n2) && !dot(n2, u) && n2 != n1) {
                    normals.push_back(n2);
                    break;
                }
            if (test_space({u}, normals)) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("discriminant examples") {
    Fq F(5);
    CHECK(form::disc(F, form::from_ints({{}, {1}, {1}, {}})) == Poly{1});
    CHECK(form::disc(F, form::from_ints({{1}, {}, {}, {}})) == Poly{});
    std::mt19937_64 rng(1);
    for (int it = 0; it < 50; ++it) {
        Poly A = rpoly(rng, 5, 2), B = rpoly(rng, 5, 2);
        Form f{{Poly{1}, {}, A, B}};
        Poly expect = poly::sub(F, poly::scale(F, poly::pow(F, A, 3), F.neg(4)),
                                poly::scale(F, poly::mul(F, B, B), F.from_int(27)));
        CHECK(form::disc(F, f) == expect);
    }
}

TEST_CASE("GL2 action") {
    Fq F(7);
    std::mt19937_64 rng(2);
    Form f = rform(rng, 7, 2);
    Form s = form::act(F, form::mat({}, Poly{1}, Poly{1}, {}), f);
    for (int i = 0; i < 4; ++i) CHECK(s.co[i] == poly::neg(F, f.co[3 - i]));
    CHECK(form::act(F, form::identity(), f) == f);
    Form d = form::substitute(F, form::mat(Poly{0, 1}, {}, {}, Poly{1}), f);  // f(Tx, y)
    CHECK(d.co[0] == poly::shift(f.co[0], 3));
    CHECK_THROWS(form::act(F, form::mat(Poly{0, 1}, {}, {}, Poly{1}), f));
    for (int it = 0; it < 1000; ++it) {
        Form g = rform(rng, 7, 2);
        Mat2 A = rgl2(F, rng, 1), B = rgl2(F, rng, 1);
        Poly dA = form::det(F, A);
        CHECK(form::disc(F, form::act(F, A, g)) == poly::mul(F, poly::mul(F, dA, dA), form::disc(F, g)));
        if (it % 10 == 0)
            CHECK(form::act(F, form::mul(F, A, B), g) == form::act(F, A, form::act(F, B, g)));
    }
    // over R/P: reduce then act agrees with act then reduce
    Poly P{3, 0, 1};
    for (int it = 0; it < 200; ++it) {
        Form g = rform(rng, 7, 3);
        Mat2 A = rgl2(F, rng, 1);
        CHECK(form::reduce_mod(F, form::act(F, A, g), P) ==
              form::reduce_mod(F, form::act(F, A, form::reduce_mod(F, g, P)), P));
    }
}

TEST_CASE("roots and classification") {
    Fq F(5);
    Poly P{0, 1};
    Form xy = form::from_ints({{}, {1}, {1}, {}});
    CHECK(form::roots_P1(F, xy, P).size() == 3);
    CHECK(form::omega_P(F, xy, P) == 3);
    CHECK(form::classify_mod_P(F, xy, P) == SplitType::S111);
    fe alpha = F.least_nonsquare();
    Form x21 = form::from_ints({{1}, {}, {F.neg(alpha)}, {}});
    CHECK(form::classify_mod_P(F, x21, P) == SplitType::S21);
    CHECK(form::classify_mod_P(F, form::from_ints({{1}, {}, {}, {}}), P) == SplitType::S1_3);
    Form zero;
    CHECK(form::omega_P(F, zero, P) == 6);
    CHECK(form::classify_mod_P(F, zero, P) == SplitType::Zero);
    // irreducible cubic x^3 + x + 1 over F_5 has no roots
    Form irr = form::from_ints({{1}, {}, {1}, {1}});
    CHECK(form::omega_P(F, irr, P) == 0);
    CHECK(form::classify_mod_P(F, irr, P) == SplitType::S3);

    // multiplicities sum to 3 for nonzero forms
    std::mt19937_64 rng(4);
    Poly P2{2, 0, 1};
    for (int it = 0; it < 300; ++it) {
        Form f = rform(rng, 5, 3);
        Form fr = form::reduce_mod(F, f, P2);
        bool z = true;
        for (auto& c : fr.co) z = z && c.empty();
        if (z) continue;
        int s = 0;
        for (auto& r : form::roots_P1(F, f, P2)) s += r.mult;
        int deg_part = 0;
        // roots of a cubic over the residue field: total <= 3, exactly 3 unless a quadratic/cubic factor is irreducible
        SplitType t = form::classify_mod_P(F, f, P2);
        if (t == SplitType::S111 || t == SplitType::S1_21 || t == SplitType::S1_3) deg_part = 3;
        if (t == SplitType::S21) deg_part = 1;
        CHECK(s == deg_part);
    }
}

TEST_CASE("five nonzero orbits over F_5") {
    Fq F(5);
    auto G = reduction::gl2_fq(F);
    std::map<std::array<fe, 4>, int> orbit;
    int norb = 0;
    Poly P{0, 1};
    for (int i = 1; i < 625; ++i) {
        std::array<fe, 4> v{static_cast<fe>(i / 125), static_cast<fe>(i / 25 % 5), static_cast<fe>(i / 5 % 5),
                            static_cast<fe>(i % 5)};
        if (orbit.count(v)) continue;
        ++norb;
        SplitType t = form::classify_mod_P(
            F, Form{{poly::constant(v[0]), poly::constant(v[1]), poly::constant(v[2]), poly::constant(v[3])}}, P);
        for (auto& g : G) {
            auto w = reduction::apply(F, g, v);
            orbit[w] = norb;
            SplitType tw = form::classify_mod_P(
                F, Form{{poly::constant(w[0]), poly::constant(w[1]), poly::constant(w[2]), poly::constant(w[3])}},
                P);
            CHECK(tw == t);
        }
    }
    CHECK(norb == 5);
}

TEST_CASE("ring of a form") {
    Fq F(5);
    CubicRing r = form::ldf_ring(F, form::from_ints({{}, {1}, {1}, {}}));
    CHECK(r.wt[0].empty());
    CHECK(r.ww[1] == Poly{4});
    CHECK(r.tt[2] == Poly{1});
    CubicRing s = form::ldf_ring(F, Form{{Poly{1}, {}, {}, Poly{0, 4}}});
    CHECK(s.wt[0] == Poly{0, 1});
    CHECK((s.ww[2] == Poly{1} && s.ww[0].empty() && s.ww[1].empty()));
    CHECK((s.tt[1] == Poly{0, 1} && s.tt[0].empty() && s.tt[2].empty()));
    std::mt19937_64 rng(6);
    for (int it = 0; it < 100; ++it) {
        Form f = rform(rng, 5, 2);
        CubicRing R = form::ldf_ring(F, f);
        CHECK(form::trace_form_det(F, R) == form::disc(F, f));
        CHECK(form::ring_associative(F, R));
    }
}

TEST_CASE("maximality agrees with overring search") {
    Fq F(5);
    Poly T{0, 1};
    CHECK(form::is_maximal_at(F, Form{{Poly{1}, {}, {}, Poly{0, 4}}}, T));
    CHECK(maximal_by_overrings(F, Form{{Poly{1}, {}, {}, Poly{0, 4}}}, T));
    CHECK(!form::is_maximal_at(F, Form{{Poly{1}, Poly{1}, Poly{0, 1}, Poly{0, 0, 1}}}, T));
    CHECK(!form::is_maximal_at(F, Form{{Poly{0, 1}, Poly{0, 2}, Poly{0, 1}, Poly{0, 3}}}, T));
    std::mt19937_64 rng(8);
    int nonmax = 0, checked = 0;
    for (int it = 0; it < 3000 && checked < 400; ++it) {
        Form f = rform(rng, 5, 2);
        // bias towards nonmaximal forms at T
        if (it % 2) {
            f.co[3] = poly::shift(rpoly(rng, 5, 0), 2);
            f.co[2] = poly::shift(rpoly(rng, 5, 1), 1);
        }
        Poly D = form::disc(F, f);
        if (D.empty()) continue;
        for (auto& [P, e] : poly::factor(F, D).factors) {
            if (poly::deg(P) > 1 || e < 2) continue;
            bool m = form::is_maximal_at(F, f, P);
            CHECK(m == maximal_by_overrings(F, f, P));
            nonmax += !m;
            ++checked;
        }
    }
    CHECK(nonmax > 20);
}

TEST_CASE("maximalize") {
    Fq F(5);
    std::mt19937_64 rng(9);
    for (int it = 0; it < 200; ++it) {
        Form f = rform(rng, 5, 3);
        Poly D = form::disc(F, f);
        if (D.empty()) continue;
        auto [g, idx] = form::maximalize(F, f);
        CHECK(form::is_maximal(F, g));
        CHECK(poly::mul(F, poly::mul(F, idx, idx), form::disc(F, g)) == D);
        if (poly::deg(idx) == 0) CHECK(form::is_maximal(F, f));
    }
    Form f{{Poly{0, 0, 1}, Poly{1}, Poly{0, 1}, Poly{0, 0, 1}}};
    auto [g, idx] = form::maximalize(F, f);
    CHECK(poly::deg(idx) >= 1);
    CHECK_THROWS(form::maximalize(F, Form{{Poly{1}, {}, {}, {}}}));
}

TEST_CASE("galois test") {
    Fq F(7);
    // x^3 - T x^2 y - (T+3) x y^2 - y^3 has discriminant (T^2+3T+9)^2
    Form g{{Poly{1}, Poly{0, F.neg(1)}, Poly{F.neg(3), F.neg(1)}, Poly{F.neg(1)}}};
    Poly r{2, 3, 1};
    CHECK(form::disc(F, g) == poly::mul(F, r, r));
    CHECK(form::is_irreducible(F, g));
    CHECK(form::is_galois(F, g));
    // x^3 + T: discriminant -27 T^2 is a square only if -27 is
    Form h{{Poly{1}, {}, {}, Poly{0, 1}}};
    CHECK(form::is_galois(F, h) == F.is_square(F.neg(F.from_int(27))));
    // odd-degree discriminant
    Form k{{Poly{1}, {}, Poly{0, 1}, Poly{1}}};
    CHECK(poly::deg(form::disc(F, k)) % 2 == 1);
    CHECK(!form::is_galois(F, k));
    CHECK_THROWS(form::is_galois(F, Form{{Poly{1}, Poly{0, 1}, {}, {}}}));
}
