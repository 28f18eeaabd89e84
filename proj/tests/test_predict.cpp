#include <cmath>

#include "cubicff/fourier.hpp"
#include "cubicff/infinity.hpp"
#include "cubicff/predict.hpp"
#include "doctest.h"

using namespace cubicff;
using namespace cubicff::predict;

namespace {

QSixth qp(int q, int e6, const Rational& c = 1) { return QSixth::qpow(q, e6, c); }
SecondaryElem phi(int n, const QSixth& c) { return SecondaryElem::phi(n, c); }

Rational qinv(int q, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r /= q;
    return r;
}

Poly monic_of_degree(int d, fe c0) {
    Poly P = poly::monomial(1, d);
    P.front() = c0;
    return P;
}

}  // namespace

TEST_CASE("tensor algebra") {
    int q = 5;
    QSixth one(q, 1);
    CHECK(tensor(phi(0, one), phi(-2, one)) == phi(-2, one));
    SecondaryElem a = phi(0, one) - phi(-2, qp(q, -4));
    SecondaryElem b = phi(0, one) + phi(-2, qp(q, -4));
    CHECK(tensor(a, b) == phi(0, one) - phi(-4, qp(q, -8)));
    CHECK(tensor(a, b) == tensor(b, a));
    SecondaryElem c = phi(-4, qp(q, 3, 2));
    CHECK(tensor(tensor(a, b), c) == tensor(a, tensor(b, c)));
    CHECK_THROWS(phi(-1, one));
    CHECK(eval_phi(phi(0, one), 0, q) == doctest::Approx(8.2));
}

TEST_CASE("C2* table equals the sigma assembly") {
    for (int q : {5, 7})
        for (int k = -6; k <= 6; ++k) CHECK(C2_star(k, q) == C2_star_assembled(k, q));
    CHECK(C2_star(0, 5).to_double() == doctest::Approx(8.2));
    CHECK(C2_star(1, 7) == qp(7, 4, 2) + qp(7, -2, 2) + qp(7, -8));
}

TEST_CASE("per-sigma secondary combinations") {
    for (int q : {5, 7}) {
        Fq F(q);
        // C2^sigma(l) - q^(-2/3) C2^sigma(l - 2) by l mod 3
        auto row = [&](SplitType t, int col) -> QSixth {
            switch (t) {
                case SplitType::S111:
                    return col == 0 ? QSixth(q, 3 * (q - 1)) : col == 1 ? qp(q, -2, 3 * (q - 1)) : qp(q, -4, q * q - 1);
                case SplitType::S21:
                    return col == 0 ? QSixth(q, q - 1) : col == 1 ? qp(q, -2, q - 1) : qp(q, -4, q * q - 1);
                case SplitType::S3: return col == 2 ? qp(q, -4, q * q - 1) : QSixth(q, 0);
                case SplitType::S1_21:
                    return col == 0 ? qp(q, -3, q - 1) : col == 1 ? qp(q, 1, q - 1) : qp(q, -1, 2 * (q - 1));
                default: return col == 0 ? QSixth(q, q - 1) : col == 1 ? qp(q, -2, q - 1) : QSixth(q, 0);
            }
        };
        for (auto& s : infinity::all_sigma(F))
            for (int col = 0; col < 3; ++col) {
                QSixth v = infinity::eval_C2(F, s, col) - qp(q, -4) * infinity::eval_C2(F, s, (col + 1) % 3);
                CHECK(v == row(s.type, col));
            }
        // total: C2*(M) - q^(-2/3) C2*(M - 2) = (q^2 - 1) C2(M)
        for (int M = 0; M < 3; ++M)
            CHECK(C2_star(M, q) - qp(q, -4) * C2_star(M - 2, q) == C2_total(M, q) * Rational(q * q - 1));
    }
}

TEST_CASE("total prediction") {
    CHECK(main_coefficient(5) == Rational(24 * 124, 625 * 4));
    CHECK(main_coefficient(5).convert_to<double>() == doctest::Approx(1.1904));
    CHECK(C2_total(0, 5) == QSixth(5, Rational(6, 25)));
    CHECK(C2_total(1, 5) == qp(5, -8));
    CHECK(C2_total(2, 7) == qp(7, -10, 8));
    CHECK_THROWS(predict_total(5, 3));
    auto r = predict_total(5, 6);
    CHECK(r.main == doctest::Approx(1.1904 * 15625));
    CHECK(r.secondary < 0);
    CHECK(r.combined == r.main + r.secondary);
}

TEST_CASE("splitting constants") {
    for (int q : {5, 7})
        for (int d = 1; d <= 3; ++d) {
            Rational sc = 0, s1 = 0;
            SecondaryElem sd;
            for (auto s : kSplitTypes) {
                sc += c_split(s, q, d);
                s1 += c1_split(s, q, d);
                sd = sd + d_P(s, q, d);
            }
            CHECK(sc == 1 + qinv(q, d) + qinv(q, 2 * d));
            CHECK(s1 == main_coefficient(q));
            CHECK(sd == euler_factor(q, d) * QSixth(q, 1 + qinv(q, d)));
        }
    int q = 5;
    CHECK(d_P(SplitType::S1_3, q, 1) == phi(0, QSixth(q, Rational(1, 25))) - phi(-2, qp(q, -16)));
    CHECK(d_P(SplitType::S21, q, 1) == phi(0, QSixth(q, Rational(1, 2))) - phi(-4, qp(q, -8, Rational(1, 2))));
}

TEST_CASE("local factors from brute-force Fourier transforms") {
    for (int q : {5, 7}) {
        Fq F(q);
        fourier::ResidueSpace S(F, Poly{0, 1});
        Rational x = qinv(q, 1);
        for (auto s : {SplitType::S111, SplitType::S21, SplitType::S3}) {
            Rational n1 = fourier::nu(1, s, S), n2 = fourier::nu(2, s, S);
            SecondaryElem lhs = phi(0, QSixth(q, n1 - n2)) + phi(-4, qp(q, 4, n2));
            CHECK(lhs == d_P(s, q, 1) * QSixth(q, 1 - x));
        }
    }
}

TEST_CASE("geometric inverse of an Euler factor") {
    for (int d : {1, 2, 5}) {
        int q = 5;
        SecondaryElem prod = tensor(euler_factor(q, d), euler_factor_inverse(q, d));
        REQUIRE(prod.terms().size() == 2);
        CHECK(prod.coeff(0) == QSixth(q, 1));
        auto tail = prod.terms().begin();
        CHECK(std::abs(tail->second.to_double()) < std::pow(5.0, -30));
    }
}

TEST_CASE("Euler product collapse") {
    for (int q : {5, 7}) {
        SecondaryElem e = euler_collapse(q, 8, 24);
        SecondaryElem target = collapsed_product(q);
        // exact below the truncation degree
        for (int n = 0; n >= -16; n -= 2) CHECK(e.coeff(n) == target.coeff(n));
        SecondaryElem diff = e - target;
        for (auto& [n, c] : diff.terms()) CHECK(std::abs(c.to_double()) < std::pow(q, -4.0));
    }
}

TEST_CASE("split prediction consistency") {
    for (int q : {5, 7})
        for (int M : {4, 6, 8, 10}) {
            auto t = predict_total(q, M);
            auto e = predict_split(q, M, {});
            CHECK(t.main == e.main);
            CHECK(t.secondary == e.secondary);
            for (int d : {1, 2}) {
                double main = 0, sec = 0;
                for (auto s : kSplitTypes) {
                    auto r = predict_split(q, M, {{monic_of_degree(d, 1), s}});
                    main += r.main;
                    sec += r.secondary;
                }
                CHECK(main == doctest::Approx(t.main).epsilon(1e-12));
                CHECK(sec == doctest::Approx(t.secondary).epsilon(1e-12));
            }
        }
    CHECK_THROWS(predict_split(5, 6, {{Poly{0, 1}, SplitType::S111}, {Poly{0, 1}, SplitType::S3}}));
}

TEST_CASE("truncated inverse agrees with the periodic closed sum") {
    // phi(n) only enters through n mod 3, so sum_k x^(5k/3) phi(-2kd) sums in closed form
    int q = 5;
    for (int d : {1, 2})
        for (auto s : kSplitTypes)
            for (int M : {6, 8, 10}) {
                SecondaryElem base = tensor(collapsed_product(q), d_P(s, q, d));
                QSixth exact(q, 0);
                Rational geo = 1 / (1 - qinv(q, 5 * d));
                for (int j = 0; j < 3; ++j)
                    exact += eval_phi_exact(tensor(base, phi(-2 * j * d, qp(q, -10 * j * d))), M, q) * geo;
                std::vector<PrimeCondition> c{{monic_of_degree(d, 2), s}};
                double trunc = eval_phi(split_secondary_elem(q, c), M, q);
                CHECK(trunc == doctest::Approx(exact.to_double()).epsilon(1e-14));
            }
}

TEST_CASE("one-level inequality") {
    for (int q : {5, 7})
        for (int d = 1; d <= 4; ++d)
            for (int M : {6, 8, 10}) {
                auto r = onelevel_inequality(q, M, d);
                CHECK(r.negative);
                CHECK(r.bracket > 0);
                if (d == 4) CHECK(std::abs(r.value / r.leading - 1) < 0.01);
            }
}
