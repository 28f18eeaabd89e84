#include "cubicff/predict.hpp"

#include <cmath>
#include <stdexcept>

#include "cubicff/infinity.hpp"

namespace cubicff {

namespace {

int mod3(int k) { return ((k % 3) + 3) % 3; }

QSixth qp(int q, int e6, const Rational& c = 1) { return QSixth::qpow(q, e6, c); }

Rational qinv(int q, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r /= q;
    return r;
}

}  // namespace

SecondaryElem SecondaryElem::phi(int n, const QSixth& c) {
    SecondaryElem r;
    r.add(n, c);
    return r;
}

void SecondaryElem::add(int n, const QSixth& c) {
    if (n % 2) throw std::invalid_argument("SecondaryElem: odd shift");
    if (c.is_zero()) return;
    auto it = t_.find(n);
    if (it == t_.end()) {
        t_.emplace(n, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

QSixth SecondaryElem::coeff(int n) const {
    auto it = t_.find(n);
    return it == t_.end() ? QSixth() : it->second;
}

SecondaryElem SecondaryElem::operator+(const SecondaryElem& o) const {
    SecondaryElem r = *this;
    for (auto& [n, c] : o.t_) r.add(n, c);
    return r;
}

SecondaryElem SecondaryElem::operator-(const SecondaryElem& o) const {
    SecondaryElem r = *this;
    for (auto& [n, c] : o.t_) r.add(n, -c);
    return r;
}

SecondaryElem SecondaryElem::operator*(const QSixth& s) const {
    SecondaryElem r;
    for (auto& [n, c] : t_) r.add(n, c * s);
    return r;
}

bool SecondaryElem::operator==(const SecondaryElem& o) const {
    if (t_.size() != o.t_.size()) return false;
    for (auto& [n, c] : t_)
        if (o.coeff(n) != c) return false;
    return true;
}

SecondaryElem SecondaryElem::truncated(int min_shift) const {
    SecondaryElem r;
    for (auto& [n, c] : t_)
        if (n >= min_shift) r.t_.emplace(n, c);
    return r;
}

namespace predict {

SecondaryElem tensor(const SecondaryElem& a, const SecondaryElem& b) {
    SecondaryElem r;
    for (auto& [n, c] : a.terms())
        for (auto& [m, d] : b.terms()) r = r + SecondaryElem::phi(n + m, c * d);
    return r;
}

QSixth eval_phi_exact(const SecondaryElem& a, int M, int q) {
    QSixth s(q, 0);
    for (auto& [n, c] : a.terms()) s += c * C2_star(M + n, q);
    return s;
}

double eval_phi(const SecondaryElem& a, int M, int q) { return eval_phi_exact(a, M, q).to_double(); }

QSixth C2_star(int k, int q) {
    switch (mod3(k)) {
        case 0: return QSixth(q, Rational(q) + 3 + Rational(1, q));
        case 1: return qp(q, 4, 2) + qp(q, -2, 2) + qp(q, -8);
        default: return qp(q, 8) + qp(q, 2, 2) + qp(q, -4, 2);
    }
}

QSixth C2_star_assembled(int k, int q) {
    Fq F(q);
    QSixth s(q, 0);
    for (auto& sig : infinity::all_sigma(F)) {
        int g = infinity::gamma(sig);
        s += qp(q, -5 * g, Rational(1, infinity::aut_order(sig, q))) * infinity::eval_C2(F, sig, mod3(k - g));
    }
    return s;
}

QSixth C2_total(int M, int q) {
    switch (mod3(M)) {
        case 0: return QSixth(q, Rational(q + 1, q * q));
        case 1: return qp(q, -8);
        default: return qp(q, -10, q + 1);
    }
}

Rational main_coefficient(int q) {
    return Rational((q * q - 1) * (q * q * q - 1), static_cast<long long>(q) * q * q * q * (q - 1));
}

PredictionResult predict_total(int q, int M) {
    if (M % 2 || M < 0) throw std::invalid_argument("predict_total: M must be even and >= 0");
    PredictionResult r;
    r.q = q;
    r.M = M;
    r.main = main_coefficient(q).convert_to<double>() * std::pow(static_cast<double>(q), M);
    QSixth coef = C2_total(M, q) * Rational(-(q * q - 1), q);
    r.secondary = coef.to_double() * std::pow(static_cast<double>(q), 5.0 * M / 6.0);
    r.combined = r.main + r.secondary;
    r.band = std::pow(static_cast<double>(q), 2.0 * M / 3.0);
    return r;
}

Rational c_split(SplitType s, int q, int degP) {
    switch (s) {
        case SplitType::S111: return Rational(1, 6);
        case SplitType::S21: return Rational(1, 2);
        case SplitType::S3: return Rational(1, 3);
        case SplitType::S1_21: return qinv(q, degP);
        case SplitType::S1_3: return qinv(q, 2 * degP);
        default: throw std::invalid_argument("c_split: zero type");
    }
}

Rational x_P(int q, int degP) { return 1 / (1 + qinv(q, degP) + qinv(q, 2 * degP)); }

Rational c1_split(SplitType s, int q, int degP) { return main_coefficient(q) * x_P(q, degP) * c_split(s, q, degP); }

SecondaryElem d_P(SplitType s, int q, int degP) {
    const int d = degP;
    const Rational x = qinv(q, d);
    auto P = [&](int n, const QSixth& c) { return SecondaryElem::phi(n, c); };
    switch (s) {
        case SplitType::S111:
            return P(0, QSixth(q, Rational(1, 6) * (1 - 2 * x))) + P(-4 * d, qp(q, -2 * d, Rational(1, 6) * (2 - x)));
        case SplitType::S21: return P(0, QSixth(q, Rational(1, 2))) + P(-4 * d, qp(q, -8 * d, Rational(-1, 2)));
        case SplitType::S3:
            return P(0, QSixth(q, Rational(1, 3) * (1 + x))) + P(-4 * d, qp(q, -2 * d, Rational(-1, 3) * (1 + x)));
        case SplitType::S1_21:
            return P(0, QSixth(q, x * (1 - x))) + P(-2 * d, qp(q, -10 * d, -1)) + P(-4 * d, qp(q, -8 * d));
        case SplitType::S1_3: return P(0, QSixth(q, x * x)) + P(-2 * d, qp(q, -16 * d, -1));
        default: throw std::invalid_argument("d_P: zero type");
    }
}

SecondaryElem euler_factor(int q, int degP) {
    return SecondaryElem::phi(0, QSixth(q, 1)) - SecondaryElem::phi(-2 * degP, qp(q, -10 * degP));
}

SecondaryElem euler_factor_inverse(int q, int degP) {
    // tail |P|^(-5(K+1)/3) < q^-30  <=>  5 (K+1) degP > 90
    int K = 0;
    while (5 * (K + 1) * degP <= 90) ++K;
    SecondaryElem r;
    for (int k = 0; k <= K; ++k) r = r + SecondaryElem::phi(-2 * k * degP, qp(q, -10 * k * degP));
    return r;
}

SecondaryElem euler_collapse(int q, int max_deg, int max_shift) {
    SecondaryElem r = SecondaryElem::phi(0, QSixth(q, 1));
    for (int d = 1; d <= max_deg; ++d) {
        BigInt n = poly::prime_count(q, d);
        // (1 - c u^d)^n, binomial expansion up to u^max_shift
        SecondaryElem f;
        BigInt binom = 1;
        for (int k = 0; k * d <= max_shift; ++k) {
            if (k > 0) binom = binom * (n - (k - 1)) / k;
            if (binom == 0) break;
            Rational c = Rational(binom) * (k % 2 ? -1 : 1);
            f = f + SecondaryElem::phi(-2 * k * d, qp(q, -10 * k * d, c));
        }
        r = tensor(r, f).truncated(-2 * max_shift);
    }
    return r;
}

SecondaryElem collapsed_product(int q) {
    return SecondaryElem::phi(0, QSixth(q, 1)) - SecondaryElem::phi(-2, qp(q, -4));
}

namespace {

void check_conditions(const std::vector<PrimeCondition>& conds) {
    for (std::size_t i = 0; i < conds.size(); ++i) {
        if (conds[i].P.empty() || poly::deg(conds[i].P) < 1) throw std::invalid_argument("predict: bad prime");
        if (conds[i].split == SplitType::Zero) throw std::invalid_argument("predict: zero splitting type");
        for (std::size_t j = 0; j < i; ++j)
            if (conds[j].P == conds[i].P) throw std::invalid_argument("predict: repeated prime");
    }
}

}  // namespace

SecondaryElem split_secondary_elem(int q, const std::vector<PrimeCondition>& conds) {
    check_conditions(conds);
    SecondaryElem r = collapsed_product(q);
    for (auto& c : conds) {
        int d = poly::deg(c.P);
        r = tensor(r, euler_factor_inverse(q, d));
        r = tensor(r, d_P(c.split, q, d));
    }
    return r;
}

Rational split_prefactor(int q, const std::vector<PrimeCondition>& conds) {
    Rational r = 1;
    for (auto& c : conds) r /= 1 + qinv(q, poly::deg(c.P));
    return r;
}

PredictionResult predict_split(int q, int M, const std::vector<PrimeCondition>& conds) {
    if (M % 2 || M < 0) throw std::invalid_argument("predict_split: M must be even and >= 0");
    PredictionResult r;
    r.q = q;
    r.M = M;
    r.conditions = conds;
    Rational mc = main_coefficient(q);
    double band = std::pow(static_cast<double>(q), 2.0 * M / 3.0);
    for (auto& c : conds) {
        int d = poly::deg(c.P);
        mc *= c_split(c.split, q, d) * x_P(q, d);
        band *= std::pow(static_cast<double>(q), 2.0 * d / 3.0);
    }
    r.main = mc.convert_to<double>() * std::pow(static_cast<double>(q), M);
    QSixth coef = eval_phi_exact(split_secondary_elem(q, conds), M, q) * (split_prefactor(q, conds) * Rational(-1, q));
    r.secondary = coef.to_double() * std::pow(static_cast<double>(q), 5.0 * M / 6.0);
    r.combined = r.main + r.secondary;
    r.band = band;
    return r;
}

double C2_split(int q, int M, int degP, SplitType s) {
    if (degP < 1) throw std::invalid_argument("C2_split: deg P must be >= 1");
    Poly P = poly::monomial(1, degP);
    std::vector<PrimeCondition> conds{{P, s}};
    QSixth coef = eval_phi_exact(split_secondary_elem(q, conds), M, q) * (split_prefactor(q, conds) * Rational(-1, q));
    return coef.to_double();
}

OneLevelInequality onelevel_inequality(int q, int M, int degP) {
    OneLevelInequality r;
    r.value = 2 * C2_split(q, M, degP, SplitType::S111) - C2_split(q, M, degP, SplitType::S3) +
              C2_split(q, M, degP, SplitType::S1_21);
    QSixth br = C2_star(M - 4 * degP, q) - qp(q, -4) * C2_star(M - 2 - 4 * degP, q);
    r.bracket = br.to_double();
    r.leading = -(1.0 / q) * std::pow(static_cast<double>(q), -degP / 3.0) * r.bracket;
    r.negative = r.value < 0;
    return r;
}

}  // namespace predict
}  // namespace cubicff
