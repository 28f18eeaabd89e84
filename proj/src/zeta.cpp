#include "cubicff/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace cubicff {
namespace zeta {

namespace {

// residue degrees of the places above a place with this splitting type
std::vector<int> residue_degrees(SplitType t) {
    switch (t) {
        case SplitType::S111: return {1, 1, 1};
        case SplitType::S21: return {1, 2};
        case SplitType::S3: return {3};
        case SplitType::S1_21: return {1, 1};
        case SplitType::S1_3: return {1};
        default: throw std::invalid_argument("place_contribution: zero form");
    }
}

long long ipow_ll(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

long long place_contribution(SplitType t, int degP, int n) {
    long long s = 0;
    for (int f : residue_degrees(t))
        if (n % (f * degP) == 0) s += f * degP;
    return s;
}

long long infinity_contribution(const SigmaClass& s, int n) { return place_contribution(s.type, 1, n); }

PlaceCounter::PlaceCounter(const Fq& F, int n_max) : F_(&F), nmax_(n_max), eng_(F, std::max(1, n_max)) {}

std::vector<long long> PlaceCounter::counts(const Form& f, const SigmaClass& sigma, Tally* tally) const {
    std::vector<long long> A(nmax_ + 1, 0);
    if (tally) tally->assign(nmax_ + 1, {0, 0, 0, 0, 0});
    for (int d = 1; d <= nmax_; ++d) {
        auto types = eng_.classify_all(f, d);
        for (auto t : types) {
            for (int n = d; n <= nmax_; n += d) A[n] += place_contribution(t, d, n);
            if (tally) {
                if (t == SplitType::Zero) throw std::runtime_error("PlaceCounter: form vanishes modulo a prime");
                ++(*tally)[d][static_cast<int>(t)];
            }
        }
    }
    for (int n = 1; n <= nmax_; ++n) A[n] += infinity_contribution(sigma, n);
    return A;
}

long long prime_count_A(const Fq& F, const FieldRecord& r, int n) {
    if (n < 1) throw std::invalid_argument("prime_count_A: n >= 1");
    long long A = infinity_contribution(r.sigma, n);
    for (int d = 1; d <= n; ++d) {
        if (n % d) continue;
        for (auto& P : poly::primes_of_degree(F, d))
            A += place_contribution(form::classify_mod_P(F, r.form, P), d, n);
    }
    return A;
}

std::vector<long long> newton_coefficients(int q, const std::vector<long long>& A, int k) {
    if (static_cast<int>(A.size()) <= k) throw std::invalid_argument("newton_coefficients: need A_1..A_k");
    std::vector<Rational> p(k + 1), e(k + 1);
    for (int n = 1; n <= k; ++n) p[n] = Rational(ipow_ll(q, n) + 1 - A[n]);
    e[0] = 1;
    for (int j = 1; j <= k; ++j) {
        Rational s = 0;
        for (int i = 1; i <= j; ++i) s += p[i] * e[j - i];
        e[j] = -s / j;
    }
    std::vector<long long> out(k + 1);
    for (int j = 0; j <= k; ++j) {
        if (denominator(e[j]) != 1) throw std::runtime_error("L-polynomial: non-integral coefficient");
        out[j] = static_cast<long long>(numerator(e[j]));
    }
    return out;
}

LPolynomial l_polynomial(int q, int M, const std::vector<long long>& A) {
    if (M < 4 || M % 2) throw std::invalid_argument("l_polynomial: M even and >= 4");
    LPolynomial lp;
    lp.q = q;
    lp.g = (M - 4) / 2;
    auto head = newton_coefficients(q, A, lp.g);
    lp.e.assign(2 * lp.g + 1, 0);
    for (int k = 0; k <= lp.g; ++k) lp.e[k] = head[k];
    for (int k = 0; k < lp.g; ++k) lp.e[2 * lp.g - k] = ipow_ll(q, lp.g - k) * lp.e[k];
    return lp;
}

bool functional_equation_holds(const LPolynomial& lp) {
    if (static_cast<int>(lp.e.size()) != 2 * lp.g + 1) return false;
    for (int k = 0; k <= lp.g; ++k)
        if (lp.e[2 * lp.g - k] != ipow_ll(lp.q, lp.g - k) * lp.e[k]) return false;
    return true;
}

std::vector<std::complex<double>> inverse_roots(const LPolynomial& lp) {
    int n = 2 * lp.g;
    if (n == 0) return {};
    // the pi_i are the roots of u^n + e_1 u^(n-1) + ... + e_n
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) C(i, n - 1) = -static_cast<double>(lp.e[n - i]);
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("inverse_roots: eigenvalues did not converge");
    std::vector<std::complex<double>> out(n);
    for (int i = 0; i < n; ++i) out[i] = es.eigenvalues()[i];
    std::sort(out.begin(), out.end(), [](auto a, auto b) {
        return std::arg(a) != std::arg(b) ? std::arg(a) < std::arg(b) : std::abs(a) < std::abs(b);
    });
    return out;
}

double rh_check(const LPolynomial& lp) {
    double dev = 0;
    for (auto pi : inverse_roots(lp)) {
        double r2 = 1.0 / std::norm(pi);
        dev = std::max(dev, std::abs(r2 - 1.0 / lp.q));
    }
    return dev;
}

std::vector<double> zero_angles(const LPolynomial& lp) {
    std::vector<double> out;
    for (auto pi : inverse_roots(lp)) out.push_back(std::arg(pi));
    return out;
}

std::vector<double> trace_coeffs(const LPolynomial& lp, int n_max) {
    std::vector<double> c(n_max + 1, 0.0);
    auto pis = inverse_roots(lp);
    double sq = std::sqrt(static_cast<double>(lp.q));
    c[0] = 2.0 * lp.g;
    for (int n = 1; n <= n_max; ++n) {
        std::complex<double> s = 0;
        for (auto pi : pis) s += std::pow(pi / sq, n);
        c[n] = s.real();
    }
    return c;
}

std::vector<double> trace_coeffs_from_counts(int q, int g, const std::vector<long long>& A, int n_max) {
    if (static_cast<int>(A.size()) <= n_max) throw std::invalid_argument("trace_coeffs_from_counts: need A_n");
    std::vector<double> c(n_max + 1, 0.0);
    c[0] = 2.0 * g;
    for (int n = 1; n <= n_max; ++n)
        c[n] = static_cast<double>(ipow_ll(q, n) + 1 - A[n]) / std::pow(static_cast<double>(q), n / 2.0);
    return c;
}

bool weil_bound_ok(int q, int g, long long A1) {
    double w = 2.0 * g * std::sqrt(static_cast<double>(q));
    return std::abs(static_cast<double>(A1) - (q + 1.0)) <= w + 1e-9;
}

FieldZeta field_zeta(const Fq& F, const FieldRecord& r, const PlaceCounter& pc) {
    FieldZeta z;
    int q = F.q();
    z.A = pc.counts(r.form, r.sigma, &z.tally);
    z.lp = l_polynomial(q, r.M, z.A);
    int g = z.lp.g;
    int nmax = pc.n_max();
    if (2 * g <= nmax) {
        auto full = newton_coefficients(q, z.A, 2 * g);
        LPolynomial lf = z.lp;
        lf.e = full;
        z.fe_exact = functional_equation_holds(lf) && full == z.lp.e;
    }
    z.rh = rh_check(z.lp);
    z.c_roots = trace_coeffs(z.lp, nmax);
    z.c_primes = trace_coeffs_from_counts(q, g, z.A, nmax);
    z.weil = weil_bound_ok(q, g, z.A[1]);
    return z;
}

ZetaReport census_zeta(const Fq& F, Census& c, std::vector<FieldZeta>* out, bool parallel) {
    ZetaReport rep;
    rep.q = F.q();
    rep.M = c.M;
    rep.g = (c.M - 4) / 2;
    // g + 3 for the trace comparison, at least 2g for the exact functional-equation check
    rep.n_max = std::max(rep.g + 3, 2 * rep.g);
    PlaceCounter pc(F, rep.n_max);
    std::vector<FieldZeta> zs(c.fields.size());
    auto run = [&](std::size_t i) {
        zs[i] = field_zeta(F, c.fields[i], pc);
        c.fields[i].lpoly = zs[i].lp.e;
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (std::size_t i = 0; i < zs.size(); ++i) run(i);
    } else {
        for (std::size_t i = 0; i < zs.size(); ++i) run(i);
    }
    for (auto& z : zs) {
        ++rep.fields;
        rep.fe_failures += !z.fe_exact;
        rep.weil_failures += !z.weil;
        rep.max_rh = std::max(rep.max_rh, z.rh);
        for (int n = 0; n <= rep.n_max; ++n)
            rep.max_trace_diff = std::max(rep.max_trace_diff, std::abs(z.c_roots[n] - z.c_primes[n]));
    }
    if (out) *out = std::move(zs);
    return rep;
}

}  // namespace zeta
}  // namespace cubicff
