#include "cubicff/onelevel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cubicff/predict.hpp"

namespace cubicff {
namespace onelevel {

namespace {

constexpr double kPi = std::numbers::pi;

bool integral(double x) { return std::abs(x - std::round(x)) < 1e-12; }

// (1/N) [psi_hat(0) c_0 + 2 sum_{n >= 1} psi_hat(n/N) c_n]
double explicit_sum(const std::vector<double>& c, int N, const TestFunction& t) {
    double s = t.psi_hat(0.0) * c[0];
    for (std::size_t n = 1; n < c.size(); ++n) s += 2.0 * t.psi_hat(static_cast<double>(n) / N) * c[n];
    return s / N;
}

// largest n with psi_hat(n/N) possibly nonzero
int last_index(const TestFunction& t, int N) {
    double x = t.supp * N;
    return integral(x) ? static_cast<int>(std::llround(x)) - 1 : static_cast<int>(std::floor(x));
}

}  // namespace

TestFunction fejer_pair(double supp) {
    if (!(supp > 0)) throw std::invalid_argument("fejer_pair: support must be positive");
    TestFunction t;
    t.supp = supp;
    t.fejer = true;
    t.psi = [supp](double x) {
        double y = kPi * supp * x;
        if (std::abs(y) < 1e-8) return supp;
        double s = std::sin(y) / y;
        return supp * s * s;
    };
    t.psi_hat = [supp](double u) { return std::max(0.0, 1.0 - std::abs(u) / supp); };
    return t;
}

double fourier_pair_error(const TestFunction& t, const std::vector<double>& xs) {
    // composite Simpson on [0, supp]; psi_hat is even
    const int n = 20000;
    double h = t.supp / n;
    double err = 0;
    for (double x : xs) {
        double s = 0;
        for (int i = 0; i <= n; ++i) {
            double u = i * h;
            double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
            s += w * t.psi_hat(u) * std::cos(2 * kPi * u * x);
        }
        s *= 2 * h / 3;
        err = std::max(err, std::abs(t.psi(x) - s));
    }
    return err;
}

double periodized(const TestFunction& t, double x, int N) {
    if (N <= 0) throw std::invalid_argument("periodized: N must be positive");
    double K = t.supp * N;
    if (t.fejer && integral(K)) {
        double theta = 2 * kPi * x / N;
        double den = std::sin(theta / 2);
        if (std::abs(den) < 1e-9) return t.supp;
        double num = std::sin(K * theta / 2);
        return num * num / (t.supp * N * static_cast<double>(N) * den * den);
    }
    // direct sum; the tail of a psi decaying like 1/x^2 is replaced by its mean
    const int cut = 20000;
    double x0 = x - N * std::round(x / N);
    double s = 0;
    for (int m = -cut; m <= cut; ++m) s += t.psi(x0 + static_cast<double>(N) * m);
    if (t.fejer) s += 2.0 / (2.0 * kPi * kPi * t.supp * N * static_cast<double>(N) * (cut + 0.5));
    return s;
}

double D_L_from_zeros(const std::vector<double>& angles, int N, const TestFunction& t) {
    if (N == 0) return 0;
    double s = 0;
    for (double th : angles) s += periodized(t, N * th / (2 * kPi), N);
    return s;
}

double D_L_explicit(const std::vector<double>& c, int N, const TestFunction& t) {
    if (N == 0) return 0;
    int need = last_index(t, N);
    if (static_cast<int>(c.size()) <= need) throw std::invalid_argument("D_L_explicit: trace coefficients too short");
    std::vector<double> head(c.begin(), c.begin() + need + 1);
    return explicit_sum(head, N, t);
}

double trivial_cap(const TestFunction& t, int N) {
    if (N == 0) return 0;
    return N * (t.psi(0.0) + 1.0 / (t.supp * N * static_cast<double>(N)));
}

DensityReport family_average(const Fq& F, const Census& c, const std::vector<zeta::FieldZeta>& zs,
                             const TestFunction& t, bool parallel) {
    if (zs.size() != c.fields.size()) throw std::invalid_argument("family_average: zeta data does not match census");
    if (c.fields.empty()) throw std::invalid_argument("family_average: empty family");
    DensityReport r;
    int q = F.q();
    r.q = q;
    r.M = c.M;
    r.N = c.M - 4;
    r.supp = t.supp;
    r.family_size = static_cast<long long>(c.fields.size());
    r.trivial_cap = trivial_cap(t, r.N);
    r.symplectic = t.psi_hat(0.0) - t.psi(0.0) / 2;
    int N = r.N;
    int nmax = N == 0 ? 0 : last_index(t, N);
    for (auto& z : zs)
        if (static_cast<int>(z.A.size()) <= nmax) throw std::invalid_argument("family_average: need A_n up to supp N");

    std::vector<double> dz(zs.size()), de(zs.size());
    auto run = [&](std::size_t i) {
        dz[i] = D_L_from_zeros(zeta::zero_angles(zs[i].lp), N, t);
        de[i] = D_L_explicit(zs[i].c_primes, N, t);
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 256)
        for (std::size_t i = 0; i < zs.size(); ++i) run(i);
    } else {
        for (std::size_t i = 0; i < zs.size(); ++i) run(i);
    }
    double sz = 0, se = 0;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        sz += dz[i];
        se += de[i];
        r.max_method_diff = std::max(r.max_method_diff, std::abs(dz[i] - de[i]));
        if (dz[i] < -1e-9 || dz[i] > r.trivial_cap + 1e-9) ++r.cap_violations;
    }
    double fam = static_cast<double>(r.family_size);
    r.avg_zeros = sz / fam;
    r.avg_explicit = se / fam;
    r.gap = r.avg_zeros - r.symplectic;
    if (N == 0) {
        r.from_split_counts = r.predicted_main = r.predicted_corrected = 0;
        return r;
    }

    // census tallies: sum over fields of A_n
    std::vector<std::array<long long, 5>> tally(nmax + 1, {0, 0, 0, 0, 0});
    std::array<long long, 5> inf{0, 0, 0, 0, 0};
    for (std::size_t i = 0; i < zs.size(); ++i) {
        if (static_cast<int>(zs[i].tally.size()) <= nmax) throw std::invalid_argument("family_average: tally too short");
        for (int d = 1; d <= nmax; ++d)
            for (int k = 0; k < 5; ++k) tally[d][k] += zs[i].tally[d][k];
        ++inf[static_cast<int>(c.fields[i].sigma.type)];
    }
    auto qn = [q](int n) { return std::pow(static_cast<double>(q), n); };
    std::vector<double> cs(nmax + 1, 0.0);
    cs[0] = N;
    for (int n = 1; n <= nmax; ++n) {
        long long A = 0;
        for (int d = 1; d <= n; ++d) {
            if (n % d) continue;
            for (int k = 0; k < 5; ++k) {
                long long cnt = tally[d][k] + (d == 1 ? inf[k] : 0);
                A += cnt * zeta::place_contribution(kSplitTypes[k], d, n);
            }
        }
        cs[n] = (fam * (qn(n) + 1) - static_cast<double>(A)) / std::pow(static_cast<double>(q), n / 2.0) / fam;
    }
    r.from_split_counts = explicit_sum(cs, N, t);

    // predicted tallies: every degree-d place, infinity included as a degree-1 place, gets the predicted count
    auto predicted = [&](bool corrected) {
        auto tot = predict::predict_total(q, c.M);
        double famp = corrected ? tot.combined : tot.main;
        std::vector<double> cp(nmax + 1, 0.0);
        cp[0] = N;
        for (int n = 1; n <= nmax; ++n) {
            double A = 0;
            for (int d = 1; d <= n; ++d) {
                if (n % d) continue;
                Poly P = poly::primes_of_degree(F, d)[0];
                double places = poly::prime_count(q, d).convert_to<double>() + (d == 1 ? 1 : 0);
                for (auto s : kSplitTypes) {
                    auto pr = predict::predict_split(q, c.M, {{P, s}});
                    A += places * (corrected ? pr.combined : pr.main) *
                         static_cast<double>(zeta::place_contribution(s, d, n));
                }
            }
            cp[n] = (famp * (qn(n) + 1) - A) / std::pow(static_cast<double>(q), n / 2.0) / famp;
        }
        return explicit_sum(cp, N, t);
    };
    r.predicted_main = predicted(false);
    r.predicted_corrected = predicted(true);
    return r;
}

}  // namespace onelevel
}  // namespace cubicff
