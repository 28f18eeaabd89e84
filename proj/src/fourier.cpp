#include "cubicff/fourier.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cubicff {
namespace fourier {

namespace {

cplx root_of_unity(int k, int p) {
    const double t = -2.0 * M_PI * static_cast<double>(k) / static_cast<double>(p);
    return {std::cos(t), std::sin(t)};
}

Poly residue_of(const Fq& F, const Poly& a, const Poly& P) { return poly::mod(F, a, P); }

// weights 1, 1/3, 1/3, 1 of the pairing
std::array<fe, 4> pairing_weights(const Fq& F) {
    fe third = F.inv(F.from_int(3));
    return {1, third, third, 1};
}

// F_p phase of the pairing (Tr of the T^(d-1) coefficient), per coordinate and residue
std::array<std::vector<int>, 4> phase_tables(const ResidueSpace& S, const Form& y) {
    const Fq& F = S.field();
    int d = poly::deg(S.modulus());
    auto w = pairing_weights(F);
    std::array<std::vector<int>, 4> out;
    for (int i = 0; i < 4; ++i) {
        Poly yi = poly::scale(F, residue_of(F, y.co[i], S.modulus()), w[i]);
        out[i].resize(S.norm());
        for (std::uint64_t r = 0; r < S.norm(); ++r) {
            Poly prod = poly::mulmod(F, S.residue(r), yi, S.modulus());
            out[i][r] = F.trace(poly::coef(prod, d - 1));
        }
    }
    return out;
}

}  // namespace

cplx chi_infty(const Fq& F, const Laurent& x) {
    if (x.prec <= 1) throw PrecisionError("chi_infty: coefficient of pi^1 unknown");
    return root_of_unity(F.trace(x.digit(1)), F.p());
}

Poly pairing(const Fq& F, const Form& x, const Form& y, const Poly& P) {
    auto w = pairing_weights(F);
    Poly s;
    for (int i = 0; i < 4; ++i) s = poly::add(F, s, poly::scale(F, poly::mul(F, x.co[i], y.co[i]), w[i]));
    return residue_of(F, s, P);
}

cplx chi(const Fq& F, const Form& y, const Form& x, const Poly& P) {
    if (!poly::is_monic(P)) throw std::invalid_argument("chi: modulus must be monic");
    // [x,y]/P as a Laurent series in pi; its pi^1 coefficient is the T^(d-1) coefficient of [x,y]
    int d = poly::deg(P);
    Poly s = pairing(F, x, y, P);
    int prec = d + 2;
    Laurent num = laurent::from_poly(s, prec);
    Laurent den = laurent::from_poly(P, prec);
    Laurent quo = laurent::mul(F, num, laurent::invert(F, den));
    return chi_infty(F, quo);
}

ResidueSpace::ResidueSpace(const Fq& F, Poly P) : F_(F), P_(std::move(P)), d_(poly::deg(P_)) {
    if (d_ < 1 || !poly::is_monic(P_)) throw std::invalid_argument("ResidueSpace: modulus must be monic of degree >= 1");
    N_ = 1;
    for (int i = 0; i < d_; ++i) N_ *= static_cast<std::uint64_t>(F.q());
    if (N_ > 256) throw std::invalid_argument("ResidueSpace: |P| too large for enumeration");
}

std::uint64_t ResidueSpace::residue_index(const Poly& r) const {
    std::uint64_t idx = 0;
    for (int i = d_ - 1; i >= 0; --i) idx = idx * F_.q() + poly::coef(r, i);
    return idx;
}

Form ResidueSpace::form(std::uint64_t idx) const {
    Form f;
    for (int i = 3; i >= 0; --i) {
        f.co[i] = residue(idx % N_);
        idx /= N_;
    }
    return f;
}

std::uint64_t ResidueSpace::index(const Form& f) const {
    std::uint64_t idx = 0;
    for (int i = 0; i < 4; ++i) idx = idx * N_ + residue_index(poly::mod(F_, f.co[i], P_));
    return idx;
}

std::vector<double> tabulate(const ResidueSpace& S, const std::function<double(const Form&)>& fn) {
    std::vector<double> out(S.size());
    const auto n = static_cast<long long>(S.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) out[i] = fn(S.form(static_cast<std::uint64_t>(i)));
    return out;
}

cplx brute_fourier_serial(const ResidueSpace& S, const std::vector<double>& fn, const Form& y) {
    cplx s = 0;
    for (std::uint64_t i = 0; i < S.size(); ++i)
        if (fn[i] != 0.0) s += fn[i] * chi(S.field(), y, S.form(i), S.modulus());
    return s / static_cast<double>(S.size());
}

cplx brute_fourier(const ResidueSpace& S, const std::vector<double>& fn, const Form& y) {
    const int p = S.field().p();
    const auto N = S.norm();
    auto ph = phase_tables(S, y);
    // bucket sums per leading residue, then a fixed-order reduction
    std::vector<double> buckets(N * p, 0.0);
    const auto n = static_cast<long long>(N);
#pragma omp parallel for schedule(static)
    for (long long a = 0; a < n; ++a) {
        double* bk = &buckets[a * p];
        const std::uint64_t base = static_cast<std::uint64_t>(a) * N * N * N;
        for (std::uint64_t b = 0; b < N; ++b)
            for (std::uint64_t c = 0; c < N; ++c) {
                const int pabc = (ph[0][a] + ph[1][b] + ph[2][c]) % p;
                const double* row = &fn[base + (b * N + c) * N];
                for (std::uint64_t d = 0; d < N; ++d)
                    if (row[d] != 0.0) bk[(pabc + ph[3][d]) % p] += row[d];
            }
    }
    std::vector<double> tot(p, 0.0);
    for (std::uint64_t a = 0; a < N; ++a)
        for (int k = 0; k < p; ++k) tot[k] += buckets[a * p + k];
    cplx s = 0;
    for (int k = 0; k < p; ++k) s += tot[k] * root_of_unity(k, p);
    return s / static_cast<double>(S.size());
}

double omega(const Fq& F, const Form& x, const Poly& P) { return static_cast<double>(form::omega_P(F, x, P)); }

double omega_tilde(const Fq& F, const Form& x, const Poly& P) {
    Form r = form::reduce_mod(F, x, P);
    bool zero = true;
    for (auto& c : r.co) zero = zero && c.empty();
    if (zero) {
        double n = 1;
        for (int i = 0; i < poly::deg(P); ++i) n *= F.q();
        return n + 1;
    }
    return poly::mod(F, form::disc(F, r), P).empty() ? 1.0 : 0.0;
}

bool has_triple_root(const Fq& F, const Form& y, const Poly& P) {
    return form::classify_mod_P(F, y, P) == SplitType::S1_3;
}

Rational omega_hat_closed(const Fq& F, const Poly& P, const Form& y) {
    Rational inv = Rational(1, static_cast<long long>(std::pow(F.q(), poly::deg(P))));
    SplitType t = form::classify_mod_P(F, y, P);
    if (t == SplitType::Zero) return 1 + inv;
    if (t == SplitType::S1_3) return inv;
    return 0;
}

Rational omega_tilde_hat_closed(const Fq& F, const Poly& P, const Form& y) {
    Rational inv = Rational(1, static_cast<long long>(std::pow(F.q(), poly::deg(P))));
    SplitType t = form::classify_mod_P(F, y, P);
    Rational r = 0;
    if (t == SplitType::Zero) r += inv;
    if (t == SplitType::Zero || t == SplitType::S1_21 || t == SplitType::S1_3) r += inv * inv;
    return r;
}

Rational to_rational(cplx v, std::uint64_t denom) {
    double x = v.real() * static_cast<double>(denom);
    double k = std::round(x);
    if (std::abs(x - k) > 1e-6 || std::abs(v.imag()) * static_cast<double>(denom) > 1e-6)
        throw std::runtime_error("to_rational: transform is not a rational with the expected denominator");
    return Rational(static_cast<long long>(k), static_cast<long long>(denom));
}

Rational nu(int j, SplitType s, const ResidueSpace& S) {
    if (j < 1 || j > 3) throw std::invalid_argument("nu: j must be 1, 2 or 3");
    const Fq& F = S.field();
    auto ind = tabulate(S, [&](const Form& x) { return form::classify_mod_P(F, x, S.modulus()) == s ? 1.0 : 0.0; });
    Form y;
    if (j == 2) y.co[0] = Poly{1};
    if (j == 3) y.co[1] = Poly{1};
    return to_rational(brute_fourier(S, ind, y), S.size());
}

namespace {

// coefficient pairs (v0, v1) of c0 + c1 u in F_q[u]/u^2
bool maximal_mod_u2(const Fq& F, const fe* v0, const fe* v1) {
    if (!v0[0] && !v0[1] && !v0[2] && !v0[3]) return false;
    // double root at [1:0] lifting to a zero mod u^2
    if (!v0[0] && !v1[0] && !v0[1]) return false;
    const fe three = F.from_int(3), two = F.from_int(2);
    for (int ri = 0; ri < F.q(); ++ri) {
        fe r = static_cast<fe>(ri);
        fe r2 = F.mul(r, r), r3 = F.mul(r2, r);
        auto val = [&](const fe* v) {
            return F.add(F.add(F.mul(v[0], r3), F.mul(v[1], r2)), F.add(F.mul(v[2], r), v[3]));
        };
        if (val(v0) || val(v1)) continue;
        fe dx = F.add(F.add(F.mul(F.mul(three, v0[0]), r2), F.mul(F.mul(two, v0[1]), r)), v0[2]);
        if (!dx) return false;
    }
    return true;
}

}  // namespace

std::uint64_t count_maximal_mod_P2(const Fq& F) {
    const long long q = F.q();
    const long long q4 = q * q * q * q;
    std::vector<std::uint64_t> partial(static_cast<std::size_t>(q4), 0);
    // outer index runs over the residues mod u, inner over the u-coefficients
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < q4; ++i) {
        fe v0[4], v1[4];
        long long t = i;
        for (int k = 3; k >= 0; --k) {
            v0[k] = static_cast<fe>(t % q);
            t /= q;
        }
        std::uint64_t cnt = 0;
        for (long long j = 0; j < q4; ++j) {
            long long s = j;
            for (int k = 3; k >= 0; --k) {
                v1[k] = static_cast<fe>(s % q);
                s /= q;
            }
            cnt += maximal_mod_u2(F, v0, v1);
        }
        partial[static_cast<std::size_t>(i)] = cnt;
    }
    std::uint64_t total = 0;
    for (auto c : partial) total += c;
    return total;
}

std::uint64_t count_maximal_mod_P2_serial(const Fq& F, const Poly& P) {
    if (poly::deg(P) != 1) throw std::invalid_argument("count_maximal_mod_P2_serial: P must have degree 1");
    const std::uint64_t q = static_cast<std::uint64_t>(F.q());
    const std::uint64_t total = q * q * q * q * q * q * q * q;
    Poly u = poly::monic(F, P);
    std::uint64_t cnt = 0;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        Form f;
        std::uint64_t t = idx;
        for (int k = 3; k >= 0; --k) {
            fe c0 = static_cast<fe>(t % q);
            t /= q;
            fe c1 = static_cast<fe>(t % q);
            t /= q;
            f.co[k] = poly::add(F, poly::constant(c0), poly::scale(F, u, c1));
        }
        cnt += form::is_maximal_at(F, f, P);
    }
    return cnt;
}

}  // namespace fourier
}  // namespace cubicff
