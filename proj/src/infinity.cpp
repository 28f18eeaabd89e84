#include "cubicff/infinity.hpp"

#include <limits>
#include <stdexcept>

#include "cubicff/reduction.hpp"

namespace cubicff {
namespace infinity {

namespace {

constexpr int INF = std::numeric_limits<int>::max() / 4;

void norm(LPoly& x) {
    std::size_t lo = 0;
    while (lo < x.c.size() && !x.c[lo]) ++lo;
    if (lo == x.c.size()) {
        x.c.clear();
        x.val = 0;
        return;
    }
    if (lo) {
        x.c.erase(x.c.begin(), x.c.begin() + static_cast<long>(lo));
        x.val += static_cast<int>(lo);
    }
    while (!x.c.back()) x.c.pop_back();
}

int lval(const LPoly& x) { return x.is_zero() ? INF : x.val; }

LPoly lmono(fe c, int e) {
    LPoly r;
    if (c) {
        r.val = e;
        r.c = {c};
    }
    return r;
}

LPoly ladd(const Fq& F, const LPoly& a, const LPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int lo = std::min(a.val, b.val);
    int hi = std::max(a.val + static_cast<int>(a.c.size()), b.val + static_cast<int>(b.c.size()));
    LPoly r;
    r.val = lo;
    r.c.assign(hi - lo, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[a.val - lo + i] = F.add(r.c[a.val - lo + i], a.c[i]);
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[b.val - lo + i] = F.add(r.c[b.val - lo + i], b.c[i]);
    norm(r);
    return r;
}

LPoly lmul(const Fq& F, const LPoly& a, const LPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    LPoly r;
    r.val = a.val + b.val;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
    }
    norm(r);
    return r;
}

LPoly lscale(const Fq& F, const LPoly& a, fe s) {
    LPoly r = a;
    for (auto& x : r.c) x = F.mul(x, s);
    norm(r);
    return r;
}

LPoly lshift(const LPoly& a, int e) {
    LPoly r = a;
    if (!r.is_zero()) r.val += e;
    return r;
}

int mod3(int x) { return ((x % 3) + 3) % 3; }

struct Shell {
    const Fq& F;
    int L;
    int q;

    // integrand value at valuation k: q^(2k'/3), k' the least integer >= k with k' = L mod 3
    QSixth h(int k) const {
        int kk = k + mod3(L - k);
        return QSixth::qpow(q, 4 * kk);
    }

    // integral over t0 + pi^N O of h(v(g(t))), g given by coefficients g[0..3] in t
    QSixth descend(const std::array<LPoly, 4>& g, const LPoly& t0, int N) const {
        if (N > 400) throw std::runtime_error("integrate_shell: no convergence");
        // Taylor coefficients at t0, scaled by pi^(N j)
        std::array<LPoly, 4> e;
        static const int binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
        std::array<LPoly, 4> tp;
        tp[0] = lmono(1, 0);
        for (int i = 1; i < 4; ++i) tp[i] = lmul(F, tp[i - 1], t0);
        for (int j = 0; j < 4; ++j) {
            LPoly s;
            for (int i = j; i < 4; ++i)
                s = ladd(F, s, lscale(F, lmul(F, g[i], tp[i - j]), F.from_int(binom[i][j])));
            e[j] = lshift(s, N * j);
        }
        int v0 = lval(e[0]), v1 = lval(e[1]), v2 = lval(e[2]), v3 = lval(e[3]);
        int rest = std::min(v1, std::min(v2, v3));
        if (v0 < rest) return QSixth::qpow(q, 6 * (1 - N)) * h(v0);
        if (v1 < std::min(v2, v3) && v0 >= v1) {
            // one simple root in the region: the valuation is v1 + v(u - root)
            QSixth s(q, 0);
            for (int r = 0; r < 3; ++r) s += QSixth::qpow(q, -6 * r) * h(v1 + r);
            return QSixth::qpow(q, 6 * (1 - N)) * s;
        }
        QSixth total(q, 0);
        for (int r = 0; r < q; ++r) total += descend(g, ladd(F, t0, lmono(static_cast<fe>(r), N)), N + 1);
        return total;
    }
};

}  // namespace

std::string sigma_name(const SigmaClass& s) {
    std::string b = split_name(s.type);
    if (s.type == SplitType::S1_21 || s.type == SplitType::S1_3) b += "_" + std::to_string(s.fine);
    return b;
}

SigmaClass sigma_from_name(const std::string& s) {
    auto us = s.find('_');
    SigmaClass r;
    if (us == std::string::npos) {
        r.type = split_from_name(s);
    } else {
        r.type = split_from_name(s.substr(0, us));
        r.fine = std::stoi(s.substr(us + 1));
    }
    return r;
}

std::vector<SigmaClass> all_sigma(const Fq& F) {
    std::vector<SigmaClass> out{{SplitType::S111, 0}, {SplitType::S21, 0}, {SplitType::S3, 0},
                                {SplitType::S1_21, 0}, {SplitType::S1_21, 1}};
    int ncube = (F.q() - 1) % 3 == 0 ? 3 : 1;
    for (int i = 0; i < ncube; ++i) out.push_back({SplitType::S1_3, i});
    return out;
}

int gamma(SplitType t) {
    switch (t) {
        case SplitType::S111:
        case SplitType::S21:
        case SplitType::S3: return 0;
        case SplitType::S1_21: return 1;
        case SplitType::S1_3: return 2;
        default: throw std::invalid_argument("gamma: zero type");
    }
}

int aut_order(SplitType t, int q) {
    switch (t) {
        case SplitType::S111: return 6;
        case SplitType::S21: return 2;
        case SplitType::S3: return 3;
        case SplitType::S1_21: return 2;
        case SplitType::S1_3: return (q % 3 == 2) ? 1 : 3;
        default: throw std::invalid_argument("aut_order: zero type");
    }
}

SigmaClass sigma_of_reduced(const Fq& F, const Form& red, int n, fe lc_disc) {
    int H = reduction::top_index(red, n);
    auto g0 = reduction::layer(red, n, H, 0);
    auto g1 = reduction::layer(red, n, H, 1);
    Form top{{poly::constant(g0[0]), poly::constant(g0[1]), poly::constant(g0[2]), poly::constant(g0[3])}};
    SplitType t = form::classify_mod_P(F, top, Poly{0, 1});
    SigmaClass s{t, 0};
    if (t == SplitType::S1_21) {
        s.fine = F.is_square(lc_disc) ? 0 : 1;
    } else if (t == SplitType::S1_3) {
        fe a0, d1;
        if (g0[0]) {
            // triple root [r:1] with r = -b0/(3 a0); G(x + r y, y) has y^3 coefficient G1(r, 1) in layer 1
            fe r = F.neg(F.div(g0[1], F.mul(F.from_int(3), g0[0])));
            a0 = g0[0];
            d1 = F.add(F.mul(F.add(F.mul(F.add(F.mul(g1[0], r), g1[1]), r), g1[2]), r), g1[3]);
        } else {
            // root [1:0]; swap variables (twisted by det = -1)
            a0 = F.neg(g0[3]);
            d1 = F.neg(g1[0]);
        }
        s.fine = F.cube_class(F.neg(F.div(d1, a0)));
    } else if (t == SplitType::Zero) {
        throw std::logic_error("sigma_of_reduced: zero top layer");
    }
    return s;
}

InfinityData classify_at_infinity(const Fq& F, const Form& f) {
    Poly D = form::disc(F, f);
    if (D.empty()) throw std::domain_error("classify_at_infinity: singular form");
    auto r = reduction::reduce(F, f);
    InfinityData out;
    out.sigma = sigma_of_reduced(F, r.form, r.n, poly::lc(D));
    out.gamma = r.Q;
    out.deg_disc = poly::deg(D);
    out.M = out.deg_disc + out.gamma;
    out.center_n = r.n;
    if (out.gamma != gamma(out.sigma)) throw std::logic_error("classify_at_infinity: centre invariant mismatch");
    return out;
}

LForm representative_form(const Fq& F, const SigmaClass& s) {
    LForm v;
    switch (s.type) {
        case SplitType::S111:
            v.co[1] = lmono(1, 0);
            v.co[2] = lmono(1, 0);
            break;
        case SplitType::S21:
            v.co[0] = lmono(1, 0);
            v.co[2] = lmono(F.neg(F.least_nonsquare()), 0);
            break;
        case SplitType::S3: {
            // first irreducible x^3 + c x + d in (c, d) order
            bool found = false;
            for (int c = 0; c < F.q() && !found; ++c)
                for (int d = 0; d < F.q() && !found; ++d) {
                    bool root = false;
                    for (int x = 0; x < F.q() && !root; ++x) {
                        fe X = static_cast<fe>(x);
                        root = F.add(F.mul(F.add(F.mul(X, X), static_cast<fe>(c)), X), static_cast<fe>(d)) == 0;
                    }
                    if (!root) {
                        v.co[0] = lmono(1, 0);
                        v.co[2] = lmono(static_cast<fe>(c), 0);
                        v.co[3] = lmono(static_cast<fe>(d), 0);
                        found = true;
                    }
                }
            break;
        }
        case SplitType::S1_21: {
            fe e = s.fine ? F.least_nonsquare() : 1;
            v.co[0] = lmono(1, 0);
            v.co[2] = lmono(F.neg(e), 1);
            break;
        }
        case SplitType::S1_3: {
            fe e = F.pow(F.least_noncube() ? F.least_noncube() : 1, static_cast<std::uint64_t>(s.fine));
            v.co[0] = lmono(1, 0);
            v.co[3] = lmono(F.neg(e), 1);
            break;
        }
        default: throw std::invalid_argument("representative_form: zero type");
    }
    return v;
}

int disc_valuation(const Fq& F, const LForm& v) {
    const LPoly &a = v.co[0], &b = v.co[1], &c = v.co[2], &d = v.co[3];
    auto m = [&](const LPoly& x, const LPoly& y) { return lmul(F, x, y); };
    LPoly D = m(m(b, b), m(c, c));
    D = ladd(F, D, lscale(F, m(m(a, c), m(c, c)), F.from_int(-4)));
    D = ladd(F, D, lscale(F, m(m(b, b), m(b, d)), F.from_int(-4)));
    D = ladd(F, D, lscale(F, m(m(a, a), m(d, d)), F.from_int(-27)));
    D = ladd(F, D, lscale(F, m(m(a, b), m(c, d)), F.from_int(18)));
    if (D.is_zero()) throw std::domain_error("disc_valuation: singular form");
    return D.val;
}

EpsilonContext epsilon_context(int ell, const SigmaClass& s) {
    EpsilonContext c;
    c.ell = ell;
    c.sigma = s;
    c.v_lambda0_mod3 = s.type == SplitType::S1_3 ? mod3(ell - 1) : mod3(ell);
    return c;
}

int epsilon(int k, const EpsilonContext& ctx) { return mod3(ctx.v_lambda0_mod3 - k); }

QSixth integrate_shell(const Fq& F, const LForm& v, int L) {
    Shell sh{F, L, F.q()};
    // |x| = 1, y = t x:  v(1, t) = a + b t + c t^2 + d t^3
    std::array<LPoly, 4> g1{v.co[0], v.co[1], v.co[2], v.co[3]};
    // |x| < 1, |y| = 1, x = s y:  v(s, 1) = d + c s + b s^2 + a s^3
    std::array<LPoly, 4> g2{v.co[3], v.co[2], v.co[1], v.co[0]};
    QSixth total = sh.descend(g1, LPoly{}, 0) + sh.descend(g2, LPoly{}, 1);
    return total * Rational(F.q() - 1);
}

QSixth eval_C2_at(const Fq& F, const SigmaClass& s, int ell) {
    if ((ell % 2 == 1) != (s.type == SplitType::S1_21)) throw std::invalid_argument("eval_C2: wrong parity of ell");
    LForm v = representative_form(F, s);
    int vD = disc_valuation(F, v);
    if ((ell + vD) % 4 == 2) {
        // pi v(x/pi, y) = (a pi^-2, b pi^-1, c, d pi)
        v.co[0] = lshift(v.co[0], -2);
        v.co[1] = lshift(v.co[1], -1);
        v.co[3] = lshift(v.co[3], 1);
        vD -= 2;
    }
    if ((ell + vD) % 4 != 0) throw std::logic_error("eval_C2: no lambda_0 for this ell");
    int L = (ell + vD) / 4;
    int q = F.q();
    QSixth J = integrate_shell(F, v, L);
    return J * QSixth::qpow(q, -vD) * Rational(1, q * q - 1);
}

QSixth eval_C2(const Fq& F, const SigmaClass& s, int ell_mod3, bool bootstrap) {
    LForm v = representative_form(F, s);
    int vD = disc_valuation(F, v);
    bool odd = s.type == SplitType::S1_21;
    for (int ell = 0; ell < 24; ++ell) {
        if (ell % 3 != ell_mod3 || (ell % 2 == 1) != odd) continue;
        int r = (ell + vD) % 4;
        if ((!bootstrap && r == 0) || (bootstrap && r == 2 && ell >= 2)) return eval_C2_at(F, s, ell);
    }
    throw std::logic_error("eval_C2: no admissible ell");
}

}  // namespace infinity
}  // namespace cubicff
