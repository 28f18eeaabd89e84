#include "cubicff/reduction.hpp"

#include <algorithm>
#include <stdexcept>

namespace cubicff {
namespace reduction {

namespace {

using V4 = std::array<fe, 4>;

// twisted action of a constant matrix on a cubic form over F_q
V4 act_fe(const Fq& F, fe g00, fe g01, fe g10, fe g11, const V4& f) {
    // X = g00 x + g10 y, Y = g01 x + g11 y; coefficients of x^{3-i} y^i
    fe X[2] = {g00, g10}, Y[2] = {g01, g11};
    V4 out{0, 0, 0, 0};
    for (int k = 0; k < 4; ++k) {
        if (!f[k]) continue;
        fe p[4] = {f[k], 0, 0, 0};
        int len = 1;
        auto lin = [&](const fe* l) {
            fe r[4] = {0, 0, 0, 0};
            for (int i = 0; i < len; ++i) {
                r[i] = F.add(r[i], F.mul(p[i], l[0]));
                r[i + 1] = F.add(r[i + 1], F.mul(p[i], l[1]));
            }
            ++len;
            std::copy(r, r + 4, p);
        };
        for (int i = 0; i < 3 - k; ++i) lin(X);
        for (int i = 0; i < k; ++i) lin(Y);
        for (int i = 0; i < 4; ++i) out[i] = F.add(out[i], p[i]);
    }
    fe di = F.inv(F.sub(F.mul(g00, g11), F.mul(g01, g10)));
    for (auto& x : out) x = F.mul(x, di);
    return out;
}

int vindex(int q, const V4& v) { return ((v[0] * q + v[1]) * q + v[2]) * q + v[3]; }

// point of P^1(F_q) that is a multiple root of g0 and a root of g1: r in [0,q) for [r:1], q for [1:0], -1 if none
int bad_point(const Fq& F, const V4& g0, const V4& g1) {
    if (!g0[0] && !g0[1] && !g1[0]) return F.q();
    fe three = F.from_int(3), two = F.from_int(2);
    for (int ri = 0; ri < F.q(); ++ri) {
        fe r = static_cast<fe>(ri);
        fe val = F.add(F.mul(F.add(F.mul(F.add(F.mul(g0[0], r), g0[1]), r), g0[2]), r), g0[3]);
        if (val) continue;
        fe der = F.add(F.mul(F.add(F.mul(F.mul(three, g0[0]), r), F.mul(two, g0[1])), r), g0[2]);
        if (der) continue;
        fe v1 = F.add(F.mul(F.add(F.mul(F.add(F.mul(g1[0], r), g1[1]), r), g1[2]), r), g1[3]);
        if (!v1) return ri;
    }
    return -1;
}

Form twist_diag(const Fq& F, const Form& f, fe s, fe t) {
    // diag(s, t): (a s^2 / t, b s, c t, d t^2 / s)
    fe it = F.inv(t), is = F.inv(s);
    Form r;
    r.co[0] = poly::scale(F, f.co[0], F.mul(F.mul(s, s), it));
    r.co[1] = poly::scale(F, f.co[1], s);
    r.co[2] = poly::scale(F, f.co[2], t);
    r.co[3] = poly::scale(F, f.co[3], F.mul(F.mul(t, t), is));
    return r;
}

int q_untwisted(const Fq& F, const Form& G) {
    Poly D = form::disc(F, G);
    return 4 * form::max_deg(G) - poly::deg(D);
}

}  // namespace

int top_index(const Form& f, int n) {
    int H = -1000000;
    bool any = false;
    const int w[4] = {2 * n, n, 0, -n};
    for (int k = 0; k < 4; ++k) {
        if (poly::is_zero(f.co[k])) continue;
        any = true;
        H = std::max(H, poly::deg(f.co[k]) + w[k]);
    }
    if (!any) throw std::domain_error("top_index: zero form");
    return H;
}

std::array<fe, 4> layer(const Form& f, int n, int H, int j) {
    return {poly::coef(f.co[0], H - 2 * n - j), poly::coef(f.co[1], H - n - j), poly::coef(f.co[2], H - j),
            poly::coef(f.co[3], H + n - j)};
}

int q_invariant(const Fq& F, const Form& f, int n) {
    Poly D = form::disc(F, f);
    if (poly::is_zero(D)) throw std::domain_error("q_invariant: degenerate form");
    return 4 * top_index(f, n) - 2 * n - poly::deg(D);
}

bool layers_reduced(const Fq& F, const std::array<fe, 4>& top, const std::array<fe, 4>& next) {
    return bad_point(F, top, next) < 0;
}

bool is_reduced_at(const Fq& F, const Form& f, int n) {
    int H = top_index(f, n);
    return layers_reduced(F, layer(f, n, H, 0), layer(f, n, H, 1));
}

std::vector<int> neighbour_q_values(const Fq& F, const Form& G) {
    std::vector<int> out;
    Mat2 D = form::mat(Poly{1}, {}, {}, poly::X());
    for (int r = 0; r <= F.q(); ++r) {
        Mat2 k = r < F.q() ? form::mat(Poly{1}, {}, poly::constant(static_cast<fe>(r)), Poly{1})
                           : form::mat({}, Poly{1}, Poly{1}, {});
        Form G2 = form::substitute(F, D, form::substitute(F, k, G));
        out.push_back(q_untwisted(F, G2));
    }
    return out;
}

Reduced reduce(const Fq& F, const Form& f) {
    if (poly::is_zero(form::disc(F, f))) throw std::domain_error("reduce: degenerate form");
    const int q = F.q();
    Form G = f;
    Mat2 M = form::identity();
    Mat2 D = form::mat(Poly{1}, {}, {}, poly::X());
    Reduced res;
    for (;;) {
        int H = form::max_deg(G);
        V4 g0 = layer(G, 0, H, 0), g1 = layer(G, 0, H, 1);
        int hit = bad_point(F, g0, g1);
        if (hit < 0) break;
        Mat2 k = hit < q ? form::mat(Poly{1}, {}, poly::constant(static_cast<fe>(hit)), Poly{1})
                         : form::mat({}, Poly{1}, Poly{1}, {});
        G = form::substitute(F, D, form::substitute(F, k, G));
        M = form::mul(F, D, form::mul(F, k, M));
        ++res.steps;
    }
    int Qc = q_untwisted(F, G);

    // f(x,y) = G((x,y) M^{-1}); the form of f o h at v_n is G((x,y) diag(T^n,1) h M^{-1}),
    // so row-reduce adj(M) over R to put diag(T^n,1) h adj(M) in K^* GL2(O_inf)
    Poly A[2][2] = {{M.m[1][1], poly::neg(F, M.m[0][1])}, {poly::neg(F, M.m[1][0]), M.m[0][0]}};
    Poly g[2][2] = {{Poly{1}, {}}, {{}, Poly{1}}};
    auto rowdeg = [&](int i) { return std::max(poly::deg(A[i][0]), poly::deg(A[i][1])); };
    for (;;) {
        int d0 = rowdeg(0), d1 = rowdeg(1);
        fe L[2][2];
        for (int j = 0; j < 2; ++j) {
            L[0][j] = poly::coef(A[0][j], d0);
            L[1][j] = poly::coef(A[1][j], d1);
        }
        fe dl = F.sub(F.mul(L[0][0], L[1][1]), F.mul(L[0][1], L[1][0]));
        if (dl) break;
        int i = d1 >= d0 ? 1 : 0, k = 1 - i;
        int col = L[k][0] ? 0 : 1;
        fe alpha = F.div(L[i][col], L[k][col]);
        Poly mono = poly::monomial(alpha, rowdeg(i) - rowdeg(k));
        for (int c = 0; c < 2; ++c) {
            A[i][c] = poly::sub(F, A[i][c], poly::mul(F, mono, A[k][c]));
            g[i][c] = poly::sub(F, g[i][c], poly::mul(F, mono, g[k][c]));
        }
    }
    int d0 = rowdeg(0), d1 = rowdeg(1);
    if (d0 > d1) {
        for (int c = 0; c < 2; ++c) {
            std::swap(A[0][c], A[1][c]);
            std::swap(g[0][c], g[1][c]);
        }
        std::swap(d0, d1);
    }
    res.n = d1 - d0;
    res.h = form::mat(g[0][0], g[0][1], g[1][0], g[1][1]);
    res.form = form::act(F, res.h, f);
    res.Q = q_invariant(F, res.form, res.n);
    if (!is_reduced_at(F, res.form, res.n) || res.Q != Qc)
        throw std::logic_error("reduce: centre not reached");
    return res;
}

std::vector<SmallMat> gl2_fq(const Fq& F) {
    std::vector<SmallMat> out;
    int q = F.q();
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c)
                for (int d = 0; d < q; ++d) {
                    fe A = static_cast<fe>(a), B = static_cast<fe>(b), C = static_cast<fe>(c),
                       Dd = static_cast<fe>(d);
                    if (!F.sub(F.mul(A, Dd), F.mul(B, C))) continue;
                    SmallMat m{A, B, C, Dd, {}};
                    for (int i = 0; i < 4; ++i) {
                        V4 e{0, 0, 0, 0};
                        e[i] = 1;
                        V4 col = act_fe(F, A, B, C, Dd, e);
                        for (int r = 0; r < 4; ++r) m.lin[r * 4 + i] = col[r];
                    }
                    out.push_back(m);
                }
    return out;
}

std::array<fe, 4> apply(const Fq& F, const SmallMat& g, const std::array<fe, 4>& v) {
    V4 out{0, 0, 0, 0};
    for (int r = 0; r < 4; ++r) {
        fe s = 0;
        for (int i = 0; i < 4; ++i)
            if (v[i]) s = F.add(s, F.mul(g.lin[r * 4 + i], v[i]));
        out[r] = s;
    }
    return out;
}

Form apply(const Fq& F, const SmallMat& g, const Form& f) {
    int H = form::max_deg(f);
    Form r;
    for (auto& c : r.co) c.assign(H + 1, 0);
    for (int i = 0; i <= H; ++i) {
        V4 v = apply(F, g, V4{poly::coef(f.co[0], i), poly::coef(f.co[1], i), poly::coef(f.co[2], i),
                              poly::coef(f.co[3], i)});
        for (int k = 0; k < 4; ++k) r.co[k][i] = v[k];
    }
    for (auto& c : r.co) poly::trim(c);
    return r;
}

Form normalize(const Fq& F, const Form& f, int n) {
    if (poly::is_zero(f.co[0])) throw std::domain_error("normalize: leading coefficient is zero");
    Form g = twist_diag(F, f, 1, poly::lc(f.co[0]));
    const Poly& a = g.co[0];
    int da = poly::deg(a);
    fe inv3 = F.inv(F.from_int(3));
    Poly h(n + 1, 0);
    for (int j = n; j >= 0; --j) {
        fe s = F.mul(poly::coef(g.co[1], da + j), inv3);
        for (int i = j + 1; i <= n; ++i) s = F.add(s, F.mul(h[i], poly::coef(a, da + j - i)));
        h[j] = F.neg(s);
    }
    poly::trim(h);
    if (poly::is_zero(h)) return g;
    Poly ah = poly::mul(F, a, h);
    Poly bh = poly::mul(F, g.co[1], h);
    Poly ah2 = poly::mul(F, ah, h);
    Form r;
    r.co[0] = a;
    r.co[1] = poly::add(F, g.co[1], poly::scale(F, ah, F.from_int(3)));
    r.co[2] = poly::add(F, poly::add(F, poly::scale(F, ah2, F.from_int(3)), poly::scale(F, bh, F.from_int(2))),
                        g.co[2]);
    r.co[3] = poly::add(F,
                        poly::add(F, poly::mul(F, ah2, h), poly::mul(F, poly::add(F, bh, g.co[2]), h)),
                        g.co[3]);
    return r;
}

TopLayerIndex::TopLayerIndex(const Fq& F) : q_(F.q()), G_(gl2_fq(F)) {
    std::size_t N = static_cast<std::size_t>(q_) * q_ * q_ * q_;
    best_.resize(N);
    for (std::size_t idx = 0; idx < N; ++idx) {
        V4 v{static_cast<fe>(idx / (q_ * q_ * q_)), static_cast<fe>(idx / (q_ * q_) % q_),
             static_cast<fe>(idx / q_ % q_), static_cast<fe>(idx % q_)};
        V4 best{};
        bool first = true;
        for (int gi = 0; gi < static_cast<int>(G_.size()); ++gi) {
            V4 w = apply(F, G_[gi], v);
            if (first || w < best) {
                best = w;
                best_[idx].clear();
                first = false;
            }
            if (w == best) best_[idx].push_back(gi);
        }
    }
}

const std::vector<int>& TopLayerIndex::minimisers(const std::array<fe, 4>& v) const {
    return best_[vindex(q_, v)];
}

Form lexmin_brute(const Fq& F, const Form& red, int n) {
    Form best;
    bool first = true;
    for (auto& g : stabilizer(F, n)) {
        Form c = form::act(F, g, red);
        if (first || form::less(c, best)) {
            best = c;
            first = false;
        }
    }
    return best;
}

Form canonical_reduced(const Fq& F, const Form& red, int n, const TopLayerIndex& idx) {
    if (n == 0) {
        int H = form::max_deg(red);
        V4 top = layer(red, 0, H, 0);
        Form best;
        bool first = true;
        for (int gi : idx.minimisers(top)) {
            Form c = apply(F, idx.group()[gi], red);
            if (first || form::less(c, best)) {
                best = c;
                first = false;
            }
        }
        return poly::is_zero(best.co[0]) ? best : normalize(F, best, 0);
    }
    if (poly::is_zero(red.co[0])) return lexmin_brute(F, red, n);
    Form best;
    for (int s = 1; s < F.q(); ++s) {
        Form c = normalize(F, twist_diag(F, red, static_cast<fe>(s), 1), n);
        if (s == 1 || form::less(c, best)) best = c;
    }
    return best;
}

Canonical canonicalize(const Fq& F, const Form& f, const TopLayerIndex& idx) {
    Reduced r = reduce(F, f);
    return {canonical_reduced(F, r.form, r.n, idx), r.n, r.Q};
}

std::vector<Mat2> stabilizer(const Fq& F, int n) {
    std::vector<Mat2> out;
    int q = F.q();
    if (n == 0) {
        for (auto& g : gl2_fq(F))
            out.push_back(form::mat(poly::constant(g.a), poly::constant(g.b), poly::constant(g.c),
                                    poly::constant(g.d)));
        return out;
    }
    std::uint64_t nh = 1;
    for (int i = 0; i <= n; ++i) nh *= q;
    for (int s = 1; s < q; ++s)
        for (int t = 1; t < q; ++t)
            for (std::uint64_t hi = 0; hi < nh; ++hi) {
                Poly h = poly::from_index(q, hi, n + 1);
                out.push_back(form::mat(poly::constant(static_cast<fe>(s)), {}, h,
                                        poly::constant(static_cast<fe>(t))));
            }
    return out;
}

long long stabilizer_order(int q, int n) {
    long long qq = q;
    if (n == 0) return (qq * qq - 1) * (qq * qq - qq);
    long long r = (qq - 1) * (qq - 1);
    for (int i = 0; i <= n; ++i) r *= qq;
    return r;
}

}  // namespace reduction
}  // namespace cubicff
