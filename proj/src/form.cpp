#include "cubicff/form.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace cubicff {

using namespace poly;

const char* split_name(SplitType s) {
    switch (s) {
        case SplitType::S111: return "(111)";
        case SplitType::S21: return "(21)";
        case SplitType::S3: return "(3)";
        case SplitType::S1_21: return "(1^21)";
        case SplitType::S1_3: return "(1^3)";
        case SplitType::Zero: return "(0)";
    }
    return "?";
}

SplitType split_from_name(const std::string& s) {
    for (auto t : {SplitType::S111, SplitType::S21, SplitType::S3, SplitType::S1_21, SplitType::S1_3, SplitType::Zero})
        if (s == split_name(t)) return t;
    if (s == "111") return SplitType::S111;
    if (s == "21") return SplitType::S21;
    if (s == "3") return SplitType::S3;
    if (s == "1^21" || s == "121" || s == "(121)") return SplitType::S1_21;
    if (s == "1^3" || s == "13" || s == "(13)") return SplitType::S1_3;
    throw std::invalid_argument("unknown splitting type: " + s);
}

namespace residue {

Poly reduce(const Fq& F, const Poly& a, const Poly& P) { return poly::mod(F, a, P); }

Poly mul(const Fq& F, const Poly& a, const Poly& b, const Poly& P) { return poly::mod(F, poly::mul(F, a, b), P); }

Poly inv(const Fq& F, const Poly& a, const Poly& P) {
    // extended Euclid
    Poly r0 = P, r1 = poly::mod(F, a, P), s0{}, s1{1};
    if (r1.empty()) throw std::domain_error("residue inverse of zero");
    while (!r1.empty()) {
        Poly qq, rr;
        poly::divmod(F, r0, r1, qq, rr);
        Poly s2 = poly::sub(F, s0, poly::mul(F, qq, s1));
        r0 = std::move(r1);
        r1 = std::move(rr);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (poly::deg(r0) != 0) throw std::domain_error("residue not invertible");
    return poly::mod(F, poly::scale(F, s0, F.inv(r0[0])), P);
}

}  // namespace residue

namespace form {

namespace {

// coefficients of prod of linear forms (l0 x + l1 y), generic over a ring
template <class E, class Add, class Mul>
std::array<E, 4> cubic_of(const std::array<E, 2>& X, const std::array<E, 2>& Y, const std::array<E, 4>& f, E zero,
                          Add add, Mul mul) {
    auto lin_mul = [&](const std::vector<E>& p, const std::array<E, 2>& l) {
        std::vector<E> r(p.size() + 1, zero);
        for (size_t i = 0; i < p.size(); ++i) {
            r[i] = add(r[i], mul(p[i], l[0]));
            r[i + 1] = add(r[i + 1], mul(p[i], l[1]));
        }
        return r;
    };
    std::array<E, 4> out{zero, zero, zero, zero};
    for (int k = 0; k < 4; ++k) {
        std::vector<E> p{f[k]};
        for (int i = 0; i < 3 - k; ++i) p = lin_mul(p, X);
        for (int i = 0; i < k; ++i) p = lin_mul(p, Y);
        for (int i = 0; i < 4; ++i) out[i] = add(out[i], p[i]);
    }
    return out;
}

}  // namespace

Form make(const Fq&, std::array<Poly, 4> co) {
    for (auto& c : co) trim(c);
    return Form{co};
}

Form from_ints(const std::vector<std::vector<int>>& co) {
    if (co.size() != 4) throw std::invalid_argument("form needs four coefficients");
    Form f;
    for (int i = 0; i < 4; ++i) f.co[i] = poly::from_ints(co[i]);
    return f;
}

Poly disc(const Fq& F, const Form& f) {
    const Poly &a = f.co[0], &b = f.co[1], &c = f.co[2], &d = f.co[3];
    auto M = [&](const Poly& x, const Poly& y) { return poly::mul(F, x, y); };
    Poly bc = M(b, c), ad = M(a, d);
    Poly t1 = M(bc, bc);
    Poly t2 = poly::scale(F, M(M(a, c), M(c, c)), F.from_int(4));
    Poly t3 = poly::scale(F, M(M(b, b), M(b, d)), F.from_int(4));
    Poly t4 = poly::scale(F, M(ad, ad), F.from_int(27));
    Poly t5 = poly::scale(F, M(ad, bc), F.from_int(18));
    Poly r = poly::sub(F, t1, t2);
    r = poly::sub(F, r, t3);
    r = poly::sub(F, r, t4);
    return poly::add(F, r, t5);
}

int max_deg(const Form& f) {
    int m = -1;
    for (auto& c : f.co) m = std::max(m, deg(c));
    return m;
}

bool less(const Form& f, const Form& g) {
    int top = std::max(max_deg(f), max_deg(g));
    for (int i = top; i >= 0; --i)
        for (int k = 0; k < 4; ++k) {
            fe x = coef(f.co[k], i), y = coef(g.co[k], i);
            if (x != y) return x < y;
        }
    return false;
}

Mat2 identity() { return mat(Poly{1}, {}, {}, Poly{1}); }

Mat2 mat(const Poly& a, const Poly& b, const Poly& c, const Poly& d) {
    Mat2 g;
    g.m[0][0] = a;
    g.m[0][1] = b;
    g.m[1][0] = c;
    g.m[1][1] = d;
    for (auto& row : g.m)
        for (auto& e : row) trim(e);
    return g;
}

Poly det(const Fq& F, const Mat2& g) {
    return poly::sub(F, poly::mul(F, g.m[0][0], g.m[1][1]), poly::mul(F, g.m[0][1], g.m[1][0]));
}

Mat2 mul(const Fq& F, const Mat2& g, const Mat2& h) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.m[i][j] = poly::add(F, poly::mul(F, g.m[i][0], h.m[0][j]), poly::mul(F, g.m[i][1], h.m[1][j]));
    return r;
}

Mat2 inverse(const Fq& F, const Mat2& g) {
    Poly dt = det(F, g);
    if (deg(dt) != 0) throw std::domain_error("matrix not invertible over R");
    fe di = F.inv(dt[0]);
    return mat(poly::scale(F, g.m[1][1], di), poly::scale(F, poly::neg(F, g.m[0][1]), di),
               poly::scale(F, poly::neg(F, g.m[1][0]), di), poly::scale(F, g.m[0][0], di));
}

Form substitute(const Fq& F, const Mat2& g, const Form& f) {
    std::array<Poly, 2> X{g.m[0][0], g.m[1][0]}, Y{g.m[0][1], g.m[1][1]};
    auto out = cubic_of<Poly>(
        X, Y, f.co, Poly{}, [&](const Poly& a, const Poly& b) { return poly::add(F, a, b); },
        [&](const Poly& a, const Poly& b) { return poly::mul(F, a, b); });
    return Form{out};
}

Form act(const Fq& F, const Mat2& g, const Form& f) {
    Poly dt = det(F, g);
    if (deg(dt) != 0) throw std::domain_error("gl2_act: determinant is not a unit");
    Form r = substitute(F, g, f);
    fe di = F.inv(dt[0]);
    for (auto& c : r.co) c = poly::scale(F, c, di);
    return r;
}

Form scale(const Fq& F, const Form& f, const Poly& s) {
    Form r;
    for (int i = 0; i < 4; ++i) r.co[i] = poly::mul(F, f.co[i], s);
    return r;
}

std::array<fe, 4> eval_at(const Fq& F, const Form& f, fe t) {
    return {poly::eval(F, f.co[0], t), poly::eval(F, f.co[1], t), poly::eval(F, f.co[2], t),
            poly::eval(F, f.co[3], t)};
}

Form reduce_mod(const Fq& F, const Form& f, const Poly& P) {
    Form r;
    for (int i = 0; i < 4; ++i) r.co[i] = poly::mod(F, f.co[i], P);
    return r;
}

namespace {

// value of the cubic at [x:1] over R/P and multiplicity of the root
int root_mult_affine(const Fq& F, const Form& fr, const Poly& t, const Poly& P) {
    // coefficients of g(X) = a X^3 + b X^2 + c X + d over R/P; divide by (X - t) repeatedly
    std::vector<Poly> g{fr.co[3], fr.co[2], fr.co[1], fr.co[0]};
    while (!g.empty() && g.back().empty()) g.pop_back();
    int m = 0;
    while (g.size() > 1) {
        // synthetic division
        std::vector<Poly> qd(g.size() - 1);
        Poly acc = g.back();
        for (int i = static_cast<int>(g.size()) - 2; i >= 0; --i) {
            qd[i] = acc;
            acc = poly::add(F, g[i], residue::mul(F, acc, t, P));
        }
        if (!acc.empty()) break;
        ++m;
        g = std::move(qd);
        while (!g.empty() && g.back().empty()) g.pop_back();
    }
    return m;
}

std::vector<Poly> residues(const Fq& F, const Poly& P) {
    int d = deg(P);
    std::uint64_t n = 1;
    for (int i = 0; i < d; ++i) n *= static_cast<std::uint64_t>(F.q());
    std::vector<Poly> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(poly::from_index(F.q(), i, d));
    return out;
}

}  // namespace

std::vector<Root> roots_P1(const Fq& F, const Form& f, const Poly& P) {
    Form fr = reduce_mod(F, f, P);
    std::vector<Root> out;
    bool zero = true;
    for (auto& c : fr.co) zero = zero && c.empty();
    if (zero) {
        // every point is a root; multiplicity reported as 0 (undefined)
        out.push_back({Poly{1}, {}, 0});
        for (auto& t : residues(F, P)) out.push_back({t, Poly{1}, 0});
        return out;
    }
    int lead = 0;
    while (lead < 4 && fr.co[lead].empty()) ++lead;
    if (lead > 0) out.push_back({Poly{1}, {}, lead});
    for (auto& t : residues(F, P)) {
        int m = root_mult_affine(F, fr, t, P);
        if (m > 0) out.push_back({t, Poly{1}, m});
    }
    return out;
}

long long omega_P(const Fq& F, const Form& f, const Poly& P) { return static_cast<long long>(roots_P1(F, f, P).size()); }

SplitType classify_mod_P(const Fq& F, const Form& f, const Poly& P) {
    auto roots = roots_P1(F, f, P);
    if (!roots.empty() && roots[0].mult == 0) return SplitType::Zero;
    std::vector<int> ms;
    for (auto& r : roots) ms.push_back(r.mult);
    std::sort(ms.begin(), ms.end());
    if (ms == std::vector<int>{1, 1, 1}) return SplitType::S111;
    if (ms == std::vector<int>{1}) return SplitType::S21;
    if (ms.empty()) return SplitType::S3;
    if (ms == std::vector<int>{1, 2}) return SplitType::S1_21;
    return SplitType::S1_3;
}

CubicRing ldf_ring(const Fq& F, const Form& f) {
    const Poly &a = f.co[0], &b = f.co[1], &c = f.co[2], &d = f.co[3];
    CubicRing r;
    r.wt = {poly::neg(F, poly::mul(F, a, d)), {}, {}};
    r.ww = {poly::neg(F, poly::mul(F, a, c)), poly::neg(F, b), a};
    r.tt = {poly::neg(F, poly::mul(F, b, d)), poly::neg(F, d), c};
    return r;
}

namespace {

using Elem = std::array<Poly, 3>;

Elem ring_mul(const Fq& F, const CubicRing& r, const Elem& x, const Elem& y) {
    auto M = [&](const Poly& u, const Poly& v) { return poly::mul(F, u, v); };
    auto A = [&](const Poly& u, const Poly& v) { return poly::add(F, u, v); };
    Elem out{};
    // 1 * stuff
    out[0] = M(x[0], y[0]);
    out[1] = A(M(x[0], y[1]), M(x[1], y[0]));
    out[2] = A(M(x[0], y[2]), M(x[2], y[0]));
    auto addk = [&](const Poly& s, const Elem& e) {
        for (int i = 0; i < 3; ++i) out[i] = A(out[i], M(s, e[i]));
    };
    addk(M(x[1], y[1]), r.ww);
    addk(A(M(x[1], y[2]), M(x[2], y[1])), r.wt);
    addk(M(x[2], y[2]), r.tt);
    return out;
}

Poly ring_trace(const Fq& F, const CubicRing& r, const Elem& x) {
    Poly tr{};
    for (int i = 0; i < 3; ++i) {
        Elem e{};
        e[i] = Poly{1};
        Elem xe = ring_mul(F, r, x, e);
        tr = poly::add(F, tr, xe[i]);
    }
    return tr;
}

}  // namespace

Poly trace_form_det(const Fq& F, const CubicRing& r) {
    Elem basis[3];
    for (int i = 0; i < 3; ++i) {
        basis[i] = Elem{};
        basis[i][i] = Poly{1};
    }
    Poly m[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = ring_trace(F, r, ring_mul(F, r, basis[i], basis[j]));
    auto M = [&](const Poly& u, const Poly& v) { return poly::mul(F, u, v); };
    auto S = [&](const Poly& u, const Poly& v) { return poly::sub(F, u, v); };
    Poly d0 = M(m[0][0], S(M(m[1][1], m[2][2]), M(m[1][2], m[2][1])));
    Poly d1 = M(m[0][1], S(M(m[1][0], m[2][2]), M(m[1][2], m[2][0])));
    Poly d2 = M(m[0][2], S(M(m[1][0], m[2][1]), M(m[1][1], m[2][0])));
    return poly::add(F, poly::sub(F, d0, d1), d2);
}

bool ring_associative(const Fq& F, const CubicRing& r) {
    Elem basis[3];
    for (int i = 0; i < 3; ++i) {
        basis[i] = Elem{};
        basis[i][i] = Poly{1};
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                Elem l = ring_mul(F, r, ring_mul(F, r, basis[i], basis[j]), basis[k]);
                Elem rr = ring_mul(F, r, basis[i], ring_mul(F, r, basis[j], basis[k]));
                if (l != rr) return false;
            }
    return true;
}

namespace {

// repeated root of f mod P as a lift t (point [t:1]) or the point [1:0]; false if none
bool repeated_root(const Fq& F, const Form& fr, const Poly& P, bool& at_inf, Poly& t) {
    const Poly &a = fr.co[0], &b = fr.co[1], &c = fr.co[2], &d = fr.co[3];
    auto M = [&](const Poly& u, const Poly& v) { return residue::mul(F, u, v, P); };
    auto K = [&](int k, const Poly& u) { return poly::scale(F, u, F.from_int(k)); };
    if (a.empty()) {
        if (b.empty()) {
            at_inf = true;
            return true;
        }
        // [1:0] simple; quadratic b x^2 + c x y + d y^2
        Poly dq = poly::sub(F, M(c, c), K(4, M(b, d)));
        if (!dq.empty()) return false;
        at_inf = false;
        t = M(poly::neg(F, c), residue::inv(F, K(2, b), P));
        return true;
    }
    Poly h0 = poly::sub(F, M(b, b), K(3, M(a, c)));
    at_inf = false;
    if (h0.empty()) {
        t = M(poly::neg(F, b), residue::inv(F, K(3, a), P));
    } else {
        Poly num = poly::sub(F, K(9, M(a, d)), M(b, c));
        t = M(num, residue::inv(F, K(2, h0), P));
    }
    return true;
}

}  // namespace

bool is_maximal_at(const Fq& F, const Form& f, const Poly& P) {
    Form fr = reduce_mod(F, f, P);
    bool zero = true;
    for (auto& c : fr.co) zero = zero && c.empty();
    if (zero) return false;
    Poly dmod = poly::mod(F, disc(F, fr), P);
    if (!dmod.empty()) return true;
    bool at_inf;
    Poly t;
    if (!repeated_root(F, fr, P, at_inf, t)) return true;
    Poly P2 = poly::mul(F, P, P);
    if (at_inf) return !(poly::divides(F, P, f.co[1]) && poly::divides(F, P2, f.co[0]));
    const Poly &a = f.co[0], &b = f.co[1], &c = f.co[2], &d = f.co[3];
    Poly t2 = poly::mul(F, t, t), t3 = poly::mul(F, t2, t);
    Poly cp = poly::add(F, poly::add(F, poly::scale(F, poly::mul(F, a, t2), F.from_int(3)),
                                     poly::scale(F, poly::mul(F, b, t), F.from_int(2))),
                        c);
    Poly dp = poly::add(F, poly::add(F, poly::mul(F, a, t3), poly::mul(F, b, t2)), poly::add(F, poly::mul(F, c, t), d));
    return !(poly::divides(F, P, cp) && poly::divides(F, P2, dp));
}

bool is_maximal(const Fq& F, const Form& f, std::uint64_t seed) {
    Poly D = disc(F, f);
    if (D.empty()) throw std::domain_error("is_maximal: singular form");
    Poly g = poly::gcd(F, D, poly::derivative(F, D));
    if (poly::deg(g) <= 0) return true;
    for (auto& [P, e] : poly::factor(F, g, seed).factors)
        if (!is_maximal_at(F, f, P)) return false;
    return true;
}

std::pair<Form, Poly> maximalize(const Fq& F, const Form& f0, std::uint64_t seed) {
    Poly D = disc(F, f0);
    if (D.empty()) throw std::domain_error("maximalize: singular form");
    Form f = f0;
    Poly index{1};
    auto fac = poly::factor(F, D, seed);
    for (auto& [P, e] : fac.factors) {
        if (e < 2) continue;
        while (!is_maximal_at(F, f, P)) {
            Form fr = reduce_mod(F, f, P);
            bool zero = true;
            for (auto& c : fr.co) zero = zero && c.empty();
            if (zero) {
                for (auto& c : f.co) c = poly::quot(F, c, P);
                index = poly::mul(F, index, P);
            } else {
                bool at_inf;
                Poly t;
                repeated_root(F, fr, P, at_inf, t);
                if (at_inf) {
                    f = act(F, mat({}, Poly{1}, Poly{1}, {}), f);
                } else {
                    f = act(F, mat(Poly{1}, {}, t, Poly{1}), f);
                }
                // overring: (a,b,c,d) -> (P a, b, c/P, d/P^2)
                f.co[0] = poly::mul(F, f.co[0], P);
                f.co[2] = poly::quot(F, f.co[2], P);
                f.co[3] = poly::quot(F, f.co[3], poly::mul(F, P, P));
            }
            index = poly::mul(F, index, P);
        }
    }
    return {f, index};
}

bool is_irreducible(const Fq& F, const Form& f, std::uint64_t seed) {
    const Poly &a = f.co[0], &d = f.co[3];
    if (a.empty() || d.empty()) return false;
    auto divisors = [&](const Poly& x) {
        std::vector<Poly> out{Poly{1}};
        for (auto& [P, e] : poly::factor(F, x, seed).factors) {
            std::vector<Poly> next;
            for (auto& dv : out) {
                Poly pk = dv;
                for (int i = 0; i <= e; ++i) {
                    next.push_back(pk);
                    pk = poly::mul(F, pk, P);
                }
            }
            out = std::move(next);
        }
        return out;
    };
    auto dy = divisors(a), dx = divisors(d);
    for (auto& y : dy)
        for (auto& x0 : dx)
            for (int u = 1; u < F.q(); ++u) {
                Poly x = poly::scale(F, x0, static_cast<fe>(u));
                Poly x2 = poly::mul(F, x, x), y2 = poly::mul(F, y, y);
                Poly v = poly::mul(F, f.co[0], poly::mul(F, x2, x));
                v = poly::add(F, v, poly::mul(F, f.co[1], poly::mul(F, x2, y)));
                v = poly::add(F, v, poly::mul(F, f.co[2], poly::mul(F, x, y2)));
                v = poly::add(F, v, poly::mul(F, f.co[3], poly::mul(F, y2, y)));
                if (v.empty()) return false;
            }
    return true;
}

bool is_galois(const Fq& F, const Form& f) {
    Poly D = disc(F, f);
    if (D.empty() || !is_irreducible(F, f)) throw std::domain_error("is_galois: reducible form");
    return poly::is_square(F, D);
}

std::string str(const Fq& F, const Form& f) {
    std::string s = "(";
    for (int i = 0; i < 4; ++i) s += (i ? ", " : "") + poly::str(F, f.co[i]);
    return s + ")";
}

std::vector<std::vector<int>> to_ints(const Form& f) {
    std::vector<std::vector<int>> r;
    for (auto& c : f.co) r.push_back(poly::to_ints(c));
    return r;
}

}  // namespace form
}  // namespace cubicff
