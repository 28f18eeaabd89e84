#include "cubicff/laurent.hpp"

#include <algorithm>

namespace cubicff {
namespace laurent {

void normalize(Laurent& x) {
    int keep = std::max(0, x.prec - x.val);
    if (static_cast<int>(x.c.size()) > keep) x.c.resize(keep);
    size_t lead = 0;
    while (lead < x.c.size() && x.c[lead] == 0) ++lead;
    if (lead == x.c.size()) {
        x.c.clear();
        x.val = x.prec;
        return;
    }
    if (lead) {
        x.c.erase(x.c.begin(), x.c.begin() + static_cast<long>(lead));
        x.val += static_cast<int>(lead);
    }
    while (!x.c.empty() && x.c.back() == 0) x.c.pop_back();
}

Laurent zero(int prec) { return Laurent{prec, {}, prec}; }

Laurent from_digits(const std::vector<fe>& digits, int start, int prec) {
    Laurent x{start, digits, prec};
    normalize(x);
    return x;
}

Laurent from_poly(const Poly& f, int prec) {
    if (f.empty()) return zero(prec);
    int d = poly::deg(f);
    std::vector<fe> digits(d + 1);
    for (int i = 0; i <= d; ++i) digits[i] = f[d - i];  // T^(d-i) = pi^(i-d)
    return from_digits(digits, -d, prec);
}

Laurent constant(fe c, int prec) { return from_digits({c}, 0, prec); }

Laurent pi_power(int e, int prec) { return from_digits({1}, e, prec); }

Laurent add(const Fq& F, const Laurent& a, const Laurent& b) {
    int prec = std::min(a.prec, b.prec);
    int lo = std::min(a.val, b.val);
    Laurent r{lo, {}, prec};
    for (int i = lo; i < prec; ++i) r.c.push_back(F.add(a.digit(i), b.digit(i)));
    normalize(r);
    return r;
}

Laurent neg(const Fq& F, const Laurent& a) {
    Laurent r = a;
    for (auto& x : r.c) x = F.neg(x);
    return r;
}

Laurent sub(const Fq& F, const Laurent& a, const Laurent& b) { return add(F, a, neg(F, b)); }

Laurent scale(const Fq& F, const Laurent& a, fe s) {
    Laurent r = a;
    for (auto& x : r.c) x = F.mul(x, s);
    normalize(r);
    return r;
}

Laurent mul(const Fq& F, const Laurent& a, const Laurent& b) {
    int prec;
    if (a.is_zero() && b.is_zero())
        prec = a.prec + b.prec;
    else if (a.is_zero())
        prec = a.prec + b.val;
    else if (b.is_zero())
        prec = b.prec + a.val;
    else
        prec = std::min(a.val + b.prec, b.val + a.prec);
    if (a.is_zero() || b.is_zero()) return zero(prec);
    int lo = a.val + b.val;
    Laurent r{lo, std::vector<fe>(std::max(0, prec - lo), 0), prec};
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) {
            size_t k = i + j;
            if (static_cast<int>(k) >= prec - lo) break;
            r.c[k] = F.add(r.c[k], F.mul(a.c[i], b.c[j]));
        }
    normalize(r);
    return r;
}

Laurent invert(const Fq& F, const Laurent& a) {
    if (a.is_zero()) throw PrecisionError("invert: element is zero at its precision");
    int v = a.val, rel = a.prec - a.val;
    std::vector<fe> out(rel, 0);
    fe u = F.inv(a.c[0]);
    for (int k = 0; k < rel; ++k) {
        fe s = (k == 0) ? 1 : 0;
        for (int j = 1; j <= k; ++j) s = F.sub(s, F.mul(a.digit(v + j), out[k - j]));
        out[k] = F.mul(s, u);
    }
    return from_digits(out, -v, -v + rel);
}

bool equal(const Laurent& a, const Laurent& b) {
    int prec = std::min(a.prec, b.prec);
    int lo = std::min(a.val, b.val);
    for (int i = lo; i < prec; ++i)
        if (a.digit(i) != b.digit(i)) return false;
    return true;
}

Laurent eval_poly(const Fq& F, const std::vector<Laurent>& g, const Laurent& x) {
    Laurent r = g.back();
    for (int i = static_cast<int>(g.size()) - 2; i >= 0; --i) r = add(F, mul(F, r, x), g[i]);
    return r;
}

Laurent hensel_lift_root(const Fq& F, const std::vector<Laurent>& g, fe r0, int prec) {
    for (auto& gi : g) {
        if (!gi.is_zero() && gi.val < 0) throw std::invalid_argument("hensel_lift_root: non-integral coefficient");
        if (gi.prec < prec) throw PrecisionError("hensel_lift_root: coefficient precision below requested precision");
    }
    std::vector<Laurent> dg;
    for (size_t i = 1; i < g.size(); ++i) dg.push_back(scale(F, g[i], F.from_int(static_cast<long long>(i))));
    auto red = [&](const std::vector<Laurent>& h, fe x) {
        fe r = 0;
        for (int i = static_cast<int>(h.size()) - 1; i >= 0; --i) r = F.add(F.mul(r, x), h[i].digit(0));
        return r;
    };
    if (red(g, r0) != 0) throw std::invalid_argument("hensel_lift_root: not a root mod pi");
    if (red(dg, r0) == 0) throw std::invalid_argument("hensel_lift_root: root is not simple");
    Laurent x = constant(r0, prec);
    if (r0 == 0) x = zero(prec);
    for (int it = 0; it < 64; ++it) {
        Laurent gx = eval_poly(F, g, x);
        if (gx.is_zero() || gx.val >= prec) return x;
        Laurent step = mul(F, gx, invert(F, eval_poly(F, dg, x)));
        x = sub(F, x, step);
        x.prec = prec;
        normalize(x);
    }
    throw PrecisionError("hensel_lift_root: no convergence");
}

}  // namespace laurent
}  // namespace cubicff
