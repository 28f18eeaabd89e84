#include "cubicff/poly.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

namespace cubicff {

BigInt ipow(long long b, int e) {
    BigInt r = 1, x = b;
    while (e > 0) {
        if (e & 1) r *= x;
        x *= x;
        e >>= 1;
    }
    return r;
}

namespace poly {

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly constant(fe c) { return c ? Poly{c} : Poly{}; }

Poly monomial(fe c, int e) {
    if (!c) return {};
    Poly r(e + 1, 0);
    r[e] = c;
    return r;
}

Poly add(const Fq& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

Poly sub(const Fq& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

Poly neg(const Fq& F, const Poly& a) {
    Poly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.neg(a[i]);
    return r;
}

Poly scale(const Fq& F, const Poly& a, fe c) {
    if (!c) return {};
    Poly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
    return r;
}

Poly shift(const Poly& a, int e) {
    if (a.empty()) return {};
    Poly r(e, 0);
    r.insert(r.end(), a.begin(), a.end());
    return r;
}

Poly mul(const Fq& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

Poly pow(const Fq& F, const Poly& a, unsigned e) {
    Poly r{1}, x = a;
    while (e) {
        if (e & 1) r = mul(F, r, x);
        e >>= 1;
        if (e) x = mul(F, x, x);
    }
    return r;
}

void divmod(const Fq& F, const Poly& a, const Poly& b, Poly& quo, Poly& rem) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    rem = a;
    int db = deg(b);
    if (deg(a) < db) {
        quo.clear();
        return;
    }
    quo.assign(deg(a) - db + 1, 0);
    fe ib = F.inv(b.back());
    for (int i = deg(a); i >= db; --i) {
        fe c = rem[i];
        if (!c) continue;
        fe t = F.mul(c, ib);
        quo[i - db] = t;
        for (int j = 0; j <= db; ++j) rem[i - db + j] = F.sub(rem[i - db + j], F.mul(t, b[j]));
    }
    trim(rem);
    trim(quo);
}

Poly mod(const Fq& F, const Poly& a, const Poly& b) {
    Poly q, r;
    divmod(F, a, b, q, r);
    return r;
}

Poly quot(const Fq& F, const Poly& a, const Poly& b) {
    Poly q, r;
    divmod(F, a, b, q, r);
    return q;
}

bool divides(const Fq& F, const Poly& d, const Poly& a) { return mod(F, a, d).empty(); }

Poly monic(const Fq& F, const Poly& a) {
    if (a.empty()) return {};
    return scale(F, a, F.inv(a.back()));
}

Poly gcd(const Fq& F, Poly a, Poly b) {
    while (!b.empty()) {
        Poly r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

Poly mulmod(const Fq& F, const Poly& a, const Poly& b, const Poly& m) { return mod(F, mul(F, a, b), m); }

Poly powmod(const Fq& F, Poly base, std::uint64_t e, const Poly& m) {
    Poly r = mod(F, Poly{1}, m);
    base = mod(F, base, m);
    while (e) {
        if (e & 1) r = mulmod(F, r, base, m);
        e >>= 1;
        if (e) base = mulmod(F, base, base, m);
    }
    return r;
}

Poly derivative(const Fq& F, const Poly& a) {
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], F.from_int(static_cast<long long>(i)));
    trim(r);
    return r;
}

fe eval(const Fq& F, const Poly& a, fe x) {
    fe r = 0;
    for (int i = deg(a); i >= 0; --i) r = F.add(F.mul(r, x), a[i]);
    return r;
}

bool less(const Poly& a, const Poly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (int i = deg(a); i >= 0; --i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

int valuation_at(const Fq& F, Poly a, const Poly& P) {
    if (a.empty()) throw std::domain_error("valuation of zero");
    int v = 0;
    for (;;) {
        Poly q, r;
        divmod(F, a, P, q, r);
        if (!r.empty()) return v;
        a = std::move(q);
        ++v;
    }
}

Poly from_index(int q, std::uint64_t idx, int len) {
    Poly r(len, 0);
    for (int i = 0; i < len; ++i) {
        r[i] = static_cast<fe>(idx % q);
        idx /= q;
    }
    trim(r);
    return r;
}

namespace {

// x^(q^i) mod f for i = 1.. via repeated q-th powering
Poly frob(const Fq& F, const Poly& h, const Poly& f) { return powmod(F, h, static_cast<std::uint64_t>(F.q()), f); }

// p-th root of a polynomial whose derivative vanishes
Poly pth_root(const Fq& F, const Poly& a) {
    int p = F.p();
    Poly r(deg(a) / p + 1, 0);
    std::uint64_t e = static_cast<std::uint64_t>(F.q() / p);
    for (int i = 0; i <= deg(a); i += p) r[i / p] = F.pow(a[i], e);
    trim(r);
    return r;
}

// squarefree factorization of a monic polynomial: list of (squarefree part, multiplicity)
void squarefree(const Fq& F, const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
    if (deg(f) <= 0) return;
    Poly df = derivative(F, f);
    if (df.empty()) {
        squarefree(F, pth_root(F, f), mult * F.p(), out);
        return;
    }
    Poly c = gcd(F, f, df);
    Poly w = quot(F, f, c);
    int i = 1;
    while (deg(w) > 0) {
        Poly y = gcd(F, w, c);
        Poly z = quot(F, w, y);
        if (deg(z) > 0) out.push_back({z, i * mult});
        ++i;
        w = y;
        c = quot(F, c, y);
    }
    if (deg(c) > 0) squarefree(F, pth_root(F, c), mult * F.p(), out);
}

void edf(const Fq& F, const Poly& f, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
    int n = deg(f);
    if (n == d) {
        out.push_back(f);
        return;
    }
    std::uint64_t qd = 1;
    for (int i = 0; i < d; ++i) qd *= static_cast<std::uint64_t>(F.q());
    std::uniform_int_distribution<int> dist(0, F.q() - 1);
    for (;;) {
        Poly a(n, 0);
        for (int i = 0; i < n; ++i) a[i] = static_cast<fe>(dist(rng));
        trim(a);
        if (deg(a) <= 0) continue;
        Poly b = powmod(F, a, (qd - 1) / 2, f);
        b = sub(F, b, Poly{1});
        Poly g = gcd(F, b, f);
        if (deg(g) > 0 && deg(g) < n) {
            edf(F, g, d, rng, out);
            edf(F, quot(F, f, g), d, rng, out);
            return;
        }
    }
}

}  // namespace

bool is_irreducible(const Fq& F, const Poly& f) {
    int n = deg(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    Poly fm = monic(F, f);
    Poly h = X();
    for (int i = 1; i <= n / 2; ++i) {
        h = frob(F, h, fm);
        Poly g = gcd(F, sub(F, h, X()), fm);
        if (deg(g) > 0) return false;
    }
    return true;
}

bool is_square(const Fq& F, const Poly& f, Poly* root) {
    if (f.empty()) {
        if (root) root->clear();
        return true;
    }
    int n = deg(f);
    if (n % 2) return false;
    if (!F.is_square(f.back())) return false;
    // degree-halving: solve r^2 = f from the top coefficient down
    int m = n / 2;
    Poly r(m + 1, 0);
    r[m] = F.sqrt(f.back());
    fe two_r = F.add(r[m], r[m]);
    for (int k = m - 1; k >= 0; --k) {
        // coefficient of T^(m+k) in r^2 determines r[k]
        fe s = 0;
        for (int i = k + 1; i <= m; ++i) {
            int j = m + k - i;
            if (j >= k + 1 && j <= m) s = F.add(s, F.mul(r[i], r[j]));
        }
        r[k] = F.div(F.sub(f[m + k], s), two_r);
    }
    if (mul(F, r, r) != f) return false;
    if (root) *root = r;
    return true;
}

Factorization factor(const Fq& F, const Poly& f, std::uint64_t seed) {
    if (f.empty()) throw std::domain_error("factor of zero polynomial");
    Factorization res;
    res.unit = f.back();
    Poly fm = monic(F, f);
    std::vector<std::pair<Poly, int>> sqf;
    squarefree(F, fm, 1, sqf);
    std::mt19937_64 rng(seed);
    for (auto& [g, e] : sqf) {
        Poly rest = g;
        Poly h = X();
        for (int d = 1; deg(rest) >= 2 * d; ++d) {
            h = frob(F, h, rest);
            Poly gd = gcd(F, sub(F, h, X()), rest);
            if (deg(gd) > 0) {
                std::vector<Poly> parts;
                edf(F, gd, d, rng, parts);
                for (auto& pp : parts) res.factors.push_back({monic(F, pp), e});
                rest = quot(F, rest, gd);
                h = mod(F, h, rest);
            }
        }
        if (deg(rest) > 0) res.factors.push_back({monic(F, rest), e});
    }
    // merge equal primes (can occur across p-th power levels)
    std::sort(res.factors.begin(), res.factors.end(),
              [](const auto& x, const auto& y) { return less(x.first, y.first); });
    std::vector<std::pair<Poly, int>> merged;
    for (auto& fe_ : res.factors) {
        if (!merged.empty() && merged.back().first == fe_.first)
            merged.back().second += fe_.second;
        else
            merged.push_back(fe_);
    }
    res.factors = std::move(merged);
    return res;
}

Poly expand(const Fq& F, const Factorization& fac) {
    Poly r{fac.unit};
    for (auto& [p, e] : fac.factors) r = mul(F, r, pow(F, p, static_cast<unsigned>(e)));
    return r;
}

std::vector<Poly> primes_of_degree(const Fq& F, int d) {
    if (d < 1) throw std::invalid_argument("primes_of_degree: d >= 1");
    std::vector<Poly> out;
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= static_cast<std::uint64_t>(F.q());
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Poly f = from_index(F.q(), idx, d);
        f.resize(d + 1, 0);
        f[d] = 1;
        if (is_irreducible(F, f)) out.push_back(f);
    }
    // from_index enumerates by coefficients low-digit-first; sort to the poly::less order
    std::sort(out.begin(), out.end(), less);
    return out;
}

BigInt prime_count(int q, int d) {
    auto mu = [](int n) {
        int r = 1;
        for (int p = 2; p * p <= n; ++p) {
            if (n % p == 0) {
                n /= p;
                if (n % p == 0) return 0;
                r = -r;
            }
        }
        if (n > 1) r = -r;
        return r;
    };
    BigInt s = 0;
    for (int e = 1; e <= d; ++e)
        if (d % e == 0) s += mu(e) * ipow(q, d / e);
    return s / d;
}

int moebius(const Fq& F, const Poly& f, std::uint64_t seed) {
    if (!is_monic(f)) throw std::invalid_argument("moebius: monic input required");
    if (deg(f) == 0) return 1;
    Factorization fac = factor(F, f, seed);
    int r = 1;
    for (auto& [p, e] : fac.factors) {
        if (e > 1) return 0;
        r = -r;
    }
    return r;
}

BigInt sigma_divisors(const Fq& F, const Poly& f, std::uint64_t seed) {
    if (!is_monic(f)) throw std::invalid_argument("sigma_divisors: monic input required");
    if (deg(f) == 0) return 1;
    Factorization fac = factor(F, f, seed);
    BigInt r = 1;
    for (auto& [p, e] : fac.factors) {
        BigInt s = 0;
        for (int i = 0; i <= e; ++i) s += ipow(F.q(), i * deg(p));
        r *= s;
    }
    return r;
}

Rational zeta_R(int q, int s) {
    if (s <= 1) throw std::domain_error("zeta_R: s >= 2 required");
    BigInt qs = ipow(q, s - 1);
    return Rational(qs, qs - 1);
}

std::string str(const Fq& F, const Poly& a) {
    if (a.empty()) return "0";
    std::string s;
    for (int i = deg(a); i >= 0; --i) {
        if (!a[i]) continue;
        if (!s.empty()) s += " + ";
        std::string c = F.str(a[i]);
        if (F.k() == 2 && a[i] >= F.p()) c = "(" + c + ")";
        if (i == 0)
            s += c;
        else
            s += (a[i] == 1 ? "" : c + "*") + std::string("T") + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s;
}

std::vector<int> to_ints(const Poly& a) { return std::vector<int>(a.begin(), a.end()); }

Poly from_ints(const std::vector<int>& v) {
    Poly r(v.begin(), v.end());
    trim(r);
    return r;
}

}  // namespace poly
}  // namespace cubicff
