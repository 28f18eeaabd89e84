#include "cubicff/extfield.hpp"

#include <stdexcept>

namespace cubicff {

namespace {

using Digits = std::vector<int>;

Digits to_digits(std::uint32_t idx, int q, int d) {
    Digits r(d);
    for (int i = 0; i < d; ++i) {
        r[i] = static_cast<int>(idx % q);
        idx /= q;
    }
    return r;
}

std::uint32_t from_digits(const Digits& r, int q) {
    std::uint32_t idx = 0;
    for (int i = static_cast<int>(r.size()) - 1; i >= 0; --i) idx = idx * q + static_cast<std::uint32_t>(r[i]);
    return idx;
}

Digits mul_mod(const Fq& F, const Digits& a, const Digits& b, const Poly& P0) {
    int d = static_cast<int>(a.size());
    std::vector<fe> prod(2 * d, 0);
    for (int i = 0; i < d; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < d; ++j)
            prod[i + j] = F.add(prod[i + j], F.mul(static_cast<fe>(a[i]), static_cast<fe>(b[j])));
    }
    for (int k = 2 * d - 1; k >= d; --k) {
        fe c = prod[k];
        if (!c) continue;
        prod[k] = 0;
        for (int j = 0; j < d; ++j) prod[k - d + j] = F.sub(prod[k - d + j], F.mul(c, P0[j]));
    }
    Digits r(d);
    for (int i = 0; i < d; ++i) r[i] = prod[i];
    return r;
}

}  // namespace

ExtField::ExtField(const Fq& F, int d) : F_(&F), d_(d) {
    if (d < 1) throw std::invalid_argument("ExtField: degree >= 1");
    Q_ = 1;
    for (int i = 0; i < d; ++i) Q_ *= static_cast<std::uint64_t>(F.q());
    if (Q_ > (1u << 24)) throw std::invalid_argument("ExtField: field too large for log tables");
    int q = F.q();
    for (std::uint64_t idx = 0;; ++idx) {
        Poly f = poly::from_index(q, idx, d);
        f.resize(d + 1, 0);
        f[d] = 1;
        if (poly::is_irreducible(F, f)) {
            P0_ = f;
            break;
        }
    }
    ord_ = static_cast<std::uint32_t>(Q_ - 1);
    half_ = ord_ / 2;
    exp_.assign(ord_ + 1, 0);
    log_.assign(Q_, ZERO);

    Digits one(d, 0);
    one[0] = 1;
    for (std::uint32_t g = 2; g < Q_; ++g) {
        Digits gd = to_digits(g, q, d);
        Digits x = gd;
        std::uint32_t ordg = 1;
        while (x != one) {
            x = mul_mod(F, x, gd, P0_);
            ++ordg;
            if (ordg > ord_) break;
        }
        if (ordg == ord_) {
            Digits y = one;
            for (std::uint32_t i = 0; i < ord_; ++i) {
                std::uint32_t id = from_digits(y, q);
                exp_[i] = id;
                log_[id] = i;
                y = mul_mod(F, y, gd, P0_);
            }
            break;
        }
    }

    zech_.assign(ord_, ZERO);
    for (std::uint32_t i = 0; i < ord_; ++i) {
        std::uint32_t id = exp_[i];
        fe d0 = static_cast<fe>(id % q);
        std::uint32_t id2 = id - d0 + F.add(d0, 1);
        zech_[i] = id2 ? log_[id2] : ZERO;
    }

    three_ = from_fq(F.from_int(3));
    inv3_ = inv(three_);
    two27_ = div(from_fq(F.from_int(2)), from_fq(F.from_int(27)));
    four_ = from_fq(F.from_int(4));
    n27_ = from_fq(F.from_int(27));
    e18_ = from_fq(F.from_int(18));
    nine_ = from_fq(F.from_int(9));

    // x^3 + p x + r with p, r != 0 is determined up to x -> l x by the key p^3 / r^2;
    // x^3 + k x + k has the root x exactly when k = -x^3 / (x + 1)
    key_roots_.assign(ord_, 0);
    cube_roots_.assign(ord_, 0);
    E m1 = neg(0);
    for (std::uint32_t x = 0; x < ord_; ++x) {
        E x3 = mul(mul(x, x), x);
        cube_roots_[neg(x3)]++;
        if (x == m1) continue;
        E k = neg(div(x3, add(x, E(0))));
        if (k != ZERO) key_roots_[k]++;
    }
}

ExtField::E ExtField::from_poly(const Poly& r) const {
    if (poly::deg(r) >= d_) throw std::invalid_argument("ExtField::from_poly: not reduced");
    std::uint32_t idx = 0;
    for (int i = poly::deg(r); i >= 0; --i) idx = idx * F_->q() + r[i];
    return from_index(idx);
}

ExtField::E ExtField::pow(E a, std::uint64_t e) const {
    if (e == 0) return 0;
    if (a == ZERO) return ZERO;
    return static_cast<E>((static_cast<std::uint64_t>(a) * (e % ord_)) % ord_);
}

std::vector<ExtField::E> ExtField::roots_of(const Poly& P) const {
    std::vector<E> out;
    if (eval(P, ZERO) == ZERO) out.push_back(ZERO);
    for (std::uint32_t e = 0; e < ord_; ++e)
        if (eval(P, e) == ZERO) out.push_back(e);
    return out;
}

int ExtField::depressed_roots_slow(E p, E r) const {
    // distinct roots = deg gcd(x^Q - x, x^3 + p x + r)
    using P3 = std::array<E, 3>;
    auto mulmod = [&](const P3& u, const P3& v) {
        std::array<E, 5> w;
        w.fill(ZERO);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) w[i + j] = add(w[i + j], mul(u[i], v[j]));
        // x^4 = -p x^2 - r x, x^3 = -p x - r
        for (int k = 4; k >= 3; --k) {
            E c = w[k];
            if (c == ZERO) continue;
            w[k] = ZERO;
            w[k - 2] = sub(w[k - 2], mul(c, p));
            w[k - 3] = sub(w[k - 3], mul(c, r));
        }
        return P3{w[0], w[1], w[2]};
    };
    P3 res{one(), ZERO, ZERO}, base{ZERO, one(), ZERO};
    std::uint64_t e = Q_;
    while (e) {
        if (e & 1) res = mulmod(res, base);
        e >>= 1;
        if (e) base = mulmod(base, base);
    }
    res[1] = sub(res[1], one());
    std::vector<E> a{r, p, ZERO, one()};
    std::vector<E> b{res[0], res[1], res[2]};
    auto trimv = [&](std::vector<E>& v) {
        while (!v.empty() && v.back() == ZERO) v.pop_back();
    };
    trimv(b);
    while (!b.empty()) {
        // a mod b
        while (a.size() >= b.size() && !a.empty()) {
            E f = div(a.back(), b.back());
            size_t sh = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) a[sh + i] = sub(a[sh + i], mul(f, b[i]));
            trimv(a);
        }
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

SplitType ExtField::classify(E a, E b, E c, E d) const {
    if (a == ZERO) {
        if (b == ZERO && c == ZERO && d == ZERO) return SplitType::Zero;
        if (b == ZERO) return c == ZERO ? SplitType::S1_3 : SplitType::S1_21;
        E dq = sub(mul(c, c), mul(four_, mul(b, d)));
        if (dq == ZERO) return SplitType::S1_21;
        return is_square(dq) ? SplitType::S111 : SplitType::S21;
    }
    E ia = inv(a);
    E B = mul(b, ia), C = mul(c, ia), D = mul(d, ia);
    E B2 = mul(B, B);
    E p = sub(C, mul(B2, inv3_));
    E r = add(sub(mul(two27_, mul(B2, B)), mul(mul(B, C), inv3_)), D);
    E disc = neg(add(mul(four_, mul(mul(p, p), p)), mul(n27_, mul(r, r))));
    if (disc == ZERO) return p == ZERO ? SplitType::S1_3 : SplitType::S1_21;
    int k;
    if (r == ZERO)
        k = is_square(neg(p)) ? 3 : 1;
    else if (p == ZERO)
        k = cube_roots_[neg(r)];
    else
        k = key_roots_[div(mul(mul(p, p), p), mul(r, r))];
    return k == 3 ? SplitType::S111 : (k == 1 ? SplitType::S21 : SplitType::S3);
}

SplitType ExtField::classify_slow(E a, E b, E c, E d) const {
    if (a == ZERO) return classify(a, b, c, d);
    E ia = inv(a);
    E B = mul(b, ia), C = mul(c, ia), D = mul(d, ia);
    E B2 = mul(B, B);
    E p = sub(C, mul(B2, inv3_));
    E r = add(sub(mul(two27_, mul(B2, B)), mul(mul(B, C), inv3_)), D);
    E disc = neg(add(mul(four_, mul(mul(p, p), p)), mul(n27_, mul(r, r))));
    if (disc == ZERO) return p == ZERO ? SplitType::S1_3 : SplitType::S1_21;
    int k = depressed_roots_slow(p, r);
    return k == 3 ? SplitType::S111 : (k == 1 ? SplitType::S21 : SplitType::S3);
}

SplitEngine::SplitEngine(const Fq& F, int max_deg) : F_(&F), maxd_(max_deg) {
    primes_.resize(max_deg + 1);
    roots_.resize(max_deg + 1);
    for (int d = 1; d <= max_deg; ++d) {
        fields_.emplace_back(F, d);
        primes_[d] = poly::primes_of_degree(F, d);
        for (auto& P : primes_[d]) {
            auto rs = fields_.back().roots_of(P);
            if (rs.empty()) throw std::logic_error("SplitEngine: prime without root in its residue field");
            roots_[d].push_back(rs[0]);
        }
    }
}

SplitType SplitEngine::classify(const Form& f, int d, std::size_t i) const {
    const ExtField& E = fields_[d - 1];
    ExtField::E t = roots_[d][i];
    return E.classify(E.eval(f.co[0], t), E.eval(f.co[1], t), E.eval(f.co[2], t), E.eval(f.co[3], t));
}

std::vector<SplitType> SplitEngine::classify_all(const Form& f, int d) const {
    std::vector<SplitType> out(primes_[d].size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = classify(f, d, i);
    return out;
}

FqTypeTable::FqTypeTable(const Fq& F) : q_(F.q()) {
    ExtField E(F, 1);
    t_.resize(static_cast<std::size_t>(q_) * q_ * q_ * q_);
    for (int a = 0; a < q_; ++a)
        for (int b = 0; b < q_; ++b)
            for (int c = 0; c < q_; ++c)
                for (int d = 0; d < q_; ++d)
                    t_[((a * q_ + b) * q_ + c) * q_ + d] = static_cast<std::uint8_t>(
                        E.classify(E.from_fq(static_cast<fe>(a)), E.from_fq(static_cast<fe>(b)),
                                   E.from_fq(static_cast<fe>(c)), E.from_fq(static_cast<fe>(d))));
}

}  // namespace cubicff
