#include "cubicff/field.hpp"

#include <stdexcept>

namespace cubicff {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

bool valid_q(int q, std::string* why) {
    auto fail = [&](const char* m) {
        if (why) *why = m;
        return false;
    };
    if (q < 2 || q > 49) return fail("q must satisfy q <= 49");
    int p = 0;
    for (int d = 2; d <= q; ++d)
        if (q % d == 0) { p = d; break; }
    if (p == 2 || p == 3) return fail("2 and 3 must not divide q");
    if (!is_prime(p)) return fail("q must be a prime power");
    if (q != p && q != p * p) return fail("q must be p or p^2");
    return true;
}

Fq::Fq(int q) : q_(q) {
    std::string why;
    if (!valid_q(q, &why)) throw std::invalid_argument("invalid q=" + std::to_string(q) + ": " + why);
    p_ = 2;
    while (q % p_) ++p_;
    k_ = (q == p_) ? 1 : 2;

    int c0 = 0, c1 = 0;
    if (k_ == 2) {
        bool found = false;
        for (int n = 0; n < p_ * p_ && !found; ++n) {
            c0 = n % p_;
            c1 = n / p_;
            bool root = false;
            for (int x = 0; x < p_; ++x)
                if ((x * x + c1 * x + c0) % p_ == 0) { root = true; break; }
            found = !root;
        }
        defpoly_ = {c0, c1};
    }

    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    trace_.resize(q_);
    for (int a = 0; a < q_; ++a) {
        int a0 = a % p_, a1 = a / p_;
        neg_[a] = static_cast<fe>((p_ - a0) % p_ + ((p_ - a1) % p_) * p_);
        // Tr(a0 + a1 z) = 2 a0 + a1 Tr(z), Tr(z) = -c1
        trace_[a] = k_ == 1 ? a0 : ((2 * a0 + a1 * (p_ - c1)) % p_);
        for (int b = 0; b < q_; ++b) {
            int b0 = b % p_, b1 = b / p_;
            add_[a * q_ + b] = static_cast<fe>((a0 + b0) % p_ + ((a1 + b1) % p_) * p_);
            int m0 = a0 * b0, m1 = a0 * b1 + a1 * b0, m2 = a1 * b1;
            m0 -= m2 * c0;
            m1 -= m2 * c1;
            m0 = ((m0 % p_) + p_) % p_;
            m1 = ((m1 % p_) + p_) % p_;
            mul_[a * q_ + b] = static_cast<fe>(m0 + m1 * p_);
        }
    }
    for (int a = 1; a < q_; ++a)
        for (int b = 1; b < q_; ++b)
            if (mul_[a * q_ + b] == 1) { inv_[a] = static_cast<fe>(b); break; }

    // least generator of F_q^*, discrete logs
    log_.assign(q_, -1);
    for (int g = 2; g < q_; ++g) {
        int x = 1, ord = 0;
        do {
            x = mul(static_cast<fe>(x), static_cast<fe>(g));
            ++ord;
        } while (x != 1);
        if (ord == q_ - 1) { gen_ = static_cast<fe>(g); break; }
    }
    if (q_ == 2) gen_ = 1;
    {
        int x = 1;
        for (int e = 0; e < q_ - 1; ++e) {
            log_[x] = e;
            x = mul(static_cast<fe>(x), gen_);
        }
    }
    for (int a = 1; a < q_; ++a)
        if (!is_square(static_cast<fe>(a))) { alpha_ = static_cast<fe>(a); break; }
    for (int a = 1; a < q_; ++a)
        if (!is_cube(static_cast<fe>(a))) { beta_ = static_cast<fe>(a); break; }
}

fe Fq::inv(fe a) const {
    if (a == 0) throw std::domain_error("inverse of zero in F_q");
    return inv_[a];
}

fe Fq::pow(fe a, std::uint64_t e) const {
    fe r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

fe Fq::from_int(long long v) const {
    long long r = ((v % p_) + p_) % p_;
    return static_cast<fe>(r);
}

bool Fq::is_square(fe a) const { return a == 0 || log_[a] % 2 == 0; }

bool Fq::is_cube(fe a) const {
    if (a == 0 || (q_ - 1) % 3 != 0) return true;
    return log_[a] % 3 == 0;
}

int Fq::cube_class(fe a) const {
    if (a == 0) throw std::domain_error("cube class of zero");
    if ((q_ - 1) % 3 != 0) return 0;
    int la = log_[a] % 3, lb = log_[beta_] % 3;
    for (int i = 0; i < 3; ++i)
        if ((i * lb) % 3 == la) return i;
    return 0;
}

fe Fq::sqrt(fe a) const {
    if (a == 0) return 0;
    if (!is_square(a)) throw std::domain_error("sqrt of non-square");
    int e = log_[a] / 2;
    return pow(gen_, static_cast<std::uint64_t>(e));
}

std::string Fq::str(fe a) const {
    if (k_ == 1) return std::to_string(a);
    return std::to_string(a % p_) + "+" + std::to_string(a / p_) + "z";
}

}  // namespace cubicff
