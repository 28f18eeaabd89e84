#include "cubicff/qsixth.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cubicff {

namespace {

int prime_of(int q) {
    int p = 2;
    while (q % p) ++p;
    return p;
}

Rational rpow(int b, int e) {
    if (e >= 0) return Rational(ipow(b, e));
    return Rational(BigInt(1), ipow(b, -e));
}

}  // namespace

QSixth::QSixth(int q, const Rational& v) : q_(q), p_(prime_of(q)), k_(q == prime_of(q) ? 1 : 2) { c_[0] = v; }

QSixth QSixth::qpow(int q, int e6, const Rational& coef) {
    QSixth r(q, 0);
    int t = r.k_ * e6;
    int rr = ((t % 6) + 6) % 6;
    int m = (t - rr) / 6;
    r.c_[rr] = coef * rpow(r.p_, m);
    return r;
}

void QSixth::adopt(const QSixth& o) {
    if (q_ == 0) {
        q_ = o.q_;
        p_ = o.p_;
        k_ = o.k_;
    } else if (o.q_ != 0 && o.q_ != q_) {
        throw std::invalid_argument("QSixth: mixing different q");
    }
}

bool QSixth::is_zero() const {
    for (auto& x : c_)
        if (x != 0) return false;
    return true;
}

QSixth QSixth::operator+(const QSixth& o) const {
    QSixth r = *this;
    r.adopt(o);
    for (int i = 0; i < 6; ++i) r.c_[i] += o.c_[i];
    return r;
}

QSixth QSixth::operator-() const {
    QSixth r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

QSixth QSixth::operator-(const QSixth& o) const { return *this + (-o); }

QSixth QSixth::operator*(const QSixth& o) const {
    QSixth r = *this;
    r.adopt(o);
    std::array<Rational, 6> out{};
    for (int i = 0; i < 6; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < 6; ++j) {
            if (o.c_[j] == 0) continue;
            int s = i + j;
            Rational v = c_[i] * o.c_[j];
            if (s >= 6) {
                v *= r.p_;
                s -= 6;
            }
            out[s] += v;
        }
    }
    r.c_ = out;
    return r;
}

QSixth QSixth::operator*(const Rational& s) const {
    QSixth r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

bool QSixth::operator==(const QSixth& o) const {
    for (int i = 0; i < 6; ++i)
        if (c_[i] != o.c_[i]) return false;
    return true;
}

long double QSixth::to_long_double() const {
    long double s = 0;
    for (int i = 0; i < 6; ++i) {
        if (c_[i] == 0) continue;
        long double num = static_cast<long double>(boost::multiprecision::numerator(c_[i]));
        long double den = static_cast<long double>(boost::multiprecision::denominator(c_[i]));
        s += num / den * std::pow(static_cast<long double>(p_), static_cast<long double>(i) / 6.0L);
    }
    return s;
}

std::string QSixth::str() const {
    std::string s;
    const char* base = k_ == 1 ? "q" : "p";
    for (int i = 0; i < 6; ++i) {
        if (c_[i] == 0) continue;
        if (!s.empty()) s += " + ";
        s += c_[i].str();
        if (i) {
            int g = std::gcd(i, 6);
            s += std::string("*") + base + "^(" + std::to_string(i / g) + "/" + std::to_string(6 / g) + ")";
        }
    }
    return s.empty() ? "0" : s;
}

}  // namespace cubicff
