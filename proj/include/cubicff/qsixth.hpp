#pragma once

#include <array>
#include <string>

#include "cubicff/poly.hpp"

namespace cubicff {

// Exact element of Q[q^(1/6)] for q = p^k, stored as sum_{r=0}^{5} c_r p^(r/6).
// That basis is linearly independent over Q, so == is exact equality of reals.
class QSixth {
public:
    QSixth() = default;
    QSixth(int q, const Rational& v);

    // coef * q^(e/6)
    static QSixth qpow(int q, int e6, const Rational& coef = 1);

    int q() const { return q_; }
    bool is_zero() const;
    const Rational& coeff(int r) const { return c_[r]; }

    QSixth operator+(const QSixth& o) const;
    QSixth operator-(const QSixth& o) const;
    QSixth operator-() const;
    QSixth operator*(const QSixth& o) const;
    QSixth operator*(const Rational& s) const;
    QSixth& operator+=(const QSixth& o) { return *this = *this + o; }
    QSixth& operator-=(const QSixth& o) { return *this = *this - o; }
    QSixth& operator*=(const QSixth& o) { return *this = *this * o; }
    bool operator==(const QSixth& o) const;
    bool operator!=(const QSixth& o) const { return !(*this == o); }

    long double to_long_double() const;
    double to_double() const { return static_cast<double>(to_long_double()); }
    std::string str() const;

private:
    void adopt(const QSixth& o);
    int q_ = 0, p_ = 0, k_ = 1;
    std::array<Rational, 6> c_{};
};

}  // namespace cubicff
