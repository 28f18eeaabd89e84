#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cubicff {

using fe = std::uint8_t;

// F_q with q = p or p^2, elements encoded as integers d0 + d1*p
// (digits of the residue d0 + d1*z modulo the defining quadratic).
class Fq {
public:
    explicit Fq(int q);

    int p() const { return p_; }
    int k() const { return k_; }
    int q() const { return q_; }

    fe add(fe a, fe b) const { return add_[a * q_ + b]; }
    fe sub(fe a, fe b) const { return add_[a * q_ + neg_[b]]; }
    fe mul(fe a, fe b) const { return mul_[a * q_ + b]; }
    fe neg(fe a) const { return neg_[a]; }
    fe inv(fe a) const;
    fe div(fe a, fe b) const { return mul(a, inv(b)); }
    fe pow(fe a, std::uint64_t e) const;
    fe from_int(long long v) const;
    int trace(fe a) const { return trace_[a]; }

    bool is_square(fe a) const;
    bool is_cube(fe a) const;
    // index of a in F_q^* / (F_q^*)^3 relative to the least non-cube; 0 if q = 2 mod 3
    int cube_class(fe a) const;
    fe sqrt(fe a) const;

    fe least_nonsquare() const { return alpha_; }
    fe least_noncube() const { return beta_; }
    fe generator() const { return gen_; }

    // z^2 + c1 z + c0 for k = 2, empty for k = 1
    std::vector<int> defining_poly() const { return defpoly_; }
    std::string str(fe a) const;

private:
    int p_, k_, q_;
    std::vector<fe> add_, mul_, neg_, inv_;
    std::vector<int> trace_, log_;
    std::vector<int> defpoly_;
    fe alpha_ = 0, beta_ = 0, gen_ = 0;
};

bool valid_q(int q, std::string* why = nullptr);

}  // namespace cubicff
