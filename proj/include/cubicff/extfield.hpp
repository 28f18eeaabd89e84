#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cubicff/field.hpp"
#include "cubicff/form.hpp"
#include "cubicff/poly.hpp"

namespace cubicff {

// F_{q^d} = F_q[z]/(P0) with P0 the least monic irreducible of degree d.
// Nonzero elements are kept as discrete logs to a fixed primitive element;
// addition goes through a Zech table.
class ExtField {
public:
    using E = std::uint32_t;
    static constexpr E ZERO = 0xFFFFFFFFu;

    ExtField(const Fq& F, int d);

    const Fq& base() const { return *F_; }
    int degree() const { return d_; }
    std::uint64_t size() const { return Q_; }
    const Poly& modulus() const { return P0_; }

    E one() const { return 0; }
    E from_fq(fe c) const { return c ? log_[c] : ZERO; }
    E from_index(std::uint32_t idx) const { return idx ? log_[idx] : ZERO; }
    std::uint32_t to_index(E a) const { return a == ZERO ? 0 : exp_[a]; }
    E from_poly(const Poly& r) const;  // r reduced mod P0 read as digits

    E mul(E a, E b) const {
        if (a == ZERO || b == ZERO) return ZERO;
        std::uint32_t s = a + b;
        return s >= ord_ ? s - ord_ : s;
    }
    E inv(E a) const { return a == 0 ? 0 : ord_ - a; }
    E div(E a, E b) const { return mul(a, inv(b)); }
    E neg(E a) const {
        if (a == ZERO) return ZERO;
        std::uint32_t s = a + half_;
        return s >= ord_ ? s - ord_ : s;
    }
    E add(E a, E b) const {
        if (a == ZERO) return b;
        if (b == ZERO) return a;
        std::uint32_t dd = b >= a ? b - a : b + ord_ - a;
        E z = zech_[dd];
        if (z == ZERO) return ZERO;
        std::uint32_t s = a + z;
        return s >= ord_ ? s - ord_ : s;
    }
    E sub(E a, E b) const { return add(a, neg(b)); }
    bool is_square(E a) const { return a == ZERO || (a % 2 == 0); }
    E pow(E a, std::uint64_t e) const;

    E eval(const Poly& f, E t) const {
        E r = ZERO;
        for (int i = poly::deg(f); i >= 0; --i) r = add(mul(r, t), from_fq(f[i]));
        return r;
    }
    std::vector<E> roots_of(const Poly& P) const;

    // splitting type of a x^3 + b x^2 y + c x y^2 + d y^3 over this field
    SplitType classify(E a, E b, E c, E d) const;
    // same through x^Q - x (reference)
    SplitType classify_slow(E a, E b, E c, E d) const;
    // number of distinct roots of x^3 + p x + r (slow path, no table)
    int depressed_roots_slow(E p, E r) const;

private:
    const Fq* F_;
    int d_;
    std::uint64_t Q_;
    std::uint32_t ord_, half_;
    Poly P0_;
    std::vector<std::uint32_t> exp_, log_;
    std::vector<E> zech_;
    std::vector<std::uint8_t> key_roots_;   // roots of x^3 + k x + k, by log k
    std::vector<std::uint8_t> cube_roots_;  // roots of x^3 - s, by log s
    E three_, inv3_, two27_, four_, n27_, e18_, nine_;
};

// Splitting types of forms at all primes of degree <= max_deg, using one
// ExtField per degree and a root of each prime inside it.
class SplitEngine {
public:
    SplitEngine(const Fq& F, int max_deg);

    int max_degree() const { return maxd_; }
    const std::vector<Poly>& primes(int d) const { return primes_[d]; }
    SplitType classify(const Form& f, int d, std::size_t i) const;
    std::vector<SplitType> classify_all(const Form& f, int d) const;
    const ExtField& field(int d) const { return fields_[d - 1]; }

private:
    const Fq* F_;
    int maxd_;
    std::vector<ExtField> fields_;
    std::vector<std::vector<Poly>> primes_;
    std::vector<std::vector<ExtField::E>> roots_;
};

// splitting type of a form over F_q given by its four coefficients (table lookup, q^4 entries)
class FqTypeTable {
public:
    explicit FqTypeTable(const Fq& F);
    SplitType operator()(fe a, fe b, fe c, fe d) const {
        return static_cast<SplitType>(t_[((a * q_ + b) * q_ + c) * q_ + d]);
    }

private:
    int q_;
    std::vector<std::uint8_t> t_;
};

}  // namespace cubicff
