#pragma once

#include <stdexcept>
#include <vector>

#include "cubicff/field.hpp"
#include "cubicff/poly.hpp"

namespace cubicff {

struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncated element of F_q((pi)), pi = 1/T: sum_{i=val}^{prec-1} c[i-val] pi^i + O(pi^prec).
// The zero-at-this-precision element has empty c and val == prec.
struct Laurent {
    int val = 0;
    std::vector<fe> c;
    int prec = 0;

    bool is_zero() const { return c.empty(); }
    fe digit(int i) const {
        if (i < val || i >= val + static_cast<int>(c.size())) return 0;
        return c[i - val];
    }
};

namespace laurent {

Laurent zero(int prec);
Laurent from_digits(const std::vector<fe>& digits, int start, int prec);
Laurent from_poly(const Poly& f, int prec);  // f(T) = f(1/pi)
Laurent constant(fe c, int prec);
Laurent pi_power(int e, int prec);
void normalize(Laurent& x);

Laurent add(const Fq& F, const Laurent& a, const Laurent& b);
Laurent sub(const Fq& F, const Laurent& a, const Laurent& b);
Laurent neg(const Fq& F, const Laurent& a);
Laurent mul(const Fq& F, const Laurent& a, const Laurent& b);
Laurent invert(const Fq& F, const Laurent& a);
Laurent scale(const Fq& F, const Laurent& a, fe s);
bool equal(const Laurent& a, const Laurent& b);  // equal to the common precision

// g = sum g[i] x^i with integral coefficients; r0 a simple root of g mod pi.
Laurent hensel_lift_root(const Fq& F, const std::vector<Laurent>& g, fe r0, int prec);
Laurent eval_poly(const Fq& F, const std::vector<Laurent>& g, const Laurent& x);

}  // namespace laurent
}  // namespace cubicff
