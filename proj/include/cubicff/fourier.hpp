#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "cubicff/form.hpp"
#include "cubicff/laurent.hpp"

namespace cubicff {
namespace fourier {

using cplx = std::complex<double>;

// exp(-2 pi i Tr(a_1) / p), a_1 the coefficient of pi^1
cplx chi_infty(const Fq& F, const Laurent& x);

// [x, y] = x1 y1 + x2 y2 / 3 + x3 y3 / 3 + x4 y4 mod P; P monic
Poly pairing(const Fq& F, const Form& x, const Form& y, const Poly& P);
cplx chi(const Fq& F, const Form& y, const Form& x, const Poly& P);

// (R/P)^4 with forms indexed by base-|P| digits (a, b, c, d), a most significant
class ResidueSpace {
public:
    ResidueSpace(const Fq& F, Poly P);
    const Fq& field() const { return F_; }
    const Poly& modulus() const { return P_; }
    std::uint64_t norm() const { return N_; }
    std::uint64_t size() const { return N_ * N_ * N_ * N_; }
    Poly residue(std::uint64_t i) const { return poly::from_index(F_.q(), i, d_); }
    std::uint64_t residue_index(const Poly& r) const;
    Form form(std::uint64_t idx) const;
    std::uint64_t index(const Form& f) const;

private:
    const Fq& F_;
    Poly P_;
    int d_;
    std::uint64_t N_;
};

// fn evaluated on every residue form (parallel, index order)
std::vector<double> tabulate(const ResidueSpace& S, const std::function<double(const Form&)>& fn);

// |P|^-4 sum_x fn(x) chi_y(x)
cplx brute_fourier_serial(const ResidueSpace& S, const std::vector<double>& fn, const Form& y);
// same sum grouped by phase, parallel over the leading coefficient
cplx brute_fourier(const ResidueSpace& S, const std::vector<double>& fn, const Form& y);

double omega(const Fq& F, const Form& x, const Poly& P);        // roots in P^1(R/P), zero form |P| + 1
double omega_tilde(const Fq& F, const Form& x, const Poly& P);  // singular indicator, zero form |P| + 1

bool has_triple_root(const Fq& F, const Form& y, const Poly& P);
Rational omega_hat_closed(const Fq& F, const Poly& P, const Form& y);
Rational omega_tilde_hat_closed(const Fq& F, const Poly& P, const Form& y);

// transform of the type-S indicator at y = 0, (1,0,0,0), (0,1,0,0) for j = 1, 2, 3
Rational nu(int j, SplitType s, const ResidueSpace& S);
// exact rational from a transform value whose |P|^4 multiple is an integer
Rational to_rational(cplx v, std::uint64_t denom);

// forms mod P^2 (deg P = 1) that are maximal at P
std::uint64_t count_maximal_mod_P2(const Fq& F);
std::uint64_t count_maximal_mod_P2_serial(const Fq& F, const Poly& P);

}  // namespace fourier
}  // namespace cubicff
