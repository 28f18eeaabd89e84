#pragma once

#include <array>
#include <complex>
#include <vector>

#include "cubicff/census.hpp"
#include "cubicff/extfield.hpp"

namespace cubicff {

// P_L(u) = sum_k e[k] u^k = prod_i (1 - pi_i u), deg 2g
struct LPolynomial {
    int q = 0;
    int g = 0;
    std::vector<long long> e;
};

namespace zeta {

// places of L of degree dividing n lying over a place of degree degP with the given splitting type,
// weighted by their degree
long long place_contribution(SplitType t, int degP, int n);
long long infinity_contribution(const SigmaClass& s, int n);

// A_n for n = 1..n_max (index 0 unused), from splitting types at all primes of degree <= n_max
class PlaceCounter {
public:
    PlaceCounter(const Fq& F, int n_max);
    int n_max() const { return nmax_; }
    // tally[d][t] = number of degree-d primes with splitting type kSplitTypes[t], d = 1..n_max
    using Tally = std::vector<std::array<long long, 5>>;
    std::vector<long long> counts(const Form& f, const SigmaClass& sigma, Tally* tally = nullptr) const;

private:
    const Fq* F_;
    int nmax_;
    SplitEngine eng_;
};
// reference: classify_mod_P at every prime of degree dividing n
long long prime_count_A(const Fq& F, const FieldRecord& r, int n);

// exact Newton identities from A_1..A_k; throws if a coefficient is not an integer
std::vector<long long> newton_coefficients(int q, const std::vector<long long>& A, int k);
// genus (M-4)/2; e_1..e_g by Newton, the rest by the functional equation
LPolynomial l_polynomial(int q, int M, const std::vector<long long>& A);
bool functional_equation_holds(const LPolynomial& lp);

std::vector<std::complex<double>> inverse_roots(const LPolynomial& lp);
// max over roots of P_L of ||root|^2 - 1/q|
double rh_check(const LPolynomial& lp);
// angles theta_j in (-pi, pi] of the inverse roots, pi_j = sqrt(q) e^{i theta_j}
std::vector<double> zero_angles(const LPolynomial& lp);

// c_0..c_nmax
std::vector<double> trace_coeffs(const LPolynomial& lp, int n_max);
std::vector<double> trace_coeffs_from_counts(int q, int g, const std::vector<long long>& A, int n_max);

bool weil_bound_ok(int q, int g, long long A1);

struct FieldZeta {
    LPolynomial lp;
    std::vector<long long> A;      // A_1..A_nmax
    std::vector<double> c_roots;   // c_0..c_nmax
    std::vector<double> c_primes;  // c_0..c_nmax
    PlaceCounter::Tally tally;
    double rh = 0;
    bool fe_exact = false;  // Newton coefficients up to 2g satisfy the functional equation
    bool weil = false;
};

FieldZeta field_zeta(const Fq& F, const FieldRecord& r, const PlaceCounter& pc);

struct ZetaReport {
    int q = 0;
    int M = 0;
    int g = 0;
    int n_max = 0;
    long long fields = 0;
    long long fe_failures = 0;
    long long weil_failures = 0;
    double max_rh = 0;
    double max_trace_diff = 0;
};

// every field of the census (S3 and Galois); fills FieldRecord::lpoly
ZetaReport census_zeta(const Fq& F, Census& c, std::vector<FieldZeta>* out = nullptr, bool parallel = true);

}  // namespace zeta
}  // namespace cubicff
