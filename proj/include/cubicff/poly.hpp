#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cubicff/field.hpp"

namespace cubicff {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Element of F_q[T]: coefficients little-endian in T, no trailing zeros.
using Poly = std::vector<fe>;

namespace poly {

inline int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }
inline fe lc(const Poly& a) { return a.empty() ? 0 : a.back(); }
inline fe coef(const Poly& a, int i) { return (i >= 0 && i < static_cast<int>(a.size())) ? a[i] : 0; }
inline bool is_zero(const Poly& a) { return a.empty(); }
inline bool is_monic(const Poly& a) { return !a.empty() && a.back() == 1; }
void trim(Poly& a);

Poly constant(fe c);
Poly monomial(fe c, int e);
inline Poly X() { return Poly{0, 1}; }

Poly add(const Fq& F, const Poly& a, const Poly& b);
Poly sub(const Fq& F, const Poly& a, const Poly& b);
Poly neg(const Fq& F, const Poly& a);
Poly scale(const Fq& F, const Poly& a, fe c);
Poly shift(const Poly& a, int e);  // a * T^e, e >= 0
Poly mul(const Fq& F, const Poly& a, const Poly& b);
Poly pow(const Fq& F, const Poly& a, unsigned e);
void divmod(const Fq& F, const Poly& a, const Poly& b, Poly& quo, Poly& rem);
Poly mod(const Fq& F, const Poly& a, const Poly& b);
Poly quot(const Fq& F, const Poly& a, const Poly& b);
bool divides(const Fq& F, const Poly& d, const Poly& a);
Poly monic(const Fq& F, const Poly& a);
Poly gcd(const Fq& F, Poly a, Poly b);  // monic (zero if both zero)
Poly mulmod(const Fq& F, const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Fq& F, Poly base, std::uint64_t e, const Poly& m);
Poly derivative(const Fq& F, const Poly& a);
fe eval(const Fq& F, const Poly& a, fe x);

// total order: degree first, then coefficients from the top down
bool less(const Poly& a, const Poly& b);
int valuation_at(const Fq& F, Poly a, const Poly& P);  // multiplicity of prime P in a (a != 0)

// base-q digits of idx as a polynomial of degree < len (little-endian)
Poly from_index(int q, std::uint64_t idx, int len);

bool is_irreducible(const Fq& F, const Poly& f);
bool is_square(const Fq& F, const Poly& f, Poly* root = nullptr);

struct Factorization {
    fe unit = 1;
    std::vector<std::pair<Poly, int>> factors;  // sorted by poly::less
};
Factorization factor(const Fq& F, const Poly& f, std::uint64_t seed = 1);
Poly expand(const Fq& F, const Factorization& fac);

std::vector<Poly> primes_of_degree(const Fq& F, int d);
BigInt prime_count(int q, int d);
int moebius(const Fq& F, const Poly& f, std::uint64_t seed = 1);
BigInt sigma_divisors(const Fq& F, const Poly& f, std::uint64_t seed = 1);
Rational zeta_R(int q, int s);

std::string str(const Fq& F, const Poly& a);
std::vector<int> to_ints(const Poly& a);
Poly from_ints(const std::vector<int>& v);

}  // namespace poly

BigInt ipow(long long b, int e);

}  // namespace cubicff
