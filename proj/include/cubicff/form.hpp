#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "cubicff/field.hpp"
#include "cubicff/poly.hpp"

namespace cubicff {

// a x^3 + b x^2 y + c x y^2 + d y^3 over R = F_q[T]
struct Form {
    std::array<Poly, 4> co;
    const Poly& a() const { return co[0]; }
    const Poly& b() const { return co[1]; }
    const Poly& c() const { return co[2]; }
    const Poly& d() const { return co[3]; }
    bool operator==(const Form& o) const { return co == o.co; }
    bool operator!=(const Form& o) const { return co != o.co; }
};

// 2x2 matrix over R acting by (g f)(x,y) = det(g)^{-1} f((x,y) g)
struct Mat2 {
    Poly m[2][2];
};

enum class SplitType { S111, S21, S3, S1_21, S1_3, Zero };

const char* split_name(SplitType s);
SplitType split_from_name(const std::string& s);
inline constexpr std::array<SplitType, 5> kSplitTypes = {SplitType::S111, SplitType::S21, SplitType::S3,
                                                         SplitType::S1_21, SplitType::S1_3};

// multiplication table of the ring attached to a form, basis <1, w, t>:
// w*t, w^2, t^2 as coordinate triples
struct CubicRing {
    std::array<Poly, 3> wt, ww, tt;
};

struct Root {
    Poly x, y;  // point [x:y] of P^1(R/P), normalised with y = 1 or (x,y) = (1,0)
    int mult;
};

namespace form {

Form make(const Fq& F, std::array<Poly, 4> co);
Form from_ints(const std::vector<std::vector<int>>& co);
Poly disc(const Fq& F, const Form& f);
int max_deg(const Form& f);
bool less(const Form& f, const Form& g);  // layers compared from the top degree down

Mat2 identity();
Mat2 mat(const Poly& a, const Poly& b, const Poly& c, const Poly& d);
Poly det(const Fq& F, const Mat2& g);
Mat2 mul(const Fq& F, const Mat2& g, const Mat2& h);
Mat2 inverse(const Fq& F, const Mat2& g);
Form act(const Fq& F, const Mat2& g, const Form& f);            // twisted action
Form substitute(const Fq& F, const Mat2& g, const Form& f);     // f((x,y) g)
Form scale(const Fq& F, const Form& f, const Poly& s);

std::array<fe, 4> eval_at(const Fq& F, const Form& f, fe t);     // coefficients at T = t
Form reduce_mod(const Fq& F, const Form& f, const Poly& P);

// reference route: arithmetic in R/P, brute force over P^1(R/P)
std::vector<Root> roots_P1(const Fq& F, const Form& f, const Poly& P);
long long omega_P(const Fq& F, const Form& f, const Poly& P);
SplitType classify_mod_P(const Fq& F, const Form& f, const Poly& P);

CubicRing ldf_ring(const Fq& F, const Form& f);
// trace form determinant computed from the multiplication table
Poly trace_form_det(const Fq& F, const CubicRing& r);
// associativity of the table on all basis triples
bool ring_associative(const Fq& F, const CubicRing& r);

bool is_maximal_at(const Fq& F, const Form& f, const Poly& P);
bool is_maximal(const Fq& F, const Form& f, std::uint64_t seed = 1);
std::pair<Form, Poly> maximalize(const Fq& F, const Form& f, std::uint64_t seed = 1);
bool is_irreducible(const Fq& F, const Form& f, std::uint64_t seed = 1);
bool is_galois(const Fq& F, const Form& f);

std::string str(const Fq& F, const Form& f);
std::vector<std::vector<int>> to_ints(const Form& f);

}  // namespace form

// small helpers for R/P arithmetic
namespace residue {
Poly reduce(const Fq& F, const Poly& a, const Poly& P);
Poly mul(const Fq& F, const Poly& a, const Poly& b, const Poly& P);
Poly inv(const Fq& F, const Poly& a, const Poly& P);
}  // namespace residue

}  // namespace cubicff
