#pragma once

#include <array>
#include <vector>

#include "cubicff/field.hpp"
#include "cubicff/form.hpp"

namespace cubicff {

// Constant matrix in GL2(F_q) with its twisted action on F_q^4 (coefficient vectors).
struct SmallMat {
    fe a, b, c, d;
    std::array<fe, 16> lin;  // row-major 4x4 matrix of f -> g f
};

// Reduction theory on the Bruhat-Tits tree at infinity.
// The vertex v_n is the class of the lattice T^n O ⊕ O; its stabiliser in GL2(R)
// is G_0 = GL2(F_q) and, for n >= 1, the lower-triangular group {[[s,0],[h,t]] : deg h <= n}.
namespace reduction {

// weighted top index H = max(deg a + 2n, deg b + n, deg c, deg d - n)
int top_index(const Form& f, int n);
// layer j at v_n: (a_{H-2n-j}, b_{H-n-j}, c_{H-j}, d_{H+n-j})
std::array<fe, 4> layer(const Form& f, int n, int H, int j);
// Q = 4 W - deg Disc with W = H - n/2, i.e. 4H - 2n - deg Disc
int q_invariant(const Fq& F, const Form& f, int n);
// no neighbouring vertex lowers Q
bool is_reduced_at(const Fq& F, const Form& f, int n);
// same test from the two top layers alone
bool layers_reduced(const Fq& F, const std::array<fe, 4>& top, const std::array<fe, 4>& next);

struct Reduced {
    Form form;   // GL2(R)-equivalent form whose centre is v_n
    int n = 0;
    int Q = 0;   // value of Q at the centre (= gamma of the sigma class for maximal forms)
    Mat2 h;      // form = h * input
    int steps = 0;
};

// walk to the unique vertex minimising Q, then move it to a standard vertex
Reduced reduce(const Fq& F, const Form& f);

// Q at the neighbours of the centre of a polynomial form; used by tests for local minimality
std::vector<int> neighbour_q_values(const Fq& F, const Form& centre_poly_form);

std::vector<SmallMat> gl2_fq(const Fq& F);
std::array<fe, 4> apply(const Fq& F, const SmallMat& g, const std::array<fe, 4>& v);
Form apply(const Fq& F, const SmallMat& g, const Form& f);

// normal form under {diag(1,t)} x {shears deg <= n}: a monic, b_{deg a .. deg a + n} = 0
Form normalize(const Fq& F, const Form& f, int n);

// For every v in F_q^4: the group elements g with g v equal to the orbit minimum of v.
class TopLayerIndex {
public:
    explicit TopLayerIndex(const Fq& F);
    const std::vector<int>& minimisers(const std::array<fe, 4>& v) const;
    const std::vector<SmallMat>& group() const { return G_; }

private:
    int q_;
    std::vector<SmallMat> G_;
    std::vector<std::vector<int>> best_;
};

// orbit representative of a form reduced at v_n (irreducible forms: a != 0)
Form canonical_reduced(const Fq& F, const Form& red, int n, const TopLayerIndex& idx);
// lexicographic minimum over the full stabiliser, by brute force
Form lexmin_brute(const Fq& F, const Form& red, int n);

struct Canonical {
    Form form;
    int n;
    int Q;
};
Canonical canonicalize(const Fq& F, const Form& f, const TopLayerIndex& idx);

std::vector<Mat2> stabilizer(const Fq& F, int n);
long long stabilizer_order(int q, int n);

}  // namespace reduction
}  // namespace cubicff
